//! The truncated single-site supersymmetric quantum mechanics Hamiltonian.
//!
//! One fermionic mode couples to one bosonic mode through a superpotential
//! W(q). The boson is truncated to the lowest `lambda` Fock levels, so the
//! position and momentum operators become `lambda x lambda` matrices and the
//! full Hamiltonian
//!
//! ```text
//! H = I_f (x) (p^2 + W'(q)^2)/2  -  [b+, b] (x) W''(q)/2
//! ```
//!
//! is a `2*lambda` square matrix, block-diagonal in the fermion occupation.
//! The fermion is the most significant tensor factor: row index `i` encodes
//! fermion occupation `f = i / lambda` and boson level `b = i % lambda`.
//!
//! Polynomials of the position operator are always evaluated on the truncated
//! matrix (truncate, then compose); `W'(q)^2` is the square of the truncated
//! `W'(q)`, not a truncation of the exact operator.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::CMatrix;

/// Which superpotential generates the interactions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SuperpotentialKind {
    /// W(q) = m q^2 / 2
    #[serde(alias = "harmonic")]
    Ho,
    /// W(q) = m q^2 / 2 + g q^4 / 4
    #[serde(alias = "anharmonic")]
    Aho,
    /// W(q) = m q^2 / 2 + g (q^3 / 3 + mu^2 q)
    #[serde(alias = "doublewell")]
    Dw,
}

impl SuperpotentialKind {
    pub const ALL: [SuperpotentialKind; 3] = [
        SuperpotentialKind::Ho,
        SuperpotentialKind::Dw,
        SuperpotentialKind::Aho,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            SuperpotentialKind::Ho => "ho",
            SuperpotentialKind::Aho => "aho",
            SuperpotentialKind::Dw => "dw",
        }
    }
}

impl std::str::FromStr for SuperpotentialKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ho" | "harmonic" => Ok(SuperpotentialKind::Ho),
            "aho" | "anharmonic" => Ok(SuperpotentialKind::Aho),
            "dw" | "doublewell" | "double-well" => Ok(SuperpotentialKind::Dw),
            other => Err(Error::InvalidParameter(format!(
                "unknown superpotential `{other}` (expected ho, aho or dw)"
            ))),
        }
    }
}

/// A superpotential with its dimensionless parameters.
///
/// `g` is ignored for the harmonic oscillator and `mu` is used only by the
/// double well. All default to 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Superpotential {
    pub kind: SuperpotentialKind,
    pub m: f64,
    pub g: f64,
    pub mu: f64,
}

impl Superpotential {
    pub fn new(kind: SuperpotentialKind) -> Self {
        Self { kind, m: 1.0, g: 1.0, mu: 1.0 }
    }

    pub fn with_params(kind: SuperpotentialKind, m: f64, g: f64, mu: f64) -> Result<Self> {
        if !(m > 0.0) {
            return Err(Error::InvalidParameter(format!("mass m = {m} must be positive")));
        }
        if !m.is_finite() || !g.is_finite() || !mu.is_finite() {
            return Err(Error::InvalidParameter("superpotential parameters must be finite".into()));
        }
        Ok(Self { kind, m, g, mu })
    }

    pub fn ho() -> Self {
        Self::new(SuperpotentialKind::Ho)
    }

    pub fn aho() -> Self {
        Self::new(SuperpotentialKind::Aho)
    }

    pub fn dw() -> Self {
        Self::new(SuperpotentialKind::Dw)
    }

    /// W'(q) evaluated on the truncated position matrix.
    pub fn w_prime(&self, q: &CMatrix) -> CMatrix {
        let id = CMatrix::identity(q.dim());
        match self.kind {
            SuperpotentialKind::Ho => q.scale(self.m.into()),
            SuperpotentialKind::Aho => {
                let q3 = q.matmul(q).matmul(q);
                q.scale(self.m.into()).add(&q3.scale(self.g.into()))
            }
            SuperpotentialKind::Dw => {
                let q2 = q.matmul(q);
                q.scale(self.m.into())
                    .add(&q2.add(&id.scale((self.mu * self.mu).into())).scale(self.g.into()))
            }
        }
    }

    /// W''(q) evaluated on the truncated position matrix.
    pub fn w_second(&self, q: &CMatrix) -> CMatrix {
        let id = CMatrix::identity(q.dim());
        match self.kind {
            SuperpotentialKind::Ho => id.scale(self.m.into()),
            SuperpotentialKind::Aho => {
                let q2 = q.matmul(q);
                id.scale(self.m.into()).add(&q2.scale((3.0 * self.g).into()))
            }
            SuperpotentialKind::Dw => {
                id.scale(self.m.into()).add(&q.scale((2.0 * self.g).into()))
            }
        }
    }

    /// Fermion occupation of the block holding the ground state once the
    /// truncation is large enough: `One` for HO and AHO, `Zero` for DW.
    pub fn ground_sector(&self) -> FermionSector {
        match self.kind {
            SuperpotentialKind::Ho | SuperpotentialKind::Aho => FermionSector::One,
            SuperpotentialKind::Dw => FermionSector::Zero,
        }
    }

    /// Basis state that seeds the adaptive ansatz search, as a bitstring with
    /// the fermion bit first. Severely truncated double wells are special:
    /// at lambda = 4 the ground state sits in the occupied-fermion block.
    pub fn initial_state_label(&self, lambda: usize) -> String {
        let n_qubits = qubits_for(lambda);
        let occupied = match self.kind {
            SuperpotentialKind::Ho | SuperpotentialKind::Aho => true,
            SuperpotentialKind::Dw => lambda == 4,
        };
        let mut label = String::with_capacity(n_qubits);
        label.push(if occupied { '1' } else { '0' });
        for _ in 1..n_qubits {
            label.push('0');
        }
        label
    }
}

/// Fermion occupation selecting one diagonal block of H.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FermionSector {
    /// Unoccupied: block (p^2 + W'^2 + W'')/2.
    Zero,
    /// Occupied: block (p^2 + W'^2 - W'')/2.
    One,
}

/// Number of qubits encoding `lambda` bosonic modes plus the fermion.
pub fn qubits_for(lambda: usize) -> usize {
    (usize::BITS - (lambda - 1).leading_zeros()) as usize + 1
}

fn check_lambda(lambda: usize) -> Result<()> {
    if lambda < 2 || !lambda.is_power_of_two() {
        return Err(Error::InvalidTruncation(lambda));
    }
    Ok(())
}

fn check_mass(m: f64) -> Result<()> {
    if !(m > 0.0) || !m.is_finite() {
        return Err(Error::InvalidParameter(format!("mass m = {m} must be positive")));
    }
    Ok(())
}

/// Position operator in the truncated Fock basis: real symmetric tridiagonal
/// with off-diagonal entries sqrt(k / (2 m)), k = 1..lambda-1.
pub fn position_matrix(lambda: usize, m: f64) -> Result<CMatrix> {
    check_lambda(lambda)?;
    check_mass(m)?;
    let mut q = CMatrix::zeros(lambda);
    for k in 1..lambda {
        let v = (k as f64).sqrt() / (2.0 * m).sqrt();
        q[(k - 1, k)] = v.into();
        q[(k, k - 1)] = v.into();
    }
    Ok(q)
}

/// Momentum operator in the truncated Fock basis: Hermitian with purely
/// imaginary entries -i sqrt(m k / 2) above the diagonal.
pub fn momentum_matrix(lambda: usize, m: f64) -> Result<CMatrix> {
    check_lambda(lambda)?;
    check_mass(m)?;
    let mut p = CMatrix::zeros(lambda);
    for k in 1..lambda {
        let v = (m * k as f64 / 2.0).sqrt();
        p[(k - 1, k)] = Complex64::new(0.0, -v);
        p[(k, k - 1)] = Complex64::new(0.0, v);
    }
    Ok(p)
}

/// One fermion-sector block, (p^2 + W'(q)^2 +/- W''(q)) / 2, as a
/// `lambda x lambda` real symmetric matrix.
pub fn block(sp: &Superpotential, lambda: usize, sector: FermionSector) -> Result<CMatrix> {
    check_lambda(lambda)?;
    check_mass(sp.m)?;
    let q = position_matrix(lambda, sp.m)?;
    let p = momentum_matrix(lambda, sp.m)?;
    let p2 = p.matmul(&p);
    let wp = sp.w_prime(&q);
    let ws = sp.w_second(&q);
    let sign = match sector {
        FermionSector::Zero => 1.0,
        FermionSector::One => -1.0,
    };
    let sum = p2.add(&wp.matmul(&wp)).add(&ws.scale(sign.into()));
    // The operator is real symmetric; average away the rounding asymmetry
    // the matrix products leave behind.
    let half = sum.scale(0.5.into());
    Ok(CMatrix::from_real_fn(lambda, |i, j| {
        0.5 * (half[(i, j)].re + half[(j, i)].re)
    }))
}

/// The full `2*lambda` Hamiltonian with the fermion as the most significant
/// tensor factor; index `i = f * lambda + b`.
pub fn hamiltonian(sp: &Superpotential, lambda: usize) -> Result<CMatrix> {
    let b0 = block(sp, lambda, FermionSector::Zero)?;
    let b1 = block(sp, lambda, FermionSector::One)?;
    let mut h = CMatrix::zeros(2 * lambda);
    for i in 0..lambda {
        for j in 0..lambda {
            h[(i, j)] = b0[(i, j)];
            h[(lambda + i, lambda + j)] = b1[(i, j)];
        }
    }
    Ok(h)
}

/// The supercharge Q = b (x) (i p + W'(q)). Nilpotent: Q^2 = 0 exactly.
pub fn supercharge(sp: &Superpotential, lambda: usize) -> Result<CMatrix> {
    check_lambda(lambda)?;
    check_mass(sp.m)?;
    let q = position_matrix(lambda, sp.m)?;
    let p = momentum_matrix(lambda, sp.m)?;
    let inner = p.scale(Complex64::new(0.0, 1.0)).add(&sp.w_prime(&q));
    // b = |0><1| in the fermion factor: the only nonzero fermion block is
    // (row f=0, column f=1).
    let mut qc = CMatrix::zeros(2 * lambda);
    for i in 0..lambda {
        for j in 0..lambda {
            qc[(i, lambda + j)] = inner[(i, j)];
        }
    }
    Ok(qc)
}
