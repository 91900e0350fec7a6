//! Pauli-string decomposition of Hermitian matrices.
//!
//! A matrix of dimension 2^n is written as a real-weighted sum of n-qubit
//! Pauli strings by recursing on 2x2 quadrants: splitting M into blocks
//! [[A, B], [C, D]], the coefficient matrices attached to I, X, Y, Z on the
//! most significant qubit are (A+D)/2, (B+C)/2, i(B-C)/2 and (A-D)/2.
//! Worst-case work is 4^n; all-zero quadrants are pruned, which collapses the
//! cost for sparse operators. Recursing depth-first in I, X, Y, Z order
//! yields terms in lexicographic label order with no sorting step.
//!
//! Labels are written most significant qubit first, so "ZII" applies Z to
//! qubit q2 of a three-qubit system.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamiltonian::{self, FermionSector, Superpotential};
use crate::matrix::CMatrix;
use crate::simulator::Statevector;

/// Default coefficient-drop tolerance for decomposition.
pub const DECOMPOSE_TOL: f64 = 1e-12;

/// Coefficient-drop tolerance used when counting encoding resources.
///
/// Counting uses a coarser cut than decomposition: polynomial superpotentials
/// produce genuinely tiny couplings near the truncation boundary that the
/// resource tables exclude.
pub const COUNT_TOL: f64 = 1e-5;

/// One of the four single-qubit Pauli operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn as_char(&self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Result<Self> {
        match c {
            'I' => Ok(Pauli::I),
            'X' => Ok(Pauli::X),
            'Y' => Ok(Pauli::Y),
            'Z' => Ok(Pauli::Z),
            other => Err(Error::Parse(format!("invalid Pauli letter `{other}`"))),
        }
    }

    fn matrix(&self) -> [[Complex64; 2]; 2] {
        let z = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        match self {
            Pauli::I => [[one, z], [z, one]],
            Pauli::X => [[z, one], [one, z]],
            Pauli::Y => [[z, -i], [i, z]],
            Pauli::Z => [[one, z], [z, -one]],
        }
    }
}

/// A weighted Pauli string. The label stores the most significant qubit
/// first, matching the printed form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PauliString {
    pub label: Vec<Pauli>,
    pub coefficient: f64,
}

impl PauliString {
    pub fn label_string(&self) -> String {
        self.label.iter().map(Pauli::as_char).collect()
    }
}

/// An ordered list of distinct Pauli strings over a fixed qubit count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PauliSum {
    pub n_qubits: usize,
    pub terms: Vec<PauliString>,
}

impl PauliSum {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exact expectation value <psi|H|psi>, accumulated term by term.
    pub fn expectation(&self, state: &Statevector) -> Result<f64> {
        if state.n_qubits() != self.n_qubits {
            return Err(Error::DimensionMismatch(format!(
                "Pauli sum on {} qubits, state on {}",
                self.n_qubits,
                state.n_qubits()
            )));
        }
        let mut total = 0.0;
        let mut scratch = vec![Complex64::new(0.0, 0.0); state.amplitudes().len()];
        for term in &self.terms {
            total += term.coefficient * pauli_expectation(term, state, &mut scratch);
        }
        Ok(total)
    }

    /// One term per line: `LABEL coefficient`, most significant qubit first.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for t in &self.terms {
            out.push_str(&t.label_string());
            out.push(' ');
            out.push_str(&format!("{:.17e}\n", t.coefficient));
        }
        out
    }

    pub fn from_text(n_qubits: usize, text: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let label_str = parts
                .next()
                .ok_or_else(|| Error::Parse(format!("line {}: missing label", lineno + 1)))?;
            let coeff_str = parts
                .next()
                .ok_or_else(|| Error::Parse(format!("line {}: missing coefficient", lineno + 1)))?;
            if label_str.len() != n_qubits {
                return Err(Error::Parse(format!(
                    "line {}: label `{label_str}` has length {}, expected {n_qubits}",
                    lineno + 1,
                    label_str.len()
                )));
            }
            let label = label_str.chars().map(Pauli::from_char).collect::<Result<Vec<_>>>()?;
            let coefficient: f64 = coeff_str
                .parse()
                .map_err(|e| Error::Parse(format!("line {}: bad coefficient: {e}", lineno + 1)))?;
            terms.push(PauliString { label, coefficient });
        }
        Ok(PauliSum { n_qubits, terms })
    }
}

/// <psi|P|psi> for a single unit-coefficient Pauli string.
fn pauli_expectation(term: &PauliString, state: &Statevector, scratch: &mut [Complex64]) -> f64 {
    let n = state.n_qubits();
    let amps = state.amplitudes();
    // Apply the string to |psi> into scratch, then take the inner product.
    // For each basis index the string maps |j> -> phase |j ^ flip_mask|,
    // where X and Y flip the bit and Y, Z contribute phases.
    let mut flip_mask = 0usize;
    for (pos, p) in term.label.iter().enumerate() {
        let qubit = n - 1 - pos;
        if matches!(p, Pauli::X | Pauli::Y) {
            flip_mask |= 1 << qubit;
        }
    }
    for (j, a) in amps.iter().enumerate() {
        let mut phase = Complex64::new(1.0, 0.0);
        for (pos, p) in term.label.iter().enumerate() {
            let qubit = n - 1 - pos;
            let bit = (j >> qubit) & 1;
            match p {
                Pauli::I | Pauli::X => {}
                // Y |0> = i|1>, Y |1> = -i|0>
                Pauli::Y => {
                    phase *= if bit == 0 {
                        Complex64::new(0.0, 1.0)
                    } else {
                        Complex64::new(0.0, -1.0)
                    }
                }
                Pauli::Z => {
                    if bit == 1 {
                        phase = -phase;
                    }
                }
            }
        }
        scratch[j ^ flip_mask] = phase * a;
    }
    amps.iter()
        .zip(scratch.iter())
        .map(|(a, b)| (a.conj() * b).re)
        .sum()
}

/// Decompose a Hermitian matrix into Pauli strings, dropping coefficients
/// with magnitude at most `tol`. Terms come out in lexicographic label order
/// with I < X < Y < Z.
pub fn decompose(matrix: &CMatrix, tol: f64) -> Result<PauliSum> {
    let dim = matrix.dim();
    if dim == 0 || !dim.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(dim));
    }
    matrix.check_hermitian(tol.max(1e-10))?;
    let n_qubits = dim.trailing_zeros() as usize;
    let mut terms = Vec::new();
    let mut label = Vec::with_capacity(n_qubits);
    recurse(matrix.data(), dim, tol, &mut label, &mut terms);
    Ok(PauliSum { n_qubits, terms })
}

fn recurse(data: &[Complex64], dim: usize, tol: f64, label: &mut Vec<Pauli>, out: &mut Vec<PauliString>) {
    if dim == 1 {
        // Hermiticity makes every surviving coefficient real.
        let c = data[0].re;
        if c.abs() > tol {
            out.push(PauliString { label: label.clone(), coefficient: c });
        }
        return;
    }
    let h = dim / 2;
    let idx = |i: usize, j: usize| i * dim + j;
    let mut child = vec![Complex64::new(0.0, 0.0); h * h];
    for pauli in [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z] {
        let mut nonzero = false;
        for i in 0..h {
            for j in 0..h {
                let a = data[idx(i, j)];
                let b = data[idx(i, j + h)];
                let c = data[idx(i + h, j)];
                let d = data[idx(i + h, j + h)];
                let v = match pauli {
                    Pauli::I => (a + d) * 0.5,
                    Pauli::X => (b + c) * 0.5,
                    Pauli::Y => (b - c) * Complex64::new(0.0, 0.5),
                    Pauli::Z => (a - d) * 0.5,
                };
                nonzero |= v != Complex64::new(0.0, 0.0);
                child[i * h + j] = v;
            }
        }
        if !nonzero {
            continue;
        }
        label.push(pauli);
        recurse(&child, h, tol, label, out);
        label.pop();
    }
}

/// Rebuild the dense matrix sum coeff * (tensor product of Paulis).
pub fn reconstruct(ps: &PauliSum) -> CMatrix {
    let dim = 1usize << ps.n_qubits;
    let mut m = CMatrix::zeros(dim);
    for term in &ps.terms {
        // Entry (i, j) of the tensor product factorizes over qubits.
        let mats: Vec<_> = term.label.iter().map(Pauli::matrix).collect();
        for i in 0..dim {
            for j in 0..dim {
                let mut v = Complex64::new(term.coefficient, 0.0);
                for (pos, pm) in mats.iter().enumerate() {
                    let qubit = ps.n_qubits - 1 - pos;
                    let bi = (i >> qubit) & 1;
                    let bj = (j >> qubit) & 1;
                    v *= pm[bi][bj];
                    if v == Complex64::new(0.0, 0.0) {
                        break;
                    }
                }
                m[(i, j)] += v;
            }
        }
    }
    m
}

/// Number of Pauli strings encoding the full Hamiltonian or one block,
/// counted with the resource-table tolerance.
pub fn count_terms(sp: &Superpotential, lambda: usize, sector: Option<FermionSector>) -> Result<usize> {
    let matrix = match sector {
        None => hamiltonian::hamiltonian(sp, lambda)?,
        Some(s) => hamiltonian::block(sp, lambda, s)?,
    };
    Ok(decompose(&matrix, COUNT_TOL)?.len())
}

/// Decompose the full Hamiltonian with the default tolerance.
pub fn hamiltonian_sum(sp: &Superpotential, lambda: usize) -> Result<PauliSum> {
    decompose(&hamiltonian::hamiltonian(sp, lambda)?, DECOMPOSE_TOL)
}
