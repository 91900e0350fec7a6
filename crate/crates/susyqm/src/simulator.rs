//! Statevector simulation of parameterized circuits.
//!
//! Qubit indexing is little-endian: qubit `b` is bit `b` of the basis index,
//! and bitstring labels print the most significant qubit first, so the label
//! "100" on three qubits is basis index 4. The fermion occupies the highest
//! qubit.
//!
//! Energy estimation runs either in exact mode (term-by-term expectation on
//! the full state) or in shot mode, where every non-identity Pauli term gets
//! its own measurement circuit and `shots` samples: X bases are rotated by H,
//! Y bases by S-dagger then H, and the term value is the sample mean of the
//! +/-1 parities over the term's support. Identity terms are added exactly.

use num_complex::Complex64;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliSum};

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Deterministic random stream: ChaCha12 seeded from a 64-bit value.
///
/// The generator is fixed and platform-independent, so a recorded seed
/// reproduces every sample of a run bit for bit.
#[derive(Debug, Clone)]
pub struct RngStream {
    rng: ChaCha12Rng,
    seed: u64,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha12Rng::seed_from_u64(seed), seed }
    }

    /// Stream for run `index` under a master seed. The derivation is a
    /// SplitMix64 hash of the pair, so neighbouring indices give
    /// uncorrelated streams.
    pub fn derive(master_seed: u64, index: u64) -> Self {
        Self::new(derive_seed(master_seed, index))
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Uniform sample in [lo, hi).
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.rng.gen::<f64>()
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform integer in [0, n).
    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }
}

/// SplitMix64 finalizer rounds over the (master, index) pair.
pub fn derive_seed(master_seed: u64, index: u64) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    mix(master_seed ^ mix(index.wrapping_add(1)))
}

/// Supported gate kinds. Rotations carry a parameter slot; X, H and CNOT are
/// fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GateKind {
    Ry,
    Rz,
    Cry,
    X,
    H,
    Cnot,
}

/// One gate acting on the statevector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gate {
    pub kind: GateKind,
    pub target: usize,
    pub control: Option<usize>,
    pub param_slot: Option<usize>,
}

impl Gate {
    pub fn ry(target: usize, param_slot: usize) -> Self {
        Gate { kind: GateKind::Ry, target, control: None, param_slot: Some(param_slot) }
    }

    pub fn rz(target: usize, param_slot: usize) -> Self {
        Gate { kind: GateKind::Rz, target, control: None, param_slot: Some(param_slot) }
    }

    /// Controlled Y rotation; rotates `target` when `control` is set.
    pub fn cry(control: usize, target: usize, param_slot: usize) -> Self {
        Gate { kind: GateKind::Cry, target, control: Some(control), param_slot: Some(param_slot) }
    }

    pub fn x(target: usize) -> Self {
        Gate { kind: GateKind::X, target, control: None, param_slot: None }
    }

    pub fn h(target: usize) -> Self {
        Gate { kind: GateKind::H, target, control: None, param_slot: None }
    }

    pub fn cnot(control: usize, target: usize) -> Self {
        Gate { kind: GateKind::Cnot, target, control: Some(control), param_slot: None }
    }
}

/// An ordered gate list applied to a fixed initial basis state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    pub n_qubits: usize,
    /// Initial basis state, most significant qubit (the fermion) first.
    pub initial_bitstring: String,
    pub gates: Vec<Gate>,
    pub n_params: usize,
}

impl Circuit {
    pub fn new(n_qubits: usize, initial_bitstring: impl Into<String>) -> Result<Self> {
        let initial_bitstring = initial_bitstring.into();
        if initial_bitstring.len() != n_qubits
            || !initial_bitstring.chars().all(|c| c == '0' || c == '1')
        {
            return Err(Error::InvalidParameter(format!(
                "initial bitstring `{initial_bitstring}` is not a {n_qubits}-bit label"
            )));
        }
        Ok(Circuit { n_qubits, initial_bitstring, gates: Vec::new(), n_params: 0 })
    }

    /// Append a gate, assigning the next parameter slot to rotations.
    pub fn push(&mut self, kind: GateKind, control: Option<usize>, target: usize) -> Result<()> {
        let needs_param = matches!(kind, GateKind::Ry | GateKind::Rz | GateKind::Cry);
        let needs_control = matches!(kind, GateKind::Cry | GateKind::Cnot);
        if target >= self.n_qubits {
            return Err(Error::IndexOutOfRange(format!("target qubit {target}")));
        }
        match (needs_control, control) {
            (true, Some(c)) if c >= self.n_qubits => {
                return Err(Error::IndexOutOfRange(format!("control qubit {c}")));
            }
            (true, Some(c)) if c == target => {
                return Err(Error::InvalidParameter("control equals target".into()));
            }
            (true, None) => {
                return Err(Error::InvalidParameter(format!("{kind:?} requires a control qubit")));
            }
            (false, Some(_)) => {
                return Err(Error::InvalidParameter(format!("{kind:?} takes no control qubit")));
            }
            _ => {}
        }
        let param_slot = needs_param.then_some(self.n_params);
        if needs_param {
            self.n_params += 1;
        }
        self.gates.push(Gate { kind, target, control, param_slot });
        Ok(())
    }

    /// Run the circuit on its initial state.
    pub fn run(&self, params: &[f64]) -> Result<Statevector> {
        if params.len() != self.n_params {
            return Err(Error::DimensionMismatch(format!(
                "{} parameters supplied, circuit has {}",
                params.len(),
                self.n_params
            )));
        }
        let mut state = Statevector::basis(self.n_qubits, &self.initial_bitstring)?;
        for gate in &self.gates {
            let theta = gate.param_slot.map(|s| params[s]).unwrap_or(0.0);
            state.apply_gate(gate, theta)?;
        }
        Ok(state)
    }
}

/// Normalized complex amplitudes over 2^n basis states.
#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl Statevector {
    /// The basis state named by a bitstring label, fermion bit first.
    pub fn basis(n_qubits: usize, label: &str) -> Result<Self> {
        if label.len() != n_qubits || !label.chars().all(|c| c == '0' || c == '1') {
            return Err(Error::InvalidParameter(format!(
                "`{label}` is not a {n_qubits}-bit basis label"
            )));
        }
        let index = usize::from_str_radix(label, 2).expect("validated binary literal");
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { n_qubits, amps })
    }

    pub fn from_amplitudes(n_qubits: usize, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != 1 << n_qubits {
            return Err(Error::DimensionMismatch(format!(
                "{} amplitudes for {} qubits",
                amps.len(),
                n_qubits
            )));
        }
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidParameter(format!("state norm^2 = {norm}, must be 1")));
        }
        Ok(Self { n_qubits, amps })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// |<self|other>|^2.
    pub fn overlap_sqr(&self, other: &Statevector) -> Result<f64> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch("overlap of unequal widths".into()));
        }
        let inner: Complex64 =
            self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum();
        Ok(inner.norm_sqr())
    }

    /// Tensor product; `self` supplies the high qubits.
    pub fn tensor(&self, low: &Statevector) -> Statevector {
        let n = self.n_qubits + low.n_qubits;
        let mut amps = Vec::with_capacity(1 << n);
        for a in &self.amps {
            for b in &low.amps {
                amps.push(a * b);
            }
        }
        Statevector { n_qubits: n, amps }
    }

    pub fn apply_gate(&mut self, gate: &Gate, theta: f64) -> Result<()> {
        if gate.target >= self.n_qubits || gate.control.is_some_and(|c| c >= self.n_qubits) {
            return Err(Error::IndexOutOfRange(format!("{gate:?} on {} qubits", self.n_qubits)));
        }
        match gate.kind {
            GateKind::Ry => {
                let (s, c) = (theta / 2.0).sin_cos();
                self.pairwise(gate.target, None, |a0, a1| (c * a0 - s * a1, s * a0 + c * a1));
            }
            GateKind::Cry => {
                let (s, c) = (theta / 2.0).sin_cos();
                self.pairwise(gate.target, gate.control, |a0, a1| {
                    (c * a0 - s * a1, s * a0 + c * a1)
                });
            }
            GateKind::Rz => {
                let phase = Complex64::from_polar(1.0, theta / 2.0);
                let step = 1usize << gate.target;
                for (i, a) in self.amps.iter_mut().enumerate() {
                    *a *= if i & step == 0 { phase.conj() } else { phase };
                }
            }
            GateKind::X => {
                self.pairwise(gate.target, None, |a0, a1| (a1, a0));
            }
            GateKind::H => {
                self.pairwise(gate.target, None, |a0, a1| {
                    (FRAC_1_SQRT_2 * (a0 + a1), FRAC_1_SQRT_2 * (a0 - a1))
                });
            }
            GateKind::Cnot => {
                self.pairwise(gate.target, gate.control, |a0, a1| (a1, a0));
            }
        }
        Ok(())
    }

    /// Update amplitude pairs differing in `target`, optionally restricted to
    /// indices where `control` is set.
    fn pairwise(
        &mut self,
        target: usize,
        control: Option<usize>,
        f: impl Fn(Complex64, Complex64) -> (Complex64, Complex64),
    ) {
        let tstep = 1usize << target;
        let cmask = control.map(|c| 1usize << c).unwrap_or(0);
        for i in 0..self.amps.len() {
            if i & tstep == 0 && (i & cmask) == cmask {
                let j = i | tstep;
                let (a0, a1) = (self.amps[i], self.amps[j]);
                let (b0, b1) = f(a0, a1);
                self.amps[i] = b0;
                self.amps[j] = b1;
            }
        }
    }

    /// S-dagger on one qubit (|1> picks up -i); measurement basis change for Y.
    pub(crate) fn apply_sdg(&mut self, qubit: usize) {
        let step = 1usize << qubit;
        for (i, a) in self.amps.iter_mut().enumerate() {
            if i & step != 0 {
                *a *= Complex64::new(0.0, -1.0);
            }
        }
    }

    pub(crate) fn apply_h(&mut self, qubit: usize) {
        self.pairwise(qubit, None, |a0, a1| {
            (FRAC_1_SQRT_2 * (a0 + a1), FRAC_1_SQRT_2 * (a0 - a1))
        });
    }

    /// Draw `shots` independent basis-state indices from |amplitude|^2.
    pub fn sample_bitstrings(&self, shots: usize, rng: &mut RngStream) -> Vec<usize> {
        let mut cdf = Vec::with_capacity(self.amps.len());
        let mut acc = 0.0;
        for a in &self.amps {
            acc += a.norm_sqr();
            cdf.push(acc);
        }
        let total = acc;
        (0..shots)
            .map(|_| {
                let u = rng.uniform(0.0, total);
                cdf.partition_point(|&c| c <= u).min(self.amps.len() - 1)
            })
            .collect()
    }

    /// Render a sampled index as a bitstring label, fermion bit first.
    pub fn bit_label(&self, index: usize) -> String {
        (0..self.n_qubits)
            .rev()
            .map(|q| if index >> q & 1 == 1 { '1' } else { '0' })
            .collect()
    }
}

/// Energy of the circuit state under a Pauli-decomposed Hamiltonian.
///
/// `shots: None` is exact mode. In shot mode every non-identity term is
/// measured on its own circuit with `shots` samples.
pub fn estimate_energy(
    ps: &PauliSum,
    circuit: &Circuit,
    params: &[f64],
    shots: Option<usize>,
    rng: &mut RngStream,
) -> Result<f64> {
    if ps.n_qubits != circuit.n_qubits {
        return Err(Error::DimensionMismatch(format!(
            "Pauli sum on {} qubits, circuit on {}",
            ps.n_qubits, circuit.n_qubits
        )));
    }
    let state = circuit.run(params)?;
    match shots {
        None => ps.expectation(&state),
        Some(0) => Err(Error::InvalidConfig("shot count must be positive".into())),
        Some(shots) => {
            let n = ps.n_qubits;
            let mut total = 0.0;
            for term in &ps.terms {
                let support: Vec<usize> = term
                    .label
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| **p != Pauli::I)
                    .map(|(pos, _)| n - 1 - pos)
                    .collect();
                if support.is_empty() {
                    total += term.coefficient;
                    continue;
                }
                let mut measured = state.clone();
                for (pos, p) in term.label.iter().enumerate() {
                    let qubit = n - 1 - pos;
                    match p {
                        Pauli::X => measured.apply_h(qubit),
                        Pauli::Y => {
                            measured.apply_sdg(qubit);
                            measured.apply_h(qubit);
                        }
                        Pauli::I | Pauli::Z => {}
                    }
                }
                let mut mask = 0usize;
                for q in &support {
                    mask |= 1 << q;
                }
                let samples = measured.sample_bitstrings(shots, rng);
                let parity_sum: i64 = samples
                    .iter()
                    .map(|&idx| if (idx & mask).count_ones() % 2 == 0 { 1i64 } else { -1 })
                    .sum();
                total += term.coefficient * parity_sum as f64 / shots as f64;
            }
            Ok(total)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::Superpotential;
    use crate::pauli::hamiltonian_sum;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn ry_zero_is_identity() {
        let mut c = Circuit::new(1, "0").unwrap();
        c.push(GateKind::Ry, None, 0).unwrap();
        let sv = c.run(&[0.0]).unwrap();
        assert_abs_diff_eq!(sv.amplitudes()[0].re, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn ry_pi_flips() {
        let mut c = Circuit::new(1, "0").unwrap();
        c.push(GateKind::Ry, None, 0).unwrap();
        let sv = c.run(&[PI]).unwrap();
        assert!(sv.amplitudes()[0].norm() < 1e-15);
        assert_abs_diff_eq!(sv.amplitudes()[1].norm(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn gates_preserve_norm_and_invert() {
        let mut c = Circuit::new(3, "010").unwrap();
        c.push(GateKind::Ry, None, 0).unwrap();
        c.push(GateKind::H, None, 1).unwrap();
        c.push(GateKind::Cry, Some(1), 2).unwrap();
        c.push(GateKind::Rz, None, 0).unwrap();
        c.push(GateKind::Cnot, Some(0), 1).unwrap();
        let sv = c.run(&[0.7, -1.3, 2.1]).unwrap();
        assert_abs_diff_eq!(sv.norm_sqr(), 1.0, epsilon = 1e-12);

        // Undo each gate with the negated angle, in reverse order.
        let mut undo = sv.clone();
        undo.apply_gate(&Gate::cnot(0, 1), 0.0).unwrap();
        undo.apply_gate(&Gate::rz(0, 0), -2.1).unwrap();
        undo.apply_gate(&Gate::cry(1, 2, 0), 1.3).unwrap();
        undo.apply_gate(&Gate::h(1), 0.0).unwrap();
        undo.apply_gate(&Gate::ry(0, 0), -0.7).unwrap();
        let expect = Statevector::basis(3, "010").unwrap();
        let fidelity = undo.overlap_sqr(&expect).unwrap();
        assert_abs_diff_eq!(fidelity, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn circuit_rejects_bad_indices() {
        let mut c = Circuit::new(2, "00").unwrap();
        assert!(c.push(GateKind::Ry, None, 2).is_err());
        assert!(c.push(GateKind::Cry, Some(0), 0).is_err());
        assert!(c.push(GateKind::Cnot, None, 1).is_err());
        assert!(c.push(GateKind::X, Some(0), 1).is_err());
    }

    #[test]
    fn basis_label_round_trip() {
        let sv = Statevector::basis(3, "100").unwrap();
        assert_abs_diff_eq!(sv.amplitudes()[4].re, 1.0, epsilon = 1e-15);
        assert_eq!(sv.bit_label(4), "100");
    }

    #[test]
    fn sampling_from_basis_state_is_constant() {
        let sv = Statevector::basis(2, "01").unwrap();
        let mut rng = RngStream::new(1);
        let samples = sv.sample_bitstrings(50, &mut rng);
        assert!(samples.iter().all(|&s| s == 1));
    }

    #[test]
    fn sampling_uniform_superposition_frequencies() {
        // H|0>: each outcome within 5 sigma of 0.5 over 1e5 shots.
        let mut sv = Statevector::basis(1, "0").unwrap();
        sv.apply_h(0);
        let shots = 100_000;
        let mut rng = RngStream::new(7);
        let ones = sv.sample_bitstrings(shots, &mut rng).iter().filter(|&&s| s == 1).count();
        let sigma = 0.5 * (shots as f64).sqrt();
        assert!(((ones as f64) - shots as f64 * 0.5).abs() < 5.0 * sigma);
    }

    #[test]
    fn sampling_is_seed_deterministic() {
        let mut sv = Statevector::basis(2, "00").unwrap();
        sv.apply_h(0);
        sv.apply_h(1);
        let a = sv.sample_bitstrings(100, &mut RngStream::new(99));
        let b = sv.sample_bitstrings(100, &mut RngStream::new(99));
        assert_eq!(a, b);
    }

    #[test]
    fn exact_energy_on_identity_sum() {
        use crate::pauli::{PauliString, PauliSum};
        let ps = PauliSum {
            n_qubits: 2,
            terms: vec![PauliString { label: vec![Pauli::I, Pauli::I], coefficient: 0.25 }],
        };
        let mut c = Circuit::new(2, "00").unwrap();
        c.push(GateKind::Ry, None, 0).unwrap();
        let mut rng = RngStream::new(0);
        // identity-only: exact in both modes, zero variance
        assert_abs_diff_eq!(
            estimate_energy(&ps, &c, &[0.3], None, &mut rng).unwrap(),
            0.25,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            estimate_energy(&ps, &c, &[0.3], Some(10), &mut rng).unwrap(),
            0.25,
            epsilon = 1e-15
        );
    }

    #[test]
    fn zero_shots_rejected() {
        let ps = hamiltonian_sum(&Superpotential::ho(), 2).unwrap();
        let c = Circuit::new(2, "10").unwrap();
        let mut rng = RngStream::new(0);
        assert!(estimate_energy(&ps, &c, &[], Some(0), &mut rng).is_err());
    }

    #[test]
    fn shot_estimator_consistent_with_exact() {
        // Mean of repeated shot estimates within 5 SEM of the exact value.
        let sp = Superpotential::aho();
        let ps = hamiltonian_sum(&sp, 4).unwrap();
        let mut c = Circuit::new(3, sp.initial_state_label(4)).unwrap();
        c.push(GateKind::Ry, None, 1).unwrap();
        c.push(GateKind::Cry, Some(1), 0).unwrap();
        let params = [0.8, -0.4];
        let mut rng = RngStream::new(42);
        let exact = estimate_energy(&ps, &c, &params, None, &mut rng).unwrap();
        let reps = 200;
        let estimates: Vec<f64> = (0..reps)
            .map(|i| {
                let mut r = RngStream::derive(42, i as u64);
                estimate_energy(&ps, &c, &params, Some(256), &mut r).unwrap()
            })
            .collect();
        let mean = estimates.iter().sum::<f64>() / reps as f64;
        let var = estimates.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / (reps - 1) as f64;
        let sem = (var / reps as f64).sqrt();
        assert!(
            (mean - exact).abs() < 5.0 * sem.max(1e-9),
            "mean {mean} vs exact {exact}, sem {sem}"
        );
    }

    #[test]
    fn derived_seeds_differ() {
        let s: Vec<u64> = (0..100).map(|i| derive_seed(12345, i)).collect();
        let mut dedup = s.clone();
        dedup.sort_unstable();
        dedup.dedup();
        assert_eq!(dedup.len(), s.len());
    }
}
