//! Qubit digitization of single-site supersymmetric quantum mechanics.
//!
//! A single fermionic mode couples to a bosonic mode through a choice of
//! superpotential. Truncating the boson to `lambda = 2^B` Fock levels turns
//! the Hamiltonian into a finite matrix that fits on `B + 1` qubits, where it
//! can be written as a sum of Pauli strings and attacked with variational
//! methods. Whether supersymmetry survives or breaks spontaneously is read
//! off the low-lying spectrum: a single zero-energy ground state means
//! preserved supersymmetry, a degenerate pair of positive-energy ground
//! states means spontaneous breaking.
//!
//! The crate provides, module by module:
//!
//! - [`hamiltonian`]: truncated operators, fermion-sector blocks, supercharge
//! - [`pauli`]: Pauli-string decomposition, term counting, exact expectations
//! - [`simulator`]: statevector circuits, shot-based estimation, seeded RNG
//! - [`exactdiag`]: dense eigensolver and spectrum/pairing reports
//! - [`optimize`]: derivative-free optimizers with evaluation accounting
//! - [`vqe`]: ansatz catalogue and batched variational ground-state search
//! - [`avqe`]: adaptive ansatz construction from an operator pool
//! - [`vqd`]: overlap-penalized deflation for low-lying excited states
//! - [`cli`]: experiment orchestration and CSV/JSON emission
//!
//! The `book/` directory of the repository walks through the physics and the
//! algorithms chapter by chapter; its code snippets compile and run as doc
//! tests of this crate.

pub mod error;
pub mod exactdiag;
pub mod hamiltonian;
pub mod matrix;
pub mod optimize;
pub mod pauli;
pub mod simulator;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            #[allow(unused)]
            mod $name {}
        };
    }

    chapter!(introduction, "../../../book/src/introduction.md");
    chapter!(model, "../../../book/src/model.md");
    chapter!(digitization, "../../../book/src/digitization.md");
    chapter!(simulation, "../../../book/src/simulation.md");
    chapter!(optimizers, "../../../book/src/optimizers.md");
    chapter!(vqe_chapter, "../../../book/src/vqe.md");
    chapter!(avqe_chapter, "../../../book/src/avqe.md");
    chapter!(vqd_chapter, "../../../book/src/vqd.md");
    chapter!(experiments, "../../../book/src/experiments.md");
}
