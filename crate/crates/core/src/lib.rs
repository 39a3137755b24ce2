//! Quantum discord and non-Markovianity of open quantum dynamics.
//!
//! The crate evolves small system (`S`), environment (`E`) and ancilla (`A`)
//! states exactly, computes entropic and correlation measures on the reduced
//! states, and turns the `S[rho_S] - S[rho_A]` lower bound on system-environment
//! discord into a non-Markovianity witness.
//!
//! - [`state`]: labelled density matrices and pure states, partial traces,
//!   purification, coherent states.
//! - [`correlations`]: entropy, concurrence, entanglement of formation,
//!   discord, the zero-discord commutator witness and the monogamy identity.
//! - [`dynamics`]: Jaynes-Cummings, two-qubit dephasing, Hadamard channel and
//!   custom Hamiltonians; trajectory generation.
//! - [`witness`]: non-Markovianity power integrals and reports.

pub mod correlations;
pub mod dynamics;
mod error;
pub mod linalg;
pub mod optimize;
pub mod state;
pub mod tol;
pub mod witness;

pub use error::{Error, Result};
