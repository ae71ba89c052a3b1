//! Local-unitary partitioning of qubit Hamiltonians for measurement.
//!
//! A Hamiltonian is split into fragments whose terms are tensor products of
//! small blocks. Every fragment can be rotated to a diagonal form with a
//! circuit that acts on at most `k` qubits at a time, and the number of shots
//! needed to reach a target precision is estimated from the fragment
//! variances.

pub mod driver;
pub mod encodings;
pub mod error;
pub mod instances;
pub mod linalg;
pub mod operators;
pub mod partition;
pub mod pauli;
pub mod validate;
pub mod variance;

pub use error::{Caps, Error, Result};
pub use pauli::{Commutation, Pauli, PauliString, PauliSum};
