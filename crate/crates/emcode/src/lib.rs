//! Simulation workbench for the e↔m automorphism Floquet code, the honeycomb
//! code, the triangular-lattice toric-code family and the Kekulé–Kitaev
//! free-fermion model.

pub mod cli;
pub mod code;
pub mod dense;
pub mod error;
pub mod fermion;
pub mod kw;
pub mod lattice;
pub mod oracle;
pub mod pauli;
pub mod tableau;

pub use error::{Error, Result};
pub use pauli::{Pauli, PauliString};
pub use tableau::{Determinism, Measurement, Policy, StabilizerTableau};
