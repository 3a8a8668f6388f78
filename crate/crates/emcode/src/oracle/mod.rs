//! Dense-operator oracles: the KW channel matrices, the D/J operator algebra
//! and the triangular toric-code Hamiltonian family.

pub mod algebra;
pub mod family;
pub mod kw;

pub use algebra::{verify_dj_algebra, AlgebraReport};
pub use family::{build_d, build_j, verify_family, Family, FamilyReport, Spectral};
pub use kw::{compare_matrices, compare_with_formula, dense_kw_channel, formula_matrix};
