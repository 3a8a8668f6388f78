//! Floquet codes on the hexagonal torus.

pub mod automorphism;
pub mod honeycomb;

pub use automorphism::{
    expected_isg, replay, EmCode, LogicalLoop, LogicalTrack, LoopKind, ProductReport, RoundProducts, SignLedger, Violation,
};
pub use honeycomb::{HoneycombCode, HoneycombReport};
