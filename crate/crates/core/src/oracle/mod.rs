//! Brute-force ground truth: finite quaternion rings `Λ₀ ⊗ O_E/𝔭ᵉ`, their
//! norm-one groups, and `H¹` of the Galois involution by exhaustive search.

pub mod cohomology;
pub mod quaternion;
pub mod ring;
pub mod verify;

pub use cohomology::{coboundary_witness, cocycles, h1, h1_classes, orbit, H1Result};
pub use quaternion::{D0Type, FiniteQuaternionRing, QEl, QuaternionModel, Strategy, DEFAULT_GUARD};
pub use ring::{El, ExtType, FiniteLocalRing, RingKind};
pub use verify::{
    exploration_table, explore_p2, verify_appendix, AppendixReport, ExplorationRow, H1Summary, OracleOptions,
    ProfileReport, RAMIFIED_RADICANDS_OVER_2,
};
