//! Exact invariants of congruence subgroups of norm-one groups of quaternion
//! algebras `D = D₀ ⊗ E` over a totally real field `F` (`Q` or real quadratic),
//! together with the Galois involution coming from the quadratic extension `E/F`.
//!
//! Headline quantities (indices, Euler characteristics, Lefschetz numbers,
//! Betti bounds) are exact rationals. A brute-force [`oracle`] over finite
//! quaternion rings recomputes the local group orders and cohomology sets that
//! the closed forms rely on.

pub mod bianchi;
pub mod config;
pub mod congruence;
pub mod error;
pub mod fields;
pub mod lefschetz;
pub mod numtheory;
pub mod oracle;
pub mod quatalg;

pub use error::{Error, Result};
