//! Exact integer and rational primitives, plus the zeta values every formula needs.
//!
//! ζ_F(−1) is always exact. ζ_F(2) is the only transcendental input and is
//! only used for cross-checks and for the real-valued bounds.

mod arith;
mod rational;
mod zeta;

pub use arith::{
    divisor_sum, exact_sqrt, factor_integer, is_prime, is_squarefree, kronecker_symbol, legendre,
    pow_mod, sqrt_mod_prime, squarefree_decomposition, valuation, PrimeFactorization,
};
pub use rational::{decimal, ExactRational};
pub use zeta::{
    functional_equation_lhs, zeta_2_numeric, zeta_minus1, ApproxReal, ZetaField, MIN_TOLERANCE,
};
