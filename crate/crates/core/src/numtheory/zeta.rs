use serde::{Deserialize, Serialize};

use super::arith::{divisor_sum, kronecker_symbol};
use super::rational::ExactRational;
use crate::error::{Error, Result};
use crate::fields::{BaseField, FieldKind};

/// Smallest tolerance accepted by [`zeta_2_numeric`].
pub const MIN_TOLERANCE: f64 = 1e-12;

/// A floating-point value together with a guaranteed absolute error bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApproxReal {
    pub value: f64,
    pub tol: f64,
}

/// A field whose Dedekind zeta value at 2 can be evaluated: `Q` or a quadratic
/// field given by its fundamental discriminant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZetaField {
    Rationals,
    Quadratic { discriminant: i64 },
}

impl From<&BaseField> for ZetaField {
    fn from(f: &BaseField) -> Self {
        match f.kind {
            FieldKind::Rationals => ZetaField::Rationals,
            FieldKind::RealQuadratic => ZetaField::Quadratic { discriminant: f.discriminant },
        }
    }
}

/// ζ_F(−1) for `F = Q` or real quadratic `F`.
///
/// Real quadratic fields use Siegel's divisor-sum formula
/// `ζ_F(−1) = (1/60) Σ σ₁((Δ − b²)/4)` over `b² < Δ`, `b ≡ Δ (mod 2)`.
pub fn zeta_minus1(field: &BaseField) -> ExactRational {
    match field.kind {
        FieldKind::Rationals => ExactRational::new(-1, 12),
        FieldKind::RealQuadratic => {
            let disc = field.discriminant;
            let mut total: u64 = 0;
            let mut b = disc % 2;
            while b * b < disc {
                let weight = if b == 0 { 1 } else { 2 };
                total += weight * divisor_sum(((disc - b * b) / 4) as u64);
                b += 2;
            }
            ExactRational::new(total as i64, 60)
        }
    }
}

// B_2, B_4, ..., B_16 and |B_18|.
const BERNOULLI: [f64; 8] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
];
const BERNOULLI_18_ABS: f64 = 43867.0 / 798.0;

/// ζ(2, q) by Euler–Maclaurin after `head` explicit terms.
/// Returns the value and a bound on the truncation error.
fn hurwitz_zeta2(q: f64, head: usize) -> (f64, f64) {
    let mut acc = Neumaier::default();
    for n in (0..head).rev() {
        let x = n as f64 + q;
        acc.add(1.0 / (x * x));
    }
    let x = head as f64 + q;
    acc.add(1.0 / x);
    acc.add(0.5 / (x * x));
    let mut xp = x * x * x;
    for b in BERNOULLI {
        acc.add(b / xp);
        xp *= x * x;
    }
    (acc.total(), BERNOULLI_18_ABS / xp)
}

#[derive(Default)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

/// `L(2, χ_D)` for the Kronecker character of discriminant `D`, via
/// `|D|^{-2} Σ_a χ(a) ζ(2, a/|D|)`. Returns value and error bound.
fn dirichlet_l2(disc: i64) -> (f64, f64) {
    let modulus = disc.unsigned_abs();
    let m2 = (modulus as f64) * (modulus as f64);
    let mut acc = Neumaier::default();
    let mut trunc = 0.0;
    let mut magnitude = 0.0;
    for a in 1..=modulus {
        let chi = kronecker_symbol(disc, a as i64);
        if chi == 0 {
            continue;
        }
        let (h, err) = hurwitz_zeta2(a as f64 / modulus as f64, 16);
        acc.add(chi as f64 * h / m2);
        trunc += err / m2;
        magnitude += h / m2;
    }
    let rounding = 64.0 * f64::EPSILON * magnitude;
    (acc.total(), trunc + rounding)
}

/// ζ_K(2) for `Q` or a quadratic field, with a guaranteed absolute error ≤ `tol`.
pub fn zeta_2_numeric(field: impl Into<ZetaField>, tol: f64) -> Result<ApproxReal> {
    if !(tol >= MIN_TOLERANCE) {
        return Err(Error::Invalid(format!(
            "tolerance {tol} below the supported minimum {MIN_TOLERANCE}"
        )));
    }
    let (zeta, zeta_err) = {
        let (v, e) = hurwitz_zeta2(1.0, 16);
        (v, e + 64.0 * f64::EPSILON * v)
    };
    let (value, err) = match field.into() {
        ZetaField::Rationals => (zeta, zeta_err),
        ZetaField::Quadratic { discriminant } => {
            if discriminant == 1 || discriminant == 0 {
                return Err(Error::Invalid(format!("bad discriminant {discriminant}")));
            }
            let (l, l_err) = dirichlet_l2(discriminant);
            let err = zeta_err * l.abs() + zeta * l_err + zeta_err * l_err
                + 4.0 * f64::EPSILON * zeta * l.abs();
            (zeta * l, err)
        }
    };
    if err > tol {
        return Err(Error::Consistency(format!(
            "error bound {err:e} exceeds requested tolerance {tol:e}"
        )));
    }
    Ok(ApproxReal { value, tol })
}

/// Left-hand side of the functional-equation identity
/// `ζ_F(2)·|disc_F|^{3/2}·(2π²)^{−d} = (−1)^d ζ_F(−1)`.
pub fn functional_equation_lhs(field: &BaseField, tol: f64) -> Result<f64> {
    let z2 = zeta_2_numeric(field, tol)?;
    let d = field.degree as i32;
    let disc = field.discriminant as f64;
    let two_pi_sq = 2.0 * std::f64::consts::PI * std::f64::consts::PI;
    Ok(z2.value * disc.powf(1.5) / two_pi_sq.powi(d))
}
