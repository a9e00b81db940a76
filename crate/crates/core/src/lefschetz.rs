//! Fixed-point data of the Galois involution σ: the size of `ℋ¹(𝔞₀)`, Euler
//! characteristics of the fixed-point components, the Lefschetz number, the
//! resulting lower bound for `dim H¹(Γ(𝔞₀), C)` and growth tables.

use std::f64::consts::PI;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::congruence::{index_k0, indices, torsion_free_sufficient};
use crate::error::{Error, Result};
use crate::fields::{ExtensionSpec, FactoredIdealF};
use crate::numtheory::{decimal, zeta_2_numeric, zeta_minus1, ApproxReal, ExactRational};
use crate::quatalg::{HyperbolicSetting, QuaternionSpec};

/// Relative agreement demanded between the exact and the numeric form.
pub const DUAL_FORMULA_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct H1Size {
    /// `2^{c+ρ(𝔞₀)}`.
    pub value: u64,
    /// True iff `E/F` is unramified over 2, so the contribution of the primes
    /// above 2 is trivial; otherwise `value` is a lower bound.
    pub exact: bool,
}

/// `|ℋ¹(𝔞₀)| = 2^{c+ρ(𝔞₀)}·|H¹(σ, K(𝔞₀,2))|`; the last factor is 1 when `E/F`
/// is unramified over 2 and unknown (at least 1) otherwise.
pub fn h1_size(ext: &ExtensionSpec, d0: &QuaternionSpec, a0: &FactoredIdealF) -> H1Size {
    let c = d0.counts(ext).c;
    let rho = ext.rho(a0);
    H1Size {
        value: 1u64 << (c + rho),
        exact: matches!(ext.unramified_over_2(), Ok(true)),
    }
}

/// `χ = (−1/2)^r ζ_F(−1) [K₀:K₀(𝔞₀)] Δ(D₀)`.
pub fn euler_char_component(d0: &QuaternionSpec, a0: &FactoredIdealF) -> Result<ExactRational> {
    let idx = ExactRational::from(index_k0(d0, a0)?);
    let sign = ExactRational::new(-1, 2).pow(d0.r as i32);
    Ok(sign * zeta_minus1(&d0.base) * idx * ExactRational::from(d0.delta() as i64))
}

/// The same Euler characteristic through `(−2)^s (4π²)^{−d} ζ_F(2) |disc_F|^{3/2}`.
pub fn euler_char_numeric(d0: &QuaternionSpec, a0: &FactoredIdealF, tol: f64) -> Result<ApproxReal> {
    let z = zeta_2_numeric(&d0.base, tol)?;
    let d = d0.base.degree as i32;
    let scale = (-2f64).powi(d0.s as i32)
        * (4.0 * PI * PI).powi(-d)
        * (d0.base.discriminant as f64).powf(1.5)
        * d0.delta() as f64
        * ExactRational::from(index_k0(d0, a0)?).to_f64();
    Ok(ApproxReal {
        value: scale * z.value,
        tol: scale.abs() * (z.tol + 8.0 * f64::EPSILON * z.value),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LefschetzMode {
    Exact,
    LowerBound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LefschetzComponents {
    pub d: u32,
    pub s: u32,
    pub r: u32,
    pub c: u32,
    pub rho: u32,
    pub delta: u64,
    #[serde(with = "decimal")]
    pub index_k0: BigUint,
    pub zeta_minus1: ExactRational,
    /// Whether the factor `|H¹(σ, K(𝔞₀,2))|` is known (it is 1 when `E/F` is unramified over 2).
    pub h1_factor_known: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LefschetzReport {
    pub mode: LefschetzMode,
    pub sign: i8,
    /// The Lefschetz number, present in exact mode.
    pub value: Option<ExactRational>,
    /// `2^{c+ρ−r}(−1)^d ζ_F(−1) Δ [K₀:K₀(𝔞₀)]`, a lower bound for `|ℒ|`.
    pub magnitude_bound: ExactRational,
    pub components: LefschetzComponents,
    pub h1: H1Size,
    pub euler_characteristic: ExactRational,
    pub torsion_verified: bool,
    /// Cross-check: the magnitude through `ζ_F(2)|disc_F|^{3/2}(2π²)^{−d}`.
    pub numeric_magnitude: ApproxReal,
}

fn require_proper(a0: &FactoredIdealF) -> Result<()> {
    if a0.is_unit() {
        return Err(Error::Invalid("the congruence ideal must be a proper ideal".into()));
    }
    Ok(())
}

/// The Lefschetz number `ℒ(σ, Γ(𝔞₀))`, exact when `E/F` is unramified over 2.
pub fn lefschetz_number(
    ext: &ExtensionSpec,
    d0: &QuaternionSpec,
    a0: &FactoredIdealF,
    tol: f64,
) -> Result<LefschetzReport> {
    require_proper(a0)?;
    if d0.base != ext.base {
        return Err(Error::Invalid("algebra and extension over different fields".into()));
    }
    if !d0.strong_approximation(ext) {
        return Err(Error::Setting(vec![
            "strong approximation fails: every archimedean place of E ramifies in D".into(),
        ]));
    }
    let counts = d0.counts(ext);
    let rho = ext.rho(a0);
    let idx = index_k0(d0, a0)?;
    let zeta = zeta_minus1(&d0.base);
    let delta = d0.delta();
    let h1 = h1_size(ext, d0, a0);
    let euler = euler_char_component(d0, a0)?;

    let d_sign = ExactRational::from(if counts.d % 2 == 0 { 1 } else { -1 });
    let magnitude_bound = ExactRational::power_of_two(counts.c as i64 + rho as i64 - counts.r as i64)
        * &d_sign
        * &zeta
        * ExactRational::from(delta as i64)
        * ExactRational::from(idx.clone());
    let sign: i8 = if counts.s % 2 == 0 { 1 } else { -1 };

    let value = if h1.exact {
        let product = ExactRational::from(h1.value as i64) * &euler;
        let closed = ExactRational::from(sign as i64) * &magnitude_bound;
        if product != closed {
            return Err(Error::Consistency(format!(
                "h1 * chi = {product} but the closed form gives {closed}"
            )));
        }
        let even = product
            .to_integer()
            .is_some_and(|n| (n % 2u32) == 0u32.into());
        if !even || product.signum() != sign {
            return Err(Error::Consistency(format!(
                "Lefschetz number {product} is not an even integer of sign {sign}"
            )));
        }
        Some(product)
    } else {
        None
    };

    let z2 = zeta_2_numeric(&d0.base, tol)?;
    let d = counts.d as i32;
    let scale = 2f64.powi(counts.c as i32 + rho as i32 - counts.r as i32)
        * (d0.base.discriminant as f64).powf(1.5)
        * (2.0 * PI * PI).powi(-d)
        * delta as f64
        * ExactRational::from(idx.clone()).to_f64();
    let numeric_magnitude = ApproxReal {
        value: scale * z2.value,
        tol: scale * (z2.tol + 8.0 * f64::EPSILON * z2.value),
    };
    let exact_f = magnitude_bound.to_f64();
    if (numeric_magnitude.value - exact_f).abs() > DUAL_FORMULA_TOLERANCE * exact_f.abs() {
        return Err(Error::Consistency(format!(
            "numeric magnitude {} disagrees with exact {exact_f}",
            numeric_magnitude.value
        )));
    }

    Ok(LefschetzReport {
        mode: if h1.exact { LefschetzMode::Exact } else { LefschetzMode::LowerBound },
        sign,
        value,
        magnitude_bound,
        components: LefschetzComponents {
            d: counts.d,
            s: counts.s,
            r: counts.r,
            c: counts.c,
            rho,
            delta,
            index_k0: idx,
            zeta_minus1: zeta,
            h1_factor_known: h1.exact,
        },
        h1,
        euler_characteristic: euler,
        torsion_verified: torsion_free_sufficient(a0),
        numeric_magnitude,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BettiBound {
    /// `2^{ρ−d}(−1)^d ζ_F(−1) Δ [K₀:K₀(𝔞₀)] + (−1)^{s+1}`.
    pub value: ExactRational,
    /// The same through `2^ρ (2π)^{−2d} ζ_F(2) |disc_F|^{3/2} Δ [K₀:K₀(𝔞₀)] + (−1)^{s+1}`.
    pub numeric: ApproxReal,
    pub rho: u32,
    #[serde(with = "decimal")]
    pub index_k0: BigUint,
    pub torsion_verified: bool,
}

fn require_compact_setting(setting: &HyperbolicSetting) -> Result<()> {
    let mut problems = Vec::new();
    if !setting.division {
        problems.push("D = D0 ⊗ E is not a division algebra".to_string());
    }
    if setting.extension.signature != 1 {
        problems.push("E must have exactly one complex place".to_string());
    }
    if problems.is_empty() {
        Ok(())
    } else {
        Err(Error::Setting(problems))
    }
}

/// Lower bound for `dim H¹(Γ(𝔞₀), C)` in the compact hyperbolic setting.
pub fn betti_lower_bound(setting: &HyperbolicSetting, a0: &FactoredIdealF, tol: f64) -> Result<BettiBound> {
    require_compact_setting(setting)?;
    require_proper(a0)?;
    let ext = &setting.extension;
    let d0 = &setting.algebra;
    let counts = setting.counts;
    let rho = ext.rho(a0);
    let idx = index_k0(d0, a0)?;
    let tail = ExactRational::from(if counts.s % 2 == 1 { 1 } else { -1 });
    let d_sign = ExactRational::from(if counts.d % 2 == 0 { 1 } else { -1 });
    let value = ExactRational::power_of_two(rho as i64 - counts.d as i64)
        * d_sign
        * zeta_minus1(&d0.base)
        * ExactRational::from(d0.delta() as i64)
        * ExactRational::from(idx.clone())
        + tail.clone();

    let report = lefschetz_number(ext, d0, a0, tol)?;
    let via_report = report.magnitude_bound / ExactRational::from(2) + tail.clone();
    if via_report != value {
        return Err(Error::Consistency(format!(
            "Betti bound {value} differs from |L|/2 + (-1)^(s+1) = {via_report}"
        )));
    }

    let z2 = zeta_2_numeric(&d0.base, tol)?;
    let scale = 2f64.powi(rho as i32)
        * (2.0 * PI).powi(-2 * counts.d as i32)
        * (d0.base.discriminant as f64).powf(1.5)
        * d0.delta() as f64
        * ExactRational::from(idx.clone()).to_f64();
    let numeric = ApproxReal {
        value: scale * z2.value + tail.to_f64(),
        tol: scale * (z2.tol + 8.0 * f64::EPSILON * z2.value),
    };
    let exact_f = value.to_f64();
    if (numeric.value - exact_f).abs() > DUAL_FORMULA_TOLERANCE * exact_f.abs().max(1.0) {
        return Err(Error::Consistency(format!(
            "numeric Betti bound {} disagrees with exact {exact_f}",
            numeric.value
        )));
    }
    Ok(BettiBound {
        value,
        numeric,
        rho,
        index_k0: idx,
        torsion_verified: torsion_free_sufficient(a0),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthRow {
    pub ideal: String,
    /// `[Γ(1):Γ(𝔞)]`.
    #[serde(with = "decimal")]
    pub index: BigUint,
    pub betti_bound: ExactRational,
    /// `betti_bound / index^{1/2}`.
    pub ratio: f64,
    /// `2^{ρ(𝔞)}(2π)^{−2d}|disc_F|^{3/2}Δ − index^{−1/2}`, guaranteed `≤ ratio`.
    pub floor: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthTable {
    pub rows: Vec<GrowthRow>,
    /// Smallest observed ratio.
    pub kappa: f64,
    /// Smallest guaranteed floor over the rows.
    pub certified_kappa: f64,
    /// `2^{ρ}(2π)^{−2d}|disc_F|^{3/2}Δ` for the last ideal.
    pub reference_constant: f64,
}

impl GrowthTable {
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let fail = |e: csv::Error| Error::Invalid(e.to_string());
        w.write_record(["ideal", "index", "betti_bound", "ratio"]).map_err(fail)?;
        for row in &self.rows {
            w.write_record([
                row.ideal.clone(),
                row.index.to_string(),
                row.betti_bound.to_string(),
                format!("{:.12}", row.ratio),
            ])
            .map_err(fail)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Invalid(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

/// Betti bounds along a strictly decreasing chain of ideals.
pub fn growth_table(
    setting: &HyperbolicSetting,
    ideals: &[FactoredIdealF],
    tol: f64,
) -> Result<GrowthTable> {
    if ideals.is_empty() {
        return Err(Error::Invalid("empty ideal sequence".into()));
    }
    for pair in ideals.windows(2) {
        if !pair[0].divides(&pair[1]) || pair[0] == pair[1] {
            return Err(Error::Invalid(format!(
                "ideal sequence is not strictly decreasing at {} -> {}",
                pair[0], pair[1]
            )));
        }
    }
    if let Some(bad) = ideals.iter().find(|a| !torsion_free_sufficient(a)) {
        return Err(Error::Invalid(format!(
            "the torsion-freeness condition fails for {bad}"
        )));
    }
    let ext = &setting.extension;
    let d0 = &setting.algebra;
    let d = d0.base.degree as i32;
    let constant = |rho: u32| {
        2f64.powi(rho as i32)
            * (2.0 * PI).powi(-2 * d)
            * (d0.base.discriminant as f64).powf(1.5)
            * d0.delta() as f64
    };
    let mut rows = Vec::with_capacity(ideals.len());
    for a in ideals {
        let bound = betti_lower_bound(setting, a, tol)?;
        let index = indices(d0, ext, a)?.index_k;
        let sqrt_index = ExactRational::from(index.clone()).to_f64().sqrt();
        let ratio = bound.value.to_f64() / sqrt_index;
        let floor = constant(bound.rho) - 1.0 / sqrt_index;
        if ratio < floor - 1e-12 {
            return Err(Error::Consistency(format!(
                "ratio {ratio} below the guaranteed floor {floor} for {a}"
            )));
        }
        rows.push(GrowthRow { ideal: a.to_string(), index, betti_bound: bound.value, ratio, floor });
    }
    let kappa = rows.iter().map(|r| r.ratio).fold(f64::INFINITY, f64::min);
    let certified_kappa = rows.iter().map(|r| r.floor).fold(f64::INFINITY, f64::min);
    let last = ideals.last().expect("nonempty");
    Ok(GrowthTable {
        rows,
        kappa,
        certified_kappa,
        reference_constant: constant(ext.rho(last)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{BaseField, Theta};
    use crate::quatalg::validate_hyperbolic;

    fn ideal(n: u64) -> FactoredIdealF {
        FactoredIdealF::from_integer(&BaseField::rationals(), n).unwrap()
    }

    fn compact() -> HyperbolicSetting {
        validate_hyperbolic(
            &ExtensionSpec::over_q(-7).unwrap(),
            &QuaternionSpec::hilbert(-1, -1).unwrap(),
            true,
        )
        .unwrap()
    }

    #[test]
    fn h1_examples() {
        let e = ExtensionSpec::over_q(-7).unwrap();
        let h = h1_size(&e, &QuaternionSpec::hilbert(-1, -1).unwrap(), &ideal(9));
        assert_eq!(h, H1Size { value: 4, exact: true });
        let h = h1_size(&e, &QuaternionSpec::matrix(BaseField::rationals()), &ideal(9));
        assert_eq!(h, H1Size { value: 2, exact: true });
        let gauss = ExtensionSpec::over_q(-1).unwrap();
        let h = h1_size(&gauss, &QuaternionSpec::hilbert(-1, -1).unwrap(), &ideal(15));
        assert_eq!(h, H1Size { value: 2, exact: false });
    }

    #[test]
    fn euler_examples() {
        let d0 = QuaternionSpec::hilbert(-1, -1).unwrap();
        assert_eq!(euler_char_component(&d0, &ideal(9)).unwrap(), ExactRational::from(27));
        let m = QuaternionSpec::matrix(BaseField::rationals());
        assert_eq!(euler_char_component(&m, &ideal(9)).unwrap(), ExactRational::from(-54));
        assert_eq!(
            euler_char_component(&d0, &FactoredIdealF::unit()).unwrap(),
            ExactRational::new(1, 24)
        );
        let num = euler_char_numeric(&d0, &ideal(9), 1e-12).unwrap();
        assert!((num.value - 27.0).abs() < 1e-9);
    }

    #[test]
    fn lefschetz_examples() {
        let e = ExtensionSpec::over_q(-7).unwrap();
        let r = lefschetz_number(&e, &QuaternionSpec::hilbert(-1, -1).unwrap(), &ideal(9), 1e-12).unwrap();
        assert_eq!(r.mode, LefschetzMode::Exact);
        assert_eq!(r.value, Some(ExactRational::from(108)));
        assert_eq!(r.sign, 1);
        assert_eq!(r.magnitude_bound, ExactRational::from(108));
        let r = lefschetz_number(&e, &QuaternionSpec::hilbert(-1, 3).unwrap(), &ideal(5), 1e-12).unwrap();
        assert_eq!(r.value, Some(ExactRational::from(-40)));
        assert_eq!((r.components.s, r.components.c, r.components.rho, r.components.delta), (1, 0, 1, 2));
        let e5 = ExtensionSpec::over_q(5).unwrap();
        let r = lefschetz_number(&e5, &QuaternionSpec::matrix(BaseField::rationals()), &ideal(4), 1e-12)
            .unwrap();
        assert_eq!(r.value, Some(ExactRational::from(-8)));
    }

    #[test]
    fn lefschetz_requires_strong_approximation() {
        let e5 = ExtensionSpec::over_q(5).unwrap();
        let err = lefschetz_number(&e5, &QuaternionSpec::hilbert(-1, -1).unwrap(), &ideal(9), 1e-12);
        assert!(matches!(err, Err(Error::Setting(_))));
    }

    #[test]
    fn lower_bound_mode_when_two_ramifies() {
        let e = ExtensionSpec::over_q(-1).unwrap();
        let r = lefschetz_number(&e, &QuaternionSpec::hilbert(-1, 3).unwrap(), &ideal(25), 1e-12).unwrap();
        assert_eq!(r.mode, LefschetzMode::LowerBound);
        assert!(r.value.is_none());
        assert_eq!(r.sign, -1);
        assert!(r.magnitude_bound.signum() > 0);
    }

    #[test]
    fn betti_examples() {
        let s = compact();
        assert_eq!(betti_lower_bound(&s, &ideal(9), 1e-12).unwrap().value, ExactRational::from(53));
        assert_eq!(betti_lower_bound(&s, &ideal(6), 1e-12).unwrap().value, ExactRational::from(23));
        let s2 = validate_hyperbolic(
            &ExtensionSpec::over_q(-7).unwrap(),
            &QuaternionSpec::hilbert(-1, 3).unwrap(),
            true,
        )
        .unwrap();
        assert_eq!(betti_lower_bound(&s2, &ideal(5), 1e-12).unwrap().value, ExactRational::from(21));
    }

    #[test]
    fn growth_examples() {
        let s = compact();
        let t = growth_table(&s, &[ideal(9), ideal(36), ideal(180)], 1e-12).unwrap();
        assert_eq!(t.rows.len(), 3);
        assert!(t.kappa > 0.0);
        assert!(t.rows.windows(2).all(|w| w[0].index < w[1].index));
        let one = growth_table(&s, &[ideal(9)], 1e-12).unwrap();
        assert_eq!(one.kappa, one.rows[0].ratio);
        assert!(growth_table(&s, &[ideal(9), ideal(12)], 1e-12).is_err());
        assert!(growth_table(&s, &[ideal(9), ideal(9)], 1e-12).is_err());
        let csv = t.to_csv().unwrap();
        assert!(csv.starts_with("ideal,index,betti_bound,ratio\n"));
    }

    #[test]
    fn real_quadratic_setting() {
        let f = BaseField::real_quadratic(5).unwrap();
        let e = ExtensionSpec::new(f.clone(), Theta { u: 2, v: -1 }).unwrap();
        // E is complex over place 0, so D₀ must ramify at place 1.
        let d0 = QuaternionSpec::from_ramification(f.clone(), &["inf.1".into(), "inf.2".into()]).unwrap();
        let s = validate_hyperbolic(&e, &d0, false).unwrap();
        assert_eq!((s.counts.s, s.counts.r, s.counts.c), (0, 2, 1));
        let a0 = FactoredIdealF::parse(&f, "11.1^2").unwrap();
        let r = lefschetz_number(&e, &d0, &a0, 1e-12).unwrap();
        if let Some(v) = &r.value {
            assert_eq!(v.signum(), 1);
            assert!(v.is_integer());
        }
        assert_eq!(r.magnitude_bound.signum(), 1);
    }
}
