//! Enumerated group orders, local index ratios and `H¹` sizes, compared
//! against the closed forms of [`crate::congruence`].

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::cohomology::{coboundary_witness, h1, H1Result};
use super::quaternion::{D0Type, FiniteQuaternionRing, QEl, QuaternionModel, Strategy, DEFAULT_GUARD};
use super::ring::{least_nonsquare_unit, ExtType, FiniteLocalRing};
use crate::congruence::{order_g, order_g0, q_squared, LocalProfile};
use crate::error::{Error, Result};
use crate::fields::BaseField;
use crate::numtheory::{decimal, ExactRational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleOptions {
    pub guard: u128,
    /// Run every parallel step on one thread.
    pub single_thread: bool,
    /// Use `π² = u·p` with `u` a non-square unit instead of `u = 1`.
    pub nonsquare_unit: bool,
    /// Compute `H¹` for each profile.
    pub cohomology: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { guard: DEFAULT_GUARD, single_thread: false, nonsquare_unit: false, cohomology: true }
    }
}

impl OracleOptions {
    /// Run `f` on the global pool, or on a private single-thread pool.
    pub fn run<T: Send>(&self, f: impl FnOnce() -> T + Send) -> Result<T> {
        if self.single_thread {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(1)
                .build()
                .map_err(|e| Error::Invalid(e.to_string()))?;
            Ok(pool.install(f))
        } else {
            Ok(f())
        }
    }
}

/// `H¹` summary for one profile, with the expected class count where one is known.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct H1Summary {
    #[serde(flatten)]
    pub result: H1Result,
    pub expected_class_count: Option<u64>,
    /// For an expected count of 2: no `c` with `c⁻¹σ(c) = −1`, checked over all of `G`.
    pub minus_one_inequivalence_verified: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileReport {
    pub p: u32,
    pub e: u32,
    pub ext_type: ExtType,
    pub d0_type: D0Type,
    #[serde(with = "decimal")]
    pub group_order: BigUint,
    #[serde(with = "decimal")]
    pub expected_group_order: BigUint,
    #[serde(with = "decimal")]
    pub g0_order: BigUint,
    /// `|G₀|² / |G|` from the enumerated counts.
    pub q_squared: ExactRational,
    pub expected_q_squared: ExactRational,
    pub cocycle_count: Option<u64>,
    pub class_count: Option<u64>,
    pub h1: Option<H1Summary>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct G0Report {
    pub d0_type: D0Type,
    #[serde(with = "decimal")]
    pub order: BigUint,
    #[serde(with = "decimal")]
    pub expected: BigUint,
}

/// `Λ₀ ⊗ O_E` as a level-`p` Eichler order, for unramified `E` and division `D₀`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EichlerCheck {
    #[serde(with = "decimal")]
    pub eichler_order: BigUint,
    #[serde(with = "decimal")]
    pub division_order: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AppendixReport {
    pub p: u32,
    pub e: u32,
    pub unit: u32,
    pub g0: Vec<G0Report>,
    pub profiles: Vec<ProfileReport>,
    pub eichler: EichlerCheck,
    pub all_match: bool,
}

fn expected_classes(p: u32, e: u32, ext: ExtType) -> Option<u64> {
    match ext {
        ExtType::SplitPair | ExtType::Unramified => Some(1),
        ExtType::Ramified if p != 2 && e == 1 => Some(2),
        ExtType::Ramified => None,
    }
}

fn summarize(ring: &FiniteQuaternionRing, group: &[QEl], expected: Option<u64>) -> H1Summary {
    let result = h1(ring, group);
    let minus_one_inequivalence_verified =
        (expected == Some(2)).then(|| coboundary_witness(ring, group, ring.minus_one()).is_none());
    H1Summary { result, expected_class_count: expected, minus_one_inequivalence_verified }
}

fn h1_consistent(s: &H1Summary) -> bool {
    match s.expected_class_count {
        None => true,
        Some(2) => {
            s.result.class_count == 2
                && s.result.contains_minus_one_nontrivially
                && s.minus_one_inequivalence_verified == Some(true)
        }
        Some(k) => s.result.class_count == k,
    }
}

fn count(ring: &FiniteQuaternionRing, guard: u128) -> Result<Vec<QEl>> {
    ring.enumerate_norm_one(Strategy::RowWise, guard)
}

/// Enumerate every `(ext_type, d0_type)` profile at `(p, e)` and compare with the closed forms.
///
/// Any disagreement is returned as [`Error::Consistency`].
pub fn verify_appendix(p: u32, e: u32, opts: &OracleOptions) -> Result<AppendixReport> {
    opts.run(|| verify_inner(p, e, opts))?
}

fn verify_inner(p: u32, e: u32, opts: &OracleOptions) -> Result<AppendixReport> {
    let prime = BaseField::rationals().primes_above(p as u64)?[0];
    let n = p as u64;

    let mut g0 = Vec::new();
    for d0 in D0Type::ALL {
        let ring = FiniteQuaternionRing::new(FiniteLocalRing::base(p, e)?, d0);
        let order = BigUint::from(count(&ring, opts.guard)?.len());
        let expected = order_g0(n, e, d0.is_ramified())?;
        if order != expected {
            return Err(Error::Consistency(format!("|G0| for {ring}: enumerated {order}, closed form {expected}")));
        }
        g0.push(G0Report { d0_type: d0, order, expected });
    }

    let mut profiles = Vec::new();
    let mut division_unramified = BigUint::default();
    for ext in ExtType::ALL {
        let base = FiniteLocalRing::for_ext(p, e, ext, opts.nonsquare_unit)?;
        for (i, d0) in D0Type::ALL.into_iter().enumerate() {
            let ring = FiniteQuaternionRing::new(base, d0);
            let group = count(&ring, opts.guard)?;
            let group_order = BigUint::from(group.len());
            let expected_group_order = order_g(n, e, ext.splitting(), d0.is_ramified())?;
            if group_order != expected_group_order {
                return Err(Error::Consistency(format!(
                    "|G| for {ring}: enumerated {group_order}, closed form {expected_group_order}"
                )));
            }
            let g0_order = g0[i].order.clone();
            let q2 = ExactRational::from(&g0_order * &g0_order) / ExactRational::from(group_order.clone());
            let profile = LocalProfile {
                prime,
                exponent: e,
                d0_ramified: d0.is_ramified(),
                splitting: Some(ext.splitting()),
            };
            let expected_q2 = q_squared(&profile)?;
            if q2 != expected_q2 {
                return Err(Error::Consistency(format!("Q^2 for {ring}: enumerated {q2}, table {expected_q2}")));
            }
            if ext == ExtType::Unramified && d0 == D0Type::Division {
                division_unramified = group_order.clone();
            }
            let h1 = opts.cohomology.then(|| summarize(&ring, &group, expected_classes(p, e, ext)));
            if let Some(s) = &h1 {
                if !h1_consistent(s) {
                    return Err(Error::Consistency(format!(
                        "H1 for {ring}: {} classes, expected {:?}",
                        s.result.class_count, s.expected_class_count
                    )));
                }
            }
            profiles.push(ProfileReport {
                p,
                e,
                ext_type: ext,
                d0_type: d0,
                group_order,
                expected_group_order,
                g0_order,
                q_squared: q2,
                expected_q_squared: expected_q2,
                cocycle_count: h1.as_ref().map(|s| s.result.cocycle_count),
                class_count: h1.as_ref().map(|s| s.result.class_count),
                h1,
            });
        }
    }

    let eichler_ring = FiniteQuaternionRing::with_model(FiniteLocalRing::unramified(p, e)?, QuaternionModel::Eichler);
    let eichler_order = BigUint::from(count(&eichler_ring, opts.guard)?.len());
    if eichler_order != division_unramified {
        return Err(Error::Consistency(format!(
            "Eichler model gives {eichler_order}, division model {division_unramified}"
        )));
    }

    Ok(AppendixReport {
        p,
        e,
        unit: if opts.nonsquare_unit { least_nonsquare_unit(p) } else { 1 },
        g0,
        profiles,
        eichler: EichlerCheck { eichler_order, division_order: division_unramified },
        all_match: true,
    })
}

/// Radicands `m` with `Q_2(√m)/Q_2` ramified, one per ramified quadratic extension.
pub const RAMIFIED_RADICANDS_OVER_2: [i64; 6] = [-1, 3, 2, -2, 6, -6];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExplorationRow {
    pub e: u32,
    pub ext_type: ExtType,
    /// `m` in `Z_2[√m]`; absent for the unramified ring.
    pub radicand: Option<i64>,
    pub d0_type: D0Type,
    #[serde(flatten)]
    pub h1: H1Result,
}

/// `H¹` sizes over 2 for `e ≤ 2`.
///
/// Ramified rows are reported as found. The unramified matrix row must have one class.
pub fn explore_p2(e_max: u32, opts: &OracleOptions) -> Result<Vec<ExplorationRow>> {
    if !(1..=2).contains(&e_max) {
        return Err(Error::Invalid(format!("exploration level {e_max} must be 1 or 2")));
    }
    opts.run(|| {
        let mut rows = Vec::new();
        for e in 1..=e_max {
            let unramified = FiniteQuaternionRing::new(FiniteLocalRing::unramified(2, e)?, D0Type::Matrix);
            let h = h1(&unramified, &count(&unramified, opts.guard)?);
            if h.class_count != 1 {
                return Err(Error::Consistency(format!("{unramified}: {} classes, expected 1", h.class_count)));
            }
            rows.push(ExplorationRow { e, ext_type: ExtType::Unramified, radicand: None, d0_type: D0Type::Matrix, h1: h });
            for m in RAMIFIED_RADICANDS_OVER_2 {
                for d0 in D0Type::ALL {
                    let ring = FiniteQuaternionRing::new(FiniteLocalRing::ramified_with_radicand(2, e, m)?, d0);
                    let h = h1(&ring, &count(&ring, opts.guard)?);
                    rows.push(ExplorationRow { e, ext_type: ExtType::Ramified, radicand: Some(m), d0_type: d0, h1: h });
                }
            }
        }
        Ok(rows)
    })?
}

/// Tab-separated summary of [`explore_p2`].
pub fn exploration_table(rows: &[ExplorationRow]) -> String {
    let mut out = String::from("e\text\tradicand\td0\t|G|\tcocycles\tclasses\t-1 nontrivial\n");
    for r in rows {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            r.e,
            r.ext_type,
            r.radicand.map_or("-".to_string(), |m| m.to_string()),
            r.d0_type,
            r.h1.group_order,
            r.h1.cocycle_count,
            r.h1.class_count,
            r.h1.contains_minus_one_nontrivially
        ));
    }
    out
}
