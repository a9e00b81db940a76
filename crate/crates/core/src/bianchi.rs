//! Bianchi groups `SL₂(O_E)` for imaginary quadratic `E`: principal congruence
//! indices, cusp counts, the `index^{2/3}` Betti bound, the Lefschetz number of
//! the Galois involution and the asymptotic table along prime powers.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::{ExtensionSpec, Selector, SplittingInE};
use crate::numtheory::{
    decimal, factor_integer, is_squarefree, zeta_2_numeric, ApproxReal, ExactRational, ZetaField,
};

/// Default tolerance for `ζ_E(2)`.
pub const DEFAULT_ZETA_TOLERANCE: f64 = 1e-10;

/// Number of reduced binary quadratic forms of discriminant `disc < 0`.
pub fn class_number_of_discriminant(disc: i64) -> u64 {
    assert!(disc < 0 && disc.rem_euclid(4) <= 1, "bad discriminant {disc}");
    let n = -disc;
    let mut count = 0;
    let mut a = 1i64;
    while 3 * a * a <= n {
        for b in -a + 1..=a {
            if (b - disc).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b - disc;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            count += 1;
        }
        a += 1;
    }
    count
}

fn field_discriminant(radicand: i64) -> i64 {
    if radicand.rem_euclid(4) == 1 {
        radicand
    } else {
        4 * radicand
    }
}

/// Class number of `Q(√radicand)` for squarefree `radicand < 0`.
pub fn class_number(radicand: i64) -> Result<u64> {
    if radicand >= 0 || !is_squarefree(radicand) {
        return Err(Error::Invalid(format!("{radicand} is not a negative squarefree integer")));
    }
    Ok(class_number_of_discriminant(field_discriminant(radicand)))
}

/// An imaginary quadratic field `E = Q(√m)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BianchiField {
    pub radicand: i64,
    pub discriminant: i64,
    pub class_number: u64,
    pub unit_order: u64,
    pub zeta2: ApproxReal,
}

impl BianchiField {
    pub fn new(radicand: i64) -> Result<Self> {
        Self::with_tolerance(radicand, DEFAULT_ZETA_TOLERANCE)
    }

    pub fn with_tolerance(radicand: i64, tol: f64) -> Result<Self> {
        let class_number = class_number(radicand)?;
        let discriminant = field_discriminant(radicand);
        let unit_order = match radicand {
            -1 => 4,
            -3 => 6,
            _ => 2,
        };
        Ok(BianchiField {
            radicand,
            discriminant,
            class_number,
            unit_order,
            zeta2: zeta_2_numeric(ZetaField::Quadratic { discriminant }, tol)?,
        })
    }

    fn extension(&self) -> ExtensionSpec {
        ExtensionSpec::over_q(self.radicand).expect("radicand validated")
    }

    pub fn splitting(&self, p: u64) -> Result<SplittingInE> {
        let ext = self.extension();
        let prime = ext.base.primes_above(p)?[0];
        ext.splitting(&prime)
    }

    /// `h_E / |μ_E|`.
    fn class_unit_ratio(&self) -> f64 {
        self.class_number as f64 / self.unit_order as f64
    }
}

/// A prime of `O_E` above the rational prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PrimeOfE {
    pub p: u64,
    pub splitting: SplittingInE,
    pub selector: Selector,
    pub norm: u64,
}

impl fmt::Display for PrimeOfE {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.selector {
            Selector::Only => write!(f, "{}", self.p),
            Selector::FirstRoot => write!(f, "{}.1", self.p),
            Selector::SecondRoot => write!(f, "{}.2", self.p),
        }
    }
}

/// A nonzero ideal of `O_E` in factored form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealOfE {
    pub entries: Vec<(PrimeOfE, u32)>,
    pub norm: u64,
}

impl IdealOfE {
    fn from_entries(entries: impl IntoIterator<Item = (PrimeOfE, u32)>) -> Result<Self> {
        let mut merged: BTreeMap<PrimeOfE, u32> = BTreeMap::new();
        for (q, k) in entries {
            if k > 0 {
                *merged.entry(q).or_default() += k;
            }
        }
        let mut norm = 1u64;
        for (q, k) in &merged {
            norm = q
                .norm
                .checked_pow(*k)
                .and_then(|x| x.checked_mul(norm))
                .ok_or_else(|| Error::Invalid("ideal norm overflows u64".into()))?;
        }
        Ok(IdealOfE { entries: merged.into_iter().collect(), norm })
    }

    fn primes_above(field: &BianchiField, p: u64) -> Result<Vec<PrimeOfE>> {
        let splitting = field.splitting(p)?;
        let mk = |selector, norm| PrimeOfE { p, splitting, selector, norm };
        Ok(match splitting {
            SplittingInE::Split => vec![mk(Selector::FirstRoot, p), mk(Selector::SecondRoot, p)],
            SplittingInE::Inert => vec![mk(Selector::Only, p * p)],
            SplittingInE::Ramified => vec![mk(Selector::Only, p)],
        })
    }

    /// The ideal `m·O_E`.
    pub fn from_integer(field: &BianchiField, m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::Invalid("the zero ideal is not allowed".into()));
        }
        let mut entries = Vec::new();
        for (p, k) in factor_integer(m).factors {
            for q in Self::primes_above(field, p)? {
                let k = if q.splitting == SplittingInE::Ramified { 2 * k } else { k };
                entries.push((q, k));
            }
        }
        Self::from_entries(entries)
    }

    /// `𝔭ᵏ` for a prime `𝔭` above `p`, chosen by `selector`.
    pub fn prime_power(field: &BianchiField, p: u64, selector: Selector, k: u32) -> Result<Self> {
        let q = Self::primes_above(field, p)?
            .into_iter()
            .find(|q| q.selector == selector)
            .ok_or_else(|| Error::Invalid(format!("no prime above {p} with selector {selector:?}")))?;
        Self::from_entries([(q, k)])
    }

    /// Text form as printed by `Display`: `"3"`, `"2.1^3"`, `"2.1*2.2^2*5"`.
    /// A factor without selector is a rational integer, or the unique prime above it.
    pub fn parse(field: &BianchiField, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() || text == "1" {
            return Self::from_integer(field, 1);
        }
        let mut ideal = Self::from_integer(field, 1)?;
        for factor in text.split('*') {
            let factor = factor.trim();
            let bad = || Error::Invalid(format!("bad ideal factor {factor:?}"));
            let (base, exp) = match factor.split_once('^') {
                Some((b, e)) => (b, e.trim().parse::<u32>().map_err(|_| bad())?),
                None => (factor, 1),
            };
            let (number, selector) = match base.split_once('.') {
                Some((n, "1")) => (n, Some(Selector::FirstRoot)),
                Some((n, "2")) => (n, Some(Selector::SecondRoot)),
                Some(_) => return Err(bad()),
                None => (base, None),
            };
            let n: u64 = number.trim().parse().map_err(|_| bad())?;
            let part = match selector {
                Some(sel) => Self::prime_power(field, n, sel, exp)?,
                None if crate::numtheory::is_prime(n) && Self::primes_above(field, n)?.len() == 1 => {
                    Self::prime_power(field, n, Selector::Only, exp)?
                }
                None => {
                    let base = Self::from_integer(field, n)?;
                    Self::from_entries(base.entries.iter().map(|&(q, k)| (q, k * exp)))?
                }
            };
            ideal = ideal.product(&part)?;
        }
        Ok(ideal)
    }

    pub fn product(&self, other: &IdealOfE) -> Result<Self> {
        Self::from_entries(self.entries.iter().chain(other.entries.iter()).copied())
    }

    pub fn is_unit(&self) -> bool {
        self.entries.is_empty()
    }
}

impl fmt::Display for IdealOfE {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|(q, k)| if *k == 1 { q.to_string() } else { format!("{q}^{k}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// `[Γ(1):Γ(𝔞)] = |SL₂(O_E/𝔞)| = N(𝔞)³ ∏_{𝔭|𝔞} (1 − N(𝔭)⁻²)`.
pub fn bianchi_index(a: &IdealOfE) -> BigUint {
    a.entries
        .iter()
        .map(|(q, k)| BigUint::from(q.norm).pow(3 * k - 2) * (q.norm * q.norm - 1))
        .product()
}

/// Smallest norm for which `Γ(𝔞)` is treated as torsion-free.
pub const MIN_TORSION_FREE_NORM: u64 = 9;

/// `h_𝔞 = h_E |μ_E|⁻¹ N(𝔞)⁻¹ [Γ(1):Γ(𝔞)]`, the number of cusps of `Γ(𝔞)`.
///
/// Ideals of norm below 9 are refused unless `allow_small`.
pub fn cusp_number(field: &BianchiField, a: &IdealOfE, allow_small: bool) -> Result<BigUint> {
    if a.norm < MIN_TORSION_FREE_NORM && !allow_small {
        return Err(Error::Invalid(format!(
            "ideal {a} has norm {} < {MIN_TORSION_FREE_NORM}",
            a.norm
        )));
    }
    let num = BigUint::from(field.class_number) * bianchi_index(a);
    let den = BigUint::from(field.unit_order) * a.norm;
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() {
        let msg = format!("cusp count for {a} is not an integer");
        return Err(if a.norm < MIN_TORSION_FREE_NORM {
            Error::Invalid(msg)
        } else {
            Error::Consistency(msg)
        });
    }
    Ok(q)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BianchiBetti {
    /// `h_E |μ_E|⁻¹ ζ_E(2)^{−1/3} [Γ(1):Γ(𝔞)]^{2/3}`.
    pub bound: ApproxReal,
    #[serde(with = "decimal")]
    pub cusp_number: BigUint,
    #[serde(with = "decimal")]
    pub index: BigUint,
    pub torsion_verified: bool,
}

fn two_thirds_bound(field: &BianchiField, index: &BigUint) -> ApproxReal {
    let z = field.zeta2;
    let idx = ExactRational::from(index.clone()).to_f64();
    let value = field.class_unit_ratio() * z.value.powf(-1.0 / 3.0) * idx.powf(2.0 / 3.0);
    // d/dz z^{-1/3} = −z^{-4/3}/3.
    let tol = value * (z.tol / (3.0 * z.value) + 16.0 * f64::EPSILON);
    ApproxReal { value, tol }
}

/// Lower bound for `dim H¹(Γ(𝔞), C)`, together with the cusp count that dominates it.
pub fn bianchi_betti_bound(field: &BianchiField, a: &IdealOfE, allow_small: bool) -> Result<BianchiBetti> {
    let cusps = cusp_number(field, a, allow_small)?;
    let index = bianchi_index(a);
    Ok(BianchiBetti {
        bound: two_thirds_bound(field, &index),
        cusp_number: cusps,
        index,
        torsion_verified: a.norm >= MIN_TORSION_FREE_NORM,
    })
}

/// Lefschetz number of the Galois involution on `Γ(m)` in `SL₂(O_E)`,
/// `E = Q(√d')`, `d' ≡ 1 mod 4`:  `−2^{ρ(m)} m³/12 ∏_{p|m} (1 − p⁻²)`.
pub fn bianchi_lefschetz(radicand: i64, m: u64) -> Result<ExactRational> {
    if radicand == 1 || !is_squarefree(radicand) || radicand.rem_euclid(4) != 1 {
        return Err(Error::Invalid(format!(
            "{radicand} must be squarefree, different from 1 and congruent to 1 mod 4"
        )));
    }
    if m < 3 {
        return Err(Error::Invalid(format!("level {m} must be at least 3")));
    }
    let m_primes: Vec<u64> = factor_integer(m).primes().collect();
    let rho = factor_integer(radicand.unsigned_abs())
        .primes()
        .filter(|p| !m_primes.contains(p))
        .count();
    let mut value = ExactRational::from(-(1i64 << rho)) * ExactRational::from((m as i64).pow(3))
        / ExactRational::from(12);
    for p in m_primes {
        value = value * (ExactRational::one() - ExactRational::new(1, (p * p) as i64));
    }
    let ok = value
        .to_integer()
        .is_some_and(|n| n.is_even() && n < num_bigint::BigInt::zero());
    if !ok {
        return Err(Error::Consistency(format!("{value} is not an even negative integer")));
    }
    Ok(value)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticRow {
    pub k: u32,
    #[serde(with = "decimal")]
    pub index: BigUint,
    pub bound: f64,
    /// `bound / index^{2/3}`.
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticTable {
    pub rows: Vec<AsymptoticRow>,
    /// `h_E |μ_E|⁻¹ ζ_E(2)^{−1/3}`, the value every ratio should take.
    pub constant: f64,
    /// `bound / N(𝔭ᵏ)²` tends to `constant·(1 − p⁻²)^{2/3}`.
    pub norm_constant: f64,
}

impl AsymptoticTable {
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let fail = |e: csv::Error| Error::Invalid(e.to_string());
        w.write_record(["k", "index", "bound", "ratio"]).map_err(fail)?;
        for row in &self.rows {
            w.write_record([
                row.k.to_string(),
                row.index.to_string(),
                format!("{:.12}", row.bound),
                format!("{:.15}", row.ratio),
            ])
            .map_err(fail)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Invalid(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

/// Largest supported `k` in [`asymptotic_table`].
pub const MAX_ASYMPTOTIC_K: u32 = 8;

/// Betti bounds along `𝔭ᵏ`, `k = 0..=k_max`, for a prime `𝔭` above a split `p`.
pub fn asymptotic_table(field: &BianchiField, p: u64, k_max: u32) -> Result<AsymptoticTable> {
    if k_max > MAX_ASYMPTOTIC_K {
        return Err(Error::Invalid(format!("k_max {k_max} exceeds {MAX_ASYMPTOTIC_K}")));
    }
    if field.splitting(p)? != SplittingInE::Split {
        return Err(Error::Invalid(format!("{p} does not split in Q(sqrt({}))", field.radicand)));
    }
    let constant = field.class_unit_ratio() * field.zeta2.value.powf(-1.0 / 3.0);
    let mut rows = Vec::new();
    for k in 0..=k_max {
        let ideal = IdealOfE::prime_power(field, p, Selector::FirstRoot, k)?;
        let index = bianchi_index(&ideal);
        let closed = if k == 0 {
            BigUint::one()
        } else {
            BigUint::from(p).pow(3 * k - 2) * (p * p - 1)
        };
        if index != closed {
            return Err(Error::Consistency(format!(
                "index of p^{k}: {index} vs p^(3k)(1-p^-2) = {closed}"
            )));
        }
        let bound = two_thirds_bound(field, &index).value;
        let ratio = bound / ExactRational::from(index.clone()).to_f64().powf(2.0 / 3.0);
        rows.push(AsymptoticRow { k, index, bound, ratio });
    }
    let pf = p as f64;
    Ok(AsymptoticTable {
        rows,
        constant,
        norm_constant: constant * (1.0 - 1.0 / (pf * pf)).powf(2.0 / 3.0),
    })
}
