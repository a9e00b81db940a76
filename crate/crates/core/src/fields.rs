//! The totally real base field `F` (either `Q` or real quadratic), its primes,
//! the quadratic extension `E = F(√θ)` and the splitting of primes of `F` in `E`.
//!
//! Ideals of `O_F` are only ever handled in factored form.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{
    exact_sqrt, factor_integer, is_prime, is_squarefree, kronecker_symbol, legendre,
    sqrt_mod_prime, squarefree_decomposition, valuation,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldKind {
    Rationals,
    RealQuadratic,
}

/// `Q` or a real quadratic field `Q(√m)`, `m > 1` squarefree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BaseField {
    pub kind: FieldKind,
    pub radicand: Option<i64>,
    pub degree: u32,
    pub discriminant: i64,
}

impl BaseField {
    pub fn rationals() -> Self {
        BaseField {
            kind: FieldKind::Rationals,
            radicand: None,
            degree: 1,
            discriminant: 1,
        }
    }

    pub fn real_quadratic(radicand: i64) -> Result<Self> {
        if radicand <= 1 || !is_squarefree(radicand) {
            return Err(Error::Invalid(format!(
                "radicand {radicand} must be a squarefree integer > 1"
            )));
        }
        let discriminant = if radicand % 4 == 1 { radicand } else { 4 * radicand };
        Ok(BaseField {
            kind: FieldKind::RealQuadratic,
            radicand: Some(radicand),
            degree: 2,
            discriminant,
        })
    }

    pub fn is_rationals(&self) -> bool {
        self.kind == FieldKind::Rationals
    }

    pub fn real_places(&self) -> Vec<RealPlace> {
        (0..self.degree as u8).map(RealPlace).collect()
    }

    /// The primes of `F` above the rational prime `p`.
    pub fn primes_above(&self, p: u64) -> Result<Vec<PrimeOfF>> {
        if !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        let prime = |f, e, selector| PrimeOfF {
            p,
            residue_degree: f,
            ramification_index: e,
            selector,
            norm: p.pow(f),
        };
        Ok(match self.kind {
            FieldKind::Rationals => vec![prime(1, 1, Selector::Only)],
            FieldKind::RealQuadratic => match kronecker_symbol(self.discriminant, p as i64) {
                1 => vec![
                    prime(1, 1, Selector::FirstRoot),
                    prime(1, 1, Selector::SecondRoot),
                ],
                -1 => vec![prime(2, 1, Selector::Only)],
                _ => vec![prime(1, 2, Selector::Only)],
            },
        })
    }

    fn contains_prime(&self, prime: &PrimeOfF) -> bool {
        self.primes_above(prime.p)
            .map(|ps| ps.contains(prime))
            .unwrap_or(false)
    }
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.radicand {
            None => write!(f, "Q"),
            Some(m) => write!(f, "Q(sqrt({m}))"),
        }
    }
}

/// A real place of `F`. For `Q(√m)` place 0 sends `√m` to the positive root and
/// place 1 to the negative root.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RealPlace(pub u8);

impl RealPlace {
    pub fn label(&self, field: &BaseField) -> String {
        if field.degree == 1 {
            "inf".to_string()
        } else {
            format!("inf.{}", self.0 + 1)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Selector {
    Only,
    FirstRoot,
    SecondRoot,
}

/// A nonzero prime ideal of `O_F`.
///
/// For a split odd `p` the first prime is `(p, √m − t)` with `t` the least
/// non-negative root of `x² ≡ m (mod p)`. For `p = 2` (split only when
/// `m ≡ 1 mod 8`) the first prime is `(2, (1+√m)/2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PrimeOfF {
    pub p: u64,
    pub residue_degree: u32,
    pub ramification_index: u32,
    pub selector: Selector,
    pub norm: u64,
}

impl fmt::Display for PrimeOfF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.selector {
            Selector::Only => write!(f, "{}", self.p),
            Selector::FirstRoot => write!(f, "{}.1", self.p),
            Selector::SecondRoot => write!(f, "{}.2", self.p),
        }
    }
}

/// How a prime of `F` decomposes in `E`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SplittingInE {
    Split,
    Inert,
    Ramified,
}

impl fmt::Display for SplittingInE {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SplittingInE::Split => "split",
            SplittingInE::Inert => "inert",
            SplittingInE::Ramified => "ramified",
        })
    }
}

/// An element `u + v√m` of `O_F` (`v = 0` over `Q`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Theta {
    pub u: i64,
    pub v: i64,
}

impl Theta {
    pub fn rational(u: i64) -> Self {
        Theta { u, v: 0 }
    }

    fn norm(&self, m: i64) -> i128 {
        let (u, v) = (self.u as i128, self.v as i128);
        u * u - m as i128 * v * v
    }
}

impl fmt::Display for Theta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v == 0 {
            write!(f, "{}", self.u)
        } else {
            write!(f, "{}{:+}*sqrt", self.u, self.v)
        }
    }
}

/// The relative quadratic extension `E = F(√θ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionSpec {
    pub base: BaseField,
    /// θ as given.
    pub theta: Theta,
    /// θ divided by the largest rational square dividing it (over `Q`: its squarefree part).
    pub reduced_theta: Theta,
    /// Number of complex places of `E`.
    pub signature: u32,
    /// Real places of `F` lying under a complex place of `E`.
    pub complex_over: Vec<RealPlace>,
    /// Primes of `F` ramified in `E`; primes over 2 only when `two_adic_known`.
    pub ramified_primes: Vec<PrimeOfF>,
    pub two_adic_known: bool,
}

impl ExtensionSpec {
    pub fn new(base: BaseField, theta: Theta) -> Result<Self> {
        if theta.u == 0 && theta.v == 0 {
            return Err(Error::Invalid("theta must be nonzero".into()));
        }
        let reduced = match base.radicand {
            None => {
                if theta.v != 0 {
                    return Err(Error::Invalid("theta over Q must be a rational integer".into()));
                }
                Theta::rational(squarefree_decomposition(theta.u).0)
            }
            Some(m) => {
                if is_square_in_real_quadratic(theta, m) {
                    return Err(Error::Invalid(format!("theta {theta} is a square in {base}")));
                }
                strip_square_content(theta)
            }
        };
        if base.is_rationals() && reduced.u == 1 {
            return Err(Error::Invalid(format!("theta {} is a square in Q", theta.u)));
        }

        let complex_over: Vec<RealPlace> = base
            .real_places()
            .into_iter()
            .filter(|place| embedding_sign(reduced, base.radicand, *place) < 0)
            .collect();

        let mut ext = ExtensionSpec {
            signature: complex_over.len() as u32,
            complex_over,
            base,
            theta,
            reduced_theta: reduced,
            ramified_primes: Vec::new(),
            two_adic_known: false,
        };

        let norm = match ext.base.radicand {
            None => reduced.u as i128,
            Some(m) => reduced.norm(m),
        };
        let mut ramified = Vec::new();
        for (p, _) in factor_integer(norm.unsigned_abs() as u64).factors {
            if p == 2 {
                continue;
            }
            for prime in ext.base.primes_above(p)? {
                if ext.splitting(&prime)? == SplittingInE::Ramified {
                    ramified.push(prime);
                }
            }
        }
        match ext.base.primes_above(2)?.iter().try_fold(Vec::new(), |mut acc, prime| {
            if ext.splitting(prime)? == SplittingInE::Ramified {
                acc.push(*prime);
            }
            Ok::<_, Error>(acc)
        }) {
            Ok(over_two) => {
                ext.two_adic_known = true;
                ramified.extend(over_two);
            }
            Err(Error::Unsupported(_)) => ext.two_adic_known = false,
            Err(e) => return Err(e),
        }
        ramified.sort();
        ext.ramified_primes = ramified;
        Ok(ext)
    }

    /// Convenience constructor for `Q(√θ)`.
    pub fn over_q(theta: i64) -> Result<Self> {
        Self::new(BaseField::rationals(), Theta::rational(theta))
    }

    /// Splitting behaviour of the prime `prime` of `F` in `E`.
    pub fn splitting(&self, prime: &PrimeOfF) -> Result<SplittingInE> {
        if !self.base.contains_prime(prime) {
            return Err(Error::Invalid(format!("{prime} is not a prime of {}", self.base)));
        }
        let theta = self.reduced_theta;
        match self.base.radicand {
            None => Ok(split_over_q(theta.u, prime.p)),
            Some(m) if prime.p == 2 => split_over_two_real_quadratic(theta, m, prime),
            Some(m) => Ok(split_odd_real_quadratic(theta, m, prime)),
        }
    }

    /// `true` iff no prime of `F` above 2 ramifies in `E`.
    pub fn unramified_over_2(&self) -> Result<bool> {
        for prime in self.base.primes_above(2)? {
            if self.splitting(&prime)? == SplittingInE::Ramified {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// ρ(𝔞₀): primes of `F` ramified in `E`, prime to 2 and not dividing `a0`.
    pub fn rho(&self, a0: &FactoredIdealF) -> u32 {
        self.ramified_primes
            .iter()
            .filter(|prime| prime.p != 2 && a0.exponent_of(prime) == 0)
            .count() as u32
    }

    pub fn is_complex_over(&self, place: RealPlace) -> bool {
        self.complex_over.contains(&place)
    }
}

fn split_over_q(theta: i64, p: u64) -> SplittingInE {
    if p == 2 {
        return match theta.rem_euclid(8) {
            1 => SplittingInE::Split,
            5 => SplittingInE::Inert,
            _ => SplittingInE::Ramified,
        };
    }
    if theta % p as i64 == 0 {
        return SplittingInE::Ramified;
    }
    if legendre(theta, p) == 1 {
        SplittingInE::Split
    } else {
        SplittingInE::Inert
    }
}

fn from_local_data(valuation: u32, unit_is_square: bool) -> SplittingInE {
    if valuation % 2 == 1 {
        SplittingInE::Ramified
    } else if unit_is_square {
        SplittingInE::Split
    } else {
        SplittingInE::Inert
    }
}

fn p_valuation_or_max(n: i64, p: u64) -> u32 {
    if n == 0 {
        u32::MAX
    } else {
        valuation(n as i128, p)
    }
}

/// Odd residue characteristic over `Q(√m)`: compute `v_P(θ)` and the square
/// class of the unit part of θ in the residue field.
fn split_odd_real_quadratic(theta: Theta, m: i64, prime: &PrimeOfF) -> SplittingInE {
    let p = prime.p;
    let pi = p as i128;
    match prime.selector {
        Selector::FirstRoot | Selector::SecondRoot => {
            // Embed θ into Z_p through a p-adic square root s of m.
            let t = sqrt_mod_prime(m, p).expect("split prime has a root") as i128;
            let t = if prime.selector == Selector::FirstRoot { t } else { (pi - t) % pi };
            let bound = valuation(theta.norm(m), p) + 2;
            let modulus = pi.pow(bound);
            let s = hensel_sqrt(m as i128, t, pi, bound);
            let image = (theta.u as i128 + theta.v as i128 * s).rem_euclid(modulus);
            let k = valuation(image, p);
            let unit = (image / pi.pow(k)).rem_euclid(pi);
            from_local_data(k, legendre(unit as i64, p) == 1)
        }
        Selector::Only if prime.residue_degree == 2 => {
            let g = p_valuation_or_max(theta.u, p).min(p_valuation_or_max(theta.v, p));
            let scale = (p as i64).pow(g);
            let reduced = Theta { u: theta.u / scale, v: theta.v / scale };
            let n = reduced.norm(m).rem_euclid(pi) as i64;
            from_local_data(g, legendre(n, p) == 1)
        }
        Selector::Only => {
            // p | m, uniformizer √m with p = (√m)²·(p/m).
            let g = p_valuation_or_max(theta.u, p).min(p_valuation_or_max(theta.v, p));
            let scale = (p as i64).pow(g);
            let (u1, _) = (theta.u / scale, theta.v / scale);
            let extra = u32::from(u1 % p as i64 == 0);
            let k = 2 * g + extra;
            if k % 2 == 1 {
                return SplittingInE::Ramified;
            }
            let cofactor = legendre(m / p as i64, p);
            let sign = if g % 2 == 1 { cofactor } else { 1 };
            from_local_data(k, sign * legendre(u1, p) == 1)
        }
    }
}

/// Lift a root `t` of `x² ≡ a (mod p)` (p odd, `t ≢ 0`) to precision `p^bound`.
fn hensel_sqrt(a: i128, t: i128, p: i128, bound: u32) -> i128 {
    let mut s = t;
    let mut modulus = p;
    for _ in 1..bound {
        modulus *= p;
        let f = (s * s - a).rem_euclid(modulus);
        let inv = mod_inverse((2 * s).rem_euclid(modulus), modulus);
        s = (s - f * inv % modulus).rem_euclid(modulus);
    }
    s
}

fn mod_inverse(a: i128, m: i128) -> i128 {
    let (mut old_r, mut r) = (a, m);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    assert_eq!(old_r, 1, "not invertible");
    old_s.rem_euclid(m)
}

/// 2-adic classification over `Q(√m)` for θ of odd norm.
///
/// θ is a square in the completion iff `θ ≡ x² (mod 4π)`, and the local
/// extension is unramified iff `θ ≡ x² (mod 4)`.
fn split_over_two_real_quadratic(theta: Theta, m: i64, prime: &PrimeOfF) -> Result<SplittingInE> {
    if theta.norm(m) % 2 == 0 {
        return Err(Error::Unsupported(format!(
            "splitting of the prime {prime} above 2 in F(sqrt(theta)) for theta = {theta} of even norm over Q(sqrt({m}))"
        )));
    }
    let (u, v) = (theta.u as i128, theta.v as i128);
    if prime.selector != Selector::Only {
        // m ≡ 1 mod 8: Q_2-embedding with √m ↦ s, s ≡ 3 (mod 4) for the first prime.
        let want = if prime.selector == Selector::FirstRoot { 3 } else { 1 };
        let s = (1..8i128)
            .step_by(2)
            .find(|x| (x * x - m as i128).rem_euclid(16) == 0 && x % 4 == want)
            .expect("m ≡ 1 mod 8 has 2-adic roots");
        let image = (u + v * s).rem_euclid(8) as i64;
        return Ok(split_over_q(image, 2));
    }
    let e = prime.ramification_index;
    let order = QuadraticOrder::new(m);
    let target = order.from_sqrt_coords(u, v);
    let local_val = |z: (i128, i128)| -> u32 {
        if z == (0, 0) {
            return u32::MAX;
        }
        let n = order.norm(z);
        let v2 = valuation(n, 2);
        if prime.residue_degree == 2 {
            v2 / 2
        } else {
            v2
        }
    };
    let mut best = 0;
    for a in 0..8i128 {
        for b in 0..8i128 {
            let sq = order.mul((a, b), (a, b));
            let diff = (target.0 - sq.0, target.1 - sq.1);
            best = best.max(local_val(diff));
        }
    }
    Ok(if best > 2 * e {
        SplittingInE::Split
    } else if best >= 2 * e {
        SplittingInE::Inert
    } else {
        SplittingInE::Ramified
    })
}

/// `O_F = Z[ω]`, `ω = √m` or `(1+√m)/2`, elements as coordinate pairs.
struct QuadraticOrder {
    m: i128,
    half: bool,
}

impl QuadraticOrder {
    fn new(m: i64) -> Self {
        QuadraticOrder { m: m as i128, half: m % 4 == 1 }
    }

    fn from_sqrt_coords(&self, u: i128, v: i128) -> (i128, i128) {
        if self.half {
            (u - v, 2 * v)
        } else {
            (u, v)
        }
    }

    fn mul(&self, x: (i128, i128), y: (i128, i128)) -> (i128, i128) {
        let bb = x.1 * y.1;
        if self.half {
            let c = (self.m - 1) / 4;
            (x.0 * y.0 + c * bb, x.0 * y.1 + x.1 * y.0 + bb)
        } else {
            (x.0 * y.0 + self.m * bb, x.0 * y.1 + x.1 * y.0)
        }
    }

    fn norm(&self, x: (i128, i128)) -> i128 {
        if self.half {
            let c = (self.m - 1) / 4;
            x.0 * x.0 + x.0 * x.1 - c * x.1 * x.1
        } else {
            x.0 * x.0 - self.m * x.1 * x.1
        }
    }
}

/// Sign of θ under a real embedding.
fn embedding_sign(theta: Theta, radicand: Option<i64>, place: RealPlace) -> i32 {
    let a = theta.u as i128;
    let b = if place.0 == 0 { theta.v as i128 } else { -(theta.v as i128) };
    let m = radicand.unwrap_or(0) as i128;
    if b == 0 {
        return a.signum() as i32;
    }
    match (a >= 0, b >= 0) {
        (true, true) => 1,
        (false, false) => -1,
        (true, false) => {
            if a * a > m * b * b {
                1
            } else {
                -1
            }
        }
        (false, true) => {
            if m * b * b > a * a {
                1
            } else {
                -1
            }
        }
    }
}

fn strip_square_content(theta: Theta) -> Theta {
    let g = num_integer::gcd(theta.u, theta.v).unsigned_abs();
    let (_, sq) = squarefree_decomposition(g as i64);
    let sq = (sq * sq) as i64;
    Theta { u: theta.u / sq, v: theta.v / sq }
}

fn is_square_in_real_quadratic(theta: Theta, m: i64) -> bool {
    let (u, v, m) = (theta.u as i128, theta.v as i128, m as i128);
    if v == 0 {
        return exact_sqrt(u).is_some() || (u % m == 0 && exact_sqrt(u / m).is_some());
    }
    let Some(n) = exact_sqrt(u * u - m * v * v) else {
        return false;
    };
    [n, -n].into_iter().any(|n| match exact_sqrt(2 * (u + n)) {
        Some(w) if w != 0 => w.pow(4) + 4 * m * v * v == 4 * u * w * w,
        _ => false,
    })
}

/// A nonzero ideal of `O_F` in factored form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FactoredIdealF {
    pub entries: Vec<(PrimeOfF, u32)>,
    pub norm: u64,
}

impl FactoredIdealF {
    pub fn unit() -> Self {
        FactoredIdealF { entries: Vec::new(), norm: 1 }
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (PrimeOfF, u32)>) -> Result<Self> {
        let mut merged: BTreeMap<PrimeOfF, u32> = BTreeMap::new();
        for (prime, k) in entries {
            if k == 0 {
                continue;
            }
            *merged.entry(prime).or_default() += k;
        }
        let mut norm: u64 = 1;
        for (prime, k) in &merged {
            norm = prime
                .norm
                .checked_pow(*k)
                .and_then(|x| norm.checked_mul(x))
                .ok_or_else(|| Error::Invalid("ideal norm overflows u64".into()))?;
        }
        Ok(FactoredIdealF { entries: merged.into_iter().collect(), norm })
    }

    /// The ideal `n·O_F`.
    pub fn from_integer(field: &BaseField, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("the zero ideal is not allowed".into()));
        }
        let mut entries = Vec::new();
        for (p, k) in factor_integer(n).factors {
            for prime in field.primes_above(p)? {
                entries.push((prime, k * prime.ramification_index));
            }
        }
        Self::from_entries(entries)
    }

    /// Parse the text form, e.g. `"11.1^2*3"` or `"9"` (a bare integer factor
    /// stands for that rational integer times `O_F`).
    pub fn parse(field: &BaseField, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() || text == "1" {
            return Ok(Self::unit());
        }
        let mut entries = Vec::new();
        for factor in text.split('*') {
            let factor = factor.trim();
            let (base, exp) = match factor.split_once('^') {
                Some((b, e)) => (
                    b,
                    e.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Invalid(format!("bad exponent in {factor:?}")))?,
                ),
                None => (factor, 1),
            };
            let (number, selector) = match base.split_once('.') {
                Some((n, "1")) => (n, Some(Selector::FirstRoot)),
                Some((n, "2")) => (n, Some(Selector::SecondRoot)),
                Some(_) => return Err(Error::Invalid(format!("bad selector in {factor:?}"))),
                None => (base, None),
            };
            let n: u64 = number
                .trim()
                .parse()
                .map_err(|_| Error::Invalid(format!("bad ideal factor {factor:?}")))?;
            match selector {
                Some(sel) => {
                    let prime = field
                        .primes_above(n)?
                        .into_iter()
                        .find(|q| q.selector == sel)
                        .ok_or_else(|| {
                            Error::Invalid(format!("{n} does not split in {field}"))
                        })?;
                    entries.push((prime, exp));
                }
                None if is_prime(n) && field.primes_above(n)?.len() == 1 => {
                    entries.push((field.primes_above(n)?[0], exp));
                }
                None => {
                    let ideal = Self::from_integer(field, n)?;
                    entries.extend(ideal.entries.into_iter().map(|(q, k)| (q, k * exp)));
                }
            }
        }
        Self::from_entries(entries)
    }

    pub fn is_unit(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn exponent_of(&self, prime: &PrimeOfF) -> u32 {
        self.entries
            .iter()
            .find(|(q, _)| q == prime)
            .map_or(0, |&(_, k)| k)
    }

    /// `self | other`, i.e. `other ⊆ self`.
    pub fn divides(&self, other: &FactoredIdealF) -> bool {
        self.entries.iter().all(|(q, k)| other.exponent_of(q) >= *k)
    }

    pub fn product(&self, other: &FactoredIdealF) -> Result<Self> {
        Self::from_entries(self.entries.iter().chain(other.entries.iter()).copied())
    }

    /// Positive generator of `𝔞₀ ∩ Z`.
    pub fn intersect_z(&self) -> u64 {
        let mut per_p: BTreeMap<u64, u32> = BTreeMap::new();
        for (prime, k) in &self.entries {
            let need = k.div_ceil(prime.ramification_index);
            let slot = per_p.entry(prime.p).or_default();
            *slot = (*slot).max(need);
        }
        per_p.into_iter().map(|(p, k)| p.pow(k)).product()
    }
}

impl fmt::Display for FactoredIdealF {
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

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q5() -> BaseField {
        BaseField::real_quadratic(5).unwrap()
    }

    #[test]
    fn base_field_invariants() {
        assert_eq!(q5().discriminant, 5);
        assert_eq!(BaseField::real_quadratic(2).unwrap().discriminant, 8);
        assert_eq!(BaseField::real_quadratic(13).unwrap().discriminant, 13);
        assert!(BaseField::real_quadratic(12).is_err());
        assert!(BaseField::real_quadratic(1).is_err());
        assert_eq!(BaseField::rationals().discriminant, 1);
    }

    #[test]
    fn primes_above_examples() {
        let ps = q5().primes_above(11).unwrap();
        assert_eq!(ps.len(), 2);
        assert!(ps.iter().all(|q| q.norm == 11));
        let ps = q5().primes_above(5).unwrap();
        assert_eq!(ps.len(), 1);
        assert_eq!((ps[0].norm, ps[0].ramification_index), (5, 2));
        let ps = BaseField::rationals().primes_above(7).unwrap();
        assert_eq!(ps.len(), 1);
        assert_eq!(ps[0].norm, 7);
        assert!(q5().primes_above(9).is_err());
    }

    #[test]
    fn degree_sum_over_primes() {
        for m in [2i64, 3, 5, 13, 21] {
            let f = BaseField::real_quadratic(m).unwrap();
            for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23] {
                let total: u32 = f
                    .primes_above(p)
                    .unwrap()
                    .iter()
                    .map(|q| q.residue_degree * q.ramification_index)
                    .sum();
                assert_eq!(total, 2);
            }
        }
    }

    #[test]
    fn splitting_in_q_sqrt_minus7() {
        let e = ExtensionSpec::over_q(-7).unwrap();
        let q = BaseField::rationals();
        let at = |p| e.splitting(&q.primes_above(p).unwrap()[0]).unwrap();
        assert_eq!(at(2), SplittingInE::Split);
        assert_eq!(at(7), SplittingInE::Ramified);
        assert_eq!(at(3), SplittingInE::Inert);
        assert_eq!(e.signature, 1);
    }

    #[test]
    fn rho_examples() {
        let q = BaseField::rationals();
        let e = ExtensionSpec::over_q(-7).unwrap();
        assert_eq!(e.rho(&FactoredIdealF::from_integer(&q, 9).unwrap()), 1);
        assert_eq!(e.rho(&FactoredIdealF::from_integer(&q, 7).unwrap()), 0);
        let gauss = ExtensionSpec::over_q(-1).unwrap();
        for n in [1u64, 2, 3, 15, 64] {
            assert_eq!(gauss.rho(&FactoredIdealF::from_integer(&q, n).unwrap()), 0);
        }
    }

    #[test]
    fn unramified_over_two_examples() {
        assert!(ExtensionSpec::over_q(-7).unwrap().unramified_over_2().unwrap());
        assert!(!ExtensionSpec::over_q(-1).unwrap().unramified_over_2().unwrap());
        assert!(ExtensionSpec::over_q(5).unwrap().unramified_over_2().unwrap());
    }

    #[test]
    fn squares_are_rejected() {
        assert!(ExtensionSpec::over_q(9).is_err());
        assert!(ExtensionSpec::new(q5(), Theta::rational(5)).is_err());
        assert!(ExtensionSpec::new(q5(), Theta::rational(20)).is_err());
        // (1+√5)²/... : (3 + √5)/2 squared is (7 + 3√5)/2; (1+√5)² = 6 + 2√5.
        assert!(ExtensionSpec::new(q5(), Theta { u: 6, v: 2 }).is_err());
        assert!(ExtensionSpec::new(q5(), Theta { u: 7, v: 3 }).is_ok());
        // ((1+√5)/2)² = (3+√5)/2 is not in Z[√5] so 4·that = 6+2√5 covered above;
        // (3+√5)/2 · 4 = 6 + 2√5 is the same element.
    }

    /// Over Q the splitting of an odd prime is the Kronecker symbol of disc(E).
    #[test]
    fn splitting_matches_kronecker_of_discriminant() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let q = BaseField::rationals();
        let odd_primes: Vec<u64> = (3..400).filter(|&n| is_prime(n)).collect();
        for _ in 0..1000 {
            let theta: i64 = rng.gen_range(-300..300);
            if theta == 0 || exact_sqrt(theta as i128).is_some() {
                continue;
            }
            let p = odd_primes[rng.gen_range(0..odd_primes.len())];
            let e = ExtensionSpec::over_q(theta).unwrap();
            let core = e.reduced_theta.u;
            let disc = if core.rem_euclid(4) == 1 { core } else { 4 * core };
            let expect = match kronecker_symbol(disc, p as i64) {
                1 => SplittingInE::Split,
                -1 => SplittingInE::Inert,
                _ => SplittingInE::Ramified,
            };
            assert_eq!(e.splitting(&q.primes_above(p).unwrap()[0]).unwrap(), expect);
        }
    }

    /// Count roots of x² − θ over O_F/P to cross-check odd classification over Q(√m).
    #[test]
    fn real_quadratic_splitting_matches_residue_field_roots() {
        for m in [5i64, 13, 2, 3] {
            let f = BaseField::real_quadratic(m).unwrap();
            for theta in [Theta { u: 3, v: 1 }, Theta { u: -1, v: 2 }, Theta { u: 7, v: -3 }, Theta::rational(-1)] {
                let Ok(e) = ExtensionSpec::new(f.clone(), theta) else { continue };
                for p in [3u64, 7, 11, 17, 19, 29, 31] {
                    for prime in f.primes_above(p).unwrap() {
                        let n = theta.norm(m);
                        if n % p as i128 == 0 {
                            continue;
                        }
                        // θ is a P-unit: split iff it is a square in the residue field.
                        let square = match prime.selector {
                            Selector::Only if prime.residue_degree == 2 => legendre((n % p as i128) as i64, p) == 1,
                            Selector::Only => legendre(theta.u, p) == 1,
                            sel => {
                                let t = sqrt_mod_prime(m, p).unwrap() as i64;
                                let t = if sel == Selector::FirstRoot { t } else { p as i64 - t };
                                legendre(theta.u + theta.v * t, p) == 1
                            }
                        };
                        let expect = if square { SplittingInE::Split } else { SplittingInE::Inert };
                        assert_eq!(e.splitting(&prime).unwrap(), expect, "m={m} θ={theta} P={prime}");
                    }
                }
            }
        }
    }

    #[test]
    fn two_adic_real_quadratic() {
        // Q(√5)(√-1): 2 is inert in F with residue field F_4; -1 ≡ 3 mod 4 is not
        // ≡ square mod 4 O_F ... E = F(i) ramifies above 2.
        let e = ExtensionSpec::new(q5(), Theta::rational(-1)).unwrap();
        assert!(!e.unramified_over_2().unwrap());
        // F(√-3) = F(ζ₃): unramified above 2, and -3 is not a square in Q_2(√5) = Q_4? In
        // fact Q_2(√5) = Q_2(√-3), so 2 splits.
        let e = ExtensionSpec::new(q5(), Theta::rational(-3)).unwrap();
        let p2 = q5().primes_above(2).unwrap()[0];
        assert_eq!(e.splitting(&p2).unwrap(), SplittingInE::Split);
        // Over Q(√13): 2 inert, Q_2(√13) = Q_2(√5) again.
        let f13 = BaseField::real_quadratic(13).unwrap();
        let e = ExtensionSpec::new(f13.clone(), Theta::rational(5)).unwrap();
        assert_eq!(e.splitting(&f13.primes_above(2).unwrap()[0]).unwrap(), SplittingInE::Split);
        // Even norm is refused.
        let e = ExtensionSpec::new(q5(), Theta::rational(-2)).unwrap();
        assert!(matches!(e.unramified_over_2(), Err(Error::Unsupported(_))));
        assert!(!e.two_adic_known);
    }

    #[test]
    fn two_adic_ramified_base() {
        // F = Q(√2): 2 ramified. F(√-1) = F(ζ8): ramified above 2.
        let f = BaseField::real_quadratic(2).unwrap();
        let p2 = f.primes_above(2).unwrap()[0];
        let e = ExtensionSpec::new(f.clone(), Theta::rational(-1)).unwrap();
        assert_eq!(e.splitting(&p2).unwrap(), SplittingInE::Ramified);
        // F(√5): Q_2(√2, √5) is unramified over Q_2(√2).
        let e = ExtensionSpec::new(f.clone(), Theta::rational(5)).unwrap();
        assert_eq!(e.splitting(&p2).unwrap(), SplittingInE::Inert);
        // F(√-7): -7 is a square in Q_2.
        let e = ExtensionSpec::new(f.clone(), Theta::rational(-7)).unwrap();
        assert_eq!(e.splitting(&p2).unwrap(), SplittingInE::Split);
        // 3 ∉ Q_2(√2)^{×2}; Q_2(√2,√3) = Q_2(√2, √6)... ramified over Q_2(√2)?
        // -1 ≡ 3·(-3): F(√3) = F(√-1·-3) and -3 gives the unramified extension, so
        // F(√3) = F(√-1)·twist is ramified.
        let e = ExtensionSpec::new(f, Theta::rational(3)).unwrap();
        assert_eq!(e.splitting(&p2).unwrap(), SplittingInE::Ramified);
    }

    #[test]
    fn two_adic_split_base() {
        // F = Q(√17): 2 splits. Both completions are Q_2.
        let f = BaseField::real_quadratic(17).unwrap();
        let ps = f.primes_above(2).unwrap();
        assert_eq!(ps.len(), 2);
        let e = ExtensionSpec::new(f.clone(), Theta::rational(-7)).unwrap();
        for q in &ps {
            assert_eq!(e.splitting(q).unwrap(), SplittingInE::Split);
        }
        // θ = (1 + √17)/2·2 - ... use θ = 1 + √17 / no: pick θ = 3 + √17 (norm -8, even) refused,
        // θ = 4 + √17 (norm -1): images 4 + s with s ≡ 3 or 1 mod 4 → 7 or 5 mod 8 distinct.
        let e = ExtensionSpec::new(f, Theta { u: 4, v: 1 }).unwrap();
        let kinds: Vec<_> = ps.iter().map(|q| e.splitting(q).unwrap()).collect();
        assert_ne!(kinds[0], kinds[1]);
    }

    #[test]
    fn signature_real_quadratic() {
        assert_eq!(ExtensionSpec::new(q5(), Theta::rational(-1)).unwrap().signature, 2);
        assert_eq!(ExtensionSpec::new(q5(), Theta::rational(3)).unwrap().signature, 0);
        // 1 - √5 < 0 at place 0? 1 - 2.236 < 0 → complex at place 0; place 1: 1 + √5 > 0.
        let e = ExtensionSpec::new(q5(), Theta { u: 1, v: -1 }).unwrap();
        assert_eq!(e.signature, 1);
        assert_eq!(e.complex_over, vec![RealPlace(0)]);
    }

    #[test]
    fn q_signature_for_negative_theta() {
        for theta in [-1i64, -2, -3, -5, -7, -15] {
            assert_eq!(ExtensionSpec::over_q(theta).unwrap().signature, 1);
        }
    }

    #[test]
    fn ideal_text_form() {
        let f = BaseField::real_quadratic(5).unwrap();
        let a = FactoredIdealF::parse(&f, "11.1^2*3").unwrap();
        assert_eq!(a.norm, 121 * 9);
        assert_eq!(a.to_string(), "3*11.1^2");
        let back = FactoredIdealF::parse(&f, &a.to_string()).unwrap();
        assert_eq!(back, a);
        let q = BaseField::rationals();
        assert_eq!(FactoredIdealF::parse(&q, "9").unwrap(), FactoredIdealF::parse(&q, "3^2").unwrap());
        assert!(FactoredIdealF::parse(&q, "3.1").is_err());
        assert!(FactoredIdealF::parse(&f, "7.1").is_err());
    }

    #[test]
    fn intersection_with_z() {
        let f = BaseField::real_quadratic(5).unwrap();
        assert_eq!(FactoredIdealF::parse(&f, "11.1^2*11.2").unwrap().intersect_z(), 121);
        assert_eq!(FactoredIdealF::parse(&f, "5^3").unwrap().intersect_z(), 25);
        assert_eq!(FactoredIdealF::parse(&f, "2^2").unwrap().intersect_z(), 4);
        assert_eq!(FactoredIdealF::from_integer(&f, 6).unwrap().intersect_z(), 6);
    }

    #[test]
    fn rho_is_monotone_under_divisibility() {
        let q = BaseField::rationals();
        let e = ExtensionSpec::over_q(-105).unwrap();
        for a in 1..60u64 {
            for k in 1..6u64 {
                let ia = FactoredIdealF::from_integer(&q, a).unwrap();
                let ib = FactoredIdealF::from_integer(&q, a * k).unwrap();
                assert!(ia.divides(&ib));
                assert!(e.rho(&ib) <= e.rho(&ia));
            }
        }
    }
}
