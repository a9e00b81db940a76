//! Quaternion algebras `D₀` over `F` described by their ramification, the
//! derived counts `s`, `r`, `c`, `Δ(D₀)`, the ramification of `D = D₀ ⊗ E`
//! and validation of the hyperbolic setting.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::{BaseField, ExtensionSpec, PrimeOfF, RealPlace, SplittingInE};
use crate::numtheory::{factor_integer, legendre, valuation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgebraSource {
    HilbertPair { a: i64, b: i64 },
    ExplicitRamification { places: Vec<String> },
}

/// A place of `F`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Place {
    Finite(PrimeOfF),
    Real(RealPlace),
}

/// A quaternion algebra `D₀` over `F`, recorded through its ramification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuaternionSpec {
    pub base: BaseField,
    pub source: AlgebraSource,
    pub ram_f: Vec<PrimeOfF>,
    pub ram_inf: Vec<RealPlace>,
    /// Real places of `F` where `D₀` splits.
    pub s: u32,
    /// Real places of `F` where `D₀` ramifies.
    pub r: u32,
}

/// The local Hilbert symbol `(a, b)_p` over `Q_p` for a prime `p`.
pub fn hilbert_symbol(a: i64, b: i64, p: u64) -> i8 {
    assert!(a != 0 && b != 0, "Hilbert symbol of zero");
    let split = |n: i64| {
        let k = valuation(n as i128, p);
        (k, n / (p as i64).pow(k))
    };
    let (alpha, u) = split(a);
    let (beta, v) = split(b);
    if p == 2 {
        let eps = |x: i64| ((x.rem_euclid(4) - 1) / 2) as u32;
        let omega = |x: i64| {
            let r = x.rem_euclid(8);
            u32::from(r == 3 || r == 5)
        };
        let exp = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u);
        if exp % 2 == 0 {
            1
        } else {
            -1
        }
    } else {
        let eps = ((p - 1) / 2) as u32;
        let mut sign: i8 = if (alpha * beta * eps) % 2 == 0 { 1 } else { -1 };
        if beta % 2 == 1 {
            sign *= legendre(u, p);
        }
        if alpha % 2 == 1 {
            sign *= legendre(v, p);
        }
        sign
    }
}

impl QuaternionSpec {
    /// The algebra `(a, b)_Q`, with ramification read off from local Hilbert symbols.
    pub fn hilbert(a: i64, b: i64) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::Invalid("Hilbert pair entries must be nonzero".into()));
        }
        let q = BaseField::rationals();
        let mut candidates = vec![2u64];
        for n in [a, b] {
            candidates.extend(factor_integer(n.unsigned_abs()).primes());
        }
        candidates.sort_unstable();
        candidates.dedup();
        let mut ram_f = Vec::new();
        for p in candidates {
            if hilbert_symbol(a, b, p) == -1 {
                ram_f.extend(q.primes_above(p)?);
            }
        }
        let ram_inf = if a < 0 && b < 0 { vec![RealPlace(0)] } else { Vec::new() };
        assert!(
            (ram_f.len() + ram_inf.len()) % 2 == 0,
            "product formula violated for ({a}, {b})"
        );
        Ok(Self::assemble(q, AlgebraSource::HilbertPair { a, b }, ram_f, ram_inf))
    }

    /// The algebra with the given ramified places; labels are ideal text forms
    /// of primes (`"2"`, `"11.1"`) and real places (`"inf"`, `"inf.1"`, `"inf.2"`).
    pub fn from_ramification(base: BaseField, labels: &[String]) -> Result<Self> {
        let mut ram_f = Vec::new();
        let mut ram_inf = Vec::new();
        for label in labels {
            match parse_place(&base, label)? {
                Place::Finite(q) => ram_f.push(q),
                Place::Real(v) => ram_inf.push(v),
            }
        }
        ram_f.sort();
        ram_inf.sort();
        let before = ram_f.len() + ram_inf.len();
        ram_f.dedup();
        ram_inf.dedup();
        if ram_f.len() + ram_inf.len() != before {
            return Err(Error::Invalid("repeated place in ramification set".into()));
        }
        if before % 2 == 1 {
            return Err(Error::Invalid(format!(
                "ramification set must have even size, got {before}"
            )));
        }
        let source = AlgebraSource::ExplicitRamification { places: labels.to_vec() };
        Ok(Self::assemble(base, source, ram_f, ram_inf))
    }

    /// The matrix algebra `M₂(F)`.
    pub fn matrix(base: BaseField) -> Self {
        Self::assemble(
            base,
            AlgebraSource::ExplicitRamification { places: Vec::new() },
            Vec::new(),
            Vec::new(),
        )
    }

    fn assemble(
        base: BaseField,
        source: AlgebraSource,
        ram_f: Vec<PrimeOfF>,
        ram_inf: Vec<RealPlace>,
    ) -> Self {
        let r = ram_inf.len() as u32;
        QuaternionSpec { s: base.degree - r, base, source, ram_f, ram_inf, r }
    }

    pub fn is_matrix_algebra(&self) -> bool {
        self.ram_f.is_empty() && self.ram_inf.is_empty()
    }

    pub fn is_ramified_at(&self, prime: &PrimeOfF) -> bool {
        self.ram_f.contains(prime)
    }

    /// `Δ(D₀) = ∏ (N𝔭 − 1)` over the finite ramified primes.
    pub fn delta(&self) -> u64 {
        self.ram_f.iter().map(|q| q.norm - 1).product()
    }

    pub fn counts(&self, ext: &ExtensionSpec) -> Counts {
        let c = self.ram_inf.iter().filter(|v| ext.is_complex_over(**v)).count() as u32;
        Counts { d: self.base.degree, s: self.s, r: self.r, c }
    }

    /// Places of `E` where `D = D₀ ⊗ E` ramifies: those above a ramified place
    /// of `D₀` that splits in `E`.
    pub fn ram_of_d(&self, ext: &ExtensionSpec) -> Result<RamOfD> {
        self.check_base(ext)?;
        let mut places = Vec::new();
        for q in &self.ram_f {
            if ext.splitting(q)? == SplittingInE::Split {
                places.push(PlaceOfE { below: Place::Finite(*q), index: 1 });
                places.push(PlaceOfE { below: Place::Finite(*q), index: 2 });
            }
        }
        for v in &self.ram_inf {
            if !ext.is_complex_over(*v) {
                places.push(PlaceOfE { below: Place::Real(*v), index: 1 });
                places.push(PlaceOfE { below: Place::Real(*v), index: 2 });
            }
        }
        Ok(RamOfD { division: !places.is_empty(), places })
    }

    /// Strong approximation for `SL₁(D)`: some archimedean place of `E` splits `D`.
    pub fn strong_approximation(&self, ext: &ExtensionSpec) -> bool {
        ext.signature > 0 || self.ram_inf.len() < self.base.degree as usize
    }

    fn check_base(&self, ext: &ExtensionSpec) -> Result<()> {
        if self.base != ext.base {
            return Err(Error::Invalid(format!(
                "algebra over {} but extension over {}",
                self.base, ext.base
            )));
        }
        Ok(())
    }

    pub fn place_labels(&self) -> Vec<String> {
        let mut out: Vec<String> = self.ram_f.iter().map(|q| q.to_string()).collect();
        out.extend(self.ram_inf.iter().map(|v| v.label(&self.base)));
        out
    }
}

fn parse_place(base: &BaseField, label: &str) -> Result<Place> {
    let label = label.trim();
    let real = |i: u8| {
        if (i as u32) < base.degree {
            Ok(Place::Real(RealPlace(i)))
        } else {
            Err(Error::Invalid(format!("no real place {label:?} in {base}")))
        }
    };
    match label {
        "inf" if base.degree == 1 => real(0),
        "inf" => Err(Error::Invalid(format!("use inf.1 or inf.2 for {base}"))),
        "inf.1" => real(0),
        "inf.2" => real(1),
        _ => {
            let ideal = crate::fields::FactoredIdealF::parse(base, label)?;
            match ideal.entries.as_slice() {
                [(q, 1)] => Ok(Place::Finite(*q)),
                _ => Err(Error::Invalid(format!("{label:?} is not a prime of {base}"))),
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub d: u32,
    pub s: u32,
    pub r: u32,
    /// Real places ramified in `D₀` lying under a complex place of `E`.
    pub c: u32,
}

/// A place of `E` above a place of `F` (`index` 1 or 2 when two lie above it).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaceOfE {
    pub below: Place,
    pub index: u8,
}

impl fmt::Display for PlaceOfE {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.below {
            Place::Finite(q) => write!(f, "{q}#{}", self.index),
            Place::Real(v) => write!(f, "inf{}#{}", v.0 + 1, self.index),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamOfD {
    pub places: Vec<PlaceOfE>,
    pub division: bool,
}

/// A validated configuration: `E` with one complex place, `D₀` ramified at
/// every real place of `F` not under it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperbolicSetting {
    pub extension: ExtensionSpec,
    pub algebra: QuaternionSpec,
    pub counts: Counts,
    pub division: bool,
    pub ram_of_d: RamOfD,
    /// `None` when the 2-adic data over a real quadratic base is not available.
    pub unramified_over_2: Option<bool>,
    pub strong_approximation: bool,
}

impl HyperbolicSetting {
    pub fn field(&self) -> &BaseField {
        &self.extension.base
    }
}

/// Check the hyperbolic setting, collecting every failed condition.
pub fn validate_hyperbolic(
    ext: &ExtensionSpec,
    algebra: &QuaternionSpec,
    require_division: bool,
) -> Result<HyperbolicSetting> {
    algebra.check_base(ext)?;
    let mut problems = Vec::new();
    if ext.signature != 1 {
        problems.push(format!(
            "E must have exactly one complex place, found {}",
            ext.signature
        ));
    }
    for v in ext.base.real_places() {
        if !ext.is_complex_over(v) && !algebra.ram_inf.contains(&v) {
            problems.push(format!(
                "D0 must ramify at the real place {} of F",
                v.label(&ext.base)
            ));
        }
    }
    let ram_of_d = algebra.ram_of_d(ext)?;
    if require_division && !ram_of_d.division {
        problems.push("D = D0 ⊗ E is not a division algebra".to_string());
    }
    if !problems.is_empty() {
        return Err(Error::Setting(problems));
    }
    let counts = algebra.counts(ext);
    if counts.c + counts.s != 1 {
        return Err(Error::Consistency(format!(
            "expected c = 1 - s, found c = {}, s = {}",
            counts.c, counts.s
        )));
    }
    let unramified_over_2 = match ext.unramified_over_2() {
        Ok(flag) => Some(flag),
        Err(Error::Unsupported(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(HyperbolicSetting {
        extension: ext.clone(),
        algebra: algebra.clone(),
        counts,
        division: ram_of_d.division,
        ram_of_d,
        unramified_over_2,
        strong_approximation: algebra.strong_approximation(ext),
    })
}
