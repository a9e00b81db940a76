//! Finite quotients `O_E ⊗ Z/pᵉ` of the local rings of a quadratic extension,
//! with their Galois involution.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::SplittingInE;
use crate::numtheory::{is_prime, legendre};

/// Local behaviour of `E/F` at the prime under study.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtType {
    SplitPair,
    Unramified,
    Ramified,
}

impl ExtType {
    pub const ALL: [ExtType; 3] = [ExtType::SplitPair, ExtType::Unramified, ExtType::Ramified];

    pub fn splitting(self) -> SplittingInE {
        match self {
            ExtType::SplitPair => SplittingInE::Split,
            ExtType::Unramified => SplittingInE::Inert,
            ExtType::Ramified => SplittingInE::Ramified,
        }
    }
}

impl fmt::Display for ExtType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExtType::SplitPair => "split_pair",
            ExtType::Unramified => "unramified",
            ExtType::Ramified => "ramified",
        })
    }
}

/// Multiplication rule on pairs `(x, y)` of residues mod `pᵉ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RingKind {
    /// `Z/pᵉ` itself, stored as `(x, 0)`.
    Base,
    /// `Z/pᵉ × Z/pᵉ`, σ swaps the factors.
    SplitPair,
    /// `x + yζ` with `ζ² = tζ − n`, σ(ζ) = t − ζ.
    Unramified { t: u32, n: u32 },
    /// `x + yπ` with `π² = m`, σ(π) = −π.
    Ramified { m: u32 },
}

/// An element `(x, y)`; its meaning depends on the [`RingKind`].
pub type El = (u32, u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteLocalRing {
    pub p: u32,
    pub e: u32,
    /// `pᵉ`.
    pub q: u32,
    pub kind: RingKind,
}

/// Least `(t, n)` in lexicographic order with `x² − tx + n` irreducible mod `p`.
pub fn least_irreducible_quadratic(p: u32) -> (u32, u32) {
    for t in 0..p {
        for n in 0..p {
            let has_root = (0..p).any(|x| (x as u64 * x as u64 + n as u64 + (p - t) as u64 * x as u64) % p as u64 == 0);
            if !has_root {
                return (t, n);
            }
        }
    }
    unreachable!("every prime field has an irreducible quadratic")
}

/// Smallest unit that is not a square in `Z_p`: the least quadratic
/// nonresidue for odd `p`, and 3 for `p = 2`.
pub fn least_nonsquare_unit(p: u32) -> u32 {
    if p == 2 {
        return 3;
    }
    (2..p).find(|&u| legendre(u as i64, p as u64) == -1).expect("odd primes have nonresidues")
}

impl FiniteLocalRing {
    fn check(p: u32, e: u32) -> Result<u32> {
        if !is_prime(p as u64) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        if e == 0 {
            return Err(Error::Invalid("level must be at least 1".into()));
        }
        p.checked_pow(e)
            .filter(|&q| q < 1 << 16)
            .ok_or_else(|| Error::Invalid(format!("{p}^{e} is too large for the oracle")))
    }

    pub fn base(p: u32, e: u32) -> Result<Self> {
        Ok(FiniteLocalRing { p, e, q: Self::check(p, e)?, kind: RingKind::Base })
    }

    pub fn split_pair(p: u32, e: u32) -> Result<Self> {
        Ok(FiniteLocalRing { p, e, q: Self::check(p, e)?, kind: RingKind::SplitPair })
    }

    /// The Galois ring of rank 2, built on the least irreducible quadratic mod `p`.
    pub fn unramified(p: u32, e: u32) -> Result<Self> {
        let q = Self::check(p, e)?;
        let (t, n) = least_irreducible_quadratic(p);
        Ok(FiniteLocalRing { p, e, q, kind: RingKind::Unramified { t, n } })
    }

    /// `Z_p[π]/(pᵉ)` with `π² = u·p`.
    pub fn ramified(p: u32, e: u32, unit: u32) -> Result<Self> {
        if unit % p == 0 {
            return Err(Error::Invalid(format!("{unit} is not a unit mod {p}")));
        }
        Self::ramified_with_radicand(p, e, unit as i64 * p as i64)
    }

    /// `Z_p[√m]/(pᵉ)`; `Z_p(√m)/Q_p` must be ramified with `Z_p[√m]` its full ring of integers.
    pub fn ramified_with_radicand(p: u32, e: u32, m: i64) -> Result<Self> {
        let q = Self::check(p, e)?;
        let ok = if p == 2 {
            matches!(m.rem_euclid(4), 2 | 3)
        } else {
            m.rem_euclid(p as i64) == 0 && m.rem_euclid(p as i64 * p as i64) != 0
        };
        if !ok {
            return Err(Error::Invalid(format!(
                "Z_{p}[sqrt({m})] is not the integer ring of a ramified extension"
            )));
        }
        Ok(FiniteLocalRing { p, e, q, kind: RingKind::Ramified { m: m.rem_euclid(q as i64) as u32 } })
    }

    pub fn for_ext(p: u32, e: u32, ext: ExtType, nonsquare_unit: bool) -> Result<Self> {
        match ext {
            ExtType::SplitPair => Self::split_pair(p, e),
            ExtType::Unramified => Self::unramified(p, e),
            ExtType::Ramified => {
                let u = if nonsquare_unit { least_nonsquare_unit(p) } else { 1 };
                Self::ramified(p, e, u)
            }
        }
    }

    pub fn cardinality(&self) -> u64 {
        match self.kind {
            RingKind::Base => self.q as u64,
            _ => self.q as u64 * self.q as u64,
        }
    }

    /// Dense index in `0..q²`.
    pub fn index(&self, a: El) -> usize {
        a.0 as usize * self.q as usize + a.1 as usize
    }

    pub fn elements(&self) -> Vec<El> {
        match self.kind {
            RingKind::Base => (0..self.q).map(|x| (x, 0)).collect(),
            _ => (0..self.q).flat_map(|x| (0..self.q).map(move |y| (x, y))).collect(),
        }
    }

    #[inline]
    fn r(&self, v: u64) -> u32 {
        (v % self.q as u64) as u32
    }

    /// Image of a residue of the base ring.
    pub fn from_base(&self, c: u32) -> El {
        let c = c % self.q;
        match self.kind {
            RingKind::SplitPair => (c, c),
            _ => (c, 0),
        }
    }

    pub fn zero(&self) -> El {
        (0, 0)
    }

    pub fn one(&self) -> El {
        self.from_base(1)
    }

    #[inline]
    pub fn add(&self, a: El, b: El) -> El {
        (self.r(a.0 as u64 + b.0 as u64), self.r(a.1 as u64 + b.1 as u64))
    }

    #[inline]
    pub fn neg(&self, a: El) -> El {
        (self.r((self.q - a.0) as u64), self.r((self.q - a.1) as u64))
    }

    #[inline]
    pub fn sub(&self, a: El, b: El) -> El {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: El, b: El) -> El {
        let q = self.q as u64;
        let (x1, y1, x2, y2) = (a.0 as u64, a.1 as u64, b.0 as u64, b.1 as u64);
        match self.kind {
            RingKind::Base => (self.r(x1 * x2), 0),
            RingKind::SplitPair => (self.r(x1 * x2), self.r(y1 * y2)),
            RingKind::Unramified { t, n } => {
                let yy = y1 * y2 % q;
                (
                    self.r(x1 * x2 + (q - n as u64) * yy),
                    self.r(x1 * y2 + y1 * x2 + t as u64 * yy),
                )
            }
            RingKind::Ramified { m } => {
                let yy = y1 * y2 % q;
                (self.r(x1 * x2 + m as u64 * yy), self.r(x1 * y2 + y1 * x2))
            }
        }
    }

    /// Multiplication by a residue of the base ring.
    #[inline]
    pub fn scale(&self, c: u32, a: El) -> El {
        match self.kind {
            RingKind::Base => (self.r(c as u64 * a.0 as u64), 0),
            _ => (self.r(c as u64 * a.0 as u64), self.r(c as u64 * a.1 as u64)),
        }
    }

    #[inline]
    pub fn sigma(&self, a: El) -> El {
        match self.kind {
            RingKind::Base => a,
            RingKind::SplitPair => (a.1, a.0),
            RingKind::Unramified { t, .. } => {
                (self.r(a.0 as u64 + t as u64 * a.1 as u64), self.r((self.q - a.1) as u64))
            }
            RingKind::Ramified { .. } => (a.0, self.r((self.q - a.1) as u64)),
        }
    }

    /// `a·σ(a)`, as a residue of the base ring.
    pub fn norm(&self, a: El) -> u32 {
        let n = self.mul(a, self.sigma(a));
        n.0
    }

    pub fn is_unit(&self, a: El) -> bool {
        self.norm(a) % self.p != 0
    }

    pub fn inv(&self, a: El) -> Option<El> {
        let n = self.norm(a);
        if n % self.p == 0 {
            return None;
        }
        let n_inv = inverse_mod(n, self.q);
        Some(self.scale(n_inv, self.sigma(a)))
    }
}

/// Inverse of a unit modulo `q`.
pub fn inverse_mod(a: u32, q: u32) -> u32 {
    let (mut r0, mut r1) = (q as i64, a as i64 % q as i64);
    let (mut s0, mut s1) = (0i64, 1i64);
    while r1 != 0 {
        let k = r0 / r1;
        (r0, r1) = (r1, r0 - k * r1);
        (s0, s1) = (s1, s0 - k * s1);
    }
    assert_eq!(r0, 1, "{a} is not invertible mod {q}");
    s0.rem_euclid(q as i64) as u32
}

impl fmt::Display for FiniteLocalRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            RingKind::Base => write!(f, "Z/{}", self.q),
            RingKind::SplitPair => write!(f, "Z/{0} x Z/{0}", self.q),
            RingKind::Unramified { t, n } => write!(f, "(Z/{})[z]/(z^2-{t}z+{n})", self.q),
            RingKind::Ramified { m } => write!(f, "(Z/{})[pi]/(pi^2-{m})", self.q),
        }
    }
}
