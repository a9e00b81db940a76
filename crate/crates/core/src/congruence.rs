//! Orders of the finite groups `G₀(o/𝔭ᵉ)`, `G(o/𝔭ᵉ)`, the global indices
//! `[K₀:K₀(𝔞₀)]`, `[K:K(𝔞₀)]`, the local ratios `Q(v,𝔞₀)²` and the index estimate.

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::{ExtensionSpec, FactoredIdealF, PrimeOfF, SplittingInE};
use crate::numtheory::{decimal, factor_integer, is_prime, zeta_2_numeric, ExactRational};
use crate::quatalg::QuaternionSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalProfile {
    pub prime: PrimeOfF,
    pub exponent: u32,
    pub d0_ramified: bool,
    pub splitting: Option<SplittingInE>,
}

fn check_prime_power(n: u64, e: u32) -> Result<()> {
    if e == 0 {
        return Err(Error::Invalid("congruence level exponent must be >= 1".into()));
    }
    if n < 2 || factor_integer(n).factors.len() != 1 {
        return Err(Error::Invalid(format!("{n} is not a prime power")));
    }
    Ok(())
}

fn pow(n: u64, k: u32) -> BigUint {
    BigUint::from(n).pow(k)
}

/// `|G₀(o/𝔭ᵉ)|`: `N^{3e}(1 − N⁻²)` when `D₀` splits at 𝔭, `N^{3e}(1 + N⁻¹)` otherwise.
pub fn order_g0(n: u64, e: u32, d0_ramified: bool) -> Result<BigUint> {
    check_prime_power(n, e)?;
    Ok(if d0_ramified {
        pow(n, 3 * e - 1) * (n + 1)
    } else {
        pow(n, 3 * e - 2) * (n * n - 1)
    })
}

/// `|G(o/𝔭ᵉ)|` for `G = SL₁(D₀ ⊗ E)` at a prime of `F` with norm `n`.
pub fn order_g(n: u64, e: u32, splitting: SplittingInE, d0_ramified: bool) -> Result<BigUint> {
    check_prime_power(n, e)?;
    let n2 = BigUint::from(n) * n;
    Ok(match (splitting, d0_ramified) {
        (SplittingInE::Split, _) => {
            let g0 = order_g0(n, e, d0_ramified)?;
            &g0 * &g0
        }
        (SplittingInE::Inert, false) => pow(n, 6 * e - 4) * (&n2 * &n2 - 1u32),
        (SplittingInE::Inert, true) | (SplittingInE::Ramified, false) => {
            pow(n, 6 * e - 2) * (n2 - 1u32)
        }
        (SplittingInE::Ramified, true) => pow(n, 6 * e - 1) * (n + 1),
    })
}

/// The case table for `Q(v, 𝔞₀)²`; independent of the exponent.
pub fn q_squared(profile: &LocalProfile) -> Result<ExactRational> {
    let splitting = profile
        .splitting
        .ok_or_else(|| Error::Invalid("q_squared needs the splitting in E".into()))?;
    let inv = ExactRational::new(1, profile.prime.norm);
    let inv2 = &inv * &inv;
    let one = ExactRational::one();
    Ok(match (splitting, profile.d0_ramified) {
        (SplittingInE::Split, _) => one,
        (SplittingInE::Inert, false) => (&one - &inv2) / (&one + &inv2),
        (SplittingInE::Inert, true) => (&one + &inv) / (&one - &inv),
        (SplittingInE::Ramified, false) => &one - &inv2,
        (SplittingInE::Ramified, true) => &one + &inv,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeContribution {
    pub profile: LocalProfile,
    #[serde(with = "decimal")]
    pub order_g0: BigUint,
    #[serde(with = "decimal")]
    pub order_g: BigUint,
    pub q_squared: ExactRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexReport {
    #[serde(with = "decimal")]
    pub index_k0: BigUint,
    /// Also the index `[Γ(1):Γ(𝔞₀)]` of the arithmetic groups.
    #[serde(with = "decimal")]
    pub index_k: BigUint,
    pub per_prime: Vec<PrimeContribution>,
    pub ratio_squared: ExactRational,
}

/// `[K₀:K₀(𝔞₀)] = ∏ |G₀(o/𝔭ᵉ)|`, which only depends on `D₀`.
pub fn index_k0(d0: &QuaternionSpec, a0: &FactoredIdealF) -> Result<BigUint> {
    let mut total = BigUint::one();
    for (prime, k) in &a0.entries {
        total *= order_g0(prime.norm, *k, d0.is_ramified_at(prime))?;
    }
    Ok(total)
}

pub fn indices(d0: &QuaternionSpec, ext: &ExtensionSpec, a0: &FactoredIdealF) -> Result<IndexReport> {
    if d0.base != ext.base {
        return Err(Error::Invalid("algebra and extension over different fields".into()));
    }
    let mut per_prime = Vec::with_capacity(a0.entries.len());
    for (prime, k) in &a0.entries {
        let d0_ramified = d0.is_ramified_at(prime);
        let splitting = ext.splitting(prime)?;
        let profile = LocalProfile { prime: *prime, exponent: *k, d0_ramified, splitting: Some(splitting) };
        per_prime.push(PrimeContribution {
            order_g0: order_g0(prime.norm, *k, d0_ramified)?,
            order_g: order_g(prime.norm, *k, splitting, d0_ramified)?,
            q_squared: q_squared(&profile)?,
            profile,
        });
    }
    let index_k0: BigUint = per_prime.iter().map(|c| c.order_g0.clone()).product();
    let index_k: BigUint = per_prime.iter().map(|c| c.order_g.clone()).product();
    let ratio_squared: ExactRational = per_prime.iter().map(|c| c.q_squared.clone()).product();
    let direct = ExactRational::from(&index_k0 * &index_k0) / ExactRational::from(index_k.clone());
    if direct != ratio_squared {
        return Err(Error::Consistency(format!(
            "index ratio {direct} disagrees with the product of local ratios {ratio_squared}"
        )));
    }
    Ok(IndexReport { index_k0, index_k, per_prime, ratio_squared })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioCheck {
    /// `[K₀:K₀(𝔞₀)] / [K:K(𝔞₀)]^{1/2}`.
    pub ratio: f64,
    pub bound: f64,
    /// The bound is 1 because every prime of `𝔞₀` splits in `E` or ramifies in `D₀`.
    pub bound_is_one: bool,
    pub holds: bool,
}

/// The index estimate `[K₀:K₀(𝔞₀)] / √[K:K(𝔞₀)] ≥ ζ_F(2)⁻¹`, or `≥ 1` when
/// every prime of `𝔞₀` is split in `E` or ramified in `D₀`.
pub fn ratio_bound_check(
    d0: &QuaternionSpec,
    ext: &ExtensionSpec,
    a0: &FactoredIdealF,
    tol: f64,
) -> Result<RatioCheck> {
    let report = indices(d0, ext, a0)?;
    let ratio = report.ratio_squared.to_f64().sqrt();
    let bound_is_one = report.per_prime.iter().all(|c| {
        c.profile.d0_ramified || c.profile.splitting == Some(SplittingInE::Split)
    });
    let bound = if bound_is_one {
        1.0
    } else {
        let z = zeta_2_numeric(&ext.base, tol)?;
        1.0 / (z.value + z.tol)
    };
    let holds = if bound_is_one {
        report.ratio_squared >= ExactRational::one()
    } else {
        ratio >= bound - 1e-12
    };
    Ok(RatioCheck { ratio, bound, bound_is_one, holds })
}

/// Sufficient condition for `Γ(𝔞₀)` to be torsion-free: `𝔞₀ ∩ Z` is neither
/// the unit ideal nor a prime ideal.
pub fn torsion_free_sufficient(a0: &FactoredIdealF) -> bool {
    let n = a0.intersect_z();
    n != 1 && !is_prime(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::BaseField;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Count `xw − yz ≡ 1 (mod m)` by brute force.
    fn sl2_mod(m: u64) -> u64 {
        let mut count = 0;
        for x in 0..m {
            for y in 0..m {
                for z in 0..m {
                    for w in 0..m {
                        if (x * w + m * m - y * z % m) % m == 1 % m {
                            count += 1;
                        }
                    }
                }
            }
        }
        count
    }

    fn compact() -> (QuaternionSpec, ExtensionSpec) {
        (QuaternionSpec::hilbert(-1, -1).unwrap(), ExtensionSpec::over_q(-7).unwrap())
    }

    fn ideal(n: u64) -> FactoredIdealF {
        FactoredIdealF::from_integer(&BaseField::rationals(), n).unwrap()
    }

    #[test]
    fn order_g0_examples() {
        assert_eq!(order_g0(3, 1, false).unwrap(), BigUint::from(24u32));
        assert_eq!(sl2_mod(3), 24);
        assert_eq!(order_g0(3, 1, true).unwrap(), BigUint::from(36u32));
        assert_eq!(order_g0(2, 2, false).unwrap(), BigUint::from(48u32));
        assert_eq!(sl2_mod(4), 48);
        assert!(order_g0(6, 1, false).is_err());
        assert!(order_g0(3, 0, false).is_err());
    }

    #[test]
    fn order_g_examples() {
        assert_eq!(order_g(3, 1, SplittingInE::Split, false).unwrap(), BigUint::from(576u32));
        assert_eq!(order_g(3, 1, SplittingInE::Inert, false).unwrap(), BigUint::from(720u32));
        assert_eq!(order_g(3, 1, SplittingInE::Ramified, true).unwrap(), BigUint::from(972u32));
    }

    #[test]
    fn indices_compact_example() {
        let (d0, e) = compact();
        let r = indices(&d0, &e, &ideal(9)).unwrap();
        assert_eq!(r.index_k0, BigUint::from(648u32));
        assert_eq!(r.index_k, BigUint::from(524880u32));
        let r = indices(&d0, &e, &ideal(6)).unwrap();
        assert_eq!(r.index_k0, BigUint::from(288u32));
        let r = indices(&d0, &e, &FactoredIdealF::unit()).unwrap();
        assert_eq!((r.index_k0, r.index_k), (BigUint::one(), BigUint::one()));
    }

    #[test]
    fn q_squared_table() {
        let prime = BaseField::rationals().primes_above(3).unwrap()[0];
        let q = |s, r| {
            q_squared(&LocalProfile { prime, exponent: 1, d0_ramified: r, splitting: Some(s) }).unwrap()
        };
        assert_eq!(q(SplittingInE::Split, true), ExactRational::one());
        assert_eq!(q(SplittingInE::Inert, false), ExactRational::new(4, 5));
        assert_eq!(q(SplittingInE::Ramified, true), ExactRational::new(4, 3));
        for (s, r) in [(SplittingInE::Inert, true), (SplittingInE::Ramified, false)] {
            for e in 1..4 {
                let direct = ExactRational::from(order_g0(3, e, r).unwrap().pow(2u32))
                    / ExactRational::from(order_g(3, e, s, r).unwrap());
                assert_eq!(direct, q(s, r));
            }
        }
    }

    #[test]
    fn ratio_check_examples() {
        let (d0, e) = compact();
        let c = ratio_bound_check(&d0, &e, &ideal(9), 1e-12).unwrap();
        assert!((c.ratio - 648.0 / 524880f64.sqrt()).abs() < 1e-12);
        assert!((c.bound - 0.6079271).abs() < 1e-6);
        assert!(c.holds && !c.bound_is_one);
        // 2 and 11 both split in Q(√−7).
        let c = ratio_bound_check(&d0, &e, &ideal(22), 1e-12).unwrap();
        assert!(c.bound_is_one && c.holds);
        assert!((c.ratio - 1.0).abs() < 1e-15);
        assert!(ratio_bound_check(&d0, &e, &ideal(6), 1e-12).unwrap().holds);
    }

    #[test]
    fn torsion_condition() {
        assert!(torsion_free_sufficient(&ideal(9)));
        assert!(!torsion_free_sufficient(&ideal(3)));
        assert!(torsion_free_sufficient(&ideal(6)));
        assert!(!torsion_free_sufficient(&ideal(1)));
        let f = BaseField::real_quadratic(5).unwrap();
        assert!(!torsion_free_sufficient(&FactoredIdealF::parse(&f, "11.1").unwrap()));
        assert!(torsion_free_sufficient(&FactoredIdealF::parse(&f, "11.1^2").unwrap()));
        assert!(!torsion_free_sufficient(&FactoredIdealF::parse(&f, "5").unwrap()));
        assert!(torsion_free_sufficient(&FactoredIdealF::parse(&f, "5^3").unwrap()));
    }

    #[test]
    fn orders_are_integral() {
        for n in 2..=100u64 {
            let f = factor_integer(n);
            if f.factors.len() != 1 {
                continue;
            }
            for e in 1..=4 {
                for r in [false, true] {
                    let g0 = order_g0(n, e, r).unwrap();
                    assert!(g0 > BigUint::from(0u32));
                    for s in [SplittingInE::Split, SplittingInE::Inert, SplittingInE::Ramified] {
                        // Exact rational form equals the integer form.
                        let g = order_g(n, e, s, r).unwrap();
                        let nn = ExactRational::from(n as i64);
                        let inv = nn.recip();
                        let lead = ExactRational::from(BigUint::from(n).pow(6 * e));
                        let one = ExactRational::one();
                        let rational = match (s, r) {
                            (SplittingInE::Split, _) => ExactRational::from(g0.pow(2u32)),
                            (SplittingInE::Inert, false) => lead * (&one - &inv.pow(4)),
                            (SplittingInE::Inert, true) | (SplittingInE::Ramified, false) => {
                                lead * (&one - &inv.pow(2))
                            }
                            (SplittingInE::Ramified, true) => lead * (&one + &inv),
                        };
                        assert_eq!(ExactRational::from(g), rational);
                    }
                }
            }
        }
    }

    fn random_ideal(rng: &mut ChaCha8Rng, f: &BaseField, max_norm: u64) -> FactoredIdealF {
        let primes: Vec<u64> = (2..200).filter(|&p| is_prime(p)).collect();
        loop {
            let mut entries = Vec::new();
            for _ in 0..rng.gen_range(1..4) {
                let p = primes[rng.gen_range(0..primes.len())];
                let ps = f.primes_above(p).unwrap();
                let q = ps[rng.gen_range(0..ps.len())];
                entries.push((q, rng.gen_range(1..3)));
            }
            if let Ok(a) = FactoredIdealF::from_entries(entries) {
                if a.norm <= max_norm {
                    return a;
                }
            }
        }
    }

    #[test]
    fn ratio_identity_on_random_ideals() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let (d0, e) = compact();
        let q = BaseField::rationals();
        for _ in 0..200 {
            let a = random_ideal(&mut rng, &q, 1_000_000);
            let r = indices(&d0, &e, &a).unwrap();
            let direct = ExactRational::from(&r.index_k0 * &r.index_k0) / ExactRational::from(r.index_k.clone());
            assert_eq!(direct, r.ratio_squared);
        }
    }

    #[test]
    fn indices_multiply_over_coprime_ideals() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let (d0, e) = compact();
        let q = BaseField::rationals();
        let mut checked = 0;
        while checked < 100 {
            let a = random_ideal(&mut rng, &q, 10_000);
            let b = random_ideal(&mut rng, &q, 10_000);
            if num_integer::gcd(a.norm, b.norm) != 1 {
                continue;
            }
            let ab = a.product(&b).unwrap();
            let (ra, rb, rab) = (
                indices(&d0, &e, &a).unwrap(),
                indices(&d0, &e, &b).unwrap(),
                indices(&d0, &e, &ab).unwrap(),
            );
            assert_eq!(rab.index_k0, &ra.index_k0 * &rb.index_k0);
            assert_eq!(rab.index_k, &ra.index_k * &rb.index_k);
            checked += 1;
        }
    }

    #[test]
    fn index_estimate_on_random_ideals() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let q = BaseField::rationals();
        let f5 = BaseField::real_quadratic(5).unwrap();
        let cases = [
            (QuaternionSpec::hilbert(-1, -1).unwrap(), ExtensionSpec::over_q(-7).unwrap(), q.clone()),
            (
                QuaternionSpec::from_ramification(f5.clone(), &["inf.1".into(), "inf.2".into()]).unwrap(),
                ExtensionSpec::new(f5.clone(), crate::fields::Theta { u: 2, v: -1 }).unwrap(),
                f5,
            ),
        ];
        for (d0, e, f) in &cases {
            for _ in 0..100 {
                let a = random_ideal(&mut rng, f, 1_000_000);
                let c = ratio_bound_check(d0, e, &a, 1e-12).unwrap();
                assert!(c.holds, "{a}: {} < {}", c.ratio, c.bound);
            }
        }
    }
}
