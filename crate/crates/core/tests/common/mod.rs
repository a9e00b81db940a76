//! Random configurations shared by the integration tests.
#![allow(dead_code)]

use qlefschetz::bianchi::{BianchiField, IdealOfE};
use qlefschetz::fields::{BaseField, ExtensionSpec, FactoredIdealF, Selector, Theta};
use qlefschetz::numtheory::is_squarefree;
use qlefschetz::quatalg::{validate_hyperbolic, HyperbolicSetting, QuaternionSpec};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const SMALL_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// `Q`, `Q(√5)` or `Q(√13)`.
pub fn random_base(rng: &mut ChaCha8Rng) -> BaseField {
    match rng.gen_range(0..3) {
        0 => BaseField::rationals(),
        1 => BaseField::real_quadratic(5).unwrap(),
        _ => BaseField::real_quadratic(13).unwrap(),
    }
}

/// A proper ideal of `O_F` built from small primes, with norm at most `max_norm`.
pub fn random_ideal(rng: &mut ChaCha8Rng, field: &BaseField, max_norm: u64) -> FactoredIdealF {
    loop {
        let mut entries = Vec::new();
        for _ in 0..rng.gen_range(1..=3) {
            let p = *SMALL_PRIMES.choose(rng).unwrap();
            let primes = field.primes_above(p).unwrap();
            entries.push((*primes.choose(rng).unwrap(), rng.gen_range(1..=3)));
        }
        if let Ok(ideal) = FactoredIdealF::from_entries(entries) {
            if ideal.norm <= max_norm {
                return ideal;
            }
        }
    }
}

/// Random `θ` with one negative embedding; odd norm over real quadratic fields.
pub fn random_extension(rng: &mut ChaCha8Rng, field: &BaseField) -> ExtensionSpec {
    loop {
        let theta = if field.is_rationals() {
            let t = -rng.gen_range(1..80i64);
            if !is_squarefree(t) {
                continue;
            }
            Theta::rational(t)
        } else {
            let m = field.radicand.unwrap();
            let (u, v) = (rng.gen_range(-9..=9i64), rng.gen_range(-4..=4i64));
            if v == 0 || (u * u - m * v * v).rem_euclid(2) == 0 {
                continue;
            }
            Theta { u, v }
        };
        if let Ok(e) = ExtensionSpec::new(field.clone(), theta) {
            if e.signature == 1 {
                return e;
            }
        }
    }
}

/// Random `D₀`: a Hilbert pair over `Q`, an explicit even ramification set otherwise.
pub fn random_algebra(rng: &mut ChaCha8Rng, field: &BaseField) -> QuaternionSpec {
    if field.is_rationals() {
        loop {
            let (a, b) = (rng.gen_range(-15..=15i64), rng.gen_range(-15..=15i64));
            if a != 0 && b != 0 {
                return QuaternionSpec::hilbert(a, b).unwrap();
            }
        }
    }
    let mut labels: Vec<String> = Vec::new();
    for v in field.real_places() {
        if rng.gen_bool(0.5) {
            labels.push(v.label(field));
        }
    }
    for _ in 0..rng.gen_range(0..3) {
        let p = *SMALL_PRIMES.choose(rng).unwrap();
        let q = *field.primes_above(p).unwrap().choose(rng).unwrap();
        let label = q.to_string();
        if !labels.contains(&label) {
            labels.push(label);
        }
    }
    if labels.len() % 2 == 1 {
        labels.pop();
    }
    QuaternionSpec::from_ramification(field.clone(), &labels).unwrap()
}

/// A random `(E, D₀)` passing the hyperbolic checks (division not required).
pub fn random_setting(rng: &mut ChaCha8Rng, field: &BaseField, require_division: bool) -> HyperbolicSetting {
    loop {
        let e = random_extension(rng, field);
        let d0 = random_algebra(rng, field);
        if let Ok(s) = validate_hyperbolic(&e, &d0, require_division) {
            return s;
        }
    }
}

pub const IMAGINARY_RADICANDS: [i64; 16] = [-1, -2, -3, -5, -6, -7, -11, -13, -14, -15, -19, -23, -31, -43, -47, -163];

/// An imaginary quadratic field and an ideal of norm at least 9.
pub fn random_bianchi(rng: &mut ChaCha8Rng) -> (BianchiField, IdealOfE) {
    loop {
        let field = BianchiField::new(*IMAGINARY_RADICANDS.choose(rng).unwrap()).unwrap();
        let mut ideal = IdealOfE::from_integer(&field, 1).unwrap();
        for _ in 0..rng.gen_range(1..4) {
            let p = SMALL_PRIMES[rng.gen_range(0..8)];
            let selector = [Selector::Only, Selector::FirstRoot, Selector::SecondRoot][rng.gen_range(0..3)];
            let Ok(factor) = IdealOfE::prime_power(&field, p, selector, rng.gen_range(1..3)) else { continue };
            ideal = ideal.product(&factor).unwrap();
        }
        if ideal.norm >= 9 && ideal.norm < 1 << 40 {
            return (field, ideal);
        }
    }
}

/// Squarefree `d ≡ 1 mod 4`, `d ≠ 1`.
pub fn random_d_prime(rng: &mut ChaCha8Rng) -> i64 {
    loop {
        let d = rng.gen_range(-199..=199i64);
        if d != 1 && d.rem_euclid(4) == 1 && is_squarefree(d) {
            return d;
        }
    }
}
