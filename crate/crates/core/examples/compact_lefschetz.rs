//! The compact arithmetic hyperbolic 3-manifolds `Γ(𝔞₀)\H³` for
//! `F = Q`, `E = Q(√−7)` and two definite quaternion algebras `D₀`.
//!
//! ```text
//! cargo run --example compact_lefschetz
//! ```

use qlefschetz::congruence::{indices, ratio_bound_check};
use qlefschetz::fields::{BaseField, ExtensionSpec, FactoredIdealF};
use qlefschetz::lefschetz::{betti_lower_bound, euler_char_component, h1_size, lefschetz_number};
use qlefschetz::quatalg::{validate_hyperbolic, QuaternionSpec};

fn main() -> qlefschetz::Result<()> {
    let q = BaseField::rationals();
    let e = ExtensionSpec::over_q(-7)?;

    for ((a, b), level) in [((-1, -1), 9), ((-1, -1), 6), ((-1, 3), 5)] {
        let d0 = QuaternionSpec::hilbert(a, b)?;
        let a0 = FactoredIdealF::from_integer(&q, level)?;
        let setting = validate_hyperbolic(&e, &d0, true)?;
        println!("D0 = ({a},{b}), ramified at {:?}; a0 = ({level})", d0.place_labels());

        let idx = indices(&d0, &e, &a0)?;
        println!("  [K0:K0(a0)] = {}", idx.index_k0);
        println!("  [Gamma(1):Gamma(a0)] = {}", idx.index_k);
        for c in &idx.per_prime {
            println!(
                "    at {}: {:?}, D0 ramified {}, |G0| = {}, |G| = {}, Q^2 = {}",
                c.profile.prime,
                c.profile.splitting.expect("splitting is always set"),
                c.profile.d0_ramified,
                c.order_g0,
                c.order_g,
                c.q_squared
            );
        }
        let ratio = ratio_bound_check(&d0, &e, &a0, 1e-12)?;
        println!("  index ratio {:.6} >= {:.6}: {}", ratio.ratio, ratio.bound, ratio.holds);

        println!("  |H^1(sigma, K(a0))| = {:?}", h1_size(&e, &d0, &a0));
        println!("  Euler characteristic component = {}", euler_char_component(&d0, &a0)?);

        let l = lefschetz_number(&e, &d0, &a0, 1e-12)?;
        match &l.value {
            Some(v) => println!("  Lefschetz number = {v} (numeric |L| = {:.9})", l.numeric_magnitude.value),
            None => println!("  |Lefschetz number| >= {}", l.magnitude_bound),
        }
        let b = betti_lower_bound(&setting, &a0, 1e-12)?;
        println!(
            "  b1(Gamma(a0)) >= {} (torsion-free condition verified: {})\n",
            b.value, b.torsion_verified
        );
    }
    Ok(())
}
