//! Settings over `F = Q(√5)`: `E = F(√θ)` with one complex place and `D₀`
//! ramified at both real places of `F`.
//!
//! ```text
//! cargo run --example real_quadratic
//! ```

use qlefschetz::congruence::indices;
use qlefschetz::fields::{BaseField, ExtensionSpec, FactoredIdealF, Theta};
use qlefschetz::lefschetz::lefschetz_number;
use qlefschetz::numtheory::{zeta_2_numeric, zeta_minus1};
use qlefschetz::quatalg::{validate_hyperbolic, QuaternionSpec};

fn main() -> qlefschetz::Result<()> {
    let f = BaseField::real_quadratic(5)?;
    let d0 = QuaternionSpec::from_ramification(f.clone(), &["inf.1".into(), "inf.2".into()])?;
    println!("F = {f}, disc {}", f.discriminant);
    println!("zeta_F(-1) = {}", zeta_minus1(&f));
    println!("zeta_F(2) ~ {:.12}\n", zeta_2_numeric(&f, 1e-12)?.value);

    // Small θ = u + v√5 with exactly one negative embedding and odd norm.
    println!("candidate theta: 2-adic behaviour of E/F");
    let mut exact_theta = None;
    for v in -3i64..=3 {
        for u in -6i64..=6 {
            let Ok(e) = ExtensionSpec::new(f.clone(), Theta { u, v }) else { continue };
            if e.signature != 1 || (u * u - 5 * v * v) % 2 == 0 {
                continue;
            }
            let unramified = e.unramified_over_2()?;
            println!("  theta = {u:+}{v:+}*sqrt5: unramified over 2: {unramified}");
            if unramified && exact_theta.is_none() {
                exact_theta = Some(Theta { u, v });
            }
        }
    }

    for theta in [Theta { u: 2, v: -1 }].into_iter().chain(exact_theta) {
        let e = ExtensionSpec::new(f.clone(), theta)?;
        let setting = validate_hyperbolic(&e, &d0, false)?;
        println!(
            "\nE = F(sqrt({}{:+}*sqrt5)), counts {:?}, D division: {}",
            theta.u, theta.v, setting.counts, setting.division
        );
        for text in ["11.1", "11.1^2", "11.1*11.2", "3", "3*19.1"] {
            let a0 = FactoredIdealF::parse(&f, text)?;
            let idx = indices(&d0, &e, &a0)?;
            let l = lefschetz_number(&e, &d0, &a0, 1e-12)?;
            let shown = match &l.value {
                Some(v) => format!("L = {v}"),
                None => format!("|L| >= {}", l.magnitude_bound),
            };
            println!(
                "  a0 = {:<10} N = {:<6} [K0:K0(a0)] = {:<10} [K:K(a0)] = {:<16} {shown}",
                a0.to_string(),
                a0.norm,
                idx.index_k0,
                idx.index_k
            );
        }
    }
    Ok(())
}
