//! Dedekind zeta values `ζ_F(−1)` (exact) and `ζ_F(2)` (numeric) for `Q`
//! and real quadratic fields, with the functional-equation residual.
//!
//! ```text
//! cargo run --example zeta_values
//! ```

use qlefschetz::fields::BaseField;
use qlefschetz::numtheory::{functional_equation_lhs, zeta_2_numeric, zeta_minus1, ZetaField};

fn main() -> qlefschetz::Result<()> {
    let mut fields = vec![BaseField::rationals()];
    for m in [2, 3, 5, 6, 7, 13, 17, 21, 29, 101] {
        fields.push(BaseField::real_quadratic(m)?);
    }
    println!("{:<14} {:>6} {:>10} {:>18} {:>10}", "field", "disc", "zeta(-1)", "zeta(2)", "residual");
    for f in &fields {
        let z2 = zeta_2_numeric(f, 1e-12)?;
        // ζ_F(2)|disc|^{3/2}(2π²)^{−d} should equal (−1)^d ζ_F(−1).
        let sign = if f.degree % 2 == 0 { 1.0 } else { -1.0 };
        let residual = (functional_equation_lhs(f, 1e-12)? - sign * zeta_minus1(f).to_f64()).abs();
        println!(
            "{:<14} {:>6} {:>10} {:>18.14} {:>10.1e}",
            f.to_string(),
            f.discriminant,
            zeta_minus1(f).to_string(),
            z2.value,
            residual
        );
    }

    println!("\nimaginary quadratic zeta(2), used by the Bianchi bounds:");
    for d in [-3, -4, -7, -8, -20, -23] {
        let z = zeta_2_numeric(ZetaField::Quadratic { discriminant: d }, 1e-12)?;
        println!("  disc {d:>4}: {:.14} (+/- {:.1e})", z.value, z.tol);
    }
    Ok(())
}
