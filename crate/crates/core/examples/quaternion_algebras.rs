//! Ramification of quaternion algebras `(a, b)_Q` from Hilbert symbols, and
//! which pairs `(E, D₀)` give a cocompact hyperbolic setting.
//!
//! ```text
//! cargo run --example quaternion_algebras
//! ```

use qlefschetz::fields::ExtensionSpec;
use qlefschetz::quatalg::{hilbert_symbol, validate_hyperbolic, QuaternionSpec};

fn main() -> qlefschetz::Result<()> {
    println!("Hilbert symbols (a, b)_p:");
    for (a, b) in [(-1, -1), (-1, 3), (2, 5), (3, 7), (-2, -5)] {
        let symbols: Vec<String> = [2, 3, 5, 7].iter().map(|&p| format!("{:+}", hilbert_symbol(a, b, p))).collect();
        println!("  ({a:>2},{b:>2}) at 2,3,5,7: {}", symbols.join(" "));
    }

    println!("\nsettings:");
    for (a, b) in [(-1, -1), (-1, 3), (-2, -5), (2, 5)] {
        let d0 = QuaternionSpec::hilbert(a, b)?;
        for theta in [-1, -3, -7, 5, -15] {
            let e = ExtensionSpec::over_q(theta)?;
            let verdict = match validate_hyperbolic(&e, &d0, true) {
                Ok(s) => format!(
                    "ok; D ramified at {:?}, strong approximation {}",
                    s.ram_of_d.places.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                    s.strong_approximation
                ),
                Err(err) => err.to_string(),
            };
            println!("  D0 = ({a},{b}) ram {:?}, E = Q(sqrt({theta})): {verdict}", d0.place_labels());
        }
    }
    Ok(())
}
