//! Enumerate the finite quaternion rings at small primes, check every local
//! group order and index ratio against its closed form, and tabulate `H¹`.
//!
//! ```text
//! cargo run --release --example appendix_oracle
//! ```

use std::time::Instant;

use qlefschetz::oracle::{exploration_table, explore_p2, verify_appendix, OracleOptions};

fn main() -> qlefschetz::Result<()> {
    let opts = OracleOptions::default();
    for (p, e) in [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2)] {
        let start = Instant::now();
        let report = verify_appendix(p, e, &opts)?;
        println!("p = {p}, e = {e}  ({:.2?})", start.elapsed());
        println!("  |G0|: matrix {}, division {}", report.g0[0].order, report.g0[1].order);
        for r in &report.profiles {
            println!(
                "  {:<11} {:<9} |G| = {:>8}  Q^2 = {:>7}  cocycles {:>5}  classes {}",
                r.ext_type.to_string(),
                r.d0_type.to_string(),
                r.group_order,
                r.q_squared.to_string(),
                r.cocycle_count.unwrap_or(0),
                r.class_count.unwrap_or(0),
            );
        }
        println!("  Eichler model |G| = {} (division model {})", report.eichler.eichler_order, report.eichler.division_order);
    }

    let start = Instant::now();
    let rows = explore_p2(2, &opts)?;
    println!("\nH^1 over 2 ({:.2?}):", start.elapsed());
    print!("{}", exploration_table(&rows));
    Ok(())
}
