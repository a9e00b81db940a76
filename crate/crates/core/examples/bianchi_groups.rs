//! Principal congruence subgroups of Bianchi groups `SL₂(O_E)`.
//!
//! ```text
//! cargo run --example bianchi_groups
//! ```

use qlefschetz::bianchi::{
    asymptotic_table, bianchi_betti_bound, bianchi_index, bianchi_lefschetz, BianchiField, IdealOfE,
};

fn main() -> qlefschetz::Result<()> {
    println!("{:>4} {:>6} {:>3} {:>3} {:>10} {:>8} {:>12}", "m", "ideal", "h", "|mu|", "index", "cusps", "b1 >=");
    for (m, ideal) in [(-1, "3"), (-5, "3"), (-3, "4"), (-7, "2.1^4"), (-23, "5"), (-2, "3.1*3.2^2")] {
        let field = BianchiField::new(m)?;
        let a = IdealOfE::parse(&field, ideal)?;
        let b = bianchi_betti_bound(&field, &a, false)?;
        println!(
            "{m:>4} {:>6} {:>3} {:>3} {:>10} {:>8} {:>12.4}",
            a.to_string(),
            field.class_number,
            field.unit_order,
            bianchi_index(&a),
            b.cusp_number,
            b.bound.value
        );
    }

    println!("\nLefschetz number of the Galois involution on Gamma(m):");
    for (d, m) in [(-7, 3), (-7, 9), (5, 4), (-3, 5), (13, 6), (-15, 7)] {
        println!("  d' = {d:>3}, m = {m}: {}", bianchi_lefschetz(d, m)?);
    }

    let field = BianchiField::new(-7)?;
    let table = asymptotic_table(&field, 2, 6)?;
    println!("\nGamma(p^k) for a prime over 2 in Q(sqrt(-7)); bound / index^(2/3) = {:.12}", table.constant);
    print!("{}", table.to_csv()?);
    Ok(())
}
