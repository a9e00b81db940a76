//! The index ratio `[K₀:K₀(𝔞₀)] / √[K:K(𝔞₀)]` against its lower bound, over
//! a range of levels in the compact example.
//!
//! ```text
//! cargo run --example index_estimates
//! ```

use qlefschetz::congruence::{indices, ratio_bound_check, torsion_free_sufficient};
use qlefschetz::fields::{BaseField, ExtensionSpec, FactoredIdealF};
use qlefschetz::quatalg::QuaternionSpec;

fn main() -> qlefschetz::Result<()> {
    let q = BaseField::rationals();
    let e = ExtensionSpec::over_q(-7)?;
    let d0 = QuaternionSpec::hilbert(-1, -1)?;
    println!("{:>6} {:>12} {:>22} {:>10} {:>8} {:>6} {:>12}", "a0", "[K0:K0(a0)]", "[K:K(a0)]", "ratio", "bound", "holds", "torsion-free");
    for n in [2, 3, 4, 5, 6, 7, 8, 9, 11, 14, 15, 36, 49, 105, 180, 900, 1001] {
        let a0 = FactoredIdealF::from_integer(&q, n)?;
        let idx = indices(&d0, &e, &a0)?;
        let check = ratio_bound_check(&d0, &e, &a0, 1e-12)?;
        println!(
            "{n:>6} {:>12} {:>22} {:>10.6} {:>8.5} {:>6} {:>12}",
            idx.index_k0,
            idx.index_k,
            check.ratio,
            check.bound,
            check.holds,
            torsion_free_sufficient(&a0)
        );
    }
    Ok(())
}
