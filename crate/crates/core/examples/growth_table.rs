//! Betti lower bounds along the chain `(9) ⊃ (36) ⊃ (180) ⊃ (900)` in the
//! compact example, and their growth against `[Γ(1):Γ(𝔞)]^{1/2}`.
//!
//! ```text
//! cargo run --example growth_table
//! ```

use qlefschetz::fields::{BaseField, ExtensionSpec, FactoredIdealF};
use qlefschetz::lefschetz::growth_table;
use qlefschetz::quatalg::{validate_hyperbolic, QuaternionSpec};

fn main() -> qlefschetz::Result<()> {
    let q = BaseField::rationals();
    let setting = validate_hyperbolic(&ExtensionSpec::over_q(-7)?, &QuaternionSpec::hilbert(-1, -1)?, true)?;
    let chain = [9, 36, 180, 900]
        .into_iter()
        .map(|n| FactoredIdealF::from_integer(&q, n))
        .collect::<qlefschetz::Result<Vec<_>>>()?;
    let table = growth_table(&setting, &chain, 1e-12)?;
    print!("{}", table.to_csv()?);
    println!("smallest ratio       {:.6}", table.kappa);
    println!("certified lower bound {:.6}", table.certified_kappa);
    println!("leading constant     {:.6}", table.reference_constant);
    Ok(())
}
