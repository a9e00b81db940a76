//! Drive the library from a JSON run configuration, as the `qlef` binary does.
//!
//! ```text
//! cargo run --example batch_config
//! ```

use qlefschetz::config::{run, Command, RunConfig, RunOptions};

fn main() -> qlefschetz::Result<()> {
    let compact = RunConfig::from_json(
        r#"{
            "field": "Q",
            "extension": { "theta": -7 },
            "algebra": { "hilbert": [-1, -1] },
            "ideal": "6",
            "ideals": [9, 36, 180, 900]
        }"#,
    )?;
    let opts = RunOptions::default();
    for command in [Command::Classify, Command::Index, Command::Growth] {
        println!("# {command:?}\n{}", run(command, &compact, &opts)?.to_csv()?);
    }
    println!("# Betti\n{}", run(Command::Betti, &compact, &opts)?.to_json()?);

    let bianchi = RunConfig::from_json(
        r#"{ "bianchi": { "radicand": -7, "ideal": "9", "lefschetz": [-7, 9], "split_prime": 2, "k_max": 4 } }"#,
    )?;
    println!("# Bianchi\n{}", run(Command::Bianchi, &bianchi, &opts)?.to_json()?);
    Ok(())
}
