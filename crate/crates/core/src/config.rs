//! Declarative run configuration and the batch runners behind the `qlef` binary.
//!
//! A configuration is one JSON document, for example
//!
//! ```json
//! { "field": "Q", "extension": { "theta": -7 }, "algebra": { "hilbert": [-1, -1] }, "ideal": "9" }
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bianchi::{
    asymptotic_table, bianchi_betti_bound, bianchi_lefschetz, AsymptoticTable, BianchiBetti, BianchiField, IdealOfE,
};
use crate::congruence::{indices, q_squared, ratio_bound_check, torsion_free_sufficient, IndexReport, LocalProfile, RatioCheck};
use crate::error::{Error, Result};
use crate::fields::{BaseField, ExtensionSpec, FactoredIdealF, SplittingInE, Theta};
use crate::lefschetz::{betti_lower_bound, growth_table, lefschetz_number, BettiBound, GrowthTable, LefschetzReport};
use crate::numtheory::ExactRational;
use crate::oracle::{explore_p2, verify_appendix, AppendixReport, ExplorationRow, OracleOptions, DEFAULT_GUARD};
use crate::quatalg::{validate_hyperbolic, QuaternionSpec};

/// Tolerance for numeric zeta values when none is configured.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldDescriptor {
    /// `"Q"`.
    Named(String),
    Sqrt(SqrtField),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SqrtField {
    pub sqrt: i64,
}

impl Default for FieldDescriptor {
    fn default() -> Self {
        FieldDescriptor::Named("Q".into())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ThetaDescriptor {
    Integer(i64),
    /// `[u, v]` for `u + v√m`.
    Pair([i64; 2]),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionDescriptor {
    pub theta: ThetaDescriptor,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum AlgebraDescriptor {
    Hilbert([i64; 2]),
    /// Ramified places, e.g. `["2", "inf"]`.
    Ram(Vec<String>),
    Matrix,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IdealDescriptor {
    Integer(u64),
    Text(String),
}

impl IdealDescriptor {
    fn text(&self) -> String {
        match self {
            IdealDescriptor::Integer(n) => n.to_string(),
            IdealDescriptor::Text(s) => s.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BianchiConfig {
    /// Squarefree `m < 0` with `E = Q(√m)`.
    pub radicand: i64,
    pub ideal: Option<IdealDescriptor>,
    #[serde(default)]
    pub allow_small: bool,
    /// `(d', m)` for the Lefschetz number of `Γ(m)` in `SL₂(O_{Q(√d')})`.
    pub lefschetz: Option<(i64, u64)>,
    /// Split prime for the asymptotic table.
    pub split_prime: Option<u64>,
    pub k_max: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleConfig {
    pub p: u32,
    #[serde(default = "one")]
    pub e: u32,
    pub guard: Option<u64>,
    #[serde(default)]
    pub nonsquare_unit: bool,
    /// Also tabulate `H¹` over 2 up to this level.
    pub explore_p2: Option<u32>,
}

fn one() -> u32 {
    1
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub field: FieldDescriptor,
    pub extension: Option<ExtensionDescriptor>,
    pub algebra: Option<AlgebraDescriptor>,
    pub ideal: Option<IdealDescriptor>,
    pub ideals: Option<Vec<IdealDescriptor>>,
    pub tolerance: Option<f64>,
    pub bianchi: Option<BianchiConfig>,
    pub oracle: Option<OracleConfig>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Classify,
    Index,
    Lefschetz,
    Betti,
    Bianchi,
    Oracle,
    Growth,
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct RunOptions {
    /// Overrides the configured tolerance.
    pub tol: Option<f64>,
    pub single_thread: bool,
}

fn missing(what: &str) -> Error {
    Error::Invalid(format!("configuration is missing `{what}`"))
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("configuration: {e}")))
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn base_field(&self) -> Result<BaseField> {
        match &self.field {
            FieldDescriptor::Named(name) if name == "Q" => Ok(BaseField::rationals()),
            FieldDescriptor::Named(name) => Err(Error::Invalid(format!("unknown field {name:?}"))),
            FieldDescriptor::Sqrt(SqrtField { sqrt }) => BaseField::real_quadratic(*sqrt),
        }
    }

    pub fn extension_spec(&self) -> Result<ExtensionSpec> {
        let desc = self.extension.as_ref().ok_or_else(|| missing("extension"))?;
        let theta = match desc.theta {
            ThetaDescriptor::Integer(u) => Theta::rational(u),
            ThetaDescriptor::Pair([u, v]) => Theta { u, v },
        };
        ExtensionSpec::new(self.base_field()?, theta)
    }

    pub fn algebra_spec(&self) -> Result<QuaternionSpec> {
        let base = self.base_field()?;
        match self.algebra.as_ref().ok_or_else(|| missing("algebra"))? {
            AlgebraDescriptor::Hilbert([a, b]) if base.is_rationals() => QuaternionSpec::hilbert(*a, *b),
            AlgebraDescriptor::Hilbert(_) => Err(Error::Invalid(
                "Hilbert pairs are only supported over Q; give the ramification instead".into(),
            )),
            AlgebraDescriptor::Ram(places) => QuaternionSpec::from_ramification(base, places),
            AlgebraDescriptor::Matrix => Ok(QuaternionSpec::matrix(base)),
        }
    }

    pub fn ideal_f(&self) -> Result<FactoredIdealF> {
        let desc = self.ideal.as_ref().ok_or_else(|| missing("ideal"))?;
        FactoredIdealF::parse(&self.base_field()?, &desc.text())
    }

    pub fn ideal_sequence(&self) -> Result<Vec<FactoredIdealF>> {
        let field = self.base_field()?;
        self.ideals
            .as_ref()
            .ok_or_else(|| missing("ideals"))?
            .iter()
            .map(|d| FactoredIdealF::parse(&field, &d.text()))
            .collect()
    }

    fn tolerance(&self, opts: &RunOptions) -> Result<f64> {
        let tol = opts.tol.or(self.tolerance).unwrap_or(DEFAULT_TOLERANCE);
        if !(tol > 0.0 && tol < 1.0) {
            return Err(Error::Invalid(format!("tolerance {tol} must lie in (0, 1)")));
        }
        Ok(tol)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyRow {
    pub prime: String,
    pub norm: u64,
    pub exponent: u32,
    pub splitting: SplittingInE,
    pub d0_ramified: bool,
    pub q_squared: ExactRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub ideal: String,
    pub rows: Vec<ClassifyRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndexSummary {
    pub ideal: String,
    pub indices: IndexReport,
    pub ratio_check: RatioCheck,
    pub torsion_verified: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BianchiReport {
    pub field: BianchiField,
    pub ideal: Option<String>,
    pub betti: Option<BianchiBetti>,
    pub lefschetz: Option<ExactRational>,
    pub asymptotic: Option<AsymptoticTable>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub appendix: AppendixReport,
    pub exploration: Option<Vec<ExplorationRow>>,
}

/// The result of one command.
#[derive(Clone, Debug, PartialEq)]
pub enum Output {
    Classify(ClassifyReport),
    Index(IndexSummary),
    Lefschetz(LefschetzReport),
    Betti(BettiBound),
    Bianchi(BianchiReport),
    Oracle(OracleReport),
    Growth(GrowthTable),
}

fn csv_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let fail = |e: csv::Error| Error::Invalid(e.to_string());
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(fail)?;
    for row in rows {
        w.write_record(&row).map_err(fail)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Invalid(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

impl Output {
    pub fn to_json(&self) -> Result<String> {
        let value = match self {
            Output::Classify(r) => serde_json::to_string_pretty(r),
            Output::Index(r) => serde_json::to_string_pretty(r),
            Output::Lefschetz(r) => serde_json::to_string_pretty(r),
            Output::Betti(r) => serde_json::to_string_pretty(r),
            Output::Bianchi(r) => serde_json::to_string_pretty(r),
            Output::Oracle(r) => serde_json::to_string_pretty(r),
            Output::Growth(r) => serde_json::to_string_pretty(r),
        };
        value.map_err(|e| Error::Invalid(e.to_string()))
    }

    /// Tabular outputs only.
    pub fn to_csv(&self) -> Result<String> {
        match self {
            Output::Classify(r) => csv_table(
                &["prime", "norm", "exponent", "splitting", "d0_ramified", "q_squared"],
                r.rows.iter().map(|row| {
                    vec![
                        row.prime.clone(),
                        row.norm.to_string(),
                        row.exponent.to_string(),
                        row.splitting.to_string(),
                        row.d0_ramified.to_string(),
                        row.q_squared.to_string(),
                    ]
                }),
            ),
            Output::Index(r) => csv_table(
                &["prime", "exponent", "splitting", "d0_ramified", "order_g0", "order_g", "q_squared"],
                r.indices.per_prime.iter().map(|c| {
                    vec![
                        c.profile.prime.to_string(),
                        c.profile.exponent.to_string(),
                        c.profile.splitting.map_or("-".into(), |s| s.to_string()),
                        c.profile.d0_ramified.to_string(),
                        c.order_g0.to_string(),
                        c.order_g.to_string(),
                        c.q_squared.to_string(),
                    ]
                }),
            ),
            Output::Growth(t) => t.to_csv(),
            Output::Bianchi(r) => match &r.asymptotic {
                Some(t) => t.to_csv(),
                None => Err(Error::Invalid("csv output needs `split_prime` for the asymptotic table".into())),
            },
            Output::Oracle(r) => csv_table(
                &["p", "e", "ext_type", "d0_type", "group_order", "cocycle_count", "class_count"],
                r.appendix.profiles.iter().map(|x| {
                    vec![
                        x.p.to_string(),
                        x.e.to_string(),
                        x.ext_type.to_string(),
                        x.d0_type.to_string(),
                        x.group_order.to_string(),
                        x.cocycle_count.map_or(String::new(), |c| c.to_string()),
                        x.class_count.map_or(String::new(), |c| c.to_string()),
                    ]
                }),
            ),
            Output::Lefschetz(_) | Output::Betti(_) => {
                Err(Error::Invalid("this command has no tabular output; use json".into()))
            }
        }
    }
}

/// Run a command.
pub fn run(command: Command, config: &RunConfig, opts: &RunOptions) -> Result<Output> {
    let tol = config.tolerance(opts)?;
    Ok(match command {
        Command::Classify => Output::Classify(classify(config)?),
        Command::Index => {
            let (d0, ext, a0) = (config.algebra_spec()?, config.extension_spec()?, config.ideal_f()?);
            Output::Index(IndexSummary {
                ideal: a0.to_string(),
                indices: indices(&d0, &ext, &a0)?,
                ratio_check: ratio_bound_check(&d0, &ext, &a0, tol)?,
                torsion_verified: torsion_free_sufficient(&a0),
            })
        }
        Command::Lefschetz => {
            let (d0, ext, a0) = (config.algebra_spec()?, config.extension_spec()?, config.ideal_f()?);
            Output::Lefschetz(lefschetz_number(&ext, &d0, &a0, tol)?)
        }
        Command::Betti => {
            let setting = validate_hyperbolic(&config.extension_spec()?, &config.algebra_spec()?, true)?;
            Output::Betti(betti_lower_bound(&setting, &config.ideal_f()?, tol)?)
        }
        Command::Growth => {
            let setting = validate_hyperbolic(&config.extension_spec()?, &config.algebra_spec()?, true)?;
            Output::Growth(growth_table(&setting, &config.ideal_sequence()?, tol)?)
        }
        Command::Bianchi => Output::Bianchi(bianchi(config, tol)?),
        Command::Oracle => Output::Oracle(oracle(config, opts)?),
    })
}

fn classify(config: &RunConfig) -> Result<ClassifyReport> {
    let (d0, ext, a0) = (config.algebra_spec()?, config.extension_spec()?, config.ideal_f()?);
    let mut rows = Vec::new();
    for (prime, k) in &a0.entries {
        let splitting = ext.splitting(prime)?;
        let d0_ramified = d0.is_ramified_at(prime);
        let profile = LocalProfile { prime: *prime, exponent: *k, d0_ramified, splitting: Some(splitting) };
        rows.push(ClassifyRow {
            prime: prime.to_string(),
            norm: prime.norm,
            exponent: *k,
            splitting,
            d0_ramified,
            q_squared: q_squared(&profile)?,
        });
    }
    Ok(ClassifyReport { ideal: a0.to_string(), rows })
}

fn bianchi(config: &RunConfig, tol: f64) -> Result<BianchiReport> {
    let b = config.bianchi.as_ref().ok_or_else(|| missing("bianchi"))?;
    let field = BianchiField::with_tolerance(b.radicand, tol)?;
    let ideal = b.ideal.as_ref().map(|d| IdealOfE::parse(&field, &d.text())).transpose()?;
    let betti = ideal.as_ref().map(|a| bianchi_betti_bound(&field, a, b.allow_small)).transpose()?;
    let lefschetz = b.lefschetz.map(|(d, m)| bianchi_lefschetz(d, m)).transpose()?;
    let asymptotic = b.split_prime.map(|p| asymptotic_table(&field, p, b.k_max.unwrap_or(5))).transpose()?;
    Ok(BianchiReport { field, ideal: ideal.map(|a| a.to_string()), betti, lefschetz, asymptotic })
}

fn oracle(config: &RunConfig, opts: &RunOptions) -> Result<OracleReport> {
    let o = config.oracle.as_ref().ok_or_else(|| missing("oracle"))?;
    let options = OracleOptions {
        guard: o.guard.map_or(DEFAULT_GUARD, u128::from),
        single_thread: opts.single_thread,
        nonsquare_unit: o.nonsquare_unit,
        cohomology: true,
    };
    let appendix = verify_appendix(o.p, o.e, &options)?;
    let exploration = o.explore_p2.map(|e| explore_p2(e, &options)).transpose()?;
    Ok(OracleReport { appendix, exploration })
}

#[cfg(test)]
mod tests {
    use super::*;

    const COMPACT: &str = r#"{"field":"Q","extension":{"theta":-7},"algebra":{"hilbert":[-1,-1]},"ideal":"9"}"#;

    fn with(extra: &str) -> RunConfig {
        RunConfig::from_json(&COMPACT.replace("\"ideal\":\"9\"", extra)).unwrap()
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(RunConfig::from_json(r#"{"field":"Q","bogus":1}"#).is_err());
        assert!(RunConfig::from_json(r#"{"field":{"sqrt":5,"x":1}}"#).is_err());
        assert!(RunConfig::from_json(r#"{"oracle":{"p":3,"q":1}}"#).is_err());
    }

    #[test]
    fn compact_lefschetz() {
        let config = RunConfig::from_json(COMPACT).unwrap();
        let Output::Lefschetz(report) = run(Command::Lefschetz, &config, &RunOptions::default()).unwrap() else {
            panic!()
        };
        assert_eq!(report.value, Some(ExactRational::from(108)));
        let json = Output::Lefschetz(report).to_json().unwrap();
        assert!(json.contains("\"mode\": \"exact\""));
    }

    #[test]
    fn classify_rows() {
        let Output::Classify(r) = run(Command::Classify, &with("\"ideal\":6"), &RunOptions::default()).unwrap() else {
            panic!()
        };
        let summary: Vec<_> = r.rows.iter().map(|x| (x.prime.as_str(), x.splitting, x.d0_ramified)).collect();
        assert_eq!(summary, [("2", SplittingInE::Split, true), ("3", SplittingInE::Inert, false)]);
        let Output::Classify(r) = run(Command::Classify, &with("\"ideal\":1"), &RunOptions::default()).unwrap() else {
            panic!()
        };
        assert!(r.rows.is_empty());
    }

    #[test]
    fn unsupported_two_adic_case() {
        let config = RunConfig::from_json(
            r#"{"field":{"sqrt":5},"extension":{"theta":[1,-1]},"algebra":{"ram":["inf.2","2"]},"ideal":"2"}"#,
        )
        .unwrap();
        let err = run(Command::Classify, &config, &RunOptions::default()).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn csv_only_for_tables() {
        let out = run(Command::Lefschetz, &RunConfig::from_json(COMPACT).unwrap(), &RunOptions::default()).unwrap();
        assert!(out.to_csv().is_err());
        let out = run(Command::Index, &RunConfig::from_json(COMPACT).unwrap(), &RunOptions::default()).unwrap();
        assert!(out.to_csv().unwrap().starts_with("prime,exponent"));
    }
}
