//! Command line front end: load tract/matroid/σ files, run checks, build
//! duals, minors and extensions, and reproduce the reference fixtures.
//!
//! Every command prints one JSON report to standard output. Exit status 0
//! means the requested property holds (or the construction succeeded),
//! 1 means a property failure (the report carries a witness), 2 means the
//! input was malformed.

mod repro;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

use tract_matroids::extension::{characterize, extend, is_localization};
use tract_matroids::io;
use tract_matroids::matroid::AxiomMode;
use tract_matroids::minors::{minor, rescale};
use tract_matroids::props::{self, build_sample, SampleSpec};
use tract_matroids::qp::qp_from_circuits;
use tract_matroids::{Error, TractDescriptor};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "tract-matroids", version, about = "Exact computation with matroids over skew tracts")]
struct Cli {
    /// Worker threads for the property checkers; defaults to
    /// TRACT_MATROIDS_JOBS or 1. Output is identical for every value.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Weak,
    Strong,
}

impl From<Mode> for AxiomMode {
    fn from(m: Mode) -> AxiomMode {
        match m {
            Mode::Weak => AxiomMode::Weak,
            Mode::Strong => AxiomMode::Strong,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Property {
    Stringent,
    PatheticCancellation,
    StrongPc,
    DoublyDistributive,
    PpMulti,
}

#[derive(Subcommand)]
enum Command {
    /// Check the circuit axioms of a matroid file.
    Validate {
        #[arg(long)]
        matroid: PathBuf,
        #[arg(long, value_enum, default_value = "weak")]
        mode: Mode,
    },
    /// Compute the dual matroid.
    Dual {
        #[arg(long)]
        matroid: PathBuf,
    },
    /// Delete and/or contract elements.
    Minor {
        #[arg(long)]
        matroid: PathBuf,
        /// Comma-separated labels to delete.
        #[arg(long, value_delimiter = ',')]
        delete: Vec<String>,
        /// Comma-separated labels to contract.
        #[arg(long, value_delimiter = ',')]
        contract: Vec<String>,
    },
    /// Rescale by a map from labels to nonzero values.
    Rescale {
        #[arg(long)]
        matroid: PathBuf,
        #[arg(long)]
        rho: PathBuf,
    },
    /// Read the quasi-Plücker coordinates off a matroid.
    Plucker {
        #[arg(long)]
        matroid: PathBuf,
    },
    /// Build the single-element extension determined by a localization.
    Extend {
        #[arg(long)]
        matroid: PathBuf,
        #[arg(long)]
        sigma: PathBuf,
        #[arg(long, value_enum, default_value = "weak")]
        mode: Mode,
    },
    /// Decide whether a σ file is a localization.
    CheckLocalization {
        #[arg(long)]
        matroid: PathBuf,
        #[arg(long)]
        sigma: PathBuf,
        #[arg(long, value_enum, default_value = "weak")]
        mode: Mode,
    },
    /// The three-way rank-2 characterization verdicts.
    Characterize {
        #[arg(long)]
        matroid: PathBuf,
        #[arg(long)]
        sigma: PathBuf,
        #[arg(long, value_enum, default_value = "weak")]
        mode: Mode,
    },
    /// Check a tract-level property over a sample.
    CheckTract {
        #[arg(long)]
        tract: PathBuf,
        #[arg(long, value_enum)]
        property: Property,
        /// Sample bound: `full`, `roots:N`, or `layers:LO..HI`.
        #[arg(long)]
        sample: Option<String>,
    },
    /// Re-run an embedded fixture and compare against its expected verdicts.
    Repro {
        #[arg(long, value_enum)]
        fixture: repro::FixtureId,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = cli
        .jobs
        .or_else(|| {
            std::env::var("TRACT_MATROIDS_JOBS")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(1);
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build_global();
    match run(cli.command) {
        Ok((report, code)) => {
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            ExitCode::from(code)
        }
        Err(err) => {
            let report = json!({
                "schema_version": SCHEMA_VERSION,
                "error": err.to_string(),
            });
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            ExitCode::from(2)
        }
    }
}

fn read_json(path: &PathBuf) -> Result<Value, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| {
        Error::Parse(format!(
            "{}: line {} column {}: {e}",
            path.display(),
            e.line(),
            e.column()
        ))
    })
}

fn run(command: Command) -> Result<(Value, u8), Error> {
    match command {
        Command::Validate { matroid, mode } => {
            let m = io::matroid_from_json(&read_json(&matroid)?)?;
            let report = m.check_circuit_axioms(mode.into())?;
            let holds = report.all_hold();
            Ok((
                json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": "validate",
                    "holds": holds,
                    "report": report,
                }),
                u8::from(!holds),
            ))
        }
        Command::Dual { matroid } => {
            let m = io::matroid_from_json(&read_json(&matroid)?)?;
            let dual = m.dual()?;
            Ok((
                json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": "dual",
                    "matroid": io::matroid_to_json(&dual),
                }),
                0,
            ))
        }
        Command::Minor { matroid, delete, contract } => {
            let m = io::matroid_from_json(&read_json(&matroid)?)?;
            let delete: Vec<&str> = delete.iter().map(String::as_str).collect();
            let contract: Vec<&str> = contract.iter().map(String::as_str).collect();
            let result = minor(&m, &delete, &contract)?;
            Ok((
                json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": "minor",
                    "deleted": delete,
                    "contracted": contract,
                    "matroid": io::matroid_to_json(&result),
                }),
                0,
            ))
        }
        Command::Rescale { matroid, rho } => {
            let m = io::matroid_from_json(&read_json(&matroid)?)?;
            let map = io::rescaling_from_json(m.tract(), m.ground(), &read_json(&rho)?)?;
            let result = rescale(&m, &map)?;
            Ok((
                json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": "rescale",
                    "matroid": io::matroid_to_json(&result),
                }),
                0,
            ))
        }
        Command::Plucker { matroid } => {
            let m = io::matroid_from_json(&read_json(&matroid)?)?;
            let qp = qp_from_circuits(&m)?;
            let desc = m.tract();
            let ground = m.ground();
            let mut values = serde_json::Map::new();
            for (from, to) in qp.family().adjacent_pairs() {
                let key = format!(
                    "{}|{}",
                    from.iter().map(|&e| ground.label(e)).collect::<Vec<_>>().join(","),
                    to.iter().map(|&e| ground.label(e)).collect::<Vec<_>>().join(","),
                );
                values.insert(
                    key,
                    Value::String(desc.format_value(qp.value(&from, &to)?)),
                );
            }
            Ok((
                json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": "plucker",
                    "rank": qp.family().size(),
                    "values": values,
                }),
                0,
            ))
        }
        Command::Extend { matroid, sigma, mode } => {
            let m = io::matroid_from_json(&read_json(&matroid)?)?;
            let loc = io::sigma_from_json(&m, &read_json(&sigma)?)?;
            match extend(&loc, mode.into()) {
                Ok(result) => {
                    let desc = m.tract();
                    let cocircuits: Vec<Value> = result
                        .extended_cocircuits
                        .circuits()
                        .iter()
                        .map(|c| io::vector_to_json(desc, c))
                        .collect();
                    Ok((
                        json!({
                            "schema_version": SCHEMA_VERSION,
                            "command": "extend",
                            "extended": io::matroid_to_json(&result.extended),
                            "extended_cocircuits": cocircuits,
                            "provenance": result.provenance,
                        }),
                        0,
                    ))
                }
                Err(Error::NotALocalization { axiom, witness }) => Ok((
                    json!({
                        "schema_version": SCHEMA_VERSION,
                        "command": "extend",
                        "holds": false,
                        "failed_axiom": axiom,
                        "witness": witness,
                    }),
                    1,
                )),
                Err(e) => Err(e),
            }
        }
        Command::CheckLocalization { matroid, sigma, mode } => {
            let m = io::matroid_from_json(&read_json(&matroid)?)?;
            let loc = io::sigma_from_json(&m, &read_json(&sigma)?)?;
            let report = is_localization(&loc, mode.into())?;
            let holds = report.all_hold();
            Ok((
                json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": "check-localization",
                    "holds": holds,
                    "report": report,
                }),
                u8::from(!holds),
            ))
        }
        Command::Characterize { matroid, sigma, mode } => {
            let m = io::matroid_from_json(&read_json(&matroid)?)?;
            let loc = io::sigma_from_json(&m, &read_json(&sigma)?)?;
            let verdict = characterize(&loc, mode.into())?;
            let code = u8::from(!verdict.full);
            Ok((
                json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": "characterize",
                    "agree": verdict.agree(),
                    "verdict": verdict,
                }),
                code,
            ))
        }
        Command::CheckTract { tract, property, sample } => {
            let desc: TractDescriptor = serde_json::from_value(read_json(&tract)?)
                .map_err(|e| Error::Parse(format!("bad tract descriptor: {e}")))?;
            let spec = match sample {
                Some(s) => SampleSpec::parse(&s)?,
                None => SampleSpec::default_for(&desc),
            };
            let sample = build_sample(&desc, &spec)?;
            let verdict = match property {
                Property::Stringent => props::check_stringent(&desc, &sample)?,
                Property::PatheticCancellation => {
                    props::check_pathetic_cancellation(&desc, &sample)?
                }
                Property::StrongPc => props::check_strong_pc(&desc, &sample)?,
                Property::DoublyDistributive => {
                    props::check_doubly_distributive(&desc, &sample)?
                }
                Property::PpMulti => props::check_pp_multi(&desc, &sample)?,
            };
            let witness: Option<Vec<String>> = verdict
                .witness
                .as_ref()
                .map(|w| w.iter().map(|v| desc.format_value(v)).collect());
            Ok((
                json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": "check-tract",
                    "property": format!("{property:?}"),
                    "domain": verdict.domain,
                    "holds": verdict.holds,
                    "witness": witness,
                }),
                u8::from(!verdict.holds),
            ))
        }
        Command::Repro { fixture } => repro::run(fixture),
    }
}
