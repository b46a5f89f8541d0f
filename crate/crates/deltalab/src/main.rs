//! Command-line front end: reproduce numeric tables, run property suites,
//! emit the explicit constructions, check certificates, and search slices
//! for far witnesses. Every command takes an explicit seed; identical
//! arguments reproduce identical output.

use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use deltalab::delta::{
    c0_daugavet_obstruction, certify_not_delta, delta_witness_search, l1n_almost_delta,
    linfn_almost_delta, SearchOutcome,
};
use deltalab::jt::{
    distance_to_denting, jt_delta_certificate, jt_finite_support_certificate, TreeVector,
};
use deltalab::report::{
    parse_n_range, reproduce, suite, ReportFormat, ReproduceParams, ReproduceTable, RunReport,
    SuiteName,
};
use deltalab::slices::{diameter2_slice_construction, greedy_cover};
use deltalab::spaces::{seeded, Functional, SpaceHandle};
use deltalab::{Error, Result};

#[derive(Parser)]
#[command(
    name = "deltalab",
    version,
    about = "Exact tree-norm engine, slice geometry, and far-point certificates"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct CommonFlags {
    /// Sampling budget for validated checks.
    #[arg(long, default_value_t = 2000)]
    budget: usize,
    /// RNG seed; identical seeds reproduce identical numbers.
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Output format: text, json, or csv.
    #[arg(long, default_value = "text")]
    format: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Recompute a closed-form table and check every identity.
    Reproduce {
        /// diameter2 | l1n | linfn | l1-daugavet | c0-bound | denting | jt-certificate
        table: String,
        /// Dimension or inclusive range, e.g. `10` or `2..20`.
        #[arg(long, default_value = "2..20")]
        n: String,
        /// Slice tolerance where the table needs one.
        #[arg(long)]
        delta: Option<f64>,
        /// Concentration tolerance where the table needs one.
        #[arg(long)]
        eps: Option<f64>,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Run a property suite; exit 0 iff every check passes.
    Suite {
        /// oracle | inequalities | certificates | all
        name: String,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Emit one of the explicit constructions.
    Construct {
        /// l1n | linfn | diameter2
        which: String,
        /// Dimension parameter.
        #[arg(long, default_value_t = 10)]
        n: usize,
        /// Slice tolerance (diameter2 needs √(4−2/n) > 2−δ).
        #[arg(long, default_value_t = 0.5)]
        delta: f64,
        /// Output format: text or json.
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Build and validate a distance certificate.
    Certify {
        /// not-delta | c0 | jt-finite | jt-delta | denting
        which: String,
        /// Space descriptor, e.g. `lp:2:8`, `l1:16`, `c0:16`, `JT:4`.
        #[arg(long, default_value = "lp:2:8")]
        space: String,
        /// The vector: comma-separated coordinates, or tree JSON like
        /// `{"":0.99,"00":0.14}` for JT spaces. Defaults to the first basis
        /// vector.
        #[arg(long)]
        x: Option<String>,
        #[arg(long, default_value_t = 0.5)]
        delta: f64,
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Search a slice around a vector for a far witness.
    Search {
        /// Only `delta` is implemented: far points in norming slices.
        what: String,
        #[arg(long, default_value = "l1:8")]
        space: String,
        /// The center vector (comma-separated; defaults to the normalized
        /// all-ones vector).
        #[arg(long)]
        x: Option<String>,
        /// Target: report a witness once `‖x−y‖ ≥ 2−ε`.
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
        /// Slice tolerance.
        #[arg(long, default_value_t = 0.2)]
        delta: f64,
        #[command(flatten)]
        common: CommonFlags,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(ok) => {
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Reproduce {
            table,
            n,
            delta,
            eps,
            common,
        } => {
            let table = ReproduceTable::from_str(&table)?;
            let defaults = ReproduceParams::default();
            let params = ReproduceParams {
                ns: parse_n_range(&n)?,
                delta: delta.unwrap_or(match table {
                    ReproduceTable::C0Bound | ReproduceTable::Denting => 0.1,
                    _ => defaults.delta,
                }),
                eps: eps.unwrap_or(defaults.eps),
                budget: common.budget,
                seed: common.seed,
            };
            let report = reproduce(table, &params)?;
            emit_report(&report, &common.format)
        }
        Cmd::Suite { name, common } => {
            let report = suite(SuiteName::from_str(&name)?, common.seed, common.budget)?;
            emit_report(&report, &common.format)
        }
        Cmd::Construct {
            which,
            n,
            delta,
            format,
        } => {
            let json = match which.as_str() {
                "l1n" => serde_json::to_string_pretty(&l1n_almost_delta(n)?),
                "linfn" => serde_json::to_string_pretty(&linfn_almost_delta(n)?),
                "diameter2" => {
                    serde_json::to_string_pretty(&diameter2_slice_construction(n, delta)?)
                }
                other => {
                    return Err(Error::BadDescriptor(format!(
                        "unknown construction {other:?}; use l1n, linfn, or diameter2"
                    )))
                }
            }?;
            match format.as_str() {
                "json" => println!("{json}"),
                _ => {
                    // Text: a short human summary via the JSON value.
                    let v: serde_json::Value = serde_json::from_str(&json)?;
                    println!("construct {which} n={n}");
                    if let Some(d) = v.get("distance").and_then(|d| d.as_f64()) {
                        println!("witness distance: {d}");
                    }
                    if let Some(s) = v.get("sum_norm").and_then(|d| d.as_f64()) {
                        println!("sum norm: {s} (slice tolerance {delta})");
                    }
                    println!("{json}");
                }
            }
            Ok(true)
        }
        Cmd::Certify {
            which,
            space,
            x,
            delta,
            eps,
            common,
        } => {
            let space = SpaceHandle::parse(&space)?;
            let v = parse_vector(&space, x.as_deref())?;
            let json = match which.as_str() {
                "not-delta" => {
                    // Centers: greedy cover of dual-slice samples at radius ε.
                    let probe = 200.min(common.budget.max(1));
                    let dprime_guess = delta / 2.0;
                    let mut rng = seeded(common.seed.wrapping_add(1));
                    let pts: Vec<Vec<f64>> = (0..probe)
                        .map(|_| space.sample_dual_sphere_slice(&v, dprime_guess, &mut rng))
                        .collect::<Result<_>>()?;
                    let centers: Vec<Functional> = greedy_cover(&space.dual_space()?, &pts, eps)?
                        .into_iter()
                        .map(|c| Functional::dense(c, 1.0))
                        .collect();
                    eprintln!("greedy cover picked {} centers", centers.len());
                    let cert = certify_not_delta(
                        &space,
                        &v,
                        delta,
                        &centers,
                        eps,
                        common.budget,
                        common.seed,
                    )?;
                    serde_json::to_string_pretty(&cert)?
                }
                "c0" => {
                    if !space.is_c0() {
                        return Err(Error::Precondition(
                            "the c0 certificate needs a c0:<n> space".into(),
                        ));
                    }
                    let cert = c0_daugavet_obstruction(&v, delta, common.budget, common.seed)?;
                    serde_json::to_string_pretty(&cert)?
                }
                "jt-finite" => {
                    let t = space.to_tree(&v)?;
                    let cert =
                        jt_finite_support_certificate(&t, delta, common.budget, common.seed)?;
                    serde_json::to_string_pretty(&cert)?
                }
                "jt-delta" => {
                    let t = space.to_tree(&v)?;
                    let cert = jt_delta_certificate(&t, eps, common.budget, common.seed)?;
                    serde_json::to_string_pretty(&cert)?
                }
                "denting" => {
                    let t = space.to_tree(&v)?;
                    serde_json::to_string_pretty(&distance_to_denting(&t)?)?
                }
                other => {
                    return Err(Error::BadDescriptor(format!(
                        "unknown certificate {other:?}; use not-delta, c0, jt-finite, \
                         jt-delta, or denting"
                    )))
                }
            };
            println!("{json}");
            Ok(true)
        }
        Cmd::Search {
            what,
            space,
            x,
            eps,
            delta,
            common,
        } => {
            if what != "delta" {
                return Err(Error::BadDescriptor(format!(
                    "unknown search {what:?}; only `delta` exists"
                )));
            }
            let space = SpaceHandle::parse(&space)?;
            let v = match x.as_deref() {
                Some(s) => parse_vector(&space, Some(s))?,
                None => {
                    // Normalized all-ones center.
                    let ones = vec![1.0; space.dim()];
                    let norm = space.norm(&ones)?;
                    ones.iter().map(|c| c / norm).collect()
                }
            };
            let outcome = delta_witness_search(&space, &v, eps, delta, common.budget, common.seed)?;
            println!("{}", serde_json::to_string_pretty(&outcome)?);
            if let SearchOutcome::Exhausted { best_distance, .. } = &outcome {
                eprintln!(
                    "exhausted: best distance {best_distance} below target {}",
                    2.0 - eps
                );
            }
            Ok(true)
        }
    }
}

fn emit_report(report: &RunReport, format: &str) -> Result<bool> {
    let format = ReportFormat::from_str(format)?;
    print!("{}", report.render(format));
    Ok(report.passed)
}

/// Parses `--x`: comma-separated coordinates in the space's block layout, or
/// (for tree spaces) a JSON object of node-path → coefficient.
fn parse_vector(space: &SpaceHandle, x: Option<&str>) -> Result<Vec<f64>> {
    match x {
        None => {
            let mut e = vec![0.0; space.dim()];
            e[0] = 1.0;
            Ok(e)
        }
        Some(s) if s.trim_start().starts_with('{') => {
            let t: TreeVector = serde_json::from_str(s)?;
            space.from_tree(&t)
        }
        Some(s) => {
            let coords: Vec<f64> = s
                .split(',')
                .map(|c| {
                    c.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::BadDescriptor(format!("bad coordinate {c:?}")))
                })
                .collect::<Result<_>>()?;
            if coords.len() != space.dim() {
                return Err(Error::DimensionMismatch {
                    expected: space.dim(),
                    got: coords.len(),
                });
            }
            Ok(coords)
        }
    }
}
