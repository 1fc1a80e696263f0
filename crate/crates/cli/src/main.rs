//! Command-line harness: reduce graphs to constraint systems, run the tour
//! oracle, numeric sweeps and pattern searches, interval prune proofs, pulse
//! experiments, and corpus reports. Every command writes its artifacts plus
//! a manifest with content digests.
//!
//! Exit codes: 0 success (or positive verdict), 1 negative verdict, 2 input
//! error, 3 budget exhausted, 4 internal cross-check failure.

mod manifest;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hampoly::corpus::acceptance_corpus;
use hampoly::graph::DirectedGraph;
use hampoly::pulse::{
    cf_alignment, simultaneous_high_intervals, incommensurability_check, token_alignment,
    AlignmentTrace, PulseSystem, WitnessVerdict,
};
use hampoly::quad::QuadExt;
use hampoly::rat::{parse_ratio, pow2_neg};
use hampoly::reduction::{
    aggregate, build_system, residuals, ReductionConfig, ReductionError, Semantics,
};
use hampoly::report::{run_corpus, ReportOptions};
use hampoly::solver::{
    branch_and_prune, pattern_search, sweep, Interval, PruneVerdict, SolverError, SweepConfig,
    VarBox,
};
use hampoly::trig::TrigPoly;
use manifest::ManifestBuilder;
use num::rational::BigRational;
use num::Zero;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

struct CmdError {
    code: u8,
    message: String,
}

impl CmdError {
    fn input(msg: impl std::fmt::Display) -> CmdError {
        CmdError {
            code: EXIT_INPUT,
            message: msg.to_string(),
        }
    }

    fn internal(msg: impl std::fmt::Display) -> CmdError {
        CmdError {
            code: EXIT_INTERNAL,
            message: msg.to_string(),
        }
    }

    fn budget(msg: impl std::fmt::Display) -> CmdError {
        CmdError {
            code: EXIT_BUDGET,
            message: msg.to_string(),
        }
    }
}

impl From<std::io::Error> for CmdError {
    fn from(e: std::io::Error) -> CmdError {
        CmdError::input(format!("io error: {e}"))
    }
}

impl From<ReductionError> for CmdError {
    fn from(e: ReductionError) -> CmdError {
        match e {
            ReductionError::CrossCheck { .. } => CmdError::internal(e),
            ReductionError::BudgetExceeded { .. } => CmdError::budget(e),
            _ => CmdError::input(e),
        }
    }
}

impl From<SolverError> for CmdError {
    fn from(e: SolverError) -> CmdError {
        match e {
            SolverError::BudgetExceeded { .. } => CmdError::budget(e),
            SolverError::Reduction(inner) => CmdError::from(inner),
            _ => CmdError::input(e),
        }
    }
}

impl From<hampoly::pulse::PulseError> for CmdError {
    fn from(e: hampoly::pulse::PulseError) -> CmdError {
        match e {
            hampoly::pulse::PulseError::BudgetExceeded { .. } => CmdError::budget(e),
            _ => CmdError::input(e),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "hampoly",
    version,
    about = "Tour-feasibility polynomial laboratory: reductions, oracles, searches, pulse timing"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SemanticsArg {
    Token,
    Literal,
}

impl From<SemanticsArg> for Semantics {
    fn from(s: SemanticsArg) -> Semantics {
        match s {
            SemanticsArg::Token => Semantics::Token,
            SemanticsArg::Literal => Semantics::Literal,
        }
    }
}

#[derive(Args)]
struct CommonOpts {
    /// Output directory for artifacts and the manifest.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Working precision in bits.
    #[arg(long, default_value_t = 128)]
    precision: usize,
}

#[derive(Args)]
struct ReductionOpts {
    /// Propagation semantics for constraint set 3.
    #[arg(long, value_enum, default_value_t = SemanticsArg::Token)]
    semantics: SemanticsArg,
    /// Epsilon-interval exponent E (bounds [0, 2^-E]); defaults to N^2.
    #[arg(long)]
    eps_exponent: Option<u32>,
    /// Add the slackified [-1,1] box rows for the four trig variables.
    #[arg(long)]
    box_bounds: bool,
}

impl ReductionOpts {
    fn config(&self) -> ReductionConfig {
        ReductionConfig {
            semantics: self.semantics.into(),
            eps_exponent: self.eps_exponent,
            include_box_bounds: self.box_bounds,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build the constraint system for a graph (optionally aggregated).
    Reduce {
        graph: PathBuf,
        #[command(flatten)]
        common: CommonOpts,
        #[command(flatten)]
        reduction: ReductionOpts,
        /// Also write the single sum-of-squares polynomial.
        #[arg(long)]
        aggregate: bool,
    },
    /// Decide Hamiltonicity and print the certificate.
    Oracle {
        graph: PathBuf,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Residual sweep over the (alpha, beta) grid; writes CSV.
    Sweep {
        graph: PathBuf,
        #[command(flatten)]
        common: CommonOpts,
        #[command(flatten)]
        reduction: ReductionOpts,
        #[arg(long, default_value_t = 8)]
        grid_alpha: usize,
        #[arg(long, default_value_t = 8)]
        grid_beta: usize,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
    },
    /// Pattern-search ladder for a target edge set (default: certificate tour).
    Pattern {
        graph: PathBuf,
        #[command(flatten)]
        common: CommonOpts,
        /// Target edges as "i-j,i-j,..."; defaults to the oracle tour.
        #[arg(long)]
        pattern: Option<String>,
        /// Grid ladder cap per axis (8, 64, 512 or 4096).
        #[arg(long, default_value_t = 512)]
        grid: usize,
        #[arg(long, default_value_t = 100_000_000)]
        budget: u64,
    },
    /// Branch-and-prune feasibility check of an aggregated polynomial.
    Prove {
        /// Aggregate JSON file produced by `reduce --aggregate`.
        aggregate: PathBuf,
        #[command(flatten)]
        common: CommonOpts,
        /// Feasibility threshold as an exact rational "p/q".
        #[arg(long, default_value = "0/1")]
        threshold: String,
        /// Node budget for the bisection tree.
        #[arg(long, default_value_t = 10_000)]
        budget: u64,
        /// JSON file with one ["p/q","p/q"] interval per variable;
        /// defaults to [-1,1] for trig/slack and [0, 2^-E] for epsilons.
        #[arg(long, value_name = "FILE")]
        box_file: Option<PathBuf>,
    },
    /// Pulse-timing experiments over periods 1/(1+iR).
    Pulse {
        #[command(subcommand)]
        sub: PulseCommand,
    },
    /// Run oracle, indicators, discrete search, sweep and pattern search
    /// over a directory of graph files.
    Report {
        /// Directory of graph JSON files; omitted = the built-in seeded corpus.
        corpus: Option<PathBuf>,
        #[command(flatten)]
        common: CommonOpts,
        /// Seed for the built-in corpus (ignored when a directory is given).
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        eps_exponent: Option<u32>,
        /// Pattern-search ladder cap per axis.
        #[arg(long, default_value_t = 64)]
        ladder: usize,
        /// Maximum edge count for the discrete brute force.
        #[arg(long, default_value_t = 12)]
        discrete_budget: usize,
        /// Residual sweep grid per axis.
        #[arg(long, default_value_t = 8)]
        grid: usize,
    },
}

#[derive(Args)]
struct PulseSystemOpts {
    /// Number of pulse functions.
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Rational part of R, as "p/q".
    #[arg(long, default_value = "0/1")]
    r_rat: String,
    /// sqrt(2) coefficient of R, as "p/q".
    #[arg(long, default_value = "1/1")]
    r_sqrt2: String,
    /// High duration x as "p/q"; default is half the smallest period.
    #[arg(long)]
    x_high: Option<String>,
    /// Comma-separated delays "p/q,..."; default all zero.
    #[arg(long)]
    delays: Option<String>,
}

impl PulseSystemOpts {
    fn build(&self) -> Result<PulseSystem, CmdError> {
        let r = QuadExt::new(
            parse_ratio(&self.r_rat).map_err(CmdError::input)?,
            parse_ratio(&self.r_sqrt2).map_err(CmdError::input)?,
        );
        let x_high = match &self.x_high {
            Some(s) => QuadExt::from_ratio(parse_ratio(s).map_err(CmdError::input)?),
            None => {
                // half the smallest period T_n
                let t_n = (QuadExt::one() + r.clone() * self.n as i64).inv();
                t_n * QuadExt::from_ratio(BigRational::new(1.into(), 2.into()))
            }
        };
        let delays = match &self.delays {
            Some(s) => s
                .split(',')
                .map(|d| Ok(QuadExt::from_ratio(parse_ratio(d.trim()).map_err(CmdError::input)?)))
                .collect::<Result<Vec<_>, CmdError>>()?,
            None => vec![QuadExt::zero(); self.n],
        };
        Ok(PulseSystem::new(self.n, r, x_high, delays)?)
    }

    fn to_json(&self, sys: &PulseSystem) -> Value {
        json!({
            "n": sys.n(),
            "R": sys.r().to_json(),
            "x_high": sys.x_high().to_json(),
            "delays": sys.delays().iter().map(|d| d.to_json()).collect::<Vec<_>>(),
        })
    }
}

#[derive(Subcommand)]
enum PulseCommand {
    /// Token-overtake alignment trace for a pair of pulse functions.
    Align {
        #[command(flatten)]
        common: CommonOpts,
        #[command(flatten)]
        system: PulseSystemOpts,
        #[arg(short, long, default_value_t = 1)]
        i: usize,
        #[arg(short, long, default_value_t = 2)]
        j: usize,
        /// Number of overtake events to record.
        #[arg(long, default_value_t = 10)]
        overtakes: usize,
    },
    /// Event sweep for simultaneous-high intervals within a horizon.
    Scan {
        #[command(flatten)]
        common: CommonOpts,
        #[command(flatten)]
        system: PulseSystemOpts,
        /// Scan horizon as "p/q".
        #[arg(long, default_value = "10/1")]
        horizon: String,
        /// Minimum reported interval length as "p/q".
        #[arg(long, default_value = "0/1")]
        min_duration: String,
        /// Maximum number of pulse windows to process.
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
    },
    /// Verify that no two periods share an integer multiple up to a bound.
    Check {
        #[command(flatten)]
        common: CommonOpts,
        #[command(flatten)]
        system: PulseSystemOpts,
        #[arg(short, long, default_value_t = 1)]
        i: usize,
        #[arg(short, long, default_value_t = 2)]
        j: usize,
        #[arg(long, default_value_t = 10_000)]
        bound: u64,
    },
}

fn read_graph(path: &Path) -> Result<(Vec<u8>, DirectedGraph), CmdError> {
    let bytes = std::fs::read(path)
        .map_err(|e| CmdError::input(format!("cannot read {}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| CmdError::input(format!("{} is not UTF-8", path.display())))?;
    let g = DirectedGraph::parse(&text)
        .map_err(|e| CmdError::input(format!("{}: {e}", path.display())))?;
    Ok((bytes, g))
}

fn trace_json(trace: &AlignmentTrace) -> Vec<Value> {
    trace
        .entries
        .iter()
        .map(|e| {
            json!({
                "index": e.index,
                "pos_a": e.pos_a.to_json(),
                "pos_b": e.pos_b.to_json(),
                "gap": e.gap.to_json(),
                "gap_f64": e.gap.to_f64(),
            })
        })
        .collect()
}

fn cmd_reduce(
    graph: &Path,
    common: &CommonOpts,
    reduction: &ReductionOpts,
    with_aggregate: bool,
) -> Result<u8, CmdError> {
    let cfg = reduction.config();
    let mut mb = ManifestBuilder::new(json!({
        "command": "reduce",
        "config": serde_json::to_value(cfg).expect("serializable"),
        "precision": common.precision,
        "aggregate": with_aggregate,
    }));
    let (bytes, g) = read_graph(graph)?;
    mb.record_input(graph, &bytes);

    let sys = build_system(&g, &cfg)?;
    // dual-path evaluation guard: symbolic and transcendental edge values
    // must agree before any artifact is trusted
    residuals(&g, &cfg, 0.0, 0.0, common.precision)?;

    let sys_json = serde_json::to_string_pretty(&sys.to_json()).expect("serializable");
    mb.write_output(&common.out.join("system.json"), sys_json.as_bytes())?;

    if with_aggregate {
        let agg = aggregate(&sys)?;
        let agg_json = json!({
            "label": "AGGREGATE",
            "provenance": "sum-of-squares",
            "n": g.n(),
            "eps_exponent": cfg.eps_exponent_for(g.n()),
            "variables": sys.registry.names(),
            "poly": agg.to_json(),
        });
        let text = serde_json::to_string_pretty(&agg_json).expect("serializable");
        mb.write_output(&common.out.join("aggregate.json"), text.as_bytes())?;
    }
    mb.finish(&common.out)?;
    println!(
        "system: {} equations, {} variables",
        sys.equations.len(),
        sys.registry.len()
    );
    Ok(EXIT_OK)
}

fn cmd_oracle(graph: &Path, common: &CommonOpts) -> Result<u8, CmdError> {
    let mut mb = ManifestBuilder::new(json!({"command": "oracle"}));
    let (bytes, g) = read_graph(graph)?;
    mb.record_input(graph, &bytes);
    let cert = hampoly::graph::is_hamiltonian(&g);
    let verdict = json!({
        "hamiltonian": cert.is_some(),
        "certificate": cert.as_ref().map(|c| c.order.clone()),
    });
    let text = serde_json::to_string_pretty(&verdict).expect("serializable");
    println!("{text}");
    mb.write_output(&common.out.join("oracle.json"), text.as_bytes())?;
    mb.finish(&common.out)?;
    Ok(if cert.is_some() { EXIT_OK } else { EXIT_NEGATIVE })
}

fn cmd_sweep(
    graph: &Path,
    common: &CommonOpts,
    reduction: &ReductionOpts,
    grid_alpha: usize,
    grid_beta: usize,
    budget: u64,
) -> Result<u8, CmdError> {
    let cfg = reduction.config();
    let sc = SweepConfig {
        grid_alpha,
        grid_beta,
        precision: common.precision,
        budget,
    };
    let mut mb = ManifestBuilder::new(json!({
        "command": "sweep",
        "config": serde_json::to_value(cfg).expect("serializable"),
        "sweep": serde_json::to_value(sc).expect("serializable"),
    }));
    let (bytes, g) = read_graph(graph)?;
    mb.record_input(graph, &bytes);
    let res = sweep(&g, &cfg, &sc)?;
    mb.write_output(&common.out.join("sweep.csv"), res.to_csv().as_bytes())?;
    let m = res.min_cell();
    let summary = json!({
        "grid": [res.grid_alpha, res.grid_beta],
        "argmin": {"alpha": m.alpha, "beta": m.beta, "record": serde_json::to_value(m.record).expect("serializable")},
    });
    mb.write_output(
        &common.out.join("sweep.json"),
        serde_json::to_string_pretty(&summary)
            .expect("serializable")
            .as_bytes(),
    )?;
    mb.finish(&common.out)?;
    println!("argmin total {} at ({}, {})", m.record.total, m.alpha, m.beta);
    Ok(EXIT_OK)
}

fn parse_pattern(s: &str) -> Result<Vec<(usize, usize)>, CmdError> {
    s.split(',')
        .map(|e| {
            let (a, b) = e
                .trim()
                .split_once('-')
                .ok_or_else(|| CmdError::input(format!("bad pattern edge `{e}`")))?;
            Ok((
                a.parse::<usize>()
                    .map_err(|_| CmdError::input(format!("bad node `{a}`")))?,
                b.parse::<usize>()
                    .map_err(|_| CmdError::input(format!("bad node `{b}`")))?,
            ))
        })
        .collect()
}

fn cmd_pattern(
    graph: &Path,
    common: &CommonOpts,
    pattern: Option<&str>,
    grid: usize,
    budget: u64,
) -> Result<u8, CmdError> {
    let mut mb = ManifestBuilder::new(json!({
        "command": "pattern",
        "grid": grid,
        "budget": budget,
        "precision": common.precision,
    }));
    let (bytes, g) = read_graph(graph)?;
    mb.record_input(graph, &bytes);
    let target = match pattern {
        Some(s) => parse_pattern(s)?,
        None => match hampoly::graph::is_hamiltonian(&g) {
            Some(c) => c.tour_edges(),
            None => {
                eprintln!("graph has no tour and no --pattern was given");
                return Ok(EXIT_NEGATIVE);
            }
        },
    };
    let sc = SweepConfig {
        grid_alpha: grid,
        grid_beta: grid,
        precision: common.precision,
        budget,
    };
    let res = pattern_search(&g, &target, &sc)?;
    let out = json!({
        "pattern": target,
        "result": serde_json::to_value(&res).expect("serializable"),
        "note": "min_value is an upper bound on the true minimum; no global-optimality claim",
    });
    mb.write_output(
        &common.out.join("pattern.json"),
        serde_json::to_string_pretty(&out)
            .expect("serializable")
            .as_bytes(),
    )?;
    mb.finish(&common.out)?;
    println!(
        "phi upper bound {} at ({}, {})",
        res.min_value, res.alpha, res.beta
    );
    Ok(EXIT_OK)
}

fn default_box_for(names: &[String], eps_exponent: u32) -> Result<VarBox, CmdError> {
    let eps_hi = pow2_neg(eps_exponent);
    let intervals = names
        .iter()
        .map(|name| {
            if name.starts_with("cos_") || name.starts_with("sin_") || name.starts_with('z') {
                Interval::from_i64(-1, 1)
            } else {
                // eps variables live in their constraint-set-4 range
                Interval::new(BigRational::zero(), eps_hi.clone())
            }
        })
        .collect();
    VarBox::new(intervals).map_err(CmdError::input)
}

fn parse_box_file(path: &Path, dim: usize) -> Result<VarBox, CmdError> {
    let bytes = std::fs::read(path)
        .map_err(|e| CmdError::input(format!("cannot read {}: {e}", path.display())))?;
    let doc: Value = serde_json::from_slice(&bytes)
        .map_err(|e| CmdError::input(format!("{}: {e}", path.display())))?;
    let rows = doc
        .as_array()
        .ok_or_else(|| CmdError::input("box file must be a JSON array of intervals"))?;
    if rows.len() != dim {
        return Err(CmdError::input(format!(
            "box file has {} intervals, polynomial has {dim} variables",
            rows.len()
        )));
    }
    let intervals = rows
        .iter()
        .map(|row| {
            let pair = row
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| CmdError::input("each interval must be [\"p/q\",\"p/q\"]"))?;
            let lo = parse_ratio(pair[0].as_str().unwrap_or_default()).map_err(CmdError::input)?;
            let hi = parse_ratio(pair[1].as_str().unwrap_or_default()).map_err(CmdError::input)?;
            Ok(Interval::new(lo, hi))
        })
        .collect::<Result<Vec<_>, CmdError>>()?;
    VarBox::new(intervals).map_err(CmdError::input)
}

fn cmd_prove(
    aggregate_path: &Path,
    common: &CommonOpts,
    threshold: &str,
    budget: u64,
    box_file: Option<&Path>,
) -> Result<u8, CmdError> {
    let mut mb = ManifestBuilder::new(json!({
        "command": "prove",
        "threshold": threshold,
        "budget": budget,
        "box_file": box_file.map(|p| p.display().to_string()),
    }));
    let bytes = std::fs::read(aggregate_path)
        .map_err(|e| CmdError::input(format!("cannot read {}: {e}", aggregate_path.display())))?;
    mb.record_input(aggregate_path, &bytes);
    let doc: Value = serde_json::from_slice(&bytes)
        .map_err(|e| CmdError::input(format!("{}: {e}", aggregate_path.display())))?;
    let poly_json = doc.get("poly").unwrap_or(&doc);
    let poly = TrigPoly::from_json(poly_json)
        .map_err(|e| CmdError::input(format!("{}: {e}", aggregate_path.display())))?;
    let eps_exponent = doc
        .get("eps_exponent")
        .and_then(Value::as_u64)
        .unwrap_or(9) as u32;
    let thr = parse_ratio(threshold).map_err(CmdError::input)?;
    let names = poly.registry().names().to_vec();
    let b = match box_file {
        Some(p) => {
            let bytes = std::fs::read(p)?;
            mb.record_input(p, &bytes);
            parse_box_file(p, names.len())?
        }
        None => default_box_for(&names, eps_exponent)?,
    };
    let rep = branch_and_prune(&poly, &b, &thr, budget)?;
    if rep.exhausted {
        mb.mark_partial();
    }
    let mut out = rep.to_json();
    // the aggregate is in sine-reduced normal form: it equals the true sum
    // of squares only where sin^2 + cos^2 = 1, so off-circle sample values
    // can be negative; infeasible verdicts are unaffected (they cover the
    // circle points too)
    out["note"] = json!(
        "values are exact for the sine-reduced form; only infeasible verdicts certify anything"
    );
    mb.write_output(
        &common.out.join("prove.json"),
        serde_json::to_string_pretty(&out)
            .expect("serializable")
            .as_bytes(),
    )?;
    mb.finish(&common.out)?;
    println!("{}", rep.to_json()["verdict"].as_str().unwrap_or("?"));
    Ok(if rep.exhausted {
        EXIT_BUDGET
    } else if matches!(rep.verdict, PruneVerdict::Infeasible { .. }) {
        EXIT_NEGATIVE
    } else {
        EXIT_OK
    })
}

fn cmd_pulse(sub: &PulseCommand) -> Result<u8, CmdError> {
    match sub {
        PulseCommand::Align {
            common,
            system,
            i,
            j,
            overtakes,
        } => {
            let sys = system.build()?;
            let mut mb = ManifestBuilder::new(json!({
                "command": "pulse align",
                "system": system.to_json(&sys),
                "i": i, "j": j, "overtakes": overtakes,
            }));
            let token = token_alignment(&sys, *i, *j, *overtakes)?;
            let cf = cf_alignment(&sys, *i, *j, *overtakes)?;
            for e in &token.entries {
                if e.gap.signum() <= 0 {
                    return Err(CmdError::internal(format!(
                        "non-positive gap at overtake {}",
                        e.index
                    )));
                }
            }
            let out = json!({
                "system": system.to_json(&sys),
                "intervals": [],
                "traces": [
                    {"kind": "token", "entries": trace_json(&token)},
                    {"kind": "continued-fraction", "entries": trace_json(&cf)},
                ],
            });
            mb.write_output(
                &common.out.join("align.json"),
                serde_json::to_string_pretty(&out)
                    .expect("serializable")
                    .as_bytes(),
            )?;
            mb.finish(&common.out)?;
            println!("{} overtakes recorded, all gaps positive", token.entries.len());
            Ok(EXIT_OK)
        }
        PulseCommand::Scan {
            common,
            system,
            horizon,
            min_duration,
            budget,
        } => {
            let sys = system.build()?;
            let mut mb = ManifestBuilder::new(json!({
                "command": "pulse scan",
                "system": system.to_json(&sys),
                "horizon": horizon,
                "min_duration": min_duration,
                "budget": budget,
                "precision": common.precision,
            }));
            let h = QuadExt::from_ratio(parse_ratio(horizon).map_err(CmdError::input)?);
            let d = QuadExt::from_ratio(parse_ratio(min_duration).map_err(CmdError::input)?);
            let intervals =
                simultaneous_high_intervals(&sys, &h, &d, common.precision, *budget)?;
            let out = json!({
                "system": system.to_json(&sys),
                "intervals": intervals.iter().map(|iv| json!({
                    "start": format!("{}", iv.start.to_f64()),
                    "end": format!("{}", iv.end.to_f64()),
                    "err": format!("{:e}", iv.err.to_f64()),
                })).collect::<Vec<_>>(),
                "traces": [],
            });
            mb.write_output(
                &common.out.join("scan.json"),
                serde_json::to_string_pretty(&out)
                    .expect("serializable")
                    .as_bytes(),
            )?;
            mb.finish(&common.out)?;
            println!("{} simultaneous-high intervals", intervals.len());
            Ok(EXIT_OK)
        }
        PulseCommand::Check {
            common,
            system,
            i,
            j,
            bound,
        } => {
            let sys = system.build()?;
            let mut mb = ManifestBuilder::new(json!({
                "command": "pulse check",
                "system": system.to_json(&sys),
                "i": i, "j": j, "bound": bound,
            }));
            let verdict = incommensurability_check(&sys, *i, *j, *bound)?;
            let (out, code) = match verdict {
                WitnessVerdict::Pass => (
                    json!({"verdict": "pass", "bound": bound}),
                    EXIT_OK,
                ),
                WitnessVerdict::Violation { n1, n2 } => (
                    json!({"verdict": "violation", "n1": n1, "n2": n2}),
                    EXIT_NEGATIVE,
                ),
            };
            mb.write_output(
                &common.out.join("check.json"),
                serde_json::to_string_pretty(&out)
                    .expect("serializable")
                    .as_bytes(),
            )?;
            mb.finish(&common.out)?;
            println!("{}", out["verdict"].as_str().unwrap_or("?"));
            Ok(code)
        }
    }
}

fn cmd_report(
    corpus: Option<&Path>,
    common: &CommonOpts,
    seed: u64,
    eps_exponent: Option<u32>,
    ladder: usize,
    discrete_budget: usize,
    grid: usize,
) -> Result<u8, CmdError> {
    let opts = ReportOptions {
        eps_exponent,
        sweep: SweepConfig {
            grid_alpha: grid,
            grid_beta: grid,
            precision: common.precision,
            ..Default::default()
        },
        ladder_cap: ladder,
        discrete_budget,
    };
    let mut mb = ManifestBuilder::new(json!({
        "command": "report",
        "seed": if corpus.is_none() { Some(seed) } else { None },
        "options": serde_json::to_value(&opts).expect("serializable"),
    }));
    let mut entries = Vec::new();
    match corpus {
        Some(corpus) => {
            let dir = std::fs::read_dir(corpus)
                .map_err(|e| CmdError::input(format!("cannot read {}: {e}", corpus.display())))?;
            let mut paths: Vec<PathBuf> = dir
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "json"))
                .collect();
            paths.sort();
            for path in &paths {
                let name = path
                    .file_name()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default();
                match std::fs::read(path) {
                    Ok(bytes) => {
                        mb.record_input(path, &bytes);
                        let parsed = String::from_utf8(bytes)
                            .map_err(|_| "not UTF-8".to_string())
                            .and_then(|t| DirectedGraph::parse(&t).map_err(|e| e.to_string()));
                        entries.push((name, parsed));
                    }
                    Err(e) => entries.push((name, Err(e.to_string()))),
                }
            }
        }
        None => {
            for (name, g) in acceptance_corpus(seed) {
                entries.push((name, Ok(g)));
            }
        }
    }
    let report = run_corpus(entries, &opts);
    mb.write_output(
        &common.out.join("report.json"),
        serde_json::to_string_pretty(&report.to_json())
            .expect("serializable")
            .as_bytes(),
    )?;
    mb.finish(&common.out)?;
    println!("{} records", report.records.len());
    Ok(EXIT_OK)
}

fn run(cli: &Cli) -> Result<u8, CmdError> {
    match &cli.command {
        Command::Reduce {
            graph,
            common,
            reduction,
            aggregate,
        } => cmd_reduce(graph, common, reduction, *aggregate),
        Command::Oracle { graph, common } => cmd_oracle(graph, common),
        Command::Sweep {
            graph,
            common,
            reduction,
            grid_alpha,
            grid_beta,
            budget,
        } => cmd_sweep(graph, common, reduction, *grid_alpha, *grid_beta, *budget),
        Command::Pattern {
            graph,
            common,
            pattern,
            grid,
            budget,
        } => cmd_pattern(graph, common, pattern.as_deref(), *grid, *budget),
        Command::Prove {
            aggregate,
            common,
            threshold,
            budget,
            box_file,
        } => cmd_prove(aggregate, common, threshold, *budget, box_file.as_deref()),
        Command::Pulse { sub } => cmd_pulse(sub),
        Command::Report {
            corpus,
            common,
            seed,
            eps_exponent,
            ladder,
            discrete_budget,
            grid,
        } => cmd_report(
            corpus.as_deref(),
            common,
            *seed,
            *eps_exponent,
            *ladder,
            *discrete_budget,
            *grid,
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
