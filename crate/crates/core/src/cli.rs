//! The `simbet` command line.
//!
//! Every invocation can be saved as JSON with `--save-config` and replayed
//! with `simbet replay`, which reproduces the output byte for byte.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::analysis::{self, HypotenuseBounds};
use crate::error::{Error, Result};
use crate::families::{self, enumerate_threshold_families_capped, DEFAULT_UPSET_CAP, MAX_ANTICHAIN_GROUND};
use crate::model::{Method, Params, Stakes, StrategyValue};
use crate::optimizer::{self, ConjectureVerdict, LocalSearch, EXHAUSTIVE_CAP};
use crate::rational::{self, Rational};
use crate::strategy;
use crate::tail;

#[derive(Parser, Debug)]
#[command(name = "simbet", version, about = "Exact tail probabilities and optimal stakes for simultaneous bets")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct Global {
    /// Seed for Monte Carlo sampling and local search.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Digits after the decimal point in decimal renderings.
    #[arg(long, global = true, default_value_t = 12)]
    pub decimals: usize,
    /// Allow exhaustive searches on six points (millions of up-sets).
    #[arg(long, global = true)]
    pub force: bool,
    /// Save this invocation as JSON for `simbet replay`.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub save_config: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Enum,
    Dp,
    Mc,
}

#[derive(Subcommand, Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// P(Σ c_i β_i ≥ t) for given stakes.
    Tail {
        /// Comma-separated stakes, e.g. 1/2,1/4,1/4.
        #[arg(long)]
        stakes: String,
        #[arg(long)]
        p: String,
        #[arg(long)]
        t: String,
        #[arg(long, value_enum, default_value_t = Engine::Dp)]
        method: Engine,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        /// Rescale stakes that do not sum to 1.
        #[arg(long)]
        normalize: bool,
    },
    /// Value of bold play.
    Bold {
        #[arg(long)]
        p: String,
        #[arg(long)]
        t: String,
    },
    /// Value of the k-average.
    Average {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: String,
        #[arg(long)]
        t: String,
    },
    /// Whether bold play is known to be optimal at (p, t).
    Classify {
        #[arg(long)]
        p: String,
        #[arg(long)]
        t: String,
    },
    /// Classify every grid point with p ≤ t.
    Region {
        #[arg(long, default_value_t = 100)]
        resolution: usize,
    },
    /// Upper and lower bounds on the diagonal p = t.
    Bounds {
        #[arg(long, default_value_t = 1000)]
        resolution: usize,
    },
    /// Best k-average over the candidates ⌊n/t⌋.
    BestAverage {
        #[arg(long)]
        p: String,
        #[arg(long)]
        t: String,
        #[arg(long, default_value_t = 20)]
        n_max: usize,
    },
    /// Exhaustive search at one point: is an average optimal?
    Conjecture {
        #[arg(long)]
        p: String,
        #[arg(long)]
        t: String,
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        /// Where refuting stakes are written, if any are found.
        #[arg(long, default_value = "counterexamples.json")]
        counterexamples: PathBuf,
    },
    /// Exhaustive search over the grid (i/r, j/r), 1 ≤ i ≤ j ≤ r.
    Scan {
        #[arg(long, default_value_t = 10)]
        resolution: usize,
        #[arg(long, default_value_t = 3)]
        n_max: usize,
        #[arg(long, default_value = "counterexamples.json")]
        counterexamples: PathBuf,
    },
    /// Seeded hill-climb over stakes with a bounded denominator.
    Local {
        #[arg(long)]
        p: String,
        #[arg(long)]
        t: String,
        #[arg(long, default_value_t = 7)]
        n: usize,
        #[arg(long, default_value_t = 60)]
        cap: usize,
        #[arg(long, default_value_t = 8)]
        restarts: usize,
    },
    /// Every threshold family on n points at threshold t.
    Families {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: String,
        /// Include every permutation, not only non-increasing stakes.
        #[arg(long)]
        all: bool,
    },
    /// P(Bin(ka, p) ≥ k) for k = 1..k_max.
    Pepys {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        p: String,
        #[arg(long, default_value_t = 3)]
        k_max: usize,
    },
    /// Re-run a saved configuration.
    Replay {
        config: PathBuf,
    },
}

/// A complete, replayable invocation.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunConfig {
    pub global: Global,
    #[serde(flatten)]
    pub command: Command,
}

/// Exit status for an error: 2 bad input, 3 outside the regime, 4 over a cap.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse { .. } | Error::Invalid(_) => 2,
        Error::Regime(_) => 3,
        Error::Size { .. } => 4,
        _ => 1,
    }
}

/// Parses the process arguments, runs, and returns the exit status.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn execute(cli: Cli) -> Result<()> {
    let config = match cli.command {
        Command::Replay { config } => {
            let mut saved: RunConfig = serde_json::from_reader(File::open(&config)?)?;
            if matches!(saved.command, Command::Replay { .. }) {
                return Err(Error::Invalid("a saved configuration cannot be a replay".into()));
            }
            if cli.global.out.is_some() {
                saved.global.out = cli.global.out;
            }
            saved.global.save_config = cli.global.save_config;
            saved
        }
        command => RunConfig { global: cli.global, command },
    };
    if let Some(path) = &config.global.save_config {
        let mut w = BufWriter::new(File::create(path)?);
        serde_json::to_writer_pretty(&mut w, &config)?;
        writeln!(w)?;
        w.flush()?;
    }
    match &config.global.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            run(&config, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            run(&config, &mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn params(p: &str, t: &str) -> Result<Params> {
    Params::parse(p, t)
}

struct Render<'a> {
    global: &'a Global,
}

impl Render<'_> {
    fn format(&self, default: Format, allowed: &[Format]) -> Result<Format> {
        let f = self.global.format.unwrap_or(default);
        if allowed.contains(&f) {
            Ok(f)
        } else {
            Err(Error::Invalid(format!("--format {f:?} is not available for this command").to_lowercase()))
        }
    }

    fn dec(&self, v: &Rational) -> String {
        rational::to_decimal_string(v, self.global.decimals)
    }

    fn float(&self, v: f64) -> String {
        format!("{:.*}", self.global.decimals, v)
    }

    fn cap(&self) -> usize {
        if self.global.force {
            MAX_ANTICHAIN_GROUND
        } else {
            DEFAULT_UPSET_CAP.min(EXHAUSTIVE_CAP)
        }
    }
}

fn json<W: Write + ?Sized, T: Serialize>(out: &mut W, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

#[derive(Serialize)]
struct WithDecimal<'a, T: Serialize> {
    #[serde(flatten)]
    inner: &'a T,
    decimal: String,
}

fn strategy_out<W: Write + ?Sized>(r: &Render, out: &mut W, v: &StrategyValue) -> Result<()> {
    match r.format(Format::Text, &[Format::Text, Format::Json])? {
        Format::Json => json(out, &WithDecimal { inner: v, decimal: r.dec(&v.value) }),
        _ => {
            writeln!(out, "{}: {} ≈ {}", v.kind, v.value, r.dec(&v.value))?;
            Ok(())
        }
    }
}

pub fn run<W: Write + ?Sized>(config: &RunConfig, out: &mut W) -> Result<()> {
    let r = Render { global: &config.global };
    match &config.command {
        Command::Tail { stakes, p, t, method, samples, normalize } => {
            let params = params(p, t)?;
            let raw = Stakes::parse_list(stakes)?;
            let stakes = if *normalize { Stakes::normalized(raw)? } else { Stakes::new(raw)? };
            let result = match method {
                Engine::Enum => tail::tail_enum(&stakes, &params)?,
                Engine::Dp => tail::tail_dp(&stakes, &params)?,
                Engine::Mc => tail::tail_mc(&stakes, &params, *samples, config.global.seed)?,
            };
            match r.format(Format::Text, &[Format::Text, Format::Json])? {
                Format::Json => json(out, &WithDecimal { inner: &result, decimal: r.dec(&result.value) })?,
                _ => match (result.method, result.stderr) {
                    (Method::MonteCarlo, Some(se)) => {
                        writeln!(out, "{} ≈ {} ± {} (monte-carlo)", result.value, r.dec(&result.value), r.float(se))?
                    }
                    _ => writeln!(out, "{}\t{}", result.value, r.dec(&result.value))?,
                },
            }
        }
        Command::Bold { p, t } => strategy_out(&r, out, &strategy::bold_play(&params(p, t)?)?)?,
        Command::Average { k, p, t } => strategy_out(&r, out, &strategy::average_play(*k, &params(p, t)?)?)?,
        Command::Classify { p, t } => {
            let verdict = analysis::classify(&params(p, t)?);
            match r.format(Format::Text, &[Format::Text, Format::Json])? {
                Format::Json => json(out, &verdict)?,
                _ => {
                    let why = verdict.justification.map(|j| j.to_string()).unwrap_or_else(|| "-".into());
                    writeln!(out, "{} [{}]", verdict.status, why)?;
                    if let Some(w) = &verdict.witness {
                        writeln!(out, "witness {}: {} ≈ {}", w.kind, w.value, r.dec(&w.value))?;
                    }
                }
            }
        }
        Command::Region { resolution } => {
            let rows = analysis::region_grid(*resolution)?;
            match r.format(Format::Csv, &[Format::Csv, Format::Json])? {
                Format::Json => json(out, &rows)?,
                _ => analysis::write_region_csv(&rows, out)?,
            }
        }
        Command::Bounds { resolution } => {
            let rows: Vec<HypotenuseBounds> = analysis::bound_curve(*resolution)?;
            match r.format(Format::Csv, &[Format::Csv, Format::Json])? {
                Format::Json => json(out, &rows)?,
                _ => analysis::write_bounds_csv(&rows, config.global.decimals, out)?,
            }
        }
        Command::BestAverage { p, t, n_max } => {
            let best = analysis::best_average(&params(p, t)?, *n_max)?;
            match r.format(Format::Text, &[Format::Text, Format::Json])? {
                Format::Json => json(out, &best)?,
                _ => {
                    writeln!(out, "{}: {} ≈ {}", best.best.kind, best.best.value, r.dec(&best.best.value))?;
                    writeln!(out, "maximizers: {:?}", best.maximizers)?;
                    writeln!(out, "candidates: {:?}", best.candidates)?;
                }
            }
        }
        Command::Conjecture { p, t, n_max, counterexamples } => {
            let verdict = optimizer::csoka_check_capped(&params(p, t)?, *n_max, r.cap())?;
            if !verdict.confirmed {
                write_counterexamples(counterexamples, std::slice::from_ref(&verdict))?;
            }
            match r.format(Format::Json, &[Format::Text, Format::Json])? {
                Format::Json => json(out, &verdict)?,
                _ => conjecture_text(&r, out, &verdict)?,
            }
        }
        Command::Scan { resolution, n_max, counterexamples } => {
            let summary = optimizer::csoka_scan(*resolution, *n_max, r.cap())?;
            if !summary.counterexamples.is_empty() {
                write_counterexamples(counterexamples, &summary.counterexamples)?;
            }
            match r.format(Format::Json, &[Format::Text, Format::Json])? {
                Format::Json => json(out, &summary)?,
                _ => {
                    writeln!(
                        out,
                        "{} of {} points confirmed with at most {} stakes; {} counterexamples",
                        summary.confirmations,
                        summary.points.len(),
                        summary.n_max,
                        summary.counterexamples.len()
                    )?;
                    for (k, count) in &summary.optimal_k_counts {
                        writeln!(out, "optimal k = {k}: {count} points")?;
                    }
                }
            }
        }
        Command::Local { p, t, n, cap, restarts } => {
            let search = LocalSearch::new(*n, *cap, *restarts, config.global.seed);
            let report = optimizer::optimize_local(&params(p, t)?, &search)?;
            match r.format(Format::Json, &[Format::Text, Format::Json])? {
                Format::Json => json(out, &report)?,
                _ => writeln!(out, "{}: {} ≈ {}", report.best.kind, report.label(), r.dec(&report.best.value))?,
            }
        }
        Command::Families { n, t, all } => {
            let t = rational::parse_rational(t)?;
            let found = enumerate_threshold_families_capped(*n, &t, !*all, r.cap())?;
            match r.format(Format::Json, &[Format::Text, Format::Json])? {
                Format::Json => {
                    let rows: Vec<FamilyRow> = found
                        .iter()
                        .map(|(family, witness)| FamilyRow { family, witness })
                        .collect();
                    json(out, &rows)?
                }
                _ => {
                    for (f, w) in &found {
                        let coeffs: Vec<String> = w.coefficients.iter().map(ToString::to_string).collect();
                        writeln!(out, "{:?}\t({})", f.to_index_sets(), coeffs.join(","))?;
                    }
                }
            }
        }
        Command::Pepys { a, p, k_max } => {
            let p = rational::parse_rational(p)?;
            let table = match analysis::chaundy_bullard_check(*a, *k_max, &p) {
                Ok(table) => table,
                Err(Error::Regime(msg)) => {
                    eprintln!("warning: {msg}; strict decrease is only proven there");
                    analysis::pepys_table(*a, &p, *k_max)?
                }
                Err(e) => return Err(e),
            };
            match r.format(Format::Csv, &[Format::Text, Format::Csv, Format::Json])? {
                Format::Json => json(out, &table)?,
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(&mut *out);
                    w.write_record(["k", "value", "decimal"])?;
                    for (i, v) in table.values.iter().enumerate() {
                        w.write_record([(i + 1).to_string(), v.to_string(), r.dec(v)])?;
                    }
                    w.flush()?;
                    drop(w);
                    writeln!(out, "# strictly_decreasing={}", table.strictly_decreasing)?;
                }
                Format::Text => {
                    for (i, v) in table.values.iter().enumerate() {
                        writeln!(out, "k={}\t{}", i + 1, r.dec(v))?;
                    }
                    writeln!(out, "strictly decreasing: {}", table.strictly_decreasing)?;
                }
            }
        }
        Command::Replay { .. } => return Err(Error::Invalid("nested replay".into())),
    }
    Ok(())
}

#[derive(Serialize)]
struct FamilyRow<'a> {
    family: &'a families::SubsetFamily,
    witness: &'a families::RealizabilityWitness,
}

fn conjecture_text<W: Write + ?Sized>(r: &Render, out: &mut W, v: &ConjectureVerdict) -> Result<()> {
    let state = if v.confirmed { "confirmed" } else { "REFUTED" };
    writeln!(out, "{state} at (p, t) = ({}, {}) with at most {} stakes", v.params.p, v.params.t, v.n_max)?;
    writeln!(out, "maximum {} ≈ {}", v.value, r.dec(&v.value))?;
    if let Some(k) = v.optimal_k {
        let bold = if v.bold_optimal { "bold play is optimal" } else { "bold play is not optimal" };
        writeln!(out, "optimal averages k = {:?}; smallest {k}; {bold}", v.optimal_ks)?;
    }
    if let Some(c) = &v.counterexample {
        writeln!(out, "counterexample stakes {c}")?;
    }
    Ok(())
}

fn write_counterexamples(path: &Path, found: &[ConjectureVerdict]) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    json(&mut w, &found)?;
    w.flush()?;
    eprintln!("wrote {} counterexample(s) to {}", found.len(), path.display());
    Ok(())
}
