//! The `hormander` command line.
//!
//! Exit codes: 0 when every gate passes, 1 on a gate failure, 2 on a usage
//! or configuration error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use hormander_core::maximal::{
    fractional_orlicz_maximal, hl_maximal, iterated_maximal, maximal_delta, orlicz_maximal,
    sharp_maximal, sharp_maximal_delta,
};
use hormander_core::operator::{apply_commutator, pointwise_norm};
use hormander_core::weights::{
    a1_constant, ap_constant, apq_constant, bmo_norm, BmoFunction, Weight,
};
use hormander_core::young::luxemburg_average;
use hormander_core::{
    kernel, BallFamily, DyadicKernel, Grid, GridFunction, Interval, OperatorSpec,
};
use serde::Serialize;
use serde_json::json;

use crate::config::{ExperimentConfig, GridSpec};
use crate::csvio::{read_grid_function, write_grid_function, write_vector_function};
use crate::error::{LabError, LabResult};
use crate::report::{ExperimentReport, RegressionStore};
use crate::specs::{QueryKind, QuerySpec, SeqNormSpec, YoungSpec};
use crate::suites;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_GATE_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Default location of the regression store.
pub const DEFAULT_STORE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/regression.json");

#[derive(Debug, Parser)]
#[command(
    name = "hormander",
    version,
    about = "Orlicz maximal operators and dyadic square operators"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Experiment configuration (JSON, or TOML by extension).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory; results go to stdout when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Grid as `L,N`: domain `[−L, L]` with `N` cells.
    #[arg(long, global = true, value_parser = parse_grid)]
    pub grid: Option<GridSpec>,
    /// Level window as `lmin,lmax`.
    #[arg(long, global = true, value_parser = parse_levels, allow_hyphen_values = true)]
    pub levels: Option<(i32, i32)>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate, invert or complement a Young function.
    Young {
        #[arg(value_enum)]
        action: YoungAction,
        /// Young function as JSON, e.g. `{"variant":"power","r":2}`.
        #[arg(long)]
        phi: String,
        /// Arguments.
        #[arg(required = true, allow_hyphen_values = true)]
        values: Vec<f64>,
    },
    /// Luxemburg average of a CSV function over an interval.
    Lux {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        phi: String,
        #[arg(long, allow_hyphen_values = true)]
        center: f64,
        #[arg(long)]
        radius: f64,
    },
    /// Apply a maximal operator to a CSV function.
    Maximal {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        kind: MaximalKind,
        /// Young function for `orlicz` and `fractional`.
        #[arg(long)]
        phi: Option<String>,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        delta: Option<f64>,
        /// Number of iterations for `iterated`.
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long, default_value_t = 16)]
        per_octave: u32,
        /// Use every interval with cell-boundary endpoints (slow, exact).
        #[arg(long)]
        dense: bool,
    },
    /// Weight constants and BMO norms.
    Weights {
        #[arg(long, value_enum)]
        kind: WeightKind,
        /// Weight or symbol as CSV.
        #[arg(long, conflicts_with = "power")]
        input: Option<PathBuf>,
        /// Use `|x|^a` on the `--grid` instead of a file.
        #[arg(long, allow_hyphen_values = true)]
        power: Option<f64>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        q: Option<f64>,
        #[arg(long, default_value_t = 16)]
        per_octave: u32,
    },
    /// Hörmander-type queries read from JSON (a file or inline text).
    Hormander {
        #[arg(long)]
        query: String,
    },
    /// Apply the square operator or its commutators to a CSV function.
    Operator {
        #[arg(long)]
        input: PathBuf,
        /// Commutator order.
        #[arg(long, default_value_t = 0)]
        k: u32,
        /// Symbol as CSV; required when `k ≥ 1`.
        #[arg(long)]
        symbol: Option<PathBuf>,
        /// Sequence norm as JSON; defaults to ℓ².
        #[arg(long)]
        x_norm: Option<String>,
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
        /// Emit the pointwise X-norm instead of the levels.
        #[arg(long)]
        norm: bool,
    },
    /// Run a named experiment suite.
    Suite {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(suites::SUITES))]
        name: String,
        /// Store this run's constants in the regression store.
        #[arg(long)]
        record: bool,
        #[arg(long, default_value = DEFAULT_STORE)]
        store: PathBuf,
    },
    /// Print the effective configuration as TOML.
    Config,
    /// Merge reports or emit CSV plot data.
    Report {
        #[command(subcommand)]
        action: ReportAction,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum YoungAction {
    Eval,
    Invert,
    Complement,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MaximalKind {
    Hl,
    Orlicz,
    Fractional,
    Sharp,
    SharpDelta,
    Delta,
    Iterated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WeightKind {
    Ap,
    A1,
    Apq,
    Bmo,
}

#[derive(Debug, Subcommand)]
pub enum ReportAction {
    /// Concatenate JSON reports.
    Merge {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Long-format CSV of the cases (or trajectories) of a report.
    Csv {
        file: PathBuf,
        #[arg(long)]
        trajectories: bool,
    },
}

fn parse_pair<T: std::str::FromStr>(s: &str) -> Result<(T, T), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected two comma-separated values, got `{s}`"))?;
    let parse = |v: &str| {
        v.trim()
            .parse::<T>()
            .map_err(|_| format!("`{v}` is not a valid number"))
    };
    Ok((parse(a)?, parse(b)?))
}

fn parse_grid(s: &str) -> Result<GridSpec, String> {
    let (half_len, n) = parse_pair::<f64>(s)?;
    if n.fract() != 0.0 || n < 0.0 {
        return Err(format!("N must be a whole number, got {n}"));
    }
    let spec = GridSpec {
        half_len,
        n: n as usize,
    };
    spec.grid().map_err(|e| e.to_string())?;
    Ok(spec)
}

fn parse_levels(s: &str) -> Result<(i32, i32), String> {
    let (a, b) = parse_pair::<i32>(s)?;
    if a > b {
        return Err(format!("empty level window {a},{b}"));
    }
    Ok((a, b))
}

/// Parses arguments and runs; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_GATE_FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn load_config(g: &GlobalOpts) -> LabResult<ExperimentConfig> {
    let mut cfg = match &g.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    if let Some(seed) = g.seed {
        cfg.seed = seed;
    }
    if let Some(grid) = g.grid {
        cfg.grid = grid;
    }
    if let Some(levels) = g.levels {
        cfg.levels = levels;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn young_from_json(text: &str) -> LabResult<hormander_core::YoungFunction> {
    let spec: YoungSpec = serde_json::from_str(text)?;
    spec.build()
}

/// Inline JSON, or a path to a JSON file.
fn json_arg(text: &str) -> LabResult<String> {
    if text.trim_start().starts_with('{') {
        Ok(text.to_string())
    } else {
        std::fs::read_to_string(text).map_err(|e| LabError::io(text, e))
    }
}

fn family(per_octave: u32, dense: bool) -> BallFamily {
    if dense {
        BallFamily::dense()
    } else {
        BallFamily::ladder(per_octave)
    }
}

fn write_out(g: &GlobalOpts, name: &str, bytes: &[u8]) -> LabResult<()> {
    match &g.out {
        Some(dir) => {
            std::fs::create_dir_all(dir).map_err(|e| LabError::io(dir, e))?;
            let path = dir.join(name);
            std::fs::write(&path, bytes).map_err(|e| LabError::io(&path, e))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(bytes)
                .and_then(|_| stdout.flush())
                .map_err(|e| LabError::io("<stdout>", e))
        }
    }
}

fn emit_json(g: &GlobalOpts, name: &str, value: &impl Serialize) -> LabResult<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_out(g, &format!("{name}.json"), text.as_bytes())
}

fn emit_rows(g: &GlobalOpts, name: &str, header: [&str; 2], rows: &[(f64, f64)]) -> LabResult<()> {
    match g.format {
        Format::Json => {
            let v: Vec<_> = rows
                .iter()
                .map(|(a, b)| json!({ header[0]: a, header[1]: b }))
                .collect();
            emit_json(g, name, &v)
        }
        Format::Csv => {
            let mut text = format!("{},{}\n", header[0], header[1]);
            for (a, b) in rows {
                text.push_str(&format!("{a},{b}\n"));
            }
            write_out(g, &format!("{name}.csv"), text.as_bytes())
        }
    }
}

fn emit_function(g: &GlobalOpts, name: &str, f: &GridFunction) -> LabResult<()> {
    match g.format {
        Format::Csv => {
            let mut buf = Vec::new();
            write_grid_function(f, &mut buf)?;
            write_out(g, &format!("{name}.csv"), &buf)
        }
        Format::Json => {
            let grid = f.grid();
            emit_json(
                g,
                name,
                &json!({ "L": grid.half_len(), "N": grid.len(), "samples": f.samples() }),
            )
        }
    }
}

fn execute(cli: &Cli) -> LabResult<bool> {
    let g = &cli.global;
    match &cli.command {
        Command::Young {
            action,
            phi,
            values,
        } => {
            let phi = young_from_json(phi)?;
            let rows = values
                .iter()
                .map(|&t| {
                    let v = match action {
                        YoungAction::Eval => phi.eval(t)?,
                        YoungAction::Invert => phi.inverse(t)?,
                        YoungAction::Complement => phi.complementary().eval(t)?,
                    };
                    Ok((t, v))
                })
                .collect::<LabResult<Vec<_>>>()?;
            emit_rows(g, "young", ["input", "output"], &rows)?;
        }
        Command::Lux {
            input,
            phi,
            center,
            radius,
        } => {
            let f = read_grid_function(input)?;
            let phi = young_from_json(phi)?;
            let value = luxemburg_average(&f, &Interval::new(*center, *radius)?, &phi)?;
            emit_rows(g, "lux", ["radius", "value"], &[(*radius, value)])?;
        }
        Command::Maximal {
            input,
            kind,
            phi,
            alpha,
            delta,
            k,
            per_octave,
            dense,
        } => {
            let f = read_grid_function(input)?;
            let fam = family(*per_octave, *dense);
            let need_phi = || -> LabResult<_> {
                young_from_json(
                    phi.as_deref()
                        .ok_or_else(|| LabError::Config("--phi is required".into()))?,
                )
            };
            let need = |v: Option<f64>, flag: &str| {
                v.ok_or_else(|| LabError::Config(format!("--{flag} is required")))
            };
            let out = match kind {
                MaximalKind::Hl => hl_maximal(&f, &fam),
                MaximalKind::Orlicz => orlicz_maximal(&f, &need_phi()?, &fam),
                MaximalKind::Fractional => {
                    fractional_orlicz_maximal(&f, &need_phi()?, need(*alpha, "alpha")?, &fam)?
                }
                MaximalKind::Sharp => sharp_maximal(&f, &fam),
                MaximalKind::SharpDelta => sharp_maximal_delta(&f, need(*delta, "delta")?, &fam)?,
                MaximalKind::Delta => maximal_delta(&f, need(*delta, "delta")?, &fam)?,
                MaximalKind::Iterated => iterated_maximal(&f, *k, &fam)?,
            };
            emit_function(g, "maximal", &out)?;
        }
        Command::Weights {
            kind,
            input,
            power,
            p,
            q,
            per_octave,
        } => {
            let fam = BallFamily::ladder(*per_octave);
            let data = match (input, power) {
                (Some(path), _) => read_grid_function(path)?,
                (None, Some(a)) => Weight::power(grid_or_default(g)?, *a).get().clone(),
                (None, None) => return Err(LabError::Config("give --input or --power".into())),
            };
            let need = |v: Option<f64>, flag: &str| {
                v.ok_or_else(|| LabError::Config(format!("--{flag} is required")))
            };
            let value = match kind {
                WeightKind::Bmo => json!({ "bmo_norm": bmo_norm(&data, &fam) }),
                other => {
                    let w = Weight::new(data)?;
                    let rep = match other {
                        WeightKind::Ap => ap_constant(&w, need(*p, "p")?, &fam)?,
                        WeightKind::A1 => a1_constant(&w, &fam),
                        _ => apq_constant(&w, need(*p, "p")?, need(*q, "q")?, &fam)?,
                    };
                    json!({ "constant": rep.constant, "argmax": [rep.argmax.0, rep.argmax.1] })
                }
            };
            emit_json(g, "weights", &value)?;
        }
        Command::Hormander { query } => {
            let spec: QuerySpec = serde_json::from_str(&json_arg(query)?)?;
            let value = hormander_query(&spec, g.levels)?;
            emit_json(g, "hormander", &value)?;
        }
        Command::Operator {
            input,
            k,
            symbol,
            x_norm,
            alpha,
            norm,
        } => {
            let f = read_grid_function(input)?;
            let x = match x_norm {
                Some(text) => serde_json::from_str::<SeqNormSpec>(&json_arg(text)?)?.build()?,
                None => SeqNormSpec::l2().build()?,
            };
            let (lo, hi) = g.levels.unwrap_or(ExperimentConfig::default().levels);
            let b = match symbol {
                Some(path) => Some(BmoFunction::new(
                    read_grid_function(path)?,
                    &BallFamily::coarse(),
                )),
                None => None,
            };
            let spec = OperatorSpec::new(DyadicKernel::new(lo, hi, *alpha)?, x.clone(), *k, b)?;
            let t = apply_commutator(&spec, &f)?;
            if *norm {
                emit_function(g, "operator", &pointwise_norm(&t, &x))?;
            } else {
                let mut buf = Vec::new();
                write_vector_function(&t, &mut buf)?;
                write_out(g, "operator.csv", &buf)?;
            }
        }
        Command::Suite {
            name,
            record,
            store,
        } => return run_suite(g, name, *record, store),
        Command::Config => {
            let cfg = load_config(g)?;
            write_out(g, "config.toml", toml::to_string(&cfg)?.as_bytes())?;
        }
        Command::Report { action } => match action {
            ReportAction::Merge { files } => {
                let reports = files
                    .iter()
                    .map(|p| ExperimentReport::load(p))
                    .collect::<LabResult<Vec<_>>>()?;
                let merged = ExperimentReport::merge(&reports);
                match g.format {
                    Format::Json => emit_json(g, "merged", &merged)?,
                    Format::Csv => {
                        let mut buf = Vec::new();
                        merged.write_cases_csv(&mut buf)?;
                        write_out(g, "merged.csv", &buf)?;
                    }
                }
                return Ok(merged.passed());
            }
            ReportAction::Csv { file, trajectories } => {
                let report = ExperimentReport::load(file)?;
                let mut buf = Vec::new();
                if *trajectories {
                    report.write_trajectories_csv(&mut buf)?;
                } else {
                    report.write_cases_csv(&mut buf)?;
                }
                write_out(g, &format!("{}.csv", report.suite), &buf)?;
            }
        },
    }
    Ok(true)
}

fn grid_or_default(g: &GlobalOpts) -> LabResult<Grid> {
    g.grid.unwrap_or(ExperimentConfig::default().grid).grid()
}

fn hormander_query(spec: &QuerySpec, levels: Option<(i32, i32)>) -> LabResult<serde_json::Value> {
    let window = levels.unwrap_or_else(|| spec.window());
    let x = spec.x_norm.build()?;
    let phi = spec.phi.build()?;
    Ok(match spec.flavor {
        QueryKind::Prop3 => {
            let rep = kernel::prop3_closed_form(&phi, spec.k, &x, spec.m_max)?;
            json!({ "value": rep.value, "partials": rep.partials, "stabilized": rep.stabilized })
        }
        QueryKind::SAlpha => {
            let kernel = DyadicKernel::new(window.0, window.1, spec.alpha)?;
            let rep = kernel.s_alpha_check(&phi, &x, &spec.s)?;
            json!({ "sup": rep.sup, "ratios": rep.ratios })
        }
        QueryKind::Plain => {
            let kernel = DyadicKernel::new(window.0, window.1, spec.alpha)?;
            let rep = kernel.plain_sum(&spec.query()?)?;
            json!({ "value": rep.value, "per_annulus": rep.per_annulus, "levels": window })
        }
        QueryKind::Dagger | QueryKind::FractionalDagger => {
            let kernel = DyadicKernel::new(window.0, window.1, spec.alpha)?;
            let rep = kernel.dagger_sum(&spec.query()?)?;
            json!({ "value": rep.value, "per_level": rep.per_level, "levels": window })
        }
    })
}

fn run_suite(g: &GlobalOpts, name: &str, record: bool, store_path: &Path) -> LabResult<bool> {
    let cfg = load_config(g)?;
    let mut report = suites::run(name, &cfg)?;
    let mut store = RegressionStore::load(store_path)?;
    if record {
        store.record(&report);
        store.save(store_path)?;
    }
    store.gate_report(&mut report);
    match g.format {
        Format::Json => emit_json(g, name, &report)?,
        Format::Csv => {
            let mut buf = Vec::new();
            report.write_cases_csv(&mut buf)?;
            write_out(g, &format!("{name}.csv"), &buf)?;
        }
    }
    if g.out.is_some() {
        let mut buf = Vec::new();
        report.write_trajectories_csv(&mut buf)?;
        write_out(g, &format!("{name}_trajectories.csv"), &buf)?;
    }
    for gate in report.gates.iter().filter(|g| !g.passed) {
        eprintln!("FAIL {}: {}", gate.name, gate.detail);
    }
    Ok(report.passed())
}
