//! `vertco` command-line front end.
//!
//! Data goes to the output stream, diagnostics to the error stream. Exit
//! codes: 0 success, 1 evaluation failure, 2 usage, parse or schema error.

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::{Args, Parser, Subcommand};
use vertco_core::report::{
    coverage_report, mmtc_report, sensitivity_report, sweep_report, tco_report, Format, Report,
};
use vertco_core::scenario::{golden, load_scenario, ScenarioBody, ScenarioDocument};
use vertco_core::sweep::{
    best_configuration, one_at_a_time, parse_grid, parse_values, sweep, BestQuery, Constraint,
    Goal, ParamPath,
};
use vertco_core::{coverage, dimension, report, Error, Metric};

#[derive(Debug, Parser)]
#[command(name = "vertco", version, about = "Techno-economic planning for 5G vertical deployments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Scenario file, or the name of a shipped golden scenario.
    #[arg(long)]
    scenario: String,
    /// csv or json.
    #[arg(long, default_value = "csv")]
    format: String,
}

#[derive(Debug, Args)]
struct Horizon {
    /// Planning horizon in years; defaults to the scenario's.
    #[arg(long)]
    horizon: Option<u32>,
    /// Yearly discount rate; defaults to the scenario's.
    #[arg(long)]
    rate: Option<f64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Cost breakdown and normalized totals.
    Tco {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        horizon: Horizon,
    },
    /// Cell radius of a uc4 scenario.
    Coverage {
        #[command(flatten)]
        common: Common,
    },
    /// Resource dimensioning of a uc3 scenario, one row per capacity row.
    Mmtc {
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate metrics while one field takes each listed value.
    Sweep {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        horizon: Horizon,
        /// Dotted field path, e.g. drones_per_link.
        #[arg(long)]
        param: String,
        /// Comma-separated values.
        #[arg(long, allow_hyphen_values = true)]
        values: String,
        /// Comma-separated metric names.
        #[arg(long)]
        metric: String,
        /// Append scenario hash and engine version columns.
        #[arg(long)]
        metadata: bool,
    },
    /// Low/base/high metric for each path scaled by 1 -/+ perturbation.
    Sensitivity {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        horizon: Horizon,
        /// Comma-separated dotted field paths.
        #[arg(long)]
        paths: String,
        #[arg(long, default_value_t = 0.1)]
        perturbation: f64,
        #[arg(long)]
        metric: String,
    },
    /// Exhaustive grid search for the best configuration.
    Best {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        horizon: Horizon,
        /// `path=v1,v2;path2=v3,v4`.
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        #[arg(long)]
        objective: String,
        /// min or max.
        #[arg(long)]
        direction: String,
        /// Optional `metric>=bound` or `metric<=bound`.
        #[arg(long)]
        constraint: Option<String>,
        /// Largest grid to evaluate.
        #[arg(long, default_value_t = vertco_core::sweep::DEFAULT_GRID_CAP)]
        cap: usize,
    },
    /// Load and validate a scenario; diagnostics only.
    Validate {
        #[arg(long)]
        scenario: String,
    },
}

enum Failure {
    Usage(String),
    Engine(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

type Outcome<T> = Result<T, Failure>;

fn usage<T>(r: vertco_core::Result<T>) -> Outcome<T> {
    r.map_err(|e| Failure::Usage(e.to_string()))
}

/// Run one invocation; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                2
            } else {
                let _ = out.write_all(text.as_bytes());
                0
            };
        }
    };
    match execute(cli.command, err) {
        Ok(text) => match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(err, "error: cannot write output: {e}");
                1
            }
        },
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Engine(e)) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_input_error() {
                2
            } else {
                1
            }
        }
    }
}

/// Read a scenario from a file path, falling back to a golden name
/// (`uc9_emergency`, `uc9_emergency.toml` or `uc9_emergency.golden`).
fn read_scenario(source: &str) -> Outcome<ScenarioDocument> {
    let path = Path::new(source);
    let text = if path.is_file() {
        std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: source.into(),
            message: e.to_string(),
        })?
    } else {
        let name = source.strip_suffix(".golden").unwrap_or(source);
        golden::text(name).map_err(|_| Error::Io {
            path: source.into(),
            message: "no such file or golden scenario".into(),
        })?
    };
    Ok(load_scenario(&text)?)
}

fn load(common: &Common, horizon: Option<&Horizon>) -> Outcome<(ScenarioDocument, Format)> {
    let format: Format = usage(common.format.parse())?;
    let mut doc = read_scenario(&common.scenario)?;
    if let Some(h) = horizon {
        if let Some(years) = h.horizon {
            doc.horizon_years = years;
        }
        if let Some(rate) = h.rate {
            doc.discount_rate = rate;
        }
        doc.validate()
            .map_err(|v| Failure::Usage(format!("{}: {}", v.path, v.predicate)))?;
    }
    Ok((doc, format))
}

fn metrics(list: &str) -> Outcome<Vec<Metric>> {
    usage(list.split(',').map(|m| m.trim().parse()).collect())
}

fn emit(report: vertco_core::Result<Report>, format: Format) -> Outcome<String> {
    Ok(report?.emit(format)?)
}

fn execute(command: Command, err: &mut dyn Write) -> Outcome<String> {
    match command {
        Command::Tco { common, horizon } => {
            let (doc, format) = load(&common, Some(&horizon))?;
            if matches!(doc.body, ScenarioBody::Uc3(_)) {
                return Err(Failure::Usage(
                    "uc3 scenarios have no cost model; use the mmtc command".into(),
                ));
            }
            let result = doc.tco(doc.horizon_years, doc.discount_rate)?;
            emit(tco_report(&doc.breakdown()?, &result), format)
        }
        Command::Coverage { common } => {
            let (doc, format) = load(&common, None)?;
            let ScenarioBody::Uc4(s) = &doc.body else {
                return Err(Failure::Usage(format!(
                    "coverage needs a uc4 scenario, got {}",
                    doc.use_case()
                )));
            };
            emit(coverage_report(&coverage(&s.linkbudget, &s.model)?), format)
        }
        Command::Mmtc { common } => {
            let (doc, format) = load(&common, None)?;
            let ScenarioBody::Uc3(s) = &doc.body else {
                return Err(Failure::Usage(format!(
                    "mmtc needs a uc3 scenario, got {}",
                    doc.use_case()
                )));
            };
            emit(mmtc_report(&dimension(s)?), format)
        }
        Command::Sweep {
            common,
            horizon,
            param,
            values,
            metric,
            metadata,
        } => {
            let (doc, format) = load(&common, Some(&horizon))?;
            let path: ParamPath = param.parse()?;
            let values = usage(parse_values(&values))?;
            let metrics = metrics(&metric)?;
            let result = sweep(&doc, &path, &values, &metrics)?;
            emit(sweep_report(&result, metadata), format)
        }
        Command::Sensitivity {
            common,
            horizon,
            paths,
            perturbation,
            metric,
        } => {
            let (doc, format) = load(&common, Some(&horizon))?;
            let paths = paths
                .split(',')
                .map(str::parse)
                .collect::<vertco_core::Result<Vec<ParamPath>>>()?;
            let metric: Metric = usage(metric.trim().parse())?;
            if !(perturbation > 0.0 && perturbation < 1.0) {
                return Err(Failure::Usage(format!(
                    "perturbation must lie in (0, 1), got {perturbation}"
                )));
            }
            let rows = one_at_a_time(&doc, &paths, perturbation, metric)?;
            emit(sensitivity_report(&rows, metric), format)
        }
        Command::Best {
            common,
            horizon,
            grid,
            objective,
            direction,
            constraint,
            cap,
        } => {
            let (doc, format) = load(&common, Some(&horizon))?;
            let grid = usage(parse_grid(&grid))?;
            let objective: Metric = usage(objective.trim().parse())?;
            let goal: Goal = usage(direction.parse())?;
            let mut query = BestQuery::new(grid, objective, goal);
            query.cap = cap;
            if let Some(c) = constraint {
                query = query.with_constraint(usage(c.parse::<Constraint>())?);
            }
            let best = best_configuration(&doc, &query)?;
            emit(report::best_report(&best, objective), format)
        }
        Command::Validate { scenario } => {
            let doc = read_scenario(&scenario)?;
            let _ = writeln!(err, "ok: {scenario} ({})", doc.use_case());
            Ok(String::new())
        }
    }
}
