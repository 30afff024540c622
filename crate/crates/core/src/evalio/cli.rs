//! Command-line interface.
//!
//! Exit codes: 0 on success, 1 when an input fails validation, 2 on a usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use super::cap::export_cap_entry;
use super::cases::load_cases;
use super::config::load_service_config;
use super::evaluate::{run_evaluation, warn_cases, EvaluationOptions, ForecastSource};
use super::render;
use crate::directive::Coherence;
use crate::error::{Error, Result};
use crate::matrix::{presets, EvaluationWeights};
use crate::synth::{run_experiment, ExperimentConfig};

#[derive(Debug, Parser)]
#[command(name = "riskmatrix", version, about = "Risk-matrix warnings and their verification scores")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum HeatScaling {
    /// MOD+ Yellow from "possible"; SEV+ Orange then Red; EXT Red.
    Default,
    /// Best match to the reference experiment means; warning weights sum to 5.
    Fitted,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Grid {
    /// Risk matrix score weights of the service.
    Rmas,
    /// Warning-score weights of a phase.
    Warning,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a service definition file.
    Validate { service: PathBuf },
    /// Warning level for every case.
    Warn {
        #[arg(long)]
        service: PathBuf,
        #[arg(long)]
        cases: PathBuf,
        /// Also write CAP-lite records (JSON lines) for warned cases.
        #[arg(long)]
        cap: Option<PathBuf>,
        /// Replace incoherent probability tuples by their running minimum instead of failing.
        #[arg(long)]
        repair: bool,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Print the warning-score weight grid.
    Weights {
        #[arg(long)]
        service: PathBuf,
        /// Comma-separated evaluation weights v_1..v_q; defaults to the service's.
        #[arg(long, value_delimiter = ',')]
        eval_weights: Option<Vec<f64>>,
        /// Phase name; defaults to the shortest-lead phase.
        #[arg(long)]
        phase: Option<String>,
    },
    /// Score one or more forecast sources against observations.
    Score {
        #[arg(long)]
        service: PathBuf,
        /// `NAME=PATH`, or `PATH` (named after the file stem); repeatable.
        #[arg(long, required = true)]
        cases: Vec<String>,
        #[arg(long)]
        repair: bool,
        /// Skip the normalised weight-scheme comparison.
        #[arg(long)]
        no_schemes: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Run the synthetic heat-warning experiment.
    Synth {
        #[arg(long, default_value_t = 1_000_000)]
        n: u64,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, value_enum, default_value = "default")]
        heat_scaling: HeatScaling,
        /// Service whose severity, certainty and scaling replace the heat service.
        #[arg(long, conflicts_with = "heat_scaling")]
        service: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Column score tables for a service's weights.
    Report {
        #[arg(long)]
        service: PathBuf,
        #[arg(long, value_enum, default_value = "warning")]
        weights: Grid,
        #[arg(long, value_delimiter = ',')]
        eval_weights: Option<Vec<f64>>,
        #[arg(long)]
        phase: Option<String>,
    },
}

/// Runs the CLI with stdout and stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the CLI with explicit output streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn emit(text: &str, output: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    match output {
        Some(p) => std::fs::write(p, text).map_err(|source| Error::Io {
            path: p.display().to_string(),
            source,
        }),
        None => out.write_all(text.as_bytes()).map_err(|source| Error::Io {
            path: "<stdout>".into(),
            source,
        }),
    }
}

fn coherence(repair: bool) -> Coherence {
    if repair {
        Coherence::Repair
    } else {
        Coherence::Strict
    }
}

fn parse_source(spec: &str) -> (String, PathBuf) {
    match spec.split_once('=') {
        Some((name, path)) if !name.is_empty() => (name.to_string(), PathBuf::from(path)),
        _ => {
            let p = PathBuf::from(spec);
            let name = p.file_stem().map_or_else(|| spec.to_string(), |s| s.to_string_lossy().into_owned());
            (name, p)
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<()> {
    match command {
        Command::Validate { service } => {
            let s = load_service_config(&service)?;
            let names: Vec<&str> = s.phases.phases().iter().map(|p| p.name.as_str()).collect();
            emit(
                &format!(
                    "{}: valid ({} severity categories, {} probability thresholds, {} warning levels; phases {})\n",
                    s.name,
                    s.m(),
                    s.n(),
                    s.q(),
                    names.join(", ")
                ),
                None,
                out,
            )
        }
        Command::Warn {
            service,
            cases,
            cap,
            repair,
            output,
        } => {
            let s = load_service_config(&service)?;
            let records = load_cases(&cases)?;
            let warnings = warn_cases(&s, &records, coherence(repair))?;
            if let Some(cap_path) = cap {
                let entries = warnings
                    .iter()
                    .filter(|w| w.level > 0)
                    .map(|w| Ok((w, export_cap_entry(&w.forecast, &s, w.lead_hours)?)))
                    .collect::<Result<Vec<_>>>()?;
                emit(&render::cap_jsonl(&entries), Some(&cap_path), out)?;
            }
            emit(&render::warnings_csv(&warnings, &s), output.as_deref(), out)
        }
        Command::Weights {
            service,
            eval_weights,
            phase,
        } => {
            let s = load_service_config(&service)?;
            let (name, grid) = warning_grid(&s, eval_weights, phase.as_deref())?;
            let mut text = format!("warning weights for {} phase {name}\n", s.name);
            text.push_str(&render::render_weight_grid(&grid, &s));
            emit(&text, None, out)
        }
        Command::Score {
            service,
            cases,
            repair,
            no_schemes,
            format,
            output,
        } => {
            let s = load_service_config(&service)?;
            let sources = cases
                .iter()
                .map(|spec| {
                    let (name, path) = parse_source(spec);
                    Ok(ForecastSource {
                        name,
                        cases: load_cases(&path)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let options = EvaluationOptions {
                coherence: coherence(repair),
                compare_schemes: !no_schemes,
            };
            let report = run_evaluation(&s, &sources, options)?;
            let text = match format {
                Format::Text => render::render_score_report(&report),
                Format::Json => serde_json::to_string_pretty(&report).expect("serialisable") + "\n",
                Format::Csv => render::score_csv(&report),
            };
            emit(&text, output.as_deref(), out)
        }
        Command::Synth {
            n,
            seed,
            heat_scaling,
            service,
            format,
        } => {
            let scaling = match heat_scaling {
                HeatScaling::Default => presets::heat(),
                HeatScaling::Fitted => presets::heat_fitted(),
            };
            let mut config = ExperimentConfig::with_scaling(n, seed, scaling);
            if let Some(p) = service {
                config.service = load_service_config(&p)?;
            }
            let report = run_experiment(&config)?;
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&report).expect("serialisable") + "\n",
                _ => render::render_experiment(&report),
            };
            emit(&text, None, out)
        }
        Command::Report {
            service,
            weights,
            eval_weights,
            phase,
        } => {
            let s = load_service_config(&service)?;
            let (title, grid) = match weights {
                Grid::Rmas => ("RMaS weights".to_string(), s.rmas_grid()),
                Grid::Warning => {
                    let (name, g) = warning_grid(&s, eval_weights, phase.as_deref())?;
                    (format!("warning weights, phase {name}"), g)
                }
            };
            let mut text = format!("score tables for {} ({title})\n\n", s.name);
            text.push_str(&render::render_score_tables(&grid, &s)?);
            emit(&text, None, out)
        }
    }
}

fn warning_grid(
    s: &super::ServiceDefinition,
    eval_weights: Option<Vec<f64>>,
    phase: Option<&str>,
) -> Result<(String, crate::scoring::WeightGrid)> {
    let phase = match phase {
        Some(name) => s
            .phases
            .phase(name)
            .ok_or_else(|| Error::Input(format!("no phase named {name}")))?,
        None => s.phases.shortest(),
    };
    let grid = match eval_weights {
        Some(v) => {
            let v = EvaluationWeights::new(v)?;
            crate::scoring::warning_weights(&phase.scaling, &v)?
        }
        None => s.warning_grid(&phase.scaling),
    };
    Ok((phase.name.clone(), grid))
}
