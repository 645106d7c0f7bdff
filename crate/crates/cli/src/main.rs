use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use curvedkit::render::{render_spec, Model, RenderOptions, RenderSpec};
use curvedkit::scenarios::{Expected, ScenarioName, ScenarioSpec};
use curvedkit::suite::{run_entry, run_suite, seed_override_from_env, RunOptions, SuiteConfig, SEED_ENV};
use curvedkit::trig;

/// Intersections of convex regions in S², R² and H², and their symmetries.
#[derive(Debug, Parser)]
#[command(name = "curvedkit", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a suite file and print its JSON report. Exits 1 if any entry fails.
    #[command(after_help = format!("{SEED_ENV}=<u64> replaces every entry's seed."))]
    Verify {
        suite: PathBuf,
        /// Write the report here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Include wall times in the report.
        #[arg(long)]
        timings: bool,
    },
    /// Run one cataloged scenario and print its report entry.
    Scenario {
        name: ScenarioName,
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = curvedkit::symmetry::DEFAULT_TOL)]
        tol: f64,
        /// Scenario parameter, repeatable.
        #[arg(long = "param", value_name = "KEY=VALUE", value_parser = parse_param)]
        params: Vec<(String, f64)>,
        /// Override the catalog's expected outcome.
        #[arg(long, value_parser = parse_expected)]
        expected: Option<Expected>,
        #[arg(long)]
        timings: bool,
    },
    /// Evaluate a closed-form relation.
    Formula {
        #[command(subcommand)]
        which: Formula,
    },
    /// Draw a region or an intersection as SVG.
    Render {
        spec: PathBuf,
        /// klein, poincare, stereographic or planar; the geometry's natural model by default.
        #[arg(long)]
        model: Option<Model>,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value_t = 512)]
        size: u32,
    },
}

#[derive(Debug, Subcommand)]
enum Formula {
    /// Chord angle of a circle of radius r whose centre is at signed distance c
    /// from a line, cut by the hypercycle at signed distance l.
    Rcl {
        #[arg(allow_hyphen_values = true)]
        r: f64,
        #[arg(allow_hyphen_values = true)]
        c: f64,
        #[arg(allow_hyphen_values = true)]
        l: f64,
    },
}

fn parse_param(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| format!("expected KEY=VALUE, got `{s}`"))?;
    let v: f64 = v.trim().parse().map_err(|_| format!("`{v}` is not a number"))?;
    Ok((k.trim().to_string(), v))
}

fn parse_expected(s: &str) -> Result<Expected, String> {
    serde_json::from_value(serde_json::Value::String(s.to_string())).map_err(|e| e.to_string())
}

/// A configuration problem: exit code 2.
struct Config(String);

impl<E: std::fmt::Display> From<E> for Config {
    fn from(e: E) -> Self {
        Config(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Config> {
    fs::read_to_string(path).map_err(|e| Config(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Config> {
    fs::write(path, text).map_err(|e| Config(format!("{}: {e}", path.display())))
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), Config> {
    match output {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<u8, Config> {
    match cli.command {
        Command::Verify { suite, output, timings } => {
            let text = read(&suite)?;
            let config = SuiteConfig::parse(&text).map_err(|e| Config(format!("{}: {e}", suite.display())))?;
            let opts = RunOptions {
                seed: seed_override_from_env()?,
                timings,
            };
            let report = run_suite(&config, opts);
            for e in &report.entries {
                let status = if e.pass { "PASS" } else { "FAIL" };
                match (&e.stats, &e.error) {
                    (Some(s), _) => eprintln!(
                        "{status} {:<32} interior {:>4}/{:<4} central {:>4} axial {:>4} none {:>4}",
                        e.name.as_str(),
                        s.trials_with_interior,
                        s.trials_attempted,
                        s.count_central,
                        s.count_axial,
                        s.count_none
                    ),
                    (None, Some(err)) => eprintln!("{status} {:<32} {err}", e.name.as_str()),
                    _ => {}
                }
            }
            eprintln!("{} passed, {} failed", report.passed, report.failed);
            let target = output.or_else(|| config.report.as_ref().map(PathBuf::from));
            emit(target.as_deref(), &report.to_json())?;
            Ok(report.exit_code() as u8)
        }
        Command::Scenario {
            name,
            n,
            seed,
            tol,
            params,
            expected,
            timings,
        } => {
            let mut spec = ScenarioSpec::new(name).with_n(n).with_seed(seed).with_tol(tol);
            for (k, v) in &params {
                spec = spec.with_param(k, *v);
            }
            spec.expected = expected;
            spec.validate()?;
            let opts = RunOptions {
                seed: seed_override_from_env()?,
                timings,
            };
            let entry = run_entry(&spec, opts);
            println!("{}", serde_json::to_string_pretty(&entry)?);
            Ok(if entry.pass { 0 } else { 1 })
        }
        Command::Formula {
            which: Formula::Rcl { r, c, l },
        } => {
            let exists = trig::chord_exists(r, c, l)?;
            let mut out = serde_json::json!({ "r": r, "c": c, "l": l, "exists": exists });
            if exists {
                let q = trig::solve_signed(r, c, l)?;
                out["omega"] = q.omega.into();
                out["d"] = q.d.into();
                out["alpha"] = q.alpha.into();
                out["sinh2_bc"] = q.sinh2_bc().into();
            }
            println!("{}", serde_json::to_string_pretty(&out)?);
            Ok(0)
        }
        Command::Render {
            spec,
            model,
            output,
            size,
        } => {
            let text = read(&spec)?;
            let parsed: RenderSpec =
                serde_json::from_str(&text).map_err(|e| Config(format!("{}: {e}", spec.display())))?;
            let model = model.unwrap_or_else(|| Model::default_for(parsed.geometry()));
            let opts = RenderOptions {
                size,
                ..RenderOptions::default()
            };
            let svg = render_spec(&parsed, model, &opts)?;
            write(&output, &svg)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
