use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use qwalk_runner::angle::Angle;
use qwalk_runner::run::{chiral_doc, run_scenario, CHIRAL_HALF_WIDTH};
use qwalk_runner::scenario::{Scenario, ScenarioConfig, SweepConfig, BUILTIN};
use qwalk_runner::verify::verify;
use qwalk_core::WalkKind;

/// Environment variable holding the default output directory.
const OUT_ENV: &str = "QWALK_OUT";

#[derive(Parser)]
#[command(name = "qwalk", version, about = "Discrete-time quantum walk simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario and write its tables and metadata.
    Run(RunArgs),
    /// Run every scenario of a TOML sweep file.
    Sweep(SweepArgs),
    /// Print the chirality report of a split-step walk.
    Chiral(ChiralArgs),
    /// Run the numerical self-checks.
    Verify,
    /// List the built-in scenarios.
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
}

#[derive(Args)]
struct OutputArgs {
    /// Output root; each scenario writes into `<out>/<name>/`.
    #[arg(long, env = OUT_ENV, default_value = "qwalk-out")]
    out: PathBuf,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct WalkArgs {
    /// Built-in scenario (hqw, sqw, tqw, ss-a, ss-b, ss-c, ss-d) or a custom name.
    scenario: Option<String>,
    /// Walk family: hqw, sqw, tqw or split-step.
    #[arg(long)]
    walk: Option<String>,
    /// Built-in scenario to start from when the name is custom.
    #[arg(long)]
    base: Option<String>,
    /// Coin angle, in radians or as a multiple of pi (`pi/4`).
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    theta1: Option<String>,
    #[arg(long = "theta2-minus", allow_hyphen_values = true)]
    theta2_minus: Option<String>,
    #[arg(long = "theta2-plus", allow_hyphen_values = true)]
    theta2_plus: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    interface: Option<i64>,
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long)]
    runs: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long = "half-width")]
    half_width: Option<usize>,
    /// Initial coin state `a_re,a_im,b_re,b_im`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_initial)]
    initial: Option<[f64; 4]>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    walk: WalkArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SweepArgs {
    /// Sweep file with `[[scenario]]` tables.
    #[arg(long)]
    config: PathBuf,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ChiralArgs {
    #[command(flatten)]
    walk: WalkArgs,
    /// Half width of the periodic lattice.
    #[arg(long = "sites-half-width", default_value_t = CHIRAL_HALF_WIDTH)]
    sites_half_width: usize,
    /// Also write the report as TOML to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_initial(s: &str) -> Result<[f64; 4], String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("`{p}`: {e}")))
        .collect::<Result<_, _>>()?;
    parts
        .try_into()
        .map_err(|v: Vec<f64>| format!("expected 4 comma-separated numbers, got {}", v.len()))
}

impl WalkArgs {
    fn to_config(&self) -> anyhow::Result<ScenarioConfig> {
        let name = match (&self.scenario, &self.walk) {
            (Some(n), _) => n.clone(),
            (None, Some(w)) if BUILTIN.contains(&w.as_str()) => w.clone(),
            (None, Some(_)) => "custom".to_string(),
            (None, None) => bail!("give a scenario name or --walk"),
        };
        Ok(ScenarioConfig {
            name,
            base: self.base.clone(),
            walk: self.walk.clone(),
            theta: self.theta.clone().map(Angle::Expr),
            theta1: self.theta1.clone().map(Angle::Expr),
            theta2_minus: self.theta2_minus.clone().map(Angle::Expr),
            theta2_plus: self.theta2_plus.clone().map(Angle::Expr),
            interface: self.interface,
            steps: self.steps,
            runs: self.runs,
            seed: self.seed,
            half_width: self.half_width,
            initial: self.initial,
        })
    }
}

fn run_one(scenario: &Scenario, out: &Path) -> anyhow::Result<()> {
    let dir = out.join(&scenario.name);
    eprintln!(
        "{}: {} walk, {} steps, {} realization(s)",
        scenario.name,
        scenario.kind().short_name(),
        scenario.steps,
        scenario.effective_runs()
    );
    let art = run_scenario(scenario, &dir)?;
    println!("{}", art.dir.display());
    Ok(())
}

fn main() -> ExitCode {
    match real_main() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn real_main() -> anyhow::Result<ExitCode> {
    match Cli::parse().command {
        Command::Run(args) => {
            let Format::Csv = args.output.format;
            run_one(&args.walk.to_config()?.resolve()?, &args.output.out)?;
        }
        Command::Sweep(args) => {
            let Format::Csv = args.output.format;
            let text = std::fs::read_to_string(&args.config)
                .with_context(|| format!("reading {}", args.config.display()))?;
            let scenarios = SweepConfig::parse(&text)?.resolve()?;
            for s in &scenarios {
                run_one(s, &args.output.out)?;
            }
        }
        Command::Chiral(args) => {
            let scenario = args.walk.to_config()?.resolve()?;
            if scenario.kind() != WalkKind::SplitStep {
                bail!("scenario `{}` is not a split-step walk", scenario.name);
            }
            let doc = chiral_doc(&scenario.template, args.sites_half_width)?;
            print!("{}", doc.to_text());
            if let Some(path) = args.out {
                qwalk_runner::output::write_toml(&path, &doc).with_context(|| format!("writing {}", path.display()))?;
            }
        }
        Command::Verify => {
            let outcomes = verify();
            for o in &outcomes {
                println!("[{}] {}: {}", if o.passed { "PASS" } else { "FAIL" }, o.name, o.detail);
            }
            if outcomes.iter().any(|o| !o.passed) {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::List => {
            for s in Scenario::catalog() {
                println!(
                    "{:<6} {:<12} steps={:<4} runs={}",
                    s.name,
                    s.kind().short_name(),
                    s.steps,
                    s.effective_runs()
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
