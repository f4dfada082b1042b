//! Command-line front end: single-point reports, figure-reproducing sweeps,
//! Monte Carlo noise runs, and the six-angle parameter search.
//!
//! Exit codes: 0 success, 2 usage error, 3 I/O error, 4 unconverged search.

use std::f64::consts::PI;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lg_qutrit::error::Error;
use lg_qutrit::noise::{monte_carlo, Counts, NoiseConfig};
use lg_qutrit::output;
use lg_qutrit::preset::Preset;
use lg_qutrit::search::{find_violation_window, search_max_violation, sweep, AngleParam, Objective, SearchSpec, SweepSpec};
use lg_qutrit::stats::{lgi_report, DichotomicMap, EvolutionConfig};

const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_UNCONVERGED: u8 = 4;

#[derive(Parser)]
#[command(
    name = "lg-qutrit",
    about = "Leggett-Garg tests on a qutrit with ambiguous measurements",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact noise-free report for one set of evolution angles
    Point(PointArgs),
    /// Sweep one angle and emit a CSV of full reports
    Sweep(SweepArgs),
    /// Monte Carlo with waveplate misalignment and photon counting noise
    Montecarlo(McArgs),
    /// Search the six-angle space for LGI violations
    Search(SearchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct AngleArgs {
    /// Parameter-set preset: fig2 (set 1) or fig3 (set 2)
    #[arg(long)]
    preset: Option<Preset>,
    #[arg(long)]
    theta1: Option<f64>,
    #[arg(long)]
    chi1: Option<f64>,
    #[arg(long)]
    phi1: Option<f64>,
    #[arg(long)]
    theta2: Option<f64>,
    #[arg(long)]
    chi2: Option<f64>,
    #[arg(long)]
    phi2: Option<f64>,
    /// Interpret angle values as multiples of pi
    #[arg(long)]
    pi_units: bool,
}

impl AngleArgs {
    fn scale(&self) -> f64 {
        if self.pi_units {
            PI
        } else {
            1.0
        }
    }

    fn resolve(&self) -> Result<EvolutionConfig, Error> {
        let scale = self.scale();
        let mut cfg = match self.preset {
            Some(p) => p.config(),
            None => {
                let all = [self.theta1, self.chi1, self.phi1, self.theta2, self.chi2, self.phi2];
                if all.iter().any(|a| a.is_none()) {
                    return Err(Error::invalid("all six angles are required unless --preset is given"));
                }
                EvolutionConfig::new(
                    lg_qutrit::qutrit::EulerAngles::new(0.0, 0.0, 0.0),
                    lg_qutrit::qutrit::EulerAngles::new(0.0, 0.0, 0.0),
                )
            }
        };
        let overrides = [
            (AngleParam::Theta1, self.theta1),
            (AngleParam::Chi1, self.chi1),
            (AngleParam::Phi1, self.phi1),
            (AngleParam::Theta2, self.theta2),
            (AngleParam::Chi2, self.chi2),
            (AngleParam::Phi2, self.phi2),
        ];
        for (param, value) in overrides {
            if let Some(v) = value {
                cfg = param.with_value(&cfg, v * scale);
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Args)]
struct PointArgs {
    #[command(flatten)]
    angles: AngleArgs,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    angles: AngleArgs,
    /// Swept angle: theta1, chi1, phi1, theta2, chi2 or phi2
    #[arg(long, default_value = "theta2")]
    param: String,
    /// Sweep start (default 0)
    #[arg(long)]
    from: Option<f64>,
    /// Sweep end (default pi)
    #[arg(long)]
    to: Option<f64>,
    #[arg(long, default_value_t = 101)]
    steps: usize,
    /// Output CSV path (stdout if omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also report the violation window of K_A - (1+Delta_amb) on stderr
    #[arg(long)]
    window: bool,
}

#[derive(Args)]
struct McArgs {
    #[command(flatten)]
    angles: AngleArgs,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    /// Waveplate alignment error in degrees (one sigma)
    #[arg(long, default_value_t = 0.1)]
    sigma_deg: f64,
    #[arg(long, default_value_t = 2)]
    waveplates_per_angle: u32,
    /// Photons per run, or 'inf' for the infinite-statistics shortcut
    #[arg(long, default_value = "14000")]
    counts: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct SearchArgs {
    /// max-k or ambiguous-violation
    #[arg(long, default_value = "ambiguous-violation")]
    objective: String,
    /// Signalling penalty weight
    #[arg(long, default_value_t = 0.0)]
    lambda: f64,
    /// Coarse grid points per axis
    #[arg(long, default_value_t = 8)]
    resolution: usize,
    /// Coordinate-descent step tolerance in radians
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long, default_value_t = 5_000_000)]
    max_evals: u64,
    /// Lower bound for every angle (default 0)
    #[arg(long)]
    lo: Option<f64>,
    /// Upper bound for every angle (default pi)
    #[arg(long)]
    hi: Option<f64>,
    /// Interpret --lo/--hi as multiples of pi
    #[arg(long)]
    pi_units: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Point(args) => cmd_point(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Montecarlo(args) => cmd_montecarlo(args),
        Command::Search(args) => cmd_search(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::InvalidInput(_) => EXIT_USAGE,
                Error::Io(_) => EXIT_IO,
            };
            ExitCode::from(code)
        }
    }
}

fn cmd_point(args: PointArgs) -> Result<u8, Error> {
    let cfg = args.angles.resolve()?;
    let report = lgi_report(&cfg, &DichotomicMap::default())?;
    match args.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&output::report_json(&cfg, &report)).expect("json")),
        Format::Csv => {
            println!("{}", output::csv_header());
            println!("{}", output::csv_row(&output::record_values(&cfg, &report)));
        }
    }
    Ok(0)
}

fn cmd_sweep(args: SweepArgs) -> Result<u8, Error> {
    let base = args.angles.resolve()?;
    let param: AngleParam = args.param.parse()?;
    let scale = args.angles.scale();
    let spec = SweepSpec {
        base,
        param,
        start: args.from.map(|v| v * scale).unwrap_or(0.0),
        end: args.to.map(|v| v * scale).unwrap_or(PI),
        steps: args.steps,
    };
    let qmap = DichotomicMap::default();
    let rows = sweep(&spec, &qmap)?;

    let mut body = String::new();
    body.push_str(&output::csv_header());
    body.push('\n');
    for row in &rows {
        body.push_str(&output::csv_row(&output::record_values(&row.config, &row.report)));
        body.push('\n');
    }
    match &args.out {
        Some(path) => std::fs::write(path, body)?,
        None => {
            std::io::stdout().write_all(body.as_bytes())?;
        }
    }

    if args.window {
        let w = find_violation_window(&spec, &qmap, 1e-4 * PI)?;
        if w.intervals.is_empty() {
            eprintln!("violation window of {}: none", param.label());
        }
        for (lo, hi) in &w.intervals {
            eprintln!(
                "violation window of {}: [{:.6}pi, {:.6}pi]",
                param.label(),
                lo / PI,
                hi / PI
            );
        }
    }
    Ok(0)
}

fn cmd_montecarlo(args: McArgs) -> Result<u8, Error> {
    let cfg = args.angles.resolve()?;
    let noise = NoiseConfig {
        sigma_waveplate_deg: args.sigma_deg,
        waveplates_per_angle: args.waveplates_per_angle,
        counts_per_run: args.counts.parse::<Counts>()?,
        trials: args.trials,
        seed: args.seed,
    };
    let summary = monte_carlo(&cfg, &DichotomicMap::default(), &noise)?;
    match args.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&output::summary_json(&summary)).expect("json")),
        Format::Csv => print!("{}", output::summary_csv(&summary)),
    }
    Ok(0)
}

fn cmd_search(args: SearchArgs) -> Result<u8, Error> {
    let scale = if args.pi_units { PI } else { 1.0 };
    let lo = args.lo.map(|v| v * scale).unwrap_or(0.0);
    let hi = args.hi.map(|v| v * scale).unwrap_or(PI);
    let spec = SearchSpec {
        bounds: [(lo, hi); 6],
        objective: args.objective.parse::<Objective>()?,
        lambda: args.lambda,
        resolution: args.resolution,
        tolerance: args.tol,
        max_evaluations: args.max_evals,
    };
    let res = search_max_violation(&spec, &DichotomicMap::default())?;

    match args.format {
        Format::Json => {
            let mut angles = serde_json::Map::new();
            for param in AngleParam::ALL {
                angles.insert(
                    format!("{}_pi", param.label()),
                    (param.get(&res.config) / PI).into(),
                );
            }
            let mut map = serde_json::Map::new();
            map.insert("converged".to_string(), res.converged.into());
            map.insert("evaluations".to_string(), res.evaluations.into());
            map.insert("objective".to_string(), res.objective_value.into());
            map.insert("angles".to_string(), serde_json::Value::Object(angles));
            map.insert("report".to_string(), output::report_json(&res.config, &res.report));
            println!("{}", serde_json::to_string_pretty(&serde_json::Value::Object(map)).expect("json"));
        }
        Format::Csv => {
            println!("{},converged,evaluations,objective", output::csv_header());
            println!(
                "{},{},{},{}",
                output::csv_row(&output::record_values(&res.config, &res.report)),
                res.converged,
                res.evaluations,
                output::format_value(res.objective_value)
            );
        }
    }
    if res.converged {
        Ok(0)
    } else {
        Ok(EXIT_UNCONVERGED)
    }
}
