//! Batch front end: analytic curves, Monte Carlo estimates, comparison
//! reports, figure-preset sweeps, and inverse threshold queries, all emitted
//! as CSV plus an optional gnuplot script.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use csatn::analytic::{self, AnalyticOptions};
use csatn::config::{db_to_linear, Severity};
use csatn::montecarlo::{self, Link, McOptions};
use csatn::sweep::{self, Quantity, SweepSpec, ZeroTermMode};
use csatn::{Error, QuadratureSpec, ScenarioConfig};

#[derive(Parser)]
#[command(name = "csatn", about = "Coverage and rate of a satellite-aerial-terrestrial uplink")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LinkArg {
    Ta,
    As,
    Joint,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ZeroTermArg {
    On,
    Off,
    Both,
}

#[derive(Args)]
struct Common {
    /// JSON scenario configuration; missing keys take defaults.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Threshold grid in dB, as start:stop:step.
    #[arg(long, default_value = "-30:10:2.5")]
    grid: String,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form coverage over a threshold grid.
    Analytic {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "ta")]
        link: LinkArg,
        /// Include the zero-interferer term of the interference transform.
        #[arg(long, value_enum, default_value = "on")]
        zero_term: ZeroTermArg,
    },
    /// Monte Carlo coverage over a threshold grid.
    Simulate {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "ta")]
        link: LinkArg,
        #[arg(long, default_value_t = 50_000)]
        runs: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Worker threads (default: all cores).
        #[arg(long)]
        workers: Option<usize>,
        /// Also dump per-run SINRs to this path (flag `covered` uses the
        /// first grid threshold).
        #[arg(long)]
        dump_sinr: Option<PathBuf>,
    },
    /// Analytic vs Monte Carlo gap table on one config.
    Compare {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "ta")]
        link: LinkArg,
        #[arg(long, default_value_t = 50_000)]
        runs: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value = "both")]
        zero_term: ZeroTermArg,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Built-in figure-shaped parameter sweep.
    Sweep {
        /// Preset name (fig3..fig15).
        preset: String,
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "compare")]
        method: MethodArg,
        #[arg(long, default_value_t = 50_000)]
        runs: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value = "on")]
        zero_term: ZeroTermArg,
        #[arg(long)]
        workers: Option<usize>,
        /// Also write a gnuplot script next to the CSV (requires --out).
        #[arg(long)]
        plot: bool,
    },
    /// Threshold (dB) at which analytic coverage hits a target probability.
    FindThreshold {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "as")]
        link: LinkArg,
        #[arg(long)]
        target: f64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Analytic,
    Simulate,
    Compare,
}

fn load_config(path: &Option<PathBuf>) -> Result<ScenarioConfig, Error> {
    let cfg = match path {
        Some(p) => ScenarioConfig::from_json(&std::fs::read_to_string(p)?)?,
        None => ScenarioConfig::default(),
    };
    let violations = cfg.validate();
    let mut fatal = false;
    for v in &violations {
        eprintln!("{v}");
        fatal |= v.severity == Severity::Error;
    }
    if fatal {
        return Err(Error::Config("configuration has error-class violations".into()));
    }
    Ok(cfg)
}

fn write_out(out: &Option<PathBuf>, text: &str) -> Result<(), Error> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn zero_mode(z: ZeroTermArg) -> ZeroTermMode {
    match z {
        ZeroTermArg::On => ZeroTermMode::On,
        ZeroTermArg::Off => ZeroTermMode::Off,
        ZeroTermArg::Both => ZeroTermMode::Both,
    }
}

fn analytic_coverage(
    link: LinkArg,
    t: f64,
    cfg: &ScenarioConfig,
    opts: &AnalyticOptions,
) -> Result<f64, Error> {
    match link {
        LinkArg::Ta => analytic::coverage_ta(t, cfg, opts),
        LinkArg::As => analytic::coverage_as(t, cfg),
        LinkArg::Joint => analytic::coverage_joint(t, t, cfg, opts),
    }
}

fn run() -> Result<(), Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::Analytic { common, link, zero_term } => {
            let cfg = load_config(&common.config)?;
            let grid = sweep::parse_grid(&common.grid)?;
            let hash = cfg.fingerprint();
            let modes = zero_mode(zero_term);
            let mut out = String::from("threshold_db,link,zero_term,value,config_hash\n");
            let link_name = match link {
                LinkArg::Ta => "ta",
                LinkArg::As => "as",
                LinkArg::Joint => "joint",
            };
            for &zt in match modes {
                ZeroTermMode::On => &[true][..],
                ZeroTermMode::Off => &[false][..],
                ZeroTermMode::Both => &[true, false][..],
            } {
                let opts = AnalyticOptions { include_zero_term: zt, ..Default::default() };
                for &db in &grid {
                    let v = analytic_coverage(link, db_to_linear(db), &cfg, &opts)?;
                    out.push_str(&format!("{db},{link_name},{},{v},{hash}\n", u8::from(zt)));
                }
            }
            write_out(&common.out, &out)
        }
        Command::Simulate { common, link, runs, seed, workers, dump_sinr } => {
            let cfg = load_config(&common.config)?;
            let grid = sweep::parse_grid(&common.grid)?;
            let hash = cfg.fingerprint();
            let mc = McOptions { workers, ..Default::default() };
            let samples = montecarlo::simulate(&cfg, runs, seed, &mc)?;
            let mut out = String::from(
                "threshold_db,link,value,ci_halfwidth,runs,seed,config_hash\n",
            );
            let links: Vec<Link> = match link {
                LinkArg::Ta => vec![Link::Ta],
                LinkArg::As => vec![Link::As],
                LinkArg::Joint => vec![Link::Ta, Link::As],
            };
            for &db in &grid {
                let t = db_to_linear(db);
                match link {
                    LinkArg::Joint => {
                        let e = montecarlo::joint_coverage_estimate(&samples, t, t, seed);
                        out.push_str(&format!(
                            "{db},joint,{},{},{},{},{hash}\n",
                            e.estimate, e.ci_halfwidth, e.runs, e.seed
                        ));
                    }
                    _ => {
                        let e = montecarlo::coverage_estimate(&samples, links[0], t, seed);
                        out.push_str(&format!(
                            "{db},{},{},{},{},{},{hash}\n",
                            links[0], e.estimate, e.ci_halfwidth, e.runs, e.seed
                        ));
                    }
                }
            }
            if let Some(p) = dump_sinr {
                let dump_link = if link == LinkArg::As { Link::As } else { Link::Ta };
                std::fs::write(
                    p,
                    montecarlo::samples_to_csv(&samples, dump_link, db_to_linear(grid[0])),
                )?;
            }
            write_out(&common.out, &out)
        }
        Command::Compare { common, link, runs, seed, zero_term, workers } => {
            let cfg = load_config(&common.config)?;
            let grid = sweep::parse_grid(&common.grid)?;
            let links = match link {
                LinkArg::Ta => vec![Link::Ta],
                LinkArg::As => vec![Link::As],
                LinkArg::Joint => vec![Link::Ta, Link::As],
            };
            // degenerate one-value sweep over an always-present parameter
            let spec = SweepSpec {
                param: "k_rate".into(),
                values: vec![cfg.k_rate],
                base: cfg,
                grid_db: grid,
                links,
                quantity: Quantity::Coverage,
                runs,
                seed,
            };
            let mc = McOptions { workers, ..Default::default() };
            let rep =
                sweep::run_compare(&spec, zero_mode(zero_term), &mc, &QuadratureSpec::default())?;
            eprint!("{}", rep.render_text());
            write_out(&common.out, &rep.to_csv())
        }
        Command::Sweep { preset, common, method, runs, seed, zero_term, workers, plot } => {
            let cfg = load_config(&common.config)?;
            let spec = sweep::preset(&preset, &cfg, runs, seed)?;
            let mc = McOptions { workers, ..Default::default() };
            let text = match method {
                MethodArg::Analytic => {
                    let zt = zero_term != ZeroTermArg::Off;
                    sweep::run_analytic(
                        &spec,
                        &AnalyticOptions { include_zero_term: zt, ..Default::default() },
                    )?
                }
                MethodArg::Simulate => sweep::run_simulate(&spec, &mc)?,
                MethodArg::Compare => {
                    let rep = sweep::run_compare(
                        &spec,
                        zero_mode(zero_term),
                        &mc,
                        &QuadratureSpec::default(),
                    )?;
                    eprint!("{}", rep.render_text());
                    rep.to_csv()
                }
            };
            if plot {
                let csv_path = common
                    .out
                    .as_ref()
                    .ok_or_else(|| Error::Config("--plot requires --out".into()))?;
                let gp = sweep::plot_script(&csv_path.display().to_string(), &spec);
                std::fs::write(csv_path.with_extension("gp"), gp)?;
            }
            write_out(&common.out, &text)
        }
        Command::FindThreshold { config, link, target } => {
            let cfg = load_config(&config)?;
            let opts = AnalyticOptions::default();
            let db = match link {
                LinkArg::Ta => sweep::find_threshold(Link::Ta, target, &cfg, &opts)?,
                LinkArg::As => sweep::find_threshold(Link::As, target, &cfg, &opts)?,
                LinkArg::Joint => {
                    return Err(Error::Config(
                        "find-threshold supports single links only".into(),
                    ))
                }
            };
            println!("{db:.2}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
