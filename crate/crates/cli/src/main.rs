//! Command-line driver: graph generation, single tests, Monte Carlo
//! calibration and power sweeps, brute-force oracle comparisons, and the
//! exact identity suite.
//!
//! Exit codes: 0 success, 1 identity/acceptance failure, 2 config error,
//! 3 numerical error.

use clap::{Args, Parser, Subcommand};
use signet_core::error::SignetError;
use signet_core::graph_models::{estimate_p_hat, sample_er, sample_sbm, GraphSample};
use signet_core::harness::{
    csv_with_provenance, identity_tables_csv, run_calibrate, run_identities, run_oracle_compare,
    run_power_curve, run_single_test, ExperimentConfig, ExperimentKind, TestSpec,
    CALIBRATION_HEADER, ORACLE_HEADER, POWER_HEADER, TEST_OUTCOME_HEADER,
};
use std::fs;
use std::process::ExitCode;

/// Spectral block-structure tests for random graphs.
#[derive(Parser)]
#[command(name = "signet", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a graph and write it as an edge list.
    Generate(GenerateArgs),
    /// Run one hypothesis test on an edge-list graph file.
    Test(TestArgs),
    /// Null calibration: empirical size and moments of the statistics.
    Calibrate(RunArgs),
    /// Power sweep over a grid of signal strengths.
    Power(RunArgs),
    /// Brute-force signed cycles vs their spectral constructions.
    Oracle(RunArgs),
    /// Exact combinatorial identity suite; optionally dump the tables.
    Identities(IdentityArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// Number of nodes.
    #[arg(long)]
    n: usize,
    /// Edge probability (within-block probability when --kappa >= 2).
    #[arg(long)]
    p: f64,
    /// Between-block probability; requires --kappa >= 2.
    #[arg(long)]
    q: Option<f64>,
    /// Number of blocks (1 = Erdos-Renyi).
    #[arg(long, default_value_t = 1)]
    kappa: usize,
    /// RNG seed; defaults to $SIGNET_SEED or 1.
    #[arg(long)]
    seed: Option<u64>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct TestArgs {
    /// Edge-list graph file.
    #[arg(long)]
    input: String,
    /// Statistic: la | lo | adaptive-odd | adaptive-all | lc.
    #[arg(long, default_value = "adaptive-odd")]
    kind: String,
    /// Hypothesized signal strength (required for la/lo/lc).
    #[arg(long)]
    t: Option<f64>,
    /// Test level.
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    /// Adaptive weight exponent offset.
    #[arg(long, default_value_t = 0.15)]
    epsilon: f64,
    /// Truncation degree ("auto" or an integer >= 3).
    #[arg(long, default_value = "auto")]
    k_n: String,
    /// assortative | disassortative.
    #[arg(long, default_value = "assortative")]
    sign: String,
    /// estimated | known (known requires --p-av).
    #[arg(long, default_value = "estimated")]
    centering: String,
    /// Model average connection probability for known centering.
    #[arg(long)]
    p_av: Option<f64>,
    /// Emit JSON instead of CSV.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct RunArgs {
    /// Flat key = value config file.
    #[arg(long)]
    config: Option<String>,
    /// Inline overrides, key=value (repeatable).
    #[arg(long = "set", value_name = "KEY=VALUE")]
    sets: Vec<String>,
    /// Override the seed; defaults to $SIGNET_SEED when neither is given.
    #[arg(long)]
    seed: Option<u64>,
    /// Output CSV path; stdout when omitted.
    #[arg(long)]
    out: Option<String>,
    /// Write an SVG power plot next to the CSV (power runs only).
    #[arg(long)]
    plot: bool,
}

#[derive(Args)]
struct IdentityArgs {
    /// Also dump the coefficient tables as CSV.
    #[arg(long)]
    tables: bool,
    /// Maximum degree for the table dump.
    #[arg(long, default_value_t = 12)]
    max_k: usize,
}

fn env_seed() -> u64 {
    std::env::var("SIGNET_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(1)
}

fn write_out(path: &Option<String>, content: &str) -> Result<(), SignetError> {
    match path {
        Some(p) => fs::write(p, content).map_err(SignetError::Io),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn load_config(args: &RunArgs, experiment: ExperimentKind) -> Result<ExperimentConfig, SignetError> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(SignetError::Io)?;
            ExperimentConfig::parse(&text)?
        }
        None => ExperimentConfig { seed: env_seed(), ..ExperimentConfig::default() },
    };
    cfg.experiment = experiment;
    for kv in &args.sets {
        let (k, v) = kv.split_once('=').ok_or_else(|| {
            SignetError::Config(format!("--set {kv}: expected KEY=VALUE"))
        })?;
        cfg.set(k.trim(), v.trim())?;
    }
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if args.out.is_some() {
        cfg.output_path = args.out.clone();
    }
    if args.plot {
        cfg.plot = true;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run() -> Result<bool, SignetError> {
    match Cli::parse().command {
        Command::Generate(a) => {
            let seed = a.seed.unwrap_or_else(env_seed);
            let graph = if a.kappa >= 2 {
                let q = a.q.ok_or_else(|| {
                    SignetError::Config("--kappa >= 2 requires --q".into())
                })?;
                sample_sbm(a.n, a.kappa, a.p, q, seed)?
            } else {
                sample_er(a.n, a.p, seed)?
            };
            write_out(&a.out, &graph.to_edge_list())?;
            Ok(true)
        }
        Command::Test(a) => {
            let text = fs::read_to_string(&a.input).map_err(SignetError::Io)?;
            let graph = GraphSample::from_edge_list(&text)?;
            let mut cfg = ExperimentConfig::default();
            cfg.set("statistic", &a.kind)?;
            if let Some(t) = a.t {
                cfg.test.t_hypothesized = Some(t);
            }
            cfg.set("alpha", &a.alpha.to_string())?;
            cfg.set("epsilon", &a.epsilon.to_string())?;
            cfg.set("k_n", &a.k_n)?;
            cfg.set("sign", &a.sign)?;
            cfg.set("centering", &a.centering)?;
            let spec: TestSpec = cfg.test;
            let outcome = run_single_test(&graph, &spec, a.p_av, None)?;
            if a.json {
                println!("{}", outcome.to_json());
            } else {
                println!("{TEST_OUTCOME_HEADER}");
                println!("{}", outcome.csv_row());
            }
            eprintln!(
                "{}: n = {}, p_hat = {:.6}, z = {:.4}, p = {:.4} -> {}",
                outcome.kind,
                outcome.n,
                estimate_p_hat(&graph),
                outcome.z,
                outcome.p_value,
                if outcome.reject { "REJECT the Erdos-Renyi null" } else { "no rejection" }
            );
            Ok(true)
        }
        Command::Calibrate(a) => {
            let cfg = load_config(&a, ExperimentKind::Calibrate)?;
            let rows = run_calibrate(&cfg)?;
            let csv = csv_with_provenance(
                CALIBRATION_HEADER,
                &rows.iter().map(|r| r.csv_row()).collect::<Vec<_>>(),
                &cfg,
                &rows.iter().map(|r| r.wall_time_seconds).collect::<Vec<_>>(),
            );
            write_out(&cfg.output_path, &csv)?;
            Ok(true)
        }
        Command::Power(a) => {
            let cfg = load_config(&a, ExperimentKind::PowerCurve)?;
            let rows = run_power_curve(&cfg)?;
            let csv = csv_with_provenance(
                POWER_HEADER,
                &rows.iter().map(|r| r.csv_row()).collect::<Vec<_>>(),
                &cfg,
                &rows.iter().map(|r| r.wall_time_seconds).collect::<Vec<_>>(),
            );
            write_out(&cfg.output_path, &csv)?;
            if cfg.plot {
                let svg = signet_core::harness::power_plot_svg(&rows, cfg.test.alpha);
                let path = cfg
                    .output_path
                    .as_deref()
                    .map(|p| format!("{p}.svg"))
                    .unwrap_or_else(|| "power.svg".to_string());
                fs::write(&path, svg).map_err(SignetError::Io)?;
                eprintln!("plot written to {path}");
            }
            Ok(true)
        }
        Command::Oracle(a) => {
            let cfg = load_config(&a, ExperimentKind::OracleCompare)?;
            let report = run_oracle_compare(&cfg)?;
            let csv = csv_with_provenance(
                ORACLE_HEADER,
                &report
                    .rows
                    .iter()
                    .map(|r| {
                        format!(
                            "{},{},{},{},{}",
                            r.rep, r.k, r.cycle_bruteforce, r.cycle_from_lss, r.diff
                        )
                    })
                    .collect::<Vec<_>>(),
                &cfg,
                &[],
            );
            write_out(&cfg.output_path, &csv)?;
            for s in &report.summaries {
                eprintln!(
                    "k = {}: reps = {}, sd(diff) = {:.4}, sd(bruteforce) = {:.4}, corr = {:.4}",
                    s.k, s.reps_used, s.sd_diff, s.sd_bruteforce, s.correlation
                );
            }
            if report.skipped > 0 {
                eprintln!("skipped {} degenerate replicate(s) (p_hat at 0 or 1)", report.skipped);
            }
            Ok(true)
        }
        Command::Identities(a) => {
            let checks = run_identities();
            let mut all_pass = true;
            println!("identity,status");
            for c in &checks {
                println!("{},{}", c.name, if c.pass { "pass" } else { "FAIL" });
                all_pass &= c.pass;
            }
            if a.tables {
                print!("{}", identity_tables_csv(a.max_k));
            }
            Ok(all_pass)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
