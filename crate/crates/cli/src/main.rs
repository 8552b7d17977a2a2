//! `zerocount` command-line front end.

mod commands;
mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use zerocount::montecarlo::CountModel;

use commands::{CliError, CliResult, Context, CoverageArgs, EstimateArgs, MarginalChoice, Output};
use report::Format;

#[derive(Parser)]
#[command(
    name = "zerocount",
    version,
    about = "Rate estimates and upper limits for counting experiments with few or zero counts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format. File-writing subcommands use csv when this is `table`.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,

    /// Directory for output files. Created if missing.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Tolerance override `key=value` (abs_tol, rel_tol, max_iter, quad_rel_tol). Repeatable.
    #[arg(long, global = true, value_delimiter = ',')]
    tol: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// ML, zero-class and Bayesian estimates for observed counts.
    Estimate(EstimateCmd),
    /// Write table3.csv, table4.csv and table5.csv.
    Tables,
    /// Write fig1.csv through fig5.csv.
    Figures,
    /// Compare a numerically marginalized posterior with the Poisson form.
    Marginalize(MarginalizeCmd),
    /// Draw seeded counts and summarize their dispersion.
    Simulate(SimulateCmd),
    /// Frequentist coverage of Bayesian upper limits.
    Coverage(CoverageCmd),
    /// Cutoff dependence of the JJ zero-count evidence.
    JjDivergence(JjCmd),
}

#[derive(Args)]
#[group(skip)]
#[command(group(ArgGroup::new("input").required(true).args(["counts", "counts_file"])))]
struct EstimateCmd {
    /// Comma-separated counts, one per run.
    #[arg(long, value_delimiter = ',')]
    counts: Option<Vec<u64>>,
    /// File with one count per line; `#` starts a comment.
    #[arg(long)]
    counts_file: Option<PathBuf>,
    /// Duration of each run.
    #[arg(long, default_value_t = 1.0)]
    t: f64,
    /// bl, jj, jr, me or custom:a,b. Repeatable; all four catalog priors by default.
    #[arg(long)]
    prior: Vec<String>,
    /// Credibility levels. Repeatable or comma-separated; 0.90, 0.95, 0.99 by default.
    #[arg(long, value_delimiter = ',')]
    cl: Vec<f64>,
    /// Tail probability for the zero-class limit.
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum MarginalArg {
    Zpoisson,
    Nb,
}

#[derive(Args)]
struct MarginalizeCmd {
    #[arg(long, value_enum)]
    model: MarginalArg,
    /// Observed count.
    #[arg(long)]
    x: u64,
    /// Number of theta grid points on [0, x/2 + 10].
    #[arg(long, default_value_t = 201)]
    points: usize,
    /// Lower cutoff on the negative binomial shape.
    #[arg(long)]
    a_min: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SimModel {
    Poisson,
    Zpoisson,
    Nb,
}

#[derive(Args)]
struct SimulateCmd {
    #[arg(long, value_enum)]
    model: SimModel,
    /// Mean count per draw.
    #[arg(long)]
    theta: f64,
    /// Zero-inflation factor (zpoisson).
    #[arg(long)]
    psi: Option<f64>,
    /// Shape (nb).
    #[arg(long)]
    a: Option<f64>,
    /// Number of draws.
    #[arg(long, visible_alias = "bins", default_value_t = 100_000)]
    draws: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct CoverageCmd {
    /// True rate.
    #[arg(long)]
    rho: f64,
    #[arg(long, default_value_t = 1.0)]
    t: f64,
    /// Runs per replicate.
    #[arg(long, default_value_t = 1)]
    n: u64,
    #[arg(long, default_value = "bl")]
    prior: String,
    #[arg(long, default_value_t = 0.95)]
    cl: f64,
    #[arg(long, default_value_t = 1000)]
    reps: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct JjCmd {
    /// Evidence cutoffs. Repeatable or comma-separated.
    #[arg(long, value_delimiter = ',')]
    epsilon: Vec<f64>,
    /// Upper limit in counts.
    #[arg(long, default_value_t = 1.0)]
    u: f64,
}

fn sim_model(cmd: &SimulateCmd) -> CliResult<CountModel> {
    let need = |v: Option<f64>, flag: &str| {
        v.ok_or_else(|| CliError::input(format!("--{flag} is required for this model")))
    };
    Ok(match cmd.model {
        SimModel::Poisson => CountModel::Poisson { theta: cmd.theta },
        SimModel::Zpoisson => CountModel::ZPoisson {
            theta: cmd.theta,
            psi: need(cmd.psi, "psi")?,
        },
        SimModel::Nb => CountModel::NB {
            theta: cmd.theta,
            a: need(cmd.a, "a")?,
        },
    })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Estimate(_) => "estimate",
        Command::Tables => "tables",
        Command::Figures => "figures",
        Command::Marginalize(_) => "marginalize",
        Command::Simulate(_) => "simulate",
        Command::Coverage(_) => "coverage",
        Command::JjDivergence(_) => "jj-divergence",
    }
}

fn dispatch(cli: &Cli) -> CliResult<Output> {
    let ctx = Context {
        command: command_name(&cli.command),
        tol: commands::parse_tolerances(&cli.tol)?,
    };
    match &cli.command {
        Command::Estimate(c) => {
            let counts = match (&c.counts, &c.counts_file) {
                (Some(v), None) => v.clone(),
                (None, Some(p)) => commands::read_counts_file(p)?,
                _ => {
                    return Err(CliError::input(
                        "give exactly one of --counts or --counts-file",
                    ))
                }
            };
            let args = EstimateArgs {
                counts,
                t: c.t,
                priors: c.prior.clone(),
                cls: c.cl.clone(),
                alpha: c.alpha,
            };
            commands::estimate(&ctx, &args)
        }
        Command::Tables => commands::tables(&ctx),
        Command::Figures => commands::figures(&ctx),
        Command::Marginalize(c) => {
            let model = match c.model {
                MarginalArg::Zpoisson => MarginalChoice::ZPoisson,
                MarginalArg::Nb => MarginalChoice::Nb,
            };
            commands::marginalize(&ctx, model, c.x, c.points, c.a_min)
        }
        Command::Simulate(c) => commands::simulate(&ctx, sim_model(c)?, c.draws, c.seed),
        Command::Coverage(c) => {
            let args = CoverageArgs {
                rho: c.rho,
                t: c.t,
                n: c.n,
                prior: c.prior.clone(),
                cl: c.cl,
                reps: c.reps,
                seed: c.seed,
            };
            commands::coverage(&ctx, &args)
        }
        Command::JjDivergence(c) => commands::jj_divergence(&ctx, &c.epsilon, c.u),
    }
}

fn write_file(dir: &Path, name: &str, format: Format, body: &str) -> CliResult<PathBuf> {
    fs::create_dir_all(dir)
        .map_err(|e| CliError::input(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(format!("{name}.{}", format.extension()));
    fs::write(&path, body)
        .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display())))?;
    Ok(path)
}

fn run(cli: &Cli) -> CliResult<i32> {
    match dispatch(cli)? {
        Output::Single { report, code } => {
            let body = report.render(cli.format);
            match &cli.out {
                Some(dir) => {
                    let path = write_file(dir, command_name(&cli.command), cli.format, &body)?;
                    println!("wrote {}", path.display());
                }
                None => print!("{body}"),
            }
            if code == 3 {
                eprintln!("error: improper posterior for every requested prior");
            }
            Ok(code)
        }
        Output::Files(files) => {
            let format = if cli.format == Format::Table {
                Format::Csv
            } else {
                cli.format
            };
            let dir = cli.out.clone().unwrap_or_else(|| PathBuf::from("."));
            for (name, report) in files {
                let path = write_file(&dir, &name, format, &report.render(format))?;
                println!("wrote {}", path.display());
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code as u8)
        }
    }
}
