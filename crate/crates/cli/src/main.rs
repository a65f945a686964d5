use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use genprob_cli::{
    resolve_seed, run, CliError, Command, ExperimentConfig, Mode, EXIT_INVALID, EXIT_OK,
};

/// Generation probabilities of SL2, SL3, Sp4 and their central quotients.
///
/// Exit codes: 0 success, 1 runtime failure or audit mismatch, 2 overflow
/// of the closure or enumeration cap, 3 invalid configuration.
///
/// The master seed comes from --seed, else GENPROB_SEED, else 0. A sweep
/// seeds each q with the first eight bytes (little endian) of SHA-256 over
/// "genprob/subseed/v1", the master seed and q as little-endian u64, and
/// the experiment name.
#[derive(Parser, Debug)]
#[command(name = "genprob", version)]
struct Cli {
    /// Print the resolved configuration instead of running it.
    #[arg(long, global = true)]
    dump_config: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Exact probability by enumeration.
    Exact(Experiment),
    /// Monte Carlo estimate with a Wilson 95% interval.
    Estimate(Experiment),
    /// Exact or Monte Carlo runs over a list of q.
    Sweep(Experiment),
    /// Irreducibility, trace field and generation verdict for a tuple.
    TraceField(TraceField),
    /// Dimension check for a pair of classes in an algebraic group.
    ScottCheck(ScottCheck),
    /// Fraction of pairs whose word trace lies in a proper subfield.
    Decay(Decay),
    /// Recompute the tabulated class dimensions; exits 1 on a mismatch.
    AuditTable1(Output),
    /// Run a key = value configuration file.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Args, Debug)]
struct Output {
    /// CSV destination; stdout when absent.
    #[arg(long)]
    output: Option<String>,
    /// Write a gnuplot script for the CSV here.
    #[arg(long)]
    plot: Option<String>,
}

#[derive(Args, Debug)]
struct Experiment {
    /// SL2, SL3, Sp4, or with a P prefix for the central quotient.
    #[arg(long)]
    family: String,
    /// Field order, or a comma-separated list for sweeps.
    #[arg(long, value_delimiter = ',', required = true)]
    q: Vec<u64>,
    #[arg(long)]
    r: Option<u128>,
    #[arg(long)]
    s: Option<u128>,
    /// Representative of the first class, as "a b;c d".
    #[arg(long, allow_hyphen_values = true)]
    class_c: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    class_d: Option<String>,
    /// Sweep mode: exact or mc.
    #[arg(long, default_value = "mc")]
    mode: String,
    #[arg(long, default_value_t = genprob_cli::config::DEFAULT_TRIALS)]
    trials: u64,
    #[arg(long)]
    seed: Option<u64>,
    /// Largest group order decided or enumerated by closure.
    #[arg(long, default_value_t = genprob::matgrp::DEFAULT_CAP)]
    closure_cap: u128,
    #[arg(long)]
    threads: Option<usize>,
    /// Experiment name, part of the sweep sub-seeds.
    #[arg(long, default_value = genprob_cli::config::DEFAULT_NAME)]
    name: String,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
struct TraceField {
    #[arg(long)]
    family: String,
    #[arg(long)]
    q: u64,
    /// Generators, as "a b;c d"; repeat the flag for each.
    #[arg(long, required = true, allow_hyphen_values = true)]
    gens: Vec<String>,
    #[arg(long, default_value_t = genprob::matgrp::DEFAULT_CAP)]
    closure_cap: u128,
}

#[derive(Args, Debug)]
struct ScottCheck {
    /// Group type such as E8 or C2.
    #[arg(long)]
    group: String,
    /// Class dimensions, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    dims: Vec<u64>,
    /// Check the bound with this many trivial composition factors.
    #[arg(long)]
    delta: Option<u32>,
}

#[derive(Args, Debug)]
struct Decay {
    #[arg(long)]
    p: u64,
    #[arg(long, value_delimiter = ',', required = true)]
    degrees: Vec<u32>,
    /// Word in x, y with capitals for inverses.
    #[arg(long, default_value = genprob_cli::config::DEFAULT_WORD)]
    word: String,
    #[arg(long, default_value_t = genprob_cli::config::DEFAULT_TRIALS)]
    trials: u64,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    threads: Option<usize>,
    /// Count over all of SL2(q)^2 instead of sampling.
    #[arg(long)]
    exhaustive: bool,
    #[arg(long, default_value_t = genprob::matgrp::DEFAULT_CAP)]
    closure_cap: u128,
    #[command(flatten)]
    out: Output,
}

fn experiment(command: Command, e: Experiment) -> Result<ExperimentConfig, CliError> {
    let mut c = ExperimentConfig::new(command, resolve_seed(e.seed)?);
    c.family = e.family;
    c.q = e.q;
    c.r = e.r;
    c.s = e.s;
    c.class_c = e.class_c;
    c.class_d = e.class_d;
    c.mode = e.mode.parse::<Mode>().map_err(CliError::invalid)?;
    c.trials = e.trials;
    c.closure_cap = e.closure_cap;
    c.threads = e.threads;
    c.name = e.name;
    c.output = e.out.output;
    c.plot = e.out.plot;
    Ok(c)
}

fn to_config(cmd: Cmd) -> Result<ExperimentConfig, CliError> {
    match cmd {
        Cmd::Exact(e) => experiment(Command::Exact, e),
        Cmd::Estimate(e) => experiment(Command::Estimate, e),
        Cmd::Sweep(e) => experiment(Command::Sweep, e),
        Cmd::TraceField(t) => {
            let mut c = ExperimentConfig::new(Command::TraceField, resolve_seed(None)?);
            c.family = t.family;
            c.q = vec![t.q];
            c.gens = t.gens;
            c.closure_cap = t.closure_cap;
            Ok(c)
        }
        Cmd::ScottCheck(s) => {
            let mut c = ExperimentConfig::new(Command::ScottCheck, resolve_seed(None)?);
            c.group = s.group;
            c.dims = s.dims;
            c.delta = s.delta;
            Ok(c)
        }
        Cmd::Decay(d) => {
            let mut c = ExperimentConfig::new(Command::Decay, resolve_seed(d.seed)?);
            c.p = Some(d.p);
            c.degrees = d.degrees;
            c.word = d.word;
            c.trials = d.trials;
            c.threads = d.threads;
            c.exhaustive = d.exhaustive;
            c.closure_cap = d.closure_cap;
            c.output = d.out.output;
            c.plot = d.out.plot;
            Ok(c)
        }
        Cmd::AuditTable1(o) => {
            let mut c = ExperimentConfig::new(Command::AuditTable1, resolve_seed(None)?);
            c.output = o.output;
            c.plot = o.plot;
            Ok(c)
        }
        Cmd::Run { config } => {
            let text = std::fs::read_to_string(&config)
                .map_err(|e| CliError::invalid(format!("{}: {e}", config.display())))?;
            ExperimentConfig::parse(&text, resolve_seed(None)?).map_err(CliError::invalid)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INVALID,
            };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let dump = cli.dump_config;
    let result = to_config(cli.cmd).and_then(|c| {
        if dump {
            Ok(genprob_cli::RunOutput {
                code: EXIT_OK,
                stdout: c.serialize(),
                stderr: String::new(),
            })
        } else {
            run(&c)
        }
    });
    match result {
        Ok(out) => {
            print!("{}", out.stdout);
            eprint!("{}", out.stderr);
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("genprob: {}", e.message);
            ExitCode::from(e.code as u8)
        }
    }
}
