//! Driver behind the `genprob` binary: turns an [`ExperimentConfig`] into
//! CSV output, plot scripts and an exit code.

pub mod config;

use std::fs;
use std::path::Path;

use genprob::algdata::{audit_table1, scott_inequality, scott_precondition, AlgGroupType};
use genprob::estimate::{
    decay_exact, exact_p, exact_p_classes, exact_whole, monte_carlo_p, parse_word, rate_constant,
    subfield_trace_decay, sweep, McOptions, PairSource, Record, SweepMode, SweepSpec,
};
use genprob::gentest::{generation_verdict, is_irreducible, trace_field_unchecked, Budget};
use genprob::matgrp::{ClassSpec, GroupSpec};
use genprob::report::{plot_script, records_to_string, write_audit, write_decay, PlotKind};
use genprob::Error;

pub use config::{Command, ExperimentConfig, Mode};

pub const EXIT_OK: i32 = 0;
/// Runtime failure such as an unwritable output file, or audit mismatches.
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_OVERFLOW: i32 = 2;
pub const EXIT_INVALID: i32 = 3;

/// Environment variable read for the master seed when no `--seed` is given.
pub const SEED_ENV: &str = "GENPROB_SEED";

/// A failed run: message and exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INVALID,
            message: msg.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Overflow { .. } => EXIT_OVERFLOW,
            _ => EXIT_INVALID,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

/// What a successful run prints and its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    /// Notes for stderr, kept out of the CSV.
    pub stderr: String,
}

/// The master seed: the flag if given, else `GENPROB_SEED`, else 0.
pub fn resolve_seed(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::invalid(format!("{SEED_ENV}={v:?} is not an unsigned integer"))),
        Err(_) => Ok(0),
    }
}

fn single_group(c: &ExperimentConfig) -> Result<GroupSpec, CliError> {
    if c.family.is_empty() {
        return Err(CliError::invalid("missing --family"));
    }
    match c.q.as_slice() {
        [q] => Ok(GroupSpec::from_q(&c.family, *q)?),
        _ => Err(CliError::invalid("this command takes exactly one --q")),
    }
}

enum Pairs {
    Whole,
    Orders(u128, u128),
    Classes(ClassSpec, ClassSpec),
}

fn pairs(c: &ExperimentConfig, g: &GroupSpec) -> Result<Pairs, CliError> {
    match (c.r, c.s, &c.class_c, &c.class_d) {
        (None, None, None, None) => Ok(Pairs::Whole),
        (Some(r), Some(s), None, None) => Ok(Pairs::Orders(r, s)),
        (None, None, Some(x), Some(y)) => {
            let class = |m: &str| -> Result<ClassSpec, CliError> {
                let rep = g.space().parse(m)?;
                Ok(ClassSpec::new(g.clone(), rep, m)?)
            };
            Ok(Pairs::Classes(class(x)?, class(y)?))
        }
        _ => Err(CliError::invalid(
            "give both --r and --s, or both --class-c and --class-d, or neither",
        )),
    }
}

fn budget(c: &ExperimentConfig) -> Budget {
    Budget {
        closure_cap: c.closure_cap,
    }
}

/// Writes `text` to the configured output, or returns it for stdout.
fn emit(c: &ExperimentConfig, text: String, kind: Option<PlotKind>) -> Result<String, CliError> {
    let io = |e: std::io::Error| CliError {
        code: EXIT_FAILURE,
        message: e.to_string(),
    };
    if let Some(plot) = &c.plot {
        let (Some(out), Some(kind)) = (&c.output, kind) else {
            return Err(CliError::invalid(
                "--plot needs --output and a command with CSV rows",
            ));
        };
        let png = Path::new(plot).with_extension("png");
        fs::write(plot, plot_script(kind, out, &png.to_string_lossy())).map_err(io)?;
    }
    match &c.output {
        Some(path) => {
            fs::write(path, text).map_err(io)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn ok(stdout: String) -> Result<RunOutput, CliError> {
    Ok(RunOutput {
        code: EXIT_OK,
        stdout,
        stderr: String::new(),
    })
}

/// Runs one configured command.
pub fn run(c: &ExperimentConfig) -> Result<RunOutput, CliError> {
    match c.command {
        Command::Exact => {
            let g = single_group(c)?;
            let res = match pairs(c, &g)? {
                Pairs::Whole => exact_whole(&g, c.closure_cap)?,
                Pairs::Orders(r, s) => exact_p(&g, r, s, c.closure_cap)?,
                Pairs::Classes(x, y) => exact_p_classes(&g, &x, &y, c.closure_cap)?,
            };
            ok(emit(
                c,
                records_to_string(&[Record::Exact(res)])?,
                Some(PlotKind::Probability),
            )?)
        }
        Command::Estimate => {
            let g = single_group(c)?;
            let source = match pairs(c, &g)? {
                Pairs::Whole => PairSource::WholeGroup,
                Pairs::Orders(r, s) => PairSource::Orders { r, s },
                Pairs::Classes(x, y) => PairSource::Classes(x, y),
            };
            let opts = McOptions {
                trials: c.trials,
                seed: c.seed,
                threads: c.threads,
                budget: budget(c),
                class_cap: c.closure_cap,
            };
            let rep = monte_carlo_p(&g, &source, &opts)?;
            ok(emit(
                c,
                records_to_string(&[Record::Estimate(rep)])?,
                Some(PlotKind::Probability),
            )?)
        }
        Command::Sweep => {
            if c.class_c.is_some() || c.class_d.is_some() {
                return Err(CliError::invalid(
                    "sweep takes --r and --s, not class representatives",
                ));
            }
            let orders = match (c.r, c.s) {
                (Some(r), Some(s)) => Some((r, s)),
                (None, None) => None,
                _ => return Err(CliError::invalid("give both --r and --s, or neither")),
            };
            let spec = SweepSpec {
                name: c.name.clone(),
                family: c.family.clone(),
                qs: c.q.clone(),
                mode: match c.mode {
                    Mode::Exact => SweepMode::Exact,
                    Mode::Mc => SweepMode::MonteCarlo,
                },
                orders,
                trials: c.trials,
                seed: c.seed,
                closure_cap: c.closure_cap,
                threads: c.threads,
            };
            let rows = sweep(&spec)?;
            let points: Vec<_> = rows.iter().filter_map(|r| r.q_point()).collect();
            let stdout = emit(c, records_to_string(&rows)?, Some(PlotKind::Probability))?;
            let stderr = match rate_constant(&points) {
                Some(k) => format!("fitted c in 1 - P = c q^(-1/2): {k:.6}\n"),
                None => String::new(),
            };
            Ok(RunOutput {
                code: EXIT_OK,
                stdout,
                stderr,
            })
        }
        Command::TraceField => {
            let g = single_group(c)?;
            if c.gens.is_empty() {
                return Err(CliError::invalid("missing --gens"));
            }
            let gens = c
                .gens
                .iter()
                .map(|m| g.space().parse(m))
                .collect::<Result<Vec<_>, _>>()?;
            let irreducible = is_irreducible(g.space(), &gens)?;
            let degree = trace_field_unchecked(g.space(), &gens)?;
            let verdict = generation_verdict(&g, &gens, &budget(c))?;
            ok(format!(
                "irreducible={irreducible}\ntrace_field={degree}\nfield_degree={}\nverdict={}\n",
                g.field().a(),
                verdict.to_record()
            ))
        }
        Command::ScottCheck => {
            let g: AlgGroupType = c.group.parse()?;
            let holds = match c.delta {
                None => match c.dims.as_slice() {
                    [x, y] => scott_precondition(g, *x, *y)?,
                    _ => {
                        return Err(CliError::invalid(
                            "--dims takes two class dimensions without --delta",
                        ))
                    }
                },
                Some(d) => scott_inequality(g, &c.dims, d)?,
            };
            ok(format!("{holds}\n"))
        }
        Command::Decay => {
            let p = c.p.ok_or_else(|| CliError::invalid("missing --p"))?;
            if c.degrees.is_empty() {
                return Err(CliError::invalid("missing --degrees"));
            }
            let word = parse_word(&c.word)?;
            let rows = if c.exhaustive {
                c.degrees
                    .iter()
                    .map(|&a| decay_exact(p, a, &word, c.closure_cap))
                    .collect::<Result<Vec<_>, _>>()?
            } else {
                subfield_trace_decay(p, &c.degrees, &word, c.trials, c.seed, c.threads)?
            };
            let mut buf = Vec::new();
            write_decay(&mut buf, &rows)?;
            ok(emit(
                c,
                String::from_utf8(buf).expect("utf-8"),
                Some(PlotKind::Decay),
            )?)
        }
        Command::AuditTable1 => {
            let rows = audit_table1();
            let mut buf = Vec::new();
            write_audit(&mut buf, &rows)?;
            let stdout = emit(c, String::from_utf8(buf).expect("utf-8"), None)?;
            let bad = rows.iter().filter(|r| !r.matches()).count();
            Ok(RunOutput {
                code: if bad > 0 { EXIT_FAILURE } else { EXIT_OK },
                stdout,
                stderr: format!("{bad} mismatched rows\n"),
            })
        }
    }
}
