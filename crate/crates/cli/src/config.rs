//! Flat `key = value` experiment configuration mirroring the CLI flags.

use std::fmt;
use std::str::FromStr;

use genprob::matgrp::DEFAULT_CAP;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Exact,
    Estimate,
    Sweep,
    TraceField,
    ScottCheck,
    Decay,
    AuditTable1,
}

impl Command {
    pub const ALL: [Command; 7] = [
        Command::Exact,
        Command::Estimate,
        Command::Sweep,
        Command::TraceField,
        Command::ScottCheck,
        Command::Decay,
        Command::AuditTable1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Exact => "exact",
            Command::Estimate => "estimate",
            Command::Sweep => "sweep",
            Command::TraceField => "trace-field",
            Command::ScottCheck => "scott-check",
            Command::Decay => "decay",
            Command::AuditTable1 => "audit-table1",
        }
    }
}

impl FromStr for Command {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown command {s:?}"))
    }
}

/// Exact enumeration or Monte Carlo, for sweeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Mc,
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "exact" => Ok(Mode::Exact),
            "mc" => Ok(Mode::Mc),
            _ => Err(format!("unknown mode {s:?}, expected exact or mc")),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Mc => "mc",
        })
    }
}

/// Every setting of one run. Serialization writes every key, so a config
/// file fully determines the run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub command: Command,
    pub family: String,
    pub q: Vec<u64>,
    pub r: Option<u128>,
    pub s: Option<u128>,
    /// Class representatives, as `a b;c d` matrices.
    pub class_c: Option<String>,
    pub class_d: Option<String>,
    pub mode: Mode,
    pub trials: u64,
    pub seed: u64,
    pub closure_cap: u128,
    pub threads: Option<usize>,
    /// Experiment name, hashed into sweep sub-seeds.
    pub name: String,
    pub gens: Vec<String>,
    pub group: String,
    pub dims: Vec<u64>,
    pub delta: Option<u32>,
    pub p: Option<u64>,
    pub degrees: Vec<u32>,
    pub word: String,
    /// Decay by exhausting `SL2(q)^2` instead of sampling.
    pub exhaustive: bool,
    pub output: Option<String>,
    pub plot: Option<String>,
}

pub const DEFAULT_TRIALS: u64 = 10_000;
pub const DEFAULT_NAME: &str = "default";
pub const DEFAULT_WORD: &str = "XYxy";

impl ExperimentConfig {
    pub fn new(command: Command, seed: u64) -> Self {
        ExperimentConfig {
            command,
            family: String::new(),
            q: Vec::new(),
            r: None,
            s: None,
            class_c: None,
            class_d: None,
            mode: Mode::Mc,
            trials: DEFAULT_TRIALS,
            seed,
            closure_cap: DEFAULT_CAP,
            threads: None,
            name: DEFAULT_NAME.into(),
            gens: Vec::new(),
            group: String::new(),
            dims: Vec::new(),
            delta: None,
            p: None,
            degrees: Vec::new(),
            word: DEFAULT_WORD.into(),
            exhaustive: false,
            output: None,
            plot: None,
        }
    }

    /// One `key = value` line per setting, in a fixed order.
    pub fn serialize(&self) -> String {
        let opt = |x: Option<String>| x.unwrap_or_default();
        let list = |v: Vec<String>, sep: &str| v.join(sep);
        let pairs: Vec<(&str, String)> = vec![
            ("command", self.command.name().into()),
            ("family", self.family.clone()),
            ("q", list(self.q.iter().map(u64::to_string).collect(), ",")),
            ("r", opt(self.r.map(|x| x.to_string()))),
            ("s", opt(self.s.map(|x| x.to_string()))),
            ("class_c", opt(self.class_c.clone())),
            ("class_d", opt(self.class_d.clone())),
            ("mode", self.mode.to_string()),
            ("trials", self.trials.to_string()),
            ("seed", self.seed.to_string()),
            ("closure_cap", self.closure_cap.to_string()),
            ("threads", opt(self.threads.map(|x| x.to_string()))),
            ("name", self.name.clone()),
            ("gens", list(self.gens.clone(), "|")),
            ("group", self.group.clone()),
            (
                "dims",
                list(self.dims.iter().map(u64::to_string).collect(), ","),
            ),
            ("delta", opt(self.delta.map(|x| x.to_string()))),
            ("p", opt(self.p.map(|x| x.to_string()))),
            (
                "degrees",
                list(self.degrees.iter().map(u32::to_string).collect(), ","),
            ),
            ("word", self.word.clone()),
            ("exhaustive", self.exhaustive.to_string()),
            ("output", opt(self.output.clone())),
            ("plot", opt(self.plot.clone())),
        ];
        pairs
            .into_iter()
            .map(|(k, v)| format!("{k} = {v}\n"))
            .collect()
    }

    /// Parses the format written by [`serialize`](Self::serialize). Blank
    /// lines and lines starting with `#` are skipped; missing keys take
    /// their defaults, with `default_seed` for a missing or empty `seed`.
    pub fn parse(text: &str, default_seed: u64) -> Result<Self, String> {
        let mut entries: Vec<(String, String)> = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key = value", i + 1))?;
            let k = k.trim().to_string();
            if entries.iter().any(|(e, _)| *e == k) {
                return Err(format!("line {}: duplicate key {k:?}", i + 1));
            }
            entries.push((k, v.trim().to_string()));
        }
        let command = entries
            .iter()
            .find(|(k, _)| k == "command")
            .ok_or("missing key \"command\"")?
            .1
            .parse()?;
        let mut c = ExperimentConfig::new(command, default_seed);
        for (k, v) in &entries {
            let v = v.as_str();
            let bad = |what: &str| format!("key {k}: {what} {v:?}");
            let num =
                |v: &str| -> Result<u128, String> { v.parse().map_err(|_| bad("bad number")) };
            let opt_num = |v: &str| -> Result<Option<u128>, String> {
                if v.is_empty() {
                    Ok(None)
                } else {
                    num(v).map(Some)
                }
            };
            let opt_str = |v: &str| (!v.is_empty()).then(|| v.to_string());
            let list = |v: &str| -> Result<Vec<u128>, String> {
                if v.is_empty() {
                    return Ok(Vec::new());
                }
                v.split(',').map(|x| num(x.trim())).collect()
            };
            let narrow = |x: u128| -> Result<u64, String> {
                u64::try_from(x).map_err(|_| bad("out of range"))
            };
            match k.as_str() {
                "command" => {}
                "family" => c.family = v.into(),
                "q" => c.q = list(v)?.into_iter().map(narrow).collect::<Result<_, _>>()?,
                "r" => c.r = opt_num(v)?,
                "s" => c.s = opt_num(v)?,
                "class_c" => c.class_c = opt_str(v),
                "class_d" => c.class_d = opt_str(v),
                "mode" => c.mode = v.parse()?,
                "trials" => c.trials = narrow(num(v)?)?,
                "seed" => {
                    if !v.is_empty() {
                        c.seed = narrow(num(v)?)?;
                    }
                }
                "closure_cap" => c.closure_cap = num(v)?,
                "threads" => c.threads = opt_num(v)?.map(|t| t as usize),
                "name" => c.name = v.into(),
                "gens" => {
                    c.gens = if v.is_empty() {
                        Vec::new()
                    } else {
                        v.split('|').map(|g| g.trim().to_string()).collect()
                    }
                }
                "group" => c.group = v.into(),
                "dims" => c.dims = list(v)?.into_iter().map(narrow).collect::<Result<_, _>>()?,
                "delta" => c.delta = opt_num(v)?.map(|d| d as u32),
                "p" => c.p = opt_num(v)?.map(narrow).transpose()?,
                "degrees" => c.degrees = list(v)?.into_iter().map(|d| d as u32).collect(),
                "word" => c.word = v.into(),
                "exhaustive" => {
                    c.exhaustive = v.parse().map_err(|_| bad("expected true or false"))?
                }
                "output" => c.output = opt_str(v),
                "plot" => c.plot = opt_str(v),
                _ => return Err(format!("unknown key {k:?}")),
            }
        }
        Ok(c)
    }
}
