//! Building the analysed instance from command-line arguments.

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use sst_core::coin::{parse_subspace, CoinAssignment};
use sst_core::families::{
    case_circulant, case_double_cone, case_gp, case_k2m, grover_setup, FamilyCase,
};
use sst_core::graph::Graph;
use sst_core::rational::Q;
use sst_core::reduction::HermitianReduction;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    K2m,
    Circulant,
    DoubleCone,
    Gp,
}

/// Graph source, marked vertices, coins and subspace.
#[derive(Args, Debug, Clone, Default)]
pub struct Source {
    /// Graph file (`n <count>` then `u v` lines).
    #[arg(long, conflicts_with = "family")]
    pub graph: Option<PathBuf>,
    /// Built-in family; the marked pair, coins and `W` default to the family's.
    #[arg(long, value_enum)]
    pub family: Option<Family>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub c: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Cycle lengths of the double cone base, each a multiple of 4.
    #[arg(long, value_delimiter = ',')]
    pub cycles: Vec<usize>,
    /// Coin file (`coin <v> grover|basis ...`); unlisted vertices are Grover.
    #[arg(long)]
    pub coins: Option<PathBuf>,
    /// Subspace file (`w <entries>` per spanning vector at `a`).
    #[arg(long)]
    pub subspace: Option<PathBuf>,
    /// Sender.
    #[arg(long)]
    pub a: Option<usize>,
    /// Receiver.
    #[arg(long)]
    pub b: Option<usize>,
}

/// A fully resolved instance.
pub struct Instance {
    pub coins: CoinAssignment,
    pub a: usize,
    pub b: Option<usize>,
    pub w: Vec<Vec<Q>>,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn need(v: Option<usize>, flag: &str, family: &str) -> Result<usize, CliError> {
    v.ok_or_else(|| CliError::Input(format!("--family {family} needs --{flag}")))
}

impl Source {
    /// The family case selected by the flags, with its canonical setup.
    pub fn family_case(&self) -> Result<Option<FamilyCase>, CliError> {
        let Some(f) = self.family else {
            return Ok(None);
        };
        let case = match f {
            Family::K2m => {
                let m = need(self.m, "m", "k2m")?;
                case_k2m(m, grover_setup(m)?)?
            }
            Family::Circulant => case_circulant(
                need(self.m, "m", "circulant")?,
                need(self.c, "c", "circulant")?,
                need(self.d, "d", "circulant")?,
            )?,
            Family::DoubleCone => {
                if self.cycles.is_empty() {
                    return Err(CliError::Input(
                        "--family double-cone needs --cycles".into(),
                    ));
                }
                if let Some(&bad) = self.cycles.iter().find(|&&l| l == 0 || l % 4 != 0) {
                    return Err(CliError::Input(format!(
                        "cycle length {bad} is not a positive multiple of 4"
                    )));
                }
                let quarters: Vec<usize> = self.cycles.iter().map(|l| l / 4).collect();
                case_double_cone(&quarters, false)?
            }
            Family::Gp => {
                let k = need(self.k, "k", "gp")?;
                case_gp(k, need(self.n, "n", "gp")?, grover_setup(k)?)?
            }
        };
        Ok(Some(case))
    }

    pub fn resolve(&self) -> Result<Instance, CliError> {
        let case = self.family_case()?;
        let graph = match (&case, &self.graph) {
            (Some(c), _) => c.family.graph.clone(),
            (None, Some(p)) => Graph::parse(&read(p)?)?,
            (None, None) => {
                return Err(CliError::Input(
                    "one of --graph or --family is required".into(),
                ))
            }
        };
        let a = self
            .a
            .or(case.as_ref().map(|c| c.a()))
            .ok_or_else(|| CliError::Input("--a is required with --graph".into()))?;
        let b = self.b.or(case.as_ref().map(|c| c.b()));
        for v in std::iter::once(a).chain(b) {
            if v >= graph.vertex_count() {
                return Err(CliError::Input(format!("vertex {v} out of range")));
            }
        }
        if b == Some(a) {
            return Err(CliError::Input("marked vertices must be distinct".into()));
        }
        let coins = match (&self.coins, &case) {
            (Some(p), _) => CoinAssignment::parse(&graph, &read(p)?)?,
            (None, Some(c)) => c.coins.clone(),
            (None, None) => CoinAssignment::grover(&graph),
        };
        let w = match (&self.subspace, &case) {
            (Some(p), _) => parse_subspace(&read(p)?, graph.degree(a))?,
            (None, Some(c)) if self.coins.is_none() && self.a.is_none() => c.w.clone(),
            _ => coins.coin(a).basis().to_vec(),
        };
        Ok(Instance { coins, a, b, w })
    }
}

impl Instance {
    /// The receiver, or an input error naming `cmd`.
    pub fn receiver(&self, cmd: &str) -> Result<usize, CliError> {
        self.b
            .ok_or_else(|| CliError::Input(format!("`{cmd}` needs --b")))
    }

    /// Reduction for `(a, W) -> (b, W)`, or `(a, W) -> (a, W)` without a
    /// receiver.
    pub fn reduce(&self) -> Result<HermitianReduction, CliError> {
        let b = self.b.unwrap_or(self.a);
        Ok(sst_core::reduction::reduce(
            &self.coins,
            self.a,
            &self.w,
            b,
            &self.w,
        )?)
    }
}

/// `auto-a`, `auto-b` or a comma separated list of clone indices.
pub fn clone_set(spec: &str, red: &HermitianReduction) -> Result<Vec<usize>, CliError> {
    match spec {
        "auto-a" => Ok(red.s.clone()),
        "auto-b" => Ok(red.t.clone()),
        list => {
            let v = list
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| CliError::Input(format!("bad clone index `{t}`")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if let Some(&bad) = v.iter().find(|&&i| i >= red.dim()) {
                return Err(CliError::Input(format!(
                    "clone index {bad} out of range ({} clones)",
                    red.dim()
                )));
            }
            if v.is_empty() {
                return Err(CliError::Input("empty clone set".into()));
            }
            Ok(v)
        }
    }
}
