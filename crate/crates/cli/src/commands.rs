//! The subcommands. Each prints line-oriented output to stdout.

use std::io::{self, Write};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sst_core::cospec::{numeric_support, strong_cospectral_exact};
use sst_core::decider::{decide_periodicity, decide_transfer};
use sst_core::exactalg::{pole_support, psi, RatPoly};
use sst_core::families::{
    case_circulant, case_double_cone, case_gp, case_k2m, case_octahedron_grover, grover_setup,
    random_setup, FamilyCase,
};
use sst_core::rational::fmt_rational;
use sst_core::reduction::HermitianReduction;
use sst_core::walk::{complex_weights, orthonormalize, CoinState, Walk};

use crate::setup::{clone_set, Instance, Source};
use crate::{CliError, Format};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// Seed from `SST_SEED`, or the default.
pub fn seed() -> Result<u64, CliError> {
    match std::env::var("SST_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| {
            CliError::Input(format!("SST_SEED must be an unsigned integer, got `{s}`"))
        }),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn preamble(out: &mut dyn Write, inst: &Instance, red: &HermitianReduction) -> io::Result<()> {
    let g = inst.coins.graph();
    let b = inst.b.map_or_else(|| "-".to_string(), |b| b.to_string());
    writeln!(
        out,
        "# graph n={} arcs={} a={} b={b} dim(W)={} clones={}",
        g.vertex_count(),
        g.arc_count(),
        inst.a,
        inst.w.len(),
        red.dim()
    )
}

fn dump_h(out: &mut dyn Write, red: &HermitianReduction) -> io::Result<()> {
    for i in 0..red.dim() {
        let row: Vec<String> = red.h_rat.row(i).iter().map(fmt_rational).collect();
        writeln!(out, "H_RAT {}", row.join(" "))?;
    }
    let d: Vec<String> = red.delta_sq.iter().map(fmt_rational).collect();
    writeln!(out, "DELTA_SQ {}", d.join(" "))
}

fn fmt_roots(f: &RatPoly, tol: f64) -> String {
    let r: Vec<String> = f
        .real_roots_f64(tol)
        .iter()
        .map(|x| format!("{:.12}", x + 0.0))
        .collect();
    r.join(",")
}

pub struct ExactArgs<'a> {
    pub source: &'a Source,
    pub s: &'a str,
    pub t: &'a str,
    pub dump_h: bool,
    pub format: Format,
}

pub fn period(out: &mut dyn Write, args: ExactArgs<'_>) -> Result<(), CliError> {
    let inst = args.source.resolve()?;
    let red = inst.reduce()?;
    let s = clone_set(args.s, &red)?;
    let v = decide_periodicity(&red, &s)?;
    if args.format == Format::Human {
        preamble(out, &inst, &red)?;
        writeln!(out, "# g = {}", v.g)?;
    }
    if args.dump_h {
        dump_h(out, &red)?;
    }
    writeln!(out, "{v}")?;
    Ok(())
}

pub fn transfer(
    out: &mut dyn Write,
    args: ExactArgs<'_>,
    report_split: bool,
    tol: f64,
) -> Result<(), CliError> {
    let inst = args.source.resolve()?;
    inst.receiver("transfer")?;
    let red = inst.reduce()?;
    let s = clone_set(args.s, &red)?;
    let t = clone_set(args.t, &red)?;
    let v = decide_transfer(&red, &s, &t)?;
    if args.format == Format::Human {
        preamble(out, &inst, &red)?;
    }
    if args.dump_h {
        dump_h(out, &red)?;
    }
    writeln!(out, "{v}")?;
    if report_split {
        match strong_cospectral_exact(&red, &s, &t)? {
            Some(split) => {
                for (sign, fs) in [("+", &split.plus), ("-", &split.minus)] {
                    for f in fs {
                        writeln!(
                            out,
                            "SPLIT sign={sign} factor={} roots={}",
                            f.to_coeff_string(),
                            fmt_roots(f, 1e-6)
                        )?;
                    }
                }
            }
            None => writeln!(out, "SPLIT none")?,
        }
        let support: Vec<String> = numeric_support(&red, &s, tol)?
            .iter()
            .map(|x| format!("{:.12}", x + 0.0))
            .collect();
        writeln!(out, "NUMERIC support={}", support.join(","))?;
    }
    Ok(())
}

pub fn psi_cmd(out: &mut dyn Write, args: ExactArgs<'_>) -> Result<(), CliError> {
    let inst = args.source.resolve()?;
    let red = inst.reduce()?;
    let s = clone_set(args.s, &red)?;
    let t = if args.t == "auto-b" && inst.b.is_none() {
        s.clone()
    } else {
        clone_set(args.t, &red)?
    };
    let f = psi(&red, &s, &t)?;
    if args.format == Format::Human {
        preamble(out, &inst, &red)?;
        writeln!(out, "# psi = ({}) / ({})", f.num(), f.den())?;
    }
    if args.dump_h {
        dump_h(out, &red)?;
    }
    writeln!(out, "PSI {}", f.to_coeff_string())?;
    let poles: Vec<String> = pole_support(&f)
        .iter()
        .map(RatPoly::to_coeff_string)
        .collect();
    writeln!(out, "POLES {}", poles.join("; "))?;
    Ok(())
}

pub fn simulate(
    out: &mut dyn Write,
    source: &Source,
    state: &str,
    times: &[usize],
    tol: f64,
    format: Format,
) -> Result<(), CliError> {
    let inst = source.resolve()?;
    let k: usize = state
        .strip_prefix('w')
        .and_then(|s| s.parse().ok())
        .filter(|&k| k >= 1)
        .ok_or_else(|| CliError::Input(format!("--state must be w1, w2, ..., got `{state}`")))?;
    let basis = orthonormalize(&complex_weights(&inst.w)?)?;
    let v = basis.get(k - 1).ok_or_else(|| {
        CliError::Input(format!(
            "--state {state} but W has dimension {}",
            basis.len()
        ))
    })?;
    let graph = inst.coins.graph();
    let x0 = CoinState::new(&inst.coins, inst.a, v.clone())?.to_arc_vector(graph);
    let walk = Walk::new(&inst.coins);
    let clean = |x: f64| if x.abs() < tol { 0.0 } else { x };
    for &t in times {
        let y = walk.apply(&x0, t)?;
        if format == Format::Human {
            writeln!(out, "# t={t}")?;
            writeln!(out, "# tail head re im")?;
        }
        for (i, (u, w)) in graph.arcs().enumerate() {
            let (re, im) = (clean(y[i].re), clean(y[i].im));
            match format {
                Format::Human => writeln!(out, "{u} {w} {re:.12} {im:.12}")?,
                Format::Machine => writeln!(out, "AMP t={t} {u} {w} {re:.12} {im:.12}")?,
            }
        }
    }
    Ok(())
}

/// The default family suite: each family at several sizes, Grover coins
/// plus seeded random rational coins on `K_{2,m}` and the generalized paths.
fn default_suite(rng: &mut ChaCha8Rng) -> Result<Vec<FamilyCase>, CliError> {
    let mut out = Vec::new();
    for m in [1, 2, 3, 5, 8] {
        out.push(case_k2m(m, grover_setup(m)?)?);
        for _ in 0..2 {
            out.push(case_k2m(m, random_setup(m, rng))?);
        }
    }
    for (m, c, d) in [(3, 1, 2), (4, 1, 3), (5, 2, 3), (6, 1, 5)] {
        out.push(case_circulant(m, c, d)?);
    }
    for (k, n) in [(1, 3), (2, 4), (3, 5), (4, 6)] {
        out.push(case_gp(k, n, grover_setup(k)?)?);
        out.push(case_gp(k, n, random_setup(k, rng))?);
    }
    for q in [&[1, 2][..], &[1, 1, 3][..]] {
        out.push(case_double_cone(q, false)?);
    }
    out.push(case_octahedron_grover()?);
    Ok(out)
}

pub fn family(out: &mut dyn Write, source: &Source, format: Format) -> Result<(), CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed()?);
    let cases = match source.family_case()? {
        Some(c) => vec![c],
        None if source.graph.is_some() => {
            return Err(CliError::Input(
                "`family` takes --family flags, not --graph".into(),
            ))
        }
        None => default_suite(&mut rng)?,
    };
    let mut passed = 0;
    for c in &cases {
        let r = c.run()?;
        passed += usize::from(r.passed());
        writeln!(out, "{r}")?;
    }
    if format == Format::Human {
        writeln!(out, "# {passed}/{} cases passed", cases.len())?;
    }
    Ok(())
}
