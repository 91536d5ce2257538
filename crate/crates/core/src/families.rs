//! End-to-end runs on the graph families with known transfer: build the
//! walk and subspace, run the decider, the exact Chebyshev check and the
//! simulation, and compare against the expected time.

use std::fmt;

use num_traits::Zero;
use rand::Rng;

use crate::coin::{CoinAssignment, ReflectionCoin};
use crate::cospec::strong_cospectral_exact;
use crate::decider::{
    decide_pretty_good_special, decide_transfer, special_support_c_sq, TransferVerdict,
};
use crate::error::{Error, Result};
use crate::graph::{double_cone, FamilyGraph, FamilySpec, Graph};
use crate::rational::{dot, primitive_direction, q, qf, residual, QMatrix, Q};
use crate::reduction::{exact_transfer_check, reduce};
use crate::walk::{complex_weights, prepare_pairs, sweep_fidelity, transfer_fidelity, Walk};

/// Fidelity threshold for a simulated transfer to count as perfect.
pub const PERFECT_FIDELITY: f64 = 1.0 - 1e-9;

/// Coin shared by the two marked vertices and the subspace `W` it fixes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedSetup {
    pub coin: ReflectionCoin,
    pub w: Vec<Vec<Q>>,
}

/// Grover coin with `W = span{1}`.
pub fn grover_setup(d: usize) -> Result<MarkedSetup> {
    Ok(MarkedSetup {
        coin: ReflectionCoin::grover(d)?,
        w: vec![vec![q(1); d]],
    })
}

/// Rational with numerator and denominator of absolute value at most 7.
pub fn small_rational(rng: &mut impl Rng) -> Q {
    qf(rng.random_range(-7..=7), rng.random_range(1..=7))
}

/// Whether exact Gram-Schmidt keeps at least `1e-3` of each vector's
/// squared norm, which keeps the numeric side well conditioned.
fn well_conditioned(vs: &[Vec<Q>]) -> bool {
    let mut basis: Vec<Vec<Q>> = Vec::new();
    for v in vs {
        let r = residual(v, &basis);
        if dot(&r, &r) * q(1000) < dot(v, v) {
            return false;
        }
        basis.push(r);
    }
    true
}

/// `count` random vectors of length `d` with small rational entries,
/// linearly independent and well conditioned.
pub fn random_vectors(d: usize, count: usize, rng: &mut impl Rng) -> Vec<Vec<Q>> {
    loop {
        let vs: Vec<Vec<Q>> = (0..count)
            .map(|_| (0..d).map(|_| small_rational(rng)).collect())
            .collect();
        if well_conditioned(&vs) {
            return vs.iter().map(|v| primitive_direction(v)).collect();
        }
    }
}

/// Reflection about a random rational subspace of rank in `1..=d`; `W` is
/// spanned by a random nonempty subset of the spanning vectors.
pub fn random_setup(d: usize, rng: &mut impl Rng) -> MarkedSetup {
    let rank = rng.random_range(1..=d);
    let dim = rng.random_range(1..=rank);
    let vs = random_vectors(d, rank, rng);
    let coin = ReflectionCoin::reflection_about(d, &vs).expect("independent vectors");
    MarkedSetup {
        coin,
        w: vs[..dim].to_vec(),
    }
}

/// A family instance with its expected transfer time.
#[derive(Clone, Debug)]
pub struct FamilyCase {
    pub name: String,
    pub family: FamilyGraph,
    pub coins: CoinAssignment,
    pub w: Vec<Vec<Q>>,
    pub expected_time: u64,
    pub expected_dim: usize,
    pub expected_gamma_known: bool,
}

/// Outcome of [`FamilyCase::run`].
#[derive(Clone, Debug)]
pub struct CaseReport {
    pub name: String,
    pub expected: u64,
    pub verdict: TransferVerdict,
    /// Exact `f_t(H) B_S = γ B_T` at the decided time.
    pub exact: bool,
    /// Simulated fidelity at the decided time, or the expected one when the
    /// decider found no transfer.
    pub fidelity: f64,
    pub dim_ok: bool,
}

impl CaseReport {
    pub fn passed(&self) -> bool {
        self.verdict.time == Some(self.expected)
            && self.exact
            && self.fidelity >= PERFECT_FIDELITY
            && self.dim_ok
    }
}

impl fmt::Display for CaseReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let got = self
            .verdict
            .time
            .map_or_else(|| "none".to_string(), |t| t.to_string());
        write!(
            f,
            "CASE {} expected={} got={} fidelity={:.12} status={}",
            self.name,
            self.expected,
            got,
            self.fidelity,
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

impl FamilyCase {
    fn new(
        name: String,
        family: FamilyGraph,
        setup: MarkedSetup,
        expected_time: u64,
        expected_dim: usize,
    ) -> Result<Self> {
        let coins = CoinAssignment::grover(&family.graph)
            .with(family.a, setup.coin.clone())?
            .with(family.b, setup.coin)?;
        Ok(FamilyCase {
            name,
            family,
            coins,
            w: setup.w,
            expected_time,
            expected_dim,
            expected_gamma_known: false,
        })
    }

    pub fn a(&self) -> usize {
        self.family.a
    }

    pub fn b(&self) -> usize {
        self.family.b
    }

    /// Decider, exact check and simulation.
    pub fn run(&self) -> Result<CaseReport> {
        let (a, b) = (self.a(), self.b());
        let red = reduce(&self.coins, a, &self.w, b, &self.w)?;
        let verdict = decide_transfer(&red, &red.s, &red.t)?;
        let exact = match (verdict.time, verdict.gamma) {
            (Some(t), Some(g)) => exact_transfer_check(&red, t as usize, g),
            _ => false,
        };
        let t = verdict.time.unwrap_or(self.expected_time) as usize;
        let fidelity = transfer_fidelity(&self.coins, a, b, &self.w, t, None)?.value;
        Ok(CaseReport {
            name: self.name.clone(),
            expected: self.expected_time,
            verdict,
            exact,
            fidelity,
            dim_ok: self.w.len() == self.expected_dim,
        })
    }
}

/// `K_{2,m}` with the given coin at both marked vertices; transfer at 2.
pub fn case_k2m(m: usize, setup: MarkedSetup) -> Result<FamilyCase> {
    let family = FamilySpec::CompleteBipartiteK2m { m }.build()?;
    let dim = setup.w.len();
    FamilyCase::new(format!("k2m(m={m},dim={dim})"), family, setup, 2, dim)
}

/// The two vectors spanning `W` on the circulant, over the neighbor order
/// of `0`: `e_c - e_{-d}` and `e_d - e_{-c}`.
pub fn circulant_subspace(graph: &Graph, m: usize, c: usize, d: usize) -> Vec<Vec<Q>> {
    let n = 2 * m;
    let vec_for = |plus: usize, minus: usize| {
        let mut v = vec![q(0); graph.degree(0)];
        v[graph.position(0, plus).expect("neighbor")] = q(1);
        v[graph.position(0, minus).expect("neighbor")] = q(-1);
        v
    };
    vec![vec_for(c, n - d), vec_for(d, n - c)]
}

/// Circulant `X(Z_{2m}, ±{c, d})`, coin reflecting about `W`; transfer at 4.
pub fn case_circulant(m: usize, c: usize, d: usize) -> Result<FamilyCase> {
    let family = FamilySpec::Circulant2m { m, c, d }.build()?;
    let w = circulant_subspace(&family.graph, m, c, d);
    let coin = ReflectionCoin::reflection_about(family.graph.degree(0), &w)?;
    FamilyCase::new(
        format!("circulant(m={m},c={c},d={d})"),
        family,
        MarkedSetup { coin, w },
        4,
        2,
    )
}

/// One vector per cycle taking values `1, 0, -1, 0` along it; with
/// `both_phases` also the shifted `0, 1, 0, -1`.
pub fn double_cone_subspace(quarter_lengths: &[usize], both_phases: bool) -> Vec<Vec<Q>> {
    let total: usize = quarter_lengths.iter().map(|m| 4 * m).sum();
    let pattern = [1, 0, -1, 0];
    let mut out = Vec::new();
    let mut start = 0;
    for &m in quarter_lengths {
        let shifts: &[usize] = if both_phases { &[0, 1] } else { &[0] };
        for &s in shifts {
            let mut v = vec![q(0); total];
            for i in 0..4 * m {
                v[start + i] = q(pattern[(i + 4 - s) % 4]);
            }
            out.push(v);
        }
        start += 4 * m;
    }
    out
}

/// Double cone over `C_{4 m_1} ∪ ... ∪ C_{4 m_k}`; transfer at 4.
pub fn case_double_cone(quarter_lengths: &[usize], both_phases: bool) -> Result<FamilyCase> {
    let family = FamilySpec::DoubleConeOverCycles {
        quarter_lengths: quarter_lengths.to_vec(),
    }
    .build()?;
    let w = double_cone_subspace(quarter_lengths, both_phases);
    let coin = ReflectionCoin::reflection_about(family.graph.degree(0), &w)?;
    let lengths: Vec<String> = quarter_lengths
        .iter()
        .map(|m| (4 * m).to_string())
        .collect();
    let dim = w.len();
    FamilyCase::new(
        format!("double-cone(C{},dim={dim})", lengths.join("+C")),
        family,
        MarkedSetup { coin, w },
        4,
        dim,
    )
}

/// `GP(k, n)` with the given coin at both endpoints; transfer at `n - 1`.
pub fn case_gp(k: usize, n: usize, setup: MarkedSetup) -> Result<FamilyCase> {
    let family = FamilySpec::GeneralizedPath { k, n }.build()?;
    let dim = setup.w.len();
    FamilyCase::new(
        format!("gp(k={k},n={n},dim={dim})"),
        family,
        setup,
        (n - 1) as u64,
        dim,
    )
}

/// Octahedron `= X(Z_6, ±{1, 2})` with Grover coins everywhere and
/// `W = span{1}`; transfer at 6.
pub fn case_octahedron_grover() -> Result<FamilyCase> {
    let family = FamilySpec::Circulant2m { m: 3, c: 1, d: 2 }.build()?;
    let setup = grover_setup(4)?;
    FamilyCase::new("octahedron-grover".into(), family, setup, 6, 1)
}

/// Result of the pretty good transfer analysis on a double cone.
#[derive(Clone, Debug, PartialEq)]
pub struct PrettyGoodReport {
    pub k: usize,
    pub c_sq: Q,
    pub pretty_good: bool,
    pub best_fidelity: f64,
    pub best_time: usize,
    pub kernel_dim: usize,
}

/// Default sweep length for pretty good searches.
pub const PRETTY_GOOD_T_MAX: usize = 100_000;
/// Early exit threshold for pretty good searches.
pub const PRETTY_GOOD_STOP: f64 = 1.0 - 1e-6;

/// Double cone over a `k`-regular base with `W = ker A(base)`, coins at the
/// cones reflecting about `W`. Decides pretty good transfer from the exact
/// support split and sweeps the simulated fidelity up to `t_max`.
pub fn case_pretty_good_cone(
    base_n: usize,
    base_edges: &[(usize, usize)],
    t_max: usize,
) -> Result<PrettyGoodReport> {
    let mut adj = QMatrix::zeros(base_n, base_n);
    let mut deg = vec![0usize; base_n];
    for &(u, v) in base_edges {
        if u >= base_n || v >= base_n {
            return Err(Error::VertexOutOfRange {
                vertex: u.max(v),
                n: base_n,
            });
        }
        if u != v && adj[(u, v)].is_zero() {
            adj[(u, v)] = q(1);
            adj[(v, u)] = q(1);
            deg[u] += 1;
            deg[v] += 1;
        }
    }
    let k = deg.first().copied().ok_or(Error::EmptyGraph)?;
    if deg.iter().any(|&x| x != k) {
        return Err(Error::NotRegular);
    }
    let kernel: Vec<Vec<Q>> = adj
        .kernel()
        .iter()
        .map(|v| primitive_direction(v))
        .collect();
    if kernel.is_empty() {
        return Err(Error::EmptyKernel);
    }
    let family = double_cone(base_n, base_edges)?;
    let coin = ReflectionCoin::reflection_about(base_n, &kernel)?;
    let asg = CoinAssignment::grover(&family.graph)
        .with(family.a, coin.clone())?
        .with(family.b, coin)?;
    let red = reduce(&asg, family.a, &kernel, family.b, &kernel)?;
    let split = strong_cospectral_exact(&red, &red.s, &red.t)?.ok_or(Error::UnsupportedSupport)?;
    let c_sq = special_support_c_sq(&split.plus, &split.minus)?;
    let pretty_good = decide_pretty_good_special(&c_sq)?;

    let walk = Walk::new(&asg);
    let pairs = prepare_pairs(
        &family.graph,
        &asg,
        family.a,
        family.b,
        &complex_weights(&kernel)?,
        None,
    )?;
    let mut best = (0usize, 0.0f64);
    sweep_fidelity(&walk, &pairs, t_max, |t, f| {
        if f.value > best.1 {
            best = (t, f.value);
        }
        best.1 < PRETTY_GOOD_STOP
    });
    Ok(PrettyGoodReport {
        k,
        c_sq,
        pretty_good,
        best_fidelity: best.1,
        best_time: best.0,
        kernel_dim: kernel.len(),
    })
}

/// A random connected graph with a random rational coin shared by a marked
/// pair of equal degree, Grover coins elsewhere.
#[derive(Clone, Debug)]
pub struct RandomInstance {
    pub coins: CoinAssignment,
    pub a: usize,
    pub b: usize,
    pub w: Vec<Vec<Q>>,
}

/// Draws a [`RandomInstance`] on `min_n..=max_n` vertices.
pub fn random_instance(rng: &mut impl Rng, min_n: usize, max_n: usize) -> RandomInstance {
    loop {
        let n = rng.random_range(min_n..=max_n);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(0.5) {
                    edges.push((u, v));
                }
            }
        }
        let Ok(graph) = Graph::new(n, &edges) else {
            continue;
        };
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| graph.degree(u) == graph.degree(v))
            .collect();
        if pairs.is_empty() {
            continue;
        }
        let (a, b) = pairs[rng.random_range(0..pairs.len())];
        let setup = random_setup(graph.degree(a), rng);
        let coins = CoinAssignment::grover(&graph)
            .with(a, setup.coin.clone())
            .and_then(|c| c.with(b, setup.coin))
            .expect("degrees match");
        return RandomInstance {
            coins,
            a,
            b,
            w: setup.w,
        };
    }
}
