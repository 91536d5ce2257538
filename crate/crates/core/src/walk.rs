//! Double-precision simulation of `U = RC` on the arc space.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::coin::CoinAssignment;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::{orthogonalize, to_f64, Q};

pub type State = DVector<Complex64>;

const C0: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Walk operator with per-vertex complex coin blocks.
#[derive(Clone, Debug)]
pub struct Walk {
    graph: Graph,
    coins: Vec<DMatrix<Complex64>>,
}

impl Walk {
    pub fn new(asg: &CoinAssignment) -> Self {
        let coins = asg
            .coins()
            .iter()
            .map(|c| c.to_f64().map(|x| Complex64::new(x, 0.0)))
            .collect();
        Walk {
            graph: asg.graph().clone(),
            coins,
        }
    }

    /// Coins given directly as complex matrices (e.g. reflections about
    /// Gaussian-rational subspaces). Each must be unitary.
    pub fn with_complex_coins(graph: &Graph, coins: Vec<DMatrix<Complex64>>) -> Result<Self> {
        if coins.len() != graph.vertex_count() {
            return Err(Error::DimensionMismatch {
                expected: graph.vertex_count(),
                got: coins.len(),
            });
        }
        for (u, c) in coins.iter().enumerate() {
            let d = graph.degree(u);
            if c.nrows() != d || c.ncols() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: c.nrows(),
                });
            }
            let err = (c.adjoint() * c - DMatrix::<Complex64>::identity(d, d))
                .iter()
                .fold(0.0f64, |a, z| a.max(z.norm()));
            if err > 1e-10 {
                return Err(Error::InvalidCoin(format!(
                    "coin at vertex {u} is not unitary"
                )));
            }
        }
        Ok(Walk {
            graph: graph.clone(),
            coins,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn dim(&self) -> usize {
        self.graph.arc_count()
    }

    /// `C x`.
    pub fn apply_coin(&self, x: &State) -> State {
        let mut y = State::from_element(x.len(), C0);
        for u in 0..self.graph.vertex_count() {
            let off = self.graph.arc_offset(u);
            let d = self.graph.degree(u);
            let c = &self.coins[u];
            for i in 0..d {
                let mut acc = C0;
                for j in 0..d {
                    acc += c[(i, j)] * x[off + j];
                }
                y[off + i] = acc;
            }
        }
        y
    }

    /// `R x`: the amplitude on `(u, v)` moves to `(v, u)`.
    pub fn apply_shift(&self, x: &State) -> State {
        let mut y = State::from_element(x.len(), C0);
        for i in 0..x.len() {
            y[self.graph.reverse_arc(i)] = x[i];
        }
        y
    }

    pub fn step(&self, x: &State) -> State {
        self.apply_shift(&self.apply_coin(x))
    }

    /// `U^t x`.
    pub fn apply(&self, x: &State, t: usize) -> Result<State> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.len(),
            });
        }
        let mut y = x.clone();
        for _ in 0..t {
            y = self.step(&y);
        }
        Ok(y)
    }

    /// Iterator over `x, Ux, U^2 x, ...`.
    pub fn sweep(&self, x: State) -> impl Iterator<Item = State> + '_ {
        std::iter::successors(Some(x), move |s| Some(self.step(s)))
    }

    /// Dense `U` as a matrix (columns are images of arc basis vectors).
    pub fn matrix(&self) -> DMatrix<Complex64> {
        let n = self.dim();
        let mut m = DMatrix::from_element(n, n, C0);
        for j in 0..n {
            let mut e = State::from_element(n, C0);
            e[j] = Complex64::new(1.0, 0.0);
            m.set_column(j, &self.step(&e));
        }
        m
    }
}

/// `U^t x` for a rational-coin walk.
pub fn walk_apply(asg: &CoinAssignment, state: &State, t: usize) -> Result<State> {
    Walk::new(asg).apply(state, t)
}

/// A coin state `x_a(w)`: weights on the outgoing arcs of `a`, fixed by `C_a`.
#[derive(Clone, Debug)]
pub struct CoinState {
    pub vertex: usize,
    pub weights: Vec<Complex64>,
}

impl CoinState {
    pub fn new(asg: &CoinAssignment, vertex: usize, weights: Vec<Complex64>) -> Result<Self> {
        let n = asg.graph().vertex_count();
        if vertex >= n {
            return Err(Error::VertexOutOfRange { vertex, n });
        }
        let d = asg.graph().degree(vertex);
        if weights.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: weights.len(),
            });
        }
        let p = asg.coin(vertex).projection().to_f64();
        let norm = weights.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let mut resid = 0.0f64;
        for i in 0..d {
            let mut acc = C0;
            for j in 0..d {
                acc += weights[j] * p[(i, j)];
            }
            resid += (acc - weights[i]).norm_sqr();
        }
        if resid.sqrt() > 1e-12 * norm.max(1.0) {
            return Err(Error::NotFixedByCoin(vertex));
        }
        Ok(CoinState { vertex, weights })
    }

    pub fn from_rational(asg: &CoinAssignment, vertex: usize, w: &[Q]) -> Result<Self> {
        Self::new(
            asg,
            vertex,
            w.iter().map(|x| Complex64::new(to_f64(x), 0.0)).collect(),
        )
    }

    /// The arc-space vector `Σ_j w_j e_{(a, σ_a(j))}`.
    pub fn to_arc_vector(&self, graph: &Graph) -> State {
        embed(graph, self.vertex, &self.weights)
    }
}

/// Weights on the outgoing arcs of `u`, zero elsewhere.
pub fn embed(graph: &Graph, u: usize, w: &[Complex64]) -> State {
    let mut x = State::from_element(graph.arc_count(), C0);
    let off = graph.arc_offset(u);
    for (j, &z) in w.iter().enumerate() {
        x[off + j] = z;
    }
    x
}

/// Result of a fidelity measurement.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Fidelity {
    pub value: f64,
    pub phase: Complex64,
}

/// Pointwise transfer fidelity at time `t`.
///
/// `w` is a list of vectors over the neighbor order of `a`; they are
/// orthonormalized numerically. `map[j]` is the position at `b` identified
/// with position `j` at `a` (defaults to the identity). The phase is
/// estimated from the first basis vector, and the returned value is
/// `min_j Re(conj(γ) <x_b(w_j), U^t x_a(w_j)>)`, clamped to `[0, 1]`.
pub fn transfer_fidelity(
    asg: &CoinAssignment,
    a: usize,
    b: usize,
    w: &[Vec<Q>],
    t: usize,
    map: Option<&[usize]>,
) -> Result<Fidelity> {
    let walk = Walk::new(asg);
    transfer_fidelity_walk(&walk, asg, a, b, &complex_weights(w)?, t, map)
}

/// Rational weight vectors as complex ones, orthogonalized exactly first so
/// that nearly parallel inputs lose no precision.
pub fn complex_weights(w: &[Vec<Q>]) -> Result<Vec<Vec<Complex64>>> {
    Ok(orthogonalize(w)?
        .iter()
        .map(|v| v.iter().map(|x| Complex64::new(to_f64(x), 0.0)).collect())
        .collect())
}

/// As [`transfer_fidelity`] with a prebuilt walk and complex weights.
pub fn transfer_fidelity_walk(
    walk: &Walk,
    asg: &CoinAssignment,
    a: usize,
    b: usize,
    w: &[Vec<Complex64>],
    t: usize,
    map: Option<&[usize]>,
) -> Result<Fidelity> {
    let pairs = prepare_pairs(walk.graph(), asg, a, b, w, map)?;
    let images = pairs
        .iter()
        .map(|(xa, _)| walk.apply(xa, t))
        .collect::<Result<Vec<_>>>()?;
    Ok(pointwise_fidelity(&pairs, &images))
}

/// Fidelity of `images[j]` (the evolved `x_a(w_j)`) against the targets
/// `x_b(w_j)`, with the phase taken from the first pair.
pub fn pointwise_fidelity(pairs: &[(State, State)], images: &[State]) -> Fidelity {
    let mut phase = Complex64::new(1.0, 0.0);
    let mut value = f64::INFINITY;
    for (k, ((_, xb), y)) in pairs.iter().zip(images).enumerate() {
        let ip = xb.dotc(y);
        if k == 0 && ip.norm() > 1e-12 {
            phase = ip / ip.norm();
        }
        value = value.min((phase.conj() * ip).re);
    }
    Fidelity {
        value: value.clamp(0.0, 1.0),
        phase,
    }
}

/// Steps all pairs together for `t = 1..=t_max`, calling `visit(t, f)`
/// after each step; stops early when `visit` returns `false`.
pub fn sweep_fidelity(
    walk: &Walk,
    pairs: &[(State, State)],
    t_max: usize,
    mut visit: impl FnMut(usize, Fidelity) -> bool,
) {
    let mut images: Vec<State> = pairs.iter().map(|(xa, _)| xa.clone()).collect();
    for t in 1..=t_max {
        for y in images.iter_mut() {
            *y = walk.step(y);
        }
        if !visit(t, pointwise_fidelity(pairs, &images)) {
            break;
        }
    }
}

/// Orthonormalized `(x_a(w_j), x_b(w_j))` pairs.
pub fn prepare_pairs(
    graph: &Graph,
    asg: &CoinAssignment,
    a: usize,
    b: usize,
    w: &[Vec<Complex64>],
    map: Option<&[usize]>,
) -> Result<Vec<(State, State)>> {
    let da = graph.degree(a);
    let db = graph.degree(b);
    let ident: Vec<usize> = (0..da).collect();
    let map = map.unwrap_or(&ident);
    if da != db || map.len() != da || map.iter().any(|&j| j >= db) {
        return Err(Error::DimensionMismatch {
            expected: da,
            got: db,
        });
    }
    let ortho = orthonormalize(w)?;
    let mut out = Vec::with_capacity(ortho.len());
    for v in ortho {
        let sa = CoinState::new(asg, a, v.clone())?;
        let mut vb = vec![C0; db];
        for (j, &k) in map.iter().enumerate() {
            vb[k] = v[j];
        }
        let sb = CoinState::new(asg, b, vb)?;
        out.push((sa.to_arc_vector(graph), sb.to_arc_vector(graph)));
    }
    Ok(out)
}

/// Modified Gram-Schmidt; dependent inputs are an error.
pub fn orthonormalize(w: &[Vec<Complex64>]) -> Result<Vec<Vec<Complex64>>> {
    let mut out: Vec<Vec<Complex64>> = Vec::new();
    for v in w {
        let mut r = v.clone();
        for b in &out {
            let c: Complex64 = b.iter().zip(&r).map(|(x, y)| x.conj() * y).sum();
            for (ri, bi) in r.iter_mut().zip(b) {
                *ri -= c * bi;
            }
        }
        let n = r.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let scale = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if n <= 1e-10 * scale.max(1e-300) {
            return Err(Error::DependentVectors {
                rank: out.len(),
                count: w.len(),
            });
        }
        out.push(r.into_iter().map(|z| z / n).collect());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coin::ReflectionCoin;
    use crate::rational::q;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_state(n: usize, rng: &mut ChaCha8Rng) -> State {
        State::from_fn(n, |_, _| {
            Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        })
    }

    fn octahedron() -> Graph {
        crate::graph::FamilySpec::Circulant2m { m: 3, c: 1, d: 2 }
            .build()
            .unwrap()
            .graph
    }

    #[test]
    fn k2_shift() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let asg = CoinAssignment::grover(&g);
        let e = embed(&g, 0, &[Complex64::new(1.0, 0.0)]);
        let y = walk_apply(&asg, &e, 1).unwrap();
        assert_eq!(y, embed(&g, 1, &[Complex64::new(1.0, 0.0)]));
        assert_eq!(walk_apply(&asg, &e, 2).unwrap(), e);
        assert_eq!(walk_apply(&asg, &e, 0).unwrap(), e);
    }

    #[test]
    fn unitary_and_involutions() {
        let g = octahedron();
        let asg = CoinAssignment::grover(&g)
            .with(
                0,
                ReflectionCoin::reflection_about(4, &[vec![q(1), q(0), q(-1), q(2)]]).unwrap(),
            )
            .unwrap();
        let walk = Walk::new(&asg);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let x = random_state(walk.dim(), &mut rng);
            let y = walk.apply(&x, 25).unwrap();
            assert!((y.norm() - x.norm()).abs() < 1e-10 * 25.0);
            let cc = walk.apply_coin(&walk.apply_coin(&x));
            assert!((cc - &x).norm() < 1e-12);
            let rr = walk.apply_shift(&walk.apply_shift(&x));
            assert_eq!(rr, x);
        }
    }

    #[test]
    fn dimension_checked() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let asg = CoinAssignment::grover(&g);
        assert!(walk_apply(&asg, &State::zeros(3), 1).is_err());
    }

    #[test]
    fn coin_state_must_be_fixed() {
        let g = octahedron();
        let asg = CoinAssignment::grover(&g);
        assert!(CoinState::from_rational(&asg, 0, &[q(1), q(1), q(1), q(1)]).is_ok());
        assert_eq!(
            CoinState::from_rational(&asg, 0, &[q(1), q(0), q(0), q(0)]).unwrap_err(),
            Error::NotFixedByCoin(0)
        );
    }

    #[test]
    fn trivial_fidelity() {
        let g = octahedron();
        let asg = CoinAssignment::grover(&g);
        let f = transfer_fidelity(&asg, 0, 0, &[vec![q(1); 4]], 0, None).unwrap();
        assert!((f.value - 1.0).abs() < 1e-12);
        assert!((f.phase - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn complex_coins_must_be_unitary() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let ok = vec![DMatrix::from_element(1, 1, Complex64::new(0.0, 1.0)); 2];
        assert!(Walk::with_complex_coins(&g, ok).is_ok());
        let bad = vec![DMatrix::from_element(1, 1, Complex64::new(2.0, 0.0)); 2];
        assert!(Walk::with_complex_coins(&g, bad).is_err());
    }
}
