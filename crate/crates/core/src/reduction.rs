//! Coin bases, the Hermitian matrix `H = N^T R N` kept as the rationally
//! similar pair `(H_rat, Δ²)`, Chebyshev evaluation and the blow-up `G`.

use std::ops::Range;

use nalgebra::DMatrix;
use num_traits::{One, Signed, Zero};

use crate::coin::CoinAssignment;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::numeric;
use crate::rational::{dot, orthogonalize, primitive_direction, q, residual, to_f64, QMatrix, Q};

/// One column of the coin basis `M`: a vector over the neighbor order of
/// `vertex`, fixed by its coin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CloneVec {
    pub vertex: usize,
    pub vector: Vec<Q>,
}

/// How the per-vertex bases are completed after the prescribed vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Completion {
    /// Gram-Schmidt of the coin's stored basis.
    #[default]
    CoinBasis,
    /// Gram-Schmidt of the columns of the projection `P_u`, in order.
    ProjectionColumns,
}

/// An exact orthogonal basis of `col(C + I)` with the sender and receiver
/// clone sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoinBasis {
    pub clones: Vec<CloneVec>,
    pub s: Vec<usize>,
    pub t: Vec<usize>,
}

/// Basis built from each coin's own basis, with empty `S` and `T`.
pub fn plain_coin_basis(asg: &CoinAssignment) -> CoinBasis {
    let mut clones = Vec::new();
    for u in 0..asg.graph().vertex_count() {
        for v in asg.coin(u).basis() {
            clones.push(CloneVec {
                vertex: u,
                vector: v.clone(),
            });
        }
    }
    CoinBasis {
        clones,
        s: Vec::new(),
        t: Vec::new(),
    }
}

pub fn induced_coin_basis(
    asg: &CoinAssignment,
    a: usize,
    w: &[Vec<Q>],
    b: usize,
    v: &[Vec<Q>],
) -> Result<CoinBasis> {
    induced_coin_basis_with(asg, a, w, b, v, Completion::default())
}

/// Basis whose clones at `a` start with an orthogonal basis of `W` and whose
/// clones at `b` start with one of `V`. When `a == b` only `W` is used and
/// `S = T`.
pub fn induced_coin_basis_with(
    asg: &CoinAssignment,
    a: usize,
    w: &[Vec<Q>],
    b: usize,
    v: &[Vec<Q>],
    completion: Completion,
) -> Result<CoinBasis> {
    let g = asg.graph();
    let n = g.vertex_count();
    for x in [a, b] {
        if x >= n {
            return Err(Error::VertexOutOfRange { vertex: x, n });
        }
    }
    if w.len() != v.len() {
        return Err(Error::DimensionMismatch {
            expected: w.len(),
            got: v.len(),
        });
    }
    let check = |u: usize, vs: &[Vec<Q>]| -> Result<Vec<Vec<Q>>> {
        for x in vs {
            if x.len() != g.degree(u) {
                return Err(Error::DimensionMismatch {
                    expected: g.degree(u),
                    got: x.len(),
                });
            }
            if !asg.coin(u).fixes(x) {
                return Err(Error::NotFixedByCoin(u));
            }
        }
        orthogonalize(vs)
    };
    let wa = check(a, w)?;
    let vb = if a == b { wa.clone() } else { check(b, v)? };

    let mut clones = Vec::new();
    let mut s = Vec::new();
    let mut t = Vec::new();
    for u in 0..n {
        let coin = asg.coin(u);
        let mut local: Vec<Vec<Q>> = Vec::new();
        if u == a {
            s.extend(clones.len()..clones.len() + wa.len());
            local.extend(wa.iter().cloned());
        } else if u == b {
            t.extend(clones.len()..clones.len() + vb.len());
            local.extend(vb.iter().cloned());
        }
        if u == a && a == b {
            t = s.clone();
        }
        let candidates: Vec<Vec<Q>> = match completion {
            Completion::CoinBasis => coin.basis().to_vec(),
            Completion::ProjectionColumns => (0..coin.degree())
                .map(|j| coin.projection().column(j))
                .collect(),
        };
        for c in candidates {
            if local.len() == coin.rank() {
                break;
            }
            let r = residual(&c, &local);
            if r.iter().any(|x| !x.is_zero()) {
                local.push(primitive_direction(&r));
            }
        }
        if local.len() != coin.rank() {
            return Err(Error::IncompleteBasis(u));
        }
        clones.extend(
            local
                .into_iter()
                .map(|vector| CloneVec { vertex: u, vector }),
        );
    }
    Ok(CoinBasis { clones, s, t })
}

/// `H` stored as `H_rat` with `H = Δ^{-1} H_rat Δ`, `Δ² = delta_sq`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianReduction {
    pub h_rat: QMatrix,
    pub delta_sq: Vec<Q>,
    pub clones: Vec<CloneVec>,
    pub s: Vec<usize>,
    pub t: Vec<usize>,
}

/// `H_rat = (M^T R M) D^{-1}` with `D = M^T M`.
pub fn build_h(asg: &CoinAssignment, basis: &CoinBasis) -> Result<HermitianReduction> {
    let g = asg.graph();
    let m = basis.clones.len();
    for (i, ci) in basis.clones.iter().enumerate() {
        if ci.vector.len() != g.degree(ci.vertex) {
            return Err(Error::DimensionMismatch {
                expected: g.degree(ci.vertex),
                got: ci.vector.len(),
            });
        }
        if !asg.coin(ci.vertex).fixes(&ci.vector) {
            return Err(Error::NotFixedByCoin(ci.vertex));
        }
        if ci.vector.iter().all(Zero::is_zero) {
            return Err(Error::IncompleteBasis(ci.vertex));
        }
        for (j, cj) in basis.clones.iter().enumerate().take(i) {
            if cj.vertex == ci.vertex && !dot(&ci.vector, &cj.vector).is_zero() {
                return Err(Error::NotOrthogonal(j, i));
            }
        }
    }
    for u in 0..g.vertex_count() {
        let count = basis.clones.iter().filter(|c| c.vertex == u).count();
        if count != asg.coin(u).rank() {
            return Err(Error::IncompleteBasis(u));
        }
    }
    let delta_sq: Vec<Q> = basis
        .clones
        .iter()
        .map(|c| dot(&c.vector, &c.vector))
        .collect();
    let mut h = QMatrix::zeros(m, m);
    for (i, ci) in basis.clones.iter().enumerate() {
        let u = ci.vertex;
        for (j, cj) in basis.clones.iter().enumerate() {
            let w = cj.vertex;
            let (Some(pu), Some(pw)) = (g.position(u, w), g.position(w, u)) else {
                continue;
            };
            let raw = &ci.vector[pu] * &cj.vector[pw];
            if !raw.is_zero() {
                h[(i, j)] = raw / &delta_sq[j];
            }
        }
    }
    Ok(HermitianReduction {
        h_rat: h,
        delta_sq,
        clones: basis.clones.clone(),
        s: basis.s.clone(),
        t: basis.t.clone(),
    })
}

/// Induced basis followed by [`build_h`].
pub fn reduce(
    asg: &CoinAssignment,
    a: usize,
    w: &[Vec<Q>],
    b: usize,
    v: &[Vec<Q>],
) -> Result<HermitianReduction> {
    build_h(asg, &induced_coin_basis(asg, a, w, b, v)?)
}

impl HermitianReduction {
    pub fn dim(&self) -> usize {
        self.delta_sq.len()
    }

    /// Exact check of `Δ² H_rat` symmetry: `d_j H_rat[i][j] = d_i H_rat[j][i]`.
    pub fn is_symmetrizable(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..i).all(|j| {
                &self.delta_sq[j] * &self.h_rat[(i, j)] == &self.delta_sq[i] * &self.h_rat[(j, i)]
            })
        })
    }

    /// Symmetric `H` in doubles.
    pub fn h_f64(&self) -> DMatrix<f64> {
        numeric::symmetric_from_rat(&self.h_rat, &self.delta_sq)
    }

    /// Normalized coin basis `N` (arcs x clones) in doubles.
    pub fn n_f64(&self, graph: &Graph) -> DMatrix<f64> {
        let mut n = DMatrix::zeros(graph.arc_count(), self.dim());
        for (k, c) in self.clones.iter().enumerate() {
            let norm = to_f64(&self.delta_sq[k]).sqrt();
            let off = graph.arc_offset(c.vertex);
            for (j, x) in c.vector.iter().enumerate() {
                n[(off + j, k)] = to_f64(x) / norm;
            }
        }
        n
    }

    pub fn clones_of(&self, u: usize) -> Vec<usize> {
        (0..self.dim())
            .filter(|&k| self.clones[k].vertex == u)
            .collect()
    }

    /// `f_t(H_rat)` where `f_t` is the Chebyshev polynomial of the first kind.
    pub fn chebyshev(&self, t: usize) -> QMatrix {
        chebyshev_apply(self, t)
    }
}

/// `T_t(H_rat)` via `T_{k+1} = 2 H T_k - T_{k-1}`.
pub fn chebyshev_apply(red: &HermitianReduction, t: usize) -> QMatrix {
    let n = red.dim();
    let mut prev = QMatrix::identity(n);
    if t == 0 {
        return prev;
    }
    let mut cur = red.h_rat.clone();
    let two = q(2);
    for _ in 1..t {
        let next = red.h_rat.mul(&cur).scale(&two).sub(&prev);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Columns `T_t(H_rat) e_c` for each `c` in `cols`.
pub fn chebyshev_columns(h_rat: &QMatrix, cols: &[usize], t: usize) -> Vec<Vec<Q>> {
    let n = h_rat.nrows();
    let two = q(2);
    cols.iter()
        .map(|&c| {
            let mut prev = vec![Q::zero(); n];
            prev[c] = Q::one();
            if t == 0 {
                return prev;
            }
            let mut cur = h_rat.mul_vec(&prev);
            for _ in 1..t {
                let hc = h_rat.mul_vec(&cur);
                let next: Vec<Q> = hc.iter().zip(&prev).map(|(x, p)| x * &two - p).collect();
                prev = std::mem::replace(&mut cur, next);
            }
            cur
        })
        .collect()
}

/// Whether `f_t(H) B_S = γ B_T` holds exactly.
pub fn exact_transfer_check(red: &HermitianReduction, t: usize, gamma: i8) -> bool {
    exact_transfer_phase(red, t) == Some(gamma)
}

/// The `γ ∈ {±1}` with `f_t(H) B_S = γ B_T`, if any.
pub fn exact_transfer_phase(red: &HermitianReduction, t: usize) -> Option<i8> {
    if red.s.is_empty() || red.s.len() != red.t.len() {
        return None;
    }
    let cols = chebyshev_columns(&red.h_rat, &red.s, t);
    let mut gamma: Option<i8> = None;
    for (col, (&a, &b)) in cols.iter().zip(red.s.iter().zip(&red.t)) {
        if col.iter().enumerate().any(|(i, x)| i != b && !x.is_zero()) {
            return None;
        }
        let v = &col[b];
        // f_t(H)[b, a] = v * Δ_a / Δ_b must be ±1.
        if &(v * v) * &red.delta_sq[a] != red.delta_sq[b] {
            return None;
        }
        let g = if v.is_positive() { 1 } else { -1 };
        if gamma.is_some_and(|x| x != g) {
            return None;
        }
        gamma = Some(g);
    }
    gamma
}

/// The `(C_a, C_b)`-blow-up in rational-similar form.
///
/// Index order: `cl(a)` (one per neighbor position of `a`), `cl(b)`, then
/// the remaining vertices in ascending order. `G = Δ^{-1} G_rat Δ` with
/// `Δ² = delta_sq` (ones on clones, vertex degrees elsewhere).
#[derive(Clone, Debug)]
pub struct BlowUp {
    pub g_rat: QMatrix,
    pub delta_sq: Vec<Q>,
    pub a: usize,
    pub b: usize,
    pub cl_a: Range<usize>,
    pub cl_b: Range<usize>,
    /// Vertex id for each index in the rest block.
    pub rest: Vec<usize>,
    /// Indices (into `G`) of `N(a)` and `N(b)` in neighbor order.
    pub n_a: Vec<usize>,
    pub n_b: Vec<usize>,
    /// Lower-left block of `G` (rest x clones).
    pub f: DMatrix<f64>,
    /// `Δ^{-1/2} A(X \ {a,b}) Δ^{-1/2}`.
    pub b_block: DMatrix<f64>,
}

pub fn build_blowup(asg: &CoinAssignment, a: usize, b: usize) -> Result<BlowUp> {
    let g = asg.graph();
    let n = g.vertex_count();
    for x in [a, b] {
        if x >= n {
            return Err(Error::VertexOutOfRange { vertex: x, n });
        }
    }
    if a == b {
        return Err(Error::InvalidFamily(
            "marked vertices must be distinct".into(),
        ));
    }
    if g.adjacent(a, b) {
        return Err(Error::AdjacentMarked(a, b));
    }
    for u in 0..n {
        if u != a && u != b && !asg.coin(u).is_grover() {
            return Err(Error::NonGroverUnmarked(u));
        }
    }
    let da = g.degree(a);
    let db = g.degree(b);
    let rest: Vec<usize> = (0..n).filter(|&u| u != a && u != b).collect();
    let off = da + db;
    let dim = off + rest.len();
    let index_of = |v: usize| {
        off + rest
            .binary_search(&v)
            .expect("neighbor of a marked vertex is unmarked")
    };

    let mut ghat = QMatrix::zeros(dim, dim);
    let mut delta_sq = vec![Q::one(); dim];
    for (k, &v) in rest.iter().enumerate() {
        delta_sq[off + k] = q(g.degree(v) as i64);
        for &w in g.neighbors(v) {
            if w != a && w != b {
                ghat[(off + k, index_of(w))] = Q::one();
            }
        }
    }
    let n_a: Vec<usize> = g.neighbors(a).iter().map(|&v| index_of(v)).collect();
    let n_b: Vec<usize> = g.neighbors(b).iter().map(|&v| index_of(v)).collect();
    for (start, nb, p) in [
        (0, &n_a, asg.coin(a).projection()),
        (da, &n_b, asg.coin(b).projection()),
    ] {
        for i in 0..p.nrows() {
            for (j, &col) in nb.iter().enumerate() {
                ghat[(start + i, col)] = p[(i, j)].clone();
                ghat[(col, start + i)] = p[(j, i)].clone();
            }
        }
    }
    let mut g_rat = QMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            if !ghat[(i, j)].is_zero() {
                g_rat[(i, j)] = &ghat[(i, j)] / &delta_sq[j];
            }
        }
    }
    let gs = numeric::symmetric_from_rat(&g_rat, &delta_sq);
    let f = gs.view((off, 0), (rest.len(), off)).into_owned();
    let b_block = gs.view((off, off), (rest.len(), rest.len())).into_owned();
    Ok(BlowUp {
        g_rat,
        delta_sq,
        a,
        b,
        cl_a: 0..da,
        cl_b: da..off,
        rest,
        n_a,
        n_b,
        f,
        b_block,
    })
}

impl BlowUp {
    pub fn dim(&self) -> usize {
        self.delta_sq.len()
    }

    /// Symmetric `G` in doubles.
    pub fn g_f64(&self) -> DMatrix<f64> {
        numeric::symmetric_from_rat(&self.g_rat, &self.delta_sq)
    }

    /// Index of a non-marked vertex in `G`.
    pub fn index_of(&self, v: usize) -> Option<usize> {
        self.rest.binary_search(&v).ok().map(|k| self.cl_b.end + k)
    }

    /// Isometry `M` with `H = M^T G M` for a reduction whose clones at
    /// `a`, `b` are arbitrary and whose other clones are Grover all-ones.
    pub fn embedding(&self, red: &HermitianReduction) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.dim(), red.dim());
        for (k, c) in red.clones.iter().enumerate() {
            let norm = to_f64(&red.delta_sq[k]).sqrt();
            if c.vertex == self.a || c.vertex == self.b {
                let start = if c.vertex == self.a {
                    self.cl_a.start
                } else {
                    self.cl_b.start
                };
                for (j, x) in c.vector.iter().enumerate() {
                    m[(start + j, k)] = to_f64(x) / norm;
                }
            } else {
                m[(self.index_of(c.vertex).expect("unmarked"), k)] = 1.0;
            }
        }
        m
    }

    /// Maximum residual of the quadratic eigenvalue relation over all
    /// numeric eigenpairs of `G`.
    pub fn quad_ev_residual(&self) -> f64 {
        let g = self.g_f64();
        let eig = nalgebra::SymmetricEigen::new(g);
        let off = self.cl_b.end;
        let r = self.rest.len();
        let fft = &self.f * self.f.transpose();
        let mut worst = 0.0f64;
        for (k, &lam) in eig.eigenvalues.iter().enumerate() {
            let z = eig.eigenvectors.column(k);
            let y = z.rows(off, r).into_owned();
            let res = if lam.abs() < 1e-9 {
                (self.f.transpose() * &y).norm()
            } else {
                let m = DMatrix::identity(r, r) * (lam * lam) - &self.b_block * lam - &fft;
                (m * &y).norm()
            };
            worst = worst.max(res);
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coin::ReflectionCoin;
    use crate::exactalg::charpoly;
    use crate::graph::FamilySpec;
    use crate::rational::qf;

    fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::new(10, &e).unwrap()
    }

    #[test]
    fn k2_trivial_coins_give_r() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let asg = CoinAssignment::grover(&g);
        let red = build_h(&asg, &plain_coin_basis(&asg)).unwrap();
        assert_eq!(red.h_rat, QMatrix::from_i64(&[&[0, 1], &[1, 0]]));
        assert_eq!(chebyshev_apply(&red, 2), QMatrix::identity(2));
        assert_eq!(chebyshev_apply(&red, 0), QMatrix::identity(2));
    }

    #[test]
    fn petersen_grover_is_scaled_adjacency() {
        let g = petersen();
        let asg = CoinAssignment::grover(&g);
        let red = build_h(&asg, &plain_coin_basis(&asg)).unwrap();
        for u in 0..10 {
            for v in 0..10 {
                let expect = if g.adjacent(u, v) { qf(1, 3) } else { q(0) };
                assert_eq!(red.h_rat[(u, v)], expect);
            }
        }
        let cp = charpoly(&red.h_rat);
        let expect = crate::exactalg::RatPoly::from_i64(&[-1, 1])
            * crate::exactalg::RatPoly::new(vec![qf(-1, 3), q(1)]).pow(5)
            * crate::exactalg::RatPoly::new(vec![qf(2, 3), q(1)]).pow(4);
        assert_eq!(cp, expect);
    }

    #[test]
    fn star_spectrum() {
        let g = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let asg = CoinAssignment::grover(&g);
        let red = build_h(&asg, &plain_coin_basis(&asg)).unwrap();
        let eig = nalgebra::SymmetricEigen::new(red.h_f64());
        let mut ev: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        let expect = [-1.0, 0.0, 0.0, 1.0];
        for (x, y) in ev.iter().zip(expect) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn minus_identity_vertex_has_no_clones() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let asg = CoinAssignment::grover(&g)
            .with(1, ReflectionCoin::reflection_about(2, &[]).unwrap())
            .unwrap();
        let red = build_h(&asg, &plain_coin_basis(&asg)).unwrap();
        assert_eq!(red.dim(), 2);
        assert!(red.clones_of(1).is_empty());
    }

    #[test]
    fn circulant_clone_counts() {
        let fam = FamilySpec::Circulant2m { m: 3, c: 1, d: 2 }
            .build()
            .unwrap();
        let w = vec![vec![q(1), q(0), q(-1), q(0)], vec![q(0), q(1), q(0), q(-1)]];
        let coin =
            ReflectionCoin::reflection_about(4, &[w[0].clone(), w[1].clone(), vec![q(1); 4]])
                .unwrap();
        let asg = CoinAssignment::grover(&fam.graph)
            .with(0, coin.clone())
            .unwrap()
            .with(3, coin)
            .unwrap();
        let basis = induced_coin_basis(&asg, 0, &w, 3, &w).unwrap();
        let at_a = basis.clones.iter().filter(|c| c.vertex == 0).count();
        assert_eq!(at_a, 3);
        assert_eq!(basis.s.len(), 2);
        let red = build_h(&asg, &basis).unwrap();
        assert!(red.is_symmetrizable());
        assert_eq!(
            red.s
                .iter()
                .map(|&i| red.delta_sq[i].clone())
                .collect::<Vec<_>>(),
            red.t
                .iter()
                .map(|&i| red.delta_sq[i].clone())
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn k23_transfer_at_two_not_one() {
        let fam = FamilySpec::CompleteBipartiteK2m { m: 3 }.build().unwrap();
        let asg = CoinAssignment::grover(&fam.graph);
        let w = vec![vec![q(1); 3]];
        let red = reduce(&asg, 0, &w, 1, &w).unwrap();
        assert!(exact_transfer_phase(&red, 2).is_some());
        assert!(!exact_transfer_check(&red, 1, 1) && !exact_transfer_check(&red, 1, -1));
        let same = reduce(&asg, 0, &w, 0, &w).unwrap();
        assert!(exact_transfer_check(&same, 0, 1));
    }

    #[test]
    fn rejects_unfixed_subspace_and_bad_bases() {
        let fam = FamilySpec::CompleteBipartiteK2m { m: 3 }.build().unwrap();
        let asg = CoinAssignment::grover(&fam.graph);
        let w = vec![vec![q(1), q(0), q(0)]];
        assert_eq!(
            reduce(&asg, 0, &w, 1, &w).unwrap_err(),
            Error::NotFixedByCoin(0)
        );
        let mut basis = plain_coin_basis(&asg);
        basis.clones.pop();
        assert!(matches!(
            build_h(&asg, &basis),
            Err(Error::IncompleteBasis(_))
        ));
    }

    #[test]
    fn blowup_block_structure() {
        let fam = FamilySpec::CompleteBipartiteK2m { m: 4 }.build().unwrap();
        let asg = CoinAssignment::grover(&fam.graph);
        let bu = build_blowup(&asg, 0, 1).unwrap();
        assert!(numeric::max_abs(&bu.b_block) == 0.0);
        assert_eq!(bu.n_a, bu.n_b);
        assert!(bu.quad_ev_residual() < 1e-8);

        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let asg = CoinAssignment::grover(&g);
        assert_eq!(
            build_blowup(&asg, 0, 1).unwrap_err(),
            Error::AdjacentMarked(0, 1)
        );
    }

    #[test]
    fn twin_kernel_seeds() {
        let fam = FamilySpec::Circulant2m { m: 4, c: 1, d: 3 }
            .build()
            .unwrap();
        let asg = CoinAssignment::grover(&fam.graph);
        let bu = build_blowup(&asg, fam.a, fam.b).unwrap();
        let d = bu.cl_a.len();
        for j in 0..d {
            let mut v = vec![q(0); bu.dim()];
            v[j] = q(1);
            v[d + j] = q(-1);
            assert!(bu.g_rat.mul_vec(&v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn gp1_blowup_is_path_on_w() {
        let fam = FamilySpec::GeneralizedPath { k: 1, n: 5 }.build().unwrap();
        let asg = CoinAssignment::grover(&fam.graph);
        let bu = build_blowup(&asg, fam.a, fam.b).unwrap();
        let g = bu.g_f64();
        // Index order a, b, 1, 2, 3; the path is a-1-2-3-b.
        let order = [0usize, 2, 3, 4, 1];
        let dg = [1.0f64, 2.0, 2.0, 2.0, 1.0];
        for i in 0..5 {
            for j in 0..5 {
                let expect = if (i as i64 - j as i64).abs() == 1 {
                    1.0 / (dg[i] * dg[j]).sqrt()
                } else {
                    0.0
                };
                assert!((g[(order[i], order[j])] - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn blowup_reproduces_h() {
        let fam = FamilySpec::Circulant2m { m: 3, c: 1, d: 2 }
            .build()
            .unwrap();
        let coin = ReflectionCoin::reflection_about(
            4,
            &[vec![q(1), q(0), q(-1), q(0)], vec![q(0), q(1), q(0), q(-1)]],
        )
        .unwrap();
        let asg = CoinAssignment::grover(&fam.graph)
            .with(0, coin.clone())
            .unwrap()
            .with(3, coin)
            .unwrap();
        let red = build_h(&asg, &plain_coin_basis(&asg)).unwrap();
        let bu = build_blowup(&asg, 0, 3).unwrap();
        let m = bu.embedding(&red);
        let h = m.transpose() * bu.g_f64() * &m;
        assert!(numeric::max_abs(&(h - red.h_f64())) < 1e-10);
        assert!(
            numeric::max_abs(&(m.transpose() * &m - DMatrix::identity(red.dim(), red.dim())))
                < 1e-12
        );
    }
}
