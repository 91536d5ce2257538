//! Cospectrality and strong cospectrality of clone sets, exact and numeric,
//! and the twin-vertex transfer criterion.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};

use crate::coin::CoinAssignment;
use crate::error::{Error, Result};
use crate::exactalg::{pole_support, psi, RatPoly};
use crate::numeric::{clustered_eigen, guard_gaps, Cluster};
use crate::rational::{to_f64, Q};
use crate::reduction::{build_blowup, BlowUp, HermitianReduction};

/// Eigenvalue support of `B_S` split by the sign relating `E_λ B_S` and
/// `E_λ B_T`: `plus` where they agree, `minus` where they are opposite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportSplit {
    pub support: Vec<RatPoly>,
    pub plus: Vec<RatPoly>,
    pub minus: Vec<RatPoly>,
    pub gamma: i8,
}

/// `ψ_S = ψ_T`.
pub fn cospectral(red: &HermitianReduction, s: &[usize], t: &[usize]) -> Result<bool> {
    if s.len() != t.len() {
        return Err(Error::DimensionMismatch {
            expected: s.len(),
            got: t.len(),
        });
    }
    Ok(psi(red, s, s)? == psi(red, t, t)?)
}

/// Exact strong cospectrality. For cospectral `S`, `T` the residue of
/// `ψ_S - ψ_{S,T}` at `λ` is `‖E_λ(B_S - B_T)‖² / 2`, so a support factor
/// drops out of `ψ_S ∓ ψ_{S,T}` exactly when `E_λ B_S = ±E_λ B_T`.
pub fn strong_cospectral_exact(
    red: &HermitianReduction,
    s: &[usize],
    t: &[usize],
) -> Result<Option<SupportSplit>> {
    if !cospectral(red, s, t)? {
        return Ok(None);
    }
    let psi_s = psi(red, s, s)?;
    let psi_st = psi(red, s, t)?;
    let support = pole_support(&psi_s);
    let sum_den = (&psi_s + &psi_st).den().clone();
    let diff_den = (&psi_s - &psi_st).den().clone();
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for f in &support {
        let in_sum = sum_den.rem(f).is_ok_and(|r| r.is_zero());
        let in_diff = diff_den.rem(f).is_ok_and(|r| r.is_zero());
        match (in_sum, in_diff) {
            (true, false) => plus.push(f.clone()),
            (false, true) => minus.push(f.clone()),
            _ => return Ok(None),
        }
    }
    Ok(Some(SupportSplit {
        support,
        plus,
        minus,
        gamma: 1,
    }))
}

/// Numeric eigenvalue split of the blow-up.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericSplit {
    pub plus: Vec<f64>,
    pub minus: Vec<f64>,
    pub gamma: i8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Behaviour {
    Outside,
    Same,
    Opposite,
    Mixed,
}

/// Orthonormal columns spanning the given real vectors.
fn orthonormal_columns(w: &[Vec<f64>]) -> Result<DMatrix<f64>> {
    let mut cols: Vec<DVector<f64>> = Vec::new();
    for v in w {
        let mut r = DVector::from_column_slice(v);
        let scale = r.norm();
        for c in &cols {
            r -= c * c.dot(&r);
        }
        let n = r.norm();
        if n <= 1e-10 * scale.max(1e-300) {
            return Err(Error::DependentVectors {
                rank: cols.len(),
                count: w.len(),
            });
        }
        cols.push(r / n);
    }
    if cols.is_empty() {
        return Err(Error::EmptySubspace);
    }
    Ok(DMatrix::from_columns(&cols))
}

fn rational_rows(w: &[Vec<Q>]) -> Vec<Vec<f64>> {
    w.iter().map(|v| v.iter().map(to_f64).collect()).collect()
}

/// Numeric strong cospectrality of `x_a(W)` and `x_b(W)` in the blow-up,
/// with `W` identified positionally at `a` and `b`.
///
/// For each eigenvalue cluster the coefficient matrices `V^T ι_a(W)` and
/// `V^T ι_b(W)` are compared; equal blocks go to `plus`, negated blocks to
/// `minus`. Returns `None` when some cluster is neither.
pub fn strong_cospectral_numeric(
    blowup: &BlowUp,
    w: &[Vec<Q>],
    tol: f64,
) -> Result<Option<NumericSplit>> {
    let da = blowup.cl_a.len();
    if blowup.cl_b.len() != da {
        return Ok(None);
    }
    let rows = rational_rows(w);
    if rows.iter().any(|r| r.len() != da) {
        return Err(Error::DimensionMismatch {
            expected: da,
            got: rows.iter().map(Vec::len).find(|&l| l != da).unwrap_or(0),
        });
    }
    let q = orthonormal_columns(&rows)?;
    let n = blowup.dim();
    let mut ia = DMatrix::zeros(n, q.ncols());
    let mut ib = DMatrix::zeros(n, q.ncols());
    ia.view_mut((blowup.cl_a.start, 0), (da, q.ncols()))
        .copy_from(&q);
    ib.view_mut((blowup.cl_b.start, 0), (da, q.ncols()))
        .copy_from(&q);

    let clusters = clustered_eigen(&blowup.g_f64(), tol);
    let behaviour = |c: &Cluster| {
        let xa = c.vectors.transpose() * &ia;
        let xb = c.vectors.transpose() * &ib;
        let (na, nb) = (xa.norm(), xb.norm());
        if na <= tol && nb <= tol {
            Behaviour::Outside
        } else if (&xa - &xb).norm() <= tol * na.max(1.0) {
            Behaviour::Same
        } else if (&xa + &xb).norm() <= tol * na.max(1.0) {
            Behaviour::Opposite
        } else {
            Behaviour::Mixed
        }
    };
    guard_gaps(&clusters, tol, |c| behaviour(c))?;
    let mut split = NumericSplit {
        plus: Vec::new(),
        minus: Vec::new(),
        gamma: 1,
    };
    for c in &clusters {
        match behaviour(c) {
            Behaviour::Outside => {}
            Behaviour::Same => split.plus.push(c.value),
            Behaviour::Opposite => split.minus.push(c.value),
            Behaviour::Mixed => return Ok(None),
        }
    }
    Ok(Some(split))
}

/// Eigenvalues of `H` (clusters within `tol`) with `‖E_λ B_S‖ > tol`.
pub fn numeric_support(red: &HermitianReduction, s: &[usize], tol: f64) -> Result<Vec<f64>> {
    let h = red.h_f64();
    let clusters = clustered_eigen(&h, tol);
    let n = red.dim();
    let mut bs = DMatrix::zeros(n, s.len());
    for (j, &k) in s.iter().enumerate() {
        bs[(k, j)] = 1.0;
    }
    let in_support = |c: &Cluster| (c.vectors.transpose() * &bs).norm() > tol;
    guard_gaps(&clusters, tol, |c| in_support(c))?;
    Ok(clusters
        .iter()
        .filter(|c| in_support(c))
        .map(|c| c.value)
        .collect())
}

/// Transfer time classes for twin vertices: `t ≡ 0 (mod 4)` or `t ≡ 2 (mod 4)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwinClass {
    MultipleOfFour,
    TwoModFour,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TwinVerdict {
    /// `W ⊆ ker [A_1; A_2^T]`, checked exactly.
    pub exact_kernel_condition: bool,
    /// `W ⊥ col([A_1 A_2] Δ^{-1/2} E_0[rest, rest])`, checked numerically.
    pub strongly_cospectral: bool,
    /// Nonzero eigenvalues in the support of `x_a(W)`.
    pub support: Vec<f64>,
    pub class: Option<TwinClass>,
    pub time: Option<u64>,
}

/// Largest time scanned by [`twin_transfer_check`].
pub const TWIN_TIME_LIMIT: u64 = 4096;

fn near_integer(x: f64) -> Option<i64> {
    let r = x.round();
    ((x - r).abs() <= 1e-6).then_some(r as i64)
}

/// Transfer criterion for twins `a`, `b` with `C_a = C_b` and Grover coins
/// elsewhere.
pub fn twin_transfer_check(
    asg: &CoinAssignment,
    a: usize,
    b: usize,
    w: &[Vec<Q>],
) -> Result<TwinVerdict> {
    let g = asg.graph();
    if a == b || !g.are_twins(a, b) {
        return Err(Error::NotTwins(a, b));
    }
    if asg.coin(a) != asg.coin(b) {
        return Err(Error::CoinMismatch);
    }
    if w.is_empty() {
        return Err(Error::EmptySubspace);
    }
    for v in w {
        if v.len() != g.degree(a) {
            return Err(Error::DimensionMismatch {
                expected: g.degree(a),
                got: v.len(),
            });
        }
        if !asg.coin(a).fixes(v) {
            return Err(Error::NotFixedByCoin(a));
        }
    }
    let blowup = build_blowup(asg, a, b)?;
    let nbrs = g.neighbors(a);

    let exact_kernel_condition = w.iter().all(|v| {
        blowup.rest.iter().all(|&x| {
            nbrs.iter()
                .zip(v)
                .filter(|&(&u, _)| g.adjacent(u, x))
                .fold(Q::from_integer(0.into()), |acc, (_, c)| acc + c)
                == Q::from_integer(0.into())
        })
    });

    let q = orthonormal_columns(&rational_rows(w))?;
    let off = blowup.cl_b.end;
    let r = blowup.rest.len();
    let tol = 1e-7;
    let clusters = clustered_eigen(&blowup.g_f64(), tol);
    let e0_rest = clusters
        .iter()
        .find(|c| c.value.abs() <= tol)
        .map(|c| {
            let y = c.vectors.rows(off, r);
            y * y.transpose()
        })
        .unwrap_or_else(|| DMatrix::zeros(r, r));
    // [A_1 A_2] Δ^{-1/2}: rows indexed by N(a), columns by the rest block.
    let mut a12 = DMatrix::zeros(nbrs.len(), r);
    for (i, &u) in nbrs.iter().enumerate() {
        for (k, &x) in blowup.rest.iter().enumerate() {
            if g.adjacent(u, x) {
                a12[(i, k)] = 1.0 / (g.degree(x) as f64).sqrt();
            }
        }
    }
    let m = q.transpose() * a12 * e0_rest;
    let strongly_cospectral = m.iter().all(|x| x.abs() <= 1e-9);

    let mut ia = DMatrix::zeros(blowup.dim(), q.ncols());
    ia.view_mut((blowup.cl_a.start, 0), (nbrs.len(), q.ncols()))
        .copy_from(&q);
    let in_support = |c: &Cluster| (c.vectors.transpose() * &ia).norm() > tol;
    guard_gaps(&clusters, tol, |c| in_support(c))?;
    let support: Vec<f64> = clusters
        .iter()
        .filter(|c| in_support(c) && c.value.abs() > tol)
        .map(|c| c.value)
        .collect();

    let mut class = None;
    let mut time = None;
    if strongly_cospectral {
        for t in (2..=TWIN_TIME_LIMIT).step_by(2) {
            let want_odd = t % 4 == 0;
            let ok = support.iter().all(|&l| {
                near_integer(t as f64 * l.clamp(-1.0, 1.0).acos() / PI)
                    .is_some_and(|k| (k % 2 != 0) == want_odd)
            });
            if ok {
                class = Some(if want_odd {
                    TwinClass::MultipleOfFour
                } else {
                    TwinClass::TwoModFour
                });
                time = Some(t);
                break;
            }
        }
    }
    Ok(TwinVerdict {
        exact_kernel_condition,
        strongly_cospectral,
        support,
        class,
        time,
    })
}
