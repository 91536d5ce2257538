//! The rational function `ψ_{S,T}(x) = Σ_j [(xI - H)^{-1}]_{a_j, b_j}`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{rational_sqrt, QMatrix, Q};
use crate::reduction::HermitianReduction;

use super::charpoly::charpoly;
use super::factor::factor;
use super::poly::RatPoly;
use super::ratfun::RatFun;

/// `ψ_{S,T}` for the reduction's `H = Δ^{-1} H_rat Δ`.
pub fn psi(red: &HermitianReduction, s: &[usize], t: &[usize]) -> Result<RatFun> {
    psi_parts(&red.h_rat, &red.delta_sq, s, t)
}

/// `ψ_S = ψ_{S,S}`.
pub fn psi_self(red: &HermitianReduction, s: &[usize]) -> Result<RatFun> {
    psi(red, s, s)
}

/// Works from the moments `m_k = Σ_j r_j (H_rat^k)_{a_j b_j}` with
/// `r_j = Δ_{b_j} / Δ_{a_j}` and the identity
/// `adj(xI - H) = Σ_i x^i Σ_k q_{i+k+1} H^k` where `q = det(xI - H)`.
pub fn psi_parts(h_rat: &QMatrix, delta_sq: &[Q], s: &[usize], t: &[usize]) -> Result<RatFun> {
    if s.len() != t.len() {
        return Err(Error::DimensionMismatch {
            expected: s.len(),
            got: t.len(),
        });
    }
    let n = h_rat.nrows();
    for &i in s.iter().chain(t) {
        if i >= n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: i + 1,
            });
        }
    }
    let mut moments = vec![Q::zero(); n];
    for (&a, &b) in s.iter().zip(t) {
        let r =
            rational_sqrt(&(&delta_sq[b] / &delta_sq[a])).ok_or(Error::IrrationalScaling(a, b))?;
        let mut v = vec![Q::zero(); n];
        v[b] = Q::from_integer(1.into());
        for m in moments.iter_mut() {
            if !v[a].is_zero() {
                *m += &r * &v[a];
            }
            v = h_rat.mul_vec(&v);
        }
    }
    let q = charpoly(h_rat);
    let mut num = vec![Q::zero(); n];
    for (i, slot) in num.iter_mut().enumerate() {
        for (k, m) in moments.iter().enumerate().take(n - i) {
            if !m.is_zero() {
                *slot += q.coeff(i + k + 1) * m;
            }
        }
    }
    RatFun::new(RatPoly::new(num), q)
}

/// ℚ-irreducible factors of the denominator; their roots are the poles.
pub fn pole_support(f: &RatFun) -> Vec<RatPoly> {
    factor(f.den()).into_iter().map(|(g, _)| g).collect()
}
