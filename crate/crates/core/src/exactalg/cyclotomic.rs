//! Cyclotomic polynomials and the `h ↦ h^♯` transform.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{q, Q};

use super::poly::RatPoly;

pub fn euler_phi(mut m: u64) -> u64 {
    let mut result = m;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

pub fn divisors(m: u64) -> Vec<u64> {
    (1..=m).filter(|d| m.is_multiple_of(*d)).collect()
}

fn cache() -> &'static Mutex<HashMap<u64, RatPoly>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, RatPoly>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `Φ_m`, computed as `(x^m - 1) / ∏_{d | m, d < m} Φ_d` and memoized.
pub fn cyclotomic(m: u64) -> Result<RatPoly> {
    if m == 0 {
        return Err(Error::InvalidFamily(
            "cyclotomic order must be positive".into(),
        ));
    }
    if let Some(p) = cache().lock().unwrap().get(&m) {
        return Ok(p.clone());
    }
    let mut num = RatPoly::monomial(Q::one(), m as usize) - RatPoly::one();
    for d in divisors(m) {
        if d < m {
            num = num.div_exact(&cyclotomic(d)?).expect("Φ_d divides x^m - 1");
        }
    }
    cache().lock().unwrap().insert(m, num.clone());
    Ok(num)
}

/// `h^♯(x) = 2^d x^d h((x + 1/x) / 2)` with `d = deg h`.
pub fn sharp(h: &RatPoly) -> Result<RatPoly> {
    let d = h.degree().ok_or(Error::ZeroPolynomial)?;
    // x^(d-k) (x^2 + 1)^k 2^(d-k) for each coefficient h_k
    let x2p1 = RatPoly::from_i64(&[1, 0, 1]);
    let mut out = RatPoly::zero();
    let mut pow = RatPoly::one();
    for k in 0..=d {
        let c = h.coeff(k);
        if !c.is_zero() {
            let scale = c * Q::from_integer(BigInt::one() << (d - k));
            out = out + (&pow * &RatPoly::monomial(scale, d - k));
        }
        pow = &pow * &x2p1;
    }
    Ok(out)
}

/// Inverse of [`sharp`] on palindromic polynomials of even degree.
pub fn unsharp(p: &RatPoly) -> Option<RatPoly> {
    let n = p.degree()?;
    if n % 2 == 1 || !p.is_palindromic() {
        return None;
    }
    let d = n / 2;
    // Chebyshev T_k via recurrence
    let mut t_prev = RatPoly::one();
    let mut t_cur = RatPoly::x();
    let mut acc = RatPoly::constant(p.coeff(d));
    for k in 1..=d {
        if k > 1 {
            let next = &(&RatPoly::monomial(q(2), 1) * &t_cur) - &t_prev;
            t_prev = std::mem::replace(&mut t_cur, next);
        }
        acc = acc + t_cur.scale(&(p.coeff(d + k) * q(2)));
    }
    let two_d = Q::from_integer(BigInt::one() << d);
    Some(acc.scale(&two_d.recip()))
}

/// Monic minimal polynomial of `cos(2π/m)`: `Ψ_1 = x - 1`, `Ψ_2 = x + 1`,
/// otherwise the polynomial whose sharp transform is `Φ_m`.
pub fn real_cyclotomic(m: u64) -> Result<RatPoly> {
    match m {
        0 => Err(Error::InvalidFamily(
            "cyclotomic order must be positive".into(),
        )),
        1 => Ok(RatPoly::from_i64(&[-1, 1])),
        2 => Ok(RatPoly::from_i64(&[1, 1])),
        _ => Ok(unsharp(&cyclotomic(m)?).expect("Φ_m is palindromic for m >= 2")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1).unwrap(), RatPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(6).unwrap(), RatPoly::from_i64(&[1, -1, 1]));
        assert_eq!(
            cyclotomic(12).unwrap(),
            RatPoly::from_i64(&[1, 0, -1, 0, 1])
        );
        assert!(cyclotomic(0).is_err());
    }

    #[test]
    fn sharp_examples() {
        assert_eq!(sharp(&RatPoly::x()).unwrap(), cyclotomic(4).unwrap());
        assert_eq!(
            sharp(&RatPoly::from_i64(&[-1, 1])).unwrap(),
            cyclotomic(1).unwrap().pow(2)
        );
        let h = RatPoly::new(vec![qf(-1, 2), q(0), q(1)]);
        assert_eq!(sharp(&h).unwrap(), cyclotomic(8).unwrap());
        assert_eq!(sharp(&RatPoly::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn sharp_of_one_third_is_not_cyclotomic() {
        let s = sharp(&RatPoly::new(vec![qf(-1, 3), q(1)])).unwrap();
        assert_eq!(s, RatPoly::new(vec![q(1), qf(-2, 3), q(1)]));
    }

    #[test]
    fn unsharp_inverts_sharp() {
        for m in 3..40 {
            let psi = real_cyclotomic(m).unwrap();
            assert_eq!(sharp(&psi).unwrap(), cyclotomic(m).unwrap(), "m={m}");
            assert_eq!(2 * psi.deg() as u64, euler_phi(m));
            let c = (2.0 * std::f64::consts::PI / m as f64).cos();
            assert!(psi.eval_f64(c).abs() < 1e-9, "m={m}");
        }
    }

    #[test]
    fn phi_values() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(97), 96);
    }
}
