use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{fmt_rational, parse_rational, to_f64, Q};

use super::integer::ZPoly;

/// Dense univariate polynomial over ℚ, coefficients in ascending order.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is the
/// empty vector and has no degree.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: Vec<Q>,
}

impl RatPoly {
    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn x() -> Self {
        Self::monomial(Q::one(), 1)
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: Q, k: usize) -> Self {
        let mut coeffs = vec![Q::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `x - r`
    pub fn linear_root(r: Q) -> Self {
        Self::new(vec![-r, Q::one()])
    }

    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| Q::from_integer(x.into())).collect())
    }

    pub fn from_integers(c: &[BigInt]) -> Self {
        Self::new(c.iter().cloned().map(Q::from_integer).collect())
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> Q {
        self.coeffs.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0; for sizing only.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_one()
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lead().recip();
        self.scale(&inv)
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs
            .iter()
            .rev()
            .fold(Q::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    pub fn eval_complex(&self, x: num_complex::Complex64) -> num_complex::Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(num_complex::Complex64::new(0.0, 0.0), |acc, c| {
                acc * x + to_f64(c)
            })
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Q::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// `self(other(x))`
    pub fn compose(&self, other: &RatPoly) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * other) + &Self::constant(c.clone())
        })
    }

    /// Quotient and remainder of Euclidean division.
    pub fn divrem(&self, d: &RatPoly) -> Result<(RatPoly, RatPoly)> {
        let dd = d.degree().ok_or(Error::ZeroPolynomial)?;
        let mut rem = self.coeffs.clone();
        let Some(n) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if n < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let inv = d.lead().recip();
        let mut quot = vec![Q::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let c = &rem[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &RatPoly) -> Option<RatPoly> {
        let (q, r) = self.divrem(d).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn rem(&self, d: &RatPoly) -> Result<RatPoly> {
        Ok(self.divrem(d)?.1)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let (a, _) = ZPoly::primitive_from_rat(self);
        let (b, _) = ZPoly::primitive_from_rat(other);
        a.gcd(&b).to_rat().monic()
    }

    /// Least common multiple of the denominators times the inverse of the
    /// content, i.e. `c` such that `c * self` is a primitive integer
    /// polynomial with positive leading coefficient.
    pub fn content(&self) -> Q {
        ZPoly::primitive_from_rat(self).1
    }

    /// `x^d p(1/x)` with `d = deg p`.
    pub fn reversed(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(c)
    }

    /// Palindromic (`x^d p(1/x) = p`).
    pub fn is_palindromic(&self) -> bool {
        self.reversed() == *self
    }

    /// Serialization as space separated rationals `c0 c1 ...`; zero is `0`.
    pub fn to_coeff_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .map(fmt_rational)
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn parse(s: &str) -> Result<Self> {
        let coeffs = s
            .split_whitespace()
            .map(|t| {
                parse_rational(t).ok_or_else(|| Error::Parse {
                    line: 0,
                    msg: format!("bad rational `{t}`"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(coeffs))
    }

    pub fn roots_f64(&self) -> Vec<num_complex::Complex64> {
        crate::numeric::poly_roots(self)
    }

    /// Numerically real roots (imaginary part below `tol`), sorted.
    pub fn real_roots_f64(&self, tol: f64) -> Vec<f64> {
        let mut r: Vec<f64> = self
            .roots_f64()
            .into_iter()
            .filter(|z| z.im.abs() < tol)
            .map(|z| z.re)
            .collect();
        r.sort_by(f64::total_cmp);
        r
    }

    /// Lowest-terms integer coefficients when every coefficient is an
    /// integer; used for exact sign checks.
    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn max_abs_coeff(&self) -> Q {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Q::zero)
    }

    /// `true` if the polynomial has integer coefficients and every
    /// coefficient divides evenly by `n` (helper for tests).
    pub fn divisible_by_integer(&self, n: &BigInt) -> bool {
        self.coeffs
            .iter()
            .all(|c| c.is_integer() && c.to_integer().is_multiple_of(n))
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly({self})")
    }
}

/// Human form such as `x^2 - 1/2`.
impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = k == 0 || !a.is_one();
            if show_coeff {
                write!(f, "{}", fmt_rational(&a))?;
            }
            match k {
                0 => {}
                1 => write!(f, "{}x", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}x^{k}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, o: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        RatPoly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, o: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        RatPoly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, o: &RatPoly) -> RatPoly {
        if self.is_zero() || o.is_zero() {
            return RatPoly::zero();
        }
        let mut c = vec![Q::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        RatPoly::new(c)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatPoly {
            type Output = RatPoly;
            fn $m(self, o: RatPoly) -> RatPoly {
                (&self).$m(&o)
            }
        }
        impl $tr<&RatPoly> for RatPoly {
            type Output = RatPoly;
            fn $m(self, o: &RatPoly) -> RatPoly {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};
    use proptest::prelude::*;

    fn p(c: &[i64]) -> RatPoly {
        RatPoly::from_i64(c)
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[-1, 1])), p(&[-1, 1]));
        // Φ4 and Φ6
        assert_eq!(p(&[1, 0, 1]).gcd(&p(&[1, -1, 1])), RatPoly::one());
        assert_eq!(
            RatPoly::zero().gcd(&p(&[2, 4])),
            RatPoly::new(vec![qf(1, 2), q(1)])
        );
    }

    #[test]
    fn divrem_example() {
        let (qq, r) = p(&[0, 0, 0, 1]).divrem(&p(&[-2, 1])).unwrap();
        assert_eq!(qq, p(&[4, 2, 1]));
        assert_eq!(r, p(&[8]));
        assert_eq!(p(&[1]).divrem(&RatPoly::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn zero_has_no_degree() {
        assert_eq!(RatPoly::zero().degree(), None);
        assert_eq!(RatPoly::new(vec![q(0), q(0)]), RatPoly::zero());
        assert_eq!(p(&[3]).degree(), Some(0));
    }

    #[test]
    fn display_and_parse() {
        let h = RatPoly::new(vec![qf(-1, 2), q(0), q(1)]);
        assert_eq!(h.to_string(), "x^2 - 1/2");
        assert_eq!(h.to_coeff_string(), "-1/2 0 1");
        assert_eq!(RatPoly::parse("-1/2 0 1").unwrap(), h);
        assert_eq!(p(&[0, -3, 2]).to_string(), "2*x^2 - 3*x");
    }

    #[test]
    fn compose_and_eval() {
        let f = p(&[1, 0, 1]);
        let g = p(&[1, 1]);
        assert_eq!(f.compose(&g), p(&[2, 2, 1]));
        assert_eq!(f.eval(&q(3)), q(10));
    }

    fn small_poly() -> impl Strategy<Value = RatPoly> {
        prop::collection::vec((-9i64..=9, 1i64..=4), 0..6)
            .prop_map(|v| RatPoly::new(v.into_iter().map(|(n, d)| qf(n, d)).collect()))
    }

    proptest! {
        #[test]
        fn divrem_reconstructs(a in small_poly(), b in small_poly()) {
            prop_assume!(!b.is_zero());
            let (qq, r) = a.divrem(&b).unwrap();
            prop_assert_eq!(&(&qq * &b) + &r, a);
            prop_assert!(r.degree().is_none_or(|d| d < b.deg()));
        }

        #[test]
        fn gcd_divides_both(a in small_poly(), b in small_poly(), c in small_poly()) {
            let g = (&a * &c).gcd(&(&b * &c));
            if !g.is_zero() {
                prop_assert!((&a * &c).rem(&g).unwrap().is_zero());
                prop_assert!((&b * &c).rem(&g).unwrap().is_zero());
                if !c.is_zero() {
                    prop_assert!(g.rem(&c.monic()).unwrap().is_zero());
                }
            }
        }
    }
}
