//! Integer polynomials: content, primitive parts and subresultant gcd.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Q;

use super::poly::RatPoly;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    /// Clears denominators and content. Returns the primitive polynomial `z`
    /// (positive leading coefficient) and the rational `c` with `z = c * p`.
    pub fn primitive_from_rat(p: &RatPoly) -> (ZPoly, Q) {
        let mut l = BigInt::one();
        for c in p.coeffs() {
            l = l.lcm(c.denom());
        }
        let lq = Q::from_integer(l);
        let ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c * &lq).to_integer()).collect();
        let z = ZPoly::new(ints);
        let content = z.content();
        if content.is_zero() {
            return (z, Q::one());
        }
        let pp = z.primitive_part();
        (pp, lq / Q::from_integer(content))
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::from_integers(&self.coeffs)
    }

    /// Gcd of the coefficients, signed like the leading coefficient.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        if self.lead().is_negative() {
            -g
        } else {
            g
        }
    }

    pub fn primitive_part(&self) -> ZPoly {
        let c = self.content();
        if c.is_zero() {
            return self.clone();
        }
        ZPoly::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    pub fn neg(&self) -> ZPoly {
        ZPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, k: &BigInt) -> ZPoly {
        ZPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, o: &ZPoly) -> ZPoly {
        if self.is_zero() || o.is_zero() {
            return ZPoly::new(vec![]);
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        ZPoly::new(c)
    }

    pub fn max_abs(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// Pseudo-remainder: `lc(d)^(deg a - deg d + 1) * a mod d`.
    pub fn pseudo_rem(&self, d: &ZPoly) -> ZPoly {
        let dd = d.deg();
        let ld = d.lead();
        let Some(n) = self.degree() else {
            return self.clone();
        };
        if n < dd {
            return self.clone();
        }
        let mut e = n - dd + 1;
        let mut r = self.clone();
        while !r.is_zero() && r.deg() >= dd {
            let lr = r.lead();
            let shift = r.deg() - dd;
            let mut c: Vec<BigInt> = r.coeffs.iter().map(|x| x * &ld).collect();
            for (i, dc) in d.coeffs.iter().enumerate() {
                c[shift + i] -= &lr * dc;
            }
            r = ZPoly::new(c);
            e -= 1;
        }
        r.scale(&num_traits::pow(ld, e))
    }

    /// Exact quotient over ℤ, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &ZPoly) -> Option<ZPoly> {
        let dd = d.degree()?;
        let Some(n) = self.degree() else {
            return Some(self.clone());
        };
        if n < dd {
            return None;
        }
        let ld = d.lead();
        let mut r = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let (c, m) = r[k + dd].div_rem(&ld);
            if !m.is_zero() {
                return None;
            }
            if c.is_zero() {
                continue;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] -= &c * dc;
            }
            quot[k] = c;
        }
        r.iter().all(Zero::is_zero).then(|| ZPoly::new(quot))
    }

    /// Primitive gcd with positive leading coefficient (subresultant PRS).
    pub fn gcd(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() {
            return other.primitive_part();
        }
        if other.is_zero() {
            return self.primitive_part();
        }
        let (mut a, mut b) = if self.deg() >= other.deg() {
            (self.primitive_part(), other.primitive_part())
        } else {
            (other.primitive_part(), self.primitive_part())
        };
        let mut g = BigInt::one();
        let mut h = BigInt::one();
        loop {
            let delta = a.deg() - b.deg();
            let r = a.pseudo_rem(&b);
            if r.is_zero() {
                break;
            }
            if r.deg() == 0 {
                return ZPoly::new(vec![BigInt::one()]);
            }
            a = b;
            let denom = &g * num_traits::pow(h.clone(), delta);
            b = ZPoly::new(r.coeffs.iter().map(|c| c / &denom).collect());
            g = a.lead();
            h = if delta == 0 {
                h
            } else {
                let num = num_traits::pow(g.clone(), delta);
                let den = num_traits::pow(h.clone(), delta - 1);
                num / den
            };
        }
        let pp = b.primitive_part();
        if pp.lead().is_negative() {
            pp.neg()
        } else {
            pp
        }
    }
}
