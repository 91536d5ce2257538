use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::Q;

use super::poly::RatPoly;

/// Reduced rational function `num / den` with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: RatPoly,
    den: RatPoly,
}

impl RatFun {
    pub fn new(num: RatPoly, den: RatPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if num.is_zero() {
            return Ok(RatFun {
                num,
                den: RatPoly::one(),
            });
        }
        let g = num.gcd(&den);
        let num = num.div_exact(&g).expect("gcd divides");
        let den = den.div_exact(&g).expect("gcd divides");
        let l = den.lead().recip();
        Ok(RatFun {
            num: num.scale(&l),
            den: den.scale(&l),
        })
    }

    pub fn zero() -> Self {
        RatFun {
            num: RatPoly::zero(),
            den: RatPoly::one(),
        }
    }

    pub fn num(&self) -> &RatPoly {
        &self.num
    }

    pub fn den(&self) -> &RatPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFun {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn eval(&self, x: &Q) -> Option<Q> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.num.eval_f64(x) / self.den.eval_f64(x)
    }

    /// Serialized as `num | den`, each a coefficient list.
    pub fn to_coeff_string(&self) -> String {
        format!(
            "{} | {}",
            self.num.to_coeff_string(),
            self.den.to_coeff_string()
        )
    }

    pub fn parse(s: &str) -> Result<Self> {
        let (n, d) = s.split_once('|').ok_or(Error::Parse {
            line: 0,
            msg: "expected `num | den`".into(),
        })?;
        Self::new(RatPoly::parse(n)?, RatPoly::parse(d)?)
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFun({self})")
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, o: &RatFun) -> RatFun {
        RatFun::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
        .expect("nonzero denominators")
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, o: &RatFun) -> RatFun {
        self + &(-o)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}
