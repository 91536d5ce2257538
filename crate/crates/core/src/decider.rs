//! Exact decision procedures for pointwise periodicity and pointwise perfect
//! transfer at integer steps.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{psi, RatFun, RatPoly};
use crate::rational::{fmt_rational, qf, Q};
use crate::reduction::HermitianReduction;

pub use crate::exactalg::cyclotomic::{cyclotomic, euler_phi, real_cyclotomic, sharp, unsharp};

/// Default bound on cyclotomic orders for a polynomial of degree `d`.
pub fn default_m_bound(d: usize) -> u64 {
    3 * (d as u64).pow(3)
}

/// Largest order `m` whose `Φ_m` could have degree at most `d`, from
/// `m <= 3 φ(m)^{3/2}`.
fn totient_scan_limit(d: usize) -> u64 {
    (3.0 * (d as f64).powf(1.5)).floor() as u64 + 2
}

/// Writes `p` (after monic normalization) as a product of cyclotomic
/// polynomials `∏_{m ∈ L} Φ_m` with every `m <= m_bound`. Returns the sorted
/// multiset `L`, or `None` if no such product exists.
pub fn factor_into_cyclotomics(p: &RatPoly, m_bound: Option<u64>) -> Option<Vec<u64>> {
    let d = p.degree()?;
    let bound = m_bound
        .unwrap_or_else(|| default_m_bound(d))
        .min(totient_scan_limit(d));
    let mut rest = p.monic();
    let mut out = Vec::new();
    let mut m = 1;
    while rest.deg() > 0 && m <= bound {
        if euler_phi(m) as usize <= rest.deg() {
            let phi = cyclotomic(m).expect("m >= 1");
            while let Some(qt) = rest.div_exact(&phi) {
                out.push(m);
                rest = qt;
            }
        }
        m += 1;
    }
    rest.is_one().then_some(out)
}

fn lcm_of(orders: &[u64]) -> u64 {
    orders.iter().fold(1u64, |acc, &m| acc.lcm(&m))
}

fn distinct(orders: &[u64]) -> Vec<u64> {
    let mut v = orders.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

fn fmt_set(orders: &[u64]) -> String {
    let v: Vec<String> = distinct(orders).iter().map(u64::to_string).collect();
    format!("{{{}}}", v.join(","))
}

/// Outcome of the periodicity test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicityVerdict {
    pub periodic: bool,
    pub min_period: Option<u64>,
    /// Multiset of cyclotomic orders with `g^♯ = ∏ Φ_m`.
    pub orders: Vec<u64>,
    pub reason: Option<String>,
    /// `g = q / gcd(p, q)` for `ψ_S = p / q`.
    pub g: RatPoly,
}

impl PeriodicityVerdict {
    /// Distinct orders.
    pub fn order_set(&self) -> Vec<u64> {
        distinct(&self.orders)
    }
}

impl fmt::Display for PeriodicityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.min_period {
            Some(k) => write!(f, "PERIODIC min_period={k} L={}", fmt_set(&self.orders)),
            None => write!(
                f,
                "NOT_PERIODIC reason={}",
                self.reason.as_deref().unwrap_or("unknown")
            ),
        }
    }
}

/// `g = q / gcd(p, q)` for `f = p / q`.
fn pole_polynomial(f: &RatFun) -> RatPoly {
    let g = f.num().gcd(f.den());
    let g = if g.is_zero() { RatPoly::one() } else { g };
    f.den().div_exact(&g).expect("gcd divides").monic()
}

/// Pointwise `W`-periodicity at `a` for the clone set `S`.
pub fn decide_periodicity(red: &HermitianReduction, s: &[usize]) -> Result<PeriodicityVerdict> {
    if s.is_empty() {
        return Err(Error::EmptySubspace);
    }
    let psi_s = psi(red, s, s)?;
    Ok(periodicity_from_psi(&psi_s))
}

fn periodicity_from_psi(psi_s: &RatFun) -> PeriodicityVerdict {
    let g = pole_polynomial(psi_s);
    let gs = sharp(&g).expect("denominator is nonzero");
    match factor_into_cyclotomics(&gs, None) {
        Some(orders) => PeriodicityVerdict {
            periodic: true,
            min_period: Some(lcm_of(&orders)),
            orders,
            reason: None,
            g,
        },
        None => PeriodicityVerdict {
            periodic: false,
            min_period: None,
            orders: Vec::new(),
            reason: Some("g-sharp-not-cyclotomic".into()),
            g,
        },
    }
}

/// Stage at which the transfer algorithm stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    NotCospectral,
    NotPeriodic,
    OddTau,
    SupportSplitFails,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::NotCospectral => "not-cospectral",
            Stage::NotPeriodic => "not-periodic",
            Stage::OddTau => "odd-tau",
            Stage::SupportSplitFails => "support-split-fails",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferVerdict {
    pub occurs: bool,
    pub time: Option<u64>,
    pub gamma: Option<i8>,
    /// Orders `m` with `τ/m` even, carried by the eigenvalues where the
    /// final state has phase `+1`.
    pub l_plus: Vec<u64>,
    pub l_minus: Vec<u64>,
    pub stage: Option<Stage>,
}

impl TransferVerdict {
    fn refuse(stage: Stage) -> Self {
        TransferVerdict {
            occurs: false,
            time: None,
            gamma: None,
            l_plus: Vec::new(),
            l_minus: Vec::new(),
            stage: Some(stage),
        }
    }
}

impl fmt::Display for TransferVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.time, self.gamma) {
            (Some(t), Some(g)) => write!(
                f,
                "TRANSFER time={t} gamma={}",
                if g > 0 { "+1" } else { "-1" }
            ),
            _ => write!(
                f,
                "NO_TRANSFER stage={}",
                self.stage
                    .map_or_else(|| "unknown".to_string(), |s| s.to_string())
            ),
        }
    }
}

fn product_of_cyclotomics(orders: &[u64]) -> RatPoly {
    orders.iter().fold(RatPoly::one(), |acc, &m| {
        acc * cyclotomic(m).expect("m >= 1")
    })
}

/// Pointwise perfect transfer from the clones `S` to the clones `T` at an
/// integer step.
///
/// Steps: cospectrality `ψ_S = ψ_T`; `g^♯` a product of cyclotomics with
/// orders `L`; `τ = lcm(L)` even; then the poles of `ψ_S + ψ_{S,T}` (where
/// `E B_S = E B_T`) must be exactly the orders with `τ/m` even and the poles
/// of `ψ_S - ψ_{S,T}` exactly those with `τ/m` odd, giving `γ = +1`; the
/// swapped assignment gives `γ = -1`. The time is `τ/2`.
pub fn decide_transfer(
    red: &HermitianReduction,
    s: &[usize],
    t: &[usize],
) -> Result<TransferVerdict> {
    if s.is_empty() {
        return Err(Error::EmptySubspace);
    }
    if s.len() != t.len() {
        return Err(Error::DimensionMismatch {
            expected: s.len(),
            got: t.len(),
        });
    }
    let psi_s = psi(red, s, s)?;
    let psi_t = psi(red, t, t)?;
    if psi_s != psi_t {
        return Ok(TransferVerdict::refuse(Stage::NotCospectral));
    }
    let per = periodicity_from_psi(&psi_s);
    let Some(tau) = per.min_period else {
        return Ok(TransferVerdict::refuse(Stage::NotPeriodic));
    };
    if tau % 2 == 1 {
        return Ok(TransferVerdict::refuse(Stage::OddTau));
    }
    let (l_plus, l_minus): (Vec<u64>, Vec<u64>) =
        per.orders.iter().partition(|&&m| (tau / m) % 2 == 0);

    let psi_st = psi(red, s, t)?;
    let sum_den = sharp((&psi_s + &psi_st).den()).expect("nonzero");
    let diff_den = sharp((&psi_s - &psi_st).den()).expect("nonzero");
    let prod_plus = product_of_cyclotomics(&l_plus);
    let prod_minus = product_of_cyclotomics(&l_minus);
    let gamma = if sum_den == prod_plus && diff_den == prod_minus {
        1
    } else if sum_den == prod_minus && diff_den == prod_plus {
        -1
    } else {
        return Ok(TransferVerdict::refuse(Stage::SupportSplitFails));
    };
    Ok(TransferVerdict {
        occurs: true,
        time: Some(tau / 2),
        gamma: Some(gamma),
        l_plus,
        l_minus,
        stage: None,
    })
}

/// Pretty good transfer for the support `{0, ±c}`: true iff `arccos(c)` is
/// not a rational multiple of `π`, i.e. `c²` is not one of the squared
/// cosines of pure geodetic angles `{0, 1/4, 1/2, 3/4, 1}`.
pub fn decide_pretty_good_special(c_sq: &Q) -> Result<bool> {
    if !c_sq.is_positive() || *c_sq > Q::one() {
        return Err(Error::UnsupportedSupport);
    }
    let geodetic = [qf(1, 4), qf(1, 2), qf(3, 4), Q::one()];
    Ok(!geodetic.contains(c_sq))
}

/// Extracts `c²` from support factors of the form `Λ⁻ = {0}` and
/// `Λ⁺ = {±c}` (one factor `x² - c²` or the two factors `x ∓ c`).
pub fn special_support_c_sq(plus: &[RatPoly], minus: &[RatPoly]) -> Result<Q> {
    if minus.len() != 1 || minus[0] != RatPoly::x() {
        return Err(Error::UnsupportedSupport);
    }
    let prod = plus.iter().fold(RatPoly::one(), |acc, f| acc * f);
    let is_even_quadratic = prod.degree() == Some(2) && prod.coeff(1).is_zero() && prod.is_monic();
    if !is_even_quadratic {
        return Err(Error::UnsupportedSupport);
    }
    let c_sq = -prod.coeff(0);
    if !c_sq.is_positive() {
        return Err(Error::UnsupportedSupport);
    }
    Ok(c_sq)
}

pub fn fmt_orders(orders: &[u64]) -> String {
    fmt_set(orders)
}

/// Human-readable `c²` for reports.
pub fn fmt_c_sq(c: &Q) -> String {
    fmt_rational(c)
}
