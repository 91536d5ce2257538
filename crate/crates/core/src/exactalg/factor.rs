//! Factorization over ℚ: square-free decomposition, trial division by the
//! minimal polynomials of `cos(2π/m)`, then Zassenhaus over ℤ.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::cyclotomic::{euler_phi, real_cyclotomic};
use super::integer::ZPoly;
use super::modp::{self, Fp};
use super::poly::RatPoly;

/// Largest `m` tried by cyclotomic trial division before falling back to the
/// general factorizer.
const TRIAL_LIMIT: u64 = 120;

/// Yun's algorithm. Returns monic square-free `(a_i, i)` with
/// `monic(f) = ∏ a_i^i`; trivial factors are omitted.
pub fn square_free(f: &RatPoly) -> Vec<(RatPoly, usize)> {
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let f = f.monic();
    let df = f.derivative();
    let c = f.gcd(&df);
    let mut b = f.div_exact(&c).expect("gcd divides");
    let mut cc = df.div_exact(&c).expect("gcd divides");
    let mut d = &cc - &b.derivative();
    let mut i = 1;
    while b.deg() > 0 {
        let a = b.gcd(&d);
        if a.deg() > 0 {
            out.push((a.clone(), i));
        }
        b = b.div_exact(&a).expect("gcd divides");
        cc = d.div_exact(&a).expect("gcd divides");
        d = &cc - &b.derivative();
        i += 1;
    }
    out
}

/// Monic ℚ-irreducible factors with multiplicities, sorted by degree and
/// then coefficients.
pub fn factor(f: &RatPoly) -> Vec<(RatPoly, usize)> {
    let mut out = Vec::new();
    for (part, mult) in square_free(f) {
        let mut rest = part;
        for m in 1..=TRIAL_LIMIT {
            if rest.deg() == 0 {
                break;
            }
            let phi = euler_phi(m) as usize;
            if m > 2 && phi / 2 > rest.deg() {
                continue;
            }
            let psi = real_cyclotomic(m).expect("m > 0");
            if let Some(q) = rest.div_exact(&psi) {
                out.push((psi, mult));
                rest = q;
            }
        }
        if rest.deg() > 0 {
            let (z, _) = ZPoly::primitive_from_rat(&rest);
            for g in factor_squarefree_z(&z) {
                out.push((g.to_rat().monic(), mult));
            }
        }
    }
    out.sort_by(|(a, _), (b, _)| {
        a.deg()
            .cmp(&b.deg())
            .then_with(|| a.coeffs().cmp(b.coeffs()))
    });
    out
}

/// Irreducible factors of a primitive square-free integer polynomial.
pub fn factor_squarefree_z(f: &ZPoly) -> Vec<ZPoly> {
    let n = f.deg();
    if n <= 1 {
        return vec![f.clone()];
    }
    // Pull out x if present: Zassenhaus below needs f(0) != 0 only for
    // convenience, not correctness, but this keeps primes small.
    if f.coeffs()[0].is_zero() {
        let x = ZPoly::from_i64(&[0, 1]);
        let mut out = vec![x.clone()];
        out.extend(factor_squarefree_z(&f.div_exact(&x).expect("x divides")));
        return out;
    }
    let lc = f.lead();
    let Some((p, factors)) = choose_prime(f) else {
        unreachable!(
            "a square-free integer polynomial is square-free modulo all but finitely many primes"
        );
    };
    if factors.len() == 1 {
        return vec![f.clone()];
    }
    // Bound on coefficients of any factor times lc (Mignotte-style).
    let bound =
        BigInt::from(2) * lc.abs() * (BigInt::one() << n) * BigInt::from(n + 1) * f.max_abs();
    let pb = BigInt::from(p);
    let mut k = 1;
    let mut modulus = pb.clone();
    while modulus <= bound {
        modulus *= &pb;
        k += 1;
    }
    let lifted = hensel_lift(f, &factors, p, k);
    recombine(f, lifted, &modulus)
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| {
        (3..)
            .step_by(2)
            .take_while(|d| d * d <= n)
            .all(|d| n % d != 0)
    })
}

fn reduce_mod_p(f: &ZPoly, p: u64) -> Fp {
    let pb = BigInt::from(p);
    modp::trim(
        f.coeffs()
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().expect("reduced below p"))
            .collect(),
    )
}

/// Picks among the first few usable primes the one giving the fewest
/// modular factors.
fn choose_prime(f: &ZPoly) -> Option<(u64, Vec<Fp>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut best: Option<(u64, Vec<Fp>)> = None;
    let mut tried = 0;
    for p in small_primes().take(400) {
        let lc_mod = f.lead().mod_floor(&BigInt::from(p));
        if lc_mod.is_zero() {
            continue;
        }
        let fp = modp::monic(&reduce_mod_p(f, p), p);
        if !modp::is_squarefree(&fp, p) {
            continue;
        }
        let fs = modp::factor_squarefree(&fp, p, &mut rng);
        if best.as_ref().is_none_or(|(_, b)| fs.len() < b.len()) {
            best = Some((p, fs));
        }
        tried += 1;
        if tried == 6 || best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    best
}

type ZVec = Vec<BigInt>;

fn zmod(a: &[BigInt], m: &BigInt) -> ZVec {
    let mut v: ZVec = a.iter().map(|c| c.mod_floor(m)).collect();
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn zmul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZVec {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    zmod(&c, m)
}

fn zsub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZVec {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    let c: ZVec = (0..n)
        .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
        .collect();
    zmod(&c, m)
}

fn to_fp(a: &[BigInt], p: u64) -> Fp {
    let pb = BigInt::from(p);
    modp::trim(
        a.iter()
            .map(|c| c.mod_floor(&pb).to_u64().unwrap())
            .collect(),
    )
}

fn from_fp(a: &Fp) -> ZVec {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// Lifts `f ≡ g h (mod p)` with `g`, `h` monic to a factorization modulo
/// `p^k`, where `f` is monic modulo `p^k`.
fn lift_pair(f: &[BigInt], g: &Fp, h: &Fp, p: u64, k: u32) -> (ZVec, ZVec) {
    let (_, s, t) = modp::xgcd(g, h, p);
    let pb = BigInt::from(p);
    let mut gz = from_fp(g);
    let mut hz = from_fp(h);
    let mut pj = pb.clone();
    for _ in 1..k {
        let next = &pj * &pb;
        let diff = zsub(f, &zmul(&gz, &hz, &next), &next);
        let e: ZVec = diff.iter().map(|c| c / &pj).collect();
        let e = to_fp(&e, p);
        let g_p = to_fp(&gz, p);
        let h_p = to_fp(&hz, p);
        let (qq, dh) = modp::divrem(&modp::mul(&e, &s, p), &h_p, p);
        let dg = modp::add(&modp::mul(&e, &t, p), &modp::mul(&qq, &g_p, p), p);
        let add_scaled = |base: &ZVec, delta: &Fp| -> ZVec {
            let n = base.len().max(delta.len());
            let z = BigInt::zero();
            let c: ZVec = (0..n)
                .map(|i| {
                    base.get(i).unwrap_or(&z)
                        + &pj * BigInt::from(delta.get(i).copied().unwrap_or(0))
                })
                .collect();
            zmod(&c, &next)
        };
        gz = add_scaled(&gz, &dg);
        hz = add_scaled(&hz, &dh);
        pj = next;
    }
    (gz, hz)
}

fn hensel_lift(f: &ZPoly, factors: &[Fp], p: u64, k: u32) -> Vec<ZVec> {
    let pk = BigInt::from(p).pow(k);
    let lc_inv = f
        .lead()
        .modinv(&pk)
        .expect("leading coefficient is a unit modulo p^k");
    let mut target: ZVec = zmod(
        &f.coeffs().iter().map(|c| c * &lc_inv).collect::<Vec<_>>(),
        &pk,
    );
    let mut out = Vec::with_capacity(factors.len());
    for i in 0..factors.len() - 1 {
        let g = &factors[i];
        let mut h: Fp = vec![1];
        for other in &factors[i + 1..] {
            h = modp::mul(&h, other, p);
        }
        let (gz, hz) = lift_pair(&target, g, &h, p, k);
        out.push(gz);
        target = hz;
    }
    out.push(target);
    out
}

fn symmetric(a: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m >> 1;
    ZPoly::new(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn recombine(f: &ZPoly, mut lifted: Vec<ZVec>, modulus: &BigInt) -> Vec<ZPoly> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut s = 1;
    'outer: while 2 * s <= lifted.len() {
        for subset in combinations(lifted.len(), s) {
            let lc = rest.lead();
            let mut prod: ZVec = vec![lc.clone()];
            for &i in &subset {
                prod = zmul(&prod, &lifted[i], modulus);
            }
            let cand = symmetric(&prod, modulus).primitive_part();
            if cand.deg() == 0 {
                continue;
            }
            if let Some(qt) = rest.div_exact(&cand) {
                out.push(cand);
                rest = qt;
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
                continue 'outer;
            }
        }
        s += 1;
    }
    if rest.deg() > 0 {
        out.push(rest.primitive_part());
    }
    out.into_iter()
        .map(|g| {
            if g.lead().sign() == Sign::Minus {
                g.neg()
            } else {
                g
            }
        })
        .collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}
