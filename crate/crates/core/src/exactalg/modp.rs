//! Polynomials over a small prime field `F_p` (`p < 2^31`), used by the
//! Zassenhaus factorizer.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::Rng;

pub type Fp = Vec<u64>;

pub fn trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn deg(a: &Fp) -> usize {
    a.len().saturating_sub(1)
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

pub fn inv(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

pub fn add(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

pub fn sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

pub fn mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            c[i + j] = (c[i + j] + x * y) % p;
        }
    }
    trim(c)
}

pub fn scale(a: &Fp, k: u64, p: u64) -> Fp {
    trim(a.iter().map(|&x| x * (k % p) % p).collect())
}

pub fn monic(a: &Fp, p: u64) -> Fp {
    match a.last() {
        Some(&l) => scale(a, inv(l, p), p),
        None => Vec::new(),
    }
}

pub fn divrem(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    assert!(!b.is_empty(), "division by zero polynomial mod p");
    let mut r = a.clone();
    if r.len() < b.len() {
        return (Vec::new(), trim(r));
    }
    let db = b.len() - 1;
    let il = inv(*b.last().unwrap(), p);
    let mut q = vec![0u64; r.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db] * il % p;
        if c == 0 {
            continue;
        }
        q[k] = c;
        for (i, &bc) in b.iter().enumerate() {
            r[k + i] = (r[k + i] + p - c * bc % p) % p;
        }
    }
    r.truncate(db);
    (trim(q), trim(r))
}

pub fn rem(a: &Fp, b: &Fp, p: u64) -> Fp {
    divrem(a, b, p).1
}

pub fn gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

/// Extended Euclid: returns `(g, s, t)` with `s a + t b = g` monic.
pub fn xgcd(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp, Fp) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        let t2 = sub(&t0, &mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let l = inv(*r0.last().expect("gcd of zero polynomials"), p);
    (scale(&r0, l, p), scale(&s0, l, p), scale(&t0, l, p))
}

pub fn derivative(a: &Fp, p: u64) -> Fp {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| (k as u64 % p) * c % p)
            .collect(),
    )
}

/// `base^e mod m`.
pub fn pow_poly_mod(base: &Fp, e: &BigUint, m: &Fp, p: u64) -> Fp {
    let mut r = vec![1u64];
    let b = rem(base, m, p);
    for i in (0..e.bits()).rev() {
        r = rem(&mul(&r, &r, p), m, p);
        if e.bit(i) {
            r = rem(&mul(&r, &b, p), m, p);
        }
    }
    r
}

pub fn is_squarefree(f: &Fp, p: u64) -> bool {
    let d = derivative(f, p);
    !d.is_empty() && deg(&gcd(f, &d, p)) == 0
}

/// Distinct-degree factorization of a monic square-free polynomial.
/// Returns pairs `(product of all irreducible factors of degree d, d)`.
pub fn distinct_degree(f: &Fp, p: u64) -> Vec<(Fp, usize)> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let x = vec![0u64, 1];
    let mut h = x.clone();
    let pp = BigUint::from(p);
    let mut d = 0;
    while deg(&f) >= 2 * (d + 1) {
        d += 1;
        h = pow_poly_mod(&h, &pp, &f, p);
        let g = gcd(&sub(&h, &x, p), &f, p);
        if deg(&g) > 0 {
            f = divrem(&f, &g, p).0;
            h = rem(&h, &f, p);
            out.push((g, d));
        }
    }
    if deg(&f) > 0 {
        let d = deg(&f);
        out.push((monic(&f, p), d));
    }
    out
}

/// Cantor-Zassenhaus equal-degree splitting (odd `p`).
pub fn equal_degree<R: Rng>(f: &Fp, d: usize, p: u64, rng: &mut R) -> Vec<Fp> {
    let n = deg(f);
    if n == d {
        return vec![monic(f, p)];
    }
    let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) >> 1;
    loop {
        let a: Fp = trim((0..n).map(|_| rng.random_range(0..p)).collect());
        if deg(&a) == 0 {
            continue;
        }
        let g = gcd(&a, f, p);
        let split = if deg(&g) > 0 {
            g
        } else {
            let b = sub(&pow_poly_mod(&a, &e, f, p), &vec![1], p);
            if b.is_empty() {
                continue;
            }
            gcd(&b, f, p)
        };
        if deg(&split) > 0 && deg(&split) < n {
            let other = divrem(f, &split, p).0;
            let mut out = equal_degree(&split, d, p, rng);
            out.extend(equal_degree(&other, d, p, rng));
            return out;
        }
    }
}

/// Monic irreducible factors of a monic square-free `f` over `F_p`.
pub fn factor_squarefree<R: Rng>(f: &Fp, p: u64, rng: &mut R) -> Vec<Fp> {
    let mut out = Vec::new();
    for (g, d) in distinct_degree(f, p) {
        out.extend(equal_degree(&g, d, p, rng));
    }
    out
}

pub fn is_zero(a: &Fp) -> bool {
    a.iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn splits_x4_minus_1_mod_5() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = vec![4u64, 0, 0, 0, 1];
        let mut fs = factor_squarefree(&f, 5, &mut rng);
        fs.sort();
        assert_eq!(fs, vec![vec![1, 1], vec![2, 1], vec![3, 1], vec![4, 1]]);
    }

    #[test]
    fn irreducible_quadratic_mod_3() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        // x^2 + 1 is irreducible mod 3
        assert_eq!(
            factor_squarefree(&vec![1, 0, 1], 3, &mut rng),
            vec![vec![1, 0, 1]]
        );
    }

    #[test]
    fn xgcd_bezout() {
        let p = 7;
        let a = vec![1u64, 2, 1];
        let b = vec![3u64, 1];
        let (g, s, t) = xgcd(&a, &b, p);
        assert_eq!(add(&mul(&s, &a, p), &mul(&t, &b, p), p), g);
    }
}
