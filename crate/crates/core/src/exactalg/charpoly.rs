//! Characteristic polynomials over ℚ.

use num_traits::{One, Zero};

use crate::rational::{QMatrix, Q};

use super::poly::RatPoly;

/// `det(xI - M)` by reduction to upper Hessenberg form followed by the
/// standard three-term recurrence on leading principal minors.
pub fn charpoly(m: &QMatrix) -> RatPoly {
    assert!(m.is_square(), "charpoly needs a square matrix");
    let n = m.nrows();
    let mut h = m.clone();
    for col in 0..n.saturating_sub(2) {
        let piv_row = col + 1;
        let Some(i) = (piv_row..n).find(|&i| !h[(i, col)].is_zero()) else {
            continue;
        };
        if i != piv_row {
            for j in 0..n {
                let tmp = h[(i, j)].clone();
                h[(i, j)] = h[(piv_row, j)].clone();
                h[(piv_row, j)] = tmp;
            }
            for r in 0..n {
                let tmp = h[(r, i)].clone();
                h[(r, i)] = h[(r, piv_row)].clone();
                h[(r, piv_row)] = tmp;
            }
        }
        let pivot = h[(piv_row, col)].clone();
        for r in piv_row + 1..n {
            if h[(r, col)].is_zero() {
                continue;
            }
            let u = &h[(r, col)] / &pivot;
            for j in 0..n {
                let delta = &u * &h[(piv_row, j)];
                h[(r, j)] -= delta;
            }
            for rr in 0..n {
                let delta = &u * &h[(rr, r)];
                h[(rr, piv_row)] += delta;
            }
        }
    }

    // p_k = det(xI - H[0..k, 0..k])
    let mut p: Vec<RatPoly> = Vec::with_capacity(n + 1);
    p.push(RatPoly::one());
    for k in 1..=n {
        let mut pk = RatPoly::new(vec![-h[(k - 1, k - 1)].clone(), Q::one()]) * &p[k - 1];
        let mut t = Q::one();
        for i in 1..k {
            t *= &h[(k - i, k - i - 1)];
            if t.is_zero() {
                break;
            }
            let c = &t * &h[(k - i - 1, k - 1)];
            if !c.is_zero() {
                pk = pk - p[k - i - 1].scale(&c);
            }
        }
        p.push(pk);
    }
    p.pop().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};
    use proptest::prelude::*;

    #[test]
    fn tiny_examples() {
        assert_eq!(charpoly(&QMatrix::from_i64(&[&[0]])), RatPoly::x());
        assert_eq!(
            charpoly(&QMatrix::from_i64(&[&[0, 1], &[1, 0]])),
            RatPoly::from_i64(&[-1, 0, 1])
        );
        assert_eq!(charpoly(&QMatrix::zeros(0, 0)), RatPoly::one());
    }

    /// Laplace expansion oracle over ℚ[x].
    fn charpoly_laplace(m: &QMatrix) -> RatPoly {
        fn det(rows: &[Vec<RatPoly>]) -> RatPoly {
            let n = rows.len();
            if n == 0 {
                return RatPoly::one();
            }
            let mut acc = RatPoly::zero();
            for j in 0..n {
                if rows[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<RatPoly>> = rows[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, e)| e.clone())
                            .collect()
                    })
                    .collect();
                let term = &rows[0][j] * &det(&minor);
                acc = if j % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
        let n = m.nrows();
        let rows: Vec<Vec<RatPoly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = -m[(i, j)].clone();
                        if i == j {
                            RatPoly::new(vec![c, Q::one()])
                        } else {
                            RatPoly::constant(c)
                        }
                    })
                    .collect()
            })
            .collect();
        det(&rows)
    }

    #[test]
    fn needs_row_swaps() {
        let m = QMatrix::from_i64(&[&[1, 0, 2, 0], &[0, 0, 0, 1], &[3, 0, 0, 0], &[0, 5, 0, 1]]);
        assert_eq!(charpoly(&m), charpoly_laplace(&m));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]
        #[test]
        fn matches_laplace(n in 1usize..6, entries in prop::collection::vec((-4i64..=4, 1i64..=3, 0u8..3), 36)) {
            let rows: Vec<Vec<Q>> = (0..n)
                .map(|i| (0..n).map(|j| {
                    let (a, b, z) = entries[i * 6 + j];
                    if z == 0 { q(0) } else { qf(a, b) }
                }).collect())
                .collect();
            let m = QMatrix::from_rows(rows);
            prop_assert_eq!(charpoly(&m), charpoly_laplace(&m));
        }
    }
}
