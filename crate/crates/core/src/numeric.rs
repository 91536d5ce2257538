//! Double-precision helpers: polynomial roots, symmetric reconstitution of
//! `H` and eigenvalue clustering.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use num_traits::Zero;

use crate::exactalg::RatPoly;
use crate::rational::{to_f64, QMatrix, Q};

/// Complex roots from the eigenvalues of the companion matrix.
pub fn poly_roots(p: &RatPoly) -> Vec<Complex64> {
    let Some(n) = p.degree() else {
        return Vec::new();
    };
    if n == 0 {
        return Vec::new();
    }
    let m = p.monic();
    let mut c = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        c[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        c[(i, n - 1)] = -to_f64(&m.coeff(i));
    }
    c.complex_eigenvalues().iter().copied().collect()
}

/// Symmetric `H = Δ^{-1} H_rat Δ` in doubles.
pub fn symmetric_from_rat(h_rat: &QMatrix, delta_sq: &[Q]) -> DMatrix<f64> {
    let n = h_rat.nrows();
    let h = DMatrix::from_fn(n, n, |i, j| {
        let x = &h_rat[(i, j)];
        if x.is_zero() {
            0.0
        } else {
            to_f64(x) * to_f64(&(&delta_sq[j] / &delta_sq[i])).sqrt()
        }
    });
    (&h + h.transpose()) * 0.5
}

/// An eigenvalue cluster: mean value and an orthonormal basis (columns) of
/// the eigenspace.
#[derive(Clone, Debug)]
pub struct Cluster {
    pub value: f64,
    pub vectors: DMatrix<f64>,
}

impl Cluster {
    pub fn multiplicity(&self) -> usize {
        self.vectors.ncols()
    }

    /// `E_λ v` for the orthogonal projection onto this eigenspace.
    pub fn project(&self, v: &DVector<f64>) -> DVector<f64> {
        &self.vectors * (self.vectors.transpose() * v)
    }

    pub fn projector(&self) -> DMatrix<f64> {
        &self.vectors * self.vectors.transpose()
    }
}

/// Eigendecomposition of a symmetric matrix with eigenvalues grouped when
/// consecutive values differ by at most `tol`.
pub fn clustered_eigen(m: &DMatrix<f64>, tol: f64) -> Vec<Cluster> {
    let n = m.nrows();
    if n == 0 {
        return Vec::new();
    }
    let eig = SymmetricEigen::new(m.clone());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &i in &order {
        match groups.last_mut() {
            Some(g) if eig.eigenvalues[i] - eig.eigenvalues[*g.last().unwrap()] <= tol => g.push(i),
            _ => groups.push(vec![i]),
        }
    }
    groups
        .into_iter()
        .map(|g| {
            let value = g.iter().map(|&i| eig.eigenvalues[i]).sum::<f64>() / g.len() as f64;
            let vectors = DMatrix::from_columns(
                &g.iter()
                    .map(|&i| eig.eigenvectors.column(i).into_owned())
                    .collect::<Vec<_>>(),
            );
            Cluster { value, vectors }
        })
        .collect()
}

/// Checks the gap guard: adjacent clusters closer than `10 * tol` whose
/// `behaves` labels differ make the clustering indeterminate.
pub fn guard_gaps<L: PartialEq>(
    clusters: &[Cluster],
    tol: f64,
    behaves: impl Fn(&Cluster) -> L,
) -> Result<()> {
    for w in clusters.windows(2) {
        let gap = w[1].value - w[0].value;
        if gap <= 10.0 * tol && behaves(&w[0]) != behaves(&w[1]) {
            return Err(Error::IndeterminateClustering(
                0.5 * (w[0].value + w[1].value),
            ));
        }
    }
    Ok(())
}

pub fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0f64, |a, x| a.max(x.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_x2_minus_quarter() {
        let mut r: Vec<f64> = poly_roots(&RatPoly::new(vec![
            Q::new((-1).into(), 4.into()),
            Q::from_integer(0.into()),
            Q::from_integer(1.into()),
        ]))
        .iter()
        .map(|z| z.re)
        .collect();
        r.sort_by(f64::total_cmp);
        assert!((r[0] + 0.5).abs() < 1e-12 && (r[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn clusters_repeated_eigenvalues() {
        // adjacency of C4: eigenvalues -2, 0, 0, 2
        let a = DMatrix::from_row_slice(
            4,
            4,
            &[
                0., 1., 0., 1., 1., 0., 1., 0., 0., 1., 0., 1., 1., 0., 1., 0.,
            ],
        );
        let cl = clustered_eigen(&a, 1e-9);
        assert_eq!(cl.len(), 3);
        assert_eq!(cl[1].multiplicity(), 2);
        let total: DMatrix<f64> = cl
            .iter()
            .map(Cluster::projector)
            .fold(DMatrix::zeros(4, 4), |a, b| a + b);
        assert!(max_abs(&(total - DMatrix::identity(4, 4))) < 1e-12);
    }
}
