//! Least-squares projection onto a finite span via its Gram matrix.

use crate::{Cplx, DbError, Result};
use nalgebra::{DMatrix, DVector, SymmetricEigen};

/// Distance from a target to the span of a finite family.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Projection {
    /// `‖t - P t‖`.
    pub residual: f64,
    /// `λ_max / λ_min` of the Gram matrix.
    pub condition: f64,
}

/// Given the Hermitian Gram matrix `G_jl = ⟨v_j, v_l⟩`, the moments
/// `r_j = ⟨v_j, t⟩` and `‖t‖²`, returns `sqrt(‖t‖² - rᴴ G⁺ r)`.
///
/// Eigenvalues below `1e-14 λ_max` are dropped (pseudo-inverse).
pub fn project(gram: &[Vec<Cplx>], moments: &[Cplx], target_sq: f64) -> Result<Projection> {
    let n = moments.len();
    if n == 0 {
        return Err(DbError::EmptyDictionary);
    }
    if gram.len() != n || gram.iter().any(|row| row.len() != n) {
        return Err(DbError::invalid("Gram matrix shape does not match the moments"));
    }
    let g = DMatrix::from_fn(n, n, |j, l| 0.5 * (gram[j][l] + gram[l][j].conj()));
    let r = DVector::from_column_slice(moments);
    let eig = SymmetricEigen::new(g);
    let lmax = eig.eigenvalues.iter().cloned().fold(0.0f64, f64::max);
    let lmin = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
    let cut = 1e-14 * lmax;
    let mut captured = 0.0;
    for (k, &lam) in eig.eigenvalues.iter().enumerate() {
        if lam > cut {
            let v = eig.eigenvectors.column(k);
            captured += v.dotc(&r).norm_sqr() / lam;
        }
    }
    let condition = if lmin > 0.0 { lmax / lmin } else { f64::INFINITY };
    Ok(Projection { residual: (target_sq - captured).max(0.0).sqrt(), condition })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euclidean_projection() {
        // v1 = e1, v2 = e1 + e2, t = (1, 2, 3): distance 3.
        let v = [[1.0, 0.0, 0.0], [1.0, 1.0, 0.0]];
        let t = [1.0, 2.0, 3.0];
        let dot = |a: &[f64; 3], b: &[f64; 3]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
        let gram: Vec<Vec<Cplx>> = v.iter().map(|a| v.iter().map(|b| Cplx::from(dot(a, b))).collect()).collect();
        let r: Vec<Cplx> = v.iter().map(|a| Cplx::from(dot(a, &t))).collect();
        let p = project(&gram, &r, dot(&t, &t)).unwrap();
        assert!((p.residual - 3.0).abs() < 1e-12);
    }

    #[test]
    fn empty_family() {
        assert_eq!(project(&[], &[], 1.0), Err(DbError::EmptyDictionary));
    }
}
