//! Orthonormal basis of su(N) under `⟨A, B⟩ = −½ tr(AB)`.
//!
//! For N = 2 the basis is
//! `e₁ = [[0, i], [i, 0]]`, `e₂ = [[0, −1], [1, 0]]`, `e₃ = [[i, 0], [0, −i]]`.
//! Larger N uses `i` times the generalized Gell-Mann matrices, ordered pairwise
//! (symmetric, antisymmetric) and then diagonal, with the antisymmetric sign
//! chosen so that N = 2 reproduces the list above.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::{CMat, Mat};
use crate::{re, C64, I};

/// Membership tolerance for [`SuBasis::project`].
pub const ALGEBRA_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct SuBasis {
    n: usize,
    elements: Vec<CMat>,
}

/// `⟨A, B⟩ = −½ tr(AB)`, real part.
pub fn inner(a: &CMat, b: &CMat) -> f64 {
    -0.5 * (a * b).trace().re
}

/// Anti-Hermitian and trace residuals of `m`.
pub fn algebra_residuals(m: &CMat) -> (f64, f64) {
    ((m + &m.dagger()).norm(), m.trace().norm())
}

impl SuBasis {
    pub fn new(n: usize) -> Self {
        assert!(n >= 2, "su(N) needs N >= 2");
        let unit = |j: usize, k: usize| Mat::from_fn(n, |a, b| if a == j && b == k { re(1.0) } else { re(0.0) });
        let mut elements = Vec::with_capacity(n * n - 1);
        for j in 0..n {
            for k in j + 1..n {
                let (ejk, ekj) = (unit(j, k), unit(k, j));
                elements.push((&ejk + &ekj).scale_c(I));
                elements.push(&ekj - &ejk);
            }
        }
        for l in 1..n {
            let w = libm::sqrt(2.0 / (l * (l + 1)) as f64);
            let d = Mat::from_fn(n, |a, b| {
                if a != b {
                    re(0.0)
                } else if a < l {
                    C64::new(0.0, w)
                } else if a == l {
                    C64::new(0.0, -w * l as f64)
                } else {
                    re(0.0)
                }
            });
            elements.push(d);
        }
        SuBasis { n, elements }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[CMat] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Coefficients `c` with `m = Σ c_j e_j`.
    pub fn project(&self, m: &CMat) -> Result<Vec<f64>> {
        if m.dim() != self.n {
            return Err(Error::DimensionMismatch { left: m.dim(), right: self.n });
        }
        let (h, t) = algebra_residuals(m);
        let tol = ALGEBRA_TOL * m.norm().max(1.0);
        if !(h <= tol && t <= tol) {
            return Err(Error::NotInAlgebra { hermitian: h, trace: t });
        }
        Ok(self.elements.iter().map(|e| inner(m, e)).collect())
    }

    /// Coefficients without the membership check; the Hermitian part is dropped.
    pub fn project_unchecked(&self, m: &CMat) -> Vec<f64> {
        self.elements.iter().map(|e| inner(m, e)).collect()
    }

    pub fn reconstruct(&self, c: &[f64]) -> CMat {
        let mut m = CMat::zeros(self.n);
        for (e, v) in self.elements.iter().zip(c) {
            m = &m + &e.scale_c(re(*v));
        }
        m
    }
}

/// `su_project` on the canonical basis of the matching dimension.
pub fn su_project(m: &CMat, basis: &SuBasis) -> Result<Vec<f64>> {
    basis.project(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn n2_basis_is_exact() {
        let b = SuBasis::new(2);
        let e = b.elements();
        let z = re(0.0);
        assert_eq!(e[0], CMat::from_vec(vec![z, I, I, z]));
        assert_eq!(e[1], CMat::from_vec(vec![z, re(-1.0), re(1.0), z]));
        assert_eq!(e[2], CMat::from_vec(vec![I, z, z, -I]));
    }

    #[test]
    fn orthonormal_for_several_n() {
        for n in 2..=4 {
            let b = SuBasis::new(n);
            assert_eq!(b.len(), n * n - 1);
            for (i, a) in b.elements().iter().enumerate() {
                let (h, t) = algebra_residuals(a);
                assert!(h < 1e-14 && t < 1e-14);
                for (j, c) in b.elements().iter().enumerate() {
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((inner(a, c) - want).abs() < 1e-14, "n={n} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn commutator_e1_e2_is_2e3() {
        let b = SuBasis::new(2);
        let e = b.elements();
        let c = e[0].bracket(&e[1]);
        assert!((&c - &e[2].scale_c(re(2.0))).norm() < 1e-15);
    }

    #[test]
    fn project_rejects_hermitian() {
        let b = SuBasis::new(2);
        let h = CMat::identity(2);
        assert!(matches!(b.project(&h), Err(Error::NotInAlgebra { .. })));
    }
}
