//! Dense square matrices over complex scalars or jets.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Div, Index, IndexMut, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::jet::{Jet, Var};
use crate::C64;

/// Default singularity tolerance on `|det|`.
pub const SINGULAR_TOL: f64 = 1e-12;

/// Entry type of a [`Mat`].
pub trait Scalar:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Mul<C64, Output = Self>
    + Mul<f64, Output = Self>
    + Add<C64, Output = Self>
{
    fn cst(v: C64) -> Self;
    fn conj(&self) -> Self;
    fn value(&self) -> C64;
    fn zero() -> Self {
        Self::cst(C64::new(0.0, 0.0))
    }
    fn one() -> Self {
        Self::cst(C64::new(1.0, 0.0))
    }
}

impl Scalar for C64 {
    fn cst(v: C64) -> Self {
        v
    }
    fn conj(&self) -> Self {
        num_complex::Complex::conj(self)
    }
    fn value(&self) -> C64 {
        *self
    }
}

impl Scalar for Jet {
    fn cst(v: C64) -> Self {
        Jet::cst(v)
    }
    fn conj(&self) -> Self {
        Jet::conj(self)
    }
    fn value(&self) -> C64 {
        Jet::value(self)
    }
}

/// Row-major `n × n` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<T> {
    n: usize,
    data: Vec<T>,
}

pub type CMat = Mat<C64>;
pub type JMat = Mat<Jet>;

impl<T: Scalar> Mat<T> {
    pub fn zeros(n: usize) -> Self {
        assert!(n > 0, "matrix dimension must be positive");
        Mat { n, data: vec![T::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Builds from row-major entries; `data.len()` must be a perfect square.
    pub fn from_vec(data: Vec<T>) -> Self {
        let n = (1..=data.len()).find(|k| k * k >= data.len()).unwrap_or(0);
        assert!(n > 0 && n * n == data.len(), "entry count is not a square");
        Mat { n, data }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Mat { n, data }
    }

    /// Constant embedding of a complex matrix.
    pub fn from_cmat(m: &CMat) -> Self {
        Mat { n: m.n, data: m.data.iter().map(|v| T::cst(*v)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn map(&self, f: impl Fn(&T) -> T) -> Self {
        Mat { n: self.n, data: self.data.iter().map(f).collect() }
    }

    pub fn zip(&self, o: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        self.check(o);
        Mat { n: self.n, data: self.data.iter().zip(&o.data).map(|(a, b)| f(a, b)).collect() }
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.n, o.n, "matrix dimension mismatch");
    }

    pub fn scale(&self, s: T) -> Self {
        self.map(|v| *v * s)
    }

    pub fn scale_c(&self, s: C64) -> Self {
        self.map(|v| *v * s)
    }

    pub fn trace(&self) -> T {
        (1..self.n).fold(self[(0, 0)], |acc, i| acc + self[(i, i)])
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn conj(&self) -> Self {
        self.map(|v| v.conj())
    }

    /// `ab − ba`; panics on mismatch.
    pub fn bracket(&self, o: &Self) -> Self {
        &(self * o) - &(o * self)
    }

    pub fn value(&self) -> CMat {
        Mat { n: self.n, data: self.data.iter().map(|v| v.value()).collect() }
    }

    /// Inverse of a 2 × 2 matrix by the adjugate; works for jets.
    pub fn inverse2(&self) -> Self {
        assert_eq!(self.n, 2, "inverse2 needs a 2 x 2 matrix");
        let det = self[(0, 0)] * self[(1, 1)] - self[(0, 1)] * self[(1, 0)];
        let r = T::one() / det;
        Mat {
            n: 2,
            data: vec![self[(1, 1)] * r, -(self[(0, 1)] * r), -(self[(1, 0)] * r), self[(0, 0)] * r],
        }
    }
}

impl<T> Index<(usize, usize)> for Mat<T> {
    type Output = T;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.n + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Mat<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.n + j]
    }
}

impl<T: Scalar> Add for &Mat<T> {
    type Output = Mat<T>;
    fn add(self, o: &Mat<T>) -> Mat<T> {
        self.zip(o, |a, b| *a + *b)
    }
}

impl<T: Scalar> Sub for &Mat<T> {
    type Output = Mat<T>;
    fn sub(self, o: &Mat<T>) -> Mat<T> {
        self.zip(o, |a, b| *a - *b)
    }
}

impl<T: Scalar> Neg for &Mat<T> {
    type Output = Mat<T>;
    fn neg(self) -> Mat<T> {
        self.map(|v| -*v)
    }
}

impl<T: Scalar> Mul for &Mat<T> {
    type Output = Mat<T>;
    fn mul(self, o: &Mat<T>) -> Mat<T> {
        self.check(o);
        let n = self.n;
        Mat::from_fn(n, |i, j| {
            (1..n).fold(self[(i, 0)] * o[(0, j)], |acc, k| acc + self[(i, k)] * o[(k, j)])
        })
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl<T: Scalar> $tr for Mat<T> {
            type Output = Mat<T>;
            fn $f(self, o: Mat<T>) -> Mat<T> {
                (&self).$f(&o)
            }
        }
        impl<T: Scalar> $tr<&Mat<T>> for Mat<T> {
            type Output = Mat<T>;
            fn $f(self, o: &Mat<T>) -> Mat<T> {
                (&self).$f(o)
            }
        }
        impl<T: Scalar> $tr<Mat<T>> for &Mat<T> {
            type Output = Mat<T>;
            fn $f(self, o: Mat<T>) -> Mat<T> {
                self.$f(&o)
            }
        }
    )*};
}

owned_ops!(Add add, Sub sub, Mul mul);

impl<T: Scalar> Neg for Mat<T> {
    type Output = Mat<T>;
    fn neg(self) -> Mat<T> {
        -&self
    }
}

/// `ab − ba`, checking dimensions.
pub fn commutator<T: Scalar>(a: &Mat<T>, b: &Mat<T>) -> Result<Mat<T>> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { left: a.dim(), right: b.dim() });
    }
    Ok(a.bracket(b))
}

/// Conjugate transpose.
pub fn dagger<T: Scalar>(a: &Mat<T>) -> Mat<T> {
    a.dagger()
}

impl CMat {
    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|v| v.norm_sqr()).sum())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.norm()))
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.re.is_finite() && v.im.is_finite())
    }

    /// LU with partial pivoting; returns the row-reduced copy and the determinant.
    pub fn det(&self) -> C64 {
        let n = self.n;
        let mut a = self.clone();
        let mut det = C64::new(1.0, 0.0);
        for col in 0..n {
            let p = (col..n)
                .max_by(|&i, &j| a[(i, col)].norm().total_cmp(&a[(j, col)].norm()))
                .unwrap_or(col);
            if a[(p, col)].norm() == 0.0 {
                return C64::new(0.0, 0.0);
            }
            if p != col {
                for j in 0..n {
                    a.data.swap(p * n + j, col * n + j);
                }
                det = -det;
            }
            let piv = a[(col, col)];
            det *= piv;
            for i in col + 1..n {
                let f = a[(i, col)] / piv;
                for j in col..n {
                    let v = a[(col, j)];
                    a[(i, j)] -= f * v;
                }
            }
        }
        det
    }

    /// Inverse via Gauss-Jordan; errors when `|det| <= tol`.
    pub fn inverse_tol(&self, tol: f64) -> Result<CMat> {
        let d = self.det().norm();
        if !(d > tol) {
            return Err(Error::Singular { det: d });
        }
        let n = self.n;
        let mut a = self.clone();
        let mut inv = CMat::identity(n);
        for col in 0..n {
            let p = (col..n)
                .max_by(|&i, &j| a[(i, col)].norm().total_cmp(&a[(j, col)].norm()))
                .unwrap_or(col);
            if p != col {
                for j in 0..n {
                    a.data.swap(p * n + j, col * n + j);
                    inv.data.swap(p * n + j, col * n + j);
                }
            }
            let piv = a[(col, col)].inv();
            for j in 0..n {
                a[(col, j)] *= piv;
                inv[(col, j)] *= piv;
            }
            for i in 0..n {
                if i == col {
                    continue;
                }
                let f = a[(i, col)];
                if f == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    let (v, w) = (a[(col, j)], inv[(col, j)]);
                    a[(i, j)] -= f * v;
                    inv[(i, j)] -= f * w;
                }
            }
        }
        Ok(inv)
    }

    pub fn inverse(&self) -> Result<CMat> {
        self.inverse_tol(SINGULAR_TOL)
    }

    /// Residuals `(‖P²−P‖, ‖P−P†‖, |tr P − 1|)`.
    pub fn projector_residuals(&self) -> (f64, f64, f64) {
        let sq = &(self * self) - self;
        let h = self - &self.dagger();
        (sq.norm(), h.norm(), (self.trace() - C64::new(1.0, 0.0)).norm())
    }
}

/// Rank-one projector diagnostic: residuals and whether all are below `tol`.
pub fn is_rank_one_projector(p: &CMat, tol: f64) -> ((f64, f64, f64), bool) {
    let r = p.projector_residuals();
    (r, r.0 < tol && r.1 < tol && r.2 < tol)
}

impl JMat {
    pub fn d(&self, v: Var) -> Self {
        self.map(|e| e.d(v))
    }

    pub fn dz(&self) -> Self {
        self.map(|e| e.dz())
    }

    pub fn dzb(&self) -> Self {
        self.map(|e| e.dzb())
    }

    /// Largest coefficient over all entries and Taylor orders.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.max_abs()))
    }

    pub fn deg(&self) -> u8 {
        self.data.iter().map(|v| v.deg()).min().unwrap_or(0)
    }

    /// Restriction to the `t`-only monomials.
    pub fn t_part(&self) -> Self {
        self.map(|e| e.t_part())
    }

    /// Entrywise partial derivative matrix at the expansion point.
    pub fn partial(&self, a: usize, b: usize, c: usize) -> Result<CMat> {
        let mut out = CMat::zeros(self.n);
        for (o, v) in out.data.iter_mut().zip(&self.data) {
            *o = v.partial(a, b, c).ok_or(Error::OrderExceeded { needed: (a + b + c) as u8 })?;
        }
        Ok(out)
    }
}
