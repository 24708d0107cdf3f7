//! Soliton surfaces of the CP^(N−1) sigma model immersed in su(N).
//!
//! The crate is `no_std` with `alloc`. Fields over the plane are closures that
//! return matrices of truncated Taylor jets, so every derivative used by the
//! potentials, frames and curvature formulas is exact to rounding. Finite
//! differences live in [`field`] as an independent cross-check only.
//!
//! Layering, bottom to top:
//!
//! - [`jet`], [`matrix`], [`basis`]: scalars, dense matrices, the su(N) basis.
//! - [`field`]: samplers, exact and finite-difference derivatives.
//! - [`cpn`]: projector chains, raising/lowering, Weierstrass immersion.
//! - [`spectral`]: potentials, wavefunctions, zero-curvature residuals.
//! - [`gauges`], [`immersion`], [`geometry`]: surfaces, frames, curvatures.
//! - [`fixtures`], [`fit`]: reference closed forms and parametric comparison.
#![no_std]

extern crate alloc;

pub mod basis;
pub mod cpn;
pub mod error;
pub mod field;
pub mod fit;
pub mod fixtures;
pub mod gauges;
pub mod geometry;
pub mod immersion;
pub mod jet;
pub mod matrix;
pub mod spectral;

pub use error::{Error, Result};
pub use field::{FieldSampler, Point};
pub use jet::{Jet, Var};
pub use matrix::{CMat, JMat, Mat, Scalar};

/// Double-precision complex scalar.
pub type C64 = num_complex::Complex<f64>;

/// `i`
pub const I: C64 = C64::new(0.0, 1.0);

/// Real scalar as a complex number.
#[inline]
pub fn re(v: f64) -> C64 {
    C64::new(v, 0.0)
}
