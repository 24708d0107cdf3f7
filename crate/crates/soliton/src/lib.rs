//! Grid sampling, curvature sweeps, verification reports and file export for
//! CP^(N−1) soliton surfaces, on top of `soliton_core`.

pub mod cli;
pub mod error;
pub mod export;
pub mod grid;
pub mod mesh;
pub mod model;
pub mod parallel;
pub mod report;
pub mod sweep;

pub use error::{AppError, AppResult};
pub use grid::GridSpec;
pub use mesh::{sample_surface, SurfaceMesh};
pub use report::{run_verification_suite, Section, SuiteConfig, VerificationReport};
