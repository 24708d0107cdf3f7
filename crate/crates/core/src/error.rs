use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// Operands of different dimension.
    DimensionMismatch { left: usize, right: usize },
    /// Determinant below the singularity tolerance.
    Singular { det: f64 },
    /// Matrix is not anti-Hermitian and traceless.
    NotInAlgebra { hermitian: f64, trace: f64 },
    /// Zero vector where a projective point was expected.
    ZeroVector,
    /// Raising/lowering denominator vanishes while the numerator does not.
    NearDegenerate { numerator: f64, denominator: f64 },
    /// The chain produced a zero projector before reaching `n` members.
    ChainTerminated { n: usize, at: usize },
    /// Chain index out of range.
    IndexOutOfRange { k: usize, n: usize },
    /// Tangent vectors are (numerically) dependent.
    FrameDegenerate { bracket_norm: f64 },
    /// First fundamental form is degenerate.
    MetricDegenerate { det: f64 },
    /// Too few or coplanar samples.
    FitDegenerate,
    /// Integrand singular at a quadrature node.
    Integration { x: f64, y: f64 },
    /// The requested derivative order exceeds the jet capacity.
    OrderExceeded { needed: u8 },
    /// `λ² = 1` in a potential denominator.
    SingularParameter,
    /// The gauge is singular, so the mapping matrix is undefined.
    MappingUndefined { det: f64 },
    /// Evaluation failed at a stencil point.
    Evaluation { x: f64, y: f64, t: f64 },
    /// Invalid argument.
    Invalid(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {left} vs {right}")
            }
            Error::Singular { det } => write!(f, "singular matrix, |det| = {det:e}"),
            Error::NotInAlgebra { hermitian, trace } => write!(
                f,
                "matrix not in su(N): anti-Hermitian residual {hermitian:e}, trace residual {trace:e}"
            ),
            Error::ZeroVector => write!(f, "zero vector"),
            Error::NearDegenerate { numerator, denominator } => write!(
                f,
                "near-degenerate projector: numerator {numerator:e}, trace {denominator:e}"
            ),
            Error::ChainTerminated { n, at } => {
                write!(f, "chain terminated at member {at}, expected {n}")
            }
            Error::IndexOutOfRange { k, n } => write!(f, "index {k} out of range for N = {n}"),
            Error::FrameDegenerate { bracket_norm } => {
                write!(f, "degenerate tangents, |[A1,A2]| = {bracket_norm:e}")
            }
            Error::MetricDegenerate { det } => write!(f, "degenerate metric, det g = {det:e}"),
            Error::FitDegenerate => write!(f, "degenerate sample set for sphere fit"),
            Error::Integration { x, y } => write!(f, "integrand singular at ({x}, {y})"),
            Error::OrderExceeded { needed } => {
                write!(f, "derivative order {needed} exceeds jet capacity")
            }
            Error::SingularParameter => write!(f, "spectral parameter with λ² = 1"),
            Error::MappingUndefined { det } => {
                write!(f, "mapping matrix undefined, |det S| = {det:e}")
            }
            Error::Evaluation { x, y, t } => {
                write!(f, "field evaluation failed at ({x}, {y}, t = {t})")
            }
            Error::Invalid(msg) => f.write_str(msg),
        }
    }
}

impl core::error::Error for Error {}
