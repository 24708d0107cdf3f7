//! Rank-one projectors, the Veronese chain, and the Weierstrass immersion.
//!
//! Raising and lowering use the pairing
//! `Π₊(P) = ∂P·P·∂̄P / tr(∂P·P·∂̄P)` and `Π₋(P) = ∂̄P·P·∂P / tr(∂̄P·P·∂P)`
//! with `∂ = ½(∂x − i∂y)`. This is the assignment for which `Π₊(P₀) = P₁` and
//! `Π₋(P₀) = 0` on the seed `f₀ = (1, z)`.
//!
//! Chain members `P₀ … P_{N−2}` come from repeated raising. The top member is
//! taken from completeness, `P_{N−1} = I − Σ_{j<N−1} P_j`, which saves one
//! derivative order; [`ProjectorChain::raising_residual`] checks it against
//! `Π₊(P_{N−2})`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{FieldSampler, Point, Vars};
use crate::jet::Jet;
use crate::matrix::{CMat, JMat, Mat};
use crate::{re, C64, I};

/// Numerator norm below which `Π±` returns the zero matrix.
pub const ZERO_BRANCH_TOL: f64 = 1e-13;

/// Where a projector came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    FromVector,
    FromRaising,
    FromLowering,
}

/// A rank-one Hermitian projector at a point.
#[derive(Clone, Debug)]
pub struct Projector {
    pub matrix: CMat,
    pub source: Source,
}

/// `P = f f† / (f†f)`.
pub fn projector_from_vector(f: &[C64]) -> Result<Projector> {
    let norm2: f64 = f.iter().map(|v| v.norm_sqr()).sum();
    if !(norm2 > 0.0) {
        return Err(Error::ZeroVector);
    }
    let matrix = Mat::from_fn(f.len(), |i, j| f[i] * f[j].conj() / norm2);
    Ok(Projector { matrix, source: Source::FromVector })
}

/// Jet version of [`projector_from_vector`].
pub fn projector_jet(f: &[Jet]) -> JMat {
    let norm2 = f.iter().skip(1).fold(f[0] * f[0].conj(), |a, v| a + *v * v.conj());
    let r = norm2.recip();
    Mat::from_fn(f.len(), |i, j| f[i] * f[j].conj() * r)
}

/// Holomorphic seed: each component is a polynomial in `z` (ascending coefficients).
#[derive(Clone, Debug, PartialEq)]
pub struct Seed {
    comps: Vec<Vec<C64>>,
}

impl Seed {
    pub fn new(comps: Vec<Vec<C64>>) -> Result<Self> {
        if comps.len() < 2 {
            return Err(Error::Invalid("seed needs at least two components"));
        }
        if comps.iter().all(|c| c.iter().all(|v| *v == re(0.0))) {
            return Err(Error::ZeroVector);
        }
        Ok(Seed { comps })
    }

    /// `f₀ = (1, z)`.
    pub fn cp1() -> Self {
        Seed { comps: vec![vec![re(1.0)], vec![re(0.0), re(1.0)]] }
    }

    /// Veronese curve `f₀ = (√C(N−1, j) z^j)_j`.
    pub fn veronese(n: usize) -> Self {
        let mut comps = Vec::with_capacity(n);
        let mut binom = 1.0f64;
        for j in 0..n {
            let mut c = vec![re(0.0); j + 1];
            c[j] = re(libm::sqrt(binom));
            comps.push(c);
            binom = binom * (n - 1 - j) as f64 / (j + 1) as f64;
        }
        Seed { comps }
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn components(&self) -> &[Vec<C64>] {
        &self.comps
    }

    pub fn eval_jet(&self, z: Jet) -> Vec<Jet> {
        self.comps
            .iter()
            .map(|c| c.iter().rev().fold(Jet::zero(), |acc, a| acc * z + *a))
            .collect()
    }

    pub fn eval(&self, z: C64) -> Vec<C64> {
        self.comps.iter().map(|c| c.iter().rev().fold(re(0.0), |acc, a| acc * z + a)).collect()
    }
}

fn trace_norm(m: &JMat) -> (Jet, f64) {
    (m.trace(), m.max_abs())
}

/// `Π₊` on jets; drops one degree. Returns zero on the zero branch.
pub fn raise_jet(p: &JMat) -> JMat {
    let num = &(&p.dz() * p) * &p.dzb();
    ratio(num)
}

/// `Π₋` on jets.
pub fn lower_jet(p: &JMat) -> JMat {
    let num = &(&p.dzb() * p) * &p.dz();
    ratio(num)
}

fn ratio(num: JMat) -> JMat {
    let (tr, nrm) = trace_norm(&num);
    if nrm < ZERO_BRANCH_TOL {
        return JMat::zeros(num.dim()).map(|_| Jet::zero() * num[(0, 0)]);
    }
    num.scale(tr.recip())
}

fn checked(num: &CMat, source: Source) -> Result<Projector> {
    let nrm = num.norm();
    let tr = num.trace();
    if nrm < ZERO_BRANCH_TOL {
        return Ok(Projector { matrix: CMat::zeros(num.dim()), source });
    }
    if tr.norm() < ZERO_BRANCH_TOL {
        return Err(Error::NearDegenerate { numerator: nrm, denominator: tr.norm() });
    }
    Ok(Projector { matrix: num.scale_c(tr.inv()), source })
}

/// `Π₊(P)` at a point, with the degenerate-denominator check.
pub fn raise(p: &FieldSampler, at: Point) -> Result<Projector> {
    let j = p.jet(at, 1, false)?;
    let num = (&(&j.dz() * &j) * &j.dzb()).value();
    checked(&num, Source::FromRaising)
}

/// `Π₋(P)` at a point.
pub fn lower(p: &FieldSampler, at: Point) -> Result<Projector> {
    let j = p.jet(at, 1, false)?;
    let num = (&(&j.dzb() * &j) * &j.dz()).value();
    checked(&num, Source::FromLowering)
}

/// Ordered projectors `P₀ … P_{N−1}` generated from a holomorphic seed.
#[derive(Clone)]
pub struct ProjectorChain {
    seed: Seed,
    members: Vec<FieldSampler>,
}

fn seed_field(seed: &Seed) -> FieldSampler {
    let s = seed.clone();
    FieldSampler::new(0, false, move |v: &Vars| projector_jet(&s.eval_jet(v.z())))
}

/// Chain from the default Veronese seed of dimension `n` (`(1, z)` for `n = 2`).
pub fn veronese_chain(n: usize) -> Result<ProjectorChain> {
    if n < 2 {
        return Err(Error::Invalid("CP^(N-1) needs N >= 2"));
    }
    ProjectorChain::from_seed(if n == 2 { Seed::cp1() } else { Seed::veronese(n) })
}

impl ProjectorChain {
    pub fn from_seed(seed: Seed) -> Result<Self> {
        let n = seed.dim();
        let mut members = vec![seed_field(&seed)];
        for k in 1..n - 1 {
            let prev = members[k - 1].clone();
            members.push(FieldSampler::new(prev.order() + 1, false, move |v| raise_jet(&prev.apply(v))));
        }
        let below = members.clone();
        let order = below.iter().map(|m| m.order()).max().unwrap_or(0);
        members.push(FieldSampler::new(order, false, move |v| {
            below.iter().fold(JMat::identity(n), |acc, m| &acc - &m.apply(v))
        }));
        let chain = ProjectorChain { seed, members };
        // probe away from the origin for early termination
        let probe = Point::new(0.37, -0.21, 0.0);
        for k in 1..n {
            let m = chain.members[k - 1].clone();
            if raise(&m, probe)?.matrix.norm() < ZERO_BRANCH_TOL {
                return Err(Error::ChainTerminated { n, at: k });
            }
        }
        Ok(chain)
    }

    pub fn n(&self) -> usize {
        self.members.len()
    }

    pub fn seed(&self) -> &Seed {
        &self.seed
    }

    pub fn member(&self, k: usize) -> Result<&FieldSampler> {
        self.members.get(k).ok_or(Error::IndexOutOfRange { k, n: self.n() })
    }

    pub fn members(&self) -> &[FieldSampler] {
        &self.members
    }

    /// `max_k ‖Π₊(P_k) − P_{k+1}‖` and `max_k ‖Π₋(P_{k+1}) − P_k‖` at `at`.
    pub fn raising_residual(&self, at: Point) -> Result<f64> {
        let mut worst = 0.0f64;
        for k in 0..self.n() - 1 {
            let up = raise(&self.members[k], at)?.matrix;
            let down = lower(&self.members[k + 1], at)?.matrix;
            worst = worst.max((&up - &self.members[k + 1].eval(at)).norm());
            worst = worst.max((&down - &self.members[k].eval(at)).norm());
        }
        Ok(worst)
    }

    /// `max ‖P_j P_k − δ_jk P_j‖` and `‖Σ P_j − I‖`.
    pub fn orthogonality_residual(&self, at: Point) -> (f64, f64) {
        let ps: Vec<CMat> = self.members.iter().map(|m| m.eval(at)).collect();
        let mut orth = 0.0f64;
        for (j, a) in ps.iter().enumerate() {
            for (k, b) in ps.iter().enumerate() {
                let prod = a * b;
                let r = if j == k { (&prod - a).norm() } else { prod.norm() };
                orth = orth.max(r);
            }
        }
        let sum = ps.iter().fold(CMat::zeros(self.n()), |acc, p| &acc + p);
        (orth, (&sum - &CMat::identity(self.n())).norm())
    }
}

/// `‖∂[∂̄P, P] + ∂̄[∂P, P]‖`.
pub fn el_residual(p: &FieldSampler, at: Point) -> Result<f64> {
    let j = p.jet(at, 2, false)?;
    let a = j.dzb().bracket(&j);
    let b = j.dz().bracket(&j);
    Ok((&a.dz() + &b.dzb()).value().norm())
}

/// Weierstrass immersion `F_k = −i(P_k + 2Σ_{j<k} P_j) + i(1+2k)/N · I`.
pub fn gwfi(chain: &ProjectorChain, k: usize) -> Result<FieldSampler> {
    let n = chain.n();
    let pk = chain.member(k)?.clone();
    let below: Vec<FieldSampler> = chain.members()[..k].to_vec();
    let order = chain.members()[..=k].iter().map(|m| m.order()).max().unwrap_or(0);
    let c = C64::new(0.0, (1 + 2 * k) as f64 / n as f64);
    Ok(FieldSampler::new(order, false, move |v| {
        let sum = below.iter().fold(pk.apply(v), |acc, m| &acc + &m.apply(v).scale_c(re(2.0)));
        &sum.scale_c(-I) + &JMat::identity(n).scale_c(c)
    }))
}

/// Residual of the polynomial identities satisfied by `F₀ … F_{N−1}`.
pub fn algebraic_residual_of(fs: &[CMat]) -> f64 {
    let n = fs.len();
    let id = CMat::identity(n);
    let c = |k: usize| (1 + 2 * k) as f64 / n as f64;
    let shift = |f: &CMat, s: f64| f - &id.scale_c(C64::new(0.0, s));
    let mut worst = 0.0f64;
    for (k, f) in fs.iter().enumerate() {
        let r = if k == 0 {
            &shift(f, c(0)) * &shift(f, c(0) - 1.0)
        } else if k == n - 1 {
            &shift(f, -c(0)) * &shift(f, -(c(0) - 1.0))
        } else {
            &(&shift(f, c(k)) * &shift(f, c(k) - 1.0)) * &shift(f, c(k) - 2.0)
        };
        worst = worst.max(r.norm());
    }
    let alt = fs
        .iter()
        .enumerate()
        .fold(CMat::zeros(n), |acc, (j, f)| if j % 2 == 0 { &acc + f } else { &acc - f });
    worst.max(alt.norm())
}

pub fn algebraic_conditions_residual(chain: &ProjectorChain, at: Point) -> Result<f64> {
    let fs = (0..chain.n()).map(|k| gwfi(chain, k).map(|f| f.eval(at))).collect::<Result<Vec<_>>>()?;
    Ok(algebraic_residual_of(&fs))
}

/// `θ = i(P − I/N)`.
pub fn theta_of(p: &FieldSampler, n: usize) -> FieldSampler {
    let p = p.clone();
    FieldSampler::new(p.order(), false, move |v| {
        (&p.apply(v) - &JMat::identity(n).scale_c(re(1.0 / n as f64))).scale_c(I)
    })
}

/// `‖θ² + i(2−N)/N θ − (1−N)/N² I‖`.
pub fn theta_constraint_residual(theta: &FieldSampler, at: Point) -> f64 {
    let th = theta.eval(at);
    let n = th.dim() as f64;
    let r = &(&(&th * &th) + &th.scale_c(C64::new(0.0, (2.0 - n) / n))) - &CMat::identity(th.dim()).scale_c(re((1.0 - n) / (n * n)));
    r.norm()
}

/// `‖[(∂x² + ∂y²)θ, θ]‖`.
pub fn theta_el_residual(theta: &FieldSampler, at: Point) -> Result<f64> {
    use crate::jet::Var;
    let j = theta.jet(at, 2, false)?;
    let lap = &j.d(Var::X).d(Var::X) + &j.d(Var::Y).d(Var::Y);
    Ok(lap.bracket(&j).value().norm())
}

/// `Π₊` in the θ form, `∂θ(ℰ − iθ)∂̄θ / tr(⋯)` with `ℰ = I/N`.
pub fn raise_theta(theta: &FieldSampler, at: Point) -> Result<CMat> {
    let j = theta.jet(at, 1, false)?;
    let n = j.dim();
    let mid = &JMat::identity(n).scale_c(re(1.0 / n as f64)) - &j.scale_c(I);
    let num = (&(&j.dz() * &mid) * &j.dzb()).value();
    Ok(checked(&num, Source::FromRaising)?.matrix)
}

/// `Π₋` in the θ form.
pub fn lower_theta(theta: &FieldSampler, at: Point) -> Result<CMat> {
    let j = theta.jet(at, 1, false)?;
    let n = j.dim();
    let mid = &JMat::identity(n).scale_c(re(1.0 / n as f64)) - &j.scale_c(I);
    let num = (&(&j.dzb() * &mid) * &j.dz()).value();
    Ok(checked(&num, Source::FromLowering)?.matrix)
}

/// `∂∂̄ ln tr(∂P·∂̄P)` at a point.
pub fn euler_density(p: &FieldSampler, at: Point) -> Result<f64> {
    let j = p.jet(at, 3, false)?;
    let (a, b) = (j.dz(), j.dzb());
    let n = a.dim();
    let mut tr = Jet::zero();
    for r in 0..n {
        for c in 0..n {
            tr = tr + a[(r, c)] * b[(c, r)];
        }
    }
    let t0 = tr.value().re;
    if !(t0 > 1e-300) {
        return Err(Error::Integration { x: at.x, y: at.y });
    }
    // ∂∂̄ ln T = (T·¼ΔT − |∂T|²)/T² for real T.
    let lap = 2.0 * (tr.coeff(2, 0, 0) + tr.coeff(0, 2, 0)).re;
    let dt = 0.5 * (tr.coeff(1, 0, 0) - I * tr.coeff(0, 1, 0));
    Ok((t0 * 0.25 * lap - dt.norm_sqr()) / (t0 * t0))
}

/// Disk quadrature for the Euler characteristic: Simpson in `r` with `n`
/// intervals, periodic midpoint rule in the angle with `n` nodes.
#[derive(Clone, Copy, Debug)]
pub struct EulerQuadrature {
    pub radius: f64,
    pub n: usize,
}

impl EulerQuadrature {
    pub fn new(radius: f64, n: usize) -> Result<Self> {
        if !(radius > 0.0) || n < 2 {
            return Err(Error::Invalid("quadrature needs radius > 0 and n >= 2"));
        }
        Ok(EulerQuadrature { radius, n: n + n % 2 })
    }

    /// Number of radial nodes.
    pub fn rows(&self) -> usize {
        self.n + 1
    }

    /// Weighted angular sum for radial node `i`, already scaled by `−1/π`.
    pub fn row(&self, p: &FieldSampler, i: usize) -> Result<f64> {
        if i == 0 {
            return Ok(0.0);
        }
        let h = self.radius / self.n as f64;
        let r = h * i as f64;
        let w = if i == self.n {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        } * h
            / 3.0;
        let dphi = 2.0 * core::f64::consts::PI / self.n as f64;
        let mut acc = 0.0;
        for j in 0..self.n {
            let phi = (j as f64 + 0.5) * dphi;
            let pt = Point::new(r * libm::cos(phi), r * libm::sin(phi), 0.0);
            acc += euler_density(p, pt)?;
        }
        Ok(-acc * dphi * r * w / core::f64::consts::PI)
    }
}

/// `χ = −(1/π) ∬ ∂∂̄ ln tr(∂P·∂̄P) dx dy` over `|z| ≤ radius`.
///
/// The disk misses a tail of order `1/radius²` for the Veronese density.
pub fn euler_characteristic(p: &FieldSampler, radius: f64, n: usize) -> Result<f64> {
    let q = EulerQuadrature::new(radius, n)?;
    (0..q.rows()).try_fold(0.0, |acc, i| Ok(acc + q.row(p, i)?))
}
