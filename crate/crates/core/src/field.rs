//! Matrix-valued fields over `(x, y)` with a spectral coordinate `t`.
//!
//! A [`FieldSampler`] wraps a closure over seeded jets. Fields that are built
//! from derivatives of other fields declare how many derivative orders they
//! consume (`order`) and whether they differentiate in `t` internally; seeds
//! are sized from that so the returned jet still carries the requested degree.
//!
//! Finite differences ([`fd_partial`]) use the five-point stencil with step
//! `h = 1e−4 · max(1, |x|, |y|)` (or `max(1, |t|)` along `t`).

use alloc::sync::Arc;

use crate::error::{Error, Result};
use crate::jet::{Jet, Var, MAX_DEG};
use crate::matrix::{CMat, JMat};
use crate::{C64, I};

/// Sample location; `t` is the spectral coordinate with `λ = it`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
    pub t: f64,
}

impl Point {
    pub fn new(x: f64, y: f64, t: f64) -> Self {
        Point { x, y, t }
    }

    /// `z = x + iy` together with `t`.
    pub fn z(z: C64, t: f64) -> Self {
        Point { x: z.re, y: z.im, t }
    }

    pub fn modulus(&self) -> f64 {
        libm::hypot(self.x, self.y)
    }

    fn shifted(&self, v: Var, h: f64) -> Self {
        let mut p = *self;
        match v {
            Var::X => p.x += h,
            Var::Y => p.y += h,
            Var::T => p.t += h,
        }
        p
    }
}

/// Seeded coordinate jets.
#[derive(Clone, Copy, Debug)]
pub struct Vars {
    pub x: Jet,
    pub y: Jet,
    pub t: Jet,
}

impl Vars {
    /// Seeds `(x, y)` at degree `deg`; `t` is a variable only if `with_t`.
    pub fn seed(p: Point, deg: u8, with_t: bool) -> Self {
        let nv = if with_t { 3 } else { 2 };
        Vars {
            x: Jet::var(Var::X, p.x, deg, nv),
            y: Jet::var(Var::Y, p.y, deg, nv),
            t: if with_t { Jet::var(Var::T, p.t, deg, nv) } else { Jet::real(p.t) },
        }
    }

    pub fn z(&self) -> Jet {
        self.x + self.y * I
    }

    pub fn zb(&self) -> Jet {
        self.x - self.y * I
    }

    /// `|z|²`
    pub fn r2(&self) -> Jet {
        self.x * self.x + self.y * self.y
    }

    /// `λ = it`
    pub fn lambda(&self) -> Jet {
        self.t * I
    }

    /// The same seeds moved to `z = 0`, keeping `t`.
    pub fn at_origin(&self) -> Self {
        let nv = self.x.nv();
        let deg = self.x.deg();
        Vars { x: Jet::var(Var::X, 0.0, deg, nv), y: Jet::var(Var::Y, 0.0, deg, nv), t: self.t }
    }
}

type ExactFn = dyn Fn(&Vars) -> JMat + Send + Sync;
type NumericFn = dyn Fn(Point) -> CMat + Send + Sync;

#[derive(Clone)]
enum Kind {
    Exact(Arc<ExactFn>),
    Numeric(Arc<NumericFn>),
}

/// A pure map `(x, y, t) → matrix`.
#[derive(Clone)]
pub struct FieldSampler {
    order: u8,
    uses_t: bool,
    kind: Kind,
}

/// Richardson estimate of a finite-difference scheme's order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Order {
    /// Differences vanish to rounding; the scheme is exact on this field.
    Exact,
    Estimate(f64),
}

impl FieldSampler {
    /// Field with exact derivatives. `order` is the number of derivative orders
    /// the closure consumes from its seeds; `uses_t` marks internal `t`-derivatives.
    pub fn new(order: u8, uses_t: bool, f: impl Fn(&Vars) -> JMat + Send + Sync + 'static) -> Self {
        FieldSampler { order, uses_t, kind: Kind::Exact(Arc::new(f)) }
    }

    /// Field known only pointwise; derivatives fall back to finite differences.
    pub fn numeric(f: impl Fn(Point) -> CMat + Send + Sync + 'static) -> Self {
        FieldSampler { order: 0, uses_t: false, kind: Kind::Numeric(Arc::new(f)) }
    }

    pub fn order(&self) -> u8 {
        self.order
    }

    pub fn uses_t(&self) -> bool {
        self.uses_t
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.kind, Kind::Exact(_))
    }

    /// Evaluates on caller-provided seeds; the caller guarantees enough degree.
    pub fn apply(&self, v: &Vars) -> JMat {
        match &self.kind {
            Kind::Exact(f) => f(v),
            Kind::Numeric(f) => JMat::from_cmat(&f(Point::new(v.x.value().re, v.y.value().re, v.t.value().re))),
        }
    }

    /// Jet of the field at `p` carrying `deg` further orders; `t` active if `with_t`.
    pub fn jet(&self, p: Point, deg: u8, with_t: bool) -> Result<JMat> {
        let need = deg + self.order;
        if need > MAX_DEG {
            return Err(Error::OrderExceeded { needed: need });
        }
        match &self.kind {
            Kind::Exact(f) => Ok(f(&Vars::seed(p, need, with_t || self.uses_t))),
            Kind::Numeric(f) if deg == 0 => Ok(JMat::from_cmat(&f(p))),
            Kind::Numeric(_) => Err(Error::Invalid("numeric field has no exact jet")),
        }
    }

    pub fn eval(&self, p: Point) -> CMat {
        match &self.kind {
            Kind::Exact(f) => f(&Vars::seed(p, self.order, self.uses_t)).value(),
            Kind::Numeric(f) => f(p),
        }
    }

    fn partial(&self, v: Var, p: Point) -> Result<CMat> {
        if !self.is_exact() {
            return fd_partial(&|q| Ok(self.eval(q)), v, p);
        }
        let j = self.jet(p, 1, v == Var::T)?;
        let (a, b, c) = match v {
            Var::X => (1, 0, 0),
            Var::Y => (0, 1, 0),
            Var::T => (0, 0, 1),
        };
        j.partial(a, b, c)
    }

    pub fn partial_x(&self, p: Point) -> Result<CMat> {
        self.partial(Var::X, p)
    }

    pub fn partial_y(&self, p: Point) -> Result<CMat> {
        self.partial(Var::Y, p)
    }

    pub fn partial_t(&self, p: Point) -> Result<CMat> {
        self.partial(Var::T, p)
    }

    /// `(∂f, ∂̄f)` with `∂ = ½(∂x − i∂y)`.
    pub fn wirtinger(&self, p: Point) -> Result<(CMat, CMat)> {
        wirtinger_of(&self.partial_x(p)?, &self.partial_y(p)?)
    }

    /// `d/dλ = −i d/dt` along `λ = it`.
    pub fn d_lambda(&self, p: Point) -> Result<CMat> {
        Ok(self.partial_t(p)?.scale_c(-I))
    }

    /// Pointwise sum.
    pub fn add(&self, o: &FieldSampler) -> FieldSampler {
        let (a, b) = (self.clone(), o.clone());
        FieldSampler::new(a.order.max(b.order), a.uses_t || b.uses_t, move |v| &a.apply(v) + &b.apply(v))
    }
}

/// Combines real partials into `(∂, ∂̄)`.
pub fn wirtinger_of(dx: &CMat, dy: &CMat) -> Result<(CMat, CMat)> {
    let h = C64::new(0.5, 0.0);
    let d = (dx - &dy.scale_c(I)).scale_c(h);
    let db = (dx + &dy.scale_c(I)).scale_c(h);
    Ok((d, db))
}

/// Default step of the five-point stencil along `v`.
pub fn default_step(v: Var, p: Point) -> f64 {
    match v {
        Var::T => 1e-4 * p.t.abs().max(1.0),
        _ => 1e-4 * p.x.abs().max(p.y.abs()).max(1.0),
    }
}

/// Fourth-order central difference of an arbitrary pointwise map.
pub fn fd_partial(f: &dyn Fn(Point) -> Result<CMat>, v: Var, p: Point) -> Result<CMat> {
    fd_partial_step(f, v, p, default_step(v, p))
}

pub fn fd_partial_step(f: &dyn Fn(Point) -> Result<CMat>, v: Var, p: Point, h: f64) -> Result<CMat> {
    let at = |s: f64| {
        let q = p.shifted(v, s * h);
        f(q).map_err(|_| Error::Evaluation { x: q.x, y: q.y, t: q.t })
    };
    let (m2, m1, p1, p2) = (at(-2.0)?, at(-1.0)?, at(1.0)?, at(2.0)?);
    let num = &(&m2 - &p2) + &(&p1 - &m1).scale_c(C64::new(8.0, 0.0));
    Ok(num.scale_c(C64::new(1.0 / (12.0 * h), 0.0)))
}

/// Finite-difference Wirtinger pair.
pub fn fd_wirtinger(f: &dyn Fn(Point) -> Result<CMat>, p: Point) -> Result<(CMat, CMat)> {
    wirtinger_of(&fd_partial(f, Var::X, p)?, &fd_partial(f, Var::Y, p)?)
}

/// `d/dλ` of a map along the line `λ = it`, by finite differences in `t`.
pub fn fd_d_lambda(f: &dyn Fn(Point) -> Result<CMat>, p: Point) -> Result<CMat> {
    Ok(fd_partial(f, Var::T, p)?.scale_c(-I))
}

/// Richardson order estimate of the five-point stencil for `∂x f` at `p`.
///
/// Uses steps `h, h/2, h/4` with `h = 0.1 · max(1, |x|, |y|)`, large enough
/// that truncation dominates rounding.
pub fn convergence_order(f: &FieldSampler, p: Point) -> Result<Order> {
    let g = |q: Point| Ok(f.eval(q));
    let h = 0.1 * p.x.abs().max(p.y.abs()).max(1.0);
    let d1 = fd_partial_step(&g, Var::X, p, h)?;
    let d2 = fd_partial_step(&g, Var::X, p, h / 2.0)?;
    let d3 = fd_partial_step(&g, Var::X, p, h / 4.0)?;
    let e1 = (&d1 - &d2).norm();
    let e2 = (&d2 - &d3).norm();
    let scale = f.eval(p).norm().max(1.0);
    if e1 < 1e-13 * scale && e2 < 1e-13 * scale {
        return Ok(Order::Exact);
    }
    Ok(Order::Estimate(libm::log2(e1 / e2)))
}

/// Derivative strategy for residual evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Diff {
    /// Jets, exact to rounding.
    Exact,
    /// Five-point central differences of pointwise values.
    Fd,
}

/// Coordinates in which `D₁, D₂` act.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coords {
    /// `D₁ = ∂`, `D₂ = ∂̄`.
    Wirtinger,
    /// `D₁ = ∂x`, `D₂ = ∂y`.
    Real,
}

/// Value and first partials of a field at a point.
#[derive(Clone, Debug)]
pub struct FirstOrder {
    pub val: CMat,
    pub dx: CMat,
    pub dy: CMat,
    pub dt: Option<CMat>,
}

impl FirstOrder {
    pub fn dz(&self) -> CMat {
        (&self.dx - &self.dy.scale_c(I)).scale_c(C64::new(0.5, 0.0))
    }

    pub fn dzb(&self) -> CMat {
        (&self.dx + &self.dy.scale_c(I)).scale_c(C64::new(0.5, 0.0))
    }

    /// `D_α` for `α ∈ {1, 2}`.
    pub fn d(&self, alpha: usize, c: Coords) -> CMat {
        match (alpha, c) {
            (1, Coords::Wirtinger) => self.dz(),
            (2, Coords::Wirtinger) => self.dzb(),
            (1, Coords::Real) => self.dx.clone(),
            _ => self.dy.clone(),
        }
    }
}

/// Value and first partials by the chosen strategy; `with_t` adds `∂t`.
pub fn first_order(f: &FieldSampler, p: Point, diff: Diff, with_t: bool) -> Result<FirstOrder> {
    match diff {
        Diff::Exact if f.is_exact() => {
            let j = f.jet(p, 1, with_t)?;
            Ok(FirstOrder {
                val: j.value(),
                dx: j.partial(1, 0, 0)?,
                dy: j.partial(0, 1, 0)?,
                dt: if with_t { Some(j.partial(0, 0, 1)?) } else { None },
            })
        }
        _ => {
            let g = |q: Point| Ok(f.eval(q));
            Ok(FirstOrder {
                val: f.eval(p),
                dx: fd_partial(&g, Var::X, p)?,
                dy: fd_partial(&g, Var::Y, p)?,
                dt: if with_t { Some(fd_partial(&g, Var::T, p)?) } else { None },
            })
        }
    }
}

/// `D_α` of a jet matrix.
pub fn d_jet(m: &JMat, alpha: usize, c: Coords) -> JMat {
    match (alpha, c) {
        (1, Coords::Wirtinger) => m.dz(),
        (2, Coords::Wirtinger) => m.dzb(),
        (1, Coords::Real) => m.d(Var::X),
        _ => m.d(Var::Y),
    }
}
