//! Gauges `S` of the four symmetry families and the residuals tying them together.
//!
//! The spectral derivative in the λ-conformal family is taken along `t`:
//! with `λ = it`, `β(λ)·D_λ` is evaluated as `β·∂t`, so `β = 1` yields an
//! su(N)-valued surface. See the crate README for the convention comparison.
//!
//! Family gauges (Wirtinger `D₁ = ∂`, `D₂ = ∂̄`):
//!
//! | family  | `S`                      | action on `Φ`                        |
//! |---------|--------------------------|--------------------------------------|
//! | ST      | `β ∂tΦ · Φ⁻¹`            | `β ∂tΦ`                              |
//! | scaling | `zU₁ + z̄U₂`              | `z∂Φ + z̄∂̄Φ`                          |
//! | conformal | `−(gU₁ + ḡU₂)`         | `−(g∂Φ + ḡ∂̄Φ)`                       |
//! | FG      | `∂U₁ + ∂̄U₂`              | `∂²Φ − ∂ΦΦ⁻¹∂Φ + ∂̄²Φ − ∂̄ΦΦ⁻¹∂̄Φ`     |
//!
//! The right column is computed from derivatives of `Φ` alone, so comparing it
//! with `SΦ` is a genuine check of the linear problem.

use crate::error::{Error, Result};
use crate::field::{first_order, Coords, Diff, FieldSampler, Point};
use crate::jet::Var;
use crate::matrix::CMat;
use crate::spectral::{PotentialPair, Wavefunction};
use crate::C64;

/// Invertibility threshold on `|det S|`.
pub const GAUGE_DET_TOL: f64 = 1e-10;

/// Which symmetry a gauge belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GaugeKind {
    St,
    Scaling,
    Conformal,
    Fg,
}

#[derive(Clone)]
pub struct GaugeField {
    pub s: FieldSampler,
    pub kind: GaugeKind,
}

/// `S^ST = β ∂tΦ · Φ⁻¹`.
pub fn gauge_st(phi: &Wavefunction, beta: C64) -> GaugeField {
    let (p, q) = (phi.phi.clone(), phi.inv.clone());
    let s = FieldSampler::new(p.order() + 1, true, move |v| {
        (&p.apply(v).d(Var::T) * &q.apply(v)).scale_c(beta)
    });
    GaugeField { s, kind: GaugeKind::St }
}

/// `S^g = zU₁ + z̄U₂`.
pub fn gauge_g(u: &PotentialPair) -> GaugeField {
    let (a, b) = (u.u1.clone(), u.u2.clone());
    let s = FieldSampler::new(a.order().max(b.order()), false, move |v| {
        &a.apply(v).scale(v.z()) + &b.apply(v).scale(v.zb())
    });
    GaugeField { s, kind: GaugeKind::Scaling }
}

/// `S^c = −(gU₁ + ḡU₂)` for a constant `g`.
pub fn gauge_c(u: &PotentialPair, g: C64) -> GaugeField {
    let (a, b) = (u.u1.clone(), u.u2.clone());
    let s = FieldSampler::new(a.order().max(b.order()), false, move |v| {
        -(&a.apply(v).scale_c(g) + &b.apply(v).scale_c(g.conj()))
    });
    GaugeField { s, kind: GaugeKind::Conformal }
}

/// `S^FG = ∂U₁ + ∂̄U₂`.
pub fn gauge_fg(u: &PotentialPair) -> GaugeField {
    let (a, b) = (u.u1.clone(), u.u2.clone());
    let s = FieldSampler::new(a.order().max(b.order()) + 1, false, move |v| {
        &a.apply(v).dz() + &b.apply(v).dzb()
    });
    GaugeField { s, kind: GaugeKind::Fg }
}

/// Action of the symmetry on `Φ`, from derivatives of `Φ` only.
pub fn action_on_phi(kind: GaugeKind, phi: &Wavefunction, beta: C64, g: C64) -> FieldSampler {
    let (p, q) = (phi.phi.clone(), phi.inv.clone());
    let o = p.order();
    match kind {
        GaugeKind::St => FieldSampler::new(o + 1, true, move |v| p.apply(v).d(Var::T).scale_c(beta)),
        GaugeKind::Scaling => FieldSampler::new(o + 1, false, move |v| {
            let j = p.apply(v);
            &j.dz().scale(v.z()) + &j.dzb().scale(v.zb())
        }),
        GaugeKind::Conformal => FieldSampler::new(o + 1, false, move |v| {
            let j = p.apply(v);
            -(&j.dz().scale_c(g) + &j.dzb().scale_c(g.conj()))
        }),
        GaugeKind::Fg => FieldSampler::new(o + 2, false, move |v| {
            let (j, ji) = (p.apply(v), q.apply(v));
            let (d, db) = (j.dz(), j.dzb());
            let a = &d.dz() - &(&(&d * &ji) * &d);
            let b = &db.dzb() - &(&(&db * &ji) * &db);
            &a + &b
        }),
    }
}

/// `D_αS + [S, U_α]` as a field.
pub fn tangent_of_gauge(s: &FieldSampler, u: &PotentialPair, alpha: usize) -> FieldSampler {
    let (s, ua, c) = (s.clone(), u.get(alpha).clone(), u.coords);
    FieldSampler::new(s.order().max(ua.order()) + 1, s.uses_t() || ua.uses_t(), move |v| {
        let j = s.apply(v);
        &crate::field::d_jet(&j, alpha, c) + &j.bracket(&ua.apply(v))
    })
}

/// `β ∂t U_α` as a field.
pub fn st_tangent(u: &PotentialPair, alpha: usize, beta: C64) -> FieldSampler {
    let ua = u.get(alpha).clone();
    FieldSampler::new(ua.order() + 1, true, move |v| ua.apply(v).d(Var::T).scale_c(beta))
}

/// Scaling characteristic `U_α + z∂U_α + z̄∂̄U_α`.
pub fn scaling_characteristic(u: &PotentialPair, alpha: usize) -> FieldSampler {
    let ua = u.get(alpha).clone();
    FieldSampler::new(ua.order() + 1, false, move |v| {
        let j = ua.apply(v);
        &(&j + &j.dz().scale(v.z())) + &j.dzb().scale(v.zb())
    })
}

/// Conformal characteristic `−(g∂U_α + ḡ∂̄U_α)`.
pub fn conformal_characteristic(u: &PotentialPair, alpha: usize, g: C64) -> FieldSampler {
    let ua = u.get(alpha).clone();
    FieldSampler::new(ua.order() + 1, false, move |v| {
        let j = ua.apply(v);
        -(&j.dz().scale_c(g) + &j.dzb().scale_c(g.conj()))
    })
}

/// `∂²U_α + ∂̄²U_α + [∂U_α, U_α] + [∂̄U_α, U_α]`: the evolutionary characteristic
/// as displayed alongside the FG family. Kept for comparison only; it does not
/// equal the tangents of `Φ⁻¹ S^FG Φ`.
pub fn fg_display_characteristic(u: &PotentialPair, alpha: usize) -> FieldSampler {
    let ua = u.get(alpha).clone();
    FieldSampler::new(ua.order() + 2, false, move |v| {
        let j = ua.apply(v);
        let (d, db) = (j.dz(), j.dzb());
        &(&(&d.dz() + &db.dzb()) + &d.bracket(&j)) + &db.bracket(&j)
    })
}

/// `Φ (D_αF) Φ⁻¹` from a directly differentiated immersion `F`.
pub fn characteristic_from_immersion(f: &FieldSampler, phi: &Wavefunction, alpha: usize, c: Coords) -> FieldSampler {
    let (f, p, q) = (f.clone(), phi.phi.clone(), phi.inv.clone());
    let order = f.order().max(p.order()) + 1;
    FieldSampler::new(order, f.uses_t(), move |v| {
        &(&p.apply(v) * &crate::field::d_jet(&f.apply(v), alpha, c)) * &q.apply(v)
    })
}

/// `max_α ‖D_αS + [S, U_α] − β∂tU_α‖`.
pub fn prop1_residual(s: &GaugeField, u: &PotentialPair, beta: C64, at: Point, diff: Diff) -> Result<f64> {
    let fs = first_order(&s.s, at, diff, false)?;
    let mut worst = 0.0f64;
    for alpha in 1..=2 {
        let fu = first_order(u.get(alpha), at, diff, true)?;
        let dt = fu.dt.as_ref().ok_or(Error::Invalid("missing t-derivative"))?;
        let lhs = &fs.d(alpha, u.coords) + &fs.val.bracket(&fu.val);
        worst = worst.max((&lhs - &dt.scale_c(beta)).norm());
    }
    Ok(worst)
}

/// `max_α ‖D_αS + [S, U_α] − A_α‖`.
pub fn prop2_residual(
    s: &GaugeField,
    u: &PotentialPair,
    a: (&FieldSampler, &FieldSampler),
    at: Point,
    diff: Diff,
) -> Result<f64> {
    let fs = first_order(&s.s, at, diff, false)?;
    let mut worst = 0.0f64;
    for alpha in 1..=2 {
        let ua = u.get(alpha).eval(at);
        let aa = if alpha == 1 { a.0 } else { a.1 }.eval(at);
        let lhs = &fs.d(alpha, u.coords) + &fs.val.bracket(&ua);
        worst = worst.max((&lhs - &aa).norm());
    }
    Ok(worst)
}

/// Compatibility expression of the λ-conformal gauge equation.
pub fn compat_st_residual(s: &GaugeField, u: &PotentialPair, beta: C64, at: Point, diff: Diff) -> Result<f64> {
    let c = u.coords;
    let a1 = first_order(&st_tangent(u, 1, beta), at, diff, false)?;
    let a2 = first_order(&st_tangent(u, 2, beta), at, diff, false)?;
    let f1 = first_order(&u.u1, at, diff, false)?;
    let f2 = first_order(&u.u2, at, diff, false)?;
    let sv = s.s.eval(at);
    let (u1, u2) = (&f1.val, &f2.val);
    let t1 = &a1.d(2, c) - &a2.d(1, c);
    let t2 = (&a2.val - &sv.bracket(u2)).bracket(u1);
    let t3 = sv.bracket(&f1.d(2, c));
    let t4 = (&a1.val - &sv.bracket(u1)).bracket(u2);
    let t5 = sv.bracket(&f2.d(1, c));
    Ok((&(&(&(&t1 - &t2) - &t3) + &t4) + &t5).norm())
}

/// `‖[S, D₂U₁ − D₁U₂] + [[S, U₁], U₂] − [[S, U₂], U₁]‖`.
pub fn compat_gauge_residual(s: &GaugeField, u: &PotentialPair, at: Point, diff: Diff) -> Result<f64> {
    let c = u.coords;
    let f1 = first_order(&u.u1, at, diff, false)?;
    let f2 = first_order(&u.u2, at, diff, false)?;
    let sv = s.s.eval(at);
    let r = &(&sv.bracket(&(&f1.d(2, c) - &f2.d(1, c))) + &sv.bracket(&f1.val).bracket(&f2.val))
        - &sv.bracket(&f2.val).bracket(&f1.val);
    Ok(r.norm())
}

/// `‖action(Φ) − SΦ‖`, covering `βD_λΦ = S₁Φ` and `pr ω Φ = S₂Φ`.
pub fn linearization_residual(phi: &Wavefunction, s: &GaugeField, action: &FieldSampler, at: Point) -> f64 {
    let p = phi.phi.eval(at);
    (&action.eval(at) - &(&s.s.eval(at) * &p)).norm()
}

/// `M = S₁ S₂⁻¹` with its consistency residuals.
#[derive(Clone, Debug)]
pub struct Mapping {
    pub m: CMat,
    /// `‖S₁ − M S₂‖`
    pub gauge_residual: f64,
    /// `‖β∂tΦ − M S₂ Φ‖`
    pub phi_residual: f64,
}

/// Mapping matrix at a point; `st_action` is `β∂tΦ`.
pub fn mapping_m(s1: &GaugeField, s2: &GaugeField, phi: &Wavefunction, st_action: &FieldSampler, at: Point) -> Result<Mapping> {
    let (a, b) = (s1.s.eval(at), s2.s.eval(at));
    let d = b.det().norm();
    if !(d > GAUGE_DET_TOL) {
        return Err(Error::MappingUndefined { det: d });
    }
    let m = &a * &b.inverse_tol(0.0)?;
    let ms2 = &m * &b;
    let gauge_residual = (&a - &ms2).norm();
    let phi_residual = (&st_action.eval(at) - &(&ms2 * &phi.phi.eval(at))).norm();
    Ok(Mapping { m, gauge_residual, phi_residual })
}

/// Inverse mapping `M⁻¹ = S₂ S₁⁻¹`.
pub fn mapping_inverse(s1: &GaugeField, s2: &GaugeField, at: Point) -> Result<CMat> {
    let (a, b) = (s1.s.eval(at), s2.s.eval(at));
    let d = a.det().norm();
    if !(d > GAUGE_DET_TOL) {
        return Err(Error::MappingUndefined { det: d });
    }
    Ok(&b * &a.inverse_tol(0.0)?)
}

/// Residual of the direct equation relating `βD_λΦ` to the FG action, with
/// `pr ω Φ = S₂Φ` and `pr ω(D_αΦ) = D_α(S₂Φ)`. Reported, not asserted.
pub fn eq_direct_residual(phi: &Wavefunction, u: &PotentialPair, s2: &GaugeField, beta: C64, at: Point) -> Result<f64> {
    let c = u.coords;
    let pj = phi.phi.jet(at, 1, true)?;
    let p = pj.value();
    let pt = pj.partial(0, 0, 1)?.scale_c(beta);
    let pinv = phi.inv.eval(at);
    let (sp, sq) = (s2.s.clone(), phi.phi.clone());
    let s_phi = FieldSampler::new(sp.order().max(sq.order()), false, move |v| &sp.apply(v) * &sq.apply(v));
    let fsp = first_order(&s_phi, at, Diff::Exact, false)?;
    let mut worst = 0.0f64;
    for alpha in 1..=2 {
        let fu = first_order(u.get(alpha), at, Diff::Exact, true)?;
        let ua = &fu.val;
        let dtu = fu.dt.clone().unwrap_or_else(|| CMat::zeros(p.dim())).scale_c(beta);
        let inner = &(-&fsp.d(alpha, c)) + &(ua * &fsp.val);
        let r = &(&(&(&pt * ua) - &(&(&(&p * ua) * &pinv) * &pt)) + &(&dtu * &p)) + &(&(&p * &inner) * &pinv);
        worst = worst.max(r.norm());
    }
    Ok(worst)
}

/// `|det S|` and `|tr S|` at a point.
pub fn det_trace(s: &GaugeField, at: Point) -> (f64, f64) {
    let v = s.s.eval(at);
    (v.det().norm(), v.trace().norm())
}
