//! Moving frame, fundamental forms and curvatures of a soliton surface.
//!
//! Real coordinates: `A_x = A₁ + A₂`, `A_y = i(A₁ − A₂)` and likewise for `U`.
//! With `⟨A, B⟩ = −½ tr(AB)` the metric `g_ij = ⟨A_i, A_j⟩` is positive on
//! su(N), so the sign `ε` in front of the trace is `−1`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{FieldSampler, Point};
use crate::immersion::{conjugate, Surface};
use crate::jet::Var;
use crate::matrix::{CMat, JMat};
use crate::{re, I};

/// `ε = −1`: the metric is `−½ tr(A_i A_j)`.
pub const EPSILON: f64 = -1.0;
/// `‖[A₁, A₂]‖` below this means the tangents are dependent.
pub const BRACKET_TOL: f64 = 1e-10;
/// `det g` below this means the metric is degenerate.
pub const METRIC_TOL: f64 = 1e-12;

fn ip(a: &CMat, b: &CMat) -> f64 {
    0.5 * EPSILON * (a * b).trace().re
}

#[derive(Clone, Debug)]
pub struct Frame {
    /// `Φ⁻¹ A_x Φ`, `Φ⁻¹ A_y Φ`.
    pub tangents: [CMat; 2],
    /// Unit normal `Φ⁻¹ N Φ`.
    pub normal: CMat,
    pub metric: [[f64; 2]; 2],
    pub second: [[f64; 2]; 2],
    /// `|b_xy − b_yx|`, zero when the deformed zero-curvature condition holds.
    pub second_asymmetry: f64,
    pub bracket_norm: f64,
    pub epsilon: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Curvatures {
    pub gaussian: f64,
    pub mean: f64,
    /// The closed trace expressions for `K` and `H` written directly in `A_i, U_j`.
    pub gaussian_literal: f64,
    pub mean_literal: f64,
}

struct RealData {
    a: [CMat; 2],
    b: [[CMat; 2]; 2],
    n_phi: CMat,
    bracket_norm: f64,
}

fn to_real_pair(m1: &JMat, m2: &JMat) -> (JMat, JMat) {
    (m1 + m2, (m1 - m2).scale_c(I))
}

fn real_data(s: &Surface, at: Point, sign: f64) -> Result<RealData> {
    let a1 = s.a[0].jet(at, 1, false)?;
    let a2 = s.a[1].jet(at, 1, false)?;
    let u1 = s.u.u1.jet(at, 0, false)?;
    let u2 = s.u.u2.jet(at, 0, false)?;
    let (ax, ay) = to_real_pair(&a1, &a2);
    let (ux, uy) = to_real_pair(&u1, &u2);
    let (ux, uy) = (ux.value(), uy.value());
    let a = [ax.value(), ay.value()];
    let da = [[ax.d(Var::X).value(), ax.d(Var::Y).value()], [ay.d(Var::X).value(), ay.d(Var::Y).value()]];
    let us = [ux, uy];
    let b = [0, 1].map(|i| [0, 1].map(|j| &da[i][j] + &a[i].bracket(&us[j])));
    let bracket_norm = a1.value().bracket(&a2.value()).norm();
    if !(bracket_norm > BRACKET_TOL) {
        return Err(Error::FrameDegenerate { bracket_norm });
    }
    let x = a[0].bracket(&a[1]);
    let q = ip(&x, &x);
    if !(q > 0.0) {
        return Err(Error::FrameDegenerate { bracket_norm });
    }
    let n_phi = x.scale_c(re(sign / libm::sqrt(q)));
    Ok(RealData { a, b, n_phi, bracket_norm })
}

fn forms(d: &RealData) -> Result<([[f64; 2]; 2], [[f64; 2]; 2], f64)> {
    let g = [0, 1].map(|i| [0, 1].map(|j| ip(&d.a[i], &d.a[j])));
    let det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
    if !(det > METRIC_TOL) {
        return Err(Error::MetricDegenerate { det });
    }
    let raw = [0, 1].map(|i| [0, 1].map(|j| ip(&d.b[i][j], &d.n_phi)));
    let off = 0.5 * (raw[0][1] + raw[1][0]);
    let b = [[raw[0][0], off], [off, raw[1][1]]];
    Ok((g, b, (raw[0][1] - raw[1][0]).abs()))
}

fn classical(g: &[[f64; 2]; 2], b: &[[f64; 2]; 2]) -> (f64, f64) {
    let dg = g[0][0] * g[1][1] - g[0][1] * g[1][0];
    let db = b[0][0] * b[1][1] - b[0][1] * b[1][0];
    let h = (g[1][1] * b[0][0] - 2.0 * g[0][1] * b[0][1] + g[0][0] * b[1][1]) / dg;
    (db / dg, h)
}

/// Moving frame at `at`; `sign` orients the normal.
pub fn frame(s: &Surface, at: Point, sign: f64) -> Result<Frame> {
    frame_and_curvatures(s, at, sign).map(|(f, _)| f)
}

/// Gaussian and mean curvature from the frame; `H` is the trace of the shape operator.
pub fn curvatures(s: &Surface, at: Point, sign: f64) -> Result<Curvatures> {
    let d = real_data(s, at, sign)?;
    let (g, b, _) = forms(&d)?;
    Ok(curvatures_of(&d, &g, &b))
}

fn curvatures_of(d: &RealData, g: &[[f64; 2]; 2], b: &[[f64; 2]; 2]) -> Curvatures {
    let (k, h) = classical(g, b);
    let (kl, hl) = literal(d);
    Curvatures { gaussian: k, mean: h, gaussian_literal: kl, mean_literal: hl }
}

/// Frame and curvatures sharing one evaluation of the tangent data.
pub fn frame_and_curvatures(s: &Surface, at: Point, sign: f64) -> Result<(Frame, Curvatures)> {
    let d = real_data(s, at, sign)?;
    let (metric, second, second_asymmetry) = forms(&d)?;
    let c = curvatures_of(&d, &metric, &second);
    let (p, q) = (s.phi.phi.eval(at), s.phi.inv.eval(at));
    let conj = |m: &CMat| &(&q * m) * &p;
    let f = Frame {
        tangents: [conj(&d.a[0]), conj(&d.a[1])],
        normal: conj(&d.n_phi),
        metric,
        second,
        second_asymmetry,
        bracket_norm: d.bracket_norm,
        epsilon: EPSILON,
    };
    Ok((f, c))
}

/// The closed trace formulas as written, with `Δ = tr A₁² tr A₂² − 4 tr(A₁A₂)`.
fn literal(d: &RealData) -> (f64, f64) {
    let tr = |m: &CMat| m.trace();
    let (a1, a2) = (&d.a[0], &d.a[1]);
    let t11 = tr(&(a1 * a1));
    let t22 = tr(&(a2 * a2));
    let t12 = tr(&(a1 * a2));
    let bn = |i: usize, j: usize| tr(&(&d.b[i][j] * &d.n_phi));
    let delta = t11 * t22 - t12 * re(4.0);
    let h = (t22 * bn(0, 0) - t12 * bn(0, 1) * re(8.0) + t11 * bn(1, 1)) / delta;
    let k = (bn(0, 0) * bn(1, 1) - bn(0, 1) * bn(0, 1) * re(2.0)) / delta;
    (k.re, h.re)
}

/// Normal orientation giving `H > 0` at `at`.
pub fn orientation_sign(s: &Surface, at: Point) -> Result<f64> {
    let c = curvatures(s, at, 1.0)?;
    Ok(if c.mean < 0.0 { -1.0 } else { 1.0 })
}

/// `K`, `H` computed from second derivatives of `F` alone.
pub fn curvatures_of_immersion(f: &FieldSampler, at: Point, sign: f64) -> Result<(f64, f64)> {
    let j = f.jet(at, 2, false)?;
    let xs = [j.d(Var::X), j.d(Var::Y)];
    let t = [xs[0].value(), xs[1].value()];
    let sec = [[xs[0].d(Var::X).value(), xs[0].d(Var::Y).value()], [xs[1].d(Var::X).value(), xs[1].d(Var::Y).value()]];
    let b = t[0].bracket(&t[1]);
    let bracket_norm = b.norm();
    let q = ip(&b, &b);
    if !(bracket_norm > BRACKET_TOL && q > 0.0) {
        return Err(Error::FrameDegenerate { bracket_norm });
    }
    let n = b.scale_c(re(sign / libm::sqrt(q)));
    let g = [0, 1].map(|i| [0, 1].map(|k| ip(&t[i], &t[k])));
    let det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
    if !(det > METRIC_TOL) {
        return Err(Error::MetricDegenerate { det });
    }
    let bb = [0, 1].map(|i| [0, 1].map(|k| ip(&sec[i][k], &n)));
    Ok(classical(&g, &bb))
}

/// Normal field `Φ⁻¹ N Φ` as a sampler, for plotting and export.
pub fn normal_field(s: &Surface, sign: f64) -> FieldSampler {
    let (a1, a2) = (s.a[0].clone(), s.a[1].clone());
    let n_phi = FieldSampler::new(a1.order().max(a2.order()), a1.uses_t() || a2.uses_t(), move |v| {
        let (x, y) = to_real_pair(&a1.apply(v), &a2.apply(v));
        let b = x.bracket(&y);
        let q = (&b * &b).trace() * re(-0.5);
        b.scale(q.sqrt().recip() * re(sign))
    });
    conjugate(&s.phi, &n_phi)
}

/// Least-squares sphere through `points`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SphereFit {
    pub center: [f64; 3],
    pub radius: f64,
    /// `max | |p − c| − r |`.
    pub max_residual: f64,
}

/// Algebraic fit of `|p|² = 2c·p + d`, solved by pivoted elimination on the normal equations.
pub fn sphere_fit(points: &[[f64; 3]]) -> Result<SphereFit> {
    if points.len() < 4 {
        return Err(Error::FitDegenerate);
    }
    let mut m = [[0.0f64; 5]; 4];
    let scale = points.iter().flat_map(|p| p.iter()).fold(0.0f64, |a, v| a.max(v.abs())).max(1e-300);
    for p in points {
        let q = [p[0] / scale, p[1] / scale, p[2] / scale];
        let row = [2.0 * q[0], 2.0 * q[1], 2.0 * q[2], 1.0];
        let rhs = q[0] * q[0] + q[1] * q[1] + q[2] * q[2];
        for i in 0..4 {
            for k in 0..4 {
                m[i][k] += row[i] * row[k];
            }
            m[i][4] += row[i] * rhs;
        }
    }
    let tr: f64 = (0..4).map(|i| m[i][i]).sum();
    for c in 0..4 {
        let piv = (c..4).max_by(|&a, &b| m[a][c].abs().total_cmp(&m[b][c].abs())).unwrap_or(c);
        if !(m[piv][c].abs() > 1e-12 * tr) {
            return Err(Error::FitDegenerate);
        }
        m.swap(c, piv);
        for r in 0..4 {
            if r != c {
                let f = m[r][c] / m[c][c];
                for k in c..5 {
                    m[r][k] -= f * m[c][k];
                }
            }
        }
    }
    let sol: Vec<f64> = (0..4).map(|i| m[i][4] / m[i][i]).collect();
    let center = [sol[0] * scale, sol[1] * scale, sol[2] * scale];
    let r2 = sol[3] + sol[0] * sol[0] + sol[1] * sol[1] + sol[2] * sol[2];
    if !(r2 > 0.0) {
        return Err(Error::FitDegenerate);
    }
    let radius = libm::sqrt(r2) * scale;
    let max_residual = points
        .iter()
        .map(|p| {
            let d = [p[0] - center[0], p[1] - center[1], p[2] - center[2]];
            (libm::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]) - radius).abs()
        })
        .fold(0.0, f64::max);
    Ok(SphereFit { center, radius, max_residual })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_fit_recovers_sphere() {
        let mut pts = Vec::new();
        for i in 0..10 {
            for j in 0..10 {
                let (th, ph) = (0.3 * i as f64 + 0.1, 0.6 * j as f64);
                pts.push([
                    1.0 + 2.5 * libm::sin(th) * libm::cos(ph),
                    -2.0 + 2.5 * libm::sin(th) * libm::sin(ph),
                    0.5 + 2.5 * libm::cos(th),
                ]);
            }
        }
        let f = sphere_fit(&pts).unwrap();
        assert!((f.radius - 2.5).abs() < 1e-10);
        assert!((f.center[0] - 1.0).abs() < 1e-10 && (f.center[1] + 2.0).abs() < 1e-10);
        assert!(f.max_residual < 1e-10);
    }

    #[test]
    fn sphere_fit_rejects_plane() {
        let pts: Vec<[f64; 3]> = (0..20).map(|i| [i as f64, (i * i % 7) as f64, 0.0]).collect();
        assert_eq!(sphere_fit(&pts), Err(Error::FitDegenerate));
    }
}
