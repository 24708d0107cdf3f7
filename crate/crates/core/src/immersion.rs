//! Soliton surfaces `F = Φ⁻¹ S Φ` and the Weierstrass immersion.

use alloc::string::String;

use crate::cpn::{gwfi, ProjectorChain};
use crate::error::{Error, Result};
use crate::field::{first_order, Coords, Diff, FieldSampler, Point};
use crate::gauges::{
    action_on_phi, conformal_characteristic, gauge_c, gauge_fg, gauge_g, gauge_st, scaling_characteristic,
    st_tangent, tangent_of_gauge, GaugeField, GaugeKind,
};
use crate::jet::Var;
use crate::matrix::JMat;
use crate::spectral::{potentials, wavefunction, Normalization, PotentialPair, Wavefunction};
use crate::{re, C64};

/// Default constant of the conformal family.
pub const DEFAULT_G: C64 = C64::new(1.0, 1.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    St,
    Scaling,
    Conformal,
    Fg,
    Gwfi,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::St, Family::Scaling, Family::Conformal, Family::Fg, Family::Gwfi];

    pub fn name(&self) -> &'static str {
        match self {
            Family::St => "st",
            Family::Scaling => "g",
            Family::Conformal => "c",
            Family::Fg => "fg",
            Family::Gwfi => "gwfi",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        let l = String::from(s).to_ascii_lowercase();
        Family::ALL.into_iter().find(|f| f.name() == l)
    }

    pub fn gauge_kind(&self) -> Option<GaugeKind> {
        match self {
            Family::St => Some(GaugeKind::St),
            Family::Scaling => Some(GaugeKind::Scaling),
            Family::Conformal => Some(GaugeKind::Conformal),
            Family::Fg => Some(GaugeKind::Fg),
            Family::Gwfi => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Options {
    pub beta: C64,
    pub g: C64,
    pub normalization: Normalization,
}

impl Default for Options {
    fn default() -> Self {
        Options { beta: re(1.0), g: DEFAULT_G, normalization: Normalization::Origin }
    }
}

/// An immersion together with the data of its moving frame.
#[derive(Clone)]
pub struct Surface {
    pub family: Family,
    pub k: usize,
    pub n: usize,
    pub f: FieldSampler,
    /// `F` computed from derivatives of `Φ` without passing through `S`.
    pub f_direct: FieldSampler,
    /// Tangent characteristics `A₁, A₂` in the `Φ` frame, Wirtinger coordinates.
    pub a: [FieldSampler; 2],
    pub u: PotentialPair,
    pub phi: Wavefunction,
    pub gauge: Option<GaugeField>,
    pub options: Options,
}

/// `Φ⁻¹ M Φ`.
pub fn conjugate(phi: &Wavefunction, m: &FieldSampler) -> FieldSampler {
    let (p, q, m) = (phi.phi.clone(), phi.inv.clone(), m.clone());
    FieldSampler::new(m.order().max(p.order()), m.uses_t(), move |v| &(&q.apply(v) * &m.apply(v)) * &p.apply(v))
}

/// `Φ⁻¹ · action(Φ)`.
pub fn pull_back(phi: &Wavefunction, action: &FieldSampler) -> FieldSampler {
    let (q, a) = (phi.inv.clone(), action.clone());
    FieldSampler::new(a.order().max(q.order()), a.uses_t(), move |v| &q.apply(v) * &a.apply(v))
}

/// `F = Φ⁻¹ S Φ` for an arbitrary gauge.
pub fn immersion_cd(phi: &Wavefunction, s: &FieldSampler) -> FieldSampler {
    conjugate(phi, s)
}

/// `F = Φ⁻¹(β ∂tΦ + S Φ + pr ω Φ)`; absent terms are omitted.
pub fn master_immersion(
    phi: &Wavefunction,
    beta: Option<C64>,
    s: Option<&FieldSampler>,
    omega_action: Option<&FieldSampler>,
) -> Result<FieldSampler> {
    if beta.is_none() && s.is_none() && omega_action.is_none() {
        return Err(Error::Invalid("master formula needs at least one term"));
    }
    let (p, q) = (phi.phi.clone(), phi.inv.clone());
    let (s, w) = (s.cloned(), omega_action.cloned());
    let mut order = p.order();
    let mut uses_t = false;
    if beta.is_some() {
        order = order.max(p.order() + 1);
        uses_t = true;
    }
    for f in s.iter().chain(w.iter()) {
        order = order.max(f.order());
        uses_t |= f.uses_t();
    }
    let n = phi.phi.eval(Point::new(0.0, 0.0, 0.0)).dim();
    Ok(FieldSampler::new(order, uses_t, move |v| {
        let pj = p.apply(v);
        let mut acc = JMat::zeros(n);
        if let Some(b) = beta {
            acc = &acc + &pj.d(Var::T).scale_c(b);
        }
        if let Some(s) = &s {
            acc = &acc + &(&s.apply(v) * &pj);
        }
        if let Some(w) = &w {
            acc = &acc + &w.apply(v);
        }
        &q.apply(v) * &acc
    }))
}

fn zero_pair(n: usize) -> PotentialPair {
    let z = FieldSampler::new(0, false, move |_| JMat::zeros(n));
    PotentialPair { u1: z.clone(), u2: z, coords: Coords::Wirtinger }
}

fn identity_wavefunction(n: usize) -> Wavefunction {
    let id = FieldSampler::new(0, false, move |_| JMat::identity(n));
    Wavefunction { phi: id.clone(), inv: id, normalization: Normalization::Closed }
}

impl Surface {
    pub fn build(chain: &ProjectorChain, k: usize, family: Family, options: Options) -> Result<Surface> {
        let n = chain.n();
        chain.member(k)?;
        if family == Family::Gwfi {
            let f = gwfi(chain, k)?;
            let (f1, f2) = (f.clone(), f.clone());
            let a = [
                FieldSampler::new(f.order() + 1, false, move |v| f1.apply(v).dz()),
                FieldSampler::new(f.order() + 1, false, move |v| f2.apply(v).dzb()),
            ];
            return Ok(Surface {
                family,
                k,
                n,
                f_direct: f.clone(),
                f,
                a,
                u: zero_pair(n),
                phi: identity_wavefunction(n),
                gauge: None,
                options,
            });
        }
        let u = potentials(chain, k)?;
        let phi = wavefunction(chain, k, options.normalization)?;
        let kind = family.gauge_kind().ok_or(Error::Invalid("family has no gauge"))?;
        let (gauge, a) = match kind {
            GaugeKind::St => (gauge_st(&phi, options.beta), [st_tangent(&u, 1, options.beta), st_tangent(&u, 2, options.beta)]),
            GaugeKind::Scaling => (gauge_g(&u), [scaling_characteristic(&u, 1), scaling_characteristic(&u, 2)]),
            GaugeKind::Conformal => (
                gauge_c(&u, options.g),
                [conformal_characteristic(&u, 1, options.g), conformal_characteristic(&u, 2, options.g)],
            ),
            GaugeKind::Fg => {
                let s = gauge_fg(&u);
                let a = [tangent_of_gauge(&s.s, &u, 1), tangent_of_gauge(&s.s, &u, 2)];
                (s, a)
            }
        };
        let f = immersion_cd(&phi, &gauge.s);
        let f_direct = pull_back(&phi, &action_on_phi(kind, &phi, options.beta, options.g));
        Ok(Surface { family, k, n, f, f_direct, a, u, phi, gauge: Some(gauge), options })
    }

    /// `Φ⁻¹ A_α Φ`, the tangent `D_αF` in the surface frame.
    pub fn tangent(&self, alpha: usize) -> FieldSampler {
        conjugate(&self.phi, &self.a[alpha - 1])
    }
}

/// `max_α ‖D_α(ΦF) − U_α ΦF − A_α Φ‖`.
pub fn psi_deformation_residual(s: &Surface, at: Point, diff: Diff) -> Result<f64> {
    let (p, f) = (s.phi.phi.clone(), s.f.clone());
    let psi = FieldSampler::new(p.order().max(f.order()), f.uses_t(), move |v| &p.apply(v) * &f.apply(v));
    let fo = first_order(&psi, at, diff, false)?;
    let phi = s.phi.phi.eval(at);
    let mut worst = 0.0f64;
    for alpha in 1..=2 {
        let ua = s.u.get(alpha).eval(at);
        let aa = s.a[alpha - 1].eval(at);
        let r = &(&fo.d(alpha, Coords::Wirtinger) - &(&ua * &fo.val)) - &(&aa * &phi);
        worst = worst.max(r.norm());
    }
    Ok(worst)
}

/// `max_α ‖D_αF − Φ⁻¹A_αΦ‖`.
pub fn tangent_residual(s: &Surface, at: Point, diff: Diff) -> Result<f64> {
    let fo = first_order(&s.f, at, diff, false)?;
    let mut worst = 0.0f64;
    for alpha in 1..=2 {
        let t = s.tangent(alpha).eval(at);
        worst = worst.max((&fo.d(alpha, Coords::Wirtinger) - &t).norm());
    }
    Ok(worst)
}
