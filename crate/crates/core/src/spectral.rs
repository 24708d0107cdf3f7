//! Linear spectral problem `D_αΦ = U_αΦ` for the CP^(N−1) model.
//!
//! Conventions fixed against the reference matrices:
//!
//! - `D₁ = ∂`, `D₂ = ∂̄` (Wirtinger), `U₁ = 2/(1+λ)[∂P, P]`, `U₂ = 2/(1−λ)[∂̄P, P]`.
//! - Zero curvature: `D₂U₁ − D₁U₂ + [U₁, U₂] = 0`.
//! - The θ-form potentials act in real coordinates (`D₁ = ∂x`, `D₂ = ∂y`).
//!
//! The closed-form `Φ_k` solves the problem but has `det Φ_k = ((t−i)/(t+i))^m`.
//! [`Normalization::Origin`] multiplies on the right by the constant
//! `Φ_k(z=0)⁻¹`: the product still solves the problem, has unit determinant,
//! and equals `I` at `z = 0`.

use alloc::vec::Vec;

use crate::cpn::ProjectorChain;
use crate::error::Result;
use crate::field::{d_jet, first_order, Coords, Diff, FieldSampler, Point, Vars};
use crate::jet::Jet;
use crate::matrix::{CMat, JMat};
use crate::{re, C64, I};

/// Potentials `U₁, U₂` and the coordinates they act in.
#[derive(Clone)]
pub struct PotentialPair {
    pub u1: FieldSampler,
    pub u2: FieldSampler,
    pub coords: Coords,
}

impl PotentialPair {
    pub fn get(&self, alpha: usize) -> &FieldSampler {
        if alpha == 1 {
            &self.u1
        } else {
            &self.u2
        }
    }

    /// `max ‖U₁† + U₂‖` at a point.
    pub fn pairing_residual(&self, at: Point) -> f64 {
        (&self.u1.eval(at).dagger() + &self.u2.eval(at)).norm()
    }
}

fn one_pm(l: Jet, sign: f64) -> Jet {
    l * sign + re(1.0)
}

/// `U_{αk}` of chain member `k`.
pub fn potentials(chain: &ProjectorChain, k: usize) -> Result<PotentialPair> {
    let p = chain.member(k)?.clone();
    Ok(potentials_of(&p))
}

/// Potentials of a single projector field.
pub fn potentials_of(p: &FieldSampler) -> PotentialPair {
    let (p1, p2) = (p.clone(), p.clone());
    let order = p.order() + 1;
    let u1 = FieldSampler::new(order, false, move |v| {
        let j = p1.apply(v);
        j.dz().bracket(&j).scale(one_pm(v.lambda(), 1.0).recip() * re(2.0))
    });
    let u2 = FieldSampler::new(order, false, move |v| {
        let j = p2.apply(v);
        j.dzb().bracket(&j).scale(one_pm(v.lambda(), -1.0).recip() * re(2.0))
    });
    PotentialPair { u1, u2, coords: Coords::Wirtinger }
}

/// θ-form potentials:
/// `U₁ = −2/(1−λ²)([∂xθ, θ] − iλ[∂yθ, θ])`, `U₂ = −2/(1−λ²)(iλ[∂xθ, θ] + [∂yθ, θ])`.
pub fn potentials_theta(theta: &FieldSampler) -> PotentialPair {
    use crate::jet::Var;
    let build = move |th: FieldSampler, second: bool| {
        FieldSampler::new(th.order() + 1, false, move |v: &Vars| {
            let j = th.apply(v);
            let ax = j.d(Var::X).bracket(&j);
            let ay = j.d(Var::Y).bracket(&j);
            let l = v.lambda();
            let pre = (Jet::one() - l * l).recip() * re(-2.0);
            let il = l * I;
            let m = if second { &ax.scale(il) + &ay } else { &ax - &ay.scale(il) };
            m.scale(pre)
        })
    };
    PotentialPair { u1: build(theta.clone(), false), u2: build(theta.clone(), true), coords: Coords::Real }
}

/// Potentials in real coordinates from Wirtinger ones:
/// `U_x = U₁ + U₂`, `U_y = i(U₁ − U₂)`.
pub fn to_real(u: &PotentialPair) -> PotentialPair {
    if u.coords == Coords::Real {
        return u.clone();
    }
    let (a, b) = (u.u1.clone(), u.u2.clone());
    let (c, d) = (u.u1.clone(), u.u2.clone());
    let order = a.order().max(b.order());
    PotentialPair {
        u1: FieldSampler::new(order, false, move |v| &a.apply(v) + &b.apply(v)),
        u2: FieldSampler::new(order, false, move |v| (&c.apply(v) - &d.apply(v)).scale_c(I)),
        coords: Coords::Real,
    }
}

/// Free constant multiplying the closed-form wavefunction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Normalization {
    /// `Φ_k` exactly as the closed form.
    Closed,
    /// `Φ_k · Φ_k(z=0)⁻¹`.
    #[default]
    Origin,
}

/// A wavefunction together with its closed-form inverse.
#[derive(Clone)]
pub struct Wavefunction {
    pub phi: FieldSampler,
    pub inv: FieldSampler,
    pub normalization: Normalization,
}

fn phi_closed_jet(below: &[FieldSampler], pk: &FieldSampler, n: usize, v: &Vars, inverse: bool) -> JMat {
    let l = v.lambda();
    let s = if inverse { 1.0 } else { -1.0 };
    let den = one_pm(l, s);
    let a = l * re(-4.0 * s) * (den * den).recip();
    let b = den.recip() * re(-2.0);
    let sum = below.iter().fold(JMat::zeros(n).map(|_| Jet::zero()), |acc, m| &acc + &m.apply(v));
    &(&JMat::identity(n) + &sum.scale(a)) + &pk.apply(v).scale(b)
}

/// `Φ_k` and `Φ_k⁻¹` for chain member `k`.
pub fn wavefunction(chain: &ProjectorChain, k: usize, norm: Normalization) -> Result<Wavefunction> {
    let n = chain.n();
    let pk = chain.member(k)?.clone();
    let below: Vec<FieldSampler> = chain.members()[..k].to_vec();
    let order = chain.members()[..=k].iter().map(|m| m.order()).max().unwrap_or(0);
    let (b1, p1) = (below.clone(), pk.clone());
    let (b2, p2) = (below, pk);
    let closed = move |v: &Vars, inverse: bool| phi_closed_jet(&b1, &p1, n, v, inverse);
    let closed2 = move |v: &Vars, inverse: bool| phi_closed_jet(&b2, &p2, n, v, inverse);
    let (phi, inv) = match norm {
        Normalization::Closed => (
            FieldSampler::new(order, false, move |v| closed(v, false)),
            FieldSampler::new(order, false, move |v| closed2(v, true)),
        ),
        Normalization::Origin => (
            FieldSampler::new(order, false, move |v| {
                let right = closed(&v.at_origin(), true).t_part();
                &closed(v, false) * &right
            }),
            FieldSampler::new(order, false, move |v| {
                let left = closed2(&v.at_origin(), false).t_part();
                &left * &closed2(v, true)
            }),
        ),
    };
    Ok(Wavefunction { phi, inv, normalization: norm })
}

impl Wavefunction {
    /// `‖ΦΦ⁻¹ − I‖`.
    pub fn inverse_residual(&self, at: Point) -> f64 {
        let m = &self.phi.eval(at) * &self.inv.eval(at);
        (&m - &CMat::identity(m.dim())).norm()
    }

    /// `(det Φ, ‖Φ†Φ − (Φ†Φ)₁₁ I‖)`.
    pub fn unitarity(&self, at: Point) -> (C64, f64) {
        let p = self.phi.eval(at);
        let g = &p.dagger() * &p;
        let d = (&g - &CMat::identity(p.dim()).scale_c(g[(0, 0)])).norm();
        (p.det(), d)
    }
}

/// `max_α ‖D_αΦ − U_αΦ‖`.
pub fn lsp_residual(phi: &FieldSampler, u: &PotentialPair, at: Point, diff: Diff) -> Result<f64> {
    let f = first_order(phi, at, diff, false)?;
    let mut worst = 0.0f64;
    for alpha in 1..=2 {
        let ua = u.get(alpha).eval(at);
        worst = worst.max((&f.d(alpha, u.coords) - &(&ua * &f.val)).norm());
    }
    Ok(worst)
}

/// `‖D₂U₁ − D₁U₂ + [U₁, U₂]‖`.
pub fn zcc_residual(u: &PotentialPair, at: Point, diff: Diff) -> Result<f64> {
    let a = first_order(&u.u1, at, diff, false)?;
    let b = first_order(&u.u2, at, diff, false)?;
    let r = &(&a.d(2, u.coords) - &b.d(1, u.coords)) + &a.val.bracket(&b.val);
    Ok(r.norm())
}

/// `‖D₂A₁ − D₁A₂ + [A₁, U₂] + [U₁, A₂]‖`.
pub fn deformed_zcc_residual(
    a1: &FieldSampler,
    a2: &FieldSampler,
    u: &PotentialPair,
    at: Point,
    diff: Diff,
) -> Result<f64> {
    let a = first_order(a1, at, diff, false)?;
    let b = first_order(a2, at, diff, false)?;
    let (u1, u2) = (u.u1.eval(at), u.u2.eval(at));
    let r = &(&(&a.d(2, u.coords) - &b.d(1, u.coords)) + &a.val.bracket(&u2)) + &u1.bracket(&b.val);
    Ok(r.norm())
}

/// The zero-curvature expression as a field (for composite checks).
pub fn zcc_field(u: &PotentialPair) -> FieldSampler {
    let (a, b, c) = (u.u1.clone(), u.u2.clone(), u.coords);
    FieldSampler::new(a.order().max(b.order()) + 1, false, move |v| {
        let (j1, j2) = (a.apply(v), b.apply(v));
        &(&d_jet(&j1, 2, c) - &d_jet(&j2, 1, c)) + &j1.bracket(&j2)
    })
}
