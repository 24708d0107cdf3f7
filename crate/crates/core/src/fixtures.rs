//! Closed-form CP¹ reference matrices for the seed `(1, z)`.
//!
//! These are transcriptions of published displays. They are compared against
//! the generated fields, never used to build them. Not every display agrees
//! with the fields it describes; the tests state which do.

use crate::matrix::CMat;
use crate::{C64, I};

fn k(v: f64) -> C64 {
    C64::new(v, 0.0)
}

fn m2(a: C64, b: C64, c: C64, d: C64) -> CMat {
    CMat::from_vec(alloc::vec![a, b, c, d])
}

struct V {
    z: C64,
    zb: C64,
    r2: C64,
    tc: C64,
    xc: C64,
    yc: C64,
}

fn vars(x: f64, y: f64, t: f64) -> V {
    let z = C64::new(x, y);
    V {
        z,
        zb: z.conj(),
        r2: k(x * x + y * y),
        tc: k(t),
        xc: k(x),
        yc: k(y),
    }
}

/// `P₀ = [[1, z̄], [z, |z|²]] / (1 + |z|²)`.
pub fn p0(x: f64, y: f64) -> CMat {
    let V { z, zb, r2, .. } = vars(x, y, 0.0);
    m2(k(1.0), zb, z, r2).scale_c(k(1.0) / (k(1.0) + r2))
}

/// `P₁ = I − P₀`.
pub fn p1(x: f64, y: f64) -> CMat {
    let V { z, zb, r2, .. } = vars(x, y, 0.0);
    m2(r2, -zb, -z, k(1.0)).scale_c(k(1.0) / (k(1.0) + r2))
}

/// `U₁₀ = 2/((λ+1)(1+|z|²)²) [[−z̄, −z̄²], [1, z̄]]`.
pub fn u10(x: f64, y: f64, t: f64) -> CMat {
    let V { zb, r2, tc, .. } = vars(x, y, t);
    let pre = k(2.0) / ((I * tc + k(1.0)) * (k(1.0) + r2).powi(2));
    m2(-zb, -zb * zb, k(1.0), zb).scale_c(pre)
}

/// `U₂₀ = 2/((λ−1)(1+|z|²)²) [[−z, 1], [−z², z]]`.
pub fn u20(x: f64, y: f64, t: f64) -> CMat {
    let V { z, r2, tc, .. } = vars(x, y, t);
    let pre = k(2.0) / ((I * tc - k(1.0)) * (k(1.0) + r2).powi(2));
    m2(-z, k(1.0), -z * z, z).scale_c(pre)
}

/// Wavefunction `Φ₀` (closed-form display).
#[allow(clippy::all)]
pub fn phi0(x: f64, y: f64, t: f64) -> CMat {
    let V { z, zb, r2, tc, .. } = vars(x, y, t);
    m2(
        (-I + tc + (I + tc) * r2) / (tc - I),
        -k(2.0) * I * zb / (tc - I),
        -k(2.0) * I * z / (tc + I),
        (I + tc + (tc - I) * r2) / (tc + I),
    )
    .scale_c(k(1.0) / (k(1.0) + r2))
}

/// Wavefunction `Φ₁` (closed-form display).
#[allow(clippy::all)]
pub fn phi1(x: f64, y: f64, t: f64) -> CMat {
    let V { z, zb, r2, tc, .. } = vars(x, y, t);
    m2(
        (k(1.0) + tc.powi(2) + (tc + I).powi(2) * r2) / (tc - I).powi(2),
        k(2.0) * (k(1.0) - I * tc) * zb / (tc - I).powi(2),
        -k(2.0) * I * (tc - I) * z / (tc + I).powi(2),
        (k(1.0) + tc.powi(2) + (tc - I).powi(2) * r2) / (tc + I).powi(2),
    )
    .scale_c(k(1.0) / (k(1.0) + r2))
}

/// `F₀^ST`.
#[allow(clippy::all)]
pub fn f_st0(x: f64, y: f64, t: f64) -> CMat {
    let V { z, zb, r2, tc, .. } = vars(x, y, t);
    m2(
        -r2 * (tc.powi(2) - k(3.0) + r2 * (k(1.0) + tc.powi(2))),
        zb * ((tc + I).powi(2) + r2 * (k(3.0) + k(2.0) * I * tc + tc.powi(2))),
        z * ((tc - I).powi(2) + r2 * (k(3.0) - k(2.0) * I * tc + tc.powi(2))),
        r2 * (tc.powi(2) - k(3.0) + r2 * (tc.powi(2) + k(1.0))),
    )
    .scale_c(k(2.0) * I / ((k(1.0) + tc.powi(2)).powi(2) * (k(1.0) + r2).powi(2)))
}

/// `F₁^ST`.
#[allow(clippy::all)]
pub fn f_st1(x: f64, y: f64, t: f64) -> CMat {
    let V { z, zb, r2, tc, .. } = vars(x, y, t);
    m2(
        -((tc.powi(2) + k(1.0)) * (k(1.0) + k(2.0) * r2.powi(2))
            + k(3.0) * r2 * (tc.powi(2) - k(3.0))),
        zb * (k(6.0) * I * tc - k(5.0) + tc.powi(2) + r2 * (k(7.0) + k(6.0) * I * tc + tc.powi(2))),
        z * (tc.powi(2) - k(6.0) * I * tc - k(5.0) + r2 * (k(7.0) + tc.powi(2) - k(6.0) * I * tc)),
        (tc.powi(2) + k(1.0)) * (k(1.0) + k(2.0) * r2.powi(2))
            + k(3.0) * r2 * (tc.powi(2) - k(3.0)),
    )
    .scale_c(k(2.0) * I / ((k(1.0) + tc.powi(2)).powi(2) * (k(1.0) + r2).powi(2)))
}

/// `S₀^ST`.
#[allow(clippy::all)]
pub fn s_st0(x: f64, y: f64, t: f64) -> CMat {
    let V { z, zb, r2, tc, .. } = vars(x, y, t);
    m2(
        -r2 / (tc.powi(2) + k(1.0)),
        zb / (tc - I).powi(2),
        z / (tc + I).powi(2),
        r2 / (tc.powi(2) + k(1.0)),
    )
    .scale_c(k(2.0) * I / (k(1.0) + r2))
}

/// `S₁^ST`.
#[allow(clippy::all)]
pub fn s_st1(x: f64, y: f64, t: f64) -> CMat {
    let V { z, zb, r2, tc, .. } = vars(x, y, t);
    m2(
        -(k(1.0) + k(2.0) * r2) / (tc.powi(2) + k(1.0)),
        zb * (tc + I).powi(2) / (tc - I).powi(4),
        z * (tc - I).powi(2) / (tc + I).powi(4),
        (k(1.0) + k(2.0) * r2) / (tc.powi(2) + k(1.0)),
    )
    .scale_c(k(2.0) * I / (k(1.0) + r2))
}

/// `S^g` (common to `k = 0, 1`).
#[allow(clippy::all)]
pub fn s_g(x: f64, y: f64, t: f64) -> CMat {
    let V { z, zb, r2, tc, .. } = vars(x, y, t);
    m2(
        k(2.0) * I * tc * r2,
        I * zb * (I - tc + r2 * (tc + I)),
        z * (k(1.0) - I * tc + r2 * (k(1.0) + I * tc)),
        -k(2.0) * I * tc * r2,
    )
    .scale_c(k(2.0) / ((tc.powi(2) + k(1.0)) * (k(1.0) + r2).powi(2)))
}

/// `U₁ + U₂` of `k = 0`, the simplest conformal gauge (`g = −1`).
#[allow(clippy::all)]
pub fn u_sum(x: f64, y: f64, t: f64) -> CMat {
    let V { z, zb, r2, tc, .. } = vars(x, y, t);
    m2(
        k(2.0) * z + I * (tc + I) * (z + zb),
        -k(1.0) - I * tc + I * zb.powi(2) * (tc + I),
        k(1.0) + z.powi(2) + I * tc * (z.powi(2) - k(1.0)),
        -(k(2.0) * z + I * (tc + I) * (z + zb)),
    )
    .scale_c(k(2.0) / ((tc.powi(2) + k(1.0)) * (k(1.0) + r2).powi(2)))
}

/// `S₀^c` for `g = 1 + i`.
#[allow(clippy::all)]
pub fn s_c0(x: f64, y: f64, t: f64) -> CMat {
    let V { z, zb, r2, tc, .. } = vars(x, y, t);
    m2(
        (-I * (k(1.0) - I) * (tc - I) * z + (k(1.0) + I) * (k(1.0) - I * tc) * zb)
            / (tc.powi(2) + k(1.0)),
        ((k(1.0) - I) * (k(1.0) + I * tc) + (k(1.0) + I) * (k(1.0) - I * tc) * zb.powi(2))
            / (tc - I).powi(2),
        (I * (k(1.0) + I) * (tc + I) - (k(1.0) - I) * z.powi(2) * (tc - I)) / (tc + I).powi(2),
        ((k(1.0) - I) * (k(1.0) + I * tc) * z + I * (k(1.0) + I) * (tc + I) * zb)
            / (tc.powi(2) + k(1.0)),
    )
    .scale_c(k(2.0) / (k(1.0) + r2).powi(2))
}

/// `S₁^c` for `g = 1 + i`.
#[allow(clippy::all)]
pub fn s_c1(x: f64, y: f64, t: f64) -> CMat {
    let V { z, zb, r2, tc, .. } = vars(x, y, t);
    m2(
        (-I * (k(1.0) - I) * (tc - I) * z + (k(1.0) + I) * (k(1.0) - I * tc) * zb)
            / (tc.powi(2) + k(1.0)),
        (tc + I).powi(2)
            * ((k(1.0) - I) * (k(1.0) + I * tc) + (k(1.0) + I) * (k(1.0) - I * tc) * zb.powi(2))
            / (tc - I).powi(4),
        I * (tc - I).powi(2) * ((k(1.0) + I) * (tc + I) - (k(1.0) - I) * (tc - I) * z.powi(2))
            / (tc + I).powi(4),
        ((k(1.0) - I) * (k(1.0) + I * tc) * z + I * (k(1.0) + I) * (tc + I) * zb)
            / (tc.powi(2) + k(1.0)),
    )
    .scale_c(k(2.0) / (k(1.0) + r2).powi(2))
}

/// `S^FG`.
#[allow(clippy::all)]
pub fn s_fg(x: f64, y: f64, t: f64) -> CMat {
    let V { z, zb, r2, tc, .. } = vars(x, y, t);
    m2(
        -z.powi(2) * (k(1.0) + I * tc) + zb.powi(2) * (k(1.0) - I * tc),
        zb.powi(3) * (k(1.0) - I * tc) + z * (I * tc + k(1.0)),
        -I * z.powi(3) * (tc - I) + I * zb * (tc + I),
        z.powi(2) * (k(1.0) + I * tc) - zb.powi(2) * (k(1.0) - I * tc),
    )
    .scale_c(k(4.0) / ((tc.powi(2) + k(1.0)) * (k(1.0) + r2).powi(3)))
}

/// Weierstrass immersion `F₀`.
#[allow(clippy::all)]
pub fn f_gwfi0(x: f64, y: f64, t: f64) -> CMat {
    let V { z, zb, r2, .. } = vars(x, y, t);
    m2((r2 - k(1.0)) / k(2.0), -zb, -z, (k(1.0) - r2) / k(2.0)).scale_c(I / (k(1.0) + r2))
}

/// Mapping `M₀` between `S^ST` and `S^FG`.
#[allow(clippy::all)]
pub fn m0(x: f64, y: f64, t: f64) -> CMat {
    let V { z, zb, r2, tc, .. } = vars(x, y, t);
    m2(
        (-k(2.0) * I * z.powi(3) * (tc - I) + zb * ((tc + I).powi(2) + r2 * (tc.powi(2) + k(1.0))))
            / (z * (tc - I)),
        z * ((tc + I).powi(2) + (tc.powi(2) + k(1.0)) * r2 + k(2.0) * (k(1.0) + I * tc)) / (tc - I),
        -(z.powi(3) * (k(1.0) + tc.powi(2))
            + k(2.0) * zb * (k(1.0) - I * tc)
            + z * (tc - I).powi(2))
            / (tc + I),
        (z * (tc - I).powi(2)
            + r2 * z * (tc.powi(2) + k(1.0))
            + k(2.0) * I * zb.powi(3) * (tc + I))
            / (zb * (tc + I)),
    )
    .scale_c(k(1.0) / (k(2.0) * (tc.powi(2) + k(1.0))))
}

/// Mapping `M₁`.
#[allow(clippy::all)]
pub fn m1(x: f64, y: f64, t: f64) -> CMat {
    let V { z, zb, r2, tc, .. } = vars(x, y, t);
    &m2(
        -(k(1.0) + k(2.0) * r2) / (tc.powi(2) + k(1.0)),
        (I + tc).powi(2) * zb / (tc - I).powi(4),
        z * (tc - I).powi(2) / (tc + I).powi(4),
        (k(1.0) + k(2.0) * r2) / (tc.powi(2) + k(1.0)),
    )
    .scale_c(I / (k(2.0) * r2))
        * &m2(
            z.powi(2) * (I * tc + k(1.0)) + zb.powi(2) * (I * tc - k(1.0)),
            -z * (I * tc + k(1.0)) + zb.powi(3) * (I * tc - k(1.0)),
            z.powi(3) * (I * tc + k(1.0)) + (k(1.0) - I * tc) * zb,
            -z.powi(2) * (k(1.0) + I * tc) + (k(1.0) - I * tc) * zb.powi(2),
        )
}

/// `M₀⁻¹`.
#[allow(clippy::all)]
pub fn m0_inv(x: f64, y: f64, t: f64) -> CMat {
    let V { z, zb, r2, tc, .. } = vars(x, y, t);
    m2(
        ((tc - I).powi(2) * z
            + (k(1.0) + tc.powi(2)) * r2 * z
            + k(2.0) * (I * tc - k(1.0)) * zb.powi(3))
            / ((I + tc) * zb),
        (k(2.0) * (k(1.0) + I * tc) * z.powi(2)
            + (I + tc).powi(2) * zb.powi(2)
            + (k(1.0) + tc.powi(2)) * r2 * zb.powi(2))
            / ((I - tc) * z),
        ((tc - I).powi(2) * z.powi(2)
            + (k(1.0) + tc.powi(2)) * r2 * z.powi(2)
            + k(2.0) * (k(1.0) - I * tc) * zb.powi(2))
            / ((I + tc) * zb),
        (-k(2.0) * (k(1.0) + I * tc) * z.powi(3)
            + (I + tc).powi(2) * zb
            + (k(1.0) + tc.powi(2)) * r2 * zb)
            / ((tc - I) * z),
    )
    .scale_c(k(2.0) / (k(1.0) + r2).powi(3))
}

/// `M₁⁻¹`.
#[allow(clippy::all)]
pub fn m1_inv(x: f64, y: f64, t: f64) -> CMat {
    let V { z, zb, r2, tc, .. } = vars(x, y, t);
    &m2(
        -z.powi(2) * (k(1.0) + I * tc) + zb.powi(2) * (k(1.0) - I * tc),
        zb.powi(3) * (k(1.0) - I * tc) + z * (k(1.0) + I * tc),
        -z.powi(3) * (k(1.0) + I * tc) + zb * (I * tc - k(1.0)),
        z.powi(2) * (k(1.0) + I * tc) - zb.powi(2) * (k(1.0) - I * tc),
    )
    .scale_c(k(2.0) / ((tc.powi(2) + k(1.0)) * (k(1.0) + r2).powi(3) * (k(1.0) + k(4.0) * r2)))
        * &m2(
            (k(1.0) + k(2.0) * r2) * (k(1.0) + I * tc) * (I + tc),
            -I * zb * (I + tc).powi(4) / (tc - I).powi(2),
            -I * z * (tc - I).powi(4) / (I + tc).powi(2),
            (k(1.0) + k(2.0) * r2) * (k(1.0) - I * tc) * (-I + tc),
        )
}

/// Parametric form of the ST surface in the `e₁, e₂, e₃` basis.
#[allow(clippy::all)]
pub fn parametric_st(x: f64, y: f64) -> [f64; 3] {
    let V { xc, yc, .. } = vars(x, y, 0.0);
    let den = k(1.0) + xc * xc + yc * yc;
    [
        (xc / den).re,
        (yc / den).re,
        ((k(1.0) - xc.powi(2) - yc.powi(2)) / (k(2.0) * den)).re,
    ]
}

/// Parametric form of the scaling surface in the `e₁, e₂, e₃` basis.
#[allow(clippy::all)]
pub fn parametric_g(x: f64, y: f64) -> [f64; 3] {
    let V { xc, yc, .. } = vars(x, y, 0.0);
    let den = k(1.0) + xc * xc + yc * yc;
    [
        ((xc.powi(3) - k(2.0) * xc.powi(2) * yc + xc * (yc.powi(2) - k(1.0))
            - k(2.0) * yc * (k(1.0) + yc.powi(2)))
            / den.powi(2))
        .re,
        (-(k(2.0) * xc.powi(3)
            + xc.powi(2) * yc
            + yc * (yc.powi(2) - k(1.0))
            + k(2.0) * xc * (k(1.0) + yc.powi(2)))
            / den.powi(2))
        .re,
        (k(2.0) * (xc.powi(2) + yc.powi(2)) / den.powi(2)).re,
    ]
}

/// Parametric form of the conformal surface in the `e₁, e₂, e₃` basis.
#[allow(clippy::all)]
pub fn parametric_c(x: f64, y: f64) -> [f64; 3] {
    let V { xc, yc, .. } = vars(x, y, 0.0);
    let den = k(1.0) + xc * xc + yc * yc;
    [
        ((xc.powi(2) - k(1.0) - k(4.0) * xc * yc - yc.powi(2)) / den.powi(2)).re,
        (-k(2.0) * (k(1.0) + xc.powi(2) + xc * yc - yc.powi(2)) / den.powi(2)).re,
        (k(2.0) * (k(2.0) * xc - yc) / den.powi(2)).re,
    ]
}

/// Parametric form of the FG surface in the `e₁, e₂, e₃` basis.
#[allow(clippy::all)]
pub fn parametric_fg(x: f64, y: f64) -> [f64; 3] {
    let V { xc, yc, .. } = vars(x, y, 0.0);
    let den = k(1.0) + xc * xc + yc * yc;
    [
        (-(xc.powi(3) - k(6.0) * xc.powi(2) * yc - xc * (k(1.0) + k(3.0) * yc.powi(2))
            + k(2.0) * yc * (k(1.0) + yc.powi(2)))
            / den.powi(3))
        .re,
        ((k(2.0) * xc.powi(3) + yc + k(3.0) * xc.powi(2) * yc - yc.powi(3)
            + xc * (k(2.0) - k(6.0) * yc.powi(2)))
            / den.powi(3))
        .re,
        (-k(2.0) * (xc.powi(2) - k(4.0) * xc * yc - yc.powi(2)) / den.powi(3)).re,
    ]
}
