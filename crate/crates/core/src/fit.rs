//! Matching sampled surfaces to parametric reference forms.

use crate::error::{Error, Result};

/// `target ≈ sign · computed + offset`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StrictFit {
    pub sign: f64,
    pub offset: [f64; 3],
    pub max_residual: f64,
}

/// `target_j ≈ scale · signs_j · computed_j + offset_j`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtendedFit {
    pub signs: [f64; 3],
    pub scale: f64,
    pub offset: [f64; 3],
    pub max_residual: f64,
}

fn check(computed: &[[f64; 3]], target: &[[f64; 3]]) -> Result<()> {
    if computed.len() != target.len() {
        return Err(Error::DimensionMismatch { left: computed.len(), right: target.len() });
    }
    if computed.is_empty() {
        return Err(Error::FitDegenerate);
    }
    Ok(())
}

/// Minimax offset per axis for a fixed transform; returns offsets and the max residual.
fn minimax(computed: &[[f64; 3]], target: &[[f64; 3]], m: [f64; 3]) -> ([f64; 3], f64) {
    let mut off = [0.0; 3];
    let mut worst = 0.0f64;
    for j in 0..3 {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for (c, t) in computed.iter().zip(target) {
            let d = t[j] - m[j] * c[j];
            lo = lo.min(d);
            hi = hi.max(d);
        }
        off[j] = 0.5 * (lo + hi);
        worst = worst.max(0.5 * (hi - lo));
    }
    (off, worst)
}

/// Best global sign and constant offset.
pub fn strict_fit(computed: &[[f64; 3]], target: &[[f64; 3]]) -> Result<StrictFit> {
    check(computed, target)?;
    let mut best: Option<StrictFit> = None;
    for sign in [1.0, -1.0] {
        let (offset, max_residual) = minimax(computed, target, [sign; 3]);
        if best.map_or(true, |b| max_residual < b.max_residual) {
            best = Some(StrictFit { sign, offset, max_residual });
        }
    }
    best.ok_or(Error::FitDegenerate)
}

/// Best per-axis signs with a common positive scale and a constant offset.
pub fn extended_fit(computed: &[[f64; 3]], target: &[[f64; 3]]) -> Result<ExtendedFit> {
    check(computed, target)?;
    let n = computed.len() as f64;
    let mean = |v: &[[f64; 3]], j: usize| v.iter().map(|p| p[j]).sum::<f64>() / n;
    let (mc, mt) = ([0, 1, 2].map(|j| mean(computed, j)), [0, 1, 2].map(|j| mean(target, j)));
    let mut best: Option<ExtendedFit> = None;
    for mask in 0..8u8 {
        let signs = [0, 1, 2].map(|j| if mask >> j & 1 == 1 { -1.0 } else { 1.0 });
        let (mut num, mut den) = (0.0, 0.0);
        for (c, t) in computed.iter().zip(target) {
            for j in 0..3 {
                let a = signs[j] * (c[j] - mc[j]);
                num += a * (t[j] - mt[j]);
                den += a * a;
            }
        }
        if !(den > 0.0) {
            return Err(Error::FitDegenerate);
        }
        let scale = num / den;
        if !(scale > 0.0) {
            continue;
        }
        let (offset, max_residual) = minimax(computed, target, signs.map(|s| s * scale));
        if best.map_or(true, |b| max_residual < b.max_residual) {
            best = Some(ExtendedFit { signs, scale, offset, max_residual });
        }
    }
    best.ok_or(Error::FitDegenerate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn cloud() -> Vec<[f64; 3]> {
        (0..50).map(|i| {
            let s = i as f64 * 0.37;
            [libm::sin(s), libm::cos(1.3 * s), s * 0.1]
        }).collect()
    }

    #[test]
    fn strict_recovers_sign_and_offset() {
        let c = cloud();
        let t: Vec<[f64; 3]> = c.iter().map(|p| [-p[0] + 1.0, -p[1] - 2.0, -p[2] + 0.5]).collect();
        let f = strict_fit(&c, &t).unwrap();
        assert_eq!(f.sign, -1.0);
        assert!((f.offset[0] - 1.0).abs() < 1e-14 && (f.offset[1] + 2.0).abs() < 1e-14);
        assert!(f.max_residual < 1e-14);
    }

    #[test]
    fn extended_recovers_axis_signs_and_scale() {
        let c = cloud();
        let t: Vec<[f64; 3]> = c.iter().map(|p| [2.0 * p[0], -2.0 * p[1] + 3.0, 2.0 * p[2]]).collect();
        let f = extended_fit(&c, &t).unwrap();
        assert_eq!(f.signs, [1.0, -1.0, 1.0]);
        assert!((f.scale - 2.0).abs() < 1e-12);
        assert!(f.max_residual < 1e-12);
        assert!(strict_fit(&c, &t).unwrap().max_residual > 0.1);
    }
}
