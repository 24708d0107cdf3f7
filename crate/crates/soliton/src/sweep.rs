//! Curvature fields over a grid with a continuously oriented normal.
//!
//! The normal `N ∝ [A_x, A_y]` flips wherever the bracket passes through
//! zero, e.g. along the fold `|z| = 1` of the scaling family. The sweep fixes
//! the orientation by continuity instead: each point takes the sign that makes
//! `⟨N, N_ref⟩ > 0`, where the reference is the previous regular point in the
//! row, else the regular point directly above; a point with neither starts a
//! new patch oriented so that `H > 0`.

use serde::{Deserialize, Serialize};
use soliton_core::basis::inner;
use soliton_core::geometry::frame_and_curvatures;
use soliton_core::immersion::Surface;
use soliton_core::CMat;

use crate::grid::GridSpec;
use crate::parallel::ordered_map;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvatureSample {
    pub x: f64,
    pub y: f64,
    pub gaussian: f64,
    pub mean: f64,
    pub gaussian_literal: f64,
    pub mean_literal: f64,
    /// Orientation applied to the raw normal.
    pub sign: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Skipped {
    pub x: f64,
    pub y: f64,
    pub reason: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Stats {
    pub count: usize,
    pub mean: f64,
    pub std: f64,
    pub min: f64,
    pub max: f64,
}

impl Stats {
    pub fn of(v: impl IntoIterator<Item = f64>) -> Stats {
        let v: Vec<f64> = v.into_iter().collect();
        let n = v.len();
        if n == 0 {
            return Stats { count: 0, mean: f64::NAN, std: f64::NAN, min: f64::NAN, max: f64::NAN };
        }
        let mean = v.iter().sum::<f64>() / n as f64;
        let var = v.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n as f64;
        let (min, max) = v.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)));
        Stats { count: n, mean, std: var.sqrt(), min, max }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvatureField {
    pub family: String,
    pub k: usize,
    pub t: f64,
    pub grid: GridSpec,
    pub samples: Vec<CurvatureSample>,
    pub skipped: Vec<Skipped>,
}

impl CurvatureField {
    pub fn gaussian_stats(&self) -> Stats {
        Stats::of(self.samples.iter().map(|s| s.gaussian))
    }

    pub fn mean_stats(&self) -> Stats {
        Stats::of(self.samples.iter().map(|s| s.mean))
    }
}

struct Raw {
    normal: CMat,
    k: f64,
    h: f64,
    kl: f64,
    hl: f64,
}

/// `K`, `H` at every regular grid point.
pub fn curvature_sweep(s: &Surface, grid: &GridSpec, t: f64) -> CurvatureField {
    let raw = ordered_map(grid.len(), |i| {
        if grid.excluded(i) {
            return Err("exclusion disk".to_string());
        }
        frame_and_curvatures(s, grid.point(i, t), 1.0)
            .map(|(f, c)| Raw { normal: f.normal, k: c.gaussian, h: c.mean, kl: c.gaussian_literal, hl: c.mean_literal })
            .map_err(|e| e.to_string())
    });
    let mut signs = vec![0.0f64; grid.len()];
    let mut samples = Vec::with_capacity(grid.len());
    let mut skipped = Vec::new();
    for (i, r) in raw.iter().enumerate() {
        let (x, y) = grid.coords(i);
        let r = match r {
            Ok(r) => r,
            Err(reason) => {
                skipped.push(Skipped { x, y, reason: reason.clone() });
                continue;
            }
        };
        let (iy, ix) = (i / grid.nx, i % grid.nx);
        let left = (ix > 0 && signs[i - 1] != 0.0).then(|| i - 1);
        let above = (iy > 0 && signs[i - grid.nx] != 0.0).then(|| i - grid.nx);
        let sign = match left.or(above) {
            Some(j) => {
                let prev = raw[j].as_ref().map(|p| signs[j] * inner(&p.normal, &r.normal)).unwrap_or(1.0);
                if prev < 0.0 {
                    -1.0
                } else {
                    1.0
                }
            }
            None if r.h < 0.0 => -1.0,
            None => 1.0,
        };
        signs[i] = sign;
        samples.push(CurvatureSample { x, y, gaussian: r.k, mean: sign * r.h, gaussian_literal: r.kl, mean_literal: sign * r.hl, sign });
    }
    CurvatureField { family: s.family.name().to_string(), k: s.k, t, grid: *grid, samples, skipped }
}
