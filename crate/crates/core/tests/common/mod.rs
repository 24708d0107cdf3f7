#![allow(dead_code)]

use soliton_core::field::Point;
use soliton_core::matrix::CMat;

/// SplitMix64, so sample points are reproducible without an RNG dependency.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }
}

/// `n` points with `|z| <= rmax`, `t` drawn from `ts`.
pub fn points(seed: u64, n: usize, rmax: f64, ts: &[f64]) -> Vec<Point> {
    let mut rng = Rng::new(seed);
    (0..n)
        .map(|_| {
            let r = rmax * rng.uniform(0.0, 1.0).sqrt();
            let a = rng.uniform(0.0, std::f64::consts::TAU);
            let t = ts[(rng.next_u64() % ts.len() as u64) as usize];
            Point::new(r * a.cos(), r * a.sin(), t)
        })
        .collect()
}

pub fn close(a: &CMat, b: &CMat, tol: f64) -> bool {
    (a - b).max_abs() < tol
}

pub const TS: [f64; 3] = [0.5, 1.0, 2.0];
