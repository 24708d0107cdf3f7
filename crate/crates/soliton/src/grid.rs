//! Rectangular sampling grids over the `(x, y)` plane.

use serde::{Deserialize, Serialize};
use soliton_core::Point;

use crate::error::{config, AppResult};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
    /// Points with `|z|` below this are skipped.
    pub exclusion: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { x_min: -5.0, x_max: 5.0, y_min: -5.0, y_max: 5.0, nx: 201, ny: 201, exclusion: 0.0 }
    }
}

impl GridSpec {
    pub fn square(half: f64, n: usize) -> Self {
        GridSpec { x_min: -half, x_max: half, y_min: -half, y_max: half, nx: n, ny: n, exclusion: 0.0 }
    }

    pub fn validate(&self) -> AppResult<()> {
        if self.nx < 2 || self.ny < 2 {
            return Err(config("grid needs nx, ny >= 2"));
        }
        let finite = [self.x_min, self.x_max, self.y_min, self.y_max, self.exclusion].iter().all(|v| v.is_finite());
        if !finite || !(self.x_max > self.x_min) || !(self.y_max > self.y_min) {
            return Err(config("grid bounds need max > min"));
        }
        if self.exclusion < 0.0 {
            return Err(config("exclusion radius must be non-negative"));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(x, y)` of linear index `i`, row-major in `y` then `x`.
    pub fn coords(&self, i: usize) -> (f64, f64) {
        let (iy, ix) = (i / self.nx, i % self.nx);
        let lerp = |a: f64, b: f64, j: usize, n: usize| a + (b - a) * j as f64 / (n - 1) as f64;
        (lerp(self.x_min, self.x_max, ix, self.nx), lerp(self.y_min, self.y_max, iy, self.ny))
    }

    pub fn point(&self, i: usize, t: f64) -> Point {
        let (x, y) = self.coords(i);
        Point::new(x, y, t)
    }

    pub fn excluded(&self, i: usize) -> bool {
        let (x, y) = self.coords(i);
        x.hypot(y) < self.exclusion
    }
}
