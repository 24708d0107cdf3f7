//! Sampling immersions into R³ meshes in the su(2) basis `e₁, e₂, e₃`.

use serde::{Deserialize, Serialize};
use soliton_core::basis::SuBasis;
use soliton_core::geometry::EPSILON;
use soliton_core::immersion::Surface;
use soliton_core::spectral::Normalization;

use crate::error::{AppError, AppResult};
use crate::grid::GridSpec;
use crate::parallel::ordered_map;

/// Projection failures above this fraction of the grid abort sampling.
pub const MAX_EXCLUDED_FRACTION: f64 = 0.01;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Vertex {
    pub x: f64,
    pub y: f64,
    pub c: [f64; 3],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Excluded {
    pub x: f64,
    pub y: f64,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeshMeta {
    pub family: String,
    pub k: usize,
    pub n: usize,
    pub t: f64,
    pub grid: GridSpec,
    /// Sign in `⟨A, B⟩ = ε/2 tr(AB)`.
    pub epsilon: f64,
    pub normal_sign: f64,
    /// Constant subtracted from every vertex.
    pub additive_constant: [f64; 3],
    pub beta: [f64; 2],
    pub g: [f64; 2],
    pub normalization: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceMesh {
    pub vertices: Vec<Vertex>,
    /// Zero-based vertex indices.
    pub faces: Vec<[usize; 3]>,
    pub excluded: Vec<Excluded>,
    pub meta: MeshMeta,
}

impl SurfaceMesh {
    pub fn points(&self) -> Vec<[f64; 3]> {
        self.vertices.iter().map(|v| v.c).collect()
    }

    /// Subtracts `c` from every vertex and records it.
    pub fn recenter(&mut self, c: [f64; 3]) {
        for v in &mut self.vertices {
            for j in 0..3 {
                v.c[j] -= c[j];
            }
        }
        for j in 0..3 {
            self.meta.additive_constant[j] += c[j];
        }
    }
}

/// Two triangles per grid cell whose four corners all survived sampling.
pub fn grid_faces(nx: usize, ny: usize, index: &[Option<usize>]) -> Vec<[usize; 3]> {
    let mut faces = Vec::with_capacity(2 * (nx - 1) * (ny - 1));
    for iy in 0..ny - 1 {
        for ix in 0..nx - 1 {
            let at = |dx: usize, dy: usize| index[(iy + dy) * nx + ix + dx];
            let (Some(a), Some(b), Some(c), Some(d)) = (at(0, 0), at(1, 0), at(0, 1), at(1, 1)) else {
                continue;
            };
            faces.push([a, b, d]);
            faces.push([a, d, c]);
        }
    }
    faces
}

/// Samples `F` on `grid` at spectral parameter `λ = it`.
pub fn sample_surface(s: &Surface, grid: &GridSpec, t: f64) -> AppResult<SurfaceMesh> {
    grid.validate()?;
    if s.n != 2 {
        return Err(AppError::Mesh(format!("meshes need N = 2, got N = {}", s.n)));
    }
    let basis = SuBasis::new(2);
    let samples = ordered_map(grid.len(), |i| {
        let (x, y) = grid.coords(i);
        if grid.excluded(i) {
            return Err((x, y, "exclusion disk".to_string(), false));
        }
        let m = s.f.eval(grid.point(i, t));
        if !m.is_finite() {
            return Err((x, y, "non-finite value".to_string(), true));
        }
        match basis.project(&m) {
            Ok(c) => Ok(Vertex { x, y, c: [c[0], c[1], c[2]] }),
            Err(e) => Err((x, y, e.to_string(), true)),
        }
    });
    let mut vertices = Vec::with_capacity(samples.len());
    let mut excluded = Vec::new();
    let mut index = Vec::with_capacity(samples.len());
    let mut failures = 0usize;
    for r in samples {
        match r {
            Ok(v) => {
                index.push(Some(vertices.len()));
                vertices.push(v);
            }
            Err((x, y, reason, failed)) => {
                failures += failed as usize;
                index.push(None);
                excluded.push(Excluded { x, y, reason });
            }
        }
    }
    if failures as f64 > MAX_EXCLUDED_FRACTION * grid.len() as f64 {
        return Err(AppError::Mesh(format!("{failures} of {} vertices failed su projection", grid.len())));
    }
    let faces = grid_faces(grid.nx, grid.ny, &index);
    let o = s.options;
    Ok(SurfaceMesh {
        vertices,
        faces,
        excluded,
        meta: MeshMeta {
            family: s.family.name().to_string(),
            k: s.k,
            n: s.n,
            t,
            grid: *grid,
            epsilon: EPSILON,
            normal_sign: 1.0,
            additive_constant: [0.0; 3],
            beta: [o.beta.re, o.beta.im],
            g: [o.g.re, o.g.im],
            normalization: match o.normalization {
                Normalization::Closed => "closed",
                Normalization::Origin => "origin",
            }
            .to_string(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use soliton_core::cpn::veronese_chain;
    use soliton_core::immersion::{Family, Options};

    #[test]
    fn three_by_three_counts() {
        let s = Surface::build(&veronese_chain(2).unwrap(), 0, Family::Gwfi, Options::default()).unwrap();
        let m = sample_surface(&s, &GridSpec::square(1.0, 3), 0.5).unwrap();
        assert_eq!(m.vertices.len(), 9);
        assert_eq!(m.faces.len(), 8);
    }

    #[test]
    fn exclusion_drops_adjacent_faces() {
        let s = Surface::build(&veronese_chain(2).unwrap(), 0, Family::Gwfi, Options::default()).unwrap();
        let g = GridSpec { exclusion: 0.1, ..GridSpec::square(1.0, 3) };
        let m = sample_surface(&s, &g, 0.5).unwrap();
        assert_eq!(m.vertices.len(), 8);
        assert_eq!(m.excluded.len(), 1);
        assert!(m.faces.is_empty());
        assert!(m.faces.iter().flatten().all(|&i| i < m.vertices.len()));
    }
}
