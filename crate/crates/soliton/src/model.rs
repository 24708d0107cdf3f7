//! Model selection and surface construction from user-facing parameters.

use serde::{Deserialize, Serialize};
use soliton_core::cpn::{veronese_chain, ProjectorChain, Seed};
use soliton_core::immersion::{Family, Options, Surface};
use soliton_core::C64;

use crate::error::{config, AppResult};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Model {
    /// `f₀ = (1, z)`.
    Cp1,
    /// CP^(N−1) with explicit polynomial seed components; `None` uses the Veronese curve.
    Cpn { n: usize, coeffs: Option<Vec<Vec<(f64, f64)>>> },
}

impl Default for Model {
    fn default() -> Self {
        Model::Cp1
    }
}

impl Model {
    pub fn n(&self) -> usize {
        match self {
            Model::Cp1 => 2,
            Model::Cpn { n, .. } => *n,
        }
    }

    pub fn chain(&self) -> AppResult<ProjectorChain> {
        match self {
            Model::Cp1 => Ok(veronese_chain(2)?),
            Model::Cpn { n, coeffs: None } => {
                if *n < 2 {
                    return Err(config("cpn needs N >= 2"));
                }
                Ok(veronese_chain(*n)?)
            }
            Model::Cpn { n, coeffs: Some(c) } => {
                if c.len() != *n {
                    return Err(config(format!("seed has {} components, N = {n}", c.len())));
                }
                let comps = c.iter().map(|p| p.iter().map(|&(a, b)| C64::new(a, b)).collect()).collect();
                Ok(ProjectorChain::from_seed(Seed::new(comps)?)?)
            }
        }
    }
}

/// Complex number written as `a`, `bi`, `a+bi` or `a-bi` (`j` also accepted).
pub fn parse_complex(s: &str) -> AppResult<C64> {
    s.trim().parse::<C64>().map_err(|_| config(format!("bad complex number '{s}'")))
}

/// Seed components `c₀,c₁,…;c₀,…` with ascending powers of `z` per component.
pub fn parse_coeffs(s: &str) -> AppResult<Vec<Vec<(f64, f64)>>> {
    s.split(';')
        .map(|comp| {
            comp.split(',')
                .map(|v| parse_complex(v).map(|c| (c.re, c.im)))
                .collect::<AppResult<Vec<_>>>()
        })
        .collect()
}

/// Everything needed to build one surface.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceSpec {
    pub model: Model,
    pub k: usize,
    pub family: Family,
    pub options: Options,
}

impl SurfaceSpec {
    pub fn new(family: Family, k: usize) -> Self {
        SurfaceSpec { model: Model::Cp1, k, family, options: Options::default() }
    }

    pub fn validate(&self) -> AppResult<()> {
        let n = self.model.n();
        if self.k >= n {
            return Err(config(format!("k = {} out of range for N = {n}", self.k)));
        }
        Ok(())
    }

    pub fn build(&self) -> AppResult<Surface> {
        self.validate()?;
        let chain = self.model.chain()?;
        Ok(Surface::build(&chain, self.k, self.family, self.options)?)
    }
}
