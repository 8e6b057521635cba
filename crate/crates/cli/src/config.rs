//! Flat key-value run configuration, read from TOML and overridden by flags.

use std::path::Path;

use gravhelm_core::boundary::PolarCurve;
use gravhelm_core::FsConfig;
use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Solver {
    Dense,
    Gmres,
}

/// Every key is optional; each command fills in its own defaults.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub energy: Option<f64>,
    pub source: Option<[f64; 2]>,
    pub curve_c0: Option<f64>,
    pub curve_cos: Option<Vec<f64>>,
    pub curve_sin: Option<Vec<f64>>,
    pub n_sweep: Option<Vec<usize>>,
    pub grid_x1: Option<[f64; 2]>,
    pub grid_x2: Option<[f64; 2]>,
    pub grid_n: Option<[usize; 2]>,
    pub diagnostic_target: Option<[f64; 2]>,
    pub interior_points: Option<usize>,
    pub interior_scale: Option<f64>,
    pub circle_radius: Option<f64>,
    pub circle_points: Option<usize>,
    pub h0: Option<f64>,
    pub h_max: Option<f64>,
    pub n_min: Option<usize>,
    pub eps: Option<f64>,
    pub beta: Option<f64>,
    pub solver: Option<Solver>,
    pub gmres_tol: Option<f64>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    /// Contour quadrature settings with any overrides applied.
    pub fn fs(&self) -> Result<FsConfig, CliError> {
        let d = FsConfig::default();
        let cfg = FsConfig {
            h0: self.h0.unwrap_or(d.h0),
            h_max: self.h_max.unwrap_or(d.h_max),
            n_min: self.n_min.unwrap_or(d.n_min),
            eps: self.eps.unwrap_or(d.eps),
            beta: self.beta.unwrap_or(d.beta),
            derivs: d.derivs,
        };
        cfg.validate().map_err(|e| CliError::Config(e.to_string()))?;
        Ok(cfg)
    }

    /// The polar curve, defaulting to `c0 + cos/sin` harmonics given.
    pub fn curve(&self, default: PolarCurve) -> Result<PolarCurve, CliError> {
        if self.curve_c0.is_none() && self.curve_cos.is_none() && self.curve_sin.is_none() {
            return Ok(default);
        }
        PolarCurve::new(
            self.curve_c0.unwrap_or(default.c0),
            self.curve_cos.clone().unwrap_or_default(),
            self.curve_sin.clone().unwrap_or_default(),
        )
        .map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn sweep(&self, default: &[usize]) -> Result<Vec<usize>, CliError> {
        let ns = self.n_sweep.clone().unwrap_or_else(|| default.to_vec());
        if ns.is_empty() || ns.windows(2).any(|w| w[0] >= w[1]) {
            return Err(CliError::Config(format!(
                "n_sweep must be non-empty and strictly increasing, got {ns:?}"
            )));
        }
        Ok(ns)
    }

    pub fn grid(&self, x1: [f64; 2], x2: [f64; 2], n: [usize; 2]) -> Result<Grid, CliError> {
        let grid = Grid {
            x1: self.grid_x1.unwrap_or(x1),
            x2: self.grid_x2.unwrap_or(x2),
            n: self.grid_n.unwrap_or(n),
        };
        if grid.n[0] == 0 || grid.n[1] == 0 {
            return Err(CliError::Config(format!(
                "grid_n must be positive, got {:?}",
                grid.n
            )));
        }
        Ok(grid)
    }
}

/// A tensor grid; a single point per axis sits at the lower bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub x1: [f64; 2],
    pub x2: [f64; 2],
    pub n: [usize; 2],
}

impl Grid {
    fn axis(range: [f64; 2], n: usize) -> Vec<f64> {
        if n == 1 {
            return vec![range[0]];
        }
        (0..n)
            .map(|k| range[0] + (range[1] - range[0]) * k as f64 / (n - 1) as f64)
            .collect()
    }

    /// Points with `x1` varying fastest.
    pub fn points(&self) -> Vec<gravhelm_core::Point2> {
        let (a, b) = (Self::axis(self.x1, self.n[0]), Self::axis(self.x2, self.n[1]));
        b.iter()
            .flat_map(|&x2| a.iter().map(move |&x1| gravhelm_core::Point2::new(x1, x2)))
            .collect()
    }
}
