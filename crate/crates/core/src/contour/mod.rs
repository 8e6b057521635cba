//! Fundamental solution of `(Delta + E + x2) u = 0` by saddle-point contour
//! quadrature.
//!
//! `Phi(x, y) = 1/(4 pi) Int exp(i psi(e^s)) ds` along a contour through the
//! saddles of the integrand, truncated where the integrand drops below
//! `eps` and summed with the trapezoid rule.

mod config;
mod phase;
mod plan;

pub use config::FsConfig;
pub use phase::{
    classify_region, phase_params, ray_travel_times, saddle_points, PhaseParams, RegionLabel, SaddleSet,
};
pub use plan::{
    coalescence_shift, initial_half_width, node_spacing, plan_contour, truncate_intervals, ContourPlan,
    ContourShape, Interval, COALESCENCE_GAP, GAP_SAMPLES, INITIAL_WIDTHS, MAX_EXPANSIONS,
};

use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

use crate::error::{BatchError, FsError};
use crate::geom::Point2;
use plan::{truncate_with, Magnitude};

const I: Complex64 = Complex64::new(0.0, 1.0);
const INV_4PI: f64 = 0.25 / PI;

/// The fundamental solution and its gradient with respect to the source point.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FsValue {
    pub phi: Complex64,
    pub dphi_dy1: Complex64,
    pub dphi_dy2: Complex64,
}

impl FsValue {
    /// Normal derivative `n . grad_y Phi`.
    pub fn normal_derivative(&self, n: Point2) -> Complex64 {
        self.dphi_dy1 * n.x1 + self.dphi_dy2 * n.x2
    }

    fn is_finite(&self) -> bool {
        self.phi.is_finite() && self.dphi_dy1.is_finite() && self.dphi_dy2.is_finite()
    }
}

/// An evaluation together with the contour it used.
#[derive(Debug, Clone)]
pub struct FsEval {
    pub value: FsValue,
    pub plan: ContourPlan,
}

impl FsEval {
    pub fn node_count(&self) -> usize {
        self.plan.node_count()
    }
}

/// Evaluates `Phi(x, y)` and, if `cfg.derivs`, `dPhi/dy1` and `dPhi/dy2`.
pub fn eval_phi(x: Point2, y: Point2, energy: f64, cfg: &FsConfig) -> Result<FsValue, FsError> {
    eval_phi_planned(x, y, energy, cfg).map(|e| e.value)
}

/// Like [`eval_phi`], also returning the contour plan (saddles, intervals, nodes).
pub fn eval_phi_planned(x: Point2, y: Point2, energy: f64, cfg: &FsConfig) -> Result<FsEval, FsError> {
    if x == y {
        return Err(FsError::Coincident);
    }
    let p = phase_params(x, y, energy);
    let plan = truncate_intervals(plan_contour(p, cfg)?, p, cfg)?;
    let d = x - y;
    let value = gravity_sum(&plan, p, cfg.derivs, d)?;
    Ok(FsEval { value, plan })
}

fn gravity_sum(plan: &ContourPlan, p: PhaseParams, derivs: bool, d: Point2) -> Result<FsValue, FsError> {
    let (a, b) = (p.a, p.b);
    let mut out = FsValue::default();
    for iv in &plan.intervals {
        let mut s0 = Complex64::new(0.0, 0.0);
        let mut s1 = Complex64::new(0.0, 0.0);
        let mut s2 = Complex64::new(0.0, 0.0);
        for alpha in iv.nodes() {
            let (s, ds) = plan.point(alpha);
            let t = s.exp();
            let tinv = t.inv();
            let psi = a * tinv + b * t - t * t * t / 12.0;
            let f = (I * psi).exp() * ds;
            s0 += f;
            if derivs {
                s1 += f * tinv;
                s2 += f * (d.x2 * tinv - t);
            }
        }
        let w = iv.h * INV_4PI;
        out.phi += s0 * w;
        if derivs {
            out.dphi_dy1 += s1 * (-0.5 * d.x1 * w) * I;
            out.dphi_dy2 += s2 * (-0.5 * w) * I;
        }
    }
    if out.is_finite() {
        Ok(out)
    } else {
        Err(FsError::NonFinite { a, b })
    }
}

/// Evaluates `Phi(x_k, y)` for every target; parallel over targets, with
/// results identical to element-wise [`eval_phi`].
pub fn eval_phi_batch(
    targets: &[Point2],
    y: Point2,
    energy: f64,
    cfg: &FsConfig,
) -> Result<Vec<FsValue>, BatchError> {
    let results: Vec<Result<FsValue, FsError>> =
        targets.par_iter().map(|&x| eval_phi(x, y, energy, cfg)).collect();
    results
        .into_iter()
        .enumerate()
        .map(|(index, r)| r.map_err(|source| BatchError { index, source }))
        .collect()
}

struct FreeIntegrand {
    a: f64,
    energy: f64,
}

impl FreeIntegrand {
    #[inline]
    fn psi(&self, t: Complex64) -> Complex64 {
        self.a / t + self.energy * t
    }
}

impl Magnitude for FreeIntegrand {
    fn magnitude(&self, s: Complex64) -> f64 {
        (-self.psi(s.exp()).im).exp()
    }
}

/// The same contour integral with the phase `a/t + E t` (no gravity terms),
/// which equals `(i/4) H0(sqrt(E) |x - y|)`.
pub fn helmholtz_mode_phi(x: Point2, y: Point2, energy: f64, cfg: &FsConfig) -> Result<Complex64, FsError> {
    cfg.validate()?;
    if !(energy > 0.0) {
        return Err(FsError::NonPositiveEnergy(energy));
    }
    if x == y {
        return Err(FsError::Coincident);
    }
    let a = 0.25 * (x - y).norm_sq();
    let m = FreeIntegrand { a, energy };
    // single real saddle t0 = sqrt(a/E), second derivative 2 sqrt(a E)
    let s0 = Complex64::new(0.5 * (a / energy).ln(), 0.0);
    let sigma = (2.0 * (a * energy).sqrt()).powf(-0.5);
    let saddles = SaddleSet {
        region: RegionLabel::A,
        s_minus: s0,
        s_plus: s0,
        sigma_minus: sigma,
        sigma_plus: sigma,
    };
    let plan = ContourPlan {
        region: RegionLabel::A,
        saddles,
        shape: ContourShape::Free { re0: s0.re },
        shift: 0.0,
        width_cap: f64::INFINITY,
        intervals: Vec::new(),
    };
    let plan = truncate_with(plan, &m, cfg)?;
    let mut total = Complex64::new(0.0, 0.0);
    for iv in &plan.intervals {
        let mut acc = Complex64::new(0.0, 0.0);
        for alpha in iv.nodes() {
            let (s, ds) = plan.point(alpha);
            acc += (I * m.psi(s.exp())).exp() * ds;
        }
        total += acc * (iv.h * INV_4PI);
    }
    if total.is_finite() {
        Ok(total)
    } else {
        Err(FsError::NonFinite { a, b: energy })
    }
}
