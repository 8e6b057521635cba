//! Contour selection, truncation and node spacing.
//!
//! Contours are parametrized by their real part, `s = alpha + i (g(alpha) + shift)`.
//! Every family tends to `-pi/2` on the left and `-pi/6` on the right, which
//! are the centres of the decaying sectors of `exp(i psi(e^s))` there.

use num_complex::Complex64;
use std::f64::consts::{FRAC_1_PI, PI};

use super::config::FsConfig;
use super::phase::{saddle_points, PhaseParams, RegionLabel, SaddleSet};
use crate::error::FsError;

/// Most multiplications by `beta` allowed per interval endpoint.
pub const MAX_EXPANSIONS: usize = 200;
/// Number of samples used to look for a gap between two allowed-region bumps.
pub const GAP_SAMPLES: usize = 32;
/// Saddle separation below which the contour is pushed off the real axis.
pub const COALESCENCE_GAP: f64 = 0.1;
/// Smallest initial half-width of a truncation interval.
const MIN_HALF_WIDTH: f64 = 0.1;
/// Initial half-widths never exceed this many saddle widths.
pub const INITIAL_WIDTHS: f64 = 4.0;

fn c_minus() -> f64 {
    0.5 * ((PI * PI - 2.0 * PI) / (4.0 + 2.0 * PI)).tan()
}

fn c_plus() -> f64 {
    0.25 * ((PI * PI - 6.0 * PI) / (12.0 + 2.0 * PI)).tan()
}

/// Imaginary-part profile `g(alpha)` of the integration contour.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ContourShape {
    /// Two real saddles crossed at angles near `+pi/4` and `-pi/4`.
    Allowed { re_minus: f64, re_plus: f64 },
    /// One complex saddle crossed horizontally.
    Horizontal { s0: Complex64 },
    /// `g = (atan(alpha - re0) - pi)/3`, passing above the saddles.
    Deep { re0: f64 },
    /// `g = atan(alpha - re0)`: limits `-pi/2`, `+pi/2`, for the phase without
    /// the cubic term.
    Free { re0: f64 },
}

impl ContourShape {
    pub fn g(&self, alpha: f64) -> f64 {
        match *self {
            ContourShape::Allowed { re_minus, re_plus } => {
                let f1 =
                    (FRAC_1_PI + 0.5) * (2.0 * (alpha - re_minus + c_minus())).atan() - (0.25 * PI - 0.5);
                let f2 = (FRAC_1_PI + 1.0 / 6.0) * (-4.0 * (alpha - re_plus - c_plus())).atan()
                    - (PI / 12.0 - 0.5);
                f1 * f2
            }
            ContourShape::Horizontal { s0 } => {
                let u = alpha - s0.re;
                let far = (u.atan() - PI) / 3.0;
                s0.im + (far - s0.im) * (1.0 - (-u * u).exp())
            }
            ContourShape::Deep { re0 } => ((alpha - re0).atan() - PI) / 3.0,
            ContourShape::Free { re0 } => (alpha - re0).atan(),
        }
    }

    pub fn dg(&self, alpha: f64) -> f64 {
        match *self {
            ContourShape::Allowed { re_minus, re_plus } => {
                let u = 2.0 * (alpha - re_minus + c_minus());
                let v = -4.0 * (alpha - re_plus - c_plus());
                let f1 = (FRAC_1_PI + 0.5) * u.atan() - (0.25 * PI - 0.5);
                let f2 = (FRAC_1_PI + 1.0 / 6.0) * v.atan() - (PI / 12.0 - 0.5);
                let df1 = (FRAC_1_PI + 0.5) * 2.0 / (1.0 + u * u);
                let df2 = (FRAC_1_PI + 1.0 / 6.0) * -4.0 / (1.0 + v * v);
                df1 * f2 + f1 * df2
            }
            ContourShape::Horizontal { s0 } => {
                let u = alpha - s0.re;
                let gauss = (-u * u).exp();
                let far = (u.atan() - PI) / 3.0;
                (1.0 - gauss) / (3.0 * (1.0 + u * u)) + (far - s0.im) * 2.0 * u * gauss
            }
            ContourShape::Deep { re0 } => {
                let u = alpha - re0;
                1.0 / (3.0 * (1.0 + u * u))
            }
            ContourShape::Free { re0 } => {
                let u = alpha - re0;
                1.0 / (1.0 + u * u)
            }
        }
    }
}

/// A truncation interval in `alpha` with its trapezoid spacing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub h: f64,
}

impl Interval {
    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn node_count(&self) -> usize {
        (self.len() / self.h).ceil().max(1.0) as usize
    }

    /// Midpoint-offset nodes `lo + (j + 1/2) h`.
    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.node_count()).map(move |j| self.lo + (j as f64 + 0.5) * self.h)
    }
}

/// A fully specified quadrature contour.
#[derive(Debug, Clone, PartialEq)]
pub struct ContourPlan {
    pub region: RegionLabel,
    pub saddles: SaddleSet,
    pub shape: ContourShape,
    /// Constant imaginary offset added to the contour (zero or negative).
    pub shift: f64,
    /// Upper bound on the saddle width used for node spacing; finite only
    /// near coalescence, where the quadratic width blows up.
    pub width_cap: f64,
    pub intervals: Vec<Interval>,
}

impl ContourPlan {
    /// Contour point and its derivative with respect to `alpha`.
    #[inline]
    pub fn point(&self, alpha: f64) -> (Complex64, Complex64) {
        (
            Complex64::new(alpha, self.shape.g(alpha) + self.shift),
            Complex64::new(1.0, self.shape.dg(alpha)),
        )
    }

    pub fn node_count(&self) -> usize {
        self.intervals.iter().map(Interval::node_count).sum()
    }
}

/// The node-spacing rule `min(h_max, len / n_min, sigma h0)`.
pub fn node_spacing(interval_length: f64, sigma: f64, cfg: &FsConfig) -> f64 {
    cfg.h_max
        .min(interval_length / cfg.n_min as f64)
        .min(sigma * cfg.h0)
}

/// Downward offset applied when the two saddles nearly coalesce.
///
/// The scale uses the local squared wavenumber `b` at the midpoint height,
/// which equals `E` for source and target on `x2 = 0`.
pub fn coalescence_shift(b: f64) -> f64 {
    if b > 0.0 {
        -(0.7 / b.sqrt()).min(0.1)
    } else {
        -0.1
    }
}

/// Largest exponent by which the shift may amplify the integrand between
/// the saddles.
const SHIFT_GROWTH: f64 = 1.0;
/// Near coalescence the spacing scale is at most this multiple of the cubic
/// width `(|psi'''|/2)^(-1/3)`.
const CUBIC_WIDTH_FACTOR: f64 = 0.5;

/// Shift for nearly coalesced real saddles around `mid`.
///
/// Below the real axis between two real saddles `|exp(i psi)|` grows like
/// `exp(|shift| psi'(s))`, so the shift is capped to bound that growth.
fn capped_shift(p: PhaseParams, mid: f64) -> f64 {
    let shift = coalescence_shift(p.b);
    let slope = p.dpsi_ds(Complex64::new(mid, 0.0)).re;
    if slope > 0.0 {
        shift.max(-SHIFT_GROWTH / slope)
    } else {
        shift
    }
}

/// Chooses the contour family and shift for `(a, b)`; intervals are left empty.
pub fn plan_contour(p: PhaseParams, cfg: &FsConfig) -> Result<ContourPlan, FsError> {
    cfg.validate()?;
    if p.a == 0.0 {
        return Err(FsError::Coincident);
    }
    if !(p.a.is_finite() && p.b.is_finite()) {
        return Err(FsError::NonFinite { a: p.a, b: p.b });
    }
    let saddles = saddle_points(p);
    let region = saddles.region;
    let close = saddles.separation() < COALESCENCE_GAP;
    let mid = 0.5 * (saddles.s_minus.re + saddles.s_plus.re);
    let (shape, shift) = match region {
        RegionLabel::A => (
            ContourShape::Allowed {
                re_minus: saddles.s_minus.re,
                re_plus: saddles.s_plus.re,
            },
            if close { capped_shift(p, mid) } else { 0.0 },
        ),
        RegionLabel::F => (
            ContourShape::Horizontal {
                s0: saddles.primary(),
            },
            if close { coalescence_shift(p.b) } else { 0.0 },
        ),
        RegionLabel::D => (
            ContourShape::Deep {
                re0: saddles.primary().re,
            },
            0.0,
        ),
    };
    let width_cap = if close && region != RegionLabel::D {
        let d3 = p.d3psi_ds3(Complex64::new(mid, shift)).norm();
        CUBIC_WIDTH_FACTOR * (0.5 * d3).powf(-1.0 / 3.0)
    } else {
        f64::INFINITY
    };
    Ok(ContourPlan {
        region,
        saddles,
        shape,
        shift,
        width_cap,
        intervals: Vec::new(),
    })
}

/// The integrand on a contour, reduced to what truncation needs.
pub(crate) trait Magnitude {
    /// `|exp(i psi(e^s))|` times the largest derivative prefactor if requested.
    fn magnitude(&self, s: Complex64) -> f64;
}

pub(crate) struct GravityIntegrand {
    pub a: f64,
    pub b: f64,
    pub derivs: bool,
}

impl Magnitude for GravityIntegrand {
    fn magnitude(&self, s: Complex64) -> f64 {
        let t = s.exp();
        let psi = self.a / t + self.b * t - t * t * t / 12.0;
        let mut m = (-psi.im).exp();
        if self.derivs {
            // bounds |x1-y1|, |x2-y2| <= 2 sqrt(a)
            let e = s.re.exp();
            m *= (self.a.sqrt() / e + 0.5 * e).max(1.0);
        }
        m
    }
}

pub(crate) fn magnitude_along<M: Magnitude>(m: &M, plan: &ContourPlan, alpha: f64) -> f64 {
    let (s, ds) = plan.point(alpha);
    let v = m.magnitude(s) * ds.norm();
    if v.is_nan() {
        f64::INFINITY
    } else {
        v
    }
}

/// Grows `anchor + dir * d` by factors of `beta` until the integrand falls
/// below `eps`, stopping early at `stop` if given.
fn grow<M: Magnitude>(
    m: &M,
    plan: &ContourPlan,
    cfg: &FsConfig,
    anchor: f64,
    sigma: f64,
    dir: f64,
    stop: Option<f64>,
) -> Result<f64, FsError> {
    let mut d = initial_half_width(anchor, sigma);
    for _ in 0..=MAX_EXPANSIONS {
        let end = anchor + dir * d;
        if let Some(stop) = stop {
            if dir * (end - stop) >= 0.0 {
                return Ok(stop);
            }
        }
        if magnitude_along(m, plan, end) <= cfg.eps {
            return Ok(end);
        }
        d *= cfg.beta;
    }
    Err(FsError::TruncationFailed(MAX_EXPANSIONS))
}

/// `|anchor|/2`, floored at `MIN_HALF_WIDTH` and capped at `INITIAL_WIDTHS`
/// saddle widths.
pub fn initial_half_width(anchor: f64, sigma: f64) -> f64 {
    (0.5 * anchor.abs())
        .max(MIN_HALF_WIDTH)
        .min(INITIAL_WIDTHS * sigma)
}

fn spaced(lo: f64, hi: f64, sigma: f64, cfg: &FsConfig) -> Interval {
    Interval {
        lo,
        hi,
        h: node_spacing(hi - lo, sigma, cfg),
    }
}

pub(crate) fn truncate_with<M: Magnitude>(
    mut plan: ContourPlan,
    m: &M,
    cfg: &FsConfig,
) -> Result<ContourPlan, FsError> {
    let mut ss = plan.saddles;
    ss.sigma_minus = ss.sigma_minus.min(plan.width_cap);
    ss.sigma_plus = ss.sigma_plus.min(plan.width_cap);
    plan.intervals = match plan.shape {
        ContourShape::Allowed { re_minus, re_plus } => {
            let (split, min) = gap_minimum(m, &plan, re_minus, re_plus);
            if min > cfg.eps {
                let lo = grow(m, &plan, cfg, re_minus, ss.sigma_minus, -1.0, None)?;
                let hi = grow(m, &plan, cfg, re_plus, ss.sigma_plus, 1.0, None)?;
                vec![spaced(lo, hi, ss.sigma_minus.min(ss.sigma_plus), cfg)]
            } else {
                let (sm, sp) = (ss.sigma_minus, ss.sigma_plus);
                let lo1 = grow(m, &plan, cfg, re_minus, sm, -1.0, None)?;
                let hi1 = grow(m, &plan, cfg, re_minus, sm, 1.0, Some(split))?;
                let lo2 = grow(m, &plan, cfg, re_plus, sp, -1.0, Some(split))?;
                let hi2 = grow(m, &plan, cfg, re_plus, sp, 1.0, None)?;
                vec![
                    spaced(lo1, hi1, ss.sigma_minus, cfg),
                    spaced(lo2, hi2, ss.sigma_plus, cfg),
                ]
            }
        }
        ContourShape::Horizontal { s0 } => single(m, &plan, cfg, s0.re, ss.primary_width())?,
        ContourShape::Deep { re0 } => single(m, &plan, cfg, re0, ss.primary_width())?,
        ContourShape::Free { re0 } => single(m, &plan, cfg, re0, ss.sigma_minus)?,
    };
    Ok(plan)
}

fn single<M: Magnitude>(
    m: &M,
    plan: &ContourPlan,
    cfg: &FsConfig,
    anchor: f64,
    sigma: f64,
) -> Result<Vec<Interval>, FsError> {
    let lo = grow(m, plan, cfg, anchor, sigma, -1.0, None)?;
    let hi = grow(m, plan, cfg, anchor, sigma, 1.0, None)?;
    Ok(vec![spaced(lo, hi, sigma, cfg)])
}

/// Crude minimization of the integrand on `GAP_SAMPLES` equispaced points of
/// `[lo, hi]`; returns the argmin and the minimum.
fn gap_minimum<M: Magnitude>(m: &M, plan: &ContourPlan, lo: f64, hi: f64) -> (f64, f64) {
    let mut best = (lo, f64::INFINITY);
    if !(hi > lo) {
        return best;
    }
    let step = (hi - lo) / (GAP_SAMPLES - 1) as f64;
    for k in 0..GAP_SAMPLES {
        let alpha = lo + k as f64 * step;
        let v = magnitude_along(m, plan, alpha);
        if v < best.1 {
            best = (alpha, v);
        }
    }
    best
}

/// Fills in truncation intervals and node spacings for a planned contour.
///
/// The endpoint test includes the derivative prefactors when `cfg.derivs` is set.
pub fn truncate_intervals(plan: ContourPlan, p: PhaseParams, cfg: &FsConfig) -> Result<ContourPlan, FsError> {
    let m = GravityIntegrand {
        a: p.a,
        b: p.b,
        derivs: cfg.derivs,
    };
    truncate_with(plan, &m, cfg)
}
