//! Phase parameters, ray travel times, region classification and saddle points.
//!
//! With `t = e^s` the integrand of the fundamental solution is
//! `exp(i psi(e^s))` where `psi(t) = a/t + b t - t^3/12`. Its stationary points
//! in `t` are the classical travel times, the positive roots of
//! `t^4/4 - b t^2 + a = 0`.

use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_3};

use crate::geom::Point2;

/// The pair `(a, b)` that determines the phase, plus the energy it came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseParams {
    /// `|x - y|^2 / 4`
    pub a: f64,
    /// `(x2 + y2)/2 + E`
    pub b: f64,
    pub energy: f64,
}

impl PhaseParams {
    pub fn new(a: f64, b: f64, energy: f64) -> Self {
        Self { a, b, energy }
    }

    /// `psi(e^s)`
    pub fn psi(&self, s: Complex64) -> Complex64 {
        let t = s.exp();
        self.a / t + self.b * t - t * t * t / 12.0
    }

    /// `d/ds psi(e^s) = -a e^-s + b e^s - e^{3s}/4`
    pub fn dpsi_ds(&self, s: Complex64) -> Complex64 {
        let t = s.exp();
        -self.a / t + self.b * t - 0.25 * t * t * t
    }

    /// `d^2/ds^2 psi(e^s) = a e^-s + b e^s - 3 e^{3s}/4`
    pub fn d2psi_ds2(&self, s: Complex64) -> Complex64 {
        let t = s.exp();
        self.a / t + self.b * t - 0.75 * t * t * t
    }

    /// `d^3/ds^3 psi(e^s) = -a e^-s + b e^s - 9 e^{3s}/4`
    pub fn d3psi_ds3(&self, s: Complex64) -> Complex64 {
        let t = s.exp();
        -self.a / t + self.b * t - 2.25 * t * t * t
    }

    /// Saddle width `|d^2/ds^2 psi(e^s)|^{-1/2}`; infinite where the second
    /// derivative vanishes (coalesced saddles).
    pub fn width(&self, s: Complex64) -> f64 {
        if !s.re.is_finite() {
            return f64::INFINITY;
        }
        let d2 = self.d2psi_ds2(s).norm();
        if d2 == 0.0 {
            f64::INFINITY
        } else {
            d2.powf(-0.5)
        }
    }
}

/// Computes `a = |x-y|^2/4` and `b = (x2+y2)/2 + E`.
pub fn phase_params(x: Point2, y: Point2, energy: f64) -> PhaseParams {
    let d = x - y;
    PhaseParams {
        a: 0.25 * d.norm_sq(),
        b: 0.5 * (x.x2 + y.x2) + energy,
        energy,
    }
}

/// Classically allowed, forbidden, or deep forbidden.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegionLabel {
    A,
    F,
    D,
}

impl std::fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let c = match self {
            RegionLabel::A => "A",
            RegionLabel::F => "F",
            RegionLabel::D => "D",
        };
        f.write_str(c)
    }
}

/// Which of the three algebraic cases the pair `(a, b)` falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum RootCase {
    /// `b >= sqrt(a)`: two real positive travel times.
    Real,
    /// `|b| < sqrt(a)`: complex-conjugate squared travel times.
    Complex,
    /// `b <= -sqrt(a)`: both squared travel times real and non-positive.
    NegativeReal,
}

fn root_case(p: &PhaseParams) -> RootCase {
    let ra = p.a.sqrt();
    if p.b >= ra {
        RootCase::Real
    } else if p.b > -ra {
        RootCase::Complex
    } else {
        RootCase::NegativeReal
    }
}

/// Returns `(b - w, b + w)` with `w = sqrt(b^2 - a)` (principal branch),
/// written so that neither root suffers cancellation.
fn squared_half_times(p: &PhaseParams) -> (Complex64, Complex64) {
    let (a, b) = (p.a, p.b);
    let ra = a.sqrt();
    match root_case(p) {
        RootCase::Real => {
            let w = ((b - ra) * (b + ra)).max(0.0).sqrt();
            let big = b + w;
            let small = if big > 0.0 { a / big } else { 0.0 };
            (Complex64::new(small, 0.0), Complex64::new(big, 0.0))
        }
        RootCase::Complex => {
            let q = ((ra - b) * (ra + b)).sqrt();
            (Complex64::new(b, -q), Complex64::new(b, q))
        }
        RootCase::NegativeReal => {
            let w = ((b - ra) * (b + ra)).max(0.0).sqrt();
            let big = b - w;
            let small = if big < 0.0 { a / big } else { 0.0 };
            (Complex64::new(big, 0.0), Complex64::new(small, 0.0))
        }
    }
}

/// The travel times `t± = sqrt(2(b ± sqrt(b^2 - a)))`, principal branches.
///
/// In the allowed region both are real with `0 <= t- <= t+`.
pub fn ray_travel_times(p: PhaseParams) -> (Complex64, Complex64) {
    let (m, pl) = squared_half_times(&p);
    ((2.0 * m).sqrt(), (2.0 * pl).sqrt())
}

/// Saddle points `s± = log t±` of the integrand and their widths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaddleSet {
    pub region: RegionLabel,
    pub s_minus: Complex64,
    pub s_plus: Complex64,
    pub sigma_minus: f64,
    pub sigma_plus: f64,
}

impl SaddleSet {
    /// The single saddle the contour passes in regions F and D: the one with
    /// negative imaginary part, or the one with more negative real part when
    /// both sit on `Im s = -pi/2`.
    pub fn primary(&self) -> Complex64 {
        if self.s_minus.im == -FRAC_PI_2 && self.s_plus.im == -FRAC_PI_2 && self.s_plus.re < self.s_minus.re {
            self.s_plus
        } else {
            self.s_minus
        }
    }

    pub fn primary_width(&self) -> f64 {
        if self.primary() == self.s_minus {
            self.sigma_minus
        } else {
            self.sigma_plus
        }
    }

    /// Distance between the two saddles.
    pub fn separation(&self) -> f64 {
        if !self.s_minus.re.is_finite() {
            return f64::INFINITY;
        }
        (self.s_plus - self.s_minus).norm()
    }
}

/// Locates both saddles and their widths for any `(a, b)`.
///
/// For `a = 0` the left saddle sits at `-inf` (returned with infinite width).
pub fn saddle_points(p: PhaseParams) -> SaddleSet {
    let (m, pl) = squared_half_times(&p);
    let case = root_case(&p);
    let log_time = |q: Complex64| -> Complex64 {
        // s = log sqrt(2q)
        if q == Complex64::new(0.0, 0.0) {
            return Complex64::new(f64::NEG_INFINITY, 0.0);
        }
        let two_q = 2.0 * q;
        match case {
            RootCase::NegativeReal => Complex64::new(0.5 * (-two_q.re).ln(), -FRAC_PI_2),
            _ => 0.5 * two_q.ln(),
        }
    };
    let mut s_minus = log_time(m);
    let s_plus = log_time(pl);
    if case == RootCase::NegativeReal && !s_minus.re.is_finite() {
        s_minus.im = -FRAC_PI_2;
    }
    let region = match case {
        RootCase::Real => RegionLabel::A,
        RootCase::NegativeReal => RegionLabel::D,
        RootCase::Complex => {
            if s_minus.im < -FRAC_PI_3 {
                RegionLabel::D
            } else {
                RegionLabel::F
            }
        }
    };
    SaddleSet {
        region,
        s_minus,
        s_plus,
        sigma_minus: p.width(s_minus),
        sigma_plus: p.width(s_plus),
    }
}

/// Region A when real travel times exist, otherwise F or D according to the
/// imaginary part of the relevant saddle.
pub fn classify_region(p: PhaseParams) -> RegionLabel {
    saddle_points(p).region
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quartic(t: Complex64, b: f64, a: f64) -> Complex64 {
        t.powi(4) / 4.0 - b * t * t + a
    }

    #[test]
    fn phase_params_examples() {
        let p = phase_params(Point2::new(0.0, 0.0), Point2::new(0.0, 0.0), 5.0);
        assert_eq!((p.a, p.b), (0.0, 5.0));
        let p = phase_params(Point2::new(2.0, 0.0), Point2::new(0.0, 0.0), 1.0);
        assert_eq!((p.a, p.b), (1.0, 1.0));
        let p = phase_params(Point2::new(20.0, 10.0), Point2::new(0.0, 0.0), 20.0);
        assert_eq!((p.a, p.b), (125.0, 25.0));
    }

    #[test]
    fn travel_times_trivial_cases() {
        let (tm, tp) = ray_travel_times(PhaseParams::new(0.0, 1.0, 1.0));
        assert_eq!(tm, Complex64::new(0.0, 0.0));
        assert!((tp - Complex64::new(2.0, 0.0)).norm() < 1e-15);
        let (tm, tp) = ray_travel_times(PhaseParams::new(4.0, 2.0, 2.0));
        assert!((tm.re - 2.0).abs() < 1e-15 && tm.im == 0.0);
        assert!((tp.re - 2.0).abs() < 1e-15 && tp.im == 0.0);
    }

    #[test]
    fn travel_times_complex_pair_solve_quartic() {
        let (a, b) = (2.0, 1.0);
        let (tm, tp) = ray_travel_times(PhaseParams::new(a, b, b));
        for t in [tm, tp] {
            assert!(t.im != 0.0);
            assert!(quartic(t, b, a).norm() < 1e-12 * a.max(b * b).max(1.0));
        }
        assert!(tm.im < 0.0 && tp.im > 0.0);
    }

    #[test]
    fn region_examples() {
        assert_eq!(classify_region(PhaseParams::new(1.0, 2.0, 2.0)), RegionLabel::A);
        assert_eq!(
            classify_region(PhaseParams::new(125.0, 25.0, 20.0)),
            RegionLabel::A
        );
        assert_eq!(classify_region(PhaseParams::new(1.0, -1.0, -1.0)), RegionLabel::D);
        // just inside the forbidden parabola but above the hyperbola b = -sqrt(a)/2
        assert_eq!(classify_region(PhaseParams::new(1.0, 0.0, 0.0)), RegionLabel::F);
        assert_eq!(classify_region(PhaseParams::new(1.0, -0.49, 0.0)), RegionLabel::F);
        assert_eq!(classify_region(PhaseParams::new(1.0, -0.51, 0.0)), RegionLabel::D);
    }

    #[test]
    fn region_d_example_has_deep_saddle() {
        // a = 1, b = -1 sits exactly on b = -sqrt(a): merged saddles on Im s = -pi/2
        let ss = saddle_points(PhaseParams::new(1.0, -1.0, -1.0));
        assert!(ss.primary().im < -FRAC_PI_3);
    }

    #[test]
    fn saddles_are_stationary_in_allowed_region() {
        let p = PhaseParams::new(0.25, 1.0, 1.0);
        let ss = saddle_points(p);
        assert_eq!(ss.region, RegionLabel::A);
        // independent check by central differences of psi(e^s) along the real axis
        for s in [ss.s_minus, ss.s_plus] {
            let h = 1e-5;
            let d = (p.psi(s + h) - p.psi(s - h)) / (2.0 * h);
            assert!(d.norm() < 1e-9, "dpsi/ds = {d}");
            assert!(p.dpsi_ds(s).norm() < 1e-12);
        }
    }

    #[test]
    fn coalesced_saddles() {
        let ss = saddle_points(PhaseParams::new(4.0, 2.0, 2.0));
        assert!((ss.s_minus.re - 2f64.ln()).abs() < 1e-15);
        assert!((ss.s_plus.re - 2f64.ln()).abs() < 1e-15);
        assert!(ss.sigma_minus > 1e6);
    }

    #[test]
    fn forbidden_single_saddle_below_axis() {
        let p = PhaseParams::new(2.0, -1.0, -1.0);
        let ss = saddle_points(p);
        let s0 = ss.primary();
        assert!(s0.im < 0.0);
        assert!(p.dpsi_ds(s0).norm() < 1e-12);
    }

    #[test]
    fn merged_negative_case_picks_leftmost() {
        let p = PhaseParams::new(0.01, -3.0, -3.0);
        let ss = saddle_points(p);
        assert_eq!(ss.region, RegionLabel::D);
        let s0 = ss.primary();
        assert!((s0.im + FRAC_PI_2).abs() < 1e-15);
        assert!(s0.re < ss.s_minus.re.max(ss.s_plus.re));
        assert!(p.dpsi_ds(s0).norm() < 1e-12 * p.d2psi_ds2(s0).norm().max(1.0));
    }

    #[test]
    fn degenerate_zero_distance() {
        let ss = saddle_points(PhaseParams::new(0.0, 1.0, 1.0));
        assert_eq!(ss.region, RegionLabel::A);
        assert_eq!(ss.s_minus.re, f64::NEG_INFINITY);
        assert!((ss.s_plus.re - 2f64.ln()).abs() < 1e-15);
        assert!(ss.sigma_minus.is_infinite());
    }
}
