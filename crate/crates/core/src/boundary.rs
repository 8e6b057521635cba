//! Smooth closed curves and the periodic trapezoid node set on them.
//!
//! Curves are parametrized counterclockwise on `[0, 2pi)`, so the outward
//! normal is `(z2', -z1') / |z'|`.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::BieError;
use crate::geom::Point2;

/// A smooth, 2pi-periodic, counterclockwise closed curve.
pub trait Curve: Sync {
    fn z(&self, t: f64) -> Point2;
    fn dz(&self, t: f64) -> Point2;
}

/// `r(theta) = c0 + sum_k (cos_k cos k theta + sin_k sin k theta)`, with
/// `cos[k-1]`, `sin[k-1]` the coefficients of harmonic `k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolarCurve {
    pub c0: f64,
    #[serde(default)]
    pub cos: Vec<f64>,
    #[serde(default)]
    pub sin: Vec<f64>,
}

impl PolarCurve {
    /// Validates that the radius stays positive.
    pub fn new(c0: f64, cos: Vec<f64>, sin: Vec<f64>) -> Result<Self, BieError> {
        let curve = Self { c0, cos, sin };
        curve.check()?;
        Ok(curve)
    }

    pub fn circle(radius: f64) -> Result<Self, BieError> {
        Self::new(radius, Vec::new(), Vec::new())
    }

    /// `c0 + c cos(k theta)`
    pub fn cosine(c0: f64, c: f64, k: usize) -> Result<Self, BieError> {
        let mut cos = vec![0.0; k];
        cos[k - 1] = c;
        Self::new(c0, cos, Vec::new())
    }

    /// `c0 + c sin(k theta)`
    pub fn sine(c0: f64, c: f64, k: usize) -> Result<Self, BieError> {
        let mut sin = vec![0.0; k];
        sin[k - 1] = c;
        Self::new(c0, Vec::new(), sin)
    }

    /// Rejects curves whose radius is non-positive somewhere.
    pub fn check(&self) -> Result<(), BieError> {
        let kmax = self.cos.len().max(self.sin.len());
        // a trigonometric polynomial of degree K moves by at most
        // K * (sum of |coefficients|) * dtheta between samples
        let amp: f64 = self.cos.iter().chain(&self.sin).map(|c| c.abs()).sum();
        let m = 64 * (kmax + 1);
        let slack = kmax as f64 * amp * TAU / m as f64;
        for j in 0..m {
            let theta = TAU * j as f64 / m as f64;
            let r = self.radius(theta);
            if !(r.is_finite() && r > slack.min(0.5 * r.abs())) {
                return Err(BieError::NonPositiveRadius { theta, r });
            }
        }
        Ok(())
    }

    pub fn radius(&self, theta: f64) -> f64 {
        self.harmonics(theta).0
    }

    /// `(r, dr/dtheta)`
    fn harmonics(&self, theta: f64) -> (f64, f64) {
        let mut r = self.c0;
        let mut dr = 0.0;
        for (k, c) in self.cos.iter().enumerate() {
            let kf = (k + 1) as f64;
            let (s, co) = (kf * theta).sin_cos();
            r += c * co;
            dr -= c * kf * s;
        }
        for (k, c) in self.sin.iter().enumerate() {
            let kf = (k + 1) as f64;
            let (s, co) = (kf * theta).sin_cos();
            r += c * s;
            dr += c * kf * co;
        }
        (r, dr)
    }

    /// The same shape with every coefficient multiplied by `factor > 0`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            c0: self.c0 * factor,
            cos: self.cos.iter().map(|c| c * factor).collect(),
            sin: self.sin.iter().map(|c| c * factor).collect(),
        }
    }

    /// The first `count` points of the 2-3 Halton sequence over the bounding
    /// square that fall inside the curve scaled by `scale`.
    pub fn interior_points(&self, scale: f64, count: usize) -> Vec<Point2> {
        let inner = self.scaled(scale);
        let m = 1024;
        let r = (0..m)
            .map(|j| inner.radius(TAU * j as f64 / m as f64))
            .fold(0.0, f64::max)
            * 1.01;
        let mut out = Vec::with_capacity(count);
        let mut k = 1u64;
        while out.len() < count {
            let p = Point2::new(r * (2.0 * halton(k, 2) - 1.0), r * (2.0 * halton(k, 3) - 1.0));
            if inner.contains(p) {
                out.push(p);
            }
            k += 1;
        }
        out
    }

    /// Strictly inside the curve.
    pub fn contains(&self, p: Point2) -> bool {
        let r = p.norm();
        r < self.radius(p.x2.atan2(p.x1))
    }
}

fn halton(mut k: u64, base: u64) -> f64 {
    let mut f = 1.0;
    let mut x = 0.0;
    while k > 0 {
        f /= base as f64;
        x += f * (k % base) as f64;
        k /= base;
    }
    x
}

impl Curve for PolarCurve {
    fn z(&self, t: f64) -> Point2 {
        let r = self.radius(t);
        let (s, c) = t.sin_cos();
        Point2::new(r * c, r * s)
    }

    fn dz(&self, t: f64) -> Point2 {
        let (r, dr) = self.harmonics(t);
        let (s, c) = t.sin_cos();
        Point2::new(dr * c - r * s, dr * s + r * c)
    }
}

/// Periodic trapezoid nodes `s_j = 2 pi j / N`, `j = 1..=N`.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeSet {
    pub params: Vec<f64>,
    pub points: Vec<Point2>,
    pub tangents: Vec<Point2>,
    pub speeds: Vec<f64>,
    pub normals: Vec<Point2>,
}

/// Smallest supported node count.
pub const MIN_NODES: usize = 8;

impl NodeSet {
    pub fn new<C: Curve + ?Sized>(curve: &C, n: usize) -> Result<Self, BieError> {
        if n < MIN_NODES {
            return Err(BieError::TooFewNodes { n, min: MIN_NODES });
        }
        let mut set = NodeSet {
            params: Vec::with_capacity(n),
            points: Vec::with_capacity(n),
            tangents: Vec::with_capacity(n),
            speeds: Vec::with_capacity(n),
            normals: Vec::with_capacity(n),
        };
        for j in 1..=n {
            let t = TAU * j as f64 / n as f64;
            let d = curve.dz(t);
            let speed = d.norm();
            if !(speed > 0.0 && speed.is_finite()) {
                return Err(BieError::Invalid(format!("degenerate speed {speed} at t = {t}")));
            }
            set.params.push(t);
            set.points.push(curve.z(t));
            set.tangents.push(d);
            set.speeds.push(speed);
            set.normals.push(Point2::new(d.x2 / speed, -d.x1 / speed));
        }
        Ok(set)
    }

    pub fn len(&self) -> usize {
        self.params.len()
    }

    pub fn is_empty(&self) -> bool {
        self.params.is_empty()
    }

    /// Trapezoid weight `2 pi / N`.
    pub fn weight(&self) -> f64 {
        TAU / self.len() as f64
    }

    /// Local node spacing `(2 pi / N) |z'(s_i)|`.
    pub fn spacing(&self, i: usize) -> f64 {
        self.weight() * self.speeds[i]
    }

    pub fn perimeter(&self) -> f64 {
        self.weight() * self.speeds.iter().sum::<f64>()
    }

    /// Distance from `p` to the nearest node and that node's index.
    pub fn nearest(&self, p: Point2) -> (usize, f64) {
        self.points
            .iter()
            .enumerate()
            .map(|(i, q)| (i, q.dist(p)))
            .fold(
                (0, f64::INFINITY),
                |best, cur| if cur.1 < best.1 { cur } else { best },
            )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn trefoil() -> PolarCurve {
        PolarCurve::cosine(5.0, 1.5, 3).unwrap()
    }

    #[test]
    fn circle_nodes() {
        let c = PolarCurve::circle(1.0).unwrap();
        let ns = NodeSet::new(&c, 8).unwrap();
        // j = 1 sits at 2 pi / 8, the last node at 2 pi
        assert!((ns.points[1] - Point2::new(0.0, 1.0)).norm() < 1e-15);
        assert!((ns.points[7] - Point2::new(1.0, 0.0)).norm() < 1e-15);
        for (p, n) in ns.points.iter().zip(&ns.normals) {
            assert!((*p - *n).norm() < 1e-15, "outward normal on the unit circle is z");
        }
        assert!((ns.perimeter() - TAU).abs() < 1e-14);
    }

    #[test]
    fn polar_examples() {
        assert!((trefoil().z(0.0) - Point2::new(6.5, 0.0)).norm() < 1e-15);
        let star = PolarCurve::sine(9.0, 2.0, 5).unwrap();
        assert!((star.radius(FRAC_PI_2) - 11.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_non_positive_radius() {
        assert!(matches!(
            PolarCurve::cosine(1.0, 1.5, 2),
            Err(BieError::NonPositiveRadius { .. })
        ));
        assert!(PolarCurve::circle(0.0).is_err());
        assert!(PolarCurve::circle(-2.0).is_err());
    }

    #[test]
    fn too_few_nodes() {
        let c = PolarCurve::circle(1.0).unwrap();
        assert!(matches!(
            NodeSet::new(&c, 7),
            Err(BieError::TooFewNodes { n: 7, min: 8 })
        ));
    }

    #[test]
    fn derivative_matches_differences() {
        let curves = [
            trefoil(),
            PolarCurve::new(3.0, vec![0.2, -0.1], vec![0.0, 0.3, 0.05]).unwrap(),
        ];
        let h = 1e-6;
        for c in &curves {
            for k in 0..37 {
                let t = 0.17 * k as f64;
                let fd = (c.z(t + h) - c.z(t - h)) * (0.5 / h);
                assert!((fd - c.dz(t)).norm() < 1e-8);
            }
        }
    }

    #[test]
    fn normals_are_unit_and_outward() {
        let c = trefoil();
        let ns = NodeSet::new(&c, 64).unwrap();
        for i in 0..ns.len() {
            assert!((ns.normals[i].norm() - 1.0).abs() < 1e-14);
            let out = ns.points[i] + 1e-3 * ns.normals[i];
            let inn = ns.points[i] - 1e-3 * ns.normals[i];
            assert!(!c.contains(out) && c.contains(inn));
        }
    }

    #[test]
    fn trefoil_perimeter_converges_fast() {
        let c = trefoil();
        let p = |n| NodeSet::new(&c, n).unwrap().perimeter();
        let (p40, p80, p160) = (p(40), p(80), p(160));
        assert!((p80 - p160).abs() < 1e-12);
        assert!((p40 - p160).abs() > (p80 - p160).abs());
    }

    #[test]
    fn contains_and_scaling() {
        let c = trefoil();
        assert!(c.contains(Point2::new(6.4, 0.0)));
        assert!(!c.contains(Point2::new(6.6, 0.0)));
        let s = c.scaled(0.8);
        assert!((s.radius(PI) - 0.8 * c.radius(PI)).abs() < 1e-15);
        let pts = c.interior_points(0.8, 100);
        assert_eq!(pts.len(), 100);
        assert!(pts.iter().all(|p| s.contains(*p)));
        assert_eq!(pts, c.interior_points(0.8, 100));
    }
}
