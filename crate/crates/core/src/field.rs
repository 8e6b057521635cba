//! Field reconstruction from a solved density, incident fields, and the
//! verification identities.

use nalgebra::DVector;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::bie::{layer_matrices, BieProblem, Density, Side};
use crate::boundary::{Curve, NodeSet};
use crate::contour::{eval_phi, eval_phi_batch, FsConfig};
use crate::error::{BatchError, BieError, FsError, SpecFunError};
use crate::geom::Point2;
use crate::specfun::airy_pair;

/// Targets closer than this many local node spacings are flagged.
pub const NEAR_SPACINGS: f64 = 5.0;
/// Targets closer than this many local node spacings are rejected.
pub const TOO_CLOSE_SPACINGS: f64 = 0.1;

/// Field values with a per-target flag for points too near the boundary for
/// the plain trapezoid sum to be trusted.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldValues {
    pub values: Vec<Complex64>,
    pub near: Vec<bool>,
}

/// `u(x) = (2 pi / N) sum_j (dPhi/dn_y - i eta Phi)(x, z_j) |z'_j| tau_j`.
///
/// For interior problems `eta = 0` and this is the double layer.
pub fn eval_solution<C: Curve>(
    problem: &BieProblem<C>,
    nodes: &NodeSet,
    density: &Density,
    targets: &[Point2],
) -> Result<FieldValues, BieError> {
    let n = nodes.len();
    if density.tau.len() != n {
        return Err(BieError::Dimension {
            expected: n,
            got: density.tau.len(),
        });
    }
    let eta = match problem.side {
        Side::Interior => 0.0,
        Side::Exterior => problem.eta,
    };
    let cfg = problem.fs.with_derivs(true);
    let w = nodes.weight();
    let out: Vec<(Complex64, bool)> = targets
        .par_iter()
        .enumerate()
        .map(|(index, &x)| {
            let (i, d) = nodes.nearest(x);
            let delta = nodes.spacing(i);
            if d < TOO_CLOSE_SPACINGS * delta {
                return Err(BieError::TargetTooClose { index });
            }
            let mut u = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if density.tau[j] == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let v = eval_phi(x, nodes.points[j], problem.energy, &cfg)
                    .map_err(|source| BatchError { index, source })?;
                let k = v.normal_derivative(nodes.normals[j]) - Complex64::new(0.0, eta) * v.phi;
                u += k * nodes.speeds[j] * density.tau[j];
            }
            Ok((w * u, d < NEAR_SPACINGS * delta))
        })
        .collect::<Result<_, BieError>>()?;
    let (values, near) = out.into_iter().unzip();
    Ok(FieldValues { values, near })
}

/// `Phi(x, xs)` at each target.
pub fn incident_point_source(
    xs: Point2,
    targets: &[Point2],
    energy: f64,
    cfg: &FsConfig,
) -> Result<Vec<Complex64>, BatchError> {
    Ok(eval_phi_batch(targets, xs, energy, &cfg.with_derivs(false))?
        .into_iter()
        .map(|v| v.phi)
        .collect())
}

/// `Phi(x, xs)` and its gradient in `x`, using `Phi(x, y) = Phi(y, x)`.
pub fn point_source_with_gradient(
    xs: Point2,
    x: Point2,
    energy: f64,
    cfg: &FsConfig,
) -> Result<(Complex64, [Complex64; 2]), FsError> {
    let v = eval_phi(xs, x, energy, &cfg.with_derivs(true))?;
    Ok((v.phi, [v.dphi_dy1, v.dphi_dy2]))
}

/// `cos(sqrt(E) x1) Ai(-x2)`, a real solution for `E >= 0`.
pub fn incident_airy(energy: f64, targets: &[Point2]) -> Result<Vec<f64>, SpecFunError> {
    targets
        .iter()
        .map(|&x| airy_solution(energy, x).map(|(u, _)| u))
        .collect()
}

/// `cos(sqrt(E) x1) Ai(-x2)` and its gradient.
pub fn airy_solution(energy: f64, x: Point2) -> Result<(f64, [f64; 2]), SpecFunError> {
    let k = energy.max(0.0).sqrt();
    let (ai, aip) = airy_pair(-x.x2)?;
    let (s, c) = (k * x.x1).sin_cos();
    Ok((c * ai, [-k * s * ai, -c * aip]))
}

/// Norms from the discrete Green's representation check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreenResidual {
    /// `||S u_n - (D + I/2) u||`
    pub residual: f64,
    /// `||S u_n||`
    pub single: f64,
    /// `||(D + I/2) u||`
    pub double: f64,
}

/// Discrete `S u_n - (D + I/2) u` at the nodes for interior traces `u`,
/// `u_n`, measured in the Euclidean norm over nodes.
pub fn greens_identity_residual<C: Curve + Clone>(
    curve: &C,
    n: usize,
    energy: f64,
    cfg: &FsConfig,
    u: &[Complex64],
    un: &[Complex64],
) -> Result<GreenResidual, BieError> {
    for v in [u, un] {
        if v.len() != n {
            return Err(BieError::Dimension {
                expected: n,
                got: v.len(),
            });
        }
    }
    let problem = BieProblem::interior(curve.clone(), n, energy).with_fs(*cfg);
    let (s, d) = layer_matrices(&problem)?;
    let u = DVector::from_column_slice(u);
    let un = DVector::from_column_slice(un);
    let single = &s * &un;
    let double = &d * &u + &u * Complex64::new(0.5, 0.0);
    Ok(GreenResidual {
        residual: (&single - &double).norm(),
        single: single.norm(),
        double: double.norm(),
    })
}

/// Traces of `u` and `du/dn` at the nodes of `curve`.
pub fn boundary_traces<C, F, E>(curve: &C, n: usize, field: F) -> Result<(Vec<Complex64>, Vec<Complex64>), E>
where
    C: Curve,
    F: Fn(Point2) -> Result<(Complex64, [Complex64; 2]), E>,
    E: From<BieError>,
{
    let nodes = NodeSet::new(curve, n)?;
    let mut u = Vec::with_capacity(n);
    let mut un = Vec::with_capacity(n);
    for (p, nrm) in nodes.points.iter().zip(&nodes.normals) {
        let (v, g) = field(*p)?;
        u.push(v);
        un.push(g[0] * nrm.x1 + g[1] * nrm.x2);
    }
    Ok((u, un))
}

/// Flux through a circle: the imaginary part of `oint u conj(du/dn) ds` and
/// the scale `oint |u| |grad u| ds` it should be compared against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluxCheck {
    pub residual: f64,
    pub signed: f64,
    pub scale: f64,
}

/// `M`-point trapezoid rule for the flux of `field` (value and gradient)
/// out of the circle of `radius` about `center`.
pub fn flux_residual<F, E>(center: Point2, radius: f64, field: F, m: usize) -> Result<FluxCheck, E>
where
    F: Fn(Point2) -> Result<(Complex64, [Complex64; 2]), E>,
{
    let ds = std::f64::consts::TAU * radius / m as f64;
    let mut flux = Complex64::new(0.0, 0.0);
    let mut scale = 0.0;
    for k in 0..m {
        let th = std::f64::consts::TAU * k as f64 / m as f64;
        let (s, c) = th.sin_cos();
        let (u, g) = field(center + radius * Point2::new(c, s))?;
        let un = g[0] * c + g[1] * s;
        flux += u * un.conj() * ds;
        scale += u.norm() * (g[0].norm_sqr() + g[1].norm_sqr()).sqrt() * ds;
    }
    Ok(FluxCheck {
        residual: flux.im.abs(),
        signed: flux.im,
        scale,
    })
}
