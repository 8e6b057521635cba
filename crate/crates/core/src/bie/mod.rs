//! Nyström discretization of the boundary integral equations.
//!
//! Interior Dirichlet problems use the double layer, `(-I/2 + D) tau = f`;
//! exterior ones the combined field `(I/2 + D - i eta S) tau = f`. Both are
//! scaled by `-/+2` to the form `(I + A) tau = g`.

mod gmres;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::alpert::{alpert_rule, AlpertRule, MIN_GRID};
use crate::boundary::{Curve, NodeSet, PolarCurve};
use crate::contour::{eval_phi, FsConfig, FsValue};
use crate::error::BieError;
use crate::geom::Point2;

pub use gmres::{solve_gmres, GmresReport, GMRES_MAX_ITERS};

/// Which side of the boundary the solution lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Interior,
    Exterior,
}

/// A boundary, a discretization size and the medium.
#[derive(Debug, Clone)]
pub struct BieProblem<C = PolarCurve> {
    pub curve: C,
    pub n: usize,
    pub energy: f64,
    pub side: Side,
    /// Combined-field coupling; zero for interior problems.
    pub eta: f64,
    pub fs: FsConfig,
}

impl<C: Curve> BieProblem<C> {
    pub fn interior(curve: C, n: usize, energy: f64) -> Self {
        Self {
            curve,
            n,
            energy,
            side: Side::Interior,
            eta: 0.0,
            fs: FsConfig::default(),
        }
    }

    /// Exterior problem with the usual coupling `eta = sqrt(E)`.
    pub fn exterior(curve: C, n: usize, energy: f64) -> Result<Self, BieError> {
        if !(energy > 0.0) {
            return Err(BieError::NeedPositiveEnergy(energy));
        }
        Ok(Self {
            curve,
            n,
            energy,
            side: Side::Exterior,
            eta: energy.sqrt(),
            fs: FsConfig::default(),
        })
    }

    pub fn with_eta(mut self, eta: f64) -> Self {
        self.eta = eta;
        self
    }

    pub fn with_fs(mut self, fs: FsConfig) -> Self {
        self.fs = fs;
        self
    }

    pub fn nodes(&self) -> Result<NodeSet, BieError> {
        NodeSet::new(&self.curve, self.n)
    }

    /// Kernel at target `x` for a source at `y` with unit normal `n` and
    /// speed `|z'|`.
    fn kernel_at(&self, x: Point2, y: Point2, n: Point2, speed: f64) -> Result<Complex64, BieError> {
        let v = eval_phi(x, y, self.energy, &self.fs.with_derivs(true)).map_err(|e| BieError::Kernel {
            row: usize::MAX,
            col: usize::MAX,
            source: e,
        })?;
        Ok(self.combine(&v, n) * speed)
    }

    fn combine(&self, v: &FsValue, n: Point2) -> Complex64 {
        let dn = v.normal_derivative(n);
        match self.side {
            Side::Interior => -2.0 * dn,
            Side::Exterior => 2.0 * (dn - Complex64::new(0.0, self.eta) * v.phi),
        }
    }

    /// `K(t, s)` for curve parameters `t != s`.
    pub fn kernel(&self, t: f64, s: f64) -> Result<Complex64, BieError> {
        let d = self.curve.dz(s);
        let speed = d.norm();
        let n = Point2::new(d.x2 / speed, -d.x1 / speed);
        self.kernel_at(self.curve.z(t), self.curve.z(s), n, speed)
    }

    /// Boundary data scaled to the right-hand side `g`.
    pub fn rhs_from(&self, f: &[Complex64]) -> Vec<Complex64> {
        let scale = match self.side {
            Side::Interior => -2.0,
            Side::Exterior => 2.0,
        };
        f.iter().map(|v| v * scale).collect()
    }
}

/// `(I + A) tau = g` together with its nodes.
#[derive(Debug, Clone)]
pub struct NystromSystem {
    /// The discretized operator without the identity.
    pub a: DMatrix<Complex64>,
    pub rhs: Vec<Complex64>,
    pub nodes: NodeSet,
}

impl NystromSystem {
    pub fn len(&self) -> usize {
        self.rhs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rhs.is_empty()
    }

    /// `(I + A) v`
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let mut out = v.to_vec();
        for (j, &vj) in v.iter().enumerate() {
            if vj == Complex64::new(0.0, 0.0) {
                continue;
            }
            let col = self.a.column(j);
            for (o, a) in out.iter_mut().zip(col.iter()) {
                *o += a * vj;
            }
        }
        out
    }

    /// `||(I + A) tau - g|| / ||g||`
    pub fn relative_residual(&self, tau: &[Complex64]) -> f64 {
        let r = self.apply(tau);
        let num: f64 = r.iter().zip(&self.rhs).map(|(a, b)| (a - b).norm_sqr()).sum();
        let den: f64 = self.rhs.iter().map(|b| b.norm_sqr()).sum();
        if den == 0.0 {
            num.sqrt()
        } else {
            (num / den).sqrt()
        }
    }
}

/// Density values at the nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct Density {
    pub tau: Vec<Complex64>,
}

/// Fills the Nyström matrix; the right-hand side is set from `data`, the
/// boundary values `f` at the nodes.
pub fn fill_matrix<C: Curve>(problem: &BieProblem<C>, data: &[Complex64]) -> Result<NystromSystem, BieError> {
    let n = problem.n;
    if data.len() != n {
        return Err(BieError::Dimension {
            expected: n,
            got: data.len(),
        });
    }
    let nodes = problem.nodes()?;
    let [a] = fill_with(problem, &nodes, |v, nrm| [problem.combine(v, nrm)])?;
    Ok(NystromSystem {
        a,
        rhs: problem.rhs_from(data),
        nodes,
    })
}

/// Alpert-corrected single- and double-layer matrices `(S, D)` on the
/// problem's nodes, with kernels `Phi |z'|` and `dPhi/dn_y |z'|`.
pub fn layer_matrices<C: Curve>(
    problem: &BieProblem<C>,
) -> Result<(DMatrix<Complex64>, DMatrix<Complex64>), BieError> {
    let nodes = problem.nodes()?;
    let [s, d] = fill_with(problem, &nodes, |v, nrm| [v.phi, v.normal_derivative(nrm)])?;
    Ok((s, d))
}

/// Dense Alpert-corrected discretizations of the integral operators whose
/// kernels are the `K` outputs of `combine`, times `|z'|`.
fn fill_with<C, F, const K: usize>(
    problem: &BieProblem<C>,
    nodes: &NodeSet,
    combine: F,
) -> Result<[DMatrix<Complex64>; K], BieError>
where
    C: Curve,
    F: Fn(&FsValue, Point2) -> [Complex64; K] + Sync,
{
    let n = nodes.len();
    if n < MIN_GRID {
        return Err(BieError::TooFewNodes { n, min: MIN_GRID });
    }
    let rule = alpert_rule();
    let rows: Vec<[Vec<Complex64>; K]> = (0..n)
        .into_par_iter()
        .map(|i| fill_row(problem, nodes, &rule, i, &combine))
        .collect::<Result<_, _>>()?;
    Ok(std::array::from_fn(|k| {
        DMatrix::from_fn(n, n, |i, j| rows[i][k][j])
    }))
}

fn fill_row<C, F, const K: usize>(
    problem: &BieProblem<C>,
    nodes: &NodeSet,
    rule: &AlpertRule,
    i: usize,
    combine: &F,
) -> Result<[Vec<Complex64>; K], BieError>
where
    C: Curve,
    F: Fn(&FsValue, Point2) -> [Complex64; K],
{
    let n = nodes.len();
    let w = nodes.weight();
    let x = nodes.points[i];
    let cfg = problem.fs.with_derivs(true);
    let eval = |y: Point2, col: usize| {
        eval_phi(x, y, problem.energy, &cfg).map_err(|source| BieError::Kernel { row: i, col, source })
    };
    let mut rows: [Vec<Complex64>; K] = std::array::from_fn(|_| vec![Complex64::new(0.0, 0.0); n]);
    for off in rule.regular_offsets(n) {
        let j = (i + off) % n;
        let k = combine(&eval(nodes.points[j], j)?, nodes.normals[j]);
        for (row, kv) in rows.iter_mut().zip(k) {
            row[j] = w * nodes.speeds[j] * kv;
        }
    }
    let t = nodes.params[i];
    for aux in &rule.aux {
        let s = t + aux.offset * w;
        let near = (i as isize + aux.offset.round() as isize).rem_euclid(n as isize) as usize;
        let d = problem.curve.dz(s);
        let speed = d.norm();
        let nrm = Point2::new(d.x2 / speed, -d.x1 / speed);
        let k = combine(&eval(problem.curve.z(s), near)?, nrm);
        for (row, kv) in rows.iter_mut().zip(k) {
            let kw = w * aux.weight * speed * kv;
            for &(rel, c) in &aux.stencil {
                let j = (i as isize + rel).rem_euclid(n as isize) as usize;
                row[j] += kw * c;
            }
        }
    }
    if rows
        .iter()
        .flatten()
        .any(|v| !(v.re.is_finite() && v.im.is_finite()))
    {
        return Err(BieError::Invalid(format!("non-finite matrix entry in row {i}")));
    }
    Ok(rows)
}

/// Pivot magnitudes below this fraction of the largest mark the system as
/// numerically singular.
const SINGULAR_RATIO: f64 = 1e-15;

/// Direct solve by LU with partial pivoting.
pub fn solve_dense(sys: &NystromSystem) -> Result<Density, BieError> {
    let n = sys.len();
    let m = DMatrix::<Complex64>::identity(n, n) + &sys.a;
    let lu = m.lu();
    let u = lu.u();
    let pivots: Vec<f64> = (0..n).map(|k| u[(k, k)].norm()).collect();
    let big = pivots.iter().cloned().fold(0.0, f64::max);
    let small = pivots.iter().cloned().fold(f64::INFINITY, f64::min);
    let cond = if small > 0.0 { big / small } else { f64::INFINITY };
    if !(small > SINGULAR_RATIO * big) {
        return Err(BieError::Singular { cond });
    }
    let g = nalgebra::DVector::from_column_slice(&sys.rhs);
    let tau = lu.solve(&g).ok_or(BieError::Singular { cond })?;
    Ok(Density {
        tau: tau.iter().cloned().collect(),
    })
}
