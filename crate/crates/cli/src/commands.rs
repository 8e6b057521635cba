//! The three experiment drivers. Each writes CSV files into the output
//! directory and returns a short human-readable summary.

use std::path::{Path, PathBuf};
use std::time::Instant;

use gravhelm_core::bie::{fill_matrix, solve_dense, solve_gmres, BieProblem, Density, NystromSystem};
use gravhelm_core::boundary::{NodeSet, PolarCurve};
use gravhelm_core::contour::{eval_phi_planned, phase_params, FsEval};
use gravhelm_core::field::{
    airy_solution, boundary_traces, eval_solution, greens_identity_residual, incident_point_source,
    TOO_CLOSE_SPACINGS,
};
use gravhelm_core::{FsConfig, FsError, Point2};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::config::{RunConfig, Solver};
use crate::error::CliError;

/// Solver choice and tolerance after command-line overrides.
#[derive(Debug, Clone, Copy)]
pub struct SolveOpts {
    pub solver: Solver,
    pub gmres_tol: f64,
}

struct Table {
    path: PathBuf,
    w: csv::Writer<std::fs::File>,
}

impl Table {
    fn create(dir: &Path, name: &str, header: &[&str]) -> Result<Self, CliError> {
        let path = dir.join(name);
        let mut w = csv::Writer::from_path(&path).map_err(|source| CliError::Csv {
            path: path.clone(),
            source,
        })?;
        w.write_record(header).map_err(|source| CliError::Csv {
            path: path.clone(),
            source,
        })?;
        Ok(Self { path, w })
    }

    fn row(&mut self, fields: &[String]) -> Result<(), CliError> {
        self.w.write_record(fields).map_err(|source| CliError::Csv {
            path: self.path.clone(),
            source,
        })
    }

    fn finish(mut self) -> Result<PathBuf, CliError> {
        self.w.flush().map_err(|source| CliError::Io {
            path: self.path.clone(),
            source,
        })?;
        Ok(self.path)
    }
}

fn num(v: f64) -> String {
    format!("{v:e}")
}

fn solve(sys: &NystromSystem, opts: SolveOpts) -> Result<(Density, Option<usize>), CliError> {
    Ok(match opts.solver {
        Solver::Dense => (solve_dense(sys)?, None),
        Solver::Gmres => {
            let (d, rep) = solve_gmres(sys, opts.gmres_tol)?;
            (d, Some(rep.iterations))
        }
    })
}

/// `Phi(x, y)` on a grid, plus an optional contour diagnostic for one target.
pub fn eval_fs(cfg: &RunConfig, fs: &FsConfig, out: &Path) -> Result<String, CliError> {
    let energy = cfg.energy.unwrap_or(5.0);
    let [y1, y2] = cfg.source.unwrap_or([0.0, 10.0]);
    let y = Point2::new(y1, y2);
    let grid = cfg.grid([-15.0, 15.0], [-15.0, 15.0], [61, 61])?;
    let fs = fs.with_derivs(false);
    let points = grid.points();
    let values: Vec<Result<FsEval, FsError>> = points
        .par_iter()
        .map(|&x| eval_phi_planned(x, y, energy, &fs))
        .collect();
    let mut t = Table::create(
        out,
        "fs_grid.csv",
        &["x1", "x2", "re_phi", "im_phi", "node_count"],
    )?;
    let mut skipped = 0;
    for (x, v) in points.iter().zip(values) {
        match v {
            Ok(v) => t.row(&[
                num(x.x1),
                num(x.x2),
                num(v.value.phi.re),
                num(v.value.phi.im),
                v.node_count().to_string(),
            ])?,
            Err(FsError::Coincident) => {
                skipped += 1;
                t.row(&[num(x.x1), num(x.x2), String::new(), String::new(), "0".into()])?
            }
            Err(e) => return Err(e.into()),
        }
    }
    let path = t.finish()?;
    let mut summary = format!(
        "wrote {} ({} points, {skipped} at the source)",
        path.display(),
        points.len()
    );
    if let Some([x1, x2]) = cfg.diagnostic_target {
        summary.push('\n');
        summary.push_str(&contour_diagnostic(Point2::new(x1, x2), y, energy, &fs, out)?);
    }
    Ok(summary)
}

fn contour_diagnostic(
    x: Point2,
    y: Point2,
    energy: f64,
    fs: &FsConfig,
    out: &Path,
) -> Result<String, CliError> {
    let v = eval_phi_planned(x, y, energy, fs)?;
    let plan = &v.plan;
    let mut t = Table::create(
        out,
        "contour.csv",
        &["kind", "index", "re_s", "im_s", "alpha_lo", "alpha_hi", "h"],
    )?;
    let e = String::new;
    for (k, s) in [plan.saddles.s_minus, plan.saddles.s_plus].iter().enumerate() {
        t.row(&[
            "saddle".into(),
            k.to_string(),
            num(s.re),
            num(s.im),
            e(),
            e(),
            e(),
        ])?;
    }
    for (k, iv) in plan.intervals.iter().enumerate() {
        t.row(&[
            "interval".into(),
            k.to_string(),
            e(),
            e(),
            num(iv.lo),
            num(iv.hi),
            num(iv.h),
        ])?;
    }
    let mut j = 0;
    for iv in &plan.intervals {
        for alpha in iv.nodes() {
            let (s, _) = plan.point(alpha);
            t.row(&["node".into(), j.to_string(), num(s.re), num(s.im), e(), e(), e()])?;
            j += 1;
        }
    }
    let path = t.finish()?;
    let p = phase_params(x, y, energy);
    Ok(format!(
        "wrote {}: region {} (a = {:.6e}, b = {:.6e}), {} interval(s), {} nodes, phi = {:.12e}{:+.12e}i",
        path.display(),
        plan.region,
        p.a,
        p.b,
        plan.intervals.len(),
        v.node_count(),
        v.value.phi.re,
        v.value.phi.im
    ))
}

fn real_field(energy: f64) -> impl Fn(Point2) -> Result<(Complex64, [Complex64; 2]), CliError> {
    move |p| {
        let (u, g) = airy_solution(energy, p)?;
        Ok((
            Complex64::new(u, 0.0),
            [Complex64::new(g[0], 0.0), Complex64::new(g[1], 0.0)],
        ))
    }
}

/// Interior Dirichlet problem with the exact solution `cos(sqrt(E) x1) Ai(-x2)`.
pub fn interior_airy(
    cfg: &RunConfig,
    fs: &FsConfig,
    opts: SolveOpts,
    out: &Path,
) -> Result<String, CliError> {
    let energy = cfg.energy.unwrap_or(10.0);
    let curve = cfg.curve(PolarCurve::cosine(5.0, 1.5, 3)?)?;
    let sweep = cfg.sweep(&[80, 120, 160, 200, 260])?;
    let targets = curve.interior_points(
        cfg.interior_scale.unwrap_or(0.8),
        cfg.interior_points.unwrap_or(100),
    );
    let exact: Vec<Complex64> = targets
        .iter()
        .map(|&p| airy_solution(energy, p).map(|(u, _)| Complex64::new(u, 0.0)))
        .collect::<Result<_, _>>()?;
    let mut t = Table::create(
        out,
        "interior_airy.csv",
        &[
            "n",
            "max_error",
            "green_residual",
            "single_norm",
            "double_norm",
            "iterations",
        ],
    )?;
    let mut lines = Vec::new();
    for &n in &sweep {
        let problem = BieProblem::interior(curve.clone(), n, energy).with_fs(*fs);
        let (u, un) = boundary_traces(&curve, n, real_field(energy))?;
        let sys = fill_matrix(&problem, &u)?;
        let (density, iters) = solve(&sys, opts)?;
        let field = eval_solution(&problem, &sys.nodes, &density, &targets)?;
        let err = field
            .values
            .iter()
            .zip(&exact)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        let g = greens_identity_residual(&curve, n, energy, fs, &u, &un)?;
        t.row(&[
            n.to_string(),
            num(err),
            num(g.residual),
            num(g.single),
            num(g.double),
            iters.map(|k| k.to_string()).unwrap_or_default(),
        ])?;
        lines.push(format!(
            "N = {n}: max error {err:.2e}, Green residual {:.2e}",
            g.residual
        ));
    }
    let path = t.finish()?;
    lines.push(format!("wrote {}", path.display()));
    Ok(lines.join("\n"))
}

/// Where a grid point sits relative to the obstacle.
fn classify(curve: &PolarCurve, nodes: &NodeSet, p: Point2) -> &'static str {
    if curve.contains(p) {
        return "inside";
    }
    let (i, d) = nodes.nearest(p);
    let delta = nodes.spacing(i);
    if d < TOO_CLOSE_SPACINGS * delta {
        "too_close"
    } else if d < 5.0 * delta {
        "near"
    } else {
        "ok"
    }
}

/// Sound-soft scattering of a point source, with a convergence sweep in N.
pub fn scatter(cfg: &RunConfig, fs: &FsConfig, opts: SolveOpts, out: &Path) -> Result<String, CliError> {
    let energy = cfg.energy.unwrap_or(20.0);
    let curve = cfg.curve(PolarCurve::sine(9.0, 2.0, 5)?)?;
    let sweep = cfg.sweep(&[200, 300, 400, 500, 600])?;
    let [s1, s2] = cfg.source.unwrap_or([-20.0, -10.0]);
    let xs = Point2::new(s1, s2);
    let radius = cfg.circle_radius.unwrap_or(12.0);
    let m = cfg.circle_points.unwrap_or(100);
    let circle: Vec<Point2> = (0..m)
        .map(|k| {
            let th = std::f64::consts::TAU * k as f64 / m as f64;
            Point2::new(radius * th.cos(), radius * th.sin())
        })
        .collect();
    struct Run {
        n: usize,
        fill: f64,
        solve: f64,
        eval: f64,
        iters: Option<usize>,
        values: Vec<Complex64>,
    }
    let mut runs = Vec::new();
    let mut last = None;
    for &n in &sweep {
        let problem = BieProblem::exterior(curve.clone(), n, energy)?.with_fs(*fs);
        let nodes = problem.nodes()?;
        let f: Vec<Complex64> = incident_point_source(xs, &nodes.points, energy, fs)?
            .iter()
            .map(|v| -v)
            .collect();
        let t0 = Instant::now();
        let sys = fill_matrix(&problem, &f)?;
        let fill = t0.elapsed().as_secs_f64();
        let t1 = Instant::now();
        let (density, iters) = solve(&sys, opts)?;
        let solve_s = t1.elapsed().as_secs_f64();
        let t2 = Instant::now();
        let values = eval_solution(&problem, &sys.nodes, &density, &circle)?.values;
        let eval = t2.elapsed().as_secs_f64() / m.max(1) as f64;
        runs.push(Run {
            n,
            fill,
            solve: solve_s,
            eval,
            iters,
            values,
        });
        last = Some((problem, sys.nodes, density));
    }
    let reference = runs.last().map(|r| r.values.clone()).unwrap_or_default();
    let mut t = Table::create(
        out,
        "scatter.csv",
        &[
            "n",
            "fill_seconds",
            "solve_seconds",
            "eval_seconds_per_target",
            "iterations",
            "max_error",
        ],
    )?;
    let mut lines = Vec::new();
    for r in &runs {
        let err = r
            .values
            .iter()
            .zip(&reference)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        t.row(&[
            r.n.to_string(),
            num(r.fill),
            num(r.solve),
            num(r.eval),
            r.iters.map(|k| k.to_string()).unwrap_or_default(),
            num(err),
        ])?;
        lines.push(format!(
            "N = {}: error vs N = {} {err:.2e}",
            r.n,
            runs.last().map_or(0, |l| l.n)
        ));
    }
    lines.push(format!("wrote {}", t.finish()?.display()));
    if let Some((problem, nodes, density)) = last {
        lines.push(total_field_grid(cfg, fs, &problem, &nodes, &density, xs, out)?);
    }
    Ok(lines.join("\n"))
}

fn total_field_grid(
    cfg: &RunConfig,
    fs: &FsConfig,
    problem: &BieProblem,
    nodes: &NodeSet,
    density: &Density,
    xs: Point2,
    out: &Path,
) -> Result<String, CliError> {
    let grid = cfg.grid([-30.0, 30.0], [-30.0, 30.0], [41, 41])?;
    let points = grid.points();
    let status: Vec<&str> = points
        .iter()
        .map(|&p| {
            if p == xs {
                "source"
            } else {
                classify(&problem.curve, nodes, p)
            }
        })
        .collect();
    let live: Vec<Point2> = points
        .iter()
        .zip(&status)
        .filter(|(_, s)| matches!(**s, "ok" | "near"))
        .map(|(p, _)| *p)
        .collect();
    let scat = eval_solution(problem, nodes, density, &live)
        .map_err(CliError::from)?
        .values;
    let inc = incident_point_source(xs, &live, problem.energy, fs)?;
    let mut t = Table::create(
        out,
        "scatter_field.csv",
        &[
            "x1",
            "x2",
            "re_total",
            "im_total",
            "re_scattered",
            "im_scattered",
            "status",
        ],
    )?;
    let mut k = 0;
    for (p, s) in points.iter().zip(&status) {
        if matches!(*s, "ok" | "near") {
            let tot = scat[k] + inc[k];
            t.row(&[
                num(p.x1),
                num(p.x2),
                num(tot.re),
                num(tot.im),
                num(scat[k].re),
                num(scat[k].im),
                s.to_string(),
            ])?;
            k += 1;
        } else {
            let e = String::new;
            t.row(&[num(p.x1), num(p.x2), e(), e(), e(), e(), s.to_string()])?;
        }
    }
    Ok(format!(
        "wrote {} ({} points)",
        t.finish()?.display(),
        points.len()
    ))
}
