//! Unrestarted GMRES with modified Gram-Schmidt and Givens rotations.

use num_complex::Complex64;

use super::{Density, NystromSystem};
use crate::error::BieError;

pub const GMRES_MAX_ITERS: usize = 500;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GmresReport {
    pub iterations: usize,
    /// Final relative residual estimate from the Givens recursion.
    pub residual: f64,
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// `<u, v>` conjugate-linear in `u`
fn dot(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

/// Solves `(I + A) tau = g` from a zero initial guess to relative residual `tol`.
pub fn solve_gmres(sys: &NystromSystem, tol: f64) -> Result<(Density, GmresReport), BieError> {
    if !(tol > 0.0) {
        return Err(BieError::Invalid(format!(
            "GMRES tolerance must be positive, got {tol}"
        )));
    }
    let n = sys.len();
    let zero = Complex64::new(0.0, 0.0);
    let beta = norm(&sys.rhs);
    if beta == 0.0 {
        return Ok((
            Density { tau: vec![zero; n] },
            GmresReport {
                iterations: 0,
                residual: 0.0,
            },
        ));
    }
    let max_iters = GMRES_MAX_ITERS.min(n);
    let mut basis: Vec<Vec<Complex64>> = vec![sys.rhs.iter().map(|g| g / beta).collect()];
    // columns of the Hessenberg matrix after rotation
    let mut r: Vec<Vec<Complex64>> = Vec::new();
    let mut rot: Vec<(f64, Complex64)> = Vec::new();
    let mut rhs = vec![Complex64::new(beta, 0.0)];
    let mut residual = 1.0;
    for k in 0..max_iters {
        let mut w = sys.apply(&basis[k]);
        let mut h = Vec::with_capacity(k + 2);
        for q in &basis {
            let hij = dot(q, &w);
            for (wi, qi) in w.iter_mut().zip(q) {
                *wi -= hij * qi;
            }
            h.push(hij);
        }
        let hnext = norm(&w);
        h.push(Complex64::new(hnext, 0.0));
        for (i, &(cs, sn)) in rot.iter().enumerate() {
            let (a, b) = (h[i], h[i + 1]);
            h[i] = cs * a + sn * b;
            h[i + 1] = -sn.conj() * a + cs * b;
        }
        let (a, b) = (h[k], h[k + 1]);
        let den = (a.norm_sqr() + b.norm_sqr()).sqrt();
        let (cs, sn) = if den == 0.0 {
            (1.0, zero)
        } else if a.norm() == 0.0 {
            (0.0, b.conj() / b.norm())
        } else {
            let phase = a / a.norm();
            (a.norm() / den, phase * b.conj() / den)
        };
        h[k] = cs * a + sn * b;
        h[k + 1] = zero;
        rot.push((cs, sn));
        let top = rhs[k];
        rhs[k] = cs * top;
        rhs.push(-sn.conj() * top);
        h.truncate(k + 1);
        r.push(h);
        residual = rhs[k + 1].norm() / beta;
        let done = residual <= tol || hnext <= f64::EPSILON * beta;
        if done || k + 1 == max_iters {
            let y = back_substitute(&r, &rhs[..=k]);
            let mut tau = vec![zero; n];
            for (q, yk) in basis.iter().zip(&y) {
                for (t, qi) in tau.iter_mut().zip(q) {
                    *t += yk * qi;
                }
            }
            if residual <= tol || (done && sys.relative_residual(&tau) <= tol) {
                return Ok((
                    Density { tau },
                    GmresReport {
                        iterations: k + 1,
                        residual,
                    },
                ));
            }
            break;
        }
        basis.push(w.iter().map(|x| x / hnext).collect());
    }
    Err(BieError::NoConvergence {
        iters: max_iters,
        residual,
    })
}

fn back_substitute(r: &[Vec<Complex64>], b: &[Complex64]) -> Vec<Complex64> {
    let m = b.len();
    let mut y = vec![Complex64::new(0.0, 0.0); m];
    for i in (0..m).rev() {
        let mut s = b[i];
        for j in i + 1..m {
            s -= r[j][i] * y[j];
        }
        y[i] = s / r[i][i];
    }
    y
}
