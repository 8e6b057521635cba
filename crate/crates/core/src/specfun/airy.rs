use std::f64::consts::{FRAC_PI_4, PI};

use super::SpecFunResult;
use crate::error::SpecFunError;

/// Supported argument range for [`airy_ai`].
pub const AIRY_RANGE: f64 = 50.0;

/// Ai(0)
const AI0: f64 = 0.355_028_053_887_817_239_26;
/// -Ai'(0)
const AIP0: f64 = 0.258_819_403_792_806_798_41;

/// Above this the decaying asymptotic series is used directly.
const ASYMPTOTIC_POS: f64 = 8.0;
/// Below `-ASYMPTOTIC_NEG` the oscillatory asymptotic series is used.
const ASYMPTOTIC_NEG: f64 = 8.0;
/// Maclaurin range `[-SERIES_NEG, SERIES_POS]`. Outside it, up to the
/// asymptotic thresholds, values are continued along the Airy ODE: backwards
/// from the decaying asymptotic point on the right, outwards from the series
/// on the left where both solutions oscillate.
const SERIES_POS: f64 = 2.0;
const SERIES_NEG: f64 = 3.0;

/// Airy function of the first kind on `[-50, 50]`.
pub fn airy_ai(z: f64) -> Result<f64, SpecFunError> {
    airy_pair(z).map(|(ai, _)| ai)
}

/// Derivative `Ai'(z)` on `[-50, 50]`.
pub fn airy_ai_prime(z: f64) -> Result<f64, SpecFunError> {
    airy_pair(z).map(|(_, aip)| aip)
}

/// `Ai(z)` with an error estimate.
pub fn airy_ai_with_error(z: f64) -> Result<SpecFunResult<f64>, SpecFunError> {
    check(z)?;
    let (v, _, err) = eval(z);
    Ok(SpecFunResult {
        value: v,
        est_error: err,
    })
}

/// `(Ai(z), Ai'(z))`.
pub fn airy_pair(z: f64) -> Result<(f64, f64), SpecFunError> {
    check(z)?;
    let (v, d, _) = eval(z);
    Ok((v, d))
}

fn check(z: f64) -> Result<(), SpecFunError> {
    if z.is_finite() && z.abs() <= AIRY_RANGE {
        Ok(())
    } else {
        Err(SpecFunError::OutOfRange {
            arg: z,
            lo: -AIRY_RANGE,
            hi: AIRY_RANGE,
        })
    }
}

fn eval(z: f64) -> (f64, f64, f64) {
    if z >= ASYMPTOTIC_POS {
        decaying_asymptotic(z)
    } else if z > SERIES_POS {
        let (ai, aip, err) = decaying_asymptotic(ASYMPTOTIC_POS);
        let (v, d) = taylor_continue(ASYMPTOTIC_POS, ai, aip, z);
        // relative accuracy of the start value is preserved going backwards
        (v, d, err / ai.abs() * v.abs() + 1e-15 * v.abs())
    } else if z >= -SERIES_NEG {
        maclaurin(z)
    } else if z >= -ASYMPTOTIC_NEG {
        let (ai, aip, err) = maclaurin(-SERIES_NEG);
        let (v, d) = taylor_continue(-SERIES_NEG, ai, aip, z);
        (v, d, err + 1e-15)
    } else {
        oscillatory_asymptotic(-z)
    }
}

fn maclaurin(z: f64) -> (f64, f64, f64) {
    let z3 = z * z * z;
    // f = sum a_k, g = sum b_k and their derivatives p_k, q_k
    let (mut a, mut b) = (1.0f64, z);
    let (mut p, mut q) = (0.0, 1.0);
    let (mut f, mut g, mut fp, mut gp) = (a, b, p, q);
    let mut mag = a.abs() + b.abs();
    for k in 1..200 {
        let k3 = 3.0 * k as f64;
        a *= z3 / ((k3 - 1.0) * k3);
        b *= z3 / (k3 * (k3 + 1.0));
        p = if k == 1 {
            0.5 * z * z
        } else {
            p * z3 / ((k3 - 1.0) * (k3 - 3.0))
        };
        q *= z3 / (k3 * (k3 - 2.0));
        f += a;
        g += b;
        fp += p;
        gp += q;
        mag += a.abs() + b.abs();
        if a.abs() + b.abs() + p.abs() + q.abs() < 1e-18 * (f.abs() + g.abs() + fp.abs() + gp.abs()) {
            break;
        }
    }
    let ai = AI0 * f - AIP0 * g;
    let aip = AI0 * fp - AIP0 * gp;
    (ai, aip, 2.0 * f64::EPSILON * mag * AI0)
}

/// Coefficients `u_k` of the Airy asymptotic expansions and `v_k`.
fn uv(k: usize) -> (f64, f64) {
    let mut u = 1.0;
    for j in 1..=k {
        let jf = j as f64;
        u *= (6.0 * jf - 5.0) * (6.0 * jf - 3.0) * (6.0 * jf - 1.0) / ((2.0 * jf - 1.0) * 216.0 * jf);
    }
    let kf = k as f64;
    let v = if k == 0 {
        1.0
    } else {
        -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u
    };
    (u, v)
}

fn decaying_asymptotic(z: f64) -> (f64, f64, f64) {
    let zeta = 2.0 / 3.0 * z * z.sqrt();
    let (mut su, mut sv) = (0.0, 0.0);
    let mut last = f64::INFINITY;
    let mut pow = 1.0;
    let mut tail = 0.0;
    for k in 0..60 {
        let (u, v) = uv(k);
        let term = u * pow;
        if term.abs() > last {
            break;
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        su += sign * term;
        sv += sign * v * pow;
        last = term.abs();
        tail = term.abs();
        pow /= zeta;
    }
    let pre = (-zeta).exp() / (2.0 * PI.sqrt());
    let ai = pre / z.powf(0.25) * su;
    let aip = -pre * z.powf(0.25) * sv;
    (ai, aip, (tail + 4.0 * f64::EPSILON) * ai.abs())
}

fn oscillatory_asymptotic(x: f64) -> (f64, f64, f64) {
    let zeta = 2.0 / 3.0 * x * x.sqrt();
    let (mut p, mut q, mut r, mut s) = (0.0, 0.0, 0.0, 0.0);
    let mut last = f64::INFINITY;
    let mut pow = 1.0;
    let mut tail = 0.0;
    for k in 0..80 {
        let (u, v) = uv(k);
        let term = u * pow;
        if term.abs() > last {
            break;
        }
        // even k feed P/R, odd k feed Q/S, with alternating signs within each
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * term;
            r += sign * v * pow;
        } else {
            q += sign * term;
            s += sign * v * pow;
        }
        last = term.abs();
        tail = term.abs();
        pow /= zeta;
    }
    let (sn, cs) = (zeta + FRAC_PI_4).sin_cos();
    let x4 = x.powf(0.25);
    let ai = (sn * p - cs * q) / (PI.sqrt() * x4);
    let aip = -x4 / PI.sqrt() * (cs * r + sn * s);
    (ai, aip, (tail + 4.0 * f64::EPSILON * zeta) / (PI.sqrt() * x4))
}

/// Integrates `y'' = z y` from `z0` to `z1` by Taylor steps; stable for `Ai`
/// when moving towards smaller `z`.
fn taylor_continue(z0: f64, y0: f64, dy0: f64, z1: f64) -> (f64, f64) {
    let steps = ((z0 - z1).abs() / 0.5).ceil().max(1.0) as usize;
    let h = (z1 - z0) / steps as f64;
    let (mut y, mut dy) = (y0, dy0);
    let mut c = z0;
    for _ in 0..steps {
        // coefficients of y(c + h) = sum c_n h^n
        let mut coeffs = [0.0f64; 64];
        coeffs[0] = y;
        coeffs[1] = dy;
        let (mut val, mut der) = (y + dy * h, dy);
        let mut hp = h;
        for n in 0..62 {
            let prev = if n == 0 { 0.0 } else { coeffs[n - 1] };
            coeffs[n + 2] = (c * coeffs[n] + prev) / ((n + 2) as f64 * (n + 1) as f64);
            der += (n + 2) as f64 * coeffs[n + 2] * hp;
            hp *= h;
            let term = coeffs[n + 2] * hp;
            val += term;
            if term.abs() < 1e-18 * val.abs() && n > 4 {
                break;
            }
        }
        y = val;
        dy = der;
        c += h;
    }
    (y, dy)
}
