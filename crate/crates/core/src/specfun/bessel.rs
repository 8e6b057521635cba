use num_complex::Complex64;
use std::f64::consts::PI;

use super::SpecFunResult;
use crate::error::SpecFunError;

/// Largest argument accepted by [`hankel0`].
pub const HANKEL_MAX: f64 = 1e3;
/// Power series below, Hankel asymptotic expansion above.
const SWITCH: f64 = 12.0;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_6;

/// `H0^(1)(x) = J0(x) + i Y0(x)` for `0 < x <= 1000`.
pub fn hankel0(x: f64) -> Result<Complex64, SpecFunError> {
    hankel0_with_error(x).map(|r| r.value)
}

pub fn hankel0_with_error(x: f64) -> Result<SpecFunResult<Complex64>, SpecFunError> {
    check(x)?;
    let (j0, y0, err) = order_zero(x);
    Ok(SpecFunResult {
        value: Complex64::new(j0, y0),
        est_error: err,
    })
}

/// `(J0(x), Y0(x))`.
pub fn bessel_j0_y0(x: f64) -> Result<(f64, f64), SpecFunError> {
    check(x)?;
    let (j, y, _) = order_zero(x);
    Ok((j, y))
}

/// `(J1(x), Y1(x))`; `J0' = -J1` and `Y0' = -Y1`.
pub fn bessel_j1_y1(x: f64) -> Result<(f64, f64), SpecFunError> {
    check(x)?;
    Ok(if x <= SWITCH {
        series_one(x)
    } else {
        asymptotic(1, x).0
    })
}

fn check(x: f64) -> Result<(), SpecFunError> {
    if x > 0.0 && x <= HANKEL_MAX {
        Ok(())
    } else {
        Err(SpecFunError::OutOfRange {
            arg: x,
            lo: 0.0,
            hi: HANKEL_MAX,
        })
    }
}

fn order_zero(x: f64) -> (f64, f64, f64) {
    if x <= SWITCH {
        let (j, y, mag) = series_zero(x);
        (j, y, 4.0 * f64::EPSILON * mag)
    } else {
        let ((j, y), tail) = asymptotic(0, x);
        (j, y, tail + 4.0 * f64::EPSILON * x)
    }
}

fn series_zero(x: f64) -> (f64, f64, f64) {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut j = 1.0;
    let mut ysum = 0.0;
    let mut harmonic = 0.0;
    let mut mag = 1.0;
    for k in 1..200 {
        let kf = k as f64;
        term *= -q / (kf * kf);
        harmonic += 1.0 / kf;
        j += term;
        ysum -= harmonic * term;
        mag += term.abs() * (1.0 + harmonic);
        if term.abs() * (1.0 + harmonic) < 1e-18 {
            break;
        }
    }
    let lg = (0.5 * x).ln() + EULER_GAMMA;
    let y = 2.0 / PI * (lg * j + ysum);
    (j, y, mag * (1.0 + lg.abs()))
}

fn series_one(x: f64) -> (f64, f64) {
    let half = 0.5 * x;
    let q = half * half;
    // term_k = (-1)^k (x/2)^{2k+1} / (k! (k+1)!)
    let mut term = half;
    let mut j = term;
    let mut h_k = 0.0;
    let mut h_k1 = 1.0;
    let mut s = (h_k + h_k1) * term;
    for k in 1..200 {
        let kf = k as f64;
        term *= -q / (kf * (kf + 1.0));
        h_k += 1.0 / kf;
        h_k1 += 1.0 / (kf + 1.0);
        j += term;
        s += (h_k + h_k1) * term;
        if term.abs() * (h_k + h_k1) < 1e-18 {
            break;
        }
    }
    let y = 2.0 / PI * ((half.ln() + EULER_GAMMA) * j) - 2.0 / (PI * x) - s / PI;
    (j, y)
}

/// Hankel expansion for order `nu` in {0, 1}; returns `((J, Y), tail)`.
fn asymptotic(nu: u32, x: f64) -> ((f64, f64), f64) {
    let mu = 4.0 * (nu * nu) as f64;
    let (mut p, mut q) = (0.0, 0.0);
    let mut a = 1.0; // a_k(nu) / x^k
    let mut last = f64::INFINITY;
    let mut tail = 0.0;
    for k in 0..200usize {
        if k > 0 {
            let kf = k as f64;
            let odd = 2.0 * kf - 1.0;
            a *= (mu - odd * odd) / (kf * 8.0 * x);
        }
        if a.abs() > last {
            break;
        }
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * a;
        } else {
            q += sign * a;
        }
        last = a.abs();
        tail = a.abs();
        if tail < 1e-17 {
            break;
        }
    }
    let chi = x - (0.5 * nu as f64 + 0.25) * PI;
    let (sn, cs) = chi.sin_cos();
    let amp = (2.0 / (PI * x)).sqrt();
    ((amp * (p * cs - q * sn), amp * (p * sn + q * cs)), amp * tail)
}

#[cfg(test)]
mod tests {
    use super::*;

    // (x, J0, Y0, J1, Y1) from a 30-digit reference evaluation
    const REF: &[(f64, f64, f64, f64, f64)] = &[
        (
            0.01,
            0.99997500015624956597,
            -3.0054556370836459445,
            0.0049999375002604162282,
            -63.678596282060655049,
        ),
        (
            0.5,
            0.93846980724081290423,
            -0.44451873350670655715,
            0.24226845767487388638,
            -1.4714723926702430692,
        ),
        (
            1.0,
            0.76519768655796655145,
            0.088256964215676957983,
            0.44005058574493351596,
            -0.78121282130028871655,
        ),
        (
            2.0,
            0.22389077914123566805,
            0.5103756726497451196,
            0.5767248077568733872,
            -0.10703243154093754689,
        ),
        (
            5.0,
            -0.17759677131433830435,
            -0.30851762524903378007,
            -0.32757913759146522204,
            0.1478631433912268448,
        ),
        (
            11.9,
            0.02504944169958964508,
            -0.22983321394337506407,
            -0.22898324966192405505,
            -0.034711498334030609833,
        ),
        (
            12.1,
            0.069666773606807311849,
            -0.21843838055092548565,
            -0.21574897337692480827,
            -0.078736931451395745616,
        ),
        (
            13.0,
            0.206926102377067811,
            -0.078207864527875911021,
            -0.070318052121778371157,
            -0.21008140842069350592,
        ),
        (
            20.0,
            0.16702466434058315473,
            0.062640596809383831162,
            0.066833124175850045579,
            -0.16551161436252129586,
        ),
        (
            50.0,
            0.055812327669251815005,
            -0.098064995470077079029,
            -0.097511828125175137661,
            -0.056795668562014767942,
        ),
        (
            100.0,
            0.019985850304223122424,
            -0.077244313365083152254,
            -0.077145352014112158033,
            -0.020372312002759793305,
        ),
        (
            500.0,
            -0.034100556880731998265,
            0.0105067087398313741,
            0.010472613470372292844,
            0.034111080629137135895,
        ),
        (
            1000.0,
            0.024786686152420174561,
            0.0047159179776228133998,
            0.0047283119070895239176,
            -0.024784331292351778915,
        ),
    ];

    #[test]
    fn matches_reference_values() {
        for &(x, j0, y0, j1, y1) in REF {
            let h = hankel0(x).unwrap();
            assert!((h.re - j0).abs() < 1e-11, "J0({x})");
            assert!((h.im - y0).abs() < 1e-11, "Y0({x})");
            let (a, b) = bessel_j1_y1(x).unwrap();
            assert!((a - j1).abs() < 1e-11, "J1({x})");
            assert!((b - y1).abs() < 1e-11 * (1.0 + y1.abs()), "Y1({x})");
        }
    }

    #[test]
    fn small_argument_limits() {
        let (j, y) = bessel_j0_y0(1e-8).unwrap();
        assert!((j - 1.0).abs() < 1e-15);
        let (_, y2) = bessel_j0_y0(1e-16).unwrap();
        assert!(y < -10.0 && y2 < y);
        // logarithmic growth: Y0(x) ~ (2/pi) log x
        assert!(((y2 - y) - 2.0 / PI * (1e-8f64).ln()).abs() < 1e-10);
    }

    #[test]
    fn wronskian() {
        for x in [0.5, 5.0, 50.0] {
            let (j0, y0) = bessel_j0_y0(x).unwrap();
            let (j1, y1) = bessel_j1_y1(x).unwrap();
            // J0 Y0' - J0' Y0 = -J0 Y1 + J1 Y0
            let w = -j0 * y1 + j1 * y0;
            assert!((w - 2.0 / (PI * x)).abs() < 1e-11, "x = {x}: {w}");
        }
    }

    #[test]
    fn out_of_range() {
        assert!(hankel0(0.0).is_err());
        assert!(hankel0(-1.0).is_err());
        assert!(hankel0(1000.5).is_err());
    }
}
