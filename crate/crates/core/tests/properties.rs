//! Randomized invariants of the fundamental solution and its contour plan.

use gravhelm_core::contour::*;
use gravhelm_core::Point2;
use num_complex::Complex64;
use proptest::prelude::*;

fn point(range: f64) -> impl Strategy<Value = Point2> {
    (-range..range, -range..range).prop_map(|(a, b)| Point2::new(a, b))
}

fn phi(x: Point2, y: Point2, e: f64) -> Complex64 {
    eval_phi(x, y, e, &FsConfig::default().with_derivs(false))
        .unwrap()
        .phi
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn travel_times_solve_the_quartic(a in 1e-3f64..1e3, b in -50.0f64..50.0) {
        let (tm, tp) = ray_travel_times(PhaseParams::new(a, b, 0.0));
        for t in [tm, tp] {
            let t2 = t * t;
            let r = t2 * t2 / 4.0 - b * t2 + a;
            let scale = (t2 * t2).norm() / 4.0 + b.abs() * t2.norm() + a;
            prop_assert!(r.norm() <= 1e-12 * scale, "t = {t}, residual {r}");
        }
    }

    #[test]
    fn saddles_are_stationary(a in 1e-3f64..1e3, b in -50.0f64..50.0) {
        let p = PhaseParams::new(a, b, 0.0);
        let ss = saddle_points(p);
        for s in [ss.s_minus, ss.s_plus] {
            let d = p.dpsi_ds(s);
            let t = s.exp();
            let scale = a / t.norm() + b.abs() * t.norm() + t.norm().powi(3) / 4.0;
            prop_assert!(d.norm() <= 1e-11 * scale, "s = {s}, psi' = {d}");
        }
    }

    #[test]
    fn symmetric(x in point(30.0), y in point(30.0), e in -20.0f64..60.0) {
        prop_assume!(x.dist(y) > 1e-3);
        let (a, b) = (phi(x, y, e), phi(y, x, e));
        prop_assert!((a - b).norm() <= 1e-10 * a.norm().max(1e-3), "{a} vs {b}");
    }

    #[test]
    fn horizontal_translation(x in point(30.0), y in point(30.0), c in -50.0f64..50.0, e in -20.0f64..60.0) {
        prop_assume!(x.dist(y) > 1e-3);
        let shift = Point2::new(c, 0.0);
        let (a, b) = (phi(x, y, e), phi(x + shift, y + shift, e));
        prop_assert!((a - b).norm() <= 1e-10, "{a} vs {b}");
    }

    #[test]
    fn vertical_shift_trades_for_energy(x in point(20.0), y in point(20.0), c in -10.0f64..10.0, e in -20.0f64..60.0) {
        prop_assume!(x.dist(y) > 1e-3);
        let shift = Point2::new(0.0, c);
        let (a, b) = (phi(x, y, e), phi(x + shift, y + shift, e - c));
        prop_assert!((a - b).norm() <= 1e-10, "{a} vs {b}");
    }

    #[test]
    fn gradient_matches_differences(x in point(15.0), y in point(15.0), e in -20.0f64..40.0) {
        prop_assume!(x.dist(y) > 0.1);
        let v = eval_phi(x, y, e, &FsConfig::default()).unwrap();
        let h = 1e-5;
        let d1 = (phi(x, y + Point2::new(h, 0.0), e) - phi(x, y - Point2::new(h, 0.0), e)) / (2.0 * h);
        let d2 = (phi(x, y + Point2::new(0.0, h), e) - phi(x, y - Point2::new(0.0, h), e)) / (2.0 * h);
        prop_assert!((d1 - v.dphi_dy1).norm() <= 1e-6, "{d1} vs {}", v.dphi_dy1);
        prop_assert!((d2 - v.dphi_dy2).norm() <= 1e-6, "{d2} vs {}", v.dphi_dy2);
    }
}

/// Five-point residual of `(Delta + E + x2) Phi(., y)` at `x`.
fn pde_residual(x: Point2, y: Point2, e: f64, h: f64) -> f64 {
    let f = |p: Point2| phi(p, y, e);
    let lap = (f(x + Point2::new(h, 0.0))
        + f(x - Point2::new(h, 0.0))
        + f(x + Point2::new(0.0, h))
        + f(x - Point2::new(0.0, h))
        - 4.0 * f(x))
        / (h * h);
    (lap + (e + x.x2) * f(x)).norm()
}

#[test]
fn pde_residual_is_second_order() {
    let cases = [
        (Point2::new(3.0, 1.0), Point2::new(0.0, 0.0), 5.0),
        (Point2::new(-2.0, 4.0), Point2::new(1.0, -1.0), 20.0),
        (Point2::new(1.5, -3.0), Point2::new(0.0, 0.5), -2.0),
    ];
    for (x, y, e) in cases {
        let (r1, r2) = (pde_residual(x, y, e, 0.02), pde_residual(x, y, e, 0.01));
        let order = (r1 / r2).log2();
        assert!(order >= 1.9, "order {order} at {x:?}, E = {e} ({r1:e}, {r2:e})");
    }
}
