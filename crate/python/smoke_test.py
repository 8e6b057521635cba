"""Smoke test for the gravhelm extension module.

Build and install first:

    cd crates/python && maturin develop --release
    python python/smoke_test.py
"""

import cmath
import math

import gravhelm


def check(name, ok, detail=""):
    print(f"{'PASS' if ok else 'FAIL'} {name} {detail}".rstrip())
    return ok


def main():
    results = []

    h = gravhelm.hankel0(2.5)
    results.append(check("hankel0 finite", cmath.isfinite(h), f"{h:.6g}"))
    results.append(check("airy Ai(0)", abs(gravhelm.airy_ai(0.0) - 0.355028053887817239) < 1e-15))

    phi, d1, d2 = gravhelm.eval_phi((3.0, 2.0), (0.0, 10.0), 5.0)
    # symmetric in x and y
    phi_swap, _, _ = gravhelm.eval_phi((0.0, 10.0), (3.0, 2.0), 5.0)
    results.append(check("phi symmetric", abs(phi - phi_swap) < 1e-13 * abs(phi), f"{phi:.6g}"))

    # source gradient against a central difference
    step = 1e-5
    plus, _, _ = gravhelm.eval_phi((3.0, 2.0), (step, 10.0), 5.0)
    minus, _, _ = gravhelm.eval_phi((3.0, 2.0), (-step, 10.0), 5.0)
    fd = (plus - minus) / (2 * step)
    results.append(check("gradient", abs(fd - d1) < 1e-7, f"|fd - d1| = {abs(fd - d1):.2e}"))

    many = gravhelm.eval_phi_many([(3.0, 2.0), (-1.0, 4.0)], (0.0, 10.0), 5.0)
    results.append(check("batch matches single", abs(many[0] - phi) < 1e-13 * abs(phi)))

    try:
        gravhelm.eval_phi((1.0, 1.0), (1.0, 1.0), 5.0)
        results.append(check("coincident points rejected", False))
    except ValueError as e:
        results.append(check("coincident points rejected", True, f"({e})"))

    trefoil = gravhelm.PolarCurve(5.0, cos=[0.0, 0.0, 1.5])
    targets = trefoil.interior_points(0.8, 20)
    values, exact, green = gravhelm.interior_airy(trefoil, 200, 10.0, targets)
    err = max(abs(v - e) for v, e in zip(values, exact))
    results.append(check("interior Airy N=200", err < 1e-9, f"max error {err:.2e}, Green residual {green:.2e}"))

    star = gravhelm.PolarCurve(9.0, sin=[0.0, 0.0, 0.0, 0.0, 2.0])
    ring = [(12 * math.cos(t), 12 * math.sin(t)) for t in (0.0, 1.0, 2.0)]
    coarse = gravhelm.scatter_point_source(star, 200, 20.0, (-20.0, -10.0), ring, solver="gmres")
    fine = gravhelm.scatter_point_source(star, 300, 20.0, (-20.0, -10.0), ring, solver="gmres")
    diff = max(abs(a - b) for a, b in zip(coarse, fine))
    results.append(check("scattering N=200 vs 300", diff < 1e-3, f"max difference {diff:.2e}"))

    if not all(results):
        raise SystemExit(1)


if __name__ == "__main__":
    main()
