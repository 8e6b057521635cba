//! Order-16 Alpert quadrature for periodic integrands with a logarithmic
//! singularity at the target.
//!
//! For a 2pi-periodic `f(s) = f1(s) log|s - t| + f2(s)` with smooth `f1`,
//! `f2` and spacing `h = 2pi/N`, the rule is
//!
//! ```text
//! h * sum_{a <= |j| <= N - a} f(t + j h)  +  h * sum_k w_k [f(t + x_k h) + f(t - x_k h)]
//! ```
//!
//! with `a = 10` and 15 auxiliary nodes per side. Nodes and weights solve
//! the moment equations `sum_k w_k x_k^p = -zeta(-p, a)` and
//! `sum_k w_k x_k^p log x_k = zeta'(-p, a)` for `p = 0..15`.
//! Auxiliary-node values of a smooth density are interpolated from the
//! regular grid with 28-point Lagrange stencils.

/// Regular nodes with `|j| < ALPERT_GAP` are dropped.
pub const ALPERT_GAP: usize = 10;
/// Lagrange stencil width for auxiliary-node interpolation.
pub const STENCIL: usize = 28;
/// Smallest grid on which a stencil does not wrap onto itself.
pub const MIN_GRID: usize = 2 * STENCIL;

const NODES: [f64; 15] = [
    8.371529832014113271564e-4,
    1.239382725542636982475e-2,
    6.009290785739467772077e-2,
    1.805991249601927929276e-1,
    4.142832599028030884011e-1,
    7.96474773111242984223e-1,
    1.348993882467058808928,
    2.073471660264395027695,
    2.947904939031493804757,
    3.928129252248611745278,
    4.957203086563111694871,
    5.986360113977494222055,
    6.997957704791519278242,
    7.999888757524622397419,
    8.999998754306119601289,
];

const WEIGHTS: [f64; 15] = [
    3.190919086626234406311e-3,
    2.423621380426338019027e-2,
    7.740135521653087933451e-2,
    1.704889420286369087236e-1,
    3.029123478511308610304e-1,
    4.652220834914616653324e-1,
    6.401489637096768365019e-1,
    8.051212946181061154403e-1,
    9.36241194569864654425e-1,
    1.01435977536907516913,
    1.035167721053656806352,
    1.020308624984610370791,
    1.004798397441513981572,
    1.000395017352309274014,
    1.000007149422536862757,
];

/// One auxiliary node: offset from the target in units of `h`, its weight,
/// and the interpolation coefficients onto regular nodes `target + rel`.
#[derive(Debug, Clone, PartialEq)]
pub struct AuxNode {
    pub offset: f64,
    pub weight: f64,
    pub stencil: Vec<(isize, f64)>,
}

/// The order-16 rule.
#[derive(Debug, Clone, PartialEq)]
pub struct AlpertRule {
    pub order: usize,
    pub gap: usize,
    /// Both sides, 30 nodes in total.
    pub aux: Vec<AuxNode>,
}

/// The embedded order-16 rule with its interpolation stencils.
pub fn alpert_rule() -> AlpertRule {
    let mut aux = Vec::with_capacity(2 * NODES.len());
    for sign in [1.0, -1.0] {
        for (&x, &w) in NODES.iter().zip(&WEIGHTS) {
            let offset = sign * x;
            aux.push(AuxNode {
                offset,
                weight: w,
                stencil: lagrange_stencil(offset),
            });
        }
    }
    AlpertRule {
        order: 16,
        gap: ALPERT_GAP,
        aux,
    }
}

/// Lagrange coefficients at `x` for the `STENCIL` consecutive integers
/// centred on `x`.
fn lagrange_stencil(x: f64) -> Vec<(isize, f64)> {
    let first = x.floor() as isize - (STENCIL as isize / 2 - 1);
    let pts: Vec<isize> = (first..first + STENCIL as isize).collect();
    pts.iter()
        .map(|&j| {
            let mut c = 1.0;
            for &m in &pts {
                if m != j {
                    c *= (x - m as f64) / (j - m) as f64;
                }
            }
            (j, c)
        })
        .collect()
}

impl AlpertRule {
    /// Regular-node offsets `j` used for a grid of `n` points.
    pub fn regular_offsets(&self, n: usize) -> impl Iterator<Item = usize> + '_ {
        self.gap..=n - self.gap
    }

    /// Applies the rule to a function known everywhere, singular at `t`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, t: f64, n: usize) -> f64 {
        let h = std::f64::consts::TAU / n as f64;
        let regular: f64 = self.regular_offsets(n).map(|j| f(t + j as f64 * h)).sum();
        let aux: f64 = self.aux.iter().map(|a| a.weight * f(t + a.offset * h)).sum();
        h * (regular + aux)
    }

    /// Applies the rule to `k(s) * tau(s)` where `k` is known everywhere and
    /// `tau` only at grid nodes `2 pi j / n`; `i` indexes the target node.
    pub fn integrate_sampled<K: Fn(f64) -> f64>(&self, k: K, tau: &[f64], i: usize) -> f64 {
        let n = tau.len();
        let h = std::f64::consts::TAU / n as f64;
        let t = (i as f64) * h;
        let wrap = |j: isize| (i as isize + j).rem_euclid(n as isize) as usize;
        let regular: f64 = self
            .regular_offsets(n)
            .map(|j| k(t + j as f64 * h) * tau[wrap(j as isize)])
            .sum();
        let aux: f64 = self
            .aux
            .iter()
            .map(|a| {
                let v: f64 = a.stencil.iter().map(|&(j, c)| c * tau[wrap(j)]).sum();
                a.weight * k(t + a.offset * h) * v
            })
            .sum();
        h * (regular + aux)
    }
}
