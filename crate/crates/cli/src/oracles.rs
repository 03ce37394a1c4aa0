//! Closed forms the checks compare against, assembled directly from chart
//! variables.

use grassflow::deform::build_q;
use grassflow::exactalg::RationalFunction;
use grassflow::model::{flat, Chart};

fn prod(chart: &Chart, fs: &[&RationalFunction], k: i64) -> RationalFunction {
    fs.iter().fold(chart.int(k), |acc, f| &acc * *f)
}

fn over(a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
    a.checked_div(b).expect("q is a generator of the localization")
}

/// Coefficient of `E^{i'ℓ}_{j'k}` in the summand `q⁻¹ φ' ⊗ φ_i`.
pub fn phi_coefficient(chart: &Chart, i: usize, ip: usize, l: usize, jp: usize, k: usize) -> RationalFunction {
    let (x11, x12, xi1, xk1) = (chart.x(0, 0), chart.x(0, 1), chart.x(i, 0), chart.x(k, 0));
    let num = match (ip, l == 0, l == i, jp) {
        (0, true, _, 0) => prod(chart, &[&x12, &x11, &xi1, &xk1], 1),
        (0, _, true, 0) => prod(chart, &[&x12, &x11, &x11, &xk1], -1),
        (1, true, _, 0) => prod(chart, &[&x12, &x12, &xi1, &xk1], 1),
        (1, _, true, 0) => prod(chart, &[&x12, &x12, &x11, &xk1], -1),
        (0, true, _, 1) => prod(chart, &[&x11, &x11, &xi1, &xk1], -1),
        (0, _, true, 1) => prod(chart, &[&x11, &x11, &x11, &xk1], 1),
        (1, true, _, 1) => prod(chart, &[&x12, &x11, &xi1, &xk1], -1),
        (1, _, true, 1) => prod(chart, &[&x12, &x11, &x11, &xk1], 1),
        _ => chart.zero(),
    };
    over(&num, &build_q(chart))
}

/// `[Ẽ^{2'}_s, Ẽ^{2'}_1] = (c_s x11²/q) Σ_k (x_{k1} ∂^{2'}_k − (2 x_{k1} x12/q) Σ_{p'} x_{1p'} ∂^{p'}_k)`.
pub fn bracket(chart: &Chart, cs: &RationalFunction) -> Vec<RationalFunction> {
    let q = build_q(chart);
    let (x11, x12) = (chart.x(0, 0), chart.x(0, 1));
    let pre = over(&prod(chart, &[cs, &x11, &x11], 1), &q);
    let mut out = vec![chart.zero(); 2 * chart.n()];
    for k in 0..chart.n() {
        let xk1 = chart.x(k, 0);
        for p in 0..2 {
            let mut inner = over(&prod(chart, &[&xk1, &x12, &chart.x(0, p)], -2), &q);
            if p == 1 {
                inner = &inner + &xk1;
            }
            out[flat(k, p)] = &pre * &inner;
        }
    }
    out
}

/// Leading part of `D(E_{1'})`: `2 c_s x11³ x12 x_{k1} / q²`.
pub fn d_leading(chart: &Chart, cs: &RationalFunction) -> Vec<RationalFunction> {
    let q = build_q(chart);
    let (x11, x12) = (chart.x(0, 0), chart.x(0, 1));
    (0..chart.n())
        .map(|k| over(&prod(chart, &[cs, &x11, &x11, &x11, &x12, &chart.x(k, 0)], 2), &(&q * &q)))
        .collect()
}

/// `Σ_{i>1} c_i (u/q + v/q² + w/q³) x_{i1} x_{r1}`.
pub fn c_pattern(
    chart: &Chart,
    c: &[RationalFunction],
    r: usize,
    uvw: [&RationalFunction; 3],
) -> RationalFunction {
    let q = build_q(chart);
    let q2 = &q * &q;
    let q3 = &q2 * &q;
    let inner = &(&over(uvw[0], &q) + &over(uvw[1], &q2)) + &over(uvw[2], &q3);
    c.iter().enumerate().fold(chart.zero(), |acc, (i, ci)| {
        let a = &chart.x(i + 1, 0) * &chart.x(r, 0);
        &acc + &(&(ci * &a) * &inner)
    })
}

/// The three displayed second derivatives, in order
/// `∇^1_{2'}∇^1_{1'}Φ^{1'1}_{1'r}`, `(∇^1_{2'})²Φ^{2'1}_{1'r}`, `(∇^1_{1'})²Φ^{1'1}_{2'r}`,
/// followed by `κ^{111}_{2'1'r}`.
pub fn curvature_displays(chart: &Chart, c: &[RationalFunction], r: usize) -> [RationalFunction; 4] {
    let (x11, x12) = (chart.x(0, 0), chart.x(0, 1));
    let sq = |f: &RationalFunction| f * f;
    let s = &sq(&x11) + &sq(&x12);
    let k = |v: i64| chart.int(v);
    [
        c_pattern(chart, c, r, [&k(1), &(&s * &k(-2)), &(&(&sq(&x12) * &sq(&x11)) * &k(8))]),
        c_pattern(chart, c, r, [&k(2), &(&sq(&x12) * &k(-10)), &(&sq(&sq(&x12)) * &k(8))]),
        -&c_pattern(chart, c, r, [&k(2), &(&sq(&x11) * &k(-10)), &(&sq(&sq(&x11)) * &k(8))]),
        c_pattern(chart, c, r, [&k(3), &(&s * &k(-7)), &(&(&s * &s) * &k(4))]),
    ]
}
