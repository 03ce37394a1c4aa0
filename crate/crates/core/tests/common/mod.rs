//! Closed forms used as independent oracles.
#![allow(dead_code)]

use grassflow::deform::build_q;
use grassflow::exactalg::RationalFunction;
use grassflow::model::{flat, Chart};
use grassflow::torsion::{coordinate_field, VectorField};

// The eight sums of the expansion of q⁻¹ φ' ⊗ φ_i, keyed by (i', ℓ-kind, j').
pub fn displayed_coefficient(chart: &Chart, i: usize, ip: usize, l: usize, jp: usize, k: usize) -> RationalFunction {
    let x = |r, c| chart.x(r, c);
    let (x11, x12, xi1, xk1) = (x(0, 0), x(0, 1), x(i, 0), x(k, 0));
    let mono = |fs: &[&RationalFunction], sign: i64| {
        fs.iter().fold(chart.int(sign), |acc, f| &acc * *f)
    };
    let num = match (ip, l == 0, l == i, jp) {
        (0, true, _, 0) => mono(&[&x12, &x11, &xi1, &xk1], 1),
        (0, _, true, 0) => mono(&[&x12, &x11, &x11, &xk1], -1),
        (1, true, _, 0) => mono(&[&x12, &x12, &xi1, &xk1], 1),
        (1, _, true, 0) => mono(&[&x12, &x12, &x11, &xk1], -1),
        (0, true, _, 1) => mono(&[&x11, &x11, &xi1, &xk1], -1),
        (0, _, true, 1) => mono(&[&x11, &x11, &x11, &xk1], 1),
        (1, true, _, 1) => mono(&[&x12, &x11, &xi1, &xk1], -1),
        (1, _, true, 1) => mono(&[&x12, &x11, &x11, &xk1], 1),
        _ => chart.zero(),
    };
    num.checked_div(&build_q(chart)).unwrap()
}

pub fn for_all_slots(n: usize, mut f: impl FnMut(usize, usize, usize, usize)) {
    for ip in 0..2 {
        for l in 0..n {
            for jp in 0..2 {
                for k in 0..n {
                    f(ip, l, jp, k);
                }
            }
        }
    }
}

pub fn prod(chart: &Chart, fs: &[&RationalFunction], k: i64) -> RationalFunction {
    fs.iter().fold(chart.int(k), |acc, f| &acc * *f)
}

pub fn div(a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
    a.checked_div(b).unwrap()
}

// Ẽ^{2'}_s = ∂^{2'}_s − c_s Σ (x_{1p'} x11² x_{k1} / q) ∂^{p'}_k
pub fn expected_frame_s(chart: &Chart, s: usize) -> VectorField {
    let q = build_q(chart);
    let cs = chart.c(s).unwrap();
    let mut out = coordinate_field(chart, s, 1);
    let x11 = chart.x(0, 0);
    for k in 0..chart.n() {
        for p in 0..2 {
            let term = div(&prod(chart, &[&cs, &chart.x(0, p), &x11, &x11, &chart.x(k, 0)], -1), &q);
            out[flat(k, p)] = &out[flat(k, p)] + &term;
        }
    }
    out
}

// Ẽ^{2'}_1 = ∂^{2'}_1 + Σ c_i (x_{1p'} x11 x_{k1} x_{i1} / q) ∂^{p'}_k
pub fn expected_frame_1(chart: &Chart) -> VectorField {
    let q = build_q(chart);
    let mut out = coordinate_field(chart, 0, 1);
    let x11 = chart.x(0, 0);
    for i in 1..chart.n() {
        let ci = chart.c(i).unwrap();
        for k in 0..chart.n() {
            for p in 0..2 {
                let term = div(&prod(chart, &[&ci, &chart.x(0, p), &x11, &chart.x(k, 0), &chart.x(i, 0)], 1), &q);
                out[flat(k, p)] = &out[flat(k, p)] + &term;
            }
        }
    }
    out
}

// (c_s x11²/q) Σ_k ( x_{k1} ∂^{2'}_k − (2 x_{k1} x12 / q) Σ_{p'} x_{1p'} ∂^{p'}_k )
pub fn expected_bracket(chart: &Chart, s: usize) -> VectorField {
    let q = build_q(chart);
    let cs = chart.c(s).unwrap();
    let (x11, x12) = (chart.x(0, 0), chart.x(0, 1));
    let pre = div(&prod(chart, &[&cs, &x11, &x11], 1), &q);
    let mut out = vec![chart.zero(); 2 * chart.n()];
    for k in 0..chart.n() {
        let xk1 = chart.x(k, 0);
        for p in 0..2 {
            let mut inner = div(&prod(chart, &[&xk1, &x12, &chart.x(0, p)], -2), &q);
            if p == 1 {
                inner = &inner + &xk1;
            }
            out[flat(k, p)] = &pre * &inner;
        }
    }
    out
}

// D = −(c_s x11²/q) Σ_k ( x_{k1} E^{2'}_k − (2 x_{k1} x12/q)(x11 E^{1'}_k + x12 E^{2'}_k) + ... )
// evaluated on E_{1'}: only the E^{1'}_k terms contribute.
pub fn expected_d_leading(chart: &Chart, s: usize) -> Vec<RationalFunction> {
    let q = build_q(chart);
    let cs = chart.c(s).unwrap();
    let (x11, x12) = (chart.x(0, 0), chart.x(0, 1));
    let pre = div(&prod(chart, &[&cs, &x11, &x11], -1), &q);
    (0..chart.n())
        .map(|k| &pre * &div(&prod(chart, &[&chart.x(k, 0), &x12, &x11], -2), &q))
        .collect()
}

// Σ_{i>1} c_i (u a/q + v a/q² + w a/q³), a = x_{i1} x_{r1}, with u, v, w given
// as functions of x11, x12.
pub fn pattern(
    chart: &Chart,
    r: usize,
    u: &RationalFunction,
    v: &RationalFunction,
    w: &RationalFunction,
) -> RationalFunction {
    let q = build_q(chart);
    let q2 = &q * &q;
    let q3 = &q2 * &q;
    let inner = &(&u.checked_div(&q).unwrap() + &v.checked_div(&q2).unwrap()) + &w.checked_div(&q3).unwrap();
    let mut out = chart.zero();
    for i in 1..chart.n() {
        let a = &chart.x(i, 0) * &chart.x(r, 0);
        out = &out + &(&(&chart.c(i).unwrap() * &a) * &inner);
    }
    out
}

