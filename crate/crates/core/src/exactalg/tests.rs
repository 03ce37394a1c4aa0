use std::collections::BTreeMap;
use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::error::Error;

fn table(n: usize) -> Arc<VariableTable> {
    Arc::new(VariableTable::chart(n).unwrap())
}

fn xv(t: &Arc<VariableTable>, row: usize, col: usize) -> RationalFunction {
    RationalFunction::var(t, Var::X { row, col }).unwrap()
}

fn q(t: &Arc<VariableTable>) -> RationalFunction {
    let mut acc = &xv(t, 0, 1) * &xv(t, 0, 1);
    for row in 0..t.n() {
        acc = &acc + &(&xv(t, row, 0) * &xv(t, row, 0));
    }
    acc
}

fn q_poly(t: &Arc<VariableTable>) -> Polynomial {
    t.generators()[0].1.clone()
}

fn point(t: &Arc<VariableTable>, entries: &[(Var, RationalScalar)]) -> Vec<RationalScalar> {
    let mut v = vec![int(0); t.len()];
    for (var, val) in entries {
        v[t.index_of(*var).unwrap()] = val.clone();
    }
    v
}

const X11: Var = Var::X { row: 0, col: 0 };
const X12: Var = Var::X { row: 0, col: 1 };
const X21: Var = Var::X { row: 1, col: 0 };
const X31: Var = Var::X { row: 2, col: 0 };

fn sample_point(t: &Arc<VariableTable>) -> Vec<RationalScalar> {
    point(
        t,
        &[
            (X12, int(1)),
            (X11, int(2)),
            (X21, int(0)),
            (X31, int(2)),
        ],
    )
}

#[test]
fn additive_inverse_cancels() {
    let t = table(3);
    let a = xv(&t, 0, 0).checked_div(&q(&t)).unwrap();
    let b = -&a;
    assert!((&a + &b).is_zero());
    assert_eq!((&a + &b).denominator_factors().count(), 0);
}

#[test]
fn monomial_product_squares_the_denominator() {
    let t = table(3);
    let qq = q(&t);
    let a = xv(&t, 0, 1).checked_div(&qq).unwrap();
    let b = xv(&t, 0, 0).checked_div(&qq).unwrap();
    let p = &a * &b;
    assert!(p.denominator_is(&q_poly(&t), 2));
    assert_eq!(p.numerator(), (&xv(&t, 0, 1) * &xv(&t, 0, 0)).numerator());
}

#[test]
fn localization_generator_cancels_against_itself() {
    let t = table(3);
    let one_tx = &RationalFunction::one(&t) + &(&RationalFunction::var(&t, Var::T).unwrap() * &xv(&t, 0, 0));
    let inv = one_tx.recip().unwrap();
    let p = &inv * &one_tx;
    assert_eq!(p.as_constant(), Some(int(1)));
    assert!(p.equals(&RationalFunction::one(&t)));
}

#[test]
fn quotient_rule_on_a_phi_coefficient() {
    let t = table(3);
    let qq = q(&t);
    let (x11, x12, x21, x31) = (xv(&t, 0, 0), xv(&t, 0, 1), xv(&t, 1, 0), xv(&t, 2, 0));
    let mono = &(&(&x12 * &x11) * &x21) * &x31;
    let f = mono.checked_div(&qq).unwrap();
    let df = f.differentiate_var(X11).unwrap();
    let rest = &(&x12 * &x21) * &x31;
    let expected_num = &(&rest * &qq) - &(&(&x11 * &x11) * &rest).scale(&int(2));
    let expected = expected_num.checked_div(&qq.pow(2)).unwrap();
    assert!(df.equals(&expected));
    assert!(df.denominator_is(&q_poly(&t), 2));

    let p = point(&t, &[(X11, frac(1, 3)), (X12, frac(-2, 5)), (X21, int(1)), (X31, frac(3, 4))]);
    let check = fd_check(&f, t.index_of(X11).unwrap(), &p, &frac(1, 10_000)).unwrap();
    assert!(check.rel_error < 1e-6, "{check:?}");
}

#[test]
fn derivative_of_t_free_function_vanishes() {
    let t = table(3);
    let f = q(&t).recip().unwrap();
    assert!(f.differentiate_var(Var::T).unwrap().is_zero());
}

#[test]
fn derivative_of_q() {
    let t = table(3);
    let dq = q(&t).differentiate_var(X11).unwrap();
    assert!(dq.equals(&xv(&t, 0, 0).scale(&int(2))));
}

#[test]
fn unknown_variable_is_a_usage_error() {
    let t = table(3);
    assert!(matches!(
        q(&t).differentiate_var(Var::C(0)),
        Err(Error::UnknownVariable(_))
    ));
    assert!(matches!(
        q(&t).differentiate_var(Var::C(7)),
        Err(Error::UnknownVariable(_))
    ));
}

#[test]
fn mismatched_tables_are_rejected() {
    let a = q(&table(3));
    let b = q(&table(4));
    assert_eq!(arith(&a, &b, ArithOp::Add).unwrap_err(), Error::TableMismatch);
    assert!(arith(&a, &a, ArithOp::Mul).is_ok());
}

#[test]
fn evaluation_examples() {
    let t = table(3);
    assert_eq!(q(&t).evaluate(&sample_point(&t)).unwrap(), int(9));

    let f = xv(&t, 0, 0).checked_div(&q(&t)).unwrap();
    let origin = vec![int(0); t.len()];
    match f.evaluate(&origin) {
        Err(Error::PoleAtPoint { factor }) => assert_eq!(factor, "q"),
        other => panic!("expected a pole, got {other:?}"),
    }

    let one_tx = &RationalFunction::one(&t) + &(&RationalFunction::var(&t, Var::T).unwrap() * &xv(&t, 0, 0));
    let g = one_tx.recip().unwrap();
    let mut at = BTreeMap::new();
    at.insert(Var::T, int(1));
    at.insert(X11, int(1));
    assert_eq!(g.evaluate_map(&at).unwrap(), frac(1, 2));
    at.remove(&Var::T);
    assert!(matches!(g.evaluate_map(&at), Err(Error::UnboundVariable(_))));
}

#[test]
fn degree_info_examples() {
    let t = table(3);
    let qq = q(&t);
    let (x11, x12, x21, x31) = (xv(&t, 0, 0), xv(&t, 0, 1), xv(&t, 1, 0), xv(&t, 2, 0));
    let c2 = RationalFunction::var(&t, Var::C(1)).unwrap();
    let f = (&(&(&(&x12 * &x11) * &x21) * &x31) * &c2).checked_div(&qq).unwrap();
    let info = f.degree_info();
    assert_eq!(info.numerator_total_degree, Some(4));
    assert!(info.is_numerator_homogeneous);
    assert_eq!(info.net_degree, NetDegree::Finite(2));

    let d = f.differentiate_var(X11).unwrap().degree_info();
    assert_eq!(d.numerator_total_degree, Some(5));
    assert!(d.is_numerator_homogeneous);
    assert_eq!(d.denominator_degree, 4);
    assert_eq!(d.net_degree, NetDegree::Finite(1));

    let zero = RationalFunction::zero(&t).degree_info();
    assert_eq!(zero.net_degree, NetDegree::Infinite);
}

#[test]
fn fd_check_examples() {
    let t = table(3);
    let p = point(&t, &[(X11, int(2)), (X12, frac(1, 3)), (X21, frac(-1, 2))]);
    let step = frac(1, 10_000);
    let c = fd_check(&q(&t), t.index_of(X11).unwrap(), &p, &step).unwrap();
    assert_eq!(c.symbolic, int(4));
    assert!(c.rel_error < 1e-6);

    let k = RationalFunction::int(&t, 7);
    let c = fd_check(&k, 0, &p, &step).unwrap();
    assert_eq!(c.symbolic, int(0));
    assert_eq!(c.central_difference, 0.0);

    let g = (&xv(&t, 0, 1) * &xv(&t, 0, 1)).checked_div(&q(&t)).unwrap();
    for var in [X11, X12, X21] {
        let c = fd_check(&g, t.index_of(var).unwrap(), &p, &step).unwrap();
        assert!(c.rel_error < 1e-6, "{var}: {c:?}");
    }

    let origin = vec![int(0); t.len()];
    let f = xv(&t, 0, 0).checked_div(&q(&t)).unwrap();
    assert!(matches!(
        fd_check(&f, 0, &origin, &step),
        Err(Error::PoleAtPoint { .. })
    ));
}

#[test]
fn substitution_into_q_recovers_generator() {
    // q(z^t X) (1 + t x11)^2 = q(X), done by raw substitution.
    let t = table(3);
    let tt = RationalFunction::var(&t, Var::T).unwrap();
    let denom = &RationalFunction::one(&t) + &(&tt * &xv(&t, 0, 0));
    let inv = denom.recip().unwrap();
    let mut subs: Vec<Option<RationalFunction>> = vec![None; t.len()];
    for row in 0..3 {
        subs[t.x(row, 0)] = Some(&xv(&t, row, 0) * &inv);
        let shifted = &xv(&t, row, 1) - &(&(&(&tt * &xv(&t, 0, 1)) * &xv(&t, row, 0)) * &inv);
        subs[t.x(row, 1)] = Some(shifted);
    }
    let qinv = q(&t).recip().unwrap();
    let moved = qinv.substitute(&subs).unwrap();
    let expected = &qinv * &denom.pow(2);
    assert!(moved.equals(&expected));
    assert!(moved.denominator_is(&q_poly(&t), 1));
}

#[test]
fn renders_plain_and_latex() {
    let t = table(3);
    let f = (&xv(&t, 0, 1) * &xv(&t, 0, 0)).checked_div(&q(&t).pow(2)).unwrap();
    assert_eq!(f.to_string(), "x11*x12/(q^2)");
    assert_eq!(f.to_latex(), "\\frac{x_{11} x_{12}}{q^{2}}");
    let g = &xv(&t, 1, 0).scale(&frac(-3, 2)) + &RationalFunction::int(&t, 1);
    assert_eq!(g.to_string(), "-3/2*x21 + 1");
}

// Random elements of the localization built from coefficients that occur
// in the deformation field.
fn coefficient_pool(t: &Arc<VariableTable>) -> Vec<RationalFunction> {
    let qq = q(t);
    let (x11, x12, x21, x31) = (xv(t, 0, 0), xv(t, 0, 1), xv(t, 1, 0), xv(t, 2, 0));
    let tt = RationalFunction::var(t, Var::T).unwrap();
    let one_tx = &RationalFunction::one(t) + &(&tt * &x11);
    let quot = |n: RationalFunction, d: &RationalFunction| n.checked_div(d).unwrap();
    vec![
        quot(&(&(&x12 * &x11) * &x21) * &x31, &qq),
        quot(&(&x12 * &x12) * &(&x21 * &x31), &qq),
        quot(-&(&(&x11 * &x11) * &(&x21 * &x21)), &qq),
        quot(&x11.pow(3) * &x31, &qq),
        quot(x21.clone(), &one_tx),
        x12.clone(),
        RationalFunction::int(t, 3),
    ]
}

fn combine(pool: &[RationalFunction], picks: &[(usize, i64)]) -> RationalFunction {
    let t = pool[0].table().clone();
    picks.iter().fold(RationalFunction::zero(&t), |acc, (k, c)| {
        &acc + &pool[*k % pool.len()].scale(&int(*c))
    })
}

fn picks() -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0usize..7, -3i64..4), 1..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn equality_agrees_with_vanishing_difference(a in picks(), b in picks()) {
        let t = table(3);
        let pool = coefficient_pool(&t);
        let (fa, fb) = (combine(&pool, &a), combine(&pool, &b));
        prop_assert!(fa.equals(&fa));
        prop_assert_eq!(fa.equals(&fb), fb.equals(&fa));
        prop_assert_eq!(fa.equals(&fb), (&fa - &fb).is_zero());
        let fc = &fb + &RationalFunction::zero(&t);
        if fa.equals(&fb) {
            prop_assert!(fa.equals(&fc));
        }
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(
        a in picks(), b in picks(),
        coords in prop::collection::vec((-9i64..10, 1i64..5), 8),
    ) {
        let t = table(3);
        let pool = coefficient_pool(&t);
        let (fa, fb) = (combine(&pool, &a), combine(&pool, &b));
        let mut p = vec![int(0); t.len()];
        for (k, (num, den)) in coords.iter().enumerate().take(t.len().min(8)) {
            p[k] = frac(*num, *den);
        }
        let (Ok(va), Ok(vb)) = (fa.evaluate(&p), fb.evaluate(&p)) else {
            return Ok(());
        };
        prop_assert_eq!(arith(&fa, &fb, ArithOp::Add).unwrap().evaluate(&p).unwrap(), &va + &vb);
        prop_assert_eq!(arith(&fa, &fb, ArithOp::Sub).unwrap().evaluate(&p).unwrap(), &va - &vb);
        prop_assert_eq!(arith(&fa, &fb, ArithOp::Mul).unwrap().evaluate(&p).unwrap(), &va * &vb);
    }

    #[test]
    fn mixed_partials_commute(a in picks(), u in 0usize..6, v in 0usize..7) {
        let t = table(3);
        let f = combine(&coefficient_pool(&t), &a);
        let uv = f.differentiate(u).differentiate(v);
        let vu = f.differentiate(v).differentiate(u);
        prop_assert!(uv.equals(&vu));
    }
}
