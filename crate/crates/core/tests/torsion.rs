use grassflow::deform::{build_phi, build_phi_numeric, build_phi_symbolic, build_q};
use grassflow::exactalg::{frac, int, NetDegree, RationalFunction, RationalScalar};
use grassflow::linalg::{Matrix, MatrixQ};
use grassflow::model::{flat, Chart};
use grassflow::reptheory::build_partial1;
use grassflow::sampling::{sample_ball, sample_points};
use grassflow::torsion::*;
use grassflow::Error;
use proptest::prelude::*;

mod common;
use common::*;

fn all_zero(v: &[RationalFunction]) -> bool {
    v.iter().all(RationalFunction::is_zero)
}

fn same(a: &[RationalFunction], b: &[RationalFunction]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.equals(y))
}

#[test]
fn pulled_frame_matches_closed_forms() {
    for n in [3, 4] {
        let chart = Chart::new(n).unwrap();
        let phi = build_phi_symbolic(&chart).unwrap();
        let frame = pulled_frame(&phi);
        assert!(same(&frame[flat(0, 1)], &expected_frame_1(&chart)));
        for s in 1..n {
            assert!(same(&frame[flat(s, 1)], &expected_frame_s(&chart, s)));
        }
    }
}

#[test]
fn frame_coefficient_on_first_column() {
    let chart = Chart::new(3).unwrap();
    let frame = pulled_frame(&build_phi_symbolic(&chart).unwrap());
    let q = build_q(&chart);
    let cs = chart.c(2).unwrap();
    let x11 = chart.x(0, 0);
    for k in 0..3 {
        let expected = div(&prod(&chart, &[&cs, &x11, &x11, &x11, &chart.x(k, 0)], -1), &q);
        assert!(frame[flat(2, 1)][flat(k, 0)].equals(&expected));
    }
}

#[test]
fn deformed_structure_recovers_the_parallel_frame() {
    for n in [3, 4] {
        let chart = Chart::new(n).unwrap();
        let phi = build_phi_symbolic(&chart).unwrap();
        let forward = Matrix::identity_like(2 * n, &chart.one()).add(&phi.matrix()).unwrap();
        for (b, field) in pulled_frame(&phi).iter().enumerate() {
            let image = forward.mul_vec(field).unwrap();
            assert!(same(&image, &coordinate_field(&chart, b / 2, b % 2)));
        }
    }
}

#[test]
fn bracket_matches_closed_form() {
    for n in [3, 4] {
        let chart = Chart::new(n).unwrap();
        let phi = build_phi_symbolic(&chart).unwrap();
        let frame = pulled_frame(&phi);
        for s in 1..n {
            let bracket = lie_bracket(chart.table(), &frame[flat(s, 1)], &frame[flat(0, 1)]);
            assert!(same(&bracket, &expected_bracket(&chart, s)), "n={n} s={s}");
            let reversed = lie_bracket(chart.table(), &frame[flat(0, 1)], &frame[flat(s, 1)]);
            let negated: Vec<_> = bracket.iter().map(|v| -v).collect();
            assert!(same(&reversed, &negated));
        }
    }
}

#[test]
fn torsion_component_is_minus_the_bracket() {
    let chart = Chart::new(3).unwrap();
    let phi = build_phi_symbolic(&chart).unwrap();
    let frame = pulled_frame(&phi);
    let tc = torsion_component(&chart, &phi, 2).unwrap();
    let bracket = lie_bracket(chart.table(), &frame[flat(2, 1)], &frame[flat(0, 1)]);
    assert!(same(&tc.bracket, &bracket));
    let negated: Vec<_> = bracket.iter().map(|v| -v).collect();
    assert!(same(&tc.torsion, &negated));
}

#[test]
fn d_of_e1prime_leading_term_and_remainder() {
    for n in [3, 4] {
        let chart = Chart::new(n).unwrap();
        let phi = build_phi_symbolic(&chart).unwrap();
        let q = build_q(&chart);
        for s in 1..n {
            let tc = torsion_component(&chart, &phi, s).unwrap();
            let leading = expected_d_leading(&chart, s);
            let cs = chart.c(s).unwrap();
            let (x11, x12) = (chart.x(0, 0), chart.x(0, 1));
            for k in 0..n {
                // 2 c_s x11³ x12 x_{k1} / q²
                let closed = div(&prod(&chart, &[&cs, &x11, &x11, &x11, &x12, &chart.x(k, 0)], 2), &(&q * &q));
                assert!(leading[k].equals(&closed));
                let remainder = &tc.d_of_e1prime[k] - &leading[k];
                let info = remainder.degree_info();
                assert!(info.min_net_degree() >= NetDegree::Finite(3), "n={n} s={s} k={k}");
                let lead_info = leading[k].degree_info();
                assert_eq!(lead_info.net_degree, NetDegree::Finite(1));
            }
        }
    }
}

#[test]
fn vanishing_parameter_kills_the_component() {
    let chart = Chart::new(4).unwrap();
    // c_3 = 0 while c_2, c_4 stay symbolic.
    let c = vec![chart.c(1).unwrap(), chart.zero(), chart.c(3).unwrap()];
    let phi = build_phi(&chart, &c).unwrap();
    let tc = torsion_component(&chart, &phi, 2).unwrap();
    assert!(all_zero(&tc.bracket));
    assert!(all_zero(&tc.d));
    assert!(all_zero(&tc.d_of_e1prime));
}

#[test]
fn flat_structure_is_torsion_free() {
    for n in [3, 4] {
        let chart = Chart::new(n).unwrap();
        let phi = build_phi_numeric(&chart, &vec![int(0); n - 1]).unwrap();
        let engine = TorsionEngine::new(&chart, &phi);
        for x in sample_points(n, 5, 1) {
            let t = engine.torsion_at(&chart.bind(&x, &[]).unwrap()).unwrap();
            assert!(t.is_zero());
            assert!(!lemma_criterion(&t, 1));
        }
    }
}

#[test]
fn antisymmetric_at_random_points() {
    let chart = Chart::new(3).unwrap();
    let phi = build_phi_numeric(&chart, &[frac(2, 3), int(-1)]).unwrap();
    let engine = TorsionEngine::new(&chart, &phi);
    for x in sample_points(3, 20, 2) {
        let t = engine.torsion_at(&chart.bind(&x, &[]).unwrap()).unwrap();
        assert!(t.is_antisymmetric());
    }
}

#[test]
fn assembled_component_agrees_with_symbolic_component() {
    let chart = Chart::new(3).unwrap();
    let c = [int(1), frac(1, 2)];
    let phi = build_phi_numeric(&chart, &c).unwrap();
    let tc = torsion_component(&chart, &phi, 1).unwrap();
    let engine = TorsionEngine::new(&chart, &phi);
    for x in sample_points(3, 5, 3) {
        let values = chart.bind(&x, &[]).unwrap();
        let t = engine.torsion_at(&values).unwrap();
        let d: Vec<RationalScalar> = tc.d.iter().map(|f| f.evaluate(&values).unwrap()).collect();
        assert_eq!(t.value(flat(1, 1), flat(0, 1)), &d[..]);
    }
}

#[test]
fn generic_point_has_harmonic_torsion() {
    let chart = Chart::new(3).unwrap();
    let phi = build_phi_numeric(&chart, &[int(1), int(0)]).unwrap();
    let image = build_partial1(3).image;
    let x = MatrixQ::from_rows(&[vec![int(1), int(2)], vec![int(-1), int(3)], vec![frac(1, 2), int(1)]]).unwrap();
    let t = assemble_full_torsion(&chart, &phi, &chart.bind(&x, &[]).unwrap()).unwrap();
    assert!(lemma_criterion(&t, 1));
    assert!(!in_image_of_partial1(&t, &image).unwrap());
}

#[test]
fn lemma_verdict_implies_non_membership() {
    let image = build_partial1(3).image;
    let chart = Chart::new(3).unwrap();
    let phi = build_phi_numeric(&chart, &[frac(-3, 2), int(2)]).unwrap();
    let engine = TorsionEngine::new(&chart, &phi);
    let mut certified = 0;
    for x in sample_points(3, 50, 4) {
        let t = engine.torsion_at(&chart.bind(&x, &[]).unwrap()).unwrap();
        for s in 1..3 {
            if lemma_criterion(&t, s) {
                certified += 1;
                assert!(!in_image_of_partial1(&t, &image).unwrap());
            }
        }
    }
    assert_eq!(certified, 100);
}

#[test]
fn pole_on_strongly_fixed_set() {
    let chart = Chart::new(3).unwrap();
    let phi = build_phi_numeric(&chart, &[int(1), int(1)]).unwrap();
    let mut x = MatrixQ::zeros(3, 2);
    x.set(1, 1, int(5));
    let err = assemble_full_torsion(&chart, &phi, &chart.bind(&x, &[]).unwrap()).unwrap_err();
    assert!(matches!(err, Error::PoleAtPoint { .. }));
}

#[test]
fn criterion_holds_in_small_balls() {
    let chart = Chart::new(4).unwrap();
    let phi = build_phi_numeric(&chart, &[int(0), int(1), int(0)]).unwrap();
    let engine = TorsionEngine::new(&chart, &phi);
    for r in [2, 6] {
        for x in sample_ball(4, r, 10, 2, 9) {
            let t = engine.torsion_at(&chart.bind(&x, &[]).unwrap()).unwrap();
            assert!(lemma_criterion(&t, 2));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn antisymmetry_and_soundness(
        coords in prop::collection::vec((-9i64..=9, 1i64..=5), 6),
        c2 in -4i64..=4,
        c3 in -4i64..=4,
    ) {
        let chart = Chart::new(3).unwrap();
        let x = MatrixQ::new(3, 2, coords.iter().map(|&(a, b)| frac(a, b)).collect()).unwrap();
        let values = chart.bind(&x, &[]).unwrap();
        let phi = build_phi_numeric(&chart, &[int(c2), int(c3)]).unwrap();
        match assemble_full_torsion(&chart, &phi, &values) {
            Ok(t) => {
                prop_assert!(t.is_antisymmetric());
                let image = build_partial1(3).image;
                for s in 1..3 {
                    if lemma_criterion(&t, s) {
                        prop_assert!(!in_image_of_partial1(&t, &image).unwrap());
                    }
                }
            }
            Err(e) => {
                let pole = matches!(e, Error::PoleAtPoint { .. });
                prop_assert!(pole);
            }
        }
    }
}
