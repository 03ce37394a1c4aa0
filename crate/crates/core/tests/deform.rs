use grassflow::deform::*;
use grassflow::exactalg::{frac, int, Field, NetDegree, RationalScalar};
use grassflow::linalg::{Matrix, MatrixQ};
use grassflow::model::{Chart, ChartPoint};
use proptest::prelude::*;

mod common;
use common::*;

#[test]
fn phi_i_matches_the_expansion() {
    for n in [3, 4] {
        let chart = Chart::new(n).unwrap();
        for i in 1..n {
            let phi = build_phi_i(&chart, i).unwrap();
            for_all_slots(n, |ip, l, jp, k| {
                let expected = displayed_coefficient(&chart, i, ip, l, jp, k);
                assert!(phi.get(ip, l, jp, k).equals(&expected), "n={n} i={i} {ip}{l}{jp}{k}");
            });
        }
    }
}

#[test]
fn phi_c_is_the_parameter_combination() {
    let chart = Chart::new(4).unwrap();
    let phi = build_phi_symbolic(&chart).unwrap();
    for_all_slots(4, |ip, l, jp, k| {
        let expected = (1..4).fold(chart.zero(), |acc, i| {
            &acc + &(&chart.c(i).unwrap() * &displayed_coefficient(&chart, i, ip, l, jp, k))
        });
        assert!(phi.get(ip, l, jp, k).equals(&expected));
    });
}

#[test]
fn sample_coefficient() {
    // Coefficient of E^{1'i}_{2'k} in Φ_i for i = 2, k = 3.
    let chart = Chart::new(3).unwrap();
    let phi = build_phi_i(&chart, 1).unwrap();
    let expected = (&chart.x(0, 0).pow(3) * &chart.x(2, 0)).checked_div(&build_q(&chart)).unwrap();
    assert!(phi.get(0, 1, 1, 2).equals(&expected));
    assert_eq!(phi.get(0, 1, 1, 2).to_string(), "x11^3*x31/q");
}

#[test]
fn nilpotent_and_trace_free_with_symbolic_parameters() {
    for n in [3, 4] {
        let chart = Chart::new(n).unwrap();
        let phi = build_phi_symbolic(&chart).unwrap();
        assert!(phi.is_square_zero().unwrap());
        assert!(phi.partial_traces_vanish());
        let theta = deformed_theta(&phi).unwrap();
        let id = Matrix::identity_like(2 * n, &chart.one());
        assert!(theta.forward.mul(&theta.inverse).unwrap().same_value(&id));
        assert!(theta.inverse.mul(&theta.forward).unwrap().same_value(&id));
    }
}

#[test]
fn factors_are_nilpotent() {
    let chart = Chart::new(4).unwrap();
    let x = chart.symbolic_point();
    let pp = phi_prime(&x);
    assert!(pp.mul(&pp).unwrap().is_zero());
    for i in 1..4 {
        for j in 1..4 {
            assert!(phi_f(&x, i).mul(&phi_f(&x, j)).unwrap().is_zero());
        }
    }
    let combined = (1..4).fold(Matrix::from_fn(4, 4, |_, _| chart.zero()), |acc, i| {
        acc.add(&phi_f(&x, i).map(|v| v * &chart.c(i).unwrap())).unwrap()
    });
    assert!(combined.mul(&combined).unwrap().is_zero());
}

#[test]
fn zero_parameters_give_identity_maps() {
    let chart = Chart::new(3).unwrap();
    let phi = build_phi_numeric(&chart, &[int(0), int(0)]).unwrap();
    assert!(phi.is_zero());
    let theta = deformed_theta(&phi).unwrap();
    let id = Matrix::identity_like(6, &chart.one());
    assert!(theta.forward.same_value(&id) && theta.inverse.same_value(&id));
    assert!(invariance_check(&chart, &phi, &chart.t()).unwrap());
}

#[test]
fn invariant_under_the_flow() {
    for n in [3, 4] {
        let chart = Chart::new(n).unwrap();
        let phi = build_phi_symbolic(&chart).unwrap();
        assert!(invariance_check(&chart, &phi, &chart.t()).unwrap(), "n = {n}");
    }
}

#[test]
fn tensor_product_picks_up_square_factor() {
    let chart = Chart::new(3).unwrap();
    for i in 1..3 {
        assert!(product_pushforward_check(&chart, i, &chart.t()).unwrap());
    }
    // The unnormalized tensor is not invariant by itself.
    let x = chart.symbolic_point();
    let pp = phi_prime(&x);
    let pf = phi_f(&x, 1);
    let field = Matrix::from_fn(6, 6, |a, b| pp.get(a % 2, b % 2) * pf.get(a / 2, b / 2));
    assert!(!conjugation_factor_check(&chart, &field, &chart.t(), &chart.one()).unwrap());
}

#[test]
fn eigen_section_laws_symbolic() {
    for n in [3, 4] {
        let chart = Chart::new(n).unwrap();
        let checks = transformation_check(&chart.symbolic_point(), &chart.t()).unwrap();
        assert_eq!(checks.len(), 8);
        for c in &checks {
            assert!(c.holds, "{} fails for n = {n}", c.name);
        }
    }
}

#[test]
fn q_pulls_back_with_square_factor() {
    let chart = Chart::new(3).unwrap();
    let pull = grassflow::model::FlowPullback::new(&chart, &chart.t()).unwrap();
    let q = build_q(&chart);
    let d = &chart.one() + &(&chart.t() * &chart.x(0, 0));
    assert!((&pull.apply(&q).unwrap() * &d.pow(2)).equals(&q));
}

#[test]
fn degree_ledger() {
    for n in [3, 4] {
        let chart = Chart::new(n).unwrap();
        let q = chart.table().generators()[0].1.clone();
        let phi = build_phi_symbolic(&chart).unwrap();
        assert_eq!(phi.coefficients().len(), 4 * n * n);
        for f in phi.coefficients() {
            let info = f.degree_info();
            assert_eq!(info.numerator_total_degree, Some(4));
            assert!(info.is_numerator_homogeneous);
            assert!(f.denominator_is(&q, 1));
            assert_eq!(info.net_degree, NetDegree::Finite(2));
            for v in 0..2 * n {
                let d = f.differentiate(v);
                if d.is_zero() {
                    continue;
                }
                let info = d.degree_info();
                assert_eq!(info.numerator_total_degree, Some(5));
                assert!(info.is_numerator_homogeneous);
                assert!(d.denominator_is(&q, 2));
            }
        }
    }
}

fn numeric_point(n: usize) -> impl Strategy<Value = (MatrixQ, Vec<RationalScalar>)> {
    (
        prop::collection::vec((-4i64..5, 1i64..4), 2 * n),
        prop::collection::vec(-3i64..4, n - 1),
    )
        .prop_map(move |(x, c)| {
            let x = MatrixQ::new(n, 2, x.into_iter().map(|(p, q)| frac(p, q)).collect()).unwrap();
            (x, c.into_iter().map(int).collect())
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn unipotent_at_numeric_points((x, c) in numeric_point(3)) {
        prop_assume!(q_at(&x) != int(0));
        let phi = phi_at(&x, &c).unwrap();
        let theta = deformed_theta(&phi).unwrap();
        prop_assert_eq!(theta.forward.determinant().unwrap(), int(1));
    }

    #[test]
    fn numeric_and_symbolic_phi_agree((x, c) in numeric_point(3)) {
        prop_assume!(q_at(&x) != int(0));
        let chart = Chart::new(3).unwrap();
        let symbolic = build_phi_symbolic(&chart).unwrap();
        let values = chart.bind_with_c(&x, &c).unwrap();
        let numeric = phi_at(&x, &c).unwrap();
        for (a, b) in symbolic.coefficients().iter().zip(numeric.coefficients()) {
            prop_assert_eq!(&a.evaluate(&values).unwrap(), b);
        }
    }

    #[test]
    fn laws_hold_numerically((x, _c) in numeric_point(4), t in (-3i64..4, 1i64..3)) {
        let t = frac(t.0, t.1);
        prop_assume!(x.get(0, 0) * &t != int(-1));
        let checks = transformation_check(&x, &t).unwrap();
        prop_assert!(checks.iter().all(|c| c.holds));
    }
}

#[test]
fn pole_on_strongly_fixed_set() {
    let x: ChartPoint<RationalScalar> = MatrixQ::zeros(3, 2);
    assert!(phi_at(&x, &[int(1), int(0)]).is_err());
    assert!(q_at(&x).is_zero_elem());
}
