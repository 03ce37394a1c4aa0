//! The acceptance criteria, instantiated at the requested `n`.

use grassflow::curvature::{nabla2_phi, not_pure_trace, project_kappa};
use grassflow::deform::{build_phi, build_phi_symbolic, deformed_theta, invariance_check, transformation_check};
use grassflow::exactalg::{fd_check, frac, int, NetDegree, RationalFunction, RationalScalar};
use grassflow::linalg::{membership, Matrix};
use grassflow::model::{flat, flow_point, flow_point_via_split, holonomy, Chart, ChartPoint};
use grassflow::reptheory::{build_partial1, lemma_conclusion, trace_embedding_vectors};
use grassflow::sampling::{sample_ball, sample_points};
use grassflow::torsion::{in_image_of_partial1, lemma_criterion, lie_bracket, pulled_frame, torsion_component, TorsionEngine};
use grassflow::{Error, Result};

use crate::commands::{degree_ledger_report, parameters, timed};
use crate::oracles;
use crate::report::{CheckReport, Kind};
use crate::Params;

type Check = fn(&Params) -> Result<CheckReport>;

const CRITERIA: [(&str, Check); 11] = [
    ("01-flow-correctness", flow_correctness),
    ("02-q-transformation", q_transformation),
    ("03-eigen-section-laws", eigen_section_laws),
    ("04-deformation-structure", deformation_structure),
    ("05-invariance", invariance),
    ("06-torsion-bracket", torsion_bracket),
    ("07-harmonic-torsion", harmonic_torsion),
    ("08-representation-theory", representation_theory),
    ("09-curvature", curvature),
    ("10-degree-ledger", degree_ledger),
    ("11-differentiation-oracle", differentiation_oracle),
];

fn selected(p: &Params) -> Result<Vec<(&'static str, Check)>> {
    if p.all {
        return Ok(CRITERIA.to_vec());
    }
    if p.checks.is_empty() {
        return Err(Error::Usage("verify needs --all or --check <ids>".into()));
    }
    let mut picked: Vec<(&'static str, Check)> = p
        .checks
        .iter()
        .map(|wanted| {
            CRITERIA
                .iter()
                .find(|(id, _)| {
                    let (num, name) = id.split_at(2);
                    wanted == id || wanted == &name[1..] || wanted.parse::<usize>().ok() == num.parse::<usize>().ok()
                })
                .copied()
                .ok_or_else(|| Error::Usage(format!("unknown check {wanted:?}")))
        })
        .collect::<Result<_>>()?;
    picked.sort_by_key(|(id, _)| *id);
    picked.dedup_by_key(|(id, _)| *id);
    Ok(picked)
}

pub(crate) fn verify(p: &Params) -> Result<Vec<CheckReport>> {
    selected(p)?
        .into_iter()
        .map(|(id, check)| {
            let mut report = timed(p, || check(p))?;
            report.check_id = format!("verify.{id}");
            Ok(report)
        })
        .collect()
}

fn ok(kind: Kind, detail: impl Into<String>) -> Result<CheckReport> {
    Ok(CheckReport::new("", kind, true, detail))
}

fn fail(kind: Kind, detail: impl Into<String>, counterexample: impl Into<String>) -> Result<CheckReport> {
    Ok(CheckReport::new("", kind, false, detail).with_counterexample(counterexample))
}

fn needs_deformation(p: &Params, kind: Kind) -> Option<Result<CheckReport>> {
    (p.n < 3).then(|| Ok(CheckReport::skipped("", kind, "the deformation family needs n >= 3")))
}

fn flow_correctness(p: &Params) -> Result<CheckReport> {
    let chart = Chart::new(p.n)?;
    let x = chart.symbolic_point();
    let (s, t) = (chart.s(), chart.t());
    let moved = flow_point(&x, &t)?;
    if !flow_point(&moved, &s)?.same_value(&flow_point(&x, &(&s + &t))?) {
        return fail(Kind::SymbolicIdentity, "group law", "z^s z^t != z^(s+t)");
    }
    let rhs = holonomy(&moved, &s)?.mul(&holonomy(&x, &t)?)?;
    if !holonomy(&x, &(&s + &t))?.same_value(&rhs) {
        return fail(Kind::SymbolicIdentity, "holonomy cocycle", "p_(s+t) != p_s(z^t X) p_t(X)");
    }
    if !flow_point_via_split(&x, &t)?.same_value(&moved) {
        return fail(Kind::SymbolicIdentity, "split formula", "X_f + X_d/(1+t x11) != closed form");
    }
    ok(Kind::SymbolicIdentity, "group law, holonomy cocycle and split formula hold symbolically in s, t")
}

fn q_of(x: &ChartPoint<RationalFunction>) -> RationalFunction {
    (0..x.rows()).fold(x.get(0, 1) * x.get(0, 1), |acc, k| &acc + &(x.get(k, 0) * x.get(k, 0)))
}

fn q_transformation(p: &Params) -> Result<CheckReport> {
    let chart = Chart::new(p.n)?;
    let x = chart.symbolic_point();
    let y = flow_point(&x, &chart.t())?;
    let d = &chart.one() + &(&chart.t() * &chart.x(0, 0));
    let lhs = &q_of(&y) * &d.pow(2);
    if lhs.equals(&q_of(&x)) {
        ok(Kind::SymbolicIdentity, "q(z^t X)(1+t x11)^2 = q(X)")
    } else {
        fail(Kind::SymbolicIdentity, "q transformation", lhs.to_string())
    }
}

fn eigen_section_laws(p: &Params) -> Result<CheckReport> {
    let chart = Chart::new(p.n)?;
    let laws = transformation_check(&chart.symbolic_point(), &chart.t())?;
    match laws.iter().find(|l| !l.holds) {
        Some(l) => fail(Kind::SymbolicIdentity, "transformation law", format!("{} with factor {}", l.name, l.factor)),
        None => ok(Kind::SymbolicIdentity, format!("{} transformation laws hold", laws.len())),
    }
}

fn deformation_structure(p: &Params) -> Result<CheckReport> {
    if let Some(r) = needs_deformation(p, Kind::SymbolicIdentity) {
        return r;
    }
    let n = p.n;
    let chart = Chart::new(n)?;
    let field = build_phi_symbolic(&chart)?;
    for ip in 0..2 {
        for l in 0..n {
            for jp in 0..2 {
                for k in 0..n {
                    let expected = (1..n).try_fold(chart.zero(), |acc, i| {
                        Ok::<_, Error>(&acc + &(&chart.c(i)? * &oracles::phi_coefficient(&chart, i, ip, l, jp, k)))
                    })?;
                    if !field.get(ip, l, jp, k).equals(&expected) {
                        return fail(
                            Kind::SymbolicIdentity,
                            "coefficient expansion",
                            format!("Phi^({}'{})_({}'{}) = {}", ip + 1, l + 1, jp + 1, k + 1, field.get(ip, l, jp, k)),
                        );
                    }
                }
            }
        }
    }
    if !field.is_square_zero()? {
        return fail(Kind::SymbolicIdentity, "square zero", "Phi^2 != 0");
    }
    if !field.partial_traces_vanish() {
        return fail(Kind::SymbolicIdentity, "partial traces", "a partial trace is nonzero");
    }
    let theta = deformed_theta(&field)?;
    if !theta.forward.mul(&theta.inverse)?.same_value(&Matrix::identity_like(2 * n, &chart.one())) {
        return fail(Kind::SymbolicIdentity, "inverse", "(Id+Phi)(Id-Phi) != Id");
    }
    ok(Kind::SymbolicIdentity, format!("{} coefficients match the expansion; Phi^2 = 0; traces vanish; (Id+Phi)(Id-Phi) = Id", 4 * n * n))
}

fn invariance(p: &Params) -> Result<CheckReport> {
    if let Some(r) = needs_deformation(p, Kind::SymbolicIdentity) {
        return r;
    }
    let chart = Chart::new(p.n)?;
    if invariance_check(&chart, &build_phi_symbolic(&chart)?, &chart.t())? {
        ok(Kind::SymbolicIdentity, "conjugation identity holds for symbolic t and c")
    } else {
        fail(Kind::SymbolicIdentity, "invariance", "conjugation identity fails")
    }
}

fn torsion_bracket(p: &Params) -> Result<CheckReport> {
    if let Some(r) = needs_deformation(p, Kind::SymbolicIdentity) {
        return r;
    }
    let chart = Chart::new(p.n)?;
    let field = build_phi_symbolic(&chart)?;
    let frame = pulled_frame(&field);
    for s in 1..p.n {
        let cs = chart.c(s)?;
        let bracket = lie_bracket(chart.table(), &frame[flat(s, 1)], &frame[flat(0, 1)]);
        let expected = oracles::bracket(&chart, &cs);
        if !bracket.iter().zip(&expected).all(|(a, b)| a.equals(b)) {
            return fail(Kind::SymbolicIdentity, "bracket closed form", format!("s = {}", s + 1));
        }
        let tc = torsion_component(&chart, &field, s)?;
        for (k, lead) in oracles::d_leading(&chart, &cs).iter().enumerate() {
            let remainder = &tc.d_of_e1prime[k] - lead;
            if remainder.degree_info().min_net_degree() < NetDegree::Finite(3) {
                return fail(Kind::SymbolicIdentity, "D(E_1') remainder", format!("s = {}, k = {}: {remainder}", s + 1, k + 1));
            }
        }
    }
    ok(Kind::SymbolicIdentity, "bracket matches for every s; D(E_1') leading term 2 c_s x11^3 x12 x_k1/q^2, remainder net degree >= 3")
}

fn harmonic_torsion(p: &Params) -> Result<CheckReport> {
    if let Some(r) = needs_deformation(p, Kind::OracleAgreement) {
        return r;
    }
    let n = p.n;
    let chart = Chart::new(n)?;
    let mut c = vec![RationalScalar::from(int(0)); n - 1];
    c[0] = int(1);
    let s = 1;
    let image = build_partial1(n).image;
    let engine = TorsionEngine::new(&chart, &build_phi(&chart, &parameters(&chart, Some(&c))?)?);
    let zero = vec![int(0); n - 1];
    let flat_engine = TorsionEngine::new(&chart, &build_phi(&chart, &parameters(&chart, Some(&zero))?)?);
    let mut count = 0;
    for r in 1..=p.sample_balls {
        for x in sample_ball(n, r, p.points_per_ball, s, p.seed) {
            let values = chart.bind(&x, &[])?;
            let t = engine.torsion_at(&values)?;
            let point = grassflow::model::format_point(&x);
            if !lemma_criterion(&t, s) {
                return fail(Kind::OracleAgreement, "lemma criterion", point);
            }
            if in_image_of_partial1(&t, &image)? {
                return fail(Kind::OracleAgreement, "torsion in Im d1", point);
            }
            if !flat_engine.torsion_at(&values)?.is_zero() {
                return fail(Kind::OracleAgreement, "c = 0 torsion nonzero", point);
            }
            count += 1;
        }
    }
    ok(
        Kind::OracleAgreement,
        format!("{count} points in {} balls: lemma true, torsion outside Im d1; c = 0 torsion zero", p.sample_balls),
    )
}

fn representation_theory(p: &Params) -> Result<CheckReport> {
    let n = p.n;
    let two = build_partial1(2);
    if two.rank() != 24 || !two.is_surjective() {
        return fail(Kind::Dimension, "n = 2 surjectivity", format!("rank {}", two.rank()));
    }
    let map = build_partial1(n);
    if map.kernel_dim != 2 * n {
        return fail(Kind::Dimension, "kernel dimension", map.kernel_dim.to_string());
    }
    if n >= 3 && map.complement_dim() != 2 * n * (n - 2) * (n + 1) {
        return fail(Kind::Dimension, "complement dimension", map.complement_dim().to_string());
    }
    let t = trace_embedding_vectors(n);
    for v in t.first.iter().chain(&t.second) {
        if !membership(v, &map.image)? {
            return fail(Kind::Dimension, "trace vector outside Im d1", format!("{v:?}"));
        }
    }
    let e = |len: usize, k: usize| -> Vec<RationalScalar> { (0..len).map(|j| int(i64::from(j == k))).collect() };
    for s in 1..n {
        for b in map.image.basis() {
            if !lemma_conclusion(n, b, &e(2, 1), &e(n, s), &e(n, 0), &e(2, 0)) {
                return fail(Kind::Dimension, "lemma on image basis", format!("s = {}", s + 1));
            }
        }
    }
    ok(
        Kind::Dimension,
        format!(
            "rank 24 at n = 2; kernel {}; complement {}; trace vectors in image; lemma on {} basis vectors",
            map.kernel_dim,
            map.complement_dim(),
            map.image.dim()
        ),
    )
}

fn curvature(p: &Params) -> Result<CheckReport> {
    if let Some(r) = needs_deformation(p, Kind::SymbolicIdentity) {
        return r;
    }
    let n = p.n;
    let chart = Chart::new(n)?;
    let c = parameters(&chart, None)?;
    let d2 = nabla2_phi(&chart, &build_phi(&chart, &c)?);
    let kappa = project_kappa(&d2);
    for r in 1..n {
        let [first, second, third, closed] = oracles::curvature_displays(&chart, &c, r);
        let got = [
            d2.get(1, 0, 0, 0, 0, 0, 0, r),
            d2.get(1, 0, 1, 0, 1, 0, 0, r),
            d2.get(0, 0, 0, 0, 0, 0, 1, r),
            kappa.get(1, 0, 0, 0, 0, r),
        ];
        for (g, w) in got.iter().zip([&first, &second, &third, &closed]) {
            if !g.equals(w) {
                return fail(Kind::SymbolicIdentity, "second-derivative display", format!("r = {}: {g}", r + 1));
            }
        }
    }
    let mut cv = vec![int(0); n - 1];
    cv[0] = int(1);
    let numeric = project_kappa(&nabla2_phi(&chart, &build_phi(&chart, &parameters(&chart, Some(&cv))?)?));
    for x in sample_points(n, 10, p.seed) {
        if !not_pure_trace(numeric.slice(1, 0), n, &chart.bind(&x, &[])?)? {
            return fail(Kind::SymbolicIdentity, "pure trace", grassflow::model::format_point(&x));
        }
    }
    ok(Kind::SymbolicIdentity, "three displayed derivatives and kappa (3, -7, 4) for every r; not pure trace at 10 points")
}

fn degree_ledger(p: &Params) -> Result<CheckReport> {
    if let Some(r) = needs_deformation(p, Kind::SymbolicIdentity) {
        return r;
    }
    let chart = Chart::new(p.n)?;
    Ok(degree_ledger_report(&chart, &build_phi_symbolic(&chart)?, ""))
}

fn differentiation_oracle(p: &Params) -> Result<CheckReport> {
    if let Some(r) = needs_deformation(p, Kind::Numeric) {
        return r;
    }
    let n = p.n;
    let chart = Chart::new(n)?;
    let field = build_phi_symbolic(&chart)?;
    let coeffs: Vec<&RationalFunction> = field.coefficients().iter().filter(|f| !f.is_zero()).collect();
    let c: Vec<RationalScalar> = (1..n).map(|i| frac(2 * i as i64 - 1, 2)).collect();
    let step = frac(1, 10_000);
    let mut worst = 0.0f64;
    let mut triples = 0;
    let per_point = 2 * n;
    let points = 200usize.div_ceil(per_point) + 1;
    for (k, x) in sample_points(n, points, p.seed.wrapping_add(1)).iter().enumerate() {
        let values = chart.bind_with_c(x, &c)?;
        for j in 0..per_point {
            let f = coeffs[(7 * k + 5 * j) % coeffs.len()];
            let r = fd_check(f, chart.table().x(j / 2, j % 2), &values, &step)?;
            if r.rel_error >= 1e-6 {
                return fail(Kind::Numeric, "central difference", format!("{f} at {}: {}", grassflow::model::format_point(x), r.rel_error));
            }
            worst = worst.max(r.rel_error);
            triples += 1;
        }
    }
    ok(Kind::Numeric, format!("{triples} triples with step 1e-4, worst relative error {worst:.2e}"))
}
