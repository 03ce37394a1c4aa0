use std::time::Instant;

use grassflow::curvature::{nabla2_phi, not_pure_trace, project_kappa};
use grassflow::deform::{build_phi, invariance_check, EndomorphismField};
use grassflow::exactalg::{format_rational, RationalFunction, RationalScalar};
use grassflow::linalg::{membership, Matrix, Subspace};
use grassflow::model::{flow_point, flow_point_via_split, format_point, holonomy, Chart, ChartPoint};
use grassflow::reptheory::{build_partial1, decomposition_dims, lambda2_dim, lemma_conclusion, trace_embedding_vectors};
use grassflow::sampling::{sample_ball, sample_points};
use grassflow::torsion::{in_image_of_partial1, lemma_criterion, torsion_component, TorsionEngine};
use grassflow::{Error, Result};
use num_traits::Zero;

use crate::oracles;
use crate::report::{CheckReport, Kind};
use crate::Params;

pub(crate) fn timed(p: &Params, f: impl FnOnce() -> Result<CheckReport>) -> Result<CheckReport> {
    let start = Instant::now();
    let mut report = f()?;
    if p.timings {
        report.elapsed_ms = start.elapsed().as_millis() as u64;
    }
    Ok(report)
}

fn usage(msg: &str) -> Error {
    Error::Usage(msg.to_string())
}

pub(crate) fn format_matrix(m: &Matrix<RationalScalar>) -> String {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(format_rational).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join(";")
}

pub(crate) fn render(f: &RationalFunction, latex: bool) -> String {
    if latex {
        f.to_latex()
    } else {
        f.to_string()
    }
}

/// `c` as rational functions: numeric when given, symbolic otherwise.
pub(crate) fn parameters(chart: &Chart, c: Option<&[RationalScalar]>) -> Result<Vec<RationalFunction>> {
    match c {
        Some(c) => Ok(c.iter().map(|v| chart.lift_scalar(v)).collect()),
        None => (1..chart.n()).map(|i| chart.c(i)).collect(),
    }
}

fn same_vec(a: &[RationalFunction], b: &[RationalFunction]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.equals(y))
}

fn index_label(ip: usize, l: usize, jp: usize, k: usize) -> String {
    format!("Phi^{{{}'{}}}_{{{}'{}}}", ip + 1, l + 1, jp + 1, k + 1)
}

pub(crate) fn flow(p: &Params) -> Result<Vec<CheckReport>> {
    let x = p.point.clone().ok_or_else(|| usage("flow needs --point"))?;
    let t = p.t.clone().ok_or_else(|| usage("flow needs --t"))?;
    let y = flow_point(&x, &t)?;
    let mut reports = vec![CheckReport::new("flow.image", Kind::Numeric, true, format_point(&y)).with_point(format_point(&x))];
    if p.all {
        reports.push(timed(p, || {
            if x.get(0, 0).is_zero() {
                return Ok(CheckReport::skipped("flow.split-formula", Kind::Numeric, "x11 = 0, point on H0"));
            }
            let z = flow_point_via_split(&x, &t)?;
            Ok(CheckReport::new("flow.split-formula", Kind::Numeric, z.same_value(&y), format_point(&z))
                .with_counterexample(format!("closed form {} vs split {}", format_point(&y), format_point(&z))))
        })?);
        reports.push(CheckReport::new("flow.holonomy", Kind::Numeric, true, format_matrix(&holonomy(&x, &t)?)));
    }
    if let Some(s) = &p.s {
        let total = s + &t;
        reports.push(timed(p, || {
            let lhs = flow_point(&y, s)?;
            let rhs = flow_point(&x, &total)?;
            Ok(CheckReport::new("flow.group-law", Kind::Numeric, lhs.same_value(&rhs), format_point(&lhs))
                .with_counterexample(format!("z^s z^t X = {} but z^(s+t) X = {}", format_point(&lhs), format_point(&rhs))))
        })?);
        reports.push(timed(p, || {
            let lhs = holonomy(&x, &total)?;
            let rhs = holonomy(&y, s)?.mul(&holonomy(&x, &t)?)?;
            Ok(CheckReport::new("flow.cocycle", Kind::Numeric, lhs.same_value(&rhs), format_matrix(&lhs))
                .with_counterexample(format!("{} vs {}", format_matrix(&lhs), format_matrix(&rhs))))
        })?);
    }
    Ok(reports)
}

/// The image point first, then every other report.
pub(crate) fn flow_text(reports: &[CheckReport]) -> String {
    let mut out = String::new();
    if let Some(image) = reports.iter().find(|r| r.check_id == "flow.image") {
        out.push_str(&image.detail);
        out.push('\n');
    }
    let rest: Vec<CheckReport> = reports.iter().filter(|r| r.check_id != "flow.image").cloned().collect();
    out.push_str(&crate::report::render_text(&rest));
    out
}

pub(crate) fn phi(p: &Params) -> Result<Vec<CheckReport>> {
    let chart = Chart::for_deformation(p.n)?;
    let c = parameters(&chart, p.c.as_deref())?;
    let field = build_phi(&chart, &c)?;
    let mut reports = Vec::new();
    let shown: EndomorphismField<RationalFunction> = match &p.point {
        None => field.clone(),
        Some(x) => {
            let subs = grassflow::model::substitution_for(&chart, &chart.lift(x));
            field.try_map(|f| f.substitute(&subs))?
        }
    };
    let point = p.point.as_ref().map(format_point);
    for ip in 0..2 {
        for l in 0..p.n {
            for jp in 0..2 {
                for k in 0..p.n {
                    let f = shown.get(ip, l, jp, k);
                    if f.is_zero() {
                        continue;
                    }
                    let mut r = CheckReport::new(
                        format!("phi.coefficient.{}", index_label(ip, l, jp, k)),
                        Kind::Numeric,
                        true,
                        render(f, p.latex),
                    );
                    r.point = point.clone();
                    reports.push(r);
                }
            }
        }
    }
    reports.push(timed(p, || {
        let ok = field.is_square_zero()?;
        Ok(CheckReport::new("phi.square-zero", Kind::SymbolicIdentity, ok, "Phi o Phi = 0"))
    })?);
    reports.push(CheckReport::new(
        "phi.partial-traces",
        Kind::SymbolicIdentity,
        field.partial_traces_vanish(),
        "both partial traces vanish",
    ));
    reports.push(timed(p, || Ok(degree_ledger_report(&chart, &field, "phi.degree-ledger")))?);
    if p.all {
        reports.push(timed(p, || {
            let ok = invariance_check(&chart, &field, &chart.t())?;
            Ok(CheckReport::new("phi.invariance", Kind::SymbolicIdentity, ok, "z^t-invariant for symbolic t"))
        })?);
        if let (Some(x), Some(c)) = (&p.point, &p.c) {
            reports.push(timed(p, || {
                let at = grassflow::deform::phi_at(x, c)?;
                let forward = Matrix::identity_like(2 * p.n, &RationalScalar::zero()).add(&at.matrix())?;
                let det = forward.determinant().unwrap_or_else(RationalScalar::zero);
                Ok(CheckReport::new("phi.unimodular", Kind::Numeric, det == RationalScalar::from_integer(1.into()), format!("det(Id + Phi) = {}", format_rational(&det)))
                    .with_point(format_point(x)))
            })?);
        }
    }
    Ok(reports)
}

pub(crate) fn degree_ledger_report(chart: &Chart, field: &EndomorphismField<RationalFunction>, id: &str) -> CheckReport {
    let q = chart.table().generators()[0].1.clone();
    let mut derivatives = 0;
    for f in field.coefficients() {
        if f.is_zero() {
            continue;
        }
        let info = f.degree_info();
        if info.numerator_total_degree != Some(4) || !info.is_numerator_homogeneous || !f.denominator_is(&q, 1) {
            return CheckReport::new(id, Kind::SymbolicIdentity, false, "coefficient not degree 4 over q").with_counterexample(f.to_string());
        }
        for v in 0..2 * chart.n() {
            let d = f.differentiate(chart.table().x(v / 2, v % 2));
            if d.is_zero() {
                continue;
            }
            let info = d.degree_info();
            if info.numerator_total_degree != Some(5) || !info.is_numerator_homogeneous || !d.denominator_is(&q, 2) {
                return CheckReport::new(id, Kind::SymbolicIdentity, false, "derivative not degree 5 over q^2")
                    .with_counterexample(d.to_string());
            }
            derivatives += 1;
        }
    }
    CheckReport::new(
        id,
        Kind::SymbolicIdentity,
        true,
        format!("coefficients degree 4 over q, {derivatives} nonzero derivatives degree 5 over q^2"),
    )
}

/// 0-based torsion row: `--sindex`, else the first nonzero parameter, else 2.
fn torsion_row(p: &Params, c: &[RationalScalar]) -> usize {
    match p.sindex {
        Some(s) => s - 1,
        None => c.iter().position(|v| !v.is_zero()).map_or(1, |i| i + 1),
    }
}

pub(crate) fn torsion(p: &Params) -> Result<Vec<CheckReport>> {
    let chart = Chart::for_deformation(p.n)?;
    let mut default_c = vec![RationalScalar::zero(); p.n - 1];
    default_c[0] = RationalScalar::from_integer(1.into());
    let c = p.c.clone().unwrap_or(default_c);
    let s = torsion_row(p, &c);
    let cs = c[s - 1].clone();
    let flat_deformation = c.iter().all(Zero::is_zero);
    let field = build_phi(&chart, &parameters(&chart, Some(&c))?)?;
    let mut reports = Vec::new();
    let tc = torsion_component(&chart, &field, s)?;
    let cs_rf = chart.lift_scalar(&cs);
    let expected = oracles::bracket(&chart, &cs_rf);
    reports.push(CheckReport::new(
        "torsion.bracket",
        Kind::SymbolicIdentity,
        same_vec(&tc.bracket, &expected),
        format!("[E~^(2')_{0}, E~^(2')_1] matches the closed form for s = {0}", s + 1),
    ));
    let leading = oracles::d_leading(&chart, &cs_rf);
    let degrees_ok = tc.d_of_e1prime.iter().zip(&leading).all(|(d, l)| {
        (d - l).degree_info().min_net_degree() >= grassflow::exactalg::NetDegree::Finite(3)
    });
    let rendered: Vec<String> = leading.iter().map(|f| render(f, p.latex)).collect();
    reports.push(CheckReport::new(
        "torsion.d-of-e1prime",
        Kind::SymbolicIdentity,
        degrees_ok,
        format!("leading coefficients [{}], remainder net degree >= 3", rendered.join(", ")),
    ));
    let image = build_partial1(p.n).image;
    let engine = TorsionEngine::new(&chart, &field);
    let points: Vec<(String, ChartPoint<RationalScalar>)> = match &p.point {
        Some(x) => vec![("torsion.point".to_string(), x.clone())],
        None => (1..=p.sample_balls)
            .flat_map(|r| {
                sample_ball(p.n, r, p.points_per_ball, s, p.seed)
                    .into_iter()
                    .enumerate()
                    .map(move |(k, x)| (format!("torsion.r{r:02}.p{k:03}"), x))
            })
            .collect(),
    };
    for (id, x) in points {
        reports.push(timed(p, || {
            let t = engine.torsion_at(&chart.bind(&x, &[])?)?;
            let lemma = lemma_criterion(&t, s);
            let member = in_image_of_partial1(&t, &image)?;
            let (ok, expectation) = if flat_deformation {
                (t.is_zero(), "torsion vanishes")
            } else if !cs.is_zero() {
                (lemma && !member, "lemma true and torsion outside Im d1")
            } else {
                (!lemma || !member, "lemma true implies torsion outside Im d1")
            };
            let mut r = CheckReport::new(id, Kind::OracleAgreement, ok, format!("lemma={lemma} membership={member}; expected: {expectation}"))
                .with_point(format_point(&x));
            r.lemma_verdict = Some(lemma);
            r.membership_verdict = Some(member);
            Ok(r)
        })?);
    }
    Ok(reports)
}

pub(crate) fn curvature(p: &Params) -> Result<Vec<CheckReport>> {
    let chart = Chart::for_deformation(p.n)?;
    let r = p.r.unwrap_or(2) - 1;
    let c = parameters(&chart, p.c.as_deref())?;
    let field = build_phi(&chart, &c)?;
    let d2 = nabla2_phi(&chart, &field);
    let kappa = project_kappa(&d2);
    let [first, second, third, closed] = oracles::curvature_displays(&chart, &c, r);
    let mut reports = Vec::new();
    let computed = kappa.get(1, 0, 0, 0, 0, r);
    let label = if p.latex {
        format!("\\kappa^{{111}}_{{2'1'{}}} = ", r + 1)
    } else {
        format!("kappa^(111)_(2'1'{}) = ", r + 1)
    };
    reports.push(
        CheckReport::new(format!("curvature.kappa.r{}", r + 1), Kind::SymbolicIdentity, computed.equals(&closed), format!("{label}{}", render(computed, p.latex)))
            .with_counterexample(format!("closed form {}", render(&closed, p.latex))),
    );
    let displays = [
        ("curvature.d2.mixed", d2.get(1, 0, 0, 0, 0, 0, 0, r), &first),
        ("curvature.d2.x12x12", d2.get(1, 0, 1, 0, 1, 0, 0, r), &second),
        ("curvature.d2.x11x11", d2.get(0, 0, 0, 0, 0, 0, 1, r), &third),
    ];
    for (id, got, want) in displays {
        reports.push(
            CheckReport::new(id, Kind::SymbolicIdentity, got.equals(want), render(got, p.latex))
                .with_counterexample(format!("expected {}", render(want, p.latex))),
        );
    }
    reports.push(CheckReport::new(
        "curvature.trace-free-identity",
        Kind::SymbolicIdentity,
        d2.get(0, 0, 1, 0, 1, 0, 1, r).equals(&-&first),
        "mixed derivative of Phi^(1'1)_(1'r) equals minus that of Phi^(2'1)_(2'r)",
    ));
    match &p.c {
        Some(cv) if cv.iter().any(|v| !v.is_zero()) => {
            let pts = match &p.point {
                Some(x) => vec![x.clone()],
                None => sample_points(p.n, 10, p.seed),
            };
            for (k, x) in pts.iter().enumerate() {
                reports.push(timed(p, || {
                    let ok = not_pure_trace(kappa.slice(1, 0), p.n, &chart.bind(x, &[])?)?;
                    Ok(CheckReport::new(format!("curvature.not-pure-trace.p{k:02}"), Kind::OracleAgreement, ok, format!("not pure trace: {ok}"))
                        .with_point(format_point(x)))
                })?);
            }
        }
        Some(_) => reports.push(CheckReport::new(
            "curvature.vanishes",
            Kind::SymbolicIdentity,
            kappa.is_zero(),
            "c = 0 gives zero curvature component",
        )),
        None => reports.push(CheckReport::skipped(
            "curvature.not-pure-trace",
            Kind::OracleAgreement,
            "needs numeric --c",
        )),
    }
    Ok(reports)
}

const REP_CHECKS: [&str; 6] = ["surjective", "kernel", "complement", "dims", "trace", "lemma"];

pub(crate) fn reptheory(p: &Params) -> Result<Vec<CheckReport>> {
    let selected: Vec<&str> = if p.checks.is_empty() || p.all {
        REP_CHECKS.to_vec()
    } else {
        for c in &p.checks {
            if !REP_CHECKS.contains(&c.as_str()) {
                return Err(Error::Usage(format!("unknown reptheory check {c:?}; expected one of {}", REP_CHECKS.join(", "))));
            }
        }
        p.checks.iter().map(String::as_str).collect()
    };
    let n = p.n;
    let map = build_partial1(n);
    let mut reports = Vec::new();
    for name in selected {
        let id = format!("reptheory.{name}");
        reports.push(timed(p, || {
            Ok(match name {
                "surjective" => {
                    let ok = map.is_surjective() == (n == 2);
                    CheckReport::new(
                        id,
                        Kind::Dimension,
                        ok,
                        format!("rank {} of target {}, surjective: {}", map.rank(), map.target_dim(), map.is_surjective()),
                    )
                }
                "kernel" => CheckReport::new(
                    id,
                    Kind::Dimension,
                    map.kernel_dim == 2 * n && map.rank() + map.kernel_dim == map.domain_dim(),
                    format!("kernel {} = 2n, rank {} + kernel = {}", map.kernel_dim, map.rank(), map.domain_dim()),
                ),
                "complement" => {
                    let expected = if n >= 3 { 2 * n * (n - 2) * (n + 1) } else { 0 };
                    CheckReport::new(id, Kind::Dimension, map.complement_dim() == expected, format!("complement {} (expected {expected})", map.complement_dim()))
                }
                "dims" => {
                    let d = decomposition_dims(n);
                    let ok = d.lambda_split.0 + d.lambda_split.1 == n * (2 * n - 1)
                        && (n < 3 || d.torsion_module_dim == map.complement_dim());
                    CheckReport::new(
                        id,
                        Kind::Dimension,
                        ok,
                        format!(
                            "lambdaSplit=({}, {}) torsionModuleDim={} traceComponentDims=({}, {}, {})",
                            d.lambda_split.0,
                            d.lambda_split.1,
                            if n >= 3 { d.torsion_module_dim } else { 0 },
                            d.trace_component_dims.0,
                            d.trace_component_dims.1,
                            d.trace_component_dims.2
                        ),
                    )
                }
                "trace" => {
                    let t = trace_embedding_vectors(n);
                    let inside = t
                        .first
                        .iter()
                        .chain(&t.second)
                        .map(|v| membership(v, &map.image))
                        .collect::<Result<Vec<bool>>>()?
                        .into_iter()
                        .all(|b| b);
                    let dim = lambda2_dim(n);
                    let d1 = Subspace::span(dim, &t.first)?.dim();
                    let d2 = Subspace::span(dim, &t.second)?.dim();
                    CheckReport::new(id, Kind::OracleAgreement, inside, format!("{} trace vectors inside Im d1, spans {d1} and {d2}", t.first.len() + t.second.len()))
                }
                _ => {
                    if n < 3 {
                        CheckReport::skipped(id, Kind::OracleAgreement, "needs n >= 3")
                    } else {
                        let e = |len: usize, k: usize| -> Vec<RationalScalar> {
                            (0..len).map(|j| RationalScalar::from_integer(i64::from(j == k).into())).collect()
                        };
                        let mut ok = true;
                        for s in 1..n {
                            for b in map.image.basis() {
                                ok &= lemma_conclusion(n, b, &e(2, 1), &e(n, s), &e(n, 0), &e(2, 0));
                            }
                        }
                        CheckReport::new(id, Kind::OracleAgreement, ok, format!("lemma holds on {} image basis vectors for every s", map.image.dim()))
                    }
                }
            })
        })?);
    }
    Ok(reports)
}
