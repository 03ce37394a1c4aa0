//! Eigen-sections of the associated bundles, the invariant endomorphism
//! field `Φ_c = Σ c_i q⁻¹ φ' ⊗ φ_i` and the deformed structure `(Id + Φ) ∘ θ`.

use crate::error::{Error, Result};
use crate::exactalg::{Field, Polynomial, RationalFunction, RationalScalar};
use crate::linalg::Matrix;
use crate::model::{
    bundle_actions, flow_point, tensor_action, BundleActionMatrices, Chart, ChartPoint,
    FlowPullback,
};

/// Sections of `E`, `E*`, `F`, `F*` as coefficient vectors in the frames
/// `E_{j'}`, `E^{j'}`, `E_k`, `E^k`. `kappa[i]` and `kappa_tilde[i]` carry
/// the index `i + 1` for `i ∈ 1..n`; entry `0` is unused and zero.
#[derive(Clone, Debug)]
pub struct EigenSections<T> {
    pub v: Vec<T>,
    pub iota: Vec<T>,
    pub v_tilde: Vec<T>,
    pub iota_tilde: Vec<T>,
    pub w: Vec<T>,
    pub kappa: Vec<Vec<T>>,
    pub w_tilde: Vec<T>,
    pub kappa_tilde: Vec<Vec<T>>,
}

fn unit<T: Field>(len: usize, k: usize, proto: &T) -> Vec<T> {
    (0..len)
        .map(|j| if j == k { proto.one_like() } else { proto.zero_like() })
        .collect()
}

impl<T: Field> EigenSections<T> {
    pub fn at(x: &ChartPoint<T>) -> Self {
        let n = x.rows();
        let x11 = x.get(0, 0);
        let x12 = x.get(0, 1);
        let zero = x11.zero_like();
        let kappa = (0..n)
            .map(|i| if i == 0 { vec![zero.clone(); n] } else { unit(n, i, x11) })
            .collect();
        let kappa_tilde = (0..n)
            .map(|i| {
                if i == 0 {
                    return vec![zero.clone(); n];
                }
                let mut v = vec![zero.clone(); n];
                v[i] = x11.clone();
                v[0] = x.get(i, 0).negated();
                v
            })
            .collect();
        EigenSections {
            v: vec![x12.negated(), x11.clone()],
            iota: unit(2, 0, x11),
            v_tilde: unit(2, 1, x11),
            iota_tilde: vec![x11.clone(), x12.clone()],
            w: (0..n).map(|k| x.get(k, 0).clone()).collect(),
            kappa,
            w_tilde: unit(n, 0, x11),
            kappa_tilde,
        }
    }
}

/// Outcome of one transformation law `g · σ(X) = factor · σ(z^t·X)`.
#[derive(Clone, Debug)]
pub struct LawCheck {
    pub name: String,
    pub factor: &'static str,
    pub holds: bool,
}

fn law_holds<T: Field>(g: &Matrix<T>, before: &[T], factor: &T, after: &[T]) -> Result<bool> {
    let lhs = g.mul_vec(before)?;
    Ok(lhs
        .iter()
        .zip(after)
        .all(|(a, b)| a.same_value(&factor.times(b))))
}

/// Checks the eight transformation laws of the eigen-sections at `x`.
pub fn transformation_check<T: Field>(x: &ChartPoint<T>, t: &T) -> Result<Vec<LawCheck>> {
    let n = x.rows();
    let b = bundle_actions(x, t)?;
    let y = flow_point(x, t)?;
    let (sx, sy) = (EigenSections::at(x), EigenSections::at(&y));
    let one = t.one_like();
    let d = x.get(0, 0).times(t).plus(&one);
    let mut checks = Vec::new();
    let mut push = |name: String, factor: &'static str, holds: bool| {
        checks.push(LawCheck { name, factor, holds });
    };
    let BundleActionMatrices { on_e, on_estar, on_f, on_fstar } = &b;
    push("E.v".into(), "1+t*x11", law_holds(on_e, &sx.v, &d, &sy.v)?);
    push("E.iota".into(), "1+t*x11", law_holds(on_e, &sx.iota, &d, &sy.iota)?);
    push("Estar.v_tilde".into(), "1", law_holds(on_estar, &sx.v_tilde, &one, &sy.v_tilde)?);
    push("Estar.iota_tilde".into(), "1", law_holds(on_estar, &sx.iota_tilde, &one, &sy.iota_tilde)?);
    push("F.w".into(), "1", law_holds(on_f, &sx.w, &one, &sy.w)?);
    let kappa = (1..n).try_fold(true, |ok, i| {
        law_holds(on_f, &sx.kappa[i], &one, &sy.kappa[i]).map(|h| ok && h)
    })?;
    push("F.kappa".into(), "1", kappa);
    push("Fstar.w_tilde".into(), "1+t*x11", law_holds(on_fstar, &sx.w_tilde, &d, &sy.w_tilde)?);
    let kappa_tilde = (1..n).try_fold(true, |ok, i| {
        law_holds(on_fstar, &sx.kappa_tilde[i], &d, &sy.kappa_tilde[i]).map(|h| ok && h)
    })?;
    push("Fstar.kappa_tilde".into(), "1+t*x11", kappa_tilde);
    Ok(checks)
}

/// `q = x12² + x11² + x21² + ... + xn1²`.
pub fn build_q(chart: &Chart) -> RationalFunction {
    let q: &Polynomial = &chart.table().generators()[0].1;
    RationalFunction::from_polynomial(chart.table(), q.clone())
}

/// `q` evaluated on a numeric point.
pub fn q_at<T: Field>(x: &ChartPoint<T>) -> T {
    let x12 = x.get(0, 1);
    (0..x.rows()).fold(x12.times(x12), |acc, k| acc.plus(&x.get(k, 0).times(x.get(k, 0))))
}

/// `φ'[i'][j'] = v^{j'} ι̃_{i'}`, the endomorphism `α ↦ α(v) ι̃` of `E*`.
pub fn phi_prime<T: Field>(x: &ChartPoint<T>) -> Matrix<T> {
    let s = EigenSections::at(x);
    Matrix::from_fn(2, 2, |r, c| s.v[c].times(&s.iota_tilde[r]))
}

/// `φ_i[k][ℓ] = w^k κ̃^i_ℓ`, the endomorphism `u ↦ κ̃^i(u) w` of `F`.
pub fn phi_f<T: Field>(x: &ChartPoint<T>, i: usize) -> Matrix<T> {
    let s = EigenSections::at(x);
    let n = x.rows();
    Matrix::from_fn(n, n, |k, l| s.w[k].times(&s.kappa_tilde[i][l]))
}

/// A section of `End(E*) ⊗ End(F)`: coefficients `Φ^{i'ℓ}_{j'k}` of the
/// elementary endomorphisms `E^{i'ℓ}_{j'k}` sending `E^{j'} ⊗ E_ℓ` to
/// `E^{i'} ⊗ E_k`.
#[derive(Clone, Debug)]
pub struct EndomorphismField<T> {
    n: usize,
    coeffs: Vec<T>,
}

impl<T: Field> EndomorphismField<T> {
    fn slot(&self, ip: usize, l: usize, jp: usize, k: usize) -> usize {
        ((ip * self.n + l) * 2 + jp) * self.n + k
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize, usize, usize) -> T) -> Self {
        let mut coeffs = Vec::with_capacity(4 * n * n);
        for ip in 0..2 {
            for l in 0..n {
                for jp in 0..2 {
                    for k in 0..n {
                        coeffs.push(f(ip, l, jp, k));
                    }
                }
            }
        }
        EndomorphismField { n, coeffs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `Φ^{i'ℓ}_{j'k}` with 0-based indices.
    pub fn get(&self, ip: usize, l: usize, jp: usize, k: usize) -> &T {
        &self.coeffs[self.slot(ip, l, jp, k)]
    }

    pub fn coefficients(&self) -> &[T] {
        &self.coeffs
    }

    /// The action on `E* ⊗ F` in the flattened coordinate frame: entry
    /// `((k,i'),(ℓ,j'))` is `Φ^{i'ℓ}_{j'k}`.
    pub fn matrix(&self) -> Matrix<T> {
        let n = self.n;
        Matrix::from_fn(2 * n, 2 * n, |a, b| self.get(a % 2, b / 2, b % 2, a / 2).clone())
    }

    pub fn map<U: Field>(&self, f: impl FnMut(&T) -> U) -> EndomorphismField<U> {
        EndomorphismField {
            n: self.n,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn try_map<U: Field>(&self, f: impl FnMut(&T) -> Result<U>) -> Result<EndomorphismField<U>> {
        Ok(EndomorphismField {
            n: self.n,
            coeffs: self.coeffs.iter().map(f).collect::<Result<_>>()?,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(T::is_zero_elem)
    }

    /// `Σ_{i'} Φ^{i'ℓ}_{i'k} = 0` and `Σ_ℓ Φ^{i'ℓ}_{j'ℓ} = 0` for all free indices.
    pub fn partial_traces_vanish(&self) -> bool {
        let n = self.n;
        let zero = self.coeffs[0].zero_like();
        let e_trace = (0..n).all(|l| {
            (0..n).all(|k| {
                self.get(0, l, 0, k).plus(self.get(1, l, 1, k)).is_zero_elem()
            })
        });
        let f_trace = (0..2).all(|ip| {
            (0..2).all(|jp| {
                (0..n)
                    .fold(zero.clone(), |acc, l| acc.plus(self.get(ip, l, jp, l)))
                    .is_zero_elem()
            })
        });
        e_trace && f_trace
    }

    pub fn is_square_zero(&self) -> Result<bool> {
        let m = self.matrix();
        Ok(m.mul(&m)?.is_zero())
    }
}

/// `Φ_c = Σ_i c_i q⁻¹ φ' ⊗ φ_i` at a point of the chart, with `c[i-1]` the
/// parameter `c_{i+1}`.
pub fn phi_at<T: Field>(x: &ChartPoint<T>, c: &[T]) -> Result<EndomorphismField<T>> {
    let n = x.rows();
    if c.len() + 1 != n {
        return Err(Error::Usage(format!(
            "expected {} deformation parameters, got {}",
            n - 1,
            c.len()
        )));
    }
    let q_inv = q_at(x)
        .inverse()
        .ok_or_else(|| Error::PoleAtPoint { factor: "q".into() })?;
    let pp = phi_prime(x);
    let zero = x.get(0, 0).zero_like();
    let mut combined = Matrix::from_fn(n, n, |_, _| zero.clone());
    for (k, ci) in c.iter().enumerate() {
        if ci.is_zero_elem() {
            continue;
        }
        let term = phi_f(x, k + 1).map(|v| v.times(ci));
        combined = combined.add(&term)?;
    }
    Ok(EndomorphismField::from_fn(n, |ip, l, jp, k| {
        pp.get(ip, jp).times(combined.get(k, l)).times(&q_inv)
    }))
}

/// `Φ_c` as rational functions of the chart coordinates.
pub fn build_phi(chart: &Chart, c: &[RationalFunction]) -> Result<EndomorphismField<RationalFunction>> {
    phi_at(&chart.symbolic_point(), c)
}

/// `Φ_c` with the parameters `c_2..c_n` left symbolic.
pub fn build_phi_symbolic(chart: &Chart) -> Result<EndomorphismField<RationalFunction>> {
    let c: Vec<RationalFunction> = (1..chart.n()).map(|i| chart.c(i)).collect::<Result<_>>()?;
    build_phi(chart, &c)
}

/// `Φ_c` for numeric parameters, still symbolic in the chart coordinates.
pub fn build_phi_numeric(chart: &Chart, c: &[RationalScalar]) -> Result<EndomorphismField<RationalFunction>> {
    let c: Vec<RationalFunction> = c.iter().map(|v| chart.lift_scalar(v)).collect();
    build_phi(chart, &c)
}

/// The single summand `q⁻¹ φ' ⊗ φ_i`, `i ∈ 1..n`.
pub fn build_phi_i(chart: &Chart, i: usize) -> Result<EndomorphismField<RationalFunction>> {
    let c: Vec<RationalFunction> = (1..chart.n())
        .map(|k| if k == i { chart.one() } else { chart.zero() })
        .collect();
    build_phi(chart, &c)
}

/// The deformed frame maps on `E* ⊗ F`: `Id + Φ` and its inverse `Id − Φ`.
#[derive(Clone, Debug)]
pub struct DeformedTheta<T> {
    pub forward: Matrix<T>,
    pub inverse: Matrix<T>,
}

pub fn deformed_theta<T: Field>(phi: &EndomorphismField<T>) -> Result<DeformedTheta<T>> {
    if !phi.is_square_zero()? {
        return Err(Error::InvalidDeformation);
    }
    let m = phi.matrix();
    let id = Matrix::identity_like(m.rows(), m.get(0, 0));
    Ok(DeformedTheta {
        forward: id.add(&m)?,
        inverse: id.sub(&m)?,
    })
}

/// Pushforward identity `G · Φ(X) = Φ(z^t·X) · G`, where `G` is the action
/// `onF ⊗ onE*` of the differential of `z^t` at `X`.
pub fn invariance_check(chart: &Chart, phi: &EndomorphismField<RationalFunction>, t: &RationalFunction) -> Result<bool> {
    conjugation_factor_check(chart, &phi.matrix(), t, &chart.one())
}

/// `G · N(X) = factor · N(z^t·X) · G` for a matrix field `N` on `E* ⊗ F`.
pub fn conjugation_factor_check(
    chart: &Chart,
    field: &Matrix<RationalFunction>,
    t: &RationalFunction,
    factor: &RationalFunction,
) -> Result<bool> {
    let b = bundle_actions(&chart.symbolic_point(), t)?;
    let g = tensor_action(&b);
    let moved = FlowPullback::new(chart, t)?.apply_matrix(field)?;
    let lhs = g.mul(field)?;
    let rhs = moved.mul(&g)?.map(|v| v * factor);
    Ok(lhs.same_value(&rhs))
}

/// `(z^t)_*(φ' ⊗ φ_i) = (1 + t x11)² φ'(z^t·X) ⊗ φ_i(z^t·X)`.
pub fn product_pushforward_check(chart: &Chart, i: usize, t: &RationalFunction) -> Result<bool> {
    let x = chart.symbolic_point();
    let pp = phi_prime(&x);
    let pf = phi_f(&x, i);
    let n = chart.n();
    let field = Matrix::from_fn(2 * n, 2 * n, |a, b| pp.get(a % 2, b % 2) * pf.get(a / 2, b / 2));
    let d = &chart.one() + &(t * &chart.x(0, 0));
    conjugation_factor_check(chart, &field, t, &d.pow(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int;
    use crate::model::parse_point;

    #[test]
    fn laws_hold_at_sample_point() {
        let x = parse_point("1,3;2,0;0,0").unwrap();
        let checks = transformation_check(&x, &int(1)).unwrap();
        assert_eq!(checks.len(), 8);
        assert!(checks.iter().all(|c| c.holds), "{checks:?}");
        let iota = checks.iter().find(|c| c.name == "E.iota").unwrap();
        assert_eq!(iota.factor, "1+t*x11");
        let vt = checks.iter().find(|c| c.name == "Estar.v_tilde").unwrap();
        assert_eq!(vt.factor, "1");
    }

    #[test]
    fn q_examples() {
        let chart = Chart::new(3).unwrap();
        let q = build_q(&chart);
        let origin = parse_point("0,0;0,0;0,0").unwrap();
        assert_eq!(q.evaluate(&chart.bind(&origin, &[]).unwrap()).unwrap(), int(0));
        let x = parse_point("2,1;0,0;2,0").unwrap();
        assert_eq!(q.evaluate(&chart.bind(&x, &[]).unwrap()).unwrap(), int(9));
        assert_eq!(q_at(&x), int(9));
    }

    #[test]
    fn phi_rejects_wrong_parameter_count() {
        let chart = Chart::new(3).unwrap();
        assert!(matches!(
            build_phi_numeric(&chart, &[int(1)]),
            Err(Error::Usage(_))
        ));
        assert!(build_phi_numeric(&chart, &[int(0), int(0)]).unwrap().is_zero());
    }

    #[test]
    fn non_nilpotent_field_is_rejected() {
        let f = EndomorphismField::from_fn(2, |ip, l, jp, k| {
            int(i64::from(ip == jp && l == k))
        });
        assert_eq!(deformed_theta(&f).unwrap_err(), Error::InvalidDeformation);
    }
}
