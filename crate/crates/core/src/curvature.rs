//! Second derivatives of `Φ` in the flat frame, the projection toward the
//! harmonic curvature, and the `κ^{111}_{2'1'r}` component.

use num_traits::Zero;

use crate::deform::{build_phi, build_q, EndomorphismField};
use crate::error::{Error, Result};
use crate::exactalg::{frac, RationalFunction, RationalScalar};
use crate::linalg::{membership, Subspace};
use crate::model::{flat, Chart};

const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// `∇^j_{i'} ∇^m_{ℓ'} Φ^{p'o}_{q'r}` with `∇^j_{i'} = ∂/∂x_{j i'}`.
#[derive(Clone, Debug)]
pub struct SecondDerivativeTensor {
    n: usize,
    data: Vec<RationalFunction>,
}

fn d2_index(n: usize, idx: [usize; 8]) -> usize {
    let [ip, j, lp, m, pp, o, qp, r] = idx;
    let a = flat(j, ip) * 2 * n + flat(m, lp);
    (a * 2 * n + flat(o, pp)) * 2 * n + flat(r, qp)
}

impl SecondDerivativeTensor {
    pub fn n(&self) -> usize {
        self.n
    }

    #[allow(clippy::too_many_arguments)]
    pub fn get(&self, ip: usize, j: usize, lp: usize, m: usize, pp: usize, o: usize, qp: usize, r: usize) -> &RationalFunction {
        &self.data[d2_index(self.n, [ip, j, lp, m, pp, o, qp, r])]
    }

    pub fn entries(&self) -> &[RationalFunction] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RationalFunction::is_zero)
    }

    /// Symmetry under `(i', j) ↔ (ℓ', m)`.
    pub fn is_symmetric(&self) -> bool {
        let d = 2 * self.n;
        let block = d * d;
        (0..d).all(|a| {
            (0..a).all(|b| {
                let x = &self.data[(a * d + b) * block..(a * d + b + 1) * block];
                let y = &self.data[(b * d + a) * block..(b * d + a + 1) * block];
                x.iter().zip(y).all(|(u, v)| u.equals(v))
            })
        })
    }
}

/// All second chart derivatives of the coefficients of `Φ`.
pub fn nabla2_phi(chart: &Chart, phi: &EndomorphismField<RationalFunction>) -> SecondDerivativeTensor {
    let n = chart.n();
    let d = 2 * n;
    let table = chart.table();
    let var = |a: usize| table.x(a / 2, a % 2);
    // Φ^{p'o}_{q'r} at flat(o,p') * d + flat(r,q').
    let coeffs: Vec<&RationalFunction> = (0..d * d)
        .map(|c| {
            let (u, w) = (c / d, c % d);
            phi.get(u % 2, u / 2, w % 2, w / 2)
        })
        .collect();
    let first: Vec<Vec<RationalFunction>> = (0..d)
        .map(|b| coeffs.iter().map(|f| f.differentiate(var(b))).collect())
        .collect();
    let mut data = vec![chart.zero(); d * d * d * d];
    for a in 0..d {
        for b in 0..=a {
            for (c, f) in first[b].iter().enumerate() {
                let v = f.differentiate(var(a));
                data[(b * d + a) * d * d + c] = v.clone();
                data[(a * d + b) * d * d + c] = v;
            }
        }
    }
    SecondDerivativeTensor { n, data }
}

/// Result of steps (1)–(3) of the projection: contraction of `p'` with
/// `ℓ'`, skew-symmetrization in `i', q'` (factor 1/2), and symmetrization
/// in `j, m, o` (averaged over the six orderings).
#[derive(Clone, Debug)]
pub struct KappaTensor {
    n: usize,
    data: Vec<RationalFunction>,
}

impl KappaTensor {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, ip: usize, qp: usize, j: usize, m: usize, o: usize, r: usize) -> &RationalFunction {
        let n = self.n;
        &self.data[((((ip * 2 + qp) * n + j) * n + m) * n + o) * n + r]
    }

    /// The `(j, m, o, r)` slice at fixed `(i', q')`, laid out as `((j n + m) n + o) n + r`.
    pub fn slice(&self, ip: usize, qp: usize) -> &[RationalFunction] {
        let len = self.n.pow(4);
        let start = (ip * 2 + qp) * len;
        &self.data[start..start + len]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RationalFunction::is_zero)
    }
}

pub fn project_kappa(d2: &SecondDerivativeTensor) -> KappaTensor {
    let n = d2.n();
    let n4 = n.pow(4);
    let proto = d2.entries()[0].clone();
    let zero = &proto - &proto;
    let half = frac(1, 2);
    let sixth = frac(1, 6);
    let at = |j: usize, m: usize, o: usize, r: usize| ((j * n + m) * n + o) * n + r;
    // contracted[(ip,qp)][j,m,o,r] = Σ_{p'} D2[ip][j][p'][m][p'][o][qp][r]
    let contracted: Vec<Vec<RationalFunction>> = (0..4)
        .map(|s| {
            let (ip, qp) = (s / 2, s % 2);
            let mut out = vec![zero.clone(); n4];
            for j in 0..n {
                for m in 0..n {
                    for o in 0..n {
                        for r in 0..n {
                            out[at(j, m, o, r)] =
                                d2.get(ip, j, 0, m, 0, o, qp, r) + d2.get(ip, j, 1, m, 1, o, qp, r);
                        }
                    }
                }
            }
            out
        })
        .collect();
    let mut data = vec![zero.clone(); 4 * n4];
    for ip in 0..2 {
        for qp in 0..2 {
            if ip == qp {
                continue;
            }
            let skew: Vec<RationalFunction> = contracted[ip * 2 + qp]
                .iter()
                .zip(&contracted[qp * 2 + ip])
                .map(|(a, b)| (a - b).scale(&half))
                .collect();
            for j in 0..n {
                for m in 0..n {
                    for o in 0..n {
                        let idx = [j, m, o];
                        for r in 0..n {
                            let mut acc = zero.clone();
                            for p in PERMS {
                                acc = &acc + &skew[at(idx[p[0]], idx[p[1]], idx[p[2]], r)];
                            }
                            data[(ip * 2 + qp) * n4 + at(j, m, o, r)] = acc.scale(&sixth);
                        }
                    }
                }
            }
        }
    }
    KappaTensor { n, data }
}

/// `Σ_{i>1} c_i (3a/q − 7S a/q² + 4S² a/q³)` with `a = x_{i1} x_{r1}` and
/// `S = x11² + x12²`; `r` is a 0-based row in `1..n`.
pub fn kappa_closed_form(chart: &Chart, c: &[RationalFunction], r: usize) -> Result<RationalFunction> {
    check_r(chart, r)?;
    let q = build_q(chart);
    let (x11, x12) = (chart.x(0, 0), chart.x(0, 1));
    let big_s = &(&x11 * &x11) + &(&x12 * &x12);
    let q2 = &q * &q;
    let q3 = &q2 * &q;
    let div = |a: &RationalFunction, b: &RationalFunction| a.checked_div(b).ok_or(Error::PoleAtPoint { factor: "q".into() });
    let pattern = &(&div(&chart.int(3), &q)? - &div(&(&big_s * &chart.int(7)), &q2)?)
        + &div(&(&(&big_s * &big_s) * &chart.int(4)), &q3)?;
    let mut out = chart.zero();
    for (i, ci) in c.iter().enumerate() {
        let a = &chart.x(i + 1, 0) * &chart.x(r, 0);
        out = &out + &(&(ci * &a) * &pattern);
    }
    Ok(out)
}

fn check_r(chart: &Chart, r: usize) -> Result<()> {
    if r == 0 || r >= chart.n() {
        return Err(Error::Usage(format!("r must lie in 2..{}, got {}", chart.n(), r + 1)));
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct KappaCheck {
    pub computed: RationalFunction,
    pub expected: RationalFunction,
    pub matches: bool,
}

/// Projects the second derivatives of `Φ_c` and compares `κ^{111}_{2'1'r}`
/// with the closed form.
pub fn kappa_closed_form_check(chart: &Chart, c: &[RationalFunction], r: usize) -> Result<KappaCheck> {
    check_r(chart, r)?;
    let phi = build_phi(chart, c)?;
    let kappa = project_kappa(&nabla2_phi(chart, &phi));
    let computed = kappa.get(1, 0, 0, 0, 0, r).clone();
    let expected = kappa_closed_form(chart, c, r)?;
    let matches = computed.equals(&expected);
    Ok(KappaCheck {
        computed,
        expected,
        matches,
    })
}

/// `Sym_{jmo}(σ_{jm} δ_{or})` for `σ` ranging over a basis of `S²ℝ^{n*}`.
pub fn trace_subspace(n: usize) -> Result<Subspace> {
    let at = |j: usize, m: usize, o: usize, r: usize| ((j * n + m) * n + o) * n + r;
    let mut vectors = Vec::new();
    for a in 0..n {
        for b in a..n {
            let sigma = |u: usize, v: usize| usize::from((u, v) == (a, b)) + usize::from((u, v) == (b, a));
            let mut v = vec![RationalScalar::zero(); n.pow(4)];
            for j in 0..n {
                for m in 0..n {
                    for o in 0..n {
                        let idx = [j, m, o];
                        for p in PERMS {
                            let weight = sigma(idx[p[0]], idx[p[1]]) as i64;
                            if weight != 0 {
                                v[at(j, m, o, idx[p[2]])] += frac(weight, 6);
                            }
                        }
                    }
                }
            }
            vectors.push(v);
        }
    }
    Subspace::span(n.pow(4), &vectors)
}

/// Evaluates a `(j, m, o, r)` slice at `values` and reports whether it lies
/// outside the pure trace component.
pub fn not_pure_trace(slice: &[RationalFunction], n: usize, values: &[RationalScalar]) -> Result<bool> {
    let evaluated: Vec<RationalScalar> = slice
        .iter()
        .map(|f| if f.is_zero() { Ok(RationalScalar::zero()) } else { f.evaluate(values) })
        .collect::<Result<_>>()?;
    not_pure_trace_values(&evaluated, n)
}

pub fn not_pure_trace_values(slice: &[RationalScalar], n: usize) -> Result<bool> {
    Ok(!membership(slice, &trace_subspace(n)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deform::build_phi_numeric;
    use crate::exactalg::int;

    #[test]
    fn flat_deformation_has_no_curvature() {
        let chart = Chart::new(3).unwrap();
        let phi = build_phi_numeric(&chart, &[int(0), int(0)]).unwrap();
        let d2 = nabla2_phi(&chart, &phi);
        assert!(d2.is_zero());
        assert!(project_kappa(&d2).is_zero());
    }

    #[test]
    fn trace_subspace_dimension() {
        for n in 2..=4 {
            assert_eq!(trace_subspace(n).unwrap().dim(), n * (n + 1) / 2);
        }
    }

    #[test]
    fn r_out_of_range() {
        let chart = Chart::new(3).unwrap();
        let c = vec![chart.one(), chart.zero()];
        assert!(kappa_closed_form_check(&chart, &c, 0).is_err());
        assert!(kappa_closed_form_check(&chart, &c, 3).is_err());
    }
}
