//! The pulled-back parallel frame of the deformed structure, its brackets
//! and the torsion, both symbolically and assembled at numeric points.

use num_traits::Zero;

use crate::deform::EndomorphismField;
use crate::error::Result;
use crate::exactalg::{int, RationalFunction, RationalScalar, VariableTable};
use crate::linalg::{membership, Matrix, Subspace};
use crate::model::{flat, Chart};
use crate::reptheory::{lambda2_dim, lemma_conclusion, pair_index};

/// Components in the coordinate frame `∂^{j'}_i`, flattened as `2i + j'`.
pub type VectorField = Vec<RationalFunction>;

/// `Ẽ_b = θ⁻¹ ∘ (Id + Φ)⁻¹ (E_b)`, i.e. column `b` of `Id − Φ`.
pub fn pulled_frame(phi: &EndomorphismField<RationalFunction>) -> Vec<VectorField> {
    let m = phi.matrix();
    let d = m.rows();
    (0..d)
        .map(|b| {
            (0..d)
                .map(|k| {
                    let v = -m.get(k, b);
                    if k == b {
                        &v + &RationalFunction::one(v.table())
                    } else {
                        v
                    }
                })
                .collect()
        })
        .collect()
}

/// The coordinate field `∂/∂x_{i j'}` of the chart.
pub fn coordinate_field(chart: &Chart, row: usize, col: usize) -> VectorField {
    let d = 2 * chart.n();
    (0..d)
        .map(|k| if k == flat(row, col) { chart.one() } else { chart.zero() })
        .collect()
}

/// Applies a vector field to a function: `ξ(f) = Σ_m ξ^m ∂_m f`.
pub fn apply_field(table: &VariableTable, xi: &[RationalFunction], f: &RationalFunction) -> RationalFunction {
    let mut acc = RationalFunction::zero(f.table());
    for (m, coeff) in xi.iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        let index = table.x(m / 2, m % 2);
        let df = f.differentiate(index);
        if !df.is_zero() {
            acc = &acc + &(coeff * &df);
        }
    }
    acc
}

/// `[ξ, η]^k = ξ(η^k) − η(ξ^k)`.
pub fn lie_bracket(table: &VariableTable, xi: &[RationalFunction], eta: &[RationalFunction]) -> VectorField {
    xi.iter()
        .zip(eta)
        .map(|(xk, ek)| &apply_field(table, xi, ek) - &apply_field(table, eta, xk))
        .collect()
}

/// The bracket `[Ẽ^{2'}_s, Ẽ^{2'}_1]`, the torsion vector field
/// `T̃ = −[·,·]`, its image `D = (Id + Φ)(T̃)` in `E* ⊗ F`, and `D(E_{1'})`.
#[derive(Clone, Debug)]
pub struct TorsionComponent {
    pub bracket: VectorField,
    pub torsion: VectorField,
    pub d: Vec<RationalFunction>,
    pub d_of_e1prime: Vec<RationalFunction>,
}

/// `s` is the 0-based row index of `E^{2'}_s`, in `1..n`.
pub fn torsion_component(chart: &Chart, phi: &EndomorphismField<RationalFunction>, s: usize) -> Result<TorsionComponent> {
    let frame = pulled_frame(phi);
    let bracket = lie_bracket(chart.table(), &frame[flat(s, 1)], &frame[flat(0, 1)]);
    let torsion: VectorField = bracket.iter().map(|v| -v).collect();
    let forward = Matrix::identity_like(2 * chart.n(), &chart.one()).add(&phi.matrix())?;
    let d = forward.mul_vec(&torsion)?;
    let d_of_e1prime = (0..chart.n()).map(|k| d[flat(k, 0)].clone()).collect();
    Ok(TorsionComponent {
        bracket,
        torsion,
        d,
        d_of_e1prime,
    })
}

/// A trilinear array over `g₋₁`: `T[a][b][c]` is the `c`-component of
/// `T(E_a, E_b)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TorsionValue {
    n: usize,
    data: Vec<RationalScalar>,
}

impl TorsionValue {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> &RationalScalar {
        let d = 2 * self.n;
        &self.data[(a * d + b) * d + c]
    }

    pub fn value(&self, a: usize, b: usize) -> &[RationalScalar] {
        let d = 2 * self.n;
        &self.data[(a * d + b) * d..(a * d + b + 1) * d]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_antisymmetric(&self) -> bool {
        let d = 2 * self.n;
        (0..d).all(|a| (0..d).all(|b| (0..d).all(|c| (self.get(a, b, c) + self.get(b, a, c)).is_zero())))
    }

    /// Coordinates in `Λ²g₋₁* ⊗ g₋₁` as used by `∂₁`.
    pub fn to_lambda2(&self) -> Vec<RationalScalar> {
        let d = 2 * self.n;
        let mut out = vec![RationalScalar::zero(); lambda2_dim(self.n)];
        for a in 0..d {
            for b in a + 1..d {
                let p = pair_index(a, b, d);
                out[p * d..(p + 1) * d].clone_from_slice(self.value(a, b));
            }
        }
        out
    }
}

/// Precomputed frame fields and their first derivatives, for evaluating the
/// full torsion at many points.
#[derive(Clone, Debug)]
pub struct TorsionEngine {
    n: usize,
    frame: Vec<VectorField>,
    // jac[a][m][k] = ∂_m Ẽ_a^k
    jac: Vec<Vec<Vec<RationalFunction>>>,
    phi: Matrix<RationalFunction>,
}

impl TorsionEngine {
    pub fn new(chart: &Chart, phi: &EndomorphismField<RationalFunction>) -> Self {
        let table = chart.table();
        let frame = pulled_frame(phi);
        let d = 2 * chart.n();
        let jac = frame
            .iter()
            .map(|field| {
                (0..d)
                    .map(|m| {
                        let index = table.x(m / 2, m % 2);
                        field.iter().map(|f| f.differentiate(index)).collect()
                    })
                    .collect()
            })
            .collect();
        TorsionEngine {
            n: chart.n(),
            frame,
            jac,
            phi: phi.matrix(),
        }
    }

    /// `T(E_a, E_b) = (Id + Φ)(−[Ẽ_a, Ẽ_b])` at an assignment of the table.
    pub fn torsion_at(&self, values: &[RationalScalar]) -> Result<TorsionValue> {
        let d = 2 * self.n;
        let eval = |f: &RationalFunction| -> Result<RationalScalar> {
            if f.is_zero() {
                Ok(RationalScalar::zero())
            } else {
                f.evaluate(values)
            }
        };
        let frame: Vec<Vec<RationalScalar>> = self
            .frame
            .iter()
            .map(|f| f.iter().map(eval).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        let jac: Vec<Vec<Vec<RationalScalar>>> = self
            .jac
            .iter()
            .map(|a| {
                a.iter()
                    .map(|m| m.iter().map(eval).collect::<Result<_>>())
                    .collect::<Result<_>>()
            })
            .collect::<Result<_>>()?;
        let phi = self.phi.try_map(eval)?;
        let mut data = vec![RationalScalar::zero(); d * d * d];
        for a in 0..d {
            for b in a + 1..d {
                let mut bracket = vec![RationalScalar::zero(); d];
                for (k, slot) in bracket.iter_mut().enumerate() {
                    for m in 0..d {
                        *slot += &frame[a][m] * &jac[b][m][k] - &frame[b][m] * &jac[a][m][k];
                    }
                }
                for c in 0..d {
                    let mut v = -bracket[c].clone();
                    for (k, bk) in bracket.iter().enumerate() {
                        v -= phi.get(c, k) * bk;
                    }
                    data[(a * d + b) * d + c] = v.clone();
                    data[(b * d + a) * d + c] = -v;
                }
            }
        }
        Ok(TorsionValue { n: self.n, data })
    }
}

/// Full torsion of the deformed structure at `values`.
pub fn assemble_full_torsion(
    chart: &Chart,
    phi: &EndomorphismField<RationalFunction>,
    values: &[RationalScalar],
) -> Result<TorsionValue> {
    TorsionEngine::new(chart, phi).torsion_at(values)
}

/// With `ξ = E^{2'}_s`, `η = E^{2'}_1`, both killing `E_{1'}`: true iff
/// `T(ξ, η)(E_{1'})` is not in `span{E_1, E_s}`. `s` is the 0-based row.
pub fn lemma_criterion(t: &TorsionValue, s: usize) -> bool {
    let n = t.n();
    let e = |len: usize, k: usize| -> Vec<RationalScalar> {
        (0..len).map(|j| int(i64::from(j == k))).collect()
    };
    !lemma_conclusion(n, &t.to_lambda2(), &e(2, 1), &e(n, s), &e(n, 0), &e(2, 0))
}

/// Whether the torsion lies in `Im ∂₁` (a vanishing harmonic part).
pub fn in_image_of_partial1(t: &TorsionValue, image: &Subspace) -> Result<bool> {
    membership(&t.to_lambda2(), image)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deform::{build_phi_numeric, build_phi_symbolic};

    #[test]
    fn coordinate_fields_commute() {
        let chart = Chart::new(3).unwrap();
        let a = coordinate_field(&chart, 0, 0);
        let b = coordinate_field(&chart, 1, 1);
        assert!(lie_bracket(chart.table(), &a, &b).iter().all(RationalFunction::is_zero));
    }

    #[test]
    fn self_bracket_vanishes() {
        let chart = Chart::new(3).unwrap();
        let phi = build_phi_symbolic(&chart).unwrap();
        let frame = pulled_frame(&phi);
        assert!(lie_bracket(chart.table(), &frame[3], &frame[3]).iter().all(RationalFunction::is_zero));
    }

    #[test]
    fn undeformed_frame_is_the_coordinate_frame() {
        let chart = Chart::new(3).unwrap();
        let phi = build_phi_numeric(&chart, &[int(0), int(0)]).unwrap();
        for (b, field) in pulled_frame(&phi).iter().enumerate() {
            let expected = coordinate_field(&chart, b / 2, b % 2);
            assert!(field.iter().zip(&expected).all(|(x, y)| x.equals(y)));
        }
        let tc = torsion_component(&chart, &phi, 1).unwrap();
        assert!(tc.d.iter().all(RationalFunction::is_zero));
    }
}
