//! Matrix realizations for the graded algebra `g = g₋₁ ⊕ g₀ ⊕ g₁ ≅ sl(n+2)`:
//! the differential `∂₁`, dimension bookkeeping and the trace components of
//! `Λ²g₋₁* ⊗ g₋₁`.

use num_traits::{One, Zero};

use crate::exactalg::{int, RationalScalar};
use crate::linalg::{image_subspace, kernel_dim, MatrixQ, Subspace};

/// Bases of the graded pieces inside `sl(n+2)`, with the `2 | n` block
/// split. `g₋₁` is the lower-left `n × 2` block (flat index `2i + j'` for
/// entry `(2+i, j')`), `g₁` the upper-right block and `g₀` the trace-free
/// block diagonal.
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    n: usize,
    g0: Vec<MatrixQ>,
}

fn elementary(size: usize, r: usize, c: usize) -> MatrixQ {
    let mut m = MatrixQ::zeros(size, size);
    m.set(r, c, RationalScalar::one());
    m
}

pub fn commutator(a: &MatrixQ, b: &MatrixQ) -> MatrixQ {
    a.mul(b).unwrap().sub(&b.mul(a).unwrap()).unwrap()
}

impl GradedAlgebra {
    pub fn new(n: usize) -> Self {
        let size = n + 2;
        let mut g0 = vec![elementary(size, 0, 1), elementary(size, 1, 0)];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    g0.push(elementary(size, 2 + i, 2 + j));
                }
            }
        }
        for k in 0..size - 1 {
            let mut h = elementary(size, k, k);
            h.set(k + 1, k + 1, int(-1));
            g0.push(h);
        }
        GradedAlgebra { n, g0 }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim_minus1(&self) -> usize {
        2 * self.n
    }

    pub fn dim0(&self) -> usize {
        self.g0.len()
    }

    pub fn dim1(&self) -> usize {
        2 * self.n
    }

    pub fn g0_basis(&self) -> &[MatrixQ] {
        &self.g0
    }

    pub fn minus1_element(&self, index: usize) -> MatrixQ {
        elementary(self.n + 2, 2 + index / 2, index % 2)
    }

    pub fn plus1_element(&self, index: usize) -> MatrixQ {
        elementary(self.n + 2, index % 2, 2 + index / 2)
    }

    /// Flat coordinates of an element of `g₋₁` given as an `(n+2)`-square matrix.
    pub fn minus1_coords(&self, m: &MatrixQ) -> Vec<RationalScalar> {
        (0..2 * self.n).map(|a| m.get(2 + a / 2, a % 2).clone()).collect()
    }

    /// Coordinates of a trace-free block-diagonal matrix in the `g₀` basis.
    pub fn g0_coords(&self, m: &MatrixQ) -> Vec<RationalScalar> {
        let n = self.n;
        let mut out = vec![m.get(0, 1).clone(), m.get(1, 0).clone()];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    out.push(m.get(2 + i, 2 + j).clone());
                }
            }
        }
        let mut partial = RationalScalar::zero();
        for k in 0..n + 1 {
            partial += m.get(k, k);
            out.push(partial.clone());
        }
        out
    }

    /// Degree of a homogeneous matrix in the block grading, `None` if it
    /// mixes degrees.
    pub fn degree_of(&self, m: &MatrixQ) -> Option<i32> {
        let mut seen: Option<i32> = None;
        for r in 0..self.n + 2 {
            for c in 0..self.n + 2 {
                if m.get(r, c).is_zero() {
                    continue;
                }
                let d = match (r < 2, c < 2) {
                    (false, true) => -1,
                    (true, false) => 1,
                    _ => 0,
                };
                if seen.is_some_and(|s| s != d) {
                    return None;
                }
                seen = Some(d);
            }
        }
        seen
    }

    /// `[g_i, g_j] ⊂ g_{i+j}` on all pairs of basis elements.
    pub fn grading_holds(&self) -> bool {
        let mut pieces: Vec<(i32, MatrixQ)> = Vec::new();
        for a in 0..self.dim_minus1() {
            pieces.push((-1, self.minus1_element(a)));
        }
        for g in &self.g0 {
            pieces.push((0, g.clone()));
        }
        for a in 0..self.dim1() {
            pieces.push((1, self.plus1_element(a)));
        }
        pieces.iter().all(|(i, a)| {
            pieces.iter().all(|(j, b)| {
                let br = commutator(a, b);
                if br.is_zero() {
                    return true;
                }
                let target = i + j;
                (-1..=1).contains(&target) && self.degree_of(&br) == Some(target)
            })
        })
    }

    /// `g · X = BX − XA` for `g = (A, B) ∈ g₀` and `X ∈ g₋₁` in flat coordinates.
    pub fn act_minus1(&self, g: &MatrixQ, x: &[RationalScalar]) -> Vec<RationalScalar> {
        let mut m = MatrixQ::zeros(self.n + 2, self.n + 2);
        for (a, v) in x.iter().enumerate() {
            m.set(2 + a / 2, a % 2, v.clone());
        }
        self.minus1_coords(&commutator(g, &m))
    }

    /// The matrix of `X ↦ g · X` on `g₋₁`.
    pub fn rho(&self, g: &MatrixQ) -> MatrixQ {
        let d = self.dim_minus1();
        let cols: Vec<Vec<RationalScalar>> = (0..d)
            .map(|a| {
                let mut e = vec![RationalScalar::zero(); d];
                e[a] = RationalScalar::one();
                self.act_minus1(g, &e)
            })
            .collect();
        MatrixQ::from_fn(d, d, |r, c| cols[c][r].clone())
    }
}

/// Index of the pair `a < b` among pairs of `0..d`.
pub fn pair_index(a: usize, b: usize, d: usize) -> usize {
    debug_assert!(a < b && b < d);
    a * d - a * (a + 1) / 2 + (b - a - 1)
}

/// Coordinates on `Λ²g₋₁* ⊗ g₋₁`: entry `pair_index(a, b) · 2n + c` is the
/// `c`-component of `T(e_a, e_b)`.
pub fn lambda2_dim(n: usize) -> usize {
    let d = 2 * n;
    d * (d - 1) / 2 * d
}

/// The differential `∂₁ : g₋₁* ⊗ g₀ → Λ²g₋₁* ⊗ g₋₁`,
/// `(∂₁f)(w, v) = f(w)·v − f(v)·w`. Domain index of `e^a ⊗ g_k` is
/// `a · dim g₀ + k`.
#[derive(Clone, Debug)]
pub struct Partial1Map {
    pub n: usize,
    pub matrix: MatrixQ,
    pub image: Subspace,
    pub kernel_dim: usize,
}

pub fn partial1_matrix(algebra: &GradedAlgebra) -> MatrixQ {
    let n = algebra.n();
    let d = 2 * n;
    let g0 = algebra.dim0();
    let mut m = MatrixQ::zeros(lambda2_dim(n), d * g0);
    for (k, g) in algebra.g0_basis().iter().enumerate() {
        let action = algebra.rho(g);
        for a in 0..d {
            let col = a * g0 + k;
            // Only pairs containing a contribute: δ_{ab} (g·e_e) − δ_{ae} (g·e_b).
            for other in 0..d {
                if other == a {
                    continue;
                }
                let (b, e, sign) = if a < other { (a, other, 1) } else { (other, a, -1) };
                let p = pair_index(b, e, d);
                for c in 0..d {
                    let v = action.get(c, other);
                    if v.is_zero() {
                        continue;
                    }
                    let v = if sign > 0 { v.clone() } else { -v.clone() };
                    m.set(p * d + c, col, m.get(p * d + c, col) + v);
                }
            }
        }
    }
    m
}

pub fn build_partial1(n: usize) -> Partial1Map {
    let algebra = GradedAlgebra::new(n);
    let matrix = partial1_matrix(&algebra);
    let image = image_subspace(&matrix);
    let kernel_dim = kernel_dim(&matrix);
    Partial1Map {
        n,
        matrix,
        image,
        kernel_dim,
    }
}

impl Partial1Map {
    pub fn rank(&self) -> usize {
        self.image.dim()
    }

    pub fn domain_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target_dim()
    }

    pub fn complement_dim(&self) -> usize {
        self.target_dim() - self.rank()
    }
}

/// Dimension bookkeeping for `Λ²g₋₁* ⊗ g₋₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionDims {
    /// `Λ²R^{2*} ⊗ S²R^{n*}` and `S²R^{2*} ⊗ Λ²R^{n*}` inside `Λ²g₋₁*`.
    pub lambda_split: (usize, usize),
    pub torsion_module_dim: usize,
    /// Spans of the two trace components and of their intersection.
    pub trace_component_dims: (usize, usize, usize),
}

pub fn decomposition_dims(n: usize) -> DecompositionDims {
    DecompositionDims {
        lambda_split: (n * (n + 1) / 2, 3 * n * (n - 1) / 2),
        torsion_module_dim: 2 * n * (n - 2) * (n + 1),
        trace_component_dims: (n * n * (n - 1), 6 * n, 2 * n),
    }
}

/// An element of `Λ²g₋₁* ⊗ g₋₁` built from `T(α⊗w, β⊗u) = S(α,β) ⊗ N(w,u)`
/// with `S` symmetric and `N` skew, or `S` skew and `N` symmetric.
fn product_tensor(
    n: usize,
    s: impl Fn(usize, usize, usize) -> RationalScalar,
    nn: impl Fn(usize, usize, usize) -> RationalScalar,
) -> Vec<RationalScalar> {
    let d = 2 * n;
    let mut out = vec![RationalScalar::zero(); lambda2_dim(n)];
    for a in 0..d {
        for b in a + 1..d {
            let p = pair_index(a, b, d);
            let (i, jp, k, lp) = (a / 2, a % 2, b / 2, b % 2);
            for c in 0..d {
                let (m, pp) = (c / 2, c % 2);
                let v = s(jp, lp, pp) * nn(i, k, m);
                if !v.is_zero() {
                    out[p * d + c] = v;
                }
            }
        }
    }
    out
}

fn delta(a: usize, b: usize) -> RationalScalar {
    if a == b {
        RationalScalar::one()
    } else {
        RationalScalar::zero()
    }
}

/// Spanning vectors of the two trace components: for `ṽ ∈ R²`,
/// `S(α,β) = α(ṽ)β + β(ṽ)α` against every skew `N`; for `τ ∈ R^{n*}`,
/// `N(w,u) = τ(w)u − τ(u)w` against every symmetric `S`.
#[derive(Clone, Debug)]
pub struct TraceEmbeddings {
    pub first: Vec<Vec<RationalScalar>>,
    pub second: Vec<Vec<RationalScalar>>,
}

/// `α(ṽ)β + β(ṽ)α` evaluated on basis covectors `e^{j'}, e^{l'}`, component `p'`.
fn sym_with(vt: &[RationalScalar; 2]) -> impl Fn(usize, usize, usize) -> RationalScalar + '_ {
    move |jp, lp, pp| &vt[jp] * delta(lp, pp) + &vt[lp] * delta(jp, pp)
}

/// `τ(w)u − τ(u)w` on basis vectors `e_i, e_k`, component `m`.
fn skew_with(tau: &[RationalScalar]) -> impl Fn(usize, usize, usize) -> RationalScalar + '_ {
    move |i, k, m| &tau[i] * delta(k, m) - &tau[k] * delta(i, m)
}

pub fn trace_embedding_vectors(n: usize) -> TraceEmbeddings {
    let mut first = Vec::new();
    for vt_index in 0..2 {
        let vt = [delta(vt_index, 0), delta(vt_index, 1)];
        for a in 0..n {
            for b in a + 1..n {
                for c in 0..n {
                    let nn = |i: usize, k: usize, m: usize| {
                        (delta(i, a) * delta(k, b) - delta(i, b) * delta(k, a)) * delta(m, c)
                    };
                    first.push(product_tensor(n, sym_with(&vt), nn));
                }
            }
        }
    }
    let mut second = Vec::new();
    for (x, y) in [(0, 0), (0, 1), (1, 1)] {
        for out in 0..2 {
            let s = move |jp: usize, lp: usize, pp: usize| {
                let hit = (jp == x && lp == y) || (jp == y && lp == x);
                if hit && pp == out {
                    RationalScalar::one()
                } else {
                    RationalScalar::zero()
                }
            };
            for t in 0..n {
                let tau: Vec<RationalScalar> = (0..n).map(|k| delta(k, t)).collect();
                second.push(product_tensor(n, s, skew_with(&tau)));
            }
        }
    }
    TraceEmbeddings { first, second }
}

/// The second-kind trace vector for an arbitrary `τ`, with the symmetric
/// part `S` selected by `(x, y, out)`.
pub fn trace_vector_for_tau(n: usize, s_index: (usize, usize, usize), tau: &[RationalScalar]) -> Vec<RationalScalar> {
    let (x, y, out) = s_index;
    let s = move |jp: usize, lp: usize, pp: usize| {
        let hit = (jp == x && lp == y) || (jp == y && lp == x);
        if hit && pp == out {
            RationalScalar::one()
        } else {
            RationalScalar::zero()
        }
    };
    product_tensor(n, s, skew_with(tau))
}

/// Spanning vectors of `(Λ²R² ⊗ R^{2*}) ⊠ (S²R^{n*} ⊗ R^n)`:
/// `S(α,β) = (α₁β₂ − α₂β₁)γ` against `N(w,u) = (w_a u_b + w_b u_a) e_c`.
pub fn first_summand_vectors(n: usize) -> Vec<Vec<RationalScalar>> {
    let mut out = Vec::new();
    for g in 0..2 {
        let s = move |jp: usize, lp: usize, pp: usize| {
            (delta(jp, 0) * delta(lp, 1) - delta(jp, 1) * delta(lp, 0)) * delta(pp, g)
        };
        for a in 0..n {
            for b in a..n {
                for c in 0..n {
                    let nn = |i: usize, k: usize, m: usize| {
                        (delta(i, a) * delta(k, b) + delta(i, b) * delta(k, a)) * delta(m, c)
                    };
                    out.push(product_tensor(n, s, nn));
                }
            }
        }
    }
    out
}

/// Evaluates `T(ξ, η)` for `T ∈ Λ²g₋₁* ⊗ g₋₁` and flat `ξ, η ∈ g₋₁`.
pub fn evaluate_bilinear(n: usize, t: &[RationalScalar], xi: &[RationalScalar], eta: &[RationalScalar]) -> Vec<RationalScalar> {
    let d = 2 * n;
    let mut out = vec![RationalScalar::zero(); d];
    for a in 0..d {
        for b in a + 1..d {
            let w = &xi[a] * &eta[b] - &xi[b] * &eta[a];
            if w.is_zero() {
                continue;
            }
            let p = pair_index(a, b, d);
            for c in 0..d {
                let v = &t[p * d + c];
                if !v.is_zero() {
                    out[c] += &w * v;
                }
            }
        }
    }
    out
}

/// Applies `Y ∈ g₋₁ = Hom(R², Rⁿ)` to `v ∈ R²`.
pub fn apply_minus1(n: usize, y: &[RationalScalar], v: &[RationalScalar]) -> Vec<RationalScalar> {
    (0..n)
        .map(|i| &y[2 * i] * &v[0] + &y[2 * i + 1] * &v[1])
        .collect()
}

/// Flat coordinates of `α ⊗ w`.
pub fn decomposable(alpha: &[RationalScalar], w: &[RationalScalar]) -> Vec<RationalScalar> {
    w.iter()
        .flat_map(|wi| alpha.iter().map(move |aj| wi * aj))
        .collect()
}

/// `T(α⊗w₁, α⊗w₂)(v) ∈ span{w₁, w₂}` for `α(v) = 0`.
pub fn lemma_conclusion(
    n: usize,
    t: &[RationalScalar],
    alpha: &[RationalScalar],
    w1: &[RationalScalar],
    w2: &[RationalScalar],
    v: &[RationalScalar],
) -> bool {
    let value = evaluate_bilinear(n, t, &decomposable(alpha, w1), &decomposable(alpha, w2));
    let image = apply_minus1(n, &value, v);
    let span = Subspace::span(n, &[w1.to_vec(), w2.to_vec()]).expect("vectors of length n");
    span.contains(&image).expect("vector of length n")
}
