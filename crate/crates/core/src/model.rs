//! The affine chart `U = Hom(R², Rⁿ)`, the flow `z^t` with `Z = e¹ ⊗ e_{1'}`,
//! its holonomy and its actions on the bundles `E`, `E*`, `F`, `F*`.

use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::{
    format_rational, parse_rational, Field, RationalFunction, RationalScalar, Var, VariableTable,
};
use crate::linalg::Matrix;

/// A point of the chart as an `n × 2` matrix; entry `(i, j)` is `x_{i+1, j+1}`.
pub type ChartPoint<T> = Matrix<T>;

/// The chart `U` of `Gr(2, n)` together with its variable table.
#[derive(Clone, Debug)]
pub struct Chart {
    table: Arc<VariableTable>,
}

impl Chart {
    pub fn new(n: usize) -> Result<Self> {
        Ok(Chart {
            table: Arc::new(VariableTable::chart(n)?),
        })
    }

    /// Like [`Chart::new`] but for operations that need `n ≥ 3`.
    pub fn for_deformation(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Usage(format!(
                "the deformation family needs n >= 3, got {n}"
            )));
        }
        Self::new(n)
    }

    pub fn n(&self) -> usize {
        self.table.n()
    }

    pub fn table(&self) -> &Arc<VariableTable> {
        &self.table
    }

    pub fn x(&self, row: usize, col: usize) -> RationalFunction {
        RationalFunction::var_index(&self.table, self.table.x(row, col))
    }

    pub fn t(&self) -> RationalFunction {
        RationalFunction::var(&self.table, Var::T).expect("t is in every table")
    }

    pub fn s(&self) -> RationalFunction {
        RationalFunction::var(&self.table, Var::S).expect("s is in every table")
    }

    /// The deformation parameter `c_{i+1}`, `i ∈ 1..n`.
    pub fn c(&self, i: usize) -> Result<RationalFunction> {
        RationalFunction::var(&self.table, Var::C(i))
    }

    pub fn zero(&self) -> RationalFunction {
        RationalFunction::zero(&self.table)
    }

    pub fn one(&self) -> RationalFunction {
        RationalFunction::one(&self.table)
    }

    pub fn int(&self, k: i64) -> RationalFunction {
        RationalFunction::int(&self.table, k)
    }

    pub fn constant(&self, c: RationalScalar) -> RationalFunction {
        RationalFunction::constant(&self.table, c)
    }

    /// The generic point, with entry `(i, j)` the variable `x_{i+1, j+1}`.
    pub fn symbolic_point(&self) -> ChartPoint<RationalFunction> {
        Matrix::from_fn(self.n(), 2, |r, c| self.x(r, c))
    }

    /// A numeric point lifted to constant rational functions.
    pub fn lift(&self, x: &ChartPoint<RationalScalar>) -> ChartPoint<RationalFunction> {
        x.map(|v| self.constant(v.clone()))
    }

    /// Lifts a scalar to a constant rational function of this chart.
    pub fn lift_scalar(&self, v: &RationalScalar) -> RationalFunction {
        self.constant(v.clone())
    }

    /// A full assignment of the variable table: chart coordinates from `x`,
    /// every other variable zero unless set in `extra`.
    pub fn bind(&self, x: &ChartPoint<RationalScalar>, extra: &[(Var, RationalScalar)]) -> Result<Vec<RationalScalar>> {
        self.check_shape(x)?;
        let mut values = vec![RationalScalar::zero(); self.table.len()];
        for row in 0..self.n() {
            for col in 0..2 {
                values[self.table.x(row, col)] = x.get(row, col).clone();
            }
        }
        for (var, v) in extra {
            values[self.table.require(*var)?] = v.clone();
        }
        Ok(values)
    }

    /// Assignment with the deformation parameters `c_2..c_n` set from `c`.
    pub fn bind_with_c(&self, x: &ChartPoint<RationalScalar>, c: &[RationalScalar]) -> Result<Vec<RationalScalar>> {
        if c.len() != self.n() - 1 {
            return Err(Error::Usage(format!(
                "expected {} deformation parameters, got {}",
                self.n() - 1,
                c.len()
            )));
        }
        let extra: Vec<(Var, RationalScalar)> =
            c.iter().enumerate().map(|(k, v)| (Var::C(k + 1), v.clone())).collect();
        self.bind(x, &extra)
    }

    pub fn check_shape<T: Field>(&self, x: &ChartPoint<T>) -> Result<()> {
        if x.rows() != self.n() || x.cols() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2 * self.n(),
                got: x.rows() * x.cols(),
            });
        }
        Ok(())
    }
}

/// Parses the row format `"1,3;2,0;0,0"` into an `n × 2` point.
pub fn parse_point(input: &str) -> Result<ChartPoint<RationalScalar>> {
    let err = |reason: String| Error::Parse {
        input: input.to_string(),
        reason,
    };
    let mut data = Vec::new();
    let mut rows = 0;
    for (k, row) in input.trim().split(';').enumerate() {
        let entries: Vec<&str> = row.split(',').collect();
        if entries.len() != 2 {
            return Err(err(format!("row {} must have 2 entries, has {}", k + 1, entries.len())));
        }
        for e in entries {
            data.push(parse_rational(e)?);
        }
        rows += 1;
    }
    Matrix::new(rows, 2, data)
}

pub fn format_point(x: &ChartPoint<RationalScalar>) -> String {
    (0..x.rows())
        .map(|r| {
            x.row(r)
                .iter()
                .map(format_rational)
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect::<Vec<_>>()
        .join(";")
}

fn pole(factor: &str) -> Error {
    Error::PoleAtPoint {
        factor: factor.to_string(),
    }
}

/// `1 + t x11` and its inverse.
fn flow_denominator<T: Field>(x: &ChartPoint<T>, t: &T) -> Result<(T, T)> {
    let d = x.get(0, 0).times(t).plus(&t.one_like());
    let inv = d.inverse().ok_or_else(|| pole("1+t*x11"))?;
    Ok((d, inv))
}

/// `z^t · X = X (Id + tZX)⁻¹`: column 1 becomes `x_{i1}/(1+tx11)` and
/// column 2 becomes `x_{i2} − t x12 x_{i1}/(1+tx11)`.
pub fn flow_point<T: Field>(x: &ChartPoint<T>, t: &T) -> Result<ChartPoint<T>> {
    let (_, inv) = flow_denominator(x, t)?;
    let shift = t.times(x.get(0, 1)).times(&inv);
    Ok(Matrix::from_fn(x.rows(), 2, |r, c| {
        let xi1 = x.get(r, 0);
        if c == 0 {
            xi1.times(&inv)
        } else {
            x.get(r, 1).minus(&shift.times(xi1))
        }
    }))
}

/// `z^t · X = X_f + (1 + t x11)⁻¹ X_d`, valid off `H0`.
pub fn flow_point_via_split<T: Field>(x: &ChartPoint<T>, t: &T) -> Result<ChartPoint<T>> {
    let (xf, xd) = split_fixed_plus_rank1(x)?;
    let (_, inv) = flow_denominator(x, t)?;
    xf.add(&xd.map(|v| v.times(&inv)))
}

/// `p_t(X)` as an `(n+2) × (n+2)` block matrix.
pub fn holonomy<T: Field>(x: &ChartPoint<T>, t: &T) -> Result<Matrix<T>> {
    let n = x.rows();
    let b = bundle_actions(x, t)?;
    let zero = t.zero_like();
    Ok(Matrix::from_fn(n + 2, n + 2, |r, c| match (r < 2, c < 2) {
        (true, true) => b.on_e.get(r, c).clone(),
        (true, false) if r == 0 && c == 2 => t.clone(),
        (false, false) => b.on_f.get(r - 2, c - 2).clone(),
        _ => zero.clone(),
    }))
}

/// The four bundle actions at `X`. `on_e` and `on_f` act on coefficient
/// columns in the frames `E_{1'}, E_{2'}` and `E_1..E_n`. For the duals the
/// column action is stored, which is the transpose-inverse; the displayed
/// matrices of the pullbacks act on coefficient rows and are returned by
/// [`BundleActionMatrices::displayed_estar`] and
/// [`BundleActionMatrices::displayed_fstar`].
#[derive(Clone, Debug)]
pub struct BundleActionMatrices<T> {
    pub on_e: Matrix<T>,
    pub on_estar: Matrix<T>,
    pub on_f: Matrix<T>,
    pub on_fstar: Matrix<T>,
}

impl<T: Field> BundleActionMatrices<T> {
    pub fn displayed_estar(&self) -> Matrix<T> {
        self.on_estar.transpose()
    }

    pub fn displayed_fstar(&self) -> Matrix<T> {
        self.on_fstar.transpose()
    }
}

pub fn bundle_actions<T: Field>(x: &ChartPoint<T>, t: &T) -> Result<BundleActionMatrices<T>> {
    let n = x.rows();
    let (d, inv) = flow_denominator(x, t)?;
    let zero = t.zero_like();
    let one = t.one_like();
    let tx12 = t.times(x.get(0, 1));
    let on_e = Matrix::from_fn(2, 2, |r, c| match (r, c) {
        (0, 0) => d.clone(),
        (0, 1) => tx12.clone(),
        (1, 1) => one.clone(),
        _ => zero.clone(),
    });
    let on_estar = Matrix::from_fn(2, 2, |r, c| match (r, c) {
        (0, 0) => inv.clone(),
        (1, 0) => tx12.times(&inv).negated(),
        (1, 1) => one.clone(),
        _ => zero.clone(),
    });
    let on_f = Matrix::from_fn(n, n, |r, c| match (r, c) {
        (0, 0) => inv.clone(),
        (r, 0) => t.times(x.get(r, 0)).times(&inv).negated(),
        (r, c) if r == c => one.clone(),
        _ => zero.clone(),
    });
    let on_fstar = Matrix::from_fn(n, n, |r, c| match (r, c) {
        (0, 0) => d.clone(),
        (0, c) => t.times(x.get(c, 0)),
        (r, c) if r == c => one.clone(),
        _ => zero.clone(),
    });
    Ok(BundleActionMatrices {
        on_e,
        on_estar,
        on_f,
        on_fstar,
    })
}

/// `X = X_f + X_d` with `X_d = x11⁻¹ X Z X` of rank one and `X_f ∈ SF`.
pub fn split_fixed_plus_rank1<T: Field>(x: &ChartPoint<T>) -> Result<(ChartPoint<T>, ChartPoint<T>)> {
    let x11 = x.get(0, 0);
    let inv = x11.inverse().ok_or(Error::NotDecomposable)?;
    let ratio = x.get(0, 1).times(&inv);
    let xd = Matrix::from_fn(x.rows(), 2, |r, c| {
        let xi1 = x.get(r, 0);
        if c == 0 {
            xi1.clone()
        } else {
            ratio.times(xi1)
        }
    });
    let xf = x.sub(&xd)?;
    Ok((xf, xd))
}

/// Membership of a numeric point in the fixed loci.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Locus {
    pub in_f1: bool,
    pub in_f2: bool,
    pub in_sf: bool,
    pub in_h0: bool,
}

pub fn locus(x: &ChartPoint<RationalScalar>) -> Locus {
    // XZ is the first column of X placed in column 1; ZX is the first row.
    let in_f1 = (0..x.rows()).all(|r| x.get(r, 0).is_zero());
    let in_f2 = x.get(0, 0).is_zero() && x.get(0, 1).is_zero();
    Locus {
        in_f1,
        in_f2,
        in_sf: in_f1 && in_f2,
        in_h0: x.get(0, 0).is_zero(),
    }
}

/// Index of `x_{i j'}` in the flattened `(i, j')` ordering of `g₋₁`.
pub fn flat(row: usize, col: usize) -> usize {
    2 * row + col
}

/// The `2n × 2n` Jacobian of `X ↦ z^t·X` in the chart variables.
pub fn flow_jacobian(chart: &Chart) -> Result<Matrix<RationalFunction>> {
    let image = flow_point(&chart.symbolic_point(), &chart.t())?;
    let n = chart.n();
    let table = chart.table();
    Ok(Matrix::from_fn(2 * n, 2 * n, |a, b| {
        image.get(a / 2, a % 2).differentiate(table.x(b / 2, b % 2))
    }))
}

/// `onF ⊗ onE*` in the coordinate frame: entry `((i,j'),(k,l'))` is
/// `onF[i][k] · onE*[j'][l']`.
pub fn tensor_action<T: Field>(b: &BundleActionMatrices<T>) -> Matrix<T> {
    let n = b.on_f.rows();
    Matrix::from_fn(2 * n, 2 * n, |a, c| {
        b.on_f.get(a / 2, c / 2).times(b.on_estar.get(a % 2, c % 2))
    })
}

/// Substitution sending the chart coordinates to the entries of `y`.
pub fn substitution_for(chart: &Chart, y: &ChartPoint<RationalFunction>) -> Vec<Option<RationalFunction>> {
    let table = chart.table();
    let mut subs = vec![None; table.len()];
    for row in 0..chart.n() {
        for col in 0..2 {
            subs[table.x(row, col)] = Some(y.get(row, col).clone());
        }
    }
    subs
}

/// Pulls a function of `X` back to a function of `z^t·X`.
pub struct FlowPullback {
    subs: Vec<Option<RationalFunction>>,
}

impl FlowPullback {
    pub fn new(chart: &Chart, t: &RationalFunction) -> Result<Self> {
        let image = flow_point(&chart.symbolic_point(), t)?;
        Ok(FlowPullback {
            subs: substitution_for(chart, &image),
        })
    }

    pub fn apply(&self, f: &RationalFunction) -> Result<RationalFunction> {
        f.substitute(&self.subs)
    }

    pub fn apply_matrix(&self, m: &Matrix<RationalFunction>) -> Result<Matrix<RationalFunction>> {
        m.try_map(|f| self.apply(f))
    }
}
