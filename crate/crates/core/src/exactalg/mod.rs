//! Exact multivariate polynomial and rational-function arithmetic over ℚ.

mod fd;
mod poly;
mod ratfun;
mod scalar;
mod vars;

pub use fd::{fd_check, FdCheck};
pub use poly::{Monomial, Polynomial, MAX_VARS};
pub use ratfun::{arith, render_polynomial, ArithOp, DegreeInfo, NetDegree, RationalFunction};
pub use scalar::{
    format_rational, frac, int, parse_rational, parse_rational_list, to_f64, RationalScalar,
};
pub use vars::{Var, VariableTable, MAX_N};

use num_traits::{One, Zero};

/// The arithmetic shared by exact scalars and rational functions, so that
/// geometric constructions can run either symbolically or at a point.
pub trait Field: Clone + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_int_like(&self, k: i64) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn inverse(&self) -> Option<Self>;
    fn is_zero_elem(&self) -> bool;
    fn same_value(&self, other: &Self) -> bool;
}

impl Field for RationalScalar {
    fn zero_like(&self) -> Self {
        RationalScalar::zero()
    }
    fn one_like(&self) -> Self {
        RationalScalar::one()
    }
    fn from_int_like(&self, k: i64) -> Self {
        int(k)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn same_value(&self, other: &Self) -> bool {
        self == other
    }
}

impl Field for RationalFunction {
    fn zero_like(&self) -> Self {
        RationalFunction::zero(self.table())
    }
    fn one_like(&self) -> Self {
        RationalFunction::one(self.table())
    }
    fn from_int_like(&self, k: i64) -> Self {
        RationalFunction::int(self.table(), k)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        self.recip()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn same_value(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

#[cfg(test)]
mod tests;
