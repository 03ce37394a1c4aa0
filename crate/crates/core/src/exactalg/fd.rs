//! Central-difference cross-check for symbolic derivatives.

use super::ratfun::RationalFunction;
use super::scalar::{int, to_f64, RationalScalar};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct FdCheck {
    pub symbolic: RationalScalar,
    pub central_difference: f64,
    pub rel_error: f64,
}

/// Compares `∂f/∂var` at `point` with `(f(p + h e) - f(p - h e)) / 2h`.
///
/// The stencil values are exact; only the quotient is taken in floating
/// point. The relative error falls back to the absolute error when the
/// symbolic derivative vanishes.
pub fn fd_check(
    f: &RationalFunction,
    var: usize,
    point: &[RationalScalar],
    step: &RationalScalar,
) -> Result<FdCheck> {
    if var >= f.table().len() {
        return Err(Error::UnknownVariable(format!("#{var}")));
    }
    let symbolic = f.differentiate(var).evaluate(point)?;
    let mut plus = point.to_vec();
    plus[var] += step;
    let mut minus = point.to_vec();
    minus[var] -= step;
    let quotient = (f.evaluate(&plus)? - f.evaluate(&minus)?) / (step * int(2));
    let central_difference = to_f64(&quotient);
    let exact = to_f64(&symbolic);
    let diff = (central_difference - exact).abs();
    let rel_error = if exact == 0.0 { diff } else { diff / exact.abs() };
    Ok(FdCheck {
        symbolic,
        central_difference,
        rel_error,
    })
}
