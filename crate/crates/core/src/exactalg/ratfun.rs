//! Rational functions with factored denominators.
//!
//! A value is `numerator / ∏ factor^exponent`. Factors are monic, non-constant
//! and kept sorted, so identical factors merge. There is no general gcd:
//! cancellation only happens by trial division of the numerator by stored
//! factors, and equality is decided by cross-multiplication.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::poly::{Monomial, Polynomial};
use super::scalar::{int, RationalScalar};
use super::vars::{Var, VariableTable};
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct RationalFunction {
    table: Arc<VariableTable>,
    num: Polynomial,
    den: Vec<(Arc<Polynomial>, u32)>,
}

/// Degree bookkeeping in the chart variables; `t`, `s` and the deformation
/// parameters carry weight zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeInfo {
    pub numerator_total_degree: Option<u32>,
    pub numerator_min_degree: Option<u32>,
    pub is_numerator_homogeneous: bool,
    pub denominator_degree: u32,
    pub net_degree: NetDegree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum NetDegree {
    Finite(i64),
    /// Sentinel for the zero function.
    Infinite,
}

impl DegreeInfo {
    /// Net degree of the lowest-degree part of the numerator.
    pub fn min_net_degree(&self) -> NetDegree {
        match self.numerator_min_degree {
            None => NetDegree::Infinite,
            Some(d) => NetDegree::Finite(i64::from(d) - i64::from(self.denominator_degree)),
        }
    }
}

/// Binary operations accepted by [`arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Checked binary arithmetic: fails instead of panicking when the operands
/// come from different variable tables.
pub fn arith(a: &RationalFunction, b: &RationalFunction, op: ArithOp) -> Result<RationalFunction> {
    if !a.same_table(b) {
        return Err(Error::TableMismatch);
    }
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
    })
}

fn merge_factors(
    a: &[(Arc<Polynomial>, u32)],
    b: &[(Arc<Polynomial>, u32)],
    combine: impl Fn(u32, u32) -> u32,
) -> Vec<(Arc<Polynomial>, u32)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ord = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) => x.0.cmp(&y.0),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => unreachable!(),
        };
        match ord {
            Ordering::Less => {
                out.push((a[i].0.clone(), combine(a[i].1, 0)));
                i += 1;
            }
            Ordering::Greater => {
                out.push((b[j].0.clone(), combine(0, b[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                out.push((a[i].0.clone(), combine(a[i].1, b[j].1)));
                i += 1;
                j += 1;
            }
        }
    }
    out.retain(|(_, e)| *e > 0);
    out
}

fn product_of(factors: &[(Arc<Polynomial>, u32)]) -> Polynomial {
    factors
        .iter()
        .fold(Polynomial::one(), |acc, (f, e)| &acc * &f.pow(*e))
}

/// Cofactor `∏ f^(lcm_e - own_e)` lifting `own` to the common denominator.
fn cofactor(lcm: &[(Arc<Polynomial>, u32)], own: &[(Arc<Polynomial>, u32)]) -> Polynomial {
    let mut acc = Polynomial::one();
    let mut j = 0;
    for (f, e) in lcm {
        let mut have = 0;
        if j < own.len() && own[j].0 == *f {
            have = own[j].1;
            j += 1;
        }
        if *e > have {
            acc = &acc * &f.pow(*e - have);
        }
    }
    acc
}

impl RationalFunction {
    pub fn from_polynomial(table: &Arc<VariableTable>, num: Polynomial) -> Self {
        RationalFunction {
            table: table.clone(),
            num,
            den: Vec::new(),
        }
    }

    pub fn zero(table: &Arc<VariableTable>) -> Self {
        Self::from_polynomial(table, Polynomial::zero())
    }

    pub fn one(table: &Arc<VariableTable>) -> Self {
        Self::from_polynomial(table, Polynomial::one())
    }

    pub fn constant(table: &Arc<VariableTable>, c: RationalScalar) -> Self {
        Self::from_polynomial(table, Polynomial::constant(c))
    }

    pub fn int(table: &Arc<VariableTable>, k: i64) -> Self {
        Self::constant(table, int(k))
    }

    pub fn var_index(table: &Arc<VariableTable>, index: usize) -> Self {
        assert!(index < table.len(), "variable index out of range");
        Self::from_polynomial(table, Polynomial::var(index))
    }

    pub fn var(table: &Arc<VariableTable>, var: Var) -> Result<Self> {
        Ok(Self::var_index(table, table.require(var)?))
    }

    /// `num / den` with `den` split against the localization generators.
    pub fn quotient(table: &Arc<VariableTable>, num: Polynomial, den: &Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Usage("zero denominator".into()));
        }
        let mut f = Self::from_polynomial(table, num);
        let (lc, rest) = den.monic();
        f.num = f.num.scale(&lc.recip());
        let factors = Self::split_factor(table, rest, &[]);
        f.den = merge_factors(&f.den, &factors, |a, b| a + b);
        f.reduce();
        Ok(f)
    }

    pub fn table(&self) -> &Arc<VariableTable> {
        &self.table
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator_factors(&self) -> impl Iterator<Item = (&Polynomial, u32)> {
        self.den.iter().map(|(f, e)| (f.as_ref(), *e))
    }

    pub fn denominator(&self) -> Polynomial {
        product_of(&self.den)
    }

    pub fn same_table(&self, other: &RationalFunction) -> bool {
        Arc::ptr_eq(&self.table, &other.table) || *self.table == *other.table
    }

    fn check_table(&self, other: &RationalFunction) {
        assert!(
            self.same_table(other),
            "rational functions from different variable tables"
        );
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_constant(&self) -> Option<RationalScalar> {
        if self.num.is_zero() {
            return Some(RationalScalar::zero());
        }
        if self.den.is_empty() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn depends_on(&self, index: usize) -> bool {
        self.num.depends_on(index) || self.den.iter().any(|(f, _)| f.depends_on(index))
    }

    /// Splits a monic polynomial into known factors (generators first, then
    /// `extra`) by repeated trial division; the leftover, if non-constant,
    /// becomes a new factor.
    fn split_factor(
        table: &VariableTable,
        mut p: Polynomial,
        extra: &[(Arc<Polynomial>, u32)],
    ) -> Vec<(Arc<Polynomial>, u32)> {
        let mut found: BTreeMap<Polynomial, u32> = BTreeMap::new();
        if p.as_constant().is_some() {
            return Vec::new();
        }
        let candidates = table
            .generators()
            .iter()
            .map(|(_, g)| g)
            .chain(extra.iter().map(|(f, _)| f.as_ref()));
        for g in candidates {
            if p.as_constant().is_some() {
                break;
            }
            while let Some(quot) = p.exact_div(g) {
                *found.entry(g.clone()).or_insert(0) += 1;
                p = quot;
                if p.as_constant().is_some() {
                    break;
                }
            }
        }
        if p.as_constant().is_none() {
            let (_, monic) = p.monic();
            *found.entry(monic).or_insert(0) += 1;
        }
        found.into_iter().map(|(f, e)| (Arc::new(f), e)).collect()
    }

    /// Cancels stored denominator factors that divide the numerator.
    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        for (f, e) in self.den.iter_mut() {
            while *e > 0 {
                match self.num.exact_div(f) {
                    Some(q) => {
                        self.num = q;
                        *e -= 1;
                    }
                    None => break,
                }
            }
        }
        self.den.retain(|(_, e)| *e > 0);
    }

    pub fn scale(&self, c: &RationalScalar) -> Self {
        let mut out = self.clone();
        out.num = out.num.scale(c);
        if out.num.is_zero() {
            out.den.clear();
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.table);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse, `None` for the zero function.
    pub fn recip(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        let (lc, monic) = self.num.monic();
        let new_num = product_of(&self.den).scale(&lc.recip());
        let den = Self::split_factor(&self.table, monic, &self.den);
        let mut out = RationalFunction {
            table: self.table.clone(),
            num: new_num,
            den,
        };
        out.reduce();
        Some(out)
    }

    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        other.recip().map(|r| self * &r)
    }

    /// Partial derivative by the quotient rule; each factor that depends on
    /// the variable gains exactly one power in the denominator.
    pub fn differentiate(&self, index: usize) -> Self {
        let dep: Vec<usize> = (0..self.den.len())
            .filter(|&k| self.den[k].0.depends_on(index))
            .collect();
        let dnum = self.num.derivative(index);
        if dep.is_empty() {
            let mut out = RationalFunction {
                table: self.table.clone(),
                num: dnum,
                den: self.den.clone(),
            };
            out.reduce();
            return out;
        }
        let all_dep = dep
            .iter()
            .fold(Polynomial::one(), |acc, &k| &acc * self.den[k].0.as_ref());
        let mut num = &dnum * &all_dep;
        for &k in &dep {
            let (f, e) = &self.den[k];
            let others = dep
                .iter()
                .filter(|&&j| j != k)
                .fold(Polynomial::one(), |acc, &j| &acc * self.den[j].0.as_ref());
            let term = &(&self.num * &f.derivative(index)) * &others;
            num = &num - &term.scale(&RationalScalar::from_integer((*e).into()));
        }
        let mut den = self.den.clone();
        for &k in &dep {
            den[k].1 += 1;
        }
        let mut out = RationalFunction {
            table: self.table.clone(),
            num,
            den,
        };
        out.reduce();
        out
    }

    pub fn differentiate_var(&self, var: Var) -> Result<Self> {
        Ok(self.differentiate(self.table.require(var)?))
    }

    /// Exact value at a full assignment (one scalar per table variable).
    pub fn evaluate(&self, values: &[RationalScalar]) -> Result<RationalScalar> {
        if values.len() != self.table.len() {
            return Err(Error::DimensionMismatch {
                expected: self.table.len(),
                got: values.len(),
            });
        }
        let mut den = RationalScalar::one();
        for (f, e) in &self.den {
            let v = f.evaluate(values);
            if v.is_zero() {
                return Err(Error::PoleAtPoint {
                    factor: self.render_factor(f, false),
                });
            }
            den *= num_traits::pow(v, *e as usize);
        }
        Ok(self.num.evaluate(values) / den)
    }

    /// Exact value at a partial assignment; every variable the function
    /// depends on must be bound.
    pub fn evaluate_map(&self, point: &BTreeMap<Var, RationalScalar>) -> Result<RationalScalar> {
        let mut values = vec![RationalScalar::zero(); self.table.len()];
        for (var, v) in point {
            values[self.table.require(*var)?] = v.clone();
        }
        for index in 0..self.table.len() {
            let var = self.table.var(index);
            if self.depends_on(index) && !point.contains_key(&var) {
                return Err(Error::UnboundVariable(var.to_string()));
            }
        }
        self.evaluate(&values)
    }

    pub fn evaluate_f64(&self, values: &[f64]) -> f64 {
        let den: f64 = self
            .den
            .iter()
            .map(|(f, e)| f.evaluate_f64(values).powi(*e as i32))
            .product();
        self.num.evaluate_f64(values) / den
    }

    /// Substitutes `subs[k]` for variable `k` wherever it is `Some`.
    pub fn substitute(&self, subs: &[Option<RationalFunction>]) -> Result<Self> {
        assert_eq!(subs.len(), self.table.len(), "substitution arity");
        let mut cache: Vec<Vec<RationalFunction>> = vec![Vec::new(); subs.len()];
        let mut power = |k: usize, e: u32, base: &RationalFunction| -> RationalFunction {
            let powers = &mut cache[k];
            if powers.is_empty() {
                powers.push(RationalFunction::one(&self.table));
            }
            while powers.len() <= e as usize {
                let next = powers.last().unwrap() * base;
                powers.push(next);
            }
            powers[e as usize].clone()
        };
        let mut eval_poly = |p: &Polynomial| -> RationalFunction {
            let mut acc = RationalFunction::zero(&self.table);
            for (m, c) in p.terms() {
                let mut kept = Monomial::one();
                let mut term = RationalFunction::constant(&self.table, c.clone());
                for k in 0..subs.len() {
                    let e = m.exponent(k);
                    if e == 0 {
                        continue;
                    }
                    match &subs[k] {
                        Some(s) => term = &term * &power(k, e, s),
                        None => kept.set(k, e as u8),
                    }
                }
                if !kept.is_one() {
                    term = &term
                        * &RationalFunction::from_polynomial(
                            &self.table,
                            Polynomial::monomial(kept, RationalScalar::one()),
                        );
                }
                acc = &acc + &term;
            }
            acc
        };
        for s in subs.iter().flatten() {
            self.check_table(s);
        }
        let mut out = eval_poly(&self.num);
        for (f, e) in &self.den {
            let fs = eval_poly(f);
            let inv = fs.recip().ok_or_else(|| Error::PoleAtPoint {
                factor: self.render_factor(f, false),
            })?;
            out = &out * &inv.pow(*e);
        }
        Ok(out)
    }

    /// Cross-multiplication equality test.
    pub fn equals(&self, other: &Self) -> bool {
        self.check_table(other);
        let lcm = merge_factors(&self.den, &other.den, u32::max);
        let a = &self.num * &cofactor(&lcm, &self.den);
        let b = &other.num * &cofactor(&lcm, &other.den);
        a == b
    }

    pub fn degree_info(&self) -> DegreeInfo {
        let w = self.table.chart_weights();
        let denominator_degree: u32 = self
            .den
            .iter()
            .map(|(f, e)| {
                let (_, hi) = f.weighted_degree_range(&w).unwrap_or((0, 0));
                hi * e
            })
            .sum();
        match self.num.weighted_degree_range(&w) {
            None => DegreeInfo {
                numerator_total_degree: None,
                numerator_min_degree: None,
                is_numerator_homogeneous: true,
                denominator_degree,
                net_degree: NetDegree::Infinite,
            },
            Some((lo, hi)) => DegreeInfo {
                numerator_total_degree: Some(hi),
                numerator_min_degree: Some(lo),
                is_numerator_homogeneous: lo == hi,
                denominator_degree,
                net_degree: NetDegree::Finite(i64::from(hi) - i64::from(denominator_degree)),
            },
        }
    }

    /// True when the denominator is exactly `p^e` (with `p` monic).
    pub fn denominator_is(&self, p: &Polynomial, e: u32) -> bool {
        self.den.len() == 1 && self.den[0].0.as_ref() == p && self.den[0].1 == e
    }

    fn render_poly(&self, p: &Polynomial, latex: bool) -> String {
        render_polynomial(&self.table, p, latex)
    }

    fn render_factor(&self, f: &Polynomial, latex: bool) -> String {
        match self.table.generator_name(f) {
            Some(name) => name.to_string(),
            None => format!("({})", self.render_poly(f, latex)),
        }
    }

    pub fn to_latex(&self) -> String {
        let num = self.render_poly(&self.num, true);
        if self.den.is_empty() {
            return num;
        }
        let den: Vec<String> = self
            .den
            .iter()
            .map(|(f, e)| {
                let base = self.render_factor(f, true);
                if *e == 1 {
                    base
                } else {
                    format!("{base}^{{{e}}}")
                }
            })
            .collect();
        format!("\\frac{{{}}}{{{}}}", num, den.join(" "))
    }
}

/// Plain or LaTeX rendering with terms in descending lex order.
pub fn render_polynomial(table: &VariableTable, p: &Polynomial, latex: bool) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, (m, c)) in p.terms().rev().enumerate() {
        let negative = c < &RationalScalar::zero();
        let mag = if negative { -c.clone() } else { c.clone() };
        if idx == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mut factors: Vec<String> = Vec::new();
        for k in 0..table.len() {
            let e = m.exponent(k);
            if e == 0 {
                continue;
            }
            let name = if latex {
                table.latex_name(k)
            } else {
                table.name(k)
            };
            factors.push(match (e, latex) {
                (1, _) => name,
                (_, true) => format!("{name}^{{{e}}}"),
                (_, false) => format!("{name}^{e}"),
            });
        }
        let coeff = if mag.denom().is_one() {
            mag.numer().to_string()
        } else if latex {
            format!("\\frac{{{}}}{{{}}}", mag.numer(), mag.denom())
        } else {
            format!("{}/{}", mag.numer(), mag.denom())
        };
        let sep = if latex { " " } else { "*" };
        if factors.is_empty() {
            out.push_str(&coeff);
        } else if mag.is_one() {
            out.push_str(&factors.join(sep));
        } else {
            out.push_str(&coeff);
            out.push_str(sep);
            out.push_str(&factors.join(sep));
        }
    }
    out
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.render_poly(&self.num, false);
        if self.den.is_empty() {
            return f.write_str(&num);
        }
        let den: Vec<String> = self
            .den
            .iter()
            .map(|(p, e)| {
                let base = self.render_factor(p, false);
                if *e == 1 {
                    base
                } else {
                    format!("{base}^{e}")
                }
            })
            .collect();
        let num = if self.num.num_terms() > 1 { format!("({num})") } else { num };
        if self.den.len() == 1 && self.den[0].1 == 1 {
            write!(f, "{}/{}", num, den[0])
        } else {
            write!(f, "{}/({})", num, den.join("*"))
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.same_table(other) && self.equals(other)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        self.check_table(rhs);
        if rhs.num.is_zero() {
            return self.clone();
        }
        if self.num.is_zero() {
            return rhs.clone();
        }
        let (num, den) = if self.den == rhs.den {
            (&self.num + &rhs.num, self.den.clone())
        } else {
            let lcm = merge_factors(&self.den, &rhs.den, u32::max);
            let a = &self.num * &cofactor(&lcm, &self.den);
            let b = &rhs.num * &cofactor(&lcm, &rhs.den);
            (&a + &b, lcm)
        };
        let mut out = RationalFunction {
            table: self.table.clone(),
            num,
            den,
        };
        out.reduce();
        out
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            table: self.table.clone(),
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        self.check_table(rhs);
        if self.num.is_zero() || rhs.num.is_zero() {
            return RationalFunction::zero(&self.table);
        }
        let mut out = RationalFunction {
            table: self.table.clone(),
            num: &self.num * &rhs.num,
            den: merge_factors(&self.den, &rhs.den, |a, b| a + b),
        };
        if !out.den.is_empty() {
            out.reduce();
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction { (&self).$m(&rhs) }
        }
        impl $tr<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: &RationalFunction) -> RationalFunction { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}
