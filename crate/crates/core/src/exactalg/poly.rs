//! Sparse multivariate polynomials over ℚ in lexicographic order.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::scalar::{to_f64, RationalScalar};

pub const MAX_VARS: usize = 32;

/// Exponent vector indexed by variable-table position. Comparison is
/// lexicographic in table order, so `x11 > x12 > ... > t > s > c2 > ...`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial([u8; MAX_VARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; MAX_VARS])
    }

    pub fn var(index: usize) -> Self {
        let mut m = Self::one();
        m.0[index] = 1;
        m
    }

    pub fn exponent(&self, index: usize) -> u32 {
        u32::from(self.0[index])
    }

    pub fn set(&mut self, index: usize, e: u8) {
        self.0[index] = e;
    }

    pub fn exponents(&self) -> &[u8; MAX_VARS] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| u32::from(e)).sum()
    }

    /// Degree with per-variable weights taken from `weights` (0 or 1 each).
    pub fn weighted_degree(&self, weights: &Monomial) -> u32 {
        self.0
            .iter()
            .zip(weights.0.iter())
            .map(|(&e, &w)| u32::from(e) * u32::from(w))
            .sum()
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        let mut out = [0u8; MAX_VARS];
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = self.0[k]
                .checked_add(other.0[k])
                .expect("exponent overflow in monomial product");
        }
        Monomial(out)
    }

    pub fn divide(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = [0u8; MAX_VARS];
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = self.0[k].checked_sub(other.0[k])?;
        }
        Some(Monomial(out))
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, RationalScalar>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: RationalScalar) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn one() -> Self {
        Self::constant(RationalScalar::one())
    }

    pub fn var(index: usize) -> Self {
        Self::monomial(Monomial::var(index), RationalScalar::one())
    }

    pub fn monomial(m: Monomial, c: RationalScalar) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, RationalScalar)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &RationalScalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> RationalScalar {
        self.terms.get(m).cloned().unwrap_or_else(RationalScalar::zero)
    }

    /// Leading term in lex order.
    pub fn leading(&self) -> Option<(&Monomial, &RationalScalar)> {
        self.terms.iter().next_back()
    }

    pub fn as_constant(&self) -> Option<RationalScalar> {
        match self.terms.len() {
            0 => Some(RationalScalar::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    fn add_term(&mut self, m: Monomial, c: RationalScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &RationalScalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn depends_on(&self, index: usize) -> bool {
        self.terms.keys().any(|m| m.exponent(index) > 0)
    }

    pub fn degree_in(&self, index: usize) -> u32 {
        self.terms.keys().map(|m| m.exponent(index)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// `(min, max)` weighted degree over the terms; `None` for zero.
    pub fn weighted_degree_range(&self, weights: &Monomial) -> Option<(u32, u32)> {
        let mut it = self.terms.keys().map(|m| m.weighted_degree(weights));
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), d| (lo.min(d), hi.max(d))))
    }

    pub fn derivative(&self, index: usize) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(index);
            if e == 0 {
                continue;
            }
            let mut dm = *m;
            dm.set(index, (e - 1) as u8);
            out.add_term(dm, c * RationalScalar::from_integer(e.into()));
        }
        out
    }

    pub fn evaluate(&self, values: &[RationalScalar]) -> RationalScalar {
        let mut acc = RationalScalar::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (k, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    term *= num_traits::pow(values[k].clone(), e as usize);
                }
            }
            acc += term;
        }
        acc
    }

    pub fn evaluate_f64(&self, values: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.exponents()
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .fold(to_f64(c), |acc, (k, &e)| acc * values[k].powi(e as i32))
            })
            .sum()
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder.
    pub fn exact_div(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (lm, lc) = divisor.leading().expect("division by the zero polynomial");
        if self.is_zero() {
            return Some(Polynomial::zero());
        }
        for (k, &e) in lm.exponents().iter().enumerate() {
            if e > 0 && self.degree_in(k) < u32::from(e) {
                return None;
            }
        }
        let (lm, lc) = (*lm, lc.clone());
        let mut rem = self.clone();
        let mut quot = Polynomial::zero();
        while let Some((m, c)) = rem.leading() {
            let qm = m.divide(&lm)?;
            let qc = c / &lc;
            for (k, a) in &divisor.terms {
                rem.add_term(k.times(&qm), -(a * &qc));
            }
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Splits off the leading coefficient: `self = lc * monic`.
    pub fn monic(&self) -> (RationalScalar, Polynomial) {
        match self.leading() {
            None => (RationalScalar::zero(), Polynomial::zero()),
            Some((_, lc)) => {
                let lc = lc.clone();
                let inv = lc.recip();
                (lc, self.scale(&inv))
            }
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (big, small) = if self.terms.len() >= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        if self.is_zero() || rhs.is_zero() {
            return out;
        }
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.times(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}
