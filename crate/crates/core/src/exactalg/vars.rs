//! The fixed variable ordering of a computation session.

use std::fmt;

use super::poly::{Monomial, Polynomial, MAX_VARS};
use super::scalar::int;
use crate::error::{Error, Result};

/// Largest chart size whose variable table fits in a [`Monomial`].
pub const MAX_N: usize = (MAX_VARS - 1) / 3;

/// A variable identifier. Chart coordinates are 0-based: `X { row: 0, col: 0 }`
/// is `x11`, `X { row: i, col: 1 }` is `x_{i+1,2'}`. `C(i)` is the deformation
/// parameter `c_{i+1}` and exists for `i` in `1..n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X { row: usize, col: usize },
    T,
    S,
    C(usize),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X { row, col } if *row < 9 => write!(f, "x{}{}", row + 1, col + 1),
            Var::X { row, col } => write!(f, "x{}_{}", row + 1, col + 1),
            Var::T => f.write_str("t"),
            Var::S => f.write_str("s"),
            Var::C(i) => write!(f, "c{}", i + 1),
        }
    }
}

impl Var {
    fn latex(&self) -> String {
        match self {
            Var::X { row, col } if *row < 9 => format!("x_{{{}{}}}", row + 1, col + 1),
            Var::X { row, col } => format!("x_{{{},{}}}", row + 1, col + 1),
            Var::T => "t".into(),
            Var::S => "s".into(),
            Var::C(i) => format!("c_{{{}}}", i + 1),
        }
    }

    pub fn is_chart_coordinate(&self) -> bool {
        matches!(self, Var::X { .. })
    }
}

/// Ordered variables `x11, x12, x21, x22, ..., xn2, t, s, c2, ..., cn`,
/// together with the localization generators that denominators are
/// drawn from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableTable {
    n: usize,
    vars: Vec<Var>,
    generators: Vec<(String, Polynomial)>,
}

impl VariableTable {
    pub fn chart(n: usize) -> Result<Self> {
        if !(2..=MAX_N).contains(&n) {
            return Err(Error::Usage(format!(
                "chart size n must lie in 2..={MAX_N}, got {n}"
            )));
        }
        let mut vars = Vec::with_capacity(3 * n + 1);
        for row in 0..n {
            for col in 0..2 {
                vars.push(Var::X { row, col });
            }
        }
        vars.push(Var::T);
        vars.push(Var::S);
        for i in 1..n {
            vars.push(Var::C(i));
        }
        let mut table = VariableTable {
            n,
            vars,
            generators: Vec::new(),
        };
        table.generators = table.localization_generators();
        Ok(table)
    }

    fn localization_generators(&self) -> Vec<(String, Polynomial)> {
        let v = |var: Var| Polynomial::var(self.index_of(var).expect("chart variable"));
        let one = Polynomial::constant(int(1));
        let x11 = v(Var::X { row: 0, col: 0 });
        let x12 = v(Var::X { row: 0, col: 1 });
        let mut q = &x12 * &x12;
        for row in 0..self.n {
            let xi1 = v(Var::X { row, col: 0 });
            q = &q + &(&xi1 * &xi1);
        }
        let t = v(Var::T);
        let s = v(Var::S);
        vec![
            ("q".to_string(), q),
            (String::new(), &one + &(&t * &x11)),
            (String::new(), &one + &(&s * &x11)),
            (String::new(), &one + &(&(&s + &t) * &x11)),
            (String::new(), x11),
        ]
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn var(&self, index: usize) -> Var {
        self.vars[index]
    }

    pub fn index_of(&self, var: Var) -> Option<usize> {
        let n = self.n;
        match var {
            Var::X { row, col } if row < n && col < 2 => Some(2 * row + col),
            Var::T => Some(2 * n),
            Var::S => Some(2 * n + 1),
            Var::C(i) if (1..n).contains(&i) => Some(2 * n + 1 + i),
            _ => None,
        }
    }

    pub fn require(&self, var: Var) -> Result<usize> {
        self.index_of(var)
            .ok_or_else(|| Error::UnknownVariable(var.to_string()))
    }

    /// Index of a chart coordinate in the flattened `(i, j')` ordering.
    pub fn x(&self, row: usize, col: usize) -> usize {
        debug_assert!(row < self.n && col < 2);
        2 * row + col
    }

    pub fn name(&self, index: usize) -> String {
        self.vars[index].to_string()
    }

    pub fn latex_name(&self, index: usize) -> String {
        self.vars[index].latex()
    }

    /// Looks a variable up by its rendered name, e.g. `"x21"` or `"c3"`.
    pub fn parse_var(&self, name: &str) -> Result<usize> {
        (0..self.len())
            .find(|&i| self.name(i) == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Weight mask selecting the chart coordinates (`t`, `s`, `c` weigh 0).
    pub fn chart_weights(&self) -> Monomial {
        let mut w = Monomial::one();
        for i in 0..2 * self.n {
            w.set(i, 1);
        }
        w
    }

    pub fn generators(&self) -> &[(String, Polynomial)] {
        &self.generators
    }

    pub fn generator_name(&self, p: &Polynomial) -> Option<&str> {
        self.generators
            .iter()
            .find(|(name, g)| !name.is_empty() && g == p)
            .map(|(name, _)| name.as_str())
    }
}
