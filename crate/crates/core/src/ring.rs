//! Polynomial rings `K[x_1, ..., x_n]`, monomials and term orders.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;

/// The ambient ring `S = K[x_1, ..., x_n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PolyRing {
    field: Field,
    vars: Vec<String>,
}

/// Shared handle to a ring; polynomials keep one so mismatches are detectable.
pub type Ring = Arc<PolyRing>;

impl PolyRing {
    pub fn new<S: AsRef<str>>(field: Field, vars: &[S]) -> Result<Ring> {
        if vars.is_empty() {
            return Err(Error::InvalidRing("at least one variable is required".into()));
        }
        if let Field::Prime(p) = field {
            Field::prime(p)?;
        }
        let mut seen = HashSet::new();
        for v in vars {
            let v = v.as_ref();
            if !is_identifier(v) {
                return Err(Error::InvalidRing(format!("`{v}` is not a valid identifier")));
            }
            if !seen.insert(v.to_string()) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Arc::new(PolyRing {
            field,
            vars: vars.iter().map(|v| v.as_ref().to_string()).collect(),
        }))
    }

    /// Ring with variables named `x1, ..., xn`.
    pub fn standard(field: Field, n: usize) -> Result<Ring> {
        let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        Self::new(field, &names)
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.vars[i]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same variables over a different coefficient field.
    pub fn with_field(&self, field: Field) -> Result<Ring> {
        Self::new(field, &self.vars)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub(crate) fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Exponent vector `(r_1, ..., r_n)` of `x_1^{r_1} ... x_n^{r_n}`.
///
/// The derived order is lexicographic on exponents, which is lex with
/// `x_1 > x_2 > ... > x_n`; it is used only as a storage key.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|a| a * k).collect())
    }

    pub fn mul_var(&self, i: usize) -> Monomial {
        let mut e = self.0.clone();
        e[i] += 1;
        Monomial(e)
    }

    pub fn div_var(&self, i: usize) -> Option<Monomial> {
        if self.0[i] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[i] -= 1;
        Some(Monomial(e))
    }

    /// Indices of the variables that divide the monomial.
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] > 0).collect()
    }

    /// Smallest variable index dividing the monomial.
    pub fn min_var(&self) -> Option<usize> {
        self.0.iter().position(|&e| e > 0)
    }

    /// Largest variable index dividing the monomial, `m(u)` in the
    /// definition of stable ideals.
    pub fn max_var(&self) -> Option<usize> {
        self.0.iter().rposition(|&e| e > 0)
    }

    /// `Some(i)` when the monomial is a pure power `x_i^a` with `a >= 1`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let supp = self.support();
        (supp.len() == 1).then(|| supp[0])
    }

    /// Apply the variable map `x_k -> x_{map[k]}`.
    pub fn permute(&self, map: &[usize]) -> Monomial {
        let mut e = vec![0; self.0.len()];
        for (k, &a) in self.0.iter().enumerate() {
            e[map[k]] += a;
        }
        Monomial(e)
    }

    /// Render with the given variable names, `1` for the unit monomial.
    pub fn display_with(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    names[i].clone()
                } else {
                    format!("{}^{}", names[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.0.len()).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.display_with(&names))
    }
}

/// Monomial order; variable priority is the ring order `x_1 > ... > x_n`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TermOrder {
    Lex,
    #[default]
    Grevlex,
}

impl TermOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            TermOrder::Lex => a.0.cmp(&b.0),
            TermOrder::Grevlex => a.degree().cmp(&b.degree()).then_with(|| {
                for (x, y) in a.0.iter().zip(&b.0).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

impl std::str::FromStr for TermOrder {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lex" => Ok(TermOrder::Lex),
            "grevlex" => Ok(TermOrder::Grevlex),
            other => Err(Error::Precondition(format!("unknown term order `{other}`"))),
        }
    }
}

impl fmt::Display for TermOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermOrder::Lex => write!(f, "lex"),
            TermOrder::Grevlex => write!(f, "grevlex"),
        }
    }
}

/// All monomials of total degree `d` in `n` variables, in lex-descending order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        let n = cur.len();
        if i == n - 1 {
            cur[i] = left;
            out.push(Monomial(cur.clone()));
            cur[i] = 0;
            return;
        }
        for a in (0..=left).rev() {
            cur[i] = a;
            rec(i + 1, left - a, cur, out);
        }
        cur[i] = 0;
    }
    if n == 0 {
        return out;
    }
    rec(0, d, &mut cur, &mut out);
    out
}

/// All monomials `u` with `u <= bound` componentwise.
pub fn monomials_in_box(bound: &Monomial) -> Vec<Monomial> {
    let n = bound.nvars();
    let mut out = vec![Monomial::one(n)];
    for i in 0..n {
        let mut next = Vec::with_capacity(out.len() * (bound.0[i] as usize + 1));
        for m in &out {
            for a in 0..=bound.0[i] {
                let mut e = m.0.clone();
                e[i] = a;
                next.push(Monomial(e));
            }
        }
        out = next;
    }
    out
}
