//! Sparse polynomials with exact coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::ring::{same_ring, Monomial, Ring, TermOrder};

/// A polynomial in `S = K[x_1, ..., x_n]`.
///
/// Terms are stored without zero coefficients, so structural equality is
/// polynomial equality.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Ring,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
}

/// Checked ring arithmetic; the operator impls panic on mismatched rings.
pub fn poly_arith(kind: ArithKind, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    if !same_ring(&f.ring, &g.ring) {
        return Err(Error::RingMismatch);
    }
    Ok(match kind {
        ArithKind::Add => f + g,
        ArithKind::Sub => f - g,
        ArithKind::Mul => f * g,
    })
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &Ring, c: Scalar) -> Self {
        Self::term(ring, Monomial::one(ring.nvars()), c)
    }

    /// The variable `x_i` (0-based index).
    pub fn var(ring: &Ring, i: usize) -> Self {
        Self::term(ring, Monomial::var(ring.nvars(), i), ring.field().one())
    }

    pub fn monomial(ring: &Ring, m: Monomial) -> Self {
        Self::term(ring, m, ring.field().one())
    }

    pub fn term(ring: &Ring, m: Monomial, c: Scalar) -> Self {
        debug_assert_eq!(m.nvars(), ring.nvars());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Build from `(monomial, coefficient)` pairs, combining repeats.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Scalar)>>(ring: &Ring, terms: I) -> Self {
        let mut p = Polynomial::zero(ring);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&Scalar> {
        self.terms.get(m)
    }

    /// The single monomial when the polynomial is `c * u`.
    pub fn as_term(&self) -> Option<(&Monomial, &Scalar)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// The monomial when the polynomial is exactly a monomial with coefficient 1.
    pub fn as_monomial(&self) -> Option<&Monomial> {
        self.as_term().filter(|(_, c)| c.is_one()).map(|(m, _)| m)
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms
            .get(&Monomial::one(self.ring.nvars()))
            .cloned()
            .unwrap_or_else(|| self.ring.field().zero())
    }

    /// Whether the polynomial lies in the maximal ideal `(x_1, ..., x_n)`.
    pub fn in_max_ideal(&self) -> bool {
        self.constant_term().is_zero()
    }

    /// Whether the polynomial is a nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn leading_term(&self, order: TermOrder) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn leading_monomial(&self, order: TermOrder) -> Option<&Monomial> {
        self.leading_term(order).map(|(m, _)| m)
    }

    /// Terms sorted by `order`, largest first.
    pub fn sorted_terms(&self, order: TermOrder) -> Vec<(&Monomial, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = &*existing + c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, u: &Monomial) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.mul(u), a.clone())).collect(),
        }
    }

    pub fn mul_term(&self, u: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.mul(u), a * c)).collect(),
        }
    }

    /// `self - c * u * g`, the reduction step of multivariate division.
    pub(crate) fn sub_scaled(&mut self, c: &Scalar, u: &Monomial, g: &Polynomial) {
        for (m, a) in &g.terms {
            self.add_term(m.mul(u), &-(a * c));
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `f(0, ..., 0, x_r, ..., x_n)`: drop every term containing some `x_j`
    /// with `j < r` (0-based). `r = n` keeps only the constant term.
    pub fn zero_prefix_sub(&self, r: usize) -> Polynomial {
        assert!(r <= self.ring.nvars(), "substitution index out of range");
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exponents()[..r].iter().all(|&e| e == 0))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Exact quotient by `x_r` (0-based); fails with a witness term otherwise.
    pub fn exact_div_var(&self, r: usize) -> Result<Polynomial> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            match m.div_var(r) {
                Some(q) => {
                    terms.insert(q, c.clone());
                }
                None => {
                    return Err(Error::NotDivisible {
                        var: self.ring.var_name(r).to_string(),
                        witness: Polynomial::term(&self.ring, m.clone(), c.clone()).to_string(),
                    })
                }
            }
        }
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    /// Substitute `x_k -> x_{map[k]}` for a bijection `map`.
    pub fn permute_vars(&self, map: &[usize]) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.permute(map), c.clone()))
                .collect(),
        }
    }

    /// Lowest variable index occurring in the polynomial.
    pub fn min_var(&self) -> Option<usize> {
        self.terms.keys().filter_map(Monomial::min_var).min()
    }

    /// Whether no variable with index `< r` occurs.
    pub fn only_vars_from(&self, r: usize) -> bool {
        self.terms
            .keys()
            .all(|m| m.exponents()[..r].iter().all(|&e| e == 0))
    }

    /// Re-interpret the coefficients in another ring with the same variables.
    pub fn with_ring(&self, ring: &Ring) -> Polynomial {
        assert_eq!(ring.nvars(), self.ring.nvars());
        let field = ring.field();
        Polynomial::from_terms(
            ring,
            self.terms.iter().map(|(m, c)| {
                let c = if c.field() == field {
                    c.clone()
                } else {
                    let i = c.to_integer().expect("coefficient is not an integer");
                    field.from_bigint(&i)
                };
                (m.clone(), c)
            }),
        )
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert!(same_ring(&self.ring, &rhs.ring), "ring mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert!(same_ring(&self.ring, &rhs.ring), "ring mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert!(same_ring(&self.ring, &rhs.ring), "ring mismatch");
        let mut out = Polynomial::zero(&self.ring);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.mul(b), &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Polynomial {
    /// Terms in descending grevlex order, e.g. `x1^2 - 3*x1*x2 + 1/2*x3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = self.ring.var_names();
        for (idx, (m, c)) in self.sorted_terms(TermOrder::Grevlex).into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", m.display_with(names))?;
            } else {
                write!(f, "{}*{}", abs, m.display_with(names))?;
            }
        }
        Ok(())
    }
}

/// Compare two polynomials by their term sets in a fixed order; used for
/// deterministic sorting of generator lists.
pub fn cmp_polys(a: &Polynomial, b: &Polynomial, order: TermOrder) -> Ordering {
    let ta = a.sorted_terms(order);
    let tb = b.sorted_terms(order);
    for (x, y) in ta.iter().zip(&tb) {
        match order.cmp(x.0, y.0) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    ta.len().cmp(&tb.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::ring::PolyRing;

    fn ring(n: usize) -> Ring {
        PolyRing::standard(Field::Rationals, n).unwrap()
    }

    fn x(r: &Ring, i: usize) -> Polynomial {
        Polynomial::var(r, i - 1)
    }

    fn mono(r: &Ring, e: &[u32]) -> Polynomial {
        Polynomial::monomial(r, Monomial::from_exponents(e.to_vec()))
    }

    #[test]
    fn difference_of_squares() {
        let r = ring(2);
        let p = &(&x(&r, 1) + &x(&r, 2)) * &(&x(&r, 1) - &x(&r, 2));
        assert_eq!(p.to_string(), "x1^2 - x2^2");
        let one = Polynomial::one(&r);
        assert_eq!(&p * &one, p);
    }

    #[test]
    fn product_over_f5() {
        let r = PolyRing::standard(Field::prime(5).unwrap(), 1).unwrap();
        let f = Field::Prime(5);
        let a = Polynomial::term(&r, Monomial::var(1, 0), f.from_i64(2));
        let b = Polynomial::term(&r, Monomial::var(1, 0), f.from_i64(3));
        assert_eq!(&a * &b, mono(&r, &[2]));
    }

    #[test]
    fn arith_rejects_foreign_ring() {
        let a = x(&ring(2), 1);
        let b = x(&ring(3), 1);
        assert_eq!(poly_arith(ArithKind::Add, &a, &b), Err(Error::RingMismatch));
    }

    #[test]
    fn zero_prefix_substitution() {
        let r = ring(4);
        let f = &(&(&mono(&r, &[2, 0, 1, 0]) + &mono(&r, &[1, 3, 0, 0])) + &mono(&r, &[0, 2, 3, 0]))
            + &mono(&r, &[0, 0, 2, 1]);
        let g = f.zero_prefix_sub(1);
        assert_eq!(g, &mono(&r, &[0, 2, 3, 0]) + &mono(&r, &[0, 0, 2, 1]));
        assert_eq!(f.zero_prefix_sub(0), f);
        assert!(f.zero_prefix_sub(4).is_zero());
    }

    #[test]
    fn exact_division() {
        let r = ring(3);
        let f = &mono(&r, &[1, 0, 1]) + &mono(&r, &[1, 1, 0]);
        assert_eq!(f.exact_div_var(0).unwrap(), &x(&r, 3) + &x(&r, 2));
        assert_eq!(mono(&r, &[0, 2, 0]).exact_div_var(1).unwrap(), x(&r, 2));
        let err = mono(&r, &[2, 0, 1]).exact_div_var(1).unwrap_err();
        assert!(matches!(err, Error::NotDivisible { ref witness, .. } if witness == "x1^2*x3"));
    }

    #[test]
    fn display_is_grevlex_descending() {
        let r = ring(3);
        let f = &(&x(&r, 3) + &mono(&r, &[0, 2, 0])) - &Polynomial::constant(&r, r.field().from_i64(3));
        assert_eq!(f.to_string(), "x2^2 + x3 - 3");
        assert_eq!((-&x(&r, 1)).to_string(), "-x1");
    }
}
