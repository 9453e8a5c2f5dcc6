//! Monomial ideals stored by their minimal generators.

mod closure;
mod decompose;

use std::fmt;

pub use closure::{in_newton_polyhedron, integral_closure};
pub use decompose::{associated_primes, irreducible_decomposition, symbolic_power, AssociatedPrime, IrreducibleComponent};

use crate::error::{Error, Result};
use crate::groebner::IdealGens;
use crate::poly::Polynomial;
use crate::ring::{same_ring, Monomial, Ring};

/// A monomial ideal given by its divisibility-minimal generators.
///
/// The unit ideal is generator `1`; the zero ideal has no generators. Both
/// can arise as operation results but are rejected where a proper nonzero
/// ideal is required.
#[derive(Clone, Debug)]
pub struct MonomialIdeal {
    ring: Ring,
    gens: Vec<Monomial>,
}

impl PartialEq for MonomialIdeal {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.gens == other.gens
    }
}

impl Eq for MonomialIdeal {}

impl std::hash::Hash for MonomialIdeal {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.gens.hash(state);
    }
}

/// Divisibility-minimal subset generating the same ideal, sorted by degree
/// and then lex-descending.
pub fn min_gens(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    sort_gens(&mut gens);
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        // sorted by degree, so only earlier elements can divide g
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

fn sort_gens(gens: &mut [Monomial]) {
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)));
}

impl MonomialIdeal {
    pub fn from_gens(ring: &Ring, gens: Vec<Monomial>) -> Self {
        debug_assert!(gens.iter().all(|g| g.nvars() == ring.nvars()));
        MonomialIdeal {
            ring: ring.clone(),
            gens: min_gens(gens),
        }
    }

    /// Convenience constructor from exponent vectors.
    pub fn from_exponents(ring: &Ring, exps: &[Vec<u32>]) -> Self {
        Self::from_gens(
            ring,
            exps.iter().map(|e| Monomial::from_exponents(e.clone())).collect(),
        )
    }

    pub fn unit(ring: &Ring) -> Self {
        MonomialIdeal {
            ring: ring.clone(),
            gens: vec![Monomial::one(ring.nvars())],
        }
    }

    pub fn zero(ring: &Ring) -> Self {
        MonomialIdeal {
            ring: ring.clone(),
            gens: Vec::new(),
        }
    }

    /// The graded maximal ideal `(x_1, ..., x_n)`.
    pub fn maximal(ring: &Ring) -> Self {
        let n = ring.nvars();
        Self::from_gens(ring, (0..n).map(|i| Monomial::var(n, i)).collect())
    }

    /// The prime generated by the given variables.
    pub fn prime(ring: &Ring, vars: &[usize]) -> Self {
        let n = ring.nvars();
        Self::from_gens(ring, vars.iter().map(|&i| Monomial::var(n, i)).collect())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_proper(&self) -> bool {
        !self.is_unit()
    }

    /// Membership: some generator divides `u`.
    pub fn contains(&self, u: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(u))
    }

    /// A generator dividing `u`, if any.
    pub fn divisor_of(&self, u: &Monomial) -> Option<&Monomial> {
        self.gens.iter().find(|g| g.divides(u))
    }

    /// Drop the terms of `f` lying in the ideal.
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        Polynomial::from_terms(
            f.ring(),
            f.terms()
                .filter(|(m, _)| !self.contains(m))
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    pub fn contains_poly(&self, f: &Polynomial) -> bool {
        f.terms().all(|(m, _)| self.contains(m))
    }

    pub fn is_subset(&self, other: &MonomialIdeal) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(|g| g.exponents().iter().all(|&e| e <= 1))
    }

    /// Some power of every variable lies in the ideal.
    pub fn is_artinian(&self) -> bool {
        let n = self.nvars();
        (0..n).all(|i| {
            self.gens
                .iter()
                .any(|g| g.is_one() || g.pure_power_var() == Some(i))
        })
    }

    /// Componentwise maximum of the generator exponents.
    pub fn lcm_all(&self) -> Monomial {
        self.gens
            .iter()
            .fold(Monomial::one(self.nvars()), |acc, g| acc.lcm(g))
    }

    pub fn max_degree(&self) -> u32 {
        self.gens.iter().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Generators as polynomials with coefficient 1. Fails for the zero and
    /// unit ideals, which are not valid proper ideals with generators.
    pub fn to_gens(&self) -> Result<IdealGens> {
        if self.is_unit() {
            return Err(Error::Precondition("the unit ideal is not proper".into()));
        }
        IdealGens::new(
            &self.ring,
            self.gens
                .iter()
                .map(|g| Polynomial::monomial(&self.ring, g.clone()))
                .collect(),
        )
    }

    pub fn gens_as_polys(&self) -> Vec<Polynomial> {
        self.gens
            .iter()
            .map(|g| Polynomial::monomial(&self.ring, g.clone()))
            .collect()
    }

    fn check_ring(&self, other: &MonomialIdeal) {
        assert!(same_ring(&self.ring, &other.ring), "ring mismatch");
    }

    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        self.check_ring(other);
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        MonomialIdeal::from_gens(&self.ring, g)
    }

    /// Pairwise products, minimalized.
    pub fn product(&self, other: &MonomialIdeal) -> MonomialIdeal {
        self.check_ring(other);
        let mut g = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                g.push(a.mul(b));
            }
        }
        MonomialIdeal::from_gens(&self.ring, g)
    }

    /// `A^k` for `k >= 1`.
    pub fn power(&self, k: u32) -> Result<MonomialIdeal> {
        if k == 0 {
            return Err(Error::Precondition("power exponent must be at least 1".into()));
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.product(self);
        }
        Ok(acc)
    }

    /// Generated by pairwise lcms, minimalized.
    pub fn intersect(&self, other: &MonomialIdeal) -> MonomialIdeal {
        self.check_ring(other);
        let mut g = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                g.push(a.lcm(b));
            }
        }
        MonomialIdeal::from_gens(&self.ring, g)
    }

    /// `A : v = (u / gcd(u, v) : u in gens(A))`.
    pub fn colon_monomial(&self, v: &Monomial) -> MonomialIdeal {
        let g = self
            .gens
            .iter()
            .map(|u| u.div(&u.gcd(v)).unwrap())
            .collect();
        MonomialIdeal::from_gens(&self.ring, g)
    }

    /// `A : B = ⋂_{v in gens(B)} (A : v)`; may be the unit ideal.
    pub fn colon(&self, other: &MonomialIdeal) -> MonomialIdeal {
        self.check_ring(other);
        let mut acc = MonomialIdeal::unit(&self.ring);
        for v in &other.gens {
            acc = acc.intersect(&self.colon_monomial(v));
        }
        acc
    }

    /// Saturation `⋃_t A : B^t` together with the first exponent `t_0`
    /// such that `A : B^{t_0} = A : B^{t_0 + 1}`.
    pub fn saturate(&self, other: &MonomialIdeal) -> (MonomialIdeal, u32) {
        let mut cur = self.clone();
        let mut t = 0;
        loop {
            let next = cur.colon(other);
            if next == cur {
                return (cur, t);
            }
            cur = next;
            t += 1;
        }
    }

    /// Monomials of degree `d` outside the ideal.
    pub fn standard_monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        crate::ring::monomials_of_degree(self.nvars(), d)
            .into_iter()
            .filter(|m| !self.contains(m))
            .collect()
    }

    /// Render as `(g1, g2, ...)` using the ring's variable names.
    pub fn display(&self) -> String {
        let names = self.ring.var_names();
        if self.gens.is_empty() {
            return "(0)".into();
        }
        let parts: Vec<String> = self.gens.iter().map(|g| g.display_with(names)).collect();
        format!("({})", parts.join(", "))
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}

#[cfg(test)]
pub(crate) mod test_support {
    use super::*;
    use crate::field::Field;
    use crate::ring::PolyRing;

    pub fn ring(n: usize) -> Ring {
        PolyRing::standard(Field::Rationals, n).unwrap()
    }

    /// Parse `"x1*x2, x2^2"` style generator lists.
    pub fn mi(r: &Ring, s: &str) -> MonomialIdeal {
        let gens = s
            .split(',')
            .map(|t| {
                let p = crate::parse::parse_poly(r, t.trim()).unwrap();
                p.as_monomial().unwrap().clone()
            })
            .collect();
        MonomialIdeal::from_gens(r, gens)
    }
}
