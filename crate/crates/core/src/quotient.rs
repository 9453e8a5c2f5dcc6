//! Graded quotients `R = S/I` presented by a monomial ideal or a Gröbner
//! basis: normal forms and standard-monomial bases of graded pieces.

use crate::error::{Error, Result};
use crate::groebner::{buchberger, normal_form, GroebnerBasis, GroebnerConfig, IdealGens};
use crate::monomial::MonomialIdeal;
use crate::poly::Polynomial;
use crate::ring::{Monomial, Ring};

#[derive(Clone, Debug)]
pub enum Quotient {
    Monomial(MonomialIdeal),
    Groebner {
        basis: GroebnerBasis,
        initial: MonomialIdeal,
    },
}

impl Quotient {
    /// Monomial ideals are kept as such; other ideals must be homogeneous.
    pub fn new(ideal: &IdealGens, config: &GroebnerConfig) -> Result<Self> {
        if let Some(m) = ideal.to_monomial_ideal() {
            return Ok(Quotient::Monomial(m));
        }
        if !ideal.is_homogeneous() {
            return Err(Error::Unsupported(
                "graded computations need a monomial or homogeneous ideal".into(),
            ));
        }
        let basis = buchberger(ideal, config)?;
        let initial = basis.initial_ideal();
        Ok(Quotient::Groebner { basis, initial })
    }

    pub fn ring(&self) -> &Ring {
        self.initial_ideal().ring()
    }

    pub fn as_monomial(&self) -> Option<&MonomialIdeal> {
        match self {
            Quotient::Monomial(m) => Some(m),
            Quotient::Groebner { .. } => None,
        }
    }

    /// The ideal of leading monomials; standard monomials lie outside it.
    pub fn initial_ideal(&self) -> &MonomialIdeal {
        match self {
            Quotient::Monomial(m) => m,
            Quotient::Groebner { initial, .. } => initial,
        }
    }

    pub fn is_standard(&self, u: &Monomial) -> bool {
        !self.initial_ideal().contains(u)
    }

    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        match self {
            Quotient::Monomial(m) => m.normal_form(f),
            Quotient::Groebner { basis, .. } => normal_form(f, basis),
        }
    }

    pub fn standard_monomials(&self, d: u32) -> Vec<Monomial> {
        self.initial_ideal().standard_monomials_of_degree(d)
    }

    pub fn is_artinian(&self) -> bool {
        self.initial_ideal().is_artinian()
    }

    /// Largest degree with a nonzero graded piece (Artinian only).
    pub fn top_degree(&self) -> Option<u32> {
        if !self.is_artinian() {
            return None;
        }
        let init = self.initial_ideal();
        // a standard monomial has each exponent below the pure power bound
        let cap: u32 = (0..init.nvars())
            .map(|i| {
                init.gens()
                    .iter()
                    .filter(|g| g.pure_power_var() == Some(i))
                    .map(|g| g.exp(i))
                    .min()
                    .unwrap_or(1)
                    .saturating_sub(1)
            })
            .sum();
        (0..=cap).rev().find(|&d| !self.standard_monomials(d).is_empty())
    }
}
