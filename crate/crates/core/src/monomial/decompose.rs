//! Irreducible decomposition, associated primes and symbolic powers.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use super::MonomialIdeal;
use crate::error::{Error, Result};
use crate::ring::Monomial;

/// An irreducible monomial ideal `(x_i^{a_i} : i in S)`, stored as sorted
/// `(variable, exponent)` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IrreducibleComponent(pub Vec<(usize, u32)>);

impl IrreducibleComponent {
    /// `self ⊆ other`.
    fn is_subset(&self, other: &IrreducibleComponent) -> bool {
        // every generator x_i^b of self must be divisible by a generator of other
        self.0.iter().all(|&(i, b)| {
            other
                .0
                .iter()
                .any(|&(j, a)| i == j && a <= b)
        })
    }

    pub fn radical_vars(&self) -> Vec<usize> {
        self.0.iter().map(|&(i, _)| i).collect()
    }
}

/// An associated prime of `S/A`, given by its variable set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AssociatedPrime {
    pub vars: Vec<usize>,
    pub minimal: bool,
}

/// Irredundant irreducible decomposition by recursive generator splitting:
/// a generator `u = x_i^{a} * u''` with `u''` coprime to `x_i` splits `A`
/// into `(A + (x_i^a)) ∩ (A + (u''))`.
pub fn irreducible_decomposition(a: &MonomialIdeal) -> Result<Vec<IrreducibleComponent>> {
    if a.is_unit() {
        return Err(Error::Precondition("the unit ideal has no decomposition".into()));
    }
    if a.is_zero() {
        return Ok(Vec::new());
    }
    let ring = a.ring().clone();
    let mut stack = vec![a.clone()];
    let mut seen: HashSet<Vec<Monomial>> = HashSet::new();
    let mut comps: BTreeSet<IrreducibleComponent> = BTreeSet::new();
    while let Some(j) = stack.pop() {
        if !seen.insert(j.gens().to_vec()) {
            continue;
        }
        match j.gens().iter().find(|g| g.support().len() > 1) {
            None => {
                let mut c: Vec<(usize, u32)> = j
                    .gens()
                    .iter()
                    .map(|g| {
                        let i = g.pure_power_var().expect("pure power");
                        (i, g.exp(i))
                    })
                    .collect();
                c.sort();
                comps.insert(IrreducibleComponent(c));
            }
            Some(u) => {
                let i = u.min_var().unwrap();
                let mut head = vec![0; u.nvars()];
                head[i] = u.exp(i);
                let head = Monomial::from_exponents(head);
                let tail = u.div(&head).unwrap();
                for part in [head, tail] {
                    let mut g = j.gens().to_vec();
                    g.push(part);
                    stack.push(MonomialIdeal::from_gens(&ring, g));
                }
            }
        }
    }
    let comps: Vec<IrreducibleComponent> = comps.into_iter().collect();
    // irreducible ideals: Q_i contains ⋂_{j≠i} Q_j iff it contains some Q_j
    let irredundant = comps
        .iter()
        .filter(|q| !comps.iter().any(|p| p != *q && p.is_subset(q)))
        .cloned()
        .collect();
    Ok(irredundant)
}

/// Associated primes of `S/A` from the irreducible decomposition, with
/// minimal primes flagged.
pub fn associated_primes(a: &MonomialIdeal) -> Result<Vec<AssociatedPrime>> {
    let comps = irreducible_decomposition(a)?;
    let supports: BTreeSet<Vec<usize>> = comps.iter().map(|c| c.radical_vars()).collect();
    let is_sub = |p: &Vec<usize>, q: &Vec<usize>| p.iter().all(|i| q.contains(i));
    Ok(supports
        .iter()
        .map(|p| AssociatedPrime {
            vars: p.clone(),
            minimal: !supports.iter().any(|q| q != p && is_sub(q, p)),
        })
        .collect())
}

/// `A^(k)`: saturate `A^k` at the intersection of its embedded associated
/// primes; `A^k` itself when it has none.
pub fn symbolic_power(a: &MonomialIdeal, k: u32) -> Result<MonomialIdeal> {
    let ak = a.power(k)?;
    if ak.is_zero() {
        return Ok(ak);
    }
    let ring = a.ring();
    let embedded: Vec<MonomialIdeal> = associated_primes(&ak)?
        .into_iter()
        .filter(|p| !p.minimal)
        .map(|p| MonomialIdeal::prime(ring, &p.vars))
        .collect();
    if embedded.is_empty() {
        return Ok(ak);
    }
    let j = embedded
        .iter()
        .skip(1)
        .fold(embedded[0].clone(), |acc, p| acc.intersect(p));
    Ok(ak.saturate(&j).0)
}
