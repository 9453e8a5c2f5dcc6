//! The difference-quotient operators `d^r`, their relabeled versions
//! `d_σ^r`, and the ideals `d_σ(I)`.
//!
//! For `f` in the maximal ideal,
//! `d^r(f) = (f(0,…,0,x_r,…,x_n) − f(0,…,0,x_{r+1},…,x_n)) / x_r`.
//! These satisfy `f = Σ_r d^r(f) x_r` with `d^r(f) ∈ K[x_r,…,x_n]`, and are
//! determined by those two rules.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::IdealGens;
use crate::monomial::MonomialIdeal;
use crate::poly::{cmp_polys, Polynomial};
use crate::ring::{Monomial, TermOrder};

/// A bijection of `{0, …, n−1}`; `images[i] = σ(i)`.
///
/// The relabeled variable order is `x_{σ(1)}, …, x_{σ(n)}`: `d_σ^1` acts on
/// `x_{σ(1)}` first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// The order-reversing permutation `i -> n−1−i`.
    pub fn reversal(n: usize) -> Self {
        Permutation {
            images: (0..n).rev().collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::Precondition(format!(
                    "{images:?} is not a permutation of 0..{n}"
                )));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// From the 1-based image sequence `σ(1), …, σ(n)`.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::Precondition("permutation images are 1-based".into()));
        }
        Self::from_images(images.iter().map(|i| i - 1).collect())
    }

    /// The permutation listing variables in the order `x_n, x_1, …, x_{n−1}`.
    pub fn last_first(n: usize) -> Self {
        let mut images = vec![n - 1];
        images.extend(0..n - 1);
        Permutation { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &s) in self.images.iter().enumerate() {
            inv[s] = i;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &s)| i == s)
    }

    /// All `n!` permutations in lexicographic order of their image sequences.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation {
                images: cur.clone(),
            });
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }
}

impl fmt::Display for Permutation {
    /// 1-based image sequence, e.g. `3,1,2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.images.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for Permutation {
    type Err = Error;
    /// Parses a 1-based image list `2,1,3`.
    fn from_str(s: &str) -> Result<Self> {
        let images: std::result::Result<Vec<usize>, _> =
            s.split(',').map(|t| t.trim().parse::<usize>()).collect();
        let images =
            images.map_err(|_| Error::Precondition(format!("cannot parse permutation `{s}`")))?;
        Self::from_one_based(&images)
    }
}

/// `d^r(f)` for a 0-based variable index `r`, computed from the two
/// substitutions and an exact division by `x_r`.
pub fn d_op(f: &Polynomial, r: usize) -> Result<Polynomial> {
    if !f.in_max_ideal() {
        return Err(Error::NonProperElement(f.to_string()));
    }
    let n = f.ring().nvars();
    if r >= n {
        return Err(Error::Precondition(format!("variable index {r} out of range")));
    }
    let diff = &f.zero_prefix_sub(r) - &f.zero_prefix_sub(r + 1);
    diff.exact_div_var(r)
}

/// `d_σ^r(f) = σ(d^r(f(x_{σ^{-1}(1)}, …, x_{σ^{-1}(n)})))`.
pub fn d_sigma_op(f: &Polynomial, r: usize, sigma: &Permutation) -> Result<Polynomial> {
    check_len(f, sigma)?;
    if sigma.is_identity() {
        return d_op(f, r);
    }
    let relabeled = f.permute_vars(sigma.inverse().images());
    Ok(d_op(&relabeled, r)?.permute_vars(sigma.images()))
}

fn check_len(f: &Polynomial, sigma: &Permutation) -> Result<()> {
    if sigma.len() != f.ring().nvars() {
        return Err(Error::Precondition(format!(
            "permutation of length {} for a ring with {} variables",
            sigma.len(),
            f.ring().nvars()
        )));
    }
    Ok(())
}

/// All values `d_σ^1(f), …, d_σ^n(f)`.
pub fn d_sigma_all(f: &Polynomial, sigma: &Permutation) -> Result<Vec<Polynomial>> {
    check_len(f, sigma)?;
    let relabeled = f.permute_vars(sigma.inverse().images());
    (0..f.ring().nvars())
        .map(|r| Ok(d_op(&relabeled, r)?.permute_vars(sigma.images())))
        .collect()
}

/// Generators `d_σ^i(f_j)` of `d_σ(I)`, zero values dropped, duplicates
/// removed, in a deterministic order.
pub fn d_ideal(ideal: &IdealGens, sigma: &Permutation) -> Result<Vec<Polynomial>> {
    let mut out: Vec<Polynomial> = Vec::new();
    for f in ideal.gens() {
        for g in d_sigma_all(f, sigma)? {
            if !g.is_zero() && !out.contains(&g) {
                out.push(g);
            }
        }
    }
    out.sort_by(|a, b| cmp_polys(a, b, TermOrder::Grevlex));
    Ok(out)
}

/// `d_σ(I)` for a monomial ideal, minimalized. The unit ideal results when
/// some generator is a variable.
pub fn d_ideal_monomial(ideal: &MonomialIdeal, sigma: &Permutation) -> Result<MonomialIdeal> {
    if ideal.is_unit() {
        return Err(Error::Precondition("the unit ideal is not proper".into()));
    }
    let ring = ideal.ring();
    let mut gens: Vec<Monomial> = Vec::new();
    for u in ideal.gens() {
        let f = Polynomial::monomial(ring, u.clone());
        for g in d_sigma_all(&f, sigma)? {
            if let Some(m) = g.as_monomial() {
                gens.push(m.clone());
            } else if !g.is_zero() {
                unreachable!("d of a monomial is a monomial");
            }
        }
    }
    Ok(MonomialIdeal::from_gens(ring, gens))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::monomial::test_support::{mi, ring};
    use crate::parse::parse_poly;
    use crate::ring::PolyRing;

    #[test]
    fn worked_example_values() {
        let r = ring(4);
        let f = parse_poly(&r, "x1^2*x3 + x1*x2^3 + x2^2*x3^3 + x3^2*x4").unwrap();
        let d: Vec<String> = (0..4).map(|i| d_op(&f, i).unwrap().to_string()).collect();
        assert_eq!(d, vec!["x2^3 + x1*x3", "x2*x3^3", "x3*x4", "0"]);
    }

    #[test]
    fn variables_and_monomials() {
        let r = ring(3);
        for i in 0..3 {
            for k in 0..3 {
                let v = d_op(&Polynomial::var(&r, i), k).unwrap();
                assert_eq!(v, if i == k { Polynomial::one(&r) } else { Polynomial::zero(&r) });
            }
        }
        let u = parse_poly(&r, "x2*x3^2").unwrap();
        assert_eq!(d_op(&u, 1).unwrap(), parse_poly(&r, "x3^2").unwrap());
        assert!(d_op(&u, 0).unwrap().is_zero());
        assert!(d_op(&u, 2).unwrap().is_zero());
    }

    #[test]
    fn constant_term_rejected() {
        let r = ring(2);
        let f = parse_poly(&r, "x1 + 1").unwrap();
        assert!(matches!(d_op(&f, 0), Err(Error::NonProperElement(_))));
    }

    #[test]
    fn swap_relabeling() {
        let r = ring(2);
        let swap = Permutation::from_one_based(&[2, 1]).unwrap();
        let x1x2 = parse_poly(&r, "x1*x2").unwrap();
        assert_eq!(d_sigma_op(&x1x2, 0, &swap).unwrap(), Polynomial::var(&r, 0));
        let x2sq = parse_poly(&r, "x2^2").unwrap();
        assert_eq!(d_sigma_op(&x2sq, 0, &swap).unwrap(), Polynomial::var(&r, 1));
        let id = Permutation::identity(2);
        let f = parse_poly(&r, "x1^2*x2 + 3*x2^3").unwrap();
        for k in 0..2 {
            assert_eq!(d_sigma_op(&f, k, &id).unwrap(), d_op(&f, k).unwrap());
        }
    }

    #[test]
    fn d_ideal_examples() {
        let r = ring(2);
        let i = mi(&r, "x1*x2, x2^2");
        assert_eq!(d_ideal_monomial(&i, &Permutation::identity(2)).unwrap().display(), "(x2)");
        let swap = Permutation::from_one_based(&[2, 1]).unwrap();
        assert_eq!(d_ideal_monomial(&i, &swap).unwrap().display(), "(x1, x2)");
        let gens = d_ideal(&i.to_gens().unwrap(), &Permutation::identity(2)).unwrap();
        assert_eq!(gens, vec![Polynomial::var(&r, 1)]);
    }

    #[test]
    fn stretched_fixture_d_sigma() {
        for n in 2..=4 {
            let r = PolyRing::standard(Field::Rationals, n).unwrap();
            let s = 3;
            let mut gens = Vec::new();
            for i in 0..n - 1 {
                for j in i..n {
                    gens.push(Monomial::var(n, i).mul(&Monomial::var(n, j)));
                }
            }
            let mut top = vec![0; n];
            top[n - 1] = s + 1;
            gens.push(Monomial::from_exponents(top));
            let i = MonomialIdeal::from_gens(&r, gens);
            let d = d_ideal_monomial(&i, &Permutation::last_first(n)).unwrap();
            let mut want: Vec<Monomial> = (0..n - 1).map(|k| Monomial::var(n, k)).collect();
            let mut p = vec![0; n];
            p[n - 1] = s;
            want.push(Monomial::from_exponents(p));
            assert_eq!(d, MonomialIdeal::from_gens(&r, want));
        }
    }

    #[test]
    fn permutation_enumeration() {
        assert_eq!(Permutation::all(3).len(), 6);
        assert_eq!(Permutation::all(1).len(), 1);
        let p: Permutation = "3,1,2".parse().unwrap();
        assert_eq!(p, Permutation::last_first(3));
        assert_eq!(p.to_string(), "3,1,2");
        assert!("1,1".parse::<Permutation>().is_err());
        assert!("0,1".parse::<Permutation>().is_err());
    }
}
