//! Buchberger's algorithm, normal forms and ideal containment for
//! polynomial ideals.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::monomial::MonomialIdeal;
use crate::poly::{cmp_polys, Polynomial};
use crate::ring::{same_ring, Monomial, Ring, TermOrder};

pub const DEFAULT_STEP_BUDGET: u64 = 1_000_000;

/// Generators of a proper ideal `I = (f_1, ..., f_m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealGens {
    ring: Ring,
    gens: Vec<Polynomial>,
}

impl IdealGens {
    /// Every generator must be nonzero with zero constant term.
    pub fn new(ring: &Ring, gens: Vec<Polynomial>) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::Precondition("an ideal needs at least one generator".into()));
        }
        for g in &gens {
            if !same_ring(g.ring(), ring) {
                return Err(Error::RingMismatch);
            }
            if g.is_zero() {
                return Err(Error::Precondition("zero generator".into()));
            }
            if !g.in_max_ideal() {
                return Err(Error::NonProperElement(g.to_string()));
            }
        }
        Ok(IdealGens {
            ring: ring.clone(),
            gens,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    /// Whether every generator is a single term.
    pub fn is_monomial(&self) -> bool {
        self.gens.iter().all(|g| g.num_terms() == 1)
    }

    pub fn to_monomial_ideal(&self) -> Option<MonomialIdeal> {
        if !self.is_monomial() {
            return None;
        }
        let gens = self
            .gens
            .iter()
            .map(|g| g.as_term().unwrap().0.clone())
            .collect();
        Some(MonomialIdeal::from_gens(&self.ring, gens))
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(Polynomial::is_homogeneous)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroebnerConfig {
    pub order: TermOrder,
    pub step_budget: u64,
}

impl Default for GroebnerConfig {
    fn default() -> Self {
        GroebnerConfig {
            order: TermOrder::Grevlex,
            step_budget: DEFAULT_STEP_BUDGET,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Ring,
    order: TermOrder,
    basis: Vec<Polynomial>,
    reduced: bool,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis
            .iter()
            .map(|g| g.leading_monomial(self.order).unwrap().clone())
            .collect()
    }

    /// The monomial ideal of leading terms.
    pub fn initial_ideal(&self) -> MonomialIdeal {
        MonomialIdeal::from_gens(&self.ring, self.leading_monomials())
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        normal_form(f, self).is_zero()
    }
}

struct Reducer<'a> {
    order: TermOrder,
    basis: &'a [Polynomial],
    leads: Vec<(Monomial, crate::field::Scalar)>,
    steps: u64,
    budget: u64,
}

impl<'a> Reducer<'a> {
    fn new(order: TermOrder, basis: &'a [Polynomial], budget: u64) -> Self {
        let leads = basis
            .iter()
            .map(|g| {
                let (m, c) = g.leading_term(order).expect("nonzero basis element");
                (m.clone(), c.clone())
            })
            .collect();
        Reducer {
            order,
            basis,
            leads,
            steps: 0,
            budget,
        }
    }

    /// Full reduction: no term of the result is divisible by a leading monomial.
    fn reduce(&mut self, f: &Polynomial) -> Result<Polynomial> {
        let ring = f.ring().clone();
        let mut rem = Polynomial::zero(&ring);
        let mut p = f.clone();
        while let Some((m, c)) = p.leading_term(self.order).map(|(m, c)| (m.clone(), c.clone())) {
            let hit = self
                .leads
                .iter()
                .enumerate()
                .find(|(_, (lm, _))| lm.divides(&m));
            match hit {
                Some((i, (lm, lc))) => {
                    self.steps += 1;
                    if self.steps > self.budget {
                        return Err(Error::ResourceLimit(format!(
                            "Groebner reduction exceeded {} steps",
                            self.budget
                        )));
                    }
                    let q = m.div(lm).unwrap();
                    let coef = &c * &lc.inv().unwrap();
                    p.sub_scaled(&coef, &q, &self.basis[i]);
                }
                None => {
                    rem.add_term(m.clone(), &c);
                    p.add_term(m, &-&c);
                }
            }
        }
        Ok(rem)
    }
}

/// Remainder of multivariate division of `f` by `g`; zero iff `f` is in the ideal.
pub fn normal_form(f: &Polynomial, g: &GroebnerBasis) -> Polynomial {
    let mut r = Reducer::new(g.order, &g.basis, u64::MAX);
    r.reduce(f).expect("unbounded reduction")
}

fn s_polynomial(f: &Polynomial, g: &Polynomial, order: TermOrder) -> Polynomial {
    let (mf, cf) = f.leading_term(order).unwrap();
    let (mg, cg) = g.leading_term(order).unwrap();
    let l = mf.lcm(mg);
    let a = f.mul_term(&l.div(mf).unwrap(), &cf.inv().unwrap());
    let b = g.mul_term(&l.div(mg).unwrap(), &cg.inv().unwrap());
    &a - &b
}

/// Reduced Gröbner basis by Buchberger's algorithm with the normal selection
/// strategy, the coprime criterion and the chain criterion.
pub fn buchberger(ideal: &IdealGens, config: &GroebnerConfig) -> Result<GroebnerBasis> {
    groebner_of(ideal.ring(), ideal.gens(), config)
}

pub(crate) fn groebner_of(
    ring: &Ring,
    gens: &[Polynomial],
    config: &GroebnerConfig,
) -> Result<GroebnerBasis> {
    let order = config.order;
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut steps = 0u64;
    for g in gens {
        if g.is_zero() {
            continue;
        }
        basis.push(monic(g, order));
    }
    let lm = |p: &Polynomial| p.leading_monomial(order).unwrap().clone();
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pending.insert((i, j));
        }
    }
    while !pending.is_empty() {
        // normal strategy: smallest lcm of leading monomials first
        let &(i, j) = pending
            .iter()
            .min_by(|a, b| {
                let la = lm(&basis[a.0]).lcm(&lm(&basis[a.1]));
                let lb = lm(&basis[b.0]).lcm(&lm(&basis[b.1]));
                order.cmp(&la, &lb).then(a.cmp(b))
            })
            .unwrap();
        pending.remove(&(i, j));
        let (li, lj) = (lm(&basis[i]), lm(&basis[j]));
        if li.gcd(&lj).is_one() {
            continue;
        }
        let l = li.lcm(&lj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && lm(&basis[k]).divides(&l)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], order);
        let mut red = Reducer::new(order, &basis, config.step_budget.saturating_sub(steps));
        let h = red.reduce(&s)?;
        steps += red.steps;
        if !h.is_zero() {
            let k = basis.len();
            basis.push(monic(&h, order));
            for i in 0..k {
                pending.insert((i, k));
            }
        }
    }
    Ok(GroebnerBasis {
        ring: ring.clone(),
        order,
        basis: interreduce(basis, order),
        reduced: true,
    })
}

fn monic(p: &Polynomial, order: TermOrder) -> Polynomial {
    let (_, c) = p.leading_term(order).unwrap();
    p.scale(&c.inv().unwrap())
}

fn interreduce(basis: Vec<Polynomial>, order: TermOrder) -> Vec<Polynomial> {
    let lms: Vec<Monomial> = basis
        .iter()
        .map(|p| p.leading_monomial(order).unwrap().clone())
        .collect();
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (i, p) in basis.iter().enumerate() {
        let redundant = lms.iter().enumerate().any(|(j, m)| {
            j != i && m.divides(&lms[i]) && (m != &lms[i] || j < i)
        });
        if !redundant {
            minimal.push(p.clone());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| p.clone())
            .collect();
        let (lm, lc) = minimal[i].leading_term(order).unwrap();
        let (lm, lc) = (lm.clone(), lc.clone());
        let tail = &minimal[i] - &Polynomial::term(minimal[i].ring(), lm.clone(), lc);
        let mut red = Reducer::new(order, &others, u64::MAX);
        let tail = red.reduce(&tail).unwrap();
        out.push(&Polynomial::monomial(minimal[i].ring(), lm) + &tail);
    }
    out.sort_by(|a, b| cmp_polys(b, a, order));
    out
}

/// Outcome of an ideal containment test `A ⊆ B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Containment {
    pub holds: bool,
    /// First generator of `A` outside `B`.
    pub witness: Option<Polynomial>,
    /// Its normal form modulo `B`.
    pub normal_form: Option<Polynomial>,
}

/// Decide `(a_1, ..., a_k) ⊆ B` for a list of polynomials.
pub fn polys_subset(a: &[Polynomial], b: &IdealGens, config: &GroebnerConfig) -> Result<Containment> {
    contained_in(a, b.ring(), b.gens(), config)
}

/// Decide `(a_1, ..., a_k) ⊆ (b_1, ..., b_l)` where the `b_j` may include
/// units. Single-term generators are handled by divisibility alone.
pub fn contained_in(
    a: &[Polynomial],
    ring: &Ring,
    b: &[Polynomial],
    config: &GroebnerConfig,
) -> Result<Containment> {
    for f in a.iter().chain(b) {
        if !same_ring(f.ring(), ring) {
            return Err(Error::RingMismatch);
        }
    }
    let first_outside = |nf: &dyn Fn(&Polynomial) -> Polynomial| {
        for f in a {
            let r = nf(f);
            if !r.is_zero() {
                return Containment {
                    holds: false,
                    witness: Some(f.clone()),
                    normal_form: Some(r),
                };
            }
        }
        Containment {
            holds: true,
            witness: None,
            normal_form: None,
        }
    };
    let nonzero: Vec<&Polynomial> = b.iter().filter(|g| !g.is_zero()).collect();
    if nonzero.iter().all(|g| g.num_terms() == 1) {
        let mb = MonomialIdeal::from_gens(
            ring,
            nonzero.iter().map(|g| g.as_term().unwrap().0.clone()).collect(),
        );
        return Ok(first_outside(&|f| mb.normal_form(f)));
    }
    let gens: Vec<Polynomial> = nonzero.into_iter().cloned().collect();
    let gb = groebner_of(ring, &gens, config)?;
    Ok(first_outside(&|f| normal_form(f, &gb)))
}

/// Decide `A ⊆ B`, returning a violating generator of `A` on failure.
/// Monomial `B` is handled by divisibility alone.
pub fn ideal_subset(a: &IdealGens, b: &IdealGens, config: &GroebnerConfig) -> Result<Containment> {
    if !same_ring(a.ring(), b.ring()) {
        return Err(Error::RingMismatch);
    }
    polys_subset(a.gens(), b, config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::parse::parse_poly;
    use crate::ring::PolyRing;

    fn ideal(r: &Ring, gens: &[&str]) -> IdealGens {
        IdealGens::new(r, gens.iter().map(|g| parse_poly(r, g).unwrap()).collect()).unwrap()
    }

    fn lex() -> GroebnerConfig {
        GroebnerConfig {
            order: TermOrder::Lex,
            ..Default::default()
        }
    }

    #[test]
    fn monomials_are_their_own_basis() {
        let r = PolyRing::standard(Field::Rationals, 2).unwrap();
        let gb = buchberger(&ideal(&r, &["x1", "x2"]), &lex()).unwrap();
        let shown: Vec<String> = gb.basis().iter().map(|p| p.to_string()).collect();
        assert_eq!(shown, vec!["x1", "x2"]);
    }

    #[test]
    fn twisted_cubic_bases() {
        let r = PolyRing::standard(Field::Rationals, 3).unwrap();
        let input = ideal(&r, &["x1^2 - x2", "x1^3 - x3"]);
        let shown = |gb: &GroebnerBasis| -> BTreeSet<String> {
            gb.basis().iter().map(|p| p.to_string()).collect()
        };
        let three = ideal(&r, &["x1^2 - x2", "x1*x2 - x3", "x2^2 - x1*x3"]);
        let gb = buchberger(&input, &GroebnerConfig::default()).unwrap();
        let want: BTreeSet<String> = three.gens().iter().map(|p| p.to_string()).collect();
        assert_eq!(shown(&gb), want);
        // under lex the S-pair (x1*x2 - x3, x1*x3 - x2^2) adds x2^3 - x3^2
        let lex_gb = buchberger(&input, &lex()).unwrap();
        let mut want_lex = want.clone();
        want_lex.remove("x2^2 - x1*x3");
        want_lex.insert("-x2^2 + x1*x3".into());
        want_lex.insert("x2^3 - x3^2".into());
        assert_eq!(shown(&lex_gb), want_lex);
        for g in three.gens() {
            assert!(normal_form(g, &lex_gb).is_zero());
        }
    }

    #[test]
    fn constant_generator_rejected() {
        let r = PolyRing::standard(Field::Rationals, 1).unwrap();
        let g = parse_poly(&r, "x1^2 - 1").unwrap();
        assert!(matches!(
            IdealGens::new(&r, vec![g]),
            Err(Error::NonProperElement(_))
        ));
    }

    #[test]
    fn division_examples() {
        let r = PolyRing::standard(Field::Rationals, 2).unwrap();
        let gb = buchberger(&ideal(&r, &["x1^2 - x2"]), &lex()).unwrap();
        let f = parse_poly(&r, "x1^3").unwrap();
        let nf = normal_form(&f, &gb);
        assert_eq!(nf, parse_poly(&r, "x1*x2").unwrap());
        // x1^3 - x1*x2 = x1 * (x1^2 - x2)
        assert_eq!(&f - &nf, &parse_poly(&r, "x1").unwrap() * &gb.basis()[0]);
        assert!(normal_form(&gb.basis()[0], &gb).is_zero());
        let c = Polynomial::constant(&r, r.field().from_i64(7));
        assert_eq!(normal_form(&c, &gb), c);
    }

    #[test]
    fn containment_examples() {
        let r = PolyRing::standard(Field::Rationals, 2).unwrap();
        let cfg = GroebnerConfig::default();
        assert!(ideal_subset(&ideal(&r, &["x1*x2"]), &ideal(&r, &["x1"]), &cfg).unwrap().holds);
        let c = ideal_subset(&ideal(&r, &["x1"]), &ideal(&r, &["x1*x2"]), &cfg).unwrap();
        assert!(!c.holds);
        assert_eq!(c.witness.unwrap().to_string(), "x1");
        assert!(
            ideal_subset(&ideal(&r, &["x2^2"]), &ideal(&r, &["x1*x2", "x2^2"]), &cfg)
                .unwrap()
                .holds
        );
    }

    #[test]
    fn budget_exhaustion_reports_resource_limit() {
        let r = PolyRing::standard(Field::Rationals, 3).unwrap();
        let cfg = GroebnerConfig {
            order: TermOrder::Grevlex,
            step_budget: 1,
        };
        let i = ideal(&r, &["x1^2 - x2*x3", "x2^2 - x1*x3", "x3^2 - x1*x2 + x1*x3"]);
        assert!(matches!(buchberger(&i, &cfg), Err(Error::ResourceLimit(_))));
    }
}
