//! The Koszul complex `Ω` on `dx_1, …, dx_n`, explicit cycles `z_ij` built
//! from a minimal free resolution, their chain lifts, Koszul homology of
//! `S/I`, and the checks tying them together.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;

use crate::dcalc::{d_sigma_all, d_ideal, Permutation};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::groebner::{contained_in, GroebnerConfig, IdealGens};
use crate::linalg::{self, Echelon};
use crate::monomial::MonomialIdeal;
use crate::poly::Polynomial;
use crate::quotient::Quotient;
use crate::resolution::{minimal_resolution, minimality, FreeComplex};
use crate::ring::{monomials_of_degree, Monomial, Ring};

/// Sort `idx` in place, returning the sign of the permutation or `None`
/// when an index repeats.
fn sort_with_sign(idx: &mut [usize]) -> Option<bool> {
    let mut positive = true;
    for a in 0..idx.len() {
        for b in 0..idx.len() - 1 - a {
            if idx[b] == idx[b + 1] {
                return None;
            }
            if idx[b] > idx[b + 1] {
                idx.swap(b, b + 1);
                positive = !positive;
            }
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(positive)
}

/// An element `Σ f_T dx_T` of `Ω_i`, `T` strictly increasing (0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulElement {
    ring: Ring,
    degree: usize,
    coeffs: BTreeMap<Vec<usize>, Polynomial>,
}

impl KoszulElement {
    pub fn zero(ring: &Ring, degree: usize) -> Self {
        KoszulElement {
            ring: ring.clone(),
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &BTreeMap<Vec<usize>, Polynomial> {
        &self.coeffs
    }

    pub fn coeff(&self, t: &[usize]) -> Polynomial {
        self.coeffs
            .get(t)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(&self.ring))
    }

    /// Add `f dx_{t_1} ∧ … ∧ dx_{t_i}` for any index order.
    pub fn add_wedge(&mut self, t: &[usize], f: &Polynomial) {
        assert_eq!(t.len(), self.degree, "wedge length");
        let mut idx = t.to_vec();
        let Some(positive) = sort_with_sign(&mut idx) else {
            return;
        };
        let f = if positive { f.clone() } else { -f };
        let cur = self.coeffs.remove(&idx).unwrap_or_else(|| Polynomial::zero(&self.ring));
        let v = &cur + &f;
        if !v.is_zero() {
            self.coeffs.insert(idx, v);
        }
    }

    pub fn add(&self, other: &KoszulElement) -> KoszulElement {
        let mut out = self.clone();
        for (t, f) in &other.coeffs {
            out.add_wedge(t, f);
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&Polynomial) -> Polynomial) -> KoszulElement {
        let mut out = KoszulElement::zero(&self.ring, self.degree);
        for (t, p) in &self.coeffs {
            out.add_wedge(t, &f(p));
        }
        out
    }

    /// Coefficients reduced modulo a quotient presentation.
    pub fn reduce(&self, q: &Quotient) -> KoszulElement {
        self.map_coeffs(|p| q.reduce(p))
    }

    /// `∂(f dx_{r_1}…dx_{r_i}) = Σ_k (−1)^{k+1} x_{r_k} f dx_{r_1}…\hat{dx_{r_k}}…dx_{r_i}`.
    pub fn boundary(&self) -> KoszulElement {
        let mut out = KoszulElement::zero(&self.ring, self.degree.saturating_sub(1));
        if self.degree == 0 {
            return out;
        }
        let n = self.ring.nvars();
        for (t, f) in &self.coeffs {
            for (k, &r) in t.iter().enumerate() {
                let mut rest = t.clone();
                rest.remove(k);
                let g = f.mul_monomial(&Monomial::var(n, r));
                let g = if k % 2 == 0 { g } else { -&g };
                out.add_wedge(&rest, &g);
            }
        }
        out
    }

    /// Canonical text: `(f) dx1 dx3 + (g) dx2 dx3`, wedge names taken from
    /// the ring's variables.
    pub fn display(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let names = self.ring.var_names();
        self.coeffs
            .iter()
            .map(|(t, f)| {
                let w: Vec<String> = t.iter().map(|&r| format!("d{}", names[r])).collect();
                if w.is_empty() {
                    format!("({f})")
                } else {
                    format!("({f}) {}", w.join(" "))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for KoszulElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}

/// `(k, j) -> [d_σ^r(α_kj) for r]` for one differential.
type DTable = BTreeMap<(usize, usize), Vec<Polynomial>>;

/// `d_σ^r(α)` for every entry of `δ_1..δ_i`, indexed `[m-1][(k, j)][r]`.
/// Fails on an entry outside the maximal ideal.
fn d_tables(c: &FreeComplex, upto: usize, sigma: &Permutation) -> Result<Vec<DTable>> {
    let rep = minimality(c);
    if let Some((diff, row, col, entry)) = rep.offending.iter().find(|o| o.0 <= upto) {
        return Err(Error::NonMinimalResolution {
            diff: *diff,
            row: *row,
            col: *col,
            entry: entry.clone(),
        });
    }
    (1..=upto)
        .map(|m| {
            c.diff(m)
                .entries()
                .map(|(k, j, a)| Ok(((k, j), d_sigma_all(a, sigma)?)))
                .collect()
        })
        .collect()
}

fn check_indices(c: &FreeComplex, i: usize, j: usize, sigma: &Permutation) -> Result<()> {
    if i == 0 || i > c.length() {
        return Err(Error::Precondition(format!(
            "homological degree {i} outside 1..={}",
            c.length()
        )));
    }
    if j >= c.ranks()[i] {
        return Err(Error::Precondition(format!(
            "basis index {j} outside 0..{}",
            c.ranks()[i]
        )));
    }
    if c.ranks()[0] != 1 {
        return Err(Error::Precondition("F_0 must have rank one".into()));
    }
    if sigma.len() != c.ring().nvars() {
        return Err(Error::Precondition("permutation length mismatch".into()));
    }
    Ok(())
}

/// `z_ij = Σ d_σ^{r_1}(α^{(1)}_{0 j_1}) ⋯ d_σ^{r_i}(α^{(i)}_{j_{i−1} j}) dx_{σ(r_1)} ∧ … ∧ dx_{σ(r_i)}`
/// over `r_1 < … < r_i` and all index chains (`j` 0-based).
pub fn build_cycle(c: &FreeComplex, i: usize, j: usize, sigma: &Permutation) -> Result<KoszulElement> {
    check_indices(c, i, j, sigma)?;
    let tables = d_tables(c, i, sigma)?;
    let ring = c.ring();
    // states: (positions r_1..r_m, j_m) -> accumulated coefficient
    let mut states: BTreeMap<(Vec<usize>, usize), Polynomial> = BTreeMap::new();
    states.insert((Vec::new(), 0), Polynomial::one(ring));
    for m in 1..=i {
        let mut next: BTreeMap<(Vec<usize>, usize), Polynomial> = BTreeMap::new();
        for ((rs, jp), val) in &states {
            let lo = rs.last().map_or(0, |r| r + 1);
            for ((k, jm), ds) in &tables[m - 1] {
                if k != jp || (m == i && *jm != j) {
                    continue;
                }
                for (r, dv) in ds.iter().enumerate().skip(lo) {
                    if dv.is_zero() {
                        continue;
                    }
                    let mut key = rs.clone();
                    key.push(r);
                    let e = next
                        .entry((key, *jm))
                        .or_insert_with(|| Polynomial::zero(ring));
                    *e = &*e + &(val * dv);
                }
            }
        }
        next.retain(|_, v| !v.is_zero());
        states = next;
    }
    let mut z = KoszulElement::zero(ring, i);
    for ((rs, _), val) in states {
        let wedge: Vec<usize> = rs.iter().map(|&r| sigma.apply(r)).collect();
        z.add_wedge(&wedge, &val);
    }
    Ok(z)
}

/// An element of `Ω_p ⊗ F_k`: `(wedge, basis index) -> coefficient`.
pub type TensorPart = BTreeMap<(Vec<usize>, usize), Polynomial>;

/// The chain `(z_0, …, z_i)` with `z_{i−k} ∈ Ω_{i−k} ⊗ F_k`, stored by `k`.
#[derive(Clone, Debug)]
pub struct KoszulChain {
    pub i: usize,
    pub j: usize,
    pub sigma: Permutation,
    /// `parts[k] = z_{i−k}`.
    pub parts: Vec<TensorPart>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    /// `(id⊗δ_{k+1})(z_{i−k−1}) = (∂_{i−k}⊗id)(z_{i−k})`.
    pub k: usize,
    pub holds: bool,
}

fn add_into(part: &mut TensorPart, key: (Vec<usize>, usize), f: &Polynomial) {
    let mut wedge = key.0;
    let Some(positive) = sort_with_sign(&mut wedge) else {
        return;
    };
    let f = if positive { f.clone() } else { -f };
    let cur = part.remove(&(wedge.clone(), key.1));
    let v = match cur {
        Some(c) => &c + &f,
        None => f,
    };
    if !v.is_zero() {
        part.insert((wedge, key.1), v);
    }
}

fn boundary_part(ring: &Ring, part: &TensorPart) -> TensorPart {
    let n = ring.nvars();
    let mut out = TensorPart::new();
    for ((t, e), f) in part {
        for (k, &r) in t.iter().enumerate() {
            let mut rest = t.clone();
            rest.remove(k);
            let g = f.mul_monomial(&Monomial::var(n, r));
            let g = if k % 2 == 0 { g } else { -&g };
            add_into(&mut out, (rest, *e), &g);
        }
    }
    out
}

/// `(id⊗δ_m)` applied to a part in `Ω_p ⊗ F_m`.
fn delta_part(c: &FreeComplex, m: usize, part: &TensorPart) -> TensorPart {
    let mut out = TensorPart::new();
    for ((t, e), f) in part {
        for (row, a) in c.diff(m).column(*e) {
            add_into(&mut out, (t.clone(), *row), &(f * a));
        }
    }
    out
}

impl KoszulChain {
    /// The cycle component `z_i ∈ Ω_i ⊗ F_0` as a Koszul element.
    pub fn cycle(&self, ring: &Ring) -> KoszulElement {
        let mut z = KoszulElement::zero(ring, self.i);
        for ((t, _), f) in &self.parts[0] {
            z.add_wedge(t, f);
        }
        z
    }

    pub fn check_identities(&self, c: &FreeComplex) -> Vec<IdentityCheck> {
        (0..self.i)
            .map(|k| {
                let lhs = delta_part(c, k + 1, &self.parts[k + 1]);
                let rhs = boundary_part(c.ring(), &self.parts[k]);
                IdentityCheck {
                    k,
                    holds: lhs == rhs,
                }
            })
            .collect()
    }

    /// `Σ_k ε_k z_{i−k}` is a cycle of the total complex of `Ω ⊗ F` with
    /// differential `∂⊗1 + (−1)^p 1⊗δ` (`p` the `Ω`-degree), where
    /// `ε_0 = 1` and `ε_{k+1} = (−1)^{i−k} ε_k`.
    pub fn is_total_cycle(&self, c: &FreeComplex) -> bool {
        let ring = c.ring();
        let mut eps = vec![1i64];
        for k in 0..self.i {
            let e = eps[k];
            eps.push(if (self.i - k).is_multiple_of(2) { e } else { -e });
        }
        // collect D(Σ ε_k z_{i−k}) by F-degree
        let mut total: BTreeMap<usize, TensorPart> = BTreeMap::new();
        for (k, (&e, part)) in eps.iter().zip(&self.parts).enumerate() {
            let p = self.i - k;
            let scale = ring.field().from_i64(e);
            let part: TensorPart = part
                .iter()
                .map(|(key, f)| (key.clone(), f.scale(&scale)))
                .collect();
            let b = boundary_part(ring, &part);
            let slot = total.entry(k).or_default();
            for (key, f) in b {
                add_into(slot, key, &f);
            }
            if k > 0 {
                let sign = ring.field().from_i64(if p.is_multiple_of(2) { 1 } else { -1 });
                let d = delta_part(c, k, &part);
                let slot = total.entry(k - 1).or_default();
                for (key, f) in d {
                    add_into(slot, key, &f.scale(&sign));
                }
            }
        }
        total.values().all(BTreeMap::is_empty)
    }
}

/// All components of the lift of `1⊗e_ij`, built right to left, with the
/// lifting identities verified exactly over `S`.
pub fn build_chain(c: &FreeComplex, i: usize, j: usize, sigma: &Permutation) -> Result<KoszulChain> {
    check_indices(c, i, j, sigma)?;
    let tables = d_tables(c, i, sigma)?;
    let ring = c.ring();
    // states at level m: (positions r_m..r_i, j_{m−1}) -> coefficient
    let mut parts_rev: Vec<TensorPart> = Vec::with_capacity(i + 1);
    let mut states: BTreeMap<(Vec<usize>, usize), Polynomial> = BTreeMap::new();
    states.insert((Vec::new(), j), Polynomial::one(ring));
    let to_part = |states: &BTreeMap<(Vec<usize>, usize), Polynomial>| {
        let mut part = TensorPart::new();
        for ((rs, e), f) in states {
            let wedge: Vec<usize> = rs.iter().map(|&r| sigma.apply(r)).collect();
            add_into(&mut part, (wedge, *e), f);
        }
        part
    };
    parts_rev.push(to_part(&states));
    for m in (1..=i).rev() {
        let mut next: BTreeMap<(Vec<usize>, usize), Polynomial> = BTreeMap::new();
        for ((rs, jm), val) in &states {
            let hi = rs.first().copied().unwrap_or(usize::MAX);
            for ((k, jj), ds) in &tables[m - 1] {
                if jj != jm {
                    continue;
                }
                for (r, dv) in ds.iter().enumerate().take_while(|(r, _)| *r < hi) {
                    if dv.is_zero() {
                        continue;
                    }
                    let mut key = vec![r];
                    key.extend_from_slice(rs);
                    let e = next.entry((key, *k)).or_insert_with(|| Polynomial::zero(ring));
                    *e = &*e + &(dv * val);
                }
            }
        }
        next.retain(|_, v| !v.is_zero());
        states = next;
        parts_rev.push(to_part(&states));
    }
    parts_rev.reverse();
    let chain = KoszulChain {
        i,
        j,
        sigma: sigma.clone(),
        parts: parts_rev,
    };
    if let Some(bad) = chain.check_identities(c).into_iter().find(|x| !x.holds) {
        return Err(Error::IdentityViolation(format!(
            "lifting identity at k = {} fails for z[{i}][{}]",
            bad.k,
            j + 1
        )));
    }
    if !chain.is_total_cycle(c) {
        return Err(Error::IdentityViolation(format!(
            "chain for z[{i}][{}] is not a cycle of the total complex",
            j + 1
        )));
    }
    Ok(chain)
}

/// Koszul homology `H_p(Ω ⊗ S/I)` computed piece by piece.
#[derive(Clone, Debug)]
pub struct HomologyReport {
    /// `dims[p] = dim_K H_p`, `p = 0..=n`.
    pub dims: Vec<usize>,
    /// Internal degree -> dims in that degree (nonzero rows only).
    pub by_degree: BTreeMap<u32, Vec<usize>>,
    /// Multidegree pieces with nonzero homology (monomial ideals only).
    pub by_multidegree: Vec<(Monomial, Vec<usize>)>,
    /// Homology basis representatives per `p`.
    pub basis: Vec<Vec<KoszulElement>>,
    pub degree_bound: u32,
}

impl HomologyReport {
    /// `dims` without trailing zeros.
    pub fn trimmed_dims(&self) -> Vec<usize> {
        let mut d = self.dims.clone();
        while d.len() > 1 && *d.last().unwrap() == 0 {
            d.pop();
        }
        d
    }
}

/// A graded piece of `Ω ⊗ S/I`: basis of each `Ω_p ⊗ R` component as
/// `(wedge, standard monomial)`.
struct Piece {
    basis: Vec<Vec<(Vec<usize>, Monomial)>>,
}

impl Piece {
    fn multigraded(q: &MonomialIdeal, alpha: &Monomial) -> Piece {
        let n = alpha.nvars();
        let supp = alpha.support();
        let basis = (0..=n)
            .map(|p| {
                subsets(&supp, p)
                    .into_iter()
                    .filter_map(|t| {
                        let mut m = alpha.clone();
                        for &r in &t {
                            m = m.div_var(r)?;
                        }
                        (!q.contains(&m)).then_some((t, m))
                    })
                    .collect()
            })
            .collect();
        Piece { basis }
    }

    fn graded(q: &Quotient, d: u32) -> Piece {
        let n = q.ring().nvars();
        let all: Vec<usize> = (0..n).collect();
        let basis = (0..=n)
            .map(|p| {
                if (p as u32) > d {
                    return Vec::new();
                }
                let std = q.standard_monomials(d - p as u32);
                subsets(&all, p)
                    .into_iter()
                    .flat_map(|t| std.iter().map(move |m| (t.clone(), m.clone())))
                    .collect()
            })
            .collect();
        Piece { basis }
    }

    fn index(&self, p: usize) -> BTreeMap<(Vec<usize>, Monomial), usize> {
        self.basis[p].iter().cloned().enumerate().map(|(k, b)| (b, k)).collect()
    }

    /// Coordinates of a reduced element of `Ω_p ⊗ R` in this piece; `None`
    /// when it has terms outside the piece.
    fn coords(&self, q: &Quotient, z: &KoszulElement) -> Option<Vec<Scalar>> {
        let field = q.ring().field();
        let idx = self.index(z.degree());
        let mut v = vec![field.zero(); self.basis[z.degree()].len()];
        for (t, f) in z.reduce(q).coeffs() {
            for (m, c) in f.terms() {
                let k = *idx.get(&(t.clone(), m.clone()))?;
                v[k] = c.clone();
            }
        }
        Some(v)
    }

    /// Rows: images under `∂` of the basis of `Ω_p ⊗ R`, in `Ω_{p−1} ⊗ R`.
    fn boundary_rows(&self, q: &Quotient, p: usize) -> Vec<Vec<Scalar>> {
        if p == 0 || p >= self.basis.len() {
            return Vec::new();
        }
        let ring = q.ring();
        let field = ring.field();
        let idx = self.index(p - 1);
        self.basis[p]
            .iter()
            .map(|(t, m)| {
                let mut z = KoszulElement::zero(ring, p);
                z.add_wedge(t, &Polynomial::monomial(ring, m.clone()));
                let b = z.boundary().reduce(q);
                let mut v = vec![field.zero(); self.basis[p - 1].len()];
                for (t2, f) in b.coeffs() {
                    for (u, c) in f.terms() {
                        let k = idx[&(t2.clone(), u.clone())];
                        v[k] = &v[k] + c;
                    }
                }
                v
            })
            .collect()
    }

    /// Dimensions of homology and basis representatives.
    fn homology(&self, q: &Quotient) -> (Vec<usize>, Vec<Vec<KoszulElement>>) {
        let ring = q.ring();
        let field = ring.field();
        let n = ring.nvars();
        let rows: Vec<Vec<Vec<Scalar>>> = (0..=n + 1)
            .map(|p| if p <= n { self.boundary_rows(q, p) } else { Vec::new() })
            .collect();
        let mut dims = vec![0; n + 1];
        let mut reps = vec![Vec::new(); n + 1];
        for p in 0..=n {
            let dim = self.basis[p].len();
            if dim == 0 {
                continue;
            }
            // kernel of ∂_p: vectors x with Σ x_k rows[p][k] = 0
            let ker = if p == 0 {
                (0..dim)
                    .map(|k| {
                        let mut v = vec![field.zero(); dim];
                        v[k] = field.one();
                        v
                    })
                    .collect()
            } else {
                let target = self.basis[p - 1].len();
                let cols: Vec<Vec<Scalar>> = (0..target)
                    .map(|c| rows[p].iter().map(|r| r[c].clone()).collect())
                    .collect();
                linalg::kernel(field, dim, &cols)
            };
            let mut ech = Echelon::new(field, dim);
            for r in &rows[p + 1] {
                ech.insert(r.clone());
            }
            for v in ker {
                if ech.insert(v.clone()) {
                    dims[p] += 1;
                    let mut z = KoszulElement::zero(ring, p);
                    for (k, c) in v.iter().enumerate() {
                        if !c.is_zero() {
                            let (t, m) = &self.basis[p][k];
                            z.add_wedge(t, &Polynomial::term(ring, m.clone(), c.clone()));
                        }
                    }
                    reps[p].push(z);
                }
            }
        }
        (dims, reps)
    }
}

fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn go(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            go(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Koszul homology of `S/I` for a monomial ideal (the zero ideal allowed),
/// by multidegree, for all multidegrees of total degree `<= bound`
/// (default: the degree of the lcm of the generators). Two further degrees
/// are checked to be acyclic; otherwise `BoundTooSmall`.
pub fn koszul_homology_monomial(ideal: &MonomialIdeal, bound: Option<u32>) -> Result<HomologyReport> {
    if ideal.is_unit() {
        return Err(Error::Precondition("the unit ideal is not proper".into()));
    }
    let bound = bound.unwrap_or_else(|| ideal.lcm_all().degree());
    let n = ideal.nvars();
    let q = Quotient::Monomial(ideal.clone());
    let per_degree = |d: u32| -> Vec<(Monomial, Vec<usize>, Vec<Vec<KoszulElement>>)> {
        monomials_of_degree(n, d)
            .par_iter()
            .map(|alpha| {
                let piece = Piece::multigraded(ideal, alpha);
                let (dims, reps) = piece.homology(&q);
                (alpha.clone(), dims, reps)
            })
            .filter(|(_, dims, _)| dims.iter().any(|&x| x > 0))
            .collect()
    };
    let mut report = HomologyReport {
        dims: vec![0; n + 1],
        by_degree: BTreeMap::new(),
        by_multidegree: Vec::new(),
        basis: vec![Vec::new(); n + 1],
        degree_bound: bound,
    };
    for d in 0..=bound {
        let mut row = vec![0; n + 1];
        for (alpha, dims, reps) in per_degree(d) {
            for p in 0..=n {
                row[p] += dims[p];
                report.dims[p] += dims[p];
            }
            for (p, r) in reps.into_iter().enumerate() {
                report.basis[p].extend(r);
            }
            report.by_multidegree.push((alpha, dims));
        }
        if row.iter().any(|&x| x > 0) {
            report.by_degree.insert(d, row);
        }
    }
    for d in bound + 1..=bound + 2 {
        if let Some((alpha, _, _)) = per_degree(d).into_iter().next() {
            return Err(Error::BoundTooSmall(format!(
                "nonzero homology in multidegree {alpha} beyond the bound {bound}"
            )));
        }
    }
    Ok(report)
}

/// Koszul homology of `S/I` for a monomial or homogeneous ideal. Monomial
/// ideals are handled by multidegree, others by total degree through a
/// Gröbner basis (default bound: degree of the lcm of the leading terms).
pub fn koszul_homology(
    ideal: &IdealGens,
    bound: Option<u32>,
    config: &GroebnerConfig,
) -> Result<HomologyReport> {
    if let Some(m) = ideal.to_monomial_ideal() {
        return koszul_homology_monomial(&m, bound);
    }
    let q = Quotient::new(ideal, config)?;
    let n = ideal.ring().nvars();
    let bound = bound.unwrap_or_else(|| q.initial_ideal().lcm_all().degree());
    let mut report = HomologyReport {
        dims: vec![0; n + 1],
        by_degree: BTreeMap::new(),
        by_multidegree: Vec::new(),
        basis: vec![Vec::new(); n + 1],
        degree_bound: bound,
    };
    let pieces: Vec<(u32, Vec<usize>, Vec<Vec<KoszulElement>>)> = (0..=bound + 2)
        .into_par_iter()
        .map(|d| {
            let (dims, reps) = Piece::graded(&q, d).homology(&q);
            (d, dims, reps)
        })
        .collect();
    for (d, dims, reps) in pieces {
        if dims.iter().all(|&x| x == 0) {
            continue;
        }
        if d > bound {
            return Err(Error::BoundTooSmall(format!(
                "nonzero homology in degree {d} beyond the bound {bound}"
            )));
        }
        for (acc, d) in report.dims.iter_mut().zip(&dims) {
            *acc += d;
        }
        for (p, r) in reps.into_iter().enumerate() {
            report.basis[p].extend(r);
        }
        report.by_degree.insert(d, dims);
    }
    Ok(report)
}

/// Per homological degree outcome of [`verify_basis`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisCheck {
    pub i: usize,
    pub betti: usize,
    pub homology_dim: usize,
    pub cycles: bool,
    pub independent: bool,
}

#[derive(Clone, Debug)]
pub struct BasisReport {
    pub resolution: FreeComplex,
    pub checks: Vec<BasisCheck>,
    pub cycles: Vec<Vec<KoszulElement>>,
}

/// Rank of the classes of `zs` in `H_i(Ω ⊗ S/I)`: coordinates over all
/// relevant multidegrees, augmented by boundaries.
fn class_rank(ideal: &MonomialIdeal, i: usize, zs: &[KoszulElement]) -> usize {
    let q = Quotient::Monomial(ideal.clone());
    let ring = ideal.ring();
    let field = ring.field();
    // multidegree of each term f_T dx_T is mdeg(f) * x_T
    let mut alphas: BTreeSet<Monomial> = BTreeSet::new();
    for z in zs {
        for (t, f) in z.reduce(&q).coeffs() {
            for (m, _) in f.terms() {
                let mut a = m.clone();
                for &r in t {
                    a = a.mul_var(r);
                }
                alphas.insert(a);
            }
        }
    }
    let mut rank_with = 0;
    let mut rank_without = 0;
    for alpha in &alphas {
        let piece = Piece::multigraded(ideal, alpha);
        let dim = piece.basis[i].len();
        let mut ech = Echelon::new(field, dim);
        for r in piece.boundary_rows(&q, i + 1) {
            ech.insert(r);
        }
        rank_without += ech.rank();
        for z in zs {
            // component of z in this multidegree
            let mut part = KoszulElement::zero(ring, i);
            for (t, f) in z.reduce(&q).coeffs() {
                for (m, c) in f.terms() {
                    let mut a = m.clone();
                    for &r in t {
                        a = a.mul_var(r);
                    }
                    if &a == alpha {
                        part.add_wedge(t, &Polynomial::term(ring, m.clone(), c.clone()));
                    }
                }
            }
            if let Some(v) = piece.coords(&q, &part) {
                ech.insert(v);
            }
        }
        rank_with += ech.rank();
    }
    rank_with - rank_without
}

/// Each `z_ij` is a cycle modulo `I`, the classes are independent, and
/// `b_i = dim H_i` for every `i`.
pub fn verify_basis(ideal: &MonomialIdeal) -> Result<BasisReport> {
    let c = minimal_resolution(ideal)?;
    let hom = koszul_homology_monomial(ideal, None)?;
    let q = Quotient::Monomial(ideal.clone());
    let id = Permutation::identity(ideal.nvars());
    let mut checks = Vec::new();
    let mut all = Vec::new();
    for i in 1..=c.length() {
        let zs: Vec<KoszulElement> = (0..c.ranks()[i])
            .into_par_iter()
            .map(|j| build_cycle(&c, i, j, &id))
            .collect::<Result<_>>()?;
        for (j, z) in zs.iter().enumerate() {
            if !z.boundary().reduce(&q).is_zero() {
                return Err(Error::IdentityViolation(format!(
                    "z[{i}][{}] is not a cycle modulo I",
                    j + 1
                )));
            }
        }
        let rank = class_rank(ideal, i, &zs);
        let check = BasisCheck {
            i,
            betti: c.ranks()[i],
            homology_dim: hom.dims.get(i).copied().unwrap_or(0),
            cycles: true,
            independent: rank == zs.len(),
        };
        if !check.independent {
            return Err(Error::IdentityViolation(format!(
                "the classes z[{i}][*] are dependent (rank {rank} of {})",
                zs.len()
            )));
        }
        if check.betti != check.homology_dim {
            return Err(Error::IdentityViolation(format!(
                "b_{i} = {} but dim H_{i} = {}",
                check.betti, check.homology_dim
            )));
        }
        checks.push(check);
        all.push(zs);
    }
    for (p, &h) in hom.dims.iter().enumerate().skip(c.length() + 1) {
        if h != 0 {
            return Err(Error::IdentityViolation(format!(
                "dim H_{p} = {h} beyond the resolution length"
            )));
        }
    }
    Ok(BasisReport {
        resolution: c,
        checks,
        cycles: all,
    })
}

#[derive(Clone, Debug)]
pub struct CoefficientCheck {
    pub i: usize,
    pub j: usize,
    pub wedge: Vec<usize>,
    pub coeff: Polynomial,
    pub member: bool,
}

#[derive(Clone, Debug)]
pub struct ZeroMapReport {
    pub sigma: Permutation,
    pub d_gens: Vec<Polynomial>,
    pub coefficients: Vec<CoefficientCheck>,
}

/// Every coefficient of every `z_ij` (built with `d_σ`) lies in `d_σ(I)`.
/// The resolution defaults to the minimal one from the Taylor complex.
pub fn verify_zero_map(
    ideal: &IdealGens,
    sigma: &Permutation,
    resolution: Option<&FreeComplex>,
    config: &GroebnerConfig,
) -> Result<ZeroMapReport> {
    let owned;
    let c = match resolution {
        Some(c) => c,
        None => {
            let m = ideal.to_monomial_ideal().ok_or_else(|| {
                Error::Unsupported("non-monomial ideals need a supplied resolution".into())
            })?;
            owned = minimal_resolution(&m)?;
            &owned
        }
    };
    let d = d_ideal(ideal, sigma)?;
    let ring = ideal.ring();
    let mut coefficients = Vec::new();
    for i in 1..=c.length() {
        for j in 0..c.ranks()[i] {
            let z = build_cycle(c, i, j, sigma)?;
            for (t, f) in z.coeffs() {
                let member = contained_in(std::slice::from_ref(f), ring, &d, config)?.holds;
                coefficients.push(CoefficientCheck {
                    i,
                    j,
                    wedge: t.clone(),
                    coeff: f.clone(),
                    member,
                });
            }
        }
    }
    if let Some(bad) = coefficients.iter().find(|c| !c.member) {
        return Err(Error::MembershipFailure(format!(
            "coefficient {} of z[{}][{}] is not in d_σ(I)",
            bad.coeff,
            bad.i,
            bad.j + 1
        )));
    }
    Ok(ZeroMapReport {
        sigma: sigma.clone(),
        d_gens: d,
        coefficients,
    })
}

/// Cycle dump: one line `z[i][j] = (f) dx1 dx3 + ...` per cycle, `j` 1-based.
pub fn format_cycles(cycles: &[(usize, usize, KoszulElement)]) -> String {
    cycles
        .iter()
        .map(|(i, j, z)| format!("z[{i}][{}] = {}\n", j + 1, z.display()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::test_support::{mi, ring};
    use crate::parse::parse_poly;
    use crate::resolution::taylor_complex;

    #[test]
    fn boundary_examples() {
        let r = ring(3);
        let mut z = KoszulElement::zero(&r, 2);
        z.add_wedge(&[0, 2], &parse_poly(&r, "x2").unwrap());
        let b = z.boundary();
        assert_eq!(b.coeff(&[2]).to_string(), "x1*x2");
        assert_eq!(b.coeff(&[0]).to_string(), "-x2*x3");
        assert!(b.boundary().is_zero());
        let mut dx1 = KoszulElement::zero(&r, 1);
        dx1.add_wedge(&[0], &Polynomial::one(&r));
        assert_eq!(dx1.boundary().coeff(&[]).to_string(), "x1");
        let mut w = KoszulElement::zero(&r, 2);
        w.add_wedge(&[2, 0], &Polynomial::one(&r));
        assert_eq!(w.coeff(&[0, 2]).to_string(), "-1");
        w.add_wedge(&[1, 1], &Polynomial::one(&r));
        assert_eq!(w.coeffs().len(), 1);
    }

    #[test]
    fn principal_cycle() {
        let r = ring(2);
        let c = minimal_resolution(&mi(&r, "x1*x2")).unwrap();
        let z = build_cycle(&c, 1, 0, &Permutation::identity(2)).unwrap();
        assert_eq!(z.display(), "(x2) dx1");
    }

    #[test]
    fn two_generator_cycles() {
        let r = ring(3);
        let i = mi(&r, "x1*x2, x2*x3");
        let c = minimal_resolution(&i).unwrap();
        let id = Permutation::identity(3);
        let z = build_cycle(&c, 2, 0, &id).unwrap();
        assert_eq!(z.display(), "(x2) dx1 dx3");
        let q = Quotient::Monomial(i.clone());
        assert!(z.boundary().reduce(&q).is_zero());
        for j in 0..2 {
            let z1 = build_cycle(&c, 1, j, &id).unwrap();
            let f = &i.gens_as_polys()[j];
            let mut want = KoszulElement::zero(&r, 1);
            for (k, d) in d_sigma_all(f, &id).unwrap().iter().enumerate() {
                want.add_wedge(&[k], d);
            }
            assert_eq!(z1, want);
        }
        let chain = build_chain(&c, 2, 0, &id).unwrap();
        assert_eq!(chain.cycle(&r), z);
        assert!(chain.check_identities(&c).iter().all(|x| x.holds));
    }

    #[test]
    fn chains_for_triangle_and_permutations() {
        let r = ring(3);
        let i = mi(&r, "x1*x2, x1*x3, x2*x3");
        let c = minimal_resolution(&i).unwrap();
        let q = Quotient::Monomial(i.clone());
        for sigma in Permutation::all(3) {
            for k in 1..=c.length() {
                for j in 0..c.ranks()[k] {
                    let chain = build_chain(&c, k, j, &sigma).unwrap();
                    let z = build_cycle(&c, k, j, &sigma).unwrap();
                    assert_eq!(chain.cycle(&r), z);
                    assert!(z.boundary().reduce(&q).is_zero());
                }
            }
        }
    }

    #[test]
    fn non_minimal_input_rejected() {
        let r = ring(3);
        let t = taylor_complex(&mi(&r, "x1*x2, x1*x3, x2*x3")).unwrap();
        let id = Permutation::identity(3);
        // δ_3 of the Taylor complex has unit entries, δ_1 and δ_2 do not
        assert!(matches!(build_cycle(&t, 3, 0, &id), Err(Error::NonMinimalResolution { diff: 3, .. })));
        assert!(matches!(build_chain(&t, 3, 0, &id), Err(Error::NonMinimalResolution { .. })));
        assert!(build_cycle(&t, 2, 0, &id).is_ok());
    }

    #[test]
    fn homology_dimensions() {
        let r = ring(3);
        let h = koszul_homology_monomial(&mi(&r, "x1*x2, x2*x3"), None).unwrap();
        assert_eq!(h.dims, vec![1, 2, 1, 0]);
        let r2 = ring(2);
        let h = koszul_homology_monomial(&mi(&r2, "x1^2, x1*x2, x2^2"), None).unwrap();
        assert_eq!(h.dims, vec![1, 3, 2]);
        let h = koszul_homology_monomial(&mi(&r2, "x1*x2"), None).unwrap();
        assert_eq!(h.trimmed_dims(), vec![1, 1]);
        let h = koszul_homology_monomial(&MonomialIdeal::zero(&r2), None).unwrap();
        assert_eq!(h.dims, vec![1, 0, 0]);
        assert!(matches!(
            koszul_homology_monomial(&mi(&r2, "x1^3, x2^3"), Some(2)),
            Err(Error::BoundTooSmall(_))
        ));
    }

    #[test]
    fn homology_of_homogeneous_ideal() {
        let r = ring(2);
        let gens = vec![
            parse_poly(&r, "x1^2 - x2^2").unwrap(),
            parse_poly(&r, "x1*x2").unwrap(),
        ];
        let ideal = IdealGens::new(&r, gens).unwrap();
        let h = koszul_homology(&ideal, None, &GroebnerConfig::default()).unwrap();
        // complete intersection of two quadrics
        assert_eq!(h.dims, vec![1, 2, 1]);
        assert_eq!(h.by_degree.get(&4), Some(&vec![0, 0, 1]));
    }

    #[test]
    fn basis_verification() {
        let r = ring(3);
        for s in ["x1*x2, x2*x3", "x1*x2, x1*x3, x2*x3", "x1^2, x1*x2*x3, x3^3"] {
            let rep = verify_basis(&mi(&r, s)).unwrap();
            assert!(rep.checks.iter().all(|c| c.independent && c.betti == c.homology_dim));
        }
        let r2 = ring(2);
        let rep = verify_basis(&mi(&r2, "x1^2, x1*x2, x2^2")).unwrap();
        let b: Vec<usize> = rep.checks.iter().map(|c| c.betti).collect();
        assert_eq!(b, vec![3, 2]);
    }

    #[test]
    fn zero_map_examples() {
        let cfg = GroebnerConfig::default();
        let r2 = ring(2);
        let i = mi(&r2, "x1*x2, x2^2").to_gens().unwrap();
        let rep = verify_zero_map(&i, &Permutation::identity(2), None, &cfg).unwrap();
        assert_eq!(rep.d_gens, vec![Polynomial::var(&r2, 1)]);
        assert!(rep.coefficients.iter().all(|c| c.member));
        let r3 = ring(3);
        let i = mi(&r3, "x1*x2, x2*x3").to_gens().unwrap();
        for sigma in Permutation::all(3) {
            verify_zero_map(&i, &sigma, None, &cfg).unwrap();
        }
    }

    #[test]
    fn cycle_dump_format() {
        let r = ring(3);
        let c = minimal_resolution(&mi(&r, "x1*x2, x2*x3")).unwrap();
        let z = build_cycle(&c, 2, 0, &Permutation::identity(3)).unwrap();
        assert_eq!(format_cycles(&[(2, 0, z)]), "z[2][1] = (x2) dx1 dx3\n");
    }
}
