//! Truncated power series, the Serre bound, Poincaré series of the residue
//! field over `R = S/I` computed degree by degree, Hilbert series and
//! profiles of Artinian and stretched rings.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::groebner::{GroebnerConfig, IdealGens};
use crate::koszul::koszul_homology;
use crate::linalg::{self, Echelon};
use crate::monomial::MonomialIdeal;
use crate::poly::Polynomial;
use crate::quotient::Quotient;
use crate::resolution::betti_numbers;
use crate::ring::{monomials_in_box, Monomial, Ring};

/// `c_0 + c_1 t + … + c_N t^N + O(t^{N+1})` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Sub,
    Mul,
    Inv,
}

impl TruncatedSeries {
    /// Coefficients beyond `trunc` are dropped, missing ones are zero.
    pub fn new<T: Into<BigInt>>(coeffs: Vec<T>, trunc: usize) -> Self {
        let mut c: Vec<BigInt> = coeffs.into_iter().map(Into::into).collect();
        c.resize(trunc + 1, BigInt::zero());
        TruncatedSeries { coeffs: c }
    }

    pub fn one(trunc: usize) -> Self {
        Self::new(vec![1], trunc)
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &BigInt {
        &self.coeffs[k]
    }

    /// Coefficients as `i64`, `None` if one overflows.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(ToPrimitive::to_i64).collect()
    }

    pub fn truncate(&self, trunc: usize) -> Self {
        Self::new(self.coeffs.clone(), trunc)
    }

    fn common(&self, other: &Self) -> usize {
        self.trunc().min(other.trunc())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.common(other);
        Self::new((0..=n).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect(), n)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.common(other);
        Self::new((0..=n).map(|k| &self.coeffs[k] - &other.coeffs[k]).collect(), n)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.common(other);
        let mut c = vec![BigInt::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                c[i + j] += a * b;
            }
        }
        Self::new(c, n)
    }

    /// Inverse; the constant term must be `±1`.
    pub fn inv(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.abs() != BigInt::one() {
            return Err(Error::Precondition(format!(
                "series with constant term {c0} is not invertible over the integers"
            )));
        }
        let n = self.trunc();
        let mut out = vec![BigInt::zero(); n + 1];
        out[0] = c0.clone();
        for k in 1..=n {
            let mut s = BigInt::zero();
            for j in 1..=k {
                s += &self.coeffs[j] * &out[k - j];
            }
            out[k] = -(s * c0);
        }
        Ok(Self::new(out, n))
    }

    /// Coefficientwise `self <= other` up to the common truncation.
    pub fn leq(&self, other: &Self) -> bool {
        (0..=self.common(other)).all(|k| self.coeffs[k] <= other.coeffs[k])
    }

    /// First degree where the coefficients differ.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        (0..=self.common(other)).find(|&k| self.coeffs[k] != other.coeffs[k])
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let body = match k {
                0 => mag.to_string(),
                _ => {
                    let t = if k == 1 { "t".to_string() } else { format!("t^{k}") };
                    if mag.is_one() {
                        t
                    } else {
                        format!("{mag}{t}")
                    }
                }
            };
            if parts.is_empty() {
                parts.push(if c.is_negative() { format!("-{body}") } else { body });
            } else {
                parts.push(format!("{} {body}", if c.is_negative() { "-" } else { "+" }));
            }
        }
        let big_o = format!("O(t^{})", self.trunc() + 1);
        if parts.is_empty() {
            write!(f, "{big_o}")
        } else {
            write!(f, "{} + {big_o}", parts.join(" "))
        }
    }
}

impl Serialize for TruncatedSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}

pub fn series_ops(op: SeriesOp, a: &TruncatedSeries, b: Option<&TruncatedSeries>) -> Result<TruncatedSeries> {
    let need = || b.ok_or_else(|| Error::Precondition("binary series operation needs two operands".into()));
    Ok(match op {
        SeriesOp::Add => a.add(need()?),
        SeriesOp::Sub => a.sub(need()?),
        SeriesOp::Mul => a.mul(need()?),
        SeriesOp::Inv => a.inv()?,
    })
}

/// `(1+t)^n / (1 − Σ_{i≥1} b_i t^{i+1})` to degree `trunc`; `betti[0]` is `b_0`.
pub fn serre_bound(betti: &[usize], n: usize, trunc: usize) -> TruncatedSeries {
    let mut num = TruncatedSeries::one(trunc);
    let one_t = TruncatedSeries::new(vec![1, 1], trunc);
    for _ in 0..n {
        num = num.mul(&one_t);
    }
    let mut den = vec![BigInt::zero(); trunc + 1];
    den[0] = BigInt::one();
    for (i, &b) in betti.iter().enumerate().skip(1) {
        if i < trunc {
            den[i + 1] -= BigInt::from(b);
        }
    }
    let den = TruncatedSeries::new(den, trunc);
    num.mul(&den.inv().expect("constant term one"))
}

/// `1/(1 − nt)` when `tau = n`, otherwise `1/(1 − nt + t²)`.
pub fn sally_series(n: usize, tau: usize, trunc: usize) -> TruncatedSeries {
    let n = n as i64;
    let den = if tau as i64 == n {
        TruncatedSeries::new(vec![1, -n], trunc)
    } else {
        TruncatedSeries::new(vec![1, -n, 1], trunc)
    };
    den.inv().expect("constant term one")
}

/// `dim_K (S/I)_d` for `d <= trunc`.
pub fn hilbert_series(ideal: &MonomialIdeal, trunc: usize) -> TruncatedSeries {
    quotient_hilbert(&Quotient::Monomial(ideal.clone()), trunc)
}

pub fn quotient_hilbert(q: &Quotient, trunc: usize) -> TruncatedSeries {
    TruncatedSeries::new(
        (0..=trunc as u32).map(|d| q.standard_monomials(d).len() as i64).collect(),
        trunc,
    )
}

/// Grading used for the pieces of the resolution of `K` over `R`.
trait Grading: Sync {
    type G: Ord + Clone + Send + Sync + fmt::Debug;
    fn quotient(&self) -> &Quotient;
    fn grade(&self, m: &Monomial) -> Self::G;
    fn total(&self, g: &Self::G) -> u32;
    /// Standard monomials `m` with `from · m = to`.
    fn between(&self, from: &Self::G, to: &Self::G) -> Vec<Monomial>;
    /// All grades `g · m` with `g` among `gens`, `m` standard, total degree `<= max_total`.
    fn candidates(&self, gens: &[Self::G], max_total: u32) -> BTreeSet<Self::G>;
}

struct Multigrading {
    q: Quotient,
    standard: Vec<Vec<Monomial>>,
}

impl Multigrading {
    fn new(q: Quotient, max_total: u32) -> Self {
        let standard = (0..=max_total).map(|d| q.standard_monomials(d)).collect();
        Multigrading { q, standard }
    }
}

impl Grading for Multigrading {
    type G = Monomial;

    fn quotient(&self) -> &Quotient {
        &self.q
    }

    fn grade(&self, m: &Monomial) -> Monomial {
        m.clone()
    }

    fn total(&self, g: &Monomial) -> u32 {
        g.degree()
    }

    fn between(&self, from: &Monomial, to: &Monomial) -> Vec<Monomial> {
        match to.div(from) {
            Some(m) if self.q.is_standard(&m) => vec![m],
            _ => Vec::new(),
        }
    }

    fn candidates(&self, gens: &[Monomial], max_total: u32) -> BTreeSet<Monomial> {
        let distinct: BTreeSet<&Monomial> = gens.iter().collect();
        let mut out = BTreeSet::new();
        for g in distinct {
            for d in 0..=max_total.saturating_sub(g.degree()) {
                for m in self.standard.get(d as usize).into_iter().flatten() {
                    out.insert(g.mul(m));
                }
            }
        }
        out
    }
}

struct TotalGrading {
    q: Quotient,
}

impl Grading for TotalGrading {
    type G = u32;

    fn quotient(&self) -> &Quotient {
        &self.q
    }

    fn grade(&self, m: &Monomial) -> u32 {
        m.degree()
    }

    fn total(&self, g: &u32) -> u32 {
        *g
    }

    fn between(&self, from: &u32, to: &u32) -> Vec<Monomial> {
        if to < from {
            return Vec::new();
        }
        self.q.standard_monomials(to - from)
    }

    fn candidates(&self, gens: &[u32], max_total: u32) -> BTreeSet<u32> {
        match gens.iter().min() {
            Some(&lo) => (lo..=max_total).collect(),
            None => BTreeSet::new(),
        }
    }
}

/// Element of a free `R`-module: basis index -> reduced coefficient.
type FreeElem = BTreeMap<usize, Polynomial>;

struct Level<G> {
    grades: Vec<G>,
    images: Vec<FreeElem>,
}

fn shifted(q: &Quotient, x: &FreeElem, m: &Monomial) -> FreeElem {
    x.iter()
        .filter_map(|(&e, f)| {
            let g = q.reduce(&f.mul_monomial(m));
            (!g.is_zero()).then_some((e, g))
        })
        .collect()
}

/// Basis `(generator, monomial)` of a graded piece of a free module.
fn piece_basis<Gr: Grading>(gr: &Gr, grades: &[Gr::G], alpha: &Gr::G) -> Vec<(usize, Monomial)> {
    grades
        .iter()
        .enumerate()
        .flat_map(|(e, g)| gr.between(g, alpha).into_iter().map(move |m| (e, m)))
        .collect()
}

fn coords(
    field: crate::field::Field,
    index: &BTreeMap<(usize, Monomial), usize>,
    len: usize,
    x: &FreeElem,
) -> Vec<Scalar> {
    let mut v = vec![field.zero(); len];
    for (&e, f) in x {
        for (u, c) in f.terms() {
            let k = index[&(e, u.clone())];
            v[k] = &v[k] + c;
        }
    }
    v
}

/// New generators of `F_i` in grade `alpha`: kernel of `d_{i−1}` modulo
/// the image of generators already chosen in lower grades.
fn generators_in_grade<Gr: Grading>(
    gr: &Gr,
    prev: &Level<Gr::G>,
    prevprev_grades: &[Gr::G],
    chosen: &[(Gr::G, FreeElem)],
    alpha: &Gr::G,
) -> Vec<FreeElem> {
    let q = gr.quotient();
    let ring = q.ring();
    let field = ring.field();
    let src = piece_basis(gr, &prev.grades, alpha);
    if src.is_empty() {
        return Vec::new();
    }
    let tgt = piece_basis(gr, prevprev_grades, alpha);
    let tgt_index: BTreeMap<(usize, Monomial), usize> =
        tgt.iter().cloned().enumerate().map(|(k, b)| (b, k)).collect();
    let src_index: BTreeMap<(usize, Monomial), usize> =
        src.iter().cloned().enumerate().map(|(k, b)| (b, k)).collect();
    // columns of d_{i−1} restricted to the piece
    let cols: Vec<Vec<Scalar>> = src
        .iter()
        .map(|(e, m)| coords(field, &tgt_index, tgt.len(), &shifted(q, &prev.images[*e], m)))
        .collect();
    let rows: Vec<Vec<Scalar>> = (0..tgt.len())
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    let ker = linalg::kernel(field, src.len(), &rows);
    if ker.is_empty() {
        return Vec::new();
    }
    let mut ech = Echelon::new(field, src.len());
    for (beta, img) in chosen {
        if gr.total(beta) >= gr.total(alpha) {
            continue;
        }
        for m in gr.between(beta, alpha) {
            ech.insert(coords(field, &src_index, src.len(), &shifted(q, img, &m)));
        }
    }
    let mut out = Vec::new();
    for v in ker {
        if ech.insert(v.clone()) {
            let mut x = FreeElem::new();
            for (k, c) in v.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (e, m) = &src[k];
                let t = Polynomial::term(ring, m.clone(), c.clone());
                let cur = x.remove(e).unwrap_or_else(|| Polynomial::zero(ring));
                let s = &cur + &t;
                if !s.is_zero() {
                    x.insert(*e, s);
                }
            }
            out.push(x);
        }
    }
    out
}

/// Options for [`poincare_k_with`].
#[derive(Clone, Debug)]
pub struct PoincareOptions {
    /// Homological degrees beyond this are not computed.
    pub hmax: usize,
    /// Override of the internal-degree bound for every step.
    pub degree_bound: Option<u32>,
    /// Stop when a free module would exceed this many generators.
    pub max_generators: usize,
}

impl Default for PoincareOptions {
    fn default() -> Self {
        PoincareOptions {
            hmax: usize::MAX,
            degree_bound: None,
            max_generators: 50_000,
        }
    }
}

/// Outcome of the degreewise resolution of `K` over `R`.
#[derive(Clone, Debug, Serialize)]
pub struct PoincareComputation {
    pub series: TruncatedSeries,
    /// Last homological degree actually computed.
    pub achieved: usize,
    /// Internal-degree bound used at each step `i >= 2` (index `i`).
    pub degree_bounds: Vec<u32>,
    /// Internal degrees of the generators of each `F_i`.
    pub generator_degrees: Vec<Vec<u32>>,
    pub artinian: bool,
    /// Set when an explicit degree bound may have cut off generators.
    pub truncated: bool,
    pub stopped_by_limit: bool,
}

/// `Σ dim Tor_i^R(K, K) t^i` to degree `trunc`.
pub fn poincare_k(ideal: &IdealGens, trunc: usize, config: &GroebnerConfig) -> Result<TruncatedSeries> {
    let c = poincare_k_with(ideal, trunc, &PoincareOptions::default(), config)?;
    if c.stopped_by_limit {
        return Err(Error::ResourceLimit(format!(
            "resolution of K stopped after homological degree {}",
            c.achieved
        )));
    }
    Ok(c.series)
}

/// Degreewise computation with explicit options. Without an override the
/// bound at step `i` is `1 + (i−1)(D−1)` (`D` the top degree of the
/// initial ideal's generators), lowered to the top socle degree bound in the
/// Artinian case.
pub fn poincare_k_with(
    ideal: &IdealGens,
    trunc: usize,
    opts: &PoincareOptions,
    config: &GroebnerConfig,
) -> Result<PoincareComputation> {
    let q = Quotient::new(ideal, config)?;
    let max_gen = q.initial_ideal().max_degree().max(2);
    let top = q.top_degree();
    let last = trunc.min(opts.hmax);
    let bound_at = |i: usize, prev_max: u32| -> u32 {
        if let Some(b) = opts.degree_bound {
            return b;
        }
        let rate = 1 + (i as u32 - 1) * (max_gen - 1);
        match top {
            Some(s) => rate.min(prev_max + s),
            None => rate,
        }
    };
    let global = opts
        .degree_bound
        .unwrap_or_else(|| bound_at(last.max(1), u32::MAX / 2));
    match q {
        Quotient::Monomial(_) => {
            let gr = Multigrading::new(q, global);
            resolve_k(&gr, last, trunc, opts, &bound_at)
        }
        Quotient::Groebner { .. } => resolve_k(&TotalGrading { q }, last, trunc, opts, &bound_at),
    }
}

fn resolve_k<Gr: Grading>(
    gr: &Gr,
    last: usize,
    trunc: usize,
    opts: &PoincareOptions,
    bound_at: &dyn Fn(usize, u32) -> u32,
) -> Result<PoincareComputation> {
    let q = gr.quotient();
    let ring: &Ring = q.ring();
    let n = ring.nvars();
    let mut counts = vec![1usize];
    let mut gen_degrees = vec![vec![0u32]];
    let mut bounds = vec![0u32, 1];
    let artinian = q.is_artinian();
    let mut stopped = false;
    // F_0 and F_1
    let f0 = Level {
        grades: vec![gr.grade(&Monomial::one(n))],
        images: vec![FreeElem::new()],
    };
    let vars = q.standard_monomials(1);
    let f1 = Level {
        grades: vars.iter().map(|m| gr.grade(m)).collect(),
        images: vars
            .iter()
            .map(|m| FreeElem::from([(0usize, Polynomial::monomial(ring, m.clone()))]))
            .collect(),
    };
    let mut levels = vec![f0, f1];
    if last >= 1 {
        counts.push(levels[1].grades.len());
        gen_degrees.push(vec![1; levels[1].grades.len()]);
    }
    let mut achieved = last.min(1);
    for i in 2..=last {
        let prev = &levels[i - 1];
        if prev.grades.is_empty() {
            counts.push(0);
            gen_degrees.push(Vec::new());
            bounds.push(0);
            levels.push(Level {
                grades: Vec::new(),
                images: Vec::new(),
            });
            achieved = i;
            continue;
        }
        let prev_max = prev.grades.iter().map(|g| gr.total(g)).max().unwrap_or(0);
        let bound = bound_at(i, prev_max);
        bounds.push(bound);
        let cands = gr.candidates(&prev.grades, bound);
        let mut by_total: BTreeMap<u32, Vec<Gr::G>> = BTreeMap::new();
        for c in cands {
            by_total.entry(gr.total(&c)).or_default().push(c);
        }
        let mut chosen: Vec<(Gr::G, FreeElem)> = Vec::new();
        for grades in by_total.values() {
            let found: Vec<Vec<(Gr::G, FreeElem)>> = grades
                .par_iter()
                .map(|alpha| {
                    generators_in_grade(gr, prev, &levels[i - 2].grades, &chosen, alpha)
                        .into_iter()
                        .map(|x| (alpha.clone(), x))
                        .collect()
                })
                .collect();
            chosen.extend(found.into_iter().flatten());
            if chosen.len() > opts.max_generators {
                stopped = true;
                break;
            }
        }
        if stopped {
            break;
        }
        counts.push(chosen.len());
        gen_degrees.push(chosen.iter().map(|(g, _)| gr.total(g)).collect());
        let (grades, images) = chosen.into_iter().unzip();
        levels.push(Level { grades, images });
        achieved = i;
        // images two levels down are no longer needed
        levels[i - 2].images.clear();
    }
    let series = TruncatedSeries::new(
        counts.iter().map(|&c| c as i64).collect::<Vec<_>>(),
        trunc,
    );
    Ok(PoincareComputation {
        series,
        achieved,
        degree_bounds: bounds,
        generator_degrees: gen_degrees,
        artinian,
        truncated: false,
        stopped_by_limit: stopped,
    }
    .mark_truncated(opts))
}

impl PoincareComputation {
    fn mark_truncated(mut self, opts: &PoincareOptions) -> Self {
        self.truncated = opts.degree_bound.is_some() && !self.artinian;
        self
    }
}

/// Betti numbers `b_0, b_1, …` of `S/I` over `S`.
pub fn betti_of(ideal: &IdealGens, config: &GroebnerConfig) -> Result<Vec<usize>> {
    if let Some(m) = ideal.to_monomial_ideal() {
        if m.is_zero() {
            return Ok(vec![1]);
        }
        return betti_numbers(&m);
    }
    let h = koszul_homology(ideal, None, config)?;
    let mut d = h.dims;
    while d.len() > 1 && *d.last().unwrap() == 0 {
        d.pop();
    }
    Ok(d)
}

#[derive(Clone, Debug, Serialize)]
pub struct GolodEquality {
    pub trunc: usize,
    pub betti: Vec<usize>,
    pub serre: TruncatedSeries,
    pub computed: TruncatedSeries,
    pub equal_up_to_n: bool,
    pub leq_everywhere: bool,
    pub first_difference: Option<usize>,
    pub label: String,
}

/// Compare `P^R_K` with the Serre bound to degree `trunc`. Equality is only
/// evidence up to that degree.
pub fn golod_equality(ideal: &IdealGens, trunc: usize, config: &GroebnerConfig) -> Result<GolodEquality> {
    let betti = betti_of(ideal, config)?;
    let serre = serre_bound(&betti, ideal.ring().nvars(), trunc);
    let computed = poincare_k(ideal, trunc, config)?;
    let first_difference = computed.first_difference(&serre);
    let leq = computed.leq(&serre);
    let label = match (first_difference, leq) {
        (None, _) => format!("Golod-consistent to degree {trunc}"),
        (Some(k), true) => format!("not Golod: strict inequality in degree {k}"),
        (Some(k), false) => format!("Serre bound exceeded in degree {k}"),
    };
    Ok(GolodEquality {
        trunc,
        betti,
        serre,
        computed,
        equal_up_to_n: first_difference.is_none(),
        leq_everywhere: leq,
        first_difference,
        label,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingProfile {
    pub n: usize,
    pub artinian: bool,
    /// `dim_K Soc(R)`.
    pub tau: usize,
    /// Largest `s` with `𝔪^s ≠ 0` (Artinian only).
    pub s: Option<u32>,
    /// `dim_K 𝔪²/𝔪³ <= 1`.
    pub stretched: bool,
    /// Stretched because `𝔪² = 0`.
    pub degenerate: bool,
    /// Internal-degree bound used for the socle of a non-Artinian,
    /// non-monomial ring.
    pub socle_degree_bound: Option<u32>,
}

/// Socle dimension, top degree and stretchedness of `R = S/I`.
pub fn ring_profile(ideal: &IdealGens, config: &GroebnerConfig) -> Result<RingProfile> {
    let q = Quotient::new(ideal, config)?;
    let ring = ideal.ring();
    let n = ring.nvars();
    let artinian = q.is_artinian();
    let (tau, socle_degree_bound) = match &q {
        Quotient::Monomial(m) => {
            // socle monomials lie below the lcm of the generators
            let box_top = if m.is_zero() {
                Monomial::one(n)
            } else {
                m.lcm_all()
            };
            let tau = monomials_in_box(&box_top)
                .into_iter()
                .filter(|u| !m.contains(u) && (0..n).all(|i| m.contains(&u.mul_var(i))))
                .count();
            (tau, None)
        }
        Quotient::Groebner { initial, .. } => {
            let bound = q.top_degree().unwrap_or_else(|| initial.lcm_all().degree());
            let tau = (0..=bound).map(|d| socle_dim_in_degree(&q, d)).sum();
            (tau, (!artinian).then_some(bound))
        }
    };
    let r2 = q.standard_monomials(2).len();
    Ok(RingProfile {
        n,
        artinian,
        tau,
        s: q.top_degree(),
        stretched: r2 <= 1,
        degenerate: r2 == 0,
        socle_degree_bound,
    })
}

/// `dim` of the kernel of `R_d → R_{d+1}^n`, `f ↦ (x_i f)`.
fn socle_dim_in_degree(q: &Quotient, d: u32) -> usize {
    let ring = q.ring();
    let field = ring.field();
    let n = ring.nvars();
    let src = q.standard_monomials(d);
    if src.is_empty() {
        return 0;
    }
    let tgt = q.standard_monomials(d + 1);
    let idx: BTreeMap<&Monomial, usize> = tgt.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let mut rows = vec![vec![field.zero(); src.len()]; n * tgt.len()];
    for (c, u) in src.iter().enumerate() {
        for i in 0..n {
            let img = q.reduce(&Polynomial::monomial(ring, u.mul_var(i)));
            for (m, a) in img.terms() {
                rows[i * tgt.len() + idx[m]][c] = a.clone();
            }
        }
    }
    linalg::kernel(field, src.len(), &rows).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golod::stretched_ideal;
    use crate::monomial::test_support::{mi, ring};
    use crate::parse::parse_poly;

    fn ts(v: Vec<i64>) -> TruncatedSeries {
        let n = v.len() - 1;
        TruncatedSeries::new(v, n)
    }

    fn ints(s: &TruncatedSeries) -> Vec<i64> {
        s.to_i64s().unwrap()
    }

    #[test]
    fn series_arithmetic() {
        let inv = ts(vec![1, -1, 0, 0, 0]).inv().unwrap();
        assert_eq!(ints(&inv), vec![1, 1, 1, 1, 1]);
        assert_eq!(ints(&ts(vec![1, 1, 0]).mul(&ts(vec![1, -1, 0]))), vec![1, 0, -1]);
        assert!(ts(vec![2, 1]).inv().is_err());
        let a = ts(vec![1, 2, 3]);
        assert_eq!(series_ops(SeriesOp::Add, &a, Some(&a)).unwrap(), ts(vec![2, 4, 6]));
        assert!(series_ops(SeriesOp::Mul, &a, None).is_err());
        assert_eq!(ts(vec![1, 2, 4]).to_string(), "1 + 2t + 4t^2 + O(t^3)");
        assert_eq!(ts(vec![1, 0, -1]).to_string(), "1 - t^2 + O(t^3)");
        assert!(ts(vec![1, 2]).leq(&ts(vec![1, 3])));
        assert!(!ts(vec![1, 4]).leq(&ts(vec![1, 3])));
    }

    #[test]
    fn serre_and_sally() {
        assert_eq!(ints(&serre_bound(&[1, 3, 2], 2, 5)), vec![1, 2, 4, 8, 16, 32]);
        assert_eq!(ints(&serre_bound(&[1, 1], 1, 4)), vec![1, 1, 1, 1, 1]);
        assert_eq!(ints(&serre_bound(&[1], 3, 4)), vec![1, 3, 3, 1, 0]);
        assert_eq!(ints(&sally_series(3, 3, 3)), vec![1, 3, 9, 27]);
        assert_eq!(ints(&sally_series(3, 2, 4)), vec![1, 3, 8, 21, 55]);
        assert_eq!(ints(&sally_series(1, 1, 3)), vec![1, 1, 1, 1]);
    }

    #[test]
    fn poincare_small_cases() {
        let cfg = GroebnerConfig::default();
        let r2 = ring(2);
        let sq = MonomialIdeal::maximal(&r2).power(2).unwrap().to_gens().unwrap();
        assert_eq!(ints(&poincare_k(&sq, 8, &cfg).unwrap()), (0..9).map(|k| 1 << k).collect::<Vec<_>>());
        let r1 = ring(1);
        let hyp = mi(&r1, "x1^2").to_gens().unwrap();
        assert_eq!(ints(&poincare_k(&hyp, 5, &cfg).unwrap()), vec![1; 6]);
        let max = MonomialIdeal::maximal(&r2).to_gens().unwrap();
        assert_eq!(ints(&poincare_k(&max, 3, &cfg).unwrap()), vec![1, 0, 0, 0]);
        // non-Artinian hypersurface: (1+t)/(1−t²) · (1+t) = (1+t)²/(1−t²)
        let nonart = mi(&r2, "x1^2").to_gens().unwrap();
        assert_eq!(ints(&poincare_k(&nonart, 5, &cfg).unwrap()), vec![1, 2, 2, 2, 2, 2]);
        // x1^3 in two variables: (1+t)^2/(1−t^2)
        let cube = mi(&r2, "x1^3").to_gens().unwrap();
        assert_eq!(ints(&poincare_k(&cube, 6, &cfg).unwrap()), vec![1, 2, 2, 2, 2, 2, 2]);
    }

    #[test]
    fn poincare_homogeneous_complete_intersection() {
        let cfg = GroebnerConfig::default();
        let r = ring(2);
        let gens = vec![
            parse_poly(&r, "x1^2 - x2^2").unwrap(),
            parse_poly(&r, "x1*x2").unwrap(),
        ];
        let ideal = IdealGens::new(&r, gens).unwrap();
        // complete intersection: (1+t)^2/(1−t^2)^2
        let want = ts(vec![1, 2, 1, 0, 0, 0])
            .mul(&ts(vec![1, 0, -2, 0, 1, 0]).inv().unwrap());
        assert_eq!(poincare_k(&ideal, 5, &cfg).unwrap(), want);
        let eq = golod_equality(&ideal, 5, &cfg).unwrap();
        assert!(eq.leq_everywhere && !eq.equal_up_to_n);
    }

    #[test]
    fn golod_equality_examples() {
        let cfg = GroebnerConfig::default();
        let r2 = ring(2);
        let sq = MonomialIdeal::maximal(&r2).power(2).unwrap().to_gens().unwrap();
        let eq = golod_equality(&sq, 8, &cfg).unwrap();
        assert!(eq.equal_up_to_n && eq.leq_everywhere);
        assert_eq!(eq.label, "Golod-consistent to degree 8");
        let r1 = ring(1);
        let eq = golod_equality(&mi(&r1, "x1^2").to_gens().unwrap(), 6, &cfg).unwrap();
        assert!(eq.equal_up_to_n);
        // complete intersection of two monomials is not Golod
        let eq = golod_equality(&mi(&r2, "x1^2, x2^2").to_gens().unwrap(), 4, &cfg).unwrap();
        assert!(!eq.equal_up_to_n && eq.leq_everywhere);
    }

    #[test]
    fn hilbert_and_profiles() {
        let cfg = GroebnerConfig::default();
        let r2 = ring(2);
        let sq = MonomialIdeal::maximal(&r2).power(2).unwrap();
        assert_eq!(ints(&hilbert_series(&sq, 3)), vec![1, 2, 0, 0]);
        assert_eq!(ints(&hilbert_series(&MonomialIdeal::zero(&r2), 3)), vec![1, 2, 3, 4]);
        let r3 = ring(3);
        let st = stretched_ideal(&r3, 3, true).unwrap();
        assert_eq!(ints(&hilbert_series(&st.to_monomial_ideal().unwrap(), 5)), vec![1, 3, 1, 1, 0, 0]);
        let p = ring_profile(&st, &cfg).unwrap();
        assert_eq!((p.tau, p.s, p.stretched, p.artinian, p.degenerate), (3, Some(3), true, true, false));
        let p = ring_profile(&stretched_ideal(&r3, 3, false).unwrap(), &cfg).unwrap();
        assert_eq!((p.tau, p.artinian, p.s), (2, false, None));
        let p = ring_profile(&stretched_ideal(&r3, 1, true).unwrap(), &cfg).unwrap();
        assert!(p.stretched && p.degenerate);
        let r1 = ring(1);
        let p = ring_profile(&mi(&r1, "x1^2").to_gens().unwrap(), &cfg).unwrap();
        assert_eq!((p.tau, p.s, p.artinian), (1, Some(1), true));
    }

    #[test]
    fn profile_of_homogeneous_ideal() {
        let cfg = GroebnerConfig::default();
        let r = ring(2);
        let gens = vec![
            parse_poly(&r, "x1^2 - x2^2").unwrap(),
            parse_poly(&r, "x1*x2").unwrap(),
        ];
        let p = ring_profile(&IdealGens::new(&r, gens).unwrap(), &cfg).unwrap();
        // Gorenstein: socle spanned by x2^2
        assert_eq!((p.tau, p.s, p.stretched), (1, Some(2), true));
    }

    #[test]
    fn stretched_matches_sally() {
        let cfg = GroebnerConfig::default();
        let r3 = ring(3);
        let st = stretched_ideal(&r3, 2, true).unwrap();
        assert_eq!(poincare_k(&st, 6, &cfg).unwrap(), sally_series(3, 3, 6));
    }
}
