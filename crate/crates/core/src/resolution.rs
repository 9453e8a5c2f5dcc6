//! Finite free complexes over `S`, the Taylor resolution of a monomial
//! quotient, minimalization, validation and a plain-text format.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::groebner::{contained_in, GroebnerConfig};
use crate::linalg;
use crate::monomial::MonomialIdeal;
use crate::parse::parse_poly_at;
use crate::poly::Polynomial;
use crate::ring::{monomials_of_degree, same_ring, Monomial, Ring};

/// Largest generator count accepted by [`taylor_complex`].
pub const TAYLOR_MAX_GENS: usize = 20;

/// Sparse matrix over `S`, stored by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    nrows: usize,
    cols: Vec<BTreeMap<usize, Polynomial>>,
}

impl Matrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Matrix {
            nrows,
            cols: vec![BTreeMap::new(); ncols],
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&Polynomial> {
        self.cols[c].get(&r)
    }

    pub fn set(&mut self, r: usize, c: usize, p: Polynomial) {
        assert!(r < self.nrows, "row out of range");
        if p.is_zero() {
            self.cols[c].remove(&r);
        } else {
            self.cols[c].insert(r, p);
        }
    }

    /// Nonzero entries of column `c`, keyed by row.
    pub fn column(&self, c: usize) -> &BTreeMap<usize, Polynomial> {
        &self.cols[c]
    }

    /// Nonzero entries of row `r`, keyed by column.
    pub fn row(&self, r: usize) -> Vec<(usize, &Polynomial)> {
        self.cols
            .iter()
            .enumerate()
            .filter_map(|(c, col)| col.get(&r).map(|p| (c, p)))
            .collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Polynomial)> {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, p)| (*r, c, p)))
    }
}

/// `0 <- F_0 <- F_1 <- ... <- F_l` with `δ_i : F_i -> F_{i−1}` of shape
/// `b_{i−1} x b_i`. Optional multidegree labels per basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeComplex {
    ring: Ring,
    ranks: Vec<usize>,
    diffs: Vec<Matrix>,
    multidegrees: Option<Vec<Vec<Monomial>>>,
}

impl FreeComplex {
    pub fn new(ring: &Ring, ranks: Vec<usize>, diffs: Vec<Matrix>) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::InvalidComplex("no modules".into()));
        }
        if diffs.len() + 1 != ranks.len() {
            return Err(Error::InvalidComplex(format!(
                "{} ranks need {} differentials, got {}",
                ranks.len(),
                ranks.len() - 1,
                diffs.len()
            )));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.nrows() != ranks[i] || d.ncols() != ranks[i + 1] {
                return Err(Error::InvalidComplex(format!(
                    "diff {} has shape {}x{}, expected {}x{}",
                    i + 1,
                    d.nrows(),
                    d.ncols(),
                    ranks[i],
                    ranks[i + 1]
                )));
            }
            if d.entries().any(|(_, _, p)| !same_ring(p.ring(), ring)) {
                return Err(Error::RingMismatch);
            }
        }
        Ok(FreeComplex {
            ring: ring.clone(),
            ranks,
            diffs,
            multidegrees: None,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn length(&self) -> usize {
        self.ranks.len() - 1
    }

    /// `δ_i` for `1 <= i <= length`.
    pub fn diff(&self, i: usize) -> &Matrix {
        &self.diffs[i - 1]
    }

    /// `α^{(i)}_{kj}`, the coefficient of `e_{i−1,k}` in `δ_i(e_{ij})`.
    pub fn entry(&self, i: usize, k: usize, j: usize) -> Polynomial {
        self.diffs[i - 1]
            .get(k, j)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(&self.ring))
    }

    pub fn multidegrees(&self) -> Option<&[Vec<Monomial>]> {
        self.multidegrees.as_deref()
    }

    /// Attach multidegree labels; every entry must be a term of degree
    /// `label(source) / label(target)`.
    pub fn with_multidegrees(mut self, labels: Vec<Vec<Monomial>>) -> Result<Self> {
        if labels.len() != self.ranks.len()
            || labels.iter().zip(&self.ranks).any(|(l, &b)| l.len() != b)
        {
            return Err(Error::InvalidComplex("label shape mismatch".into()));
        }
        for (i, d) in self.diffs.iter().enumerate() {
            for (r, c, p) in d.entries() {
                let want = labels[i + 1][c].div(&labels[i][r]);
                let ok = match (p.as_term(), want) {
                    (Some((m, _)), Some(w)) => *m == w,
                    _ => false,
                };
                if !ok {
                    return Err(Error::InvalidComplex(format!(
                        "entry ({r},{c}) of diff {} is not homogeneous for the labels",
                        i + 1
                    )));
                }
            }
        }
        self.multidegrees = Some(labels);
        Ok(self)
    }

    /// Try to derive multidegree labels (`F_0` labelled 1) from monomial
    /// entries; returns the complex unchanged when that is impossible.
    pub fn infer_multidegrees(self) -> Self {
        if self.multidegrees.is_some() {
            return self;
        }
        let n = self.ring.nvars();
        let mut labels: Vec<Vec<Monomial>> = vec![vec![Monomial::one(n); self.ranks[0]]];
        for (i, d) in self.diffs.iter().enumerate() {
            let mut li = Vec::with_capacity(d.ncols());
            for c in 0..d.ncols() {
                let Some((r, p)) = d.column(c).iter().next() else {
                    return self;
                };
                let Some((m, _)) = p.as_term() else {
                    return self;
                };
                li.push(labels[i][*r].mul(m));
            }
            labels.push(li);
        }
        match self.clone().with_multidegrees(labels) {
            Ok(c) => c,
            Err(_) => self,
        }
    }

    /// Total-degree labels, from multidegrees when present, otherwise
    /// inferred from homogeneous entries with `F_0` in degree 0.
    pub fn degrees(&self) -> Result<Vec<Vec<u32>>> {
        if let Some(md) = &self.multidegrees {
            return Ok(md
                .iter()
                .map(|l| l.iter().map(Monomial::degree).collect())
                .collect());
        }
        let mut out = vec![vec![0u32; self.ranks[0]]];
        for (i, d) in self.diffs.iter().enumerate() {
            let mut li = Vec::with_capacity(d.ncols());
            for c in 0..d.ncols() {
                let mut deg = None;
                for (r, p) in d.column(c) {
                    if !p.is_homogeneous() {
                        return Err(Error::Unsupported(format!(
                            "entry ({r},{c}) of diff {} is not homogeneous",
                            i + 1
                        )));
                    }
                    let e = out[i][*r] + p.total_degree().unwrap();
                    if deg.is_some_and(|x| x != e) {
                        return Err(Error::Unsupported(format!(
                            "column {c} of diff {} is not homogeneous",
                            i + 1
                        )));
                    }
                    deg = Some(e);
                }
                let Some(deg) = deg else {
                    return Err(Error::Unsupported(format!(
                        "column {c} of diff {} is zero; its degree is undetermined",
                        i + 1
                    )));
                };
                li.push(deg);
            }
            out.push(li);
        }
        Ok(out)
    }

    /// The generators of the image of `δ_1` (for `b_0 = 1`).
    pub fn first_row(&self) -> Vec<Polynomial> {
        if self.diffs.is_empty() {
            return Vec::new();
        }
        self.diffs[0].row(0).into_iter().map(|(_, p)| p.clone()).collect()
    }

    /// Drop trailing zero modules.
    fn trimmed(mut self) -> Self {
        while self.ranks.len() > 1 && *self.ranks.last().unwrap() == 0 {
            self.ranks.pop();
            self.diffs.pop();
            if let Some(md) = &mut self.multidegrees {
                md.pop();
            }
        }
        self
    }
}

/// The Taylor resolution of `S/I`: `F_k` has basis the `k`-subsets `T` of the
/// minimal generators, in lexicographic order, and
/// `δ(e_T) = Σ_p (−1)^{k−1−p} lcm(T)/lcm(T∖g_p) e_{T∖g_p}`.
pub fn taylor_complex(ideal: &MonomialIdeal) -> Result<FreeComplex> {
    if ideal.is_unit() || ideal.is_zero() {
        return Err(Error::Precondition(
            "the Taylor complex needs a nonzero proper ideal".into(),
        ));
    }
    let g = ideal.gens();
    let m = g.len();
    if m > TAYLOR_MAX_GENS {
        return Err(Error::ResourceLimit(format!(
            "Taylor complex of {m} generators exceeds the limit of {TAYLOR_MAX_GENS}"
        )));
    }
    let ring = ideal.ring();
    let n = ring.nvars();
    let field = ring.field();
    let subsets: Vec<Vec<u32>> = (0..=m)
        .map(|k| {
            let mut v: Vec<u32> = (0u32..(1u32 << m))
                .filter(|s| s.count_ones() as usize == k)
                .collect();
            // lexicographic order of the sorted index lists
            v.sort_by_key(|s| (0..m).filter(|i| s & (1 << i) != 0).collect::<Vec<_>>());
            v
        })
        .collect();
    let lcm_of = |s: u32| {
        (0..m)
            .filter(|i| s & (1 << i) != 0)
            .fold(Monomial::one(n), |acc, i| acc.lcm(&g[i]))
    };
    let labels: Vec<Vec<Monomial>> = subsets
        .iter()
        .map(|v| v.iter().map(|&s| lcm_of(s)).collect())
        .collect();
    let mut diffs = Vec::with_capacity(m);
    for k in 1..=m {
        let index: BTreeMap<u32, usize> =
            subsets[k - 1].iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let mut d = Matrix::zeros(subsets[k - 1].len(), subsets[k].len());
        for (c, &s) in subsets[k].iter().enumerate() {
            let members: Vec<usize> = (0..m).filter(|i| s & (1 << i) != 0).collect();
            for (p, &gi) in members.iter().enumerate() {
                let t = s & !(1 << gi);
                let r = index[&t];
                let coeff = labels[k][c].div(&labels[k - 1][r]).unwrap();
                let sign = if (k - 1 - p) % 2 == 0 {
                    field.one()
                } else {
                    field.from_i64(-1)
                };
                d.set(r, c, Polynomial::term(ring, coeff, sign));
            }
        }
        diffs.push(d);
    }
    let ranks = subsets.iter().map(Vec::len).collect();
    FreeComplex::new(ring, ranks, diffs)?.with_multidegrees(labels)
}

/// Entries lying outside the maximal ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalityReport {
    pub minimal: bool,
    /// `(diff, row, column, entry)` with 1-based `diff`, 0-based row/column.
    pub offending: Vec<(usize, usize, usize, String)>,
}

pub fn minimality(c: &FreeComplex) -> MinimalityReport {
    let mut offending = Vec::new();
    for (i, d) in c.diffs.iter().enumerate() {
        for (r, col, p) in d.entries() {
            if !p.in_max_ideal() {
                offending.push((i + 1, r, col, p.to_string()));
            }
        }
    }
    offending.sort();
    MinimalityReport {
        minimal: offending.is_empty(),
        offending,
    }
}

/// Split off unit entries until none remain: lowest differential first,
/// then leftmost column, then topmost row. For a unit `a` at `(k, j)` of
/// `δ_i`: `δ_i' = δ_i − δ_i[·, j] a⁻¹ δ_i[k, ·]` without row `k` and column
/// `j`, `δ_{i−1}` loses column `k` and `δ_{i+1}` loses row `j`.
pub fn minimalize(c: &FreeComplex) -> FreeComplex {
    let len = c.length();
    let mut diffs = c.diffs.clone();
    let mut alive: Vec<Vec<bool>> = c.ranks.iter().map(|&b| vec![true; b]).collect();
    for i in 1..=len {
        loop {
            let d = &diffs[i - 1];
            let found = (0..d.ncols())
                .filter(|&col| alive[i][col])
                .find_map(|col| {
                    d.column(col)
                        .iter()
                        .find(|(_, p)| p.is_unit())
                        .map(|(r, p)| (*r, col, p.clone()))
                });
            let Some((k, j, a)) = found else {
                break;
            };
            let a_inv = a.constant_term().inv().unwrap();
            let gamma: Vec<(usize, Polynomial)> = diffs[i - 1]
                .column(j)
                .iter()
                .filter(|(r, _)| **r != k)
                .map(|(r, p)| (*r, p.scale(&a_inv)))
                .collect();
            let d = &mut diffs[i - 1];
            for (col, &live) in alive[i].iter().enumerate().take(d.ncols()) {
                if col == j || !live {
                    continue;
                }
                let Some(beta) = d.cols[col].remove(&k) else {
                    continue;
                };
                for (r, g) in &gamma {
                    let old = d.get(*r, col).cloned().unwrap_or_else(|| Polynomial::zero(&c.ring));
                    d.set(*r, col, &old - &(g * &beta));
                }
            }
            d.cols[j].clear();
            alive[i][j] = false;
            alive[i - 1][k] = false;
            if i > 1 {
                diffs[i - 2].cols[k].clear();
            }
            if i < len {
                for col in diffs[i].cols.iter_mut() {
                    col.remove(&j);
                }
            }
        }
    }
    // compact
    let maps: Vec<Vec<Option<usize>>> = alive
        .iter()
        .map(|a| {
            let mut next = 0;
            a.iter()
                .map(|&x| {
                    x.then(|| {
                        next += 1;
                        next - 1
                    })
                })
                .collect()
        })
        .collect();
    let ranks: Vec<usize> = alive.iter().map(|a| a.iter().filter(|&&x| x).count()).collect();
    let mut new_diffs = Vec::with_capacity(len);
    for i in 1..=len {
        let mut m = Matrix::zeros(ranks[i - 1], ranks[i]);
        for (r, col, p) in diffs[i - 1].entries() {
            if let (Some(nr), Some(nc)) = (maps[i - 1][r], maps[i][col]) {
                m.set(nr, nc, p.clone());
            }
        }
        new_diffs.push(m);
    }
    let multidegrees = c.multidegrees.as_ref().map(|md| {
        md.iter()
            .zip(&alive)
            .map(|(l, a)| {
                l.iter()
                    .zip(a)
                    .filter(|(_, &x)| x)
                    .map(|(m, _)| m.clone())
                    .collect()
            })
            .collect()
    });
    FreeComplex {
        ring: c.ring.clone(),
        ranks,
        diffs: new_diffs,
        multidegrees,
    }
    .trimmed()
}

/// Ranks of the minimalized Taylor resolution.
pub fn betti_numbers(ideal: &MonomialIdeal) -> Result<Vec<usize>> {
    Ok(minimal_resolution(ideal)?.ranks().to_vec())
}

/// The minimal free resolution of `S/I` obtained from the Taylor complex.
pub fn minimal_resolution(ideal: &MonomialIdeal) -> Result<FreeComplex> {
    Ok(minimalize(&taylor_complex(ideal)?))
}

/// First column `c` of `δ_{i+1}` with `δ_i δ_{i+1} e_c ≠ 0`.
pub fn check_d_squared(c: &FreeComplex) -> std::result::Result<(), String> {
    for i in 1..c.length() {
        let (d, e) = (c.diff(i), c.diff(i + 1));
        for col in 0..e.ncols() {
            let mut acc: BTreeMap<usize, Polynomial> = BTreeMap::new();
            for (mid, q) in e.column(col) {
                for (r, p) in d.column(*mid) {
                    let cur = acc.remove(r).unwrap_or_else(|| Polynomial::zero(&c.ring));
                    let v = &cur + &(p * q);
                    if !v.is_zero() {
                        acc.insert(*r, v);
                    }
                }
            }
            if let Some((r, v)) = acc.into_iter().next() {
                return Err(format!(
                    "δ_{i}δ_{} applied to basis element {col} has component {v} at row {r}",
                    i + 1
                ));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub d_squared_zero: bool,
    pub cokernel_ok: bool,
    pub exact: bool,
    pub minimality: MinimalityReport,
    /// Degrees (total degree, or multidegrees shown as monomials) checked.
    pub checked_degrees: usize,
    pub first_failure: Option<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.d_squared_zero && self.cokernel_ok && self.exact
    }
}

/// Check that `c` is a free resolution of `S/I`: `δδ = 0`, the image of
/// `δ_1` is `I`, and `H_i = 0` for `i >= 1` in every relevant degree.
pub fn validate_complex(
    c: &FreeComplex,
    ideal: &[Polynomial],
    config: &GroebnerConfig,
) -> Result<ValidationReport> {
    let minimality = minimality(c);
    let mut report = ValidationReport {
        d_squared_zero: true,
        cokernel_ok: true,
        exact: true,
        minimality,
        checked_degrees: 0,
        first_failure: None,
    };
    if let Err(msg) = check_d_squared(c) {
        report.d_squared_zero = false;
        report.exact = false;
        report.first_failure = Some(msg);
        return Ok(report);
    }
    if c.ranks[0] != 1 || c.length() == 0 {
        report.cokernel_ok = false;
        report.first_failure = Some("F_0 must have rank one and δ_1 must exist".into());
        return Ok(report);
    }
    let row = c.first_row();
    let fwd = contained_in(&row, &c.ring, ideal, config)?;
    let back = contained_in(ideal, &c.ring, &row, config)?;
    if !fwd.holds || !back.holds {
        report.cokernel_ok = false;
        let w = fwd.witness.or(back.witness).unwrap();
        report.first_failure = Some(format!("image of δ_1 differs from the ideal at {w}"));
        return Ok(report);
    }
    let (checked, failure) = match &c.multidegrees {
        Some(md) => exact_multigraded(c, md),
        None => exact_graded(c)?,
    };
    report.checked_degrees = checked;
    if let Some(f) = failure {
        report.exact = false;
        report.first_failure = Some(f);
    }
    Ok(report)
}

fn lcm_closure(labels: &[Vec<Monomial>]) -> Vec<Monomial> {
    let mut set: BTreeSet<Monomial> = labels.iter().flatten().cloned().collect();
    loop {
        let items: Vec<Monomial> = set.iter().cloned().collect();
        let before = set.len();
        for a in 0..items.len() {
            for b in a + 1..items.len() {
                set.insert(items[a].lcm(&items[b]));
            }
        }
        if set.len() == before {
            return items;
        }
    }
}

/// Strands `{e : label(e) | α}` for α in the lcm closure of the labels; each
/// strand is a complex of vector spaces with scalar differentials.
fn exact_multigraded(c: &FreeComplex, md: &[Vec<Monomial>]) -> (usize, Option<String>) {
    let field = c.ring.field();
    let alphas = lcm_closure(md);
    let failures: Vec<Option<String>> = alphas
        .par_iter()
        .map(|alpha| {
            let basis: Vec<Vec<usize>> = md
                .iter()
                .map(|l| (0..l.len()).filter(|&e| l[e].divides(alpha)).collect())
                .collect();
            let rank_of = |i: usize| -> usize {
                if i == 0 || i > c.length() {
                    return 0;
                }
                let d = c.diff(i);
                let rows: Vec<Vec<Scalar>> = basis[i]
                    .iter()
                    .map(|&col| {
                        basis[i - 1]
                            .iter()
                            .map(|&r| d.get(r, col).map_or(field.zero(), term_coeff))
                            .collect()
                    })
                    .collect();
                linalg::rank(field, basis[i - 1].len(), &rows)
            };
            let ranks: Vec<usize> = (0..=c.length() + 1).map(rank_of).collect();
            for i in 1..=c.length() {
                let h = basis[i].len() - ranks[i] - ranks[i + 1];
                if h != 0 {
                    return Some(format!("H_{i} has dimension {h} in multidegree {alpha}"));
                }
            }
            None
        })
        .collect();
    (alphas.len(), failures.into_iter().flatten().next())
}

fn exact_graded(c: &FreeComplex) -> Result<(usize, Option<String>)> {
    let degs = c.degrees()?;
    let field = c.ring.field();
    let n = c.ring.nvars();
    // syzygies of the last module live at most one entry degree above it
    let step = c
        .diffs
        .iter()
        .flat_map(|d| d.entries().map(|(_, _, p)| p.total_degree().unwrap_or(0)))
        .max()
        .unwrap_or(0);
    let top = degs.iter().flatten().copied().max().unwrap_or(0) + step;
    for d in 0..=top {
        // basis of (F_i)_d: (e, m) with deg e + deg m = d
        let basis: Vec<Vec<(usize, Monomial)>> = degs
            .iter()
            .map(|l| {
                l.iter()
                    .enumerate()
                    .filter(|(_, &g)| g <= d)
                    .flat_map(|(e, &g)| monomials_of_degree(n, d - g).into_iter().map(move |m| (e, m)))
                    .collect()
            })
            .collect();
        let rank_of = |i: usize| -> usize {
            if i == 0 || i > c.length() {
                return 0;
            }
            let index: BTreeMap<&(usize, Monomial), usize> =
                basis[i - 1].iter().enumerate().map(|(k, b)| (b, k)).collect();
            let dm = c.diff(i);
            let rows: Vec<Vec<Scalar>> = basis[i]
                .iter()
                .map(|(e, m)| {
                    let mut v = vec![field.zero(); basis[i - 1].len()];
                    for (r, p) in dm.column(*e) {
                        for (u, coef) in p.terms() {
                            let k = index[&(*r, u.mul(m))];
                            v[k] = &v[k] + coef;
                        }
                    }
                    v
                })
                .collect();
            linalg::rank(field, basis[i - 1].len(), &rows)
        };
        let ranks: Vec<usize> = (0..=c.length() + 1).map(rank_of).collect();
        for i in 1..=c.length() {
            let h = basis[i].len() - ranks[i] - ranks[i + 1];
            if h != 0 {
                return Ok((d as usize + 1, Some(format!("H_{i} has dimension {h} in degree {d}"))));
            }
        }
    }
    Ok((top as usize + 1, None))
}

/// Text form:
/// ```text
/// complex
/// ranks: 1 2 1
/// diff 1:
/// x1*x2, x2*x3
/// diff 2:
/// x3
/// -x1
/// ```
pub fn format_complex(c: &FreeComplex) -> String {
    let mut s = String::from("complex\nranks:");
    for b in &c.ranks {
        let _ = write!(s, " {b}");
    }
    s.push('\n');
    for i in 1..=c.length() {
        let _ = writeln!(s, "diff {i}:");
        let d = c.diff(i);
        for r in 0..d.nrows() {
            let row: Vec<String> = (0..d.ncols())
                .map(|col| d.get(r, col).map_or("0".to_string(), |p| p.to_string()))
                .collect();
            let _ = writeln!(s, "{}", row.join(", "));
        }
    }
    s
}

pub fn parse_complex(ring: &Ring, text: &str) -> Result<FreeComplex> {
    let perr = |line: usize, message: String| Error::Parse {
        line,
        column: 1,
        message,
    };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    match lines.next() {
        Some((_, "complex")) => {}
        Some((ln, _)) => return Err(perr(ln, "expected `complex`".into())),
        None => return Err(perr(1, "empty complex file".into())),
    }
    let (ln, rl) = lines.next().ok_or_else(|| perr(2, "missing `ranks:` line".into()))?;
    let ranks: Vec<usize> = rl
        .strip_prefix("ranks:")
        .ok_or_else(|| perr(ln, "expected `ranks:`".into()))?
        .split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|_| perr(ln, format!("bad rank `{t}`"))))
        .collect::<Result<_>>()?;
    if ranks.is_empty() || ranks.contains(&0) {
        return Err(perr(ln, "ranks must be positive".into()));
    }
    let mut diffs = Vec::new();
    for i in 1..ranks.len() {
        let (ln, h) = lines
            .next()
            .ok_or_else(|| perr(ln, format!("missing `diff {i}:`")))?;
        if h != format!("diff {i}:") {
            return Err(perr(ln, format!("expected `diff {i}:`")));
        }
        let mut m = Matrix::zeros(ranks[i - 1], ranks[i]);
        for r in 0..ranks[i - 1] {
            let (ln, row) = lines
                .next()
                .ok_or_else(|| perr(ln, format!("diff {i} needs {} rows", ranks[i - 1])))?;
            let cells: Vec<&str> = row.split(',').collect();
            if cells.len() != ranks[i] {
                return Err(perr(
                    ln,
                    format!("row has {} entries, expected {}", cells.len(), ranks[i]),
                ));
            }
            for (col, cell) in cells.iter().enumerate() {
                m.set(r, col, parse_poly_at(ring, cell, ln)?);
            }
        }
        diffs.push(m);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(perr(ln, "trailing input".into()));
    }
    FreeComplex::new(ring, ranks, diffs)
}

/// The coefficient of a term (zero for the zero polynomial).
fn term_coeff(p: &Polynomial) -> Scalar {
    match p.as_term() {
        Some((_, c)) => c.clone(),
        None => {
            assert!(p.is_zero(), "multigraded entries are terms");
            p.ring().field().zero()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::test_support::{mi, ring};

    fn cfg() -> GroebnerConfig {
        GroebnerConfig::default()
    }

    #[test]
    fn taylor_two_generators() {
        let r = ring(3);
        let i = mi(&r, "x1*x2, x2*x3");
        let t = taylor_complex(&i).unwrap();
        assert_eq!(t.ranks(), &[1, 2, 1]);
        assert_eq!(t.entry(1, 0, 0).to_string(), "x1*x2");
        assert_eq!(t.entry(1, 0, 1).to_string(), "x2*x3");
        assert_eq!(t.entry(2, 0, 0).to_string(), "x3");
        assert_eq!(t.entry(2, 1, 0).to_string(), "-x1");
        assert!(check_d_squared(&t).is_ok());
        let m = minimalize(&t);
        assert_eq!(m, t);
        let v = validate_complex(&m, &i.gens_as_polys(), &cfg()).unwrap();
        assert!(v.passed() && v.minimality.minimal, "{v:?}");
    }

    #[test]
    fn taylor_triangle() {
        let r = ring(3);
        let i = mi(&r, "x1*x2, x1*x3, x2*x3");
        let t = taylor_complex(&i).unwrap();
        assert_eq!(t.ranks(), &[1, 3, 3, 1]);
        let md = t.multidegrees().unwrap();
        assert!(md[2].iter().chain(&md[3]).all(|m| m.to_string() == "x1*x2*x3"));
        assert!(validate_complex(&t, &i.gens_as_polys(), &cfg()).unwrap().passed());
        let m = minimalize(&t);
        assert_eq!(m.ranks(), &[1, 3, 2]);
        let v = validate_complex(&m, &i.gens_as_polys(), &cfg()).unwrap();
        assert!(v.passed() && v.minimality.minimal);
    }

    #[test]
    fn principal_and_square() {
        let r = ring(2);
        assert_eq!(betti_numbers(&mi(&r, "x1*x2")).unwrap(), vec![1, 1]);
        assert_eq!(betti_numbers(&mi(&r, "x1^2, x1*x2, x2^2")).unwrap(), vec![1, 3, 2]);
        let p = taylor_complex(&mi(&r, "x1*x2")).unwrap();
        assert_eq!(minimalize(&p), p);
    }

    #[test]
    fn corrupted_sign_detected() {
        let r = ring(3);
        let i = mi(&r, "x1*x2, x1*x3, x2*x3");
        let t = taylor_complex(&i).unwrap();
        let mut diffs: Vec<Matrix> = (1..=t.length()).map(|k| t.diff(k).clone()).collect();
        let e = diffs[1].get(0, 0).unwrap().clone();
        diffs[1].set(0, 0, -&e);
        let bad = FreeComplex::new(&r, t.ranks().to_vec(), diffs).unwrap();
        let v = validate_complex(&bad, &i.gens_as_polys(), &cfg()).unwrap();
        assert!(!v.d_squared_zero && !v.passed());
    }

    #[test]
    fn graded_check_without_labels() {
        let r = ring(2);
        let i = mi(&r, "x1^2, x1*x2, x2^2");
        let m = minimal_resolution(&i).unwrap();
        let plain = parse_complex(&r, &format_complex(&m)).unwrap();
        assert!(plain.multidegrees().is_none());
        let v = validate_complex(&plain, &i.gens_as_polys(), &cfg()).unwrap();
        assert!(v.passed(), "{v:?}");
        // dropping the last differential leaves homology in degree 1
        let truncated = FreeComplex::new(&r, vec![1, 3], vec![m.diff(1).clone()]).unwrap();
        let v = validate_complex(&truncated, &i.gens_as_polys(), &cfg()).unwrap();
        assert!(!v.exact);
        let wrong_ideal = mi(&r, "x1^2, x2^2").gens_as_polys();
        assert!(!validate_complex(&plain, &wrong_ideal, &cfg()).unwrap().cokernel_ok);
    }

    #[test]
    fn text_round_trip() {
        let r = ring(3);
        let t = taylor_complex(&mi(&r, "x1*x2, x1*x3, x2*x3^2")).unwrap();
        let s = format_complex(&t);
        let back = parse_complex(&r, &s).unwrap();
        assert_eq!(format_complex(&back), s);
        assert_eq!(back.infer_multidegrees(), t);
        assert!(parse_complex(&r, "complex\nranks: 1 2\ndiff 1:\nx1").is_err());
        assert!(parse_complex(&r, "complex\nranks: 1 1\ndiff 1:\ny").is_err());
        assert!(parse_complex(&r, "nope").is_err());
    }
}
