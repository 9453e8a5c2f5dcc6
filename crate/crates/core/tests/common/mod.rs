//! Independent oracles shared by the integration tests. Nothing here calls
//! the library routine it is meant to check.
#![allow(dead_code)]

use std::collections::BTreeMap;

use dgolod::dcalc::Permutation;
use dgolod::field::Scalar;
use dgolod::koszul::KoszulElement;
use dgolod::monomial::MonomialIdeal;
use dgolod::poly::Polynomial;
use dgolod::ring::{monomials_in_box, Monomial};
use num_rational::BigRational;
use num_traits::{One, Zero};

pub fn rat(s: &Scalar) -> BigRational {
    match s {
        Scalar::Rational(q) => q.clone(),
        Scalar::Modular { value, .. } => BigRational::from_integer((*value).into()),
    }
}

/// Row rank over Q by plain Gaussian elimination.
pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let piv = m[r][c].clone();
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = &row[c] / &piv;
                for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
    }
    r
}

fn sign(k: usize) -> BigRational {
    if k.is_multiple_of(2) {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

fn squarefree(t: &[usize], n: usize) -> Monomial {
    let mut e = vec![0u32; n];
    for &i in t {
        e[i] = 1;
    }
    Monomial::from_exponents(e)
}

fn subsets(n: usize, p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, p, cur, out);
            cur.pop();
        }
    }
    go(0, n, p, &mut cur, &mut out);
    out
}

/// The piece of `Ω ⊗ S/I` in multidegree `alpha`: basis `T` of `C_p` for
/// each `p`, with coefficient monomial `alpha / x_T` outside `I`.
pub struct Piece {
    pub alpha: Monomial,
    pub basis: Vec<Vec<Vec<usize>>>,
}

impl Piece {
    pub fn new(ideal: &MonomialIdeal, alpha: &Monomial) -> Piece {
        let n = ideal.nvars();
        let basis = (0..=n)
            .map(|p| {
                subsets(n, p)
                    .into_iter()
                    .filter(|t| {
                        alpha
                            .div(&squarefree(t, n))
                            .is_some_and(|m| !ideal.contains(&m))
                    })
                    .collect()
            })
            .collect();
        Piece {
            alpha: alpha.clone(),
            basis,
        }
    }

    /// Rows of `∂_p : C_p → C_{p−1}` in this multidegree.
    pub fn boundary(&self, p: usize) -> Vec<Vec<BigRational>> {
        if p == 0 || p >= self.basis.len() {
            return Vec::new();
        }
        let target = &self.basis[p - 1];
        self.basis[p]
            .iter()
            .map(|t| {
                let mut row = vec![BigRational::zero(); target.len()];
                for k in 0..t.len() {
                    let mut s = t.clone();
                    s.remove(k);
                    if let Some(pos) = target.iter().position(|u| *u == s) {
                        row[pos] += sign(k);
                    }
                }
                row
            })
            .collect()
    }

    pub fn homology(&self, p: usize) -> usize {
        let dim = self.basis[p].len();
        dim - rank(&self.boundary(p)) - rank(&self.boundary(p + 1))
    }
}

/// Multidegrees carrying homology: the box below `lcm(I) · x_1⋯x_n`.
pub fn koszul_box(ideal: &MonomialIdeal) -> Vec<Monomial> {
    let n = ideal.nvars();
    let all = Monomial::from_exponents(vec![1; n]);
    monomials_in_box(&ideal.lcm_all().mul(&all))
}

/// `dim H_p(Ω ⊗ S/I)` for every `p`, by brute-force ranks.
pub fn koszul_dims(ideal: &MonomialIdeal) -> Vec<usize> {
    let n = ideal.nvars();
    let mut dims = vec![0; n + 1];
    for alpha in koszul_box(ideal) {
        let piece = Piece::new(ideal, &alpha);
        for (p, d) in dims.iter_mut().enumerate() {
            *d += piece.homology(p);
        }
    }
    dims
}

/// `(T, coefficient)` pairs of one multihomogeneous piece.
pub type Terms = Vec<(Vec<usize>, BigRational)>;

/// Terms of `z` outside `I`, grouped by multidegree.
pub fn split_by_multidegree(ideal: &MonomialIdeal, z: &KoszulElement) -> BTreeMap<Monomial, Terms> {
    let n = ideal.nvars();
    let mut out: BTreeMap<Monomial, Terms> = BTreeMap::new();
    for (t, f) in z.coeffs() {
        for (m, c) in f.terms() {
            if ideal.contains(m) {
                continue;
            }
            let alpha = m.mul(&squarefree(t, n));
            out.entry(alpha).or_default().push((t.clone(), rat(c)));
        }
    }
    out
}

/// `∂z ≡ 0 (mod I)`, with the boundary computed here term by term.
pub fn is_cycle_mod(ideal: &MonomialIdeal, z: &KoszulElement) -> bool {
    let mut acc: BTreeMap<(Vec<usize>, Monomial), BigRational> = BTreeMap::new();
    for (t, f) in z.coeffs() {
        for (m, c) in f.terms() {
            for k in 0..t.len() {
                let mut s = t.clone();
                let v = s.remove(k);
                let mm = m.mul_var(v);
                if ideal.contains(&mm) {
                    continue;
                }
                *acc.entry((s, mm)).or_insert_with(BigRational::zero) += sign(k) * rat(c);
            }
        }
    }
    acc.values().all(Zero::is_zero)
}

/// Outcome of checking cycles of one homological degree against brute force.
#[derive(Debug, Default)]
pub struct CycleCheck {
    pub all_cycles: bool,
    pub homogeneous: bool,
    pub independent: bool,
    /// Cycle count equals `dim H_p` in every multidegree.
    pub counts_match: bool,
    /// Cycle count equals `dim H_p` in every total degree.
    pub degree_counts_match: bool,
}

pub fn check_cycles(ideal: &MonomialIdeal, p: usize, zs: &[KoszulElement]) -> CycleCheck {
    let mut res = CycleCheck {
        all_cycles: zs.iter().all(|z| is_cycle_mod(ideal, z)),
        homogeneous: true,
        independent: true,
        counts_match: true,
        degree_counts_match: true,
    };
    let mut by_alpha: BTreeMap<Monomial, Vec<Terms>> = BTreeMap::new();
    for z in zs {
        let parts = split_by_multidegree(ideal, z);
        if parts.len() != 1 {
            res.homogeneous = false;
            res.independent = false;
            continue;
        }
        let (alpha, terms) = parts.into_iter().next().unwrap();
        by_alpha.entry(alpha).or_default().push(terms);
    }
    let mut cycles_by_deg: BTreeMap<u32, usize> = BTreeMap::new();
    let mut hom_by_deg: BTreeMap<u32, usize> = BTreeMap::new();
    for alpha in koszul_box(ideal) {
        let piece = Piece::new(ideal, &alpha);
        let h = piece.homology(p);
        let zs_here = by_alpha.remove(&alpha).unwrap_or_default();
        *hom_by_deg.entry(alpha.degree()).or_default() += h;
        *cycles_by_deg.entry(alpha.degree()).or_default() += zs_here.len();
        if zs_here.len() != h {
            res.counts_match = false;
        }
        if zs_here.is_empty() {
            continue;
        }
        let basis = &piece.basis[p];
        let bounds = piece.boundary(p + 1);
        let mut rows = bounds.clone();
        for terms in &zs_here {
            let mut v = vec![BigRational::zero(); basis.len()];
            for (t, c) in terms {
                let pos = basis.iter().position(|u| u == t).expect("term in the piece basis");
                v[pos] += c.clone();
            }
            rows.push(v);
        }
        if rank(&rows) != rank(&bounds) + zs_here.len() {
            res.independent = false;
        }
    }
    if !by_alpha.is_empty() {
        // cycles outside the box
        res.counts_match = false;
    }
    res.degree_counts_match = hom_by_deg
        .iter()
        .all(|(d, h)| cycles_by_deg.get(d).copied().unwrap_or(0) == *h);
    res
}

/// `d_σ(I)` for a monomial ideal by the term rule: a monomial `u` goes to
/// `u / x_v` for the first variable `x_v` in the order `x_{σ(1)}, …` that
/// divides `u`.
pub fn d_sigma_gens(ideal: &MonomialIdeal, sigma: &Permutation) -> Vec<Monomial> {
    ideal
        .gens()
        .iter()
        .filter_map(|u| {
            let v = (0..sigma.len()).map(|r| sigma.apply(r)).find(|&v| u.exp(v) > 0)?;
            u.div_var(v)
        })
        .collect()
}

pub fn in_monomial_span(gens: &[Monomial], u: &Monomial) -> bool {
    gens.iter().any(|g| g.divides(u))
}

/// Every term of `f` is divisible by one of `gens`.
pub fn poly_in(gens: &[Monomial], f: &Polynomial) -> bool {
    f.terms().all(|(m, _)| in_monomial_span(gens, m))
}

/// `d_σ(I)^2 ⊆ I` by the term rule.
pub fn d_sigma_golod(ideal: &MonomialIdeal, sigma: &Permutation) -> bool {
    let d = d_sigma_gens(ideal, sigma);
    d.iter()
        .enumerate()
        .all(|(a, u)| d[a..].iter().all(|v| ideal.contains(&u.mul(v))))
}

pub fn all_permutations(n: usize) -> Vec<Permutation> {
    fn go(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
        let n = used.len();
        if cur.len() == n {
            out.push(Permutation::from_images(cur.clone()).unwrap());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

pub fn strongly_d_golod(ideal: &MonomialIdeal) -> bool {
    all_permutations(ideal.nvars())
        .iter()
        .all(|s| d_sigma_golod(ideal, s))
}

/// Truncated power series product over machine integers.
pub fn series_mul(a: &[i128], b: &[i128], len: usize) -> Vec<i128> {
    let mut out = vec![0i128; len];
    for (i, x) in a.iter().enumerate().take(len) {
        for (j, y) in b.iter().enumerate() {
            if i + j < len {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// `1 / q` for `q(0) = 1`.
pub fn series_inv(q: &[i128], len: usize) -> Vec<i128> {
    assert_eq!(q[0], 1);
    let mut out = vec![0i128; len];
    out[0] = 1;
    for k in 1..len {
        let s: i128 = (1..=k).map(|i| q.get(i).copied().unwrap_or(0) * out[k - i]).sum();
        out[k] = -s;
    }
    out
}

/// `(1+t)^n / (1 − Σ_{i≥1} b_i t^{i+1})` with `betti[0] = b_0`.
pub fn serre(betti: &[usize], n: usize, len: usize) -> Vec<i128> {
    let mut num = vec![1i128];
    for _ in 0..n {
        num = series_mul(&num, &[1, 1], len);
    }
    let mut den = vec![0i128; len.max(2)];
    den[0] = 1;
    for (i, &b) in betti.iter().enumerate().skip(1) {
        if i + 1 < den.len() {
            den[i + 1] -= b as i128;
        }
    }
    series_mul(&num, &series_inv(&den, len), len)
}

pub fn big_to_i128(v: &[num_bigint::BigInt]) -> Vec<i128> {
    v.iter().map(|x| i128::try_from(x).expect("coefficient fits i128")).collect()
}
