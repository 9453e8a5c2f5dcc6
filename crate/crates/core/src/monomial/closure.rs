//! Integral closure of monomial ideals via Newton-polyhedron membership.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::MonomialIdeal;
use crate::error::{Error, Result};
use crate::ring::{monomials_in_box, Monomial};

/// Whether `e` lies in `conv(points) + R^n_{>=0}`, i.e. whether there are
/// convex weights `λ` with `Σ λ_j a_j <= e` componentwise. Decided by an
/// exact phase-one simplex with Bland's rule.
pub fn in_newton_polyhedron(points: &[Monomial], e: &Monomial) -> bool {
    if points.is_empty() {
        return false;
    }
    if points.iter().any(|a| a.divides(e)) {
        return true;
    }
    let n = e.nvars();
    // cheap necessary conditions: w·e >= min_j w·a_j for w = unit vectors and w = 1
    for i in 0..n {
        if points.iter().all(|a| a.exp(i) > e.exp(i)) {
            return false;
        }
    }
    if points.iter().all(|a| a.degree() > e.degree()) {
        return false;
    }
    feasible(points, e)
}

/// Phase-one simplex on
///   Σ_j a_{ij} λ_j + s_i = e_i  (i < n),   Σ_j λ_j + t = 1,
/// minimizing the artificial `t`; feasible iff the optimum is zero.
fn feasible(points: &[Monomial], e: &Monomial) -> bool {
    let n = e.nvars();
    let m = points.len();
    // columns: λ_0..λ_{m-1}, s_0..s_{n-1}, t ; last entry of each row is the rhs
    let cols = m + n + 1;
    let q = |v: u32| BigRational::from_integer(BigInt::from(v));
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(n + 1);
    for i in 0..n {
        let mut r = vec![BigRational::zero(); cols + 1];
        for (j, a) in points.iter().enumerate() {
            r[j] = q(a.exp(i));
        }
        r[m + i] = BigRational::one();
        r[cols] = q(e.exp(i));
        rows.push(r);
    }
    let mut last = vec![BigRational::zero(); cols + 1];
    for x in last.iter_mut().take(m) {
        *x = BigRational::one();
    }
    last[m + n] = BigRational::one();
    last[cols] = BigRational::one();
    rows.push(last);
    let mut basis: Vec<usize> = (0..n).map(|i| m + i).chain([m + n]).collect();
    // objective: minimize t, expressed through the last row (t is basic there)
    loop {
        // reduced cost of column c is -(row_t[c]) for non-basic c; t's row is index n
        let t_row = basis.iter().position(|&b| b == m + n);
        let Some(tr) = t_row else {
            return true;
        };
        if rows[tr][cols].is_zero() {
            return true;
        }
        let entering = (0..cols)
            .filter(|c| !basis.contains(c) && *c != m + n)
            .find(|&c| rows[tr][c].is_positive());
        let Some(c) = entering else {
            return false;
        };
        // ratio test with Bland's tie-break on the basic variable index
        let mut best: Option<(usize, BigRational)> = None;
        for (r, row) in rows.iter().enumerate() {
            if row[c].is_positive() {
                let ratio = &row[cols] / &row[c];
                let better = match &best {
                    None => true,
                    Some((br, bv)) => ratio < *bv || (ratio == *bv && basis[r] < basis[*br]),
                };
                if better {
                    best = Some((r, ratio));
                }
            }
        }
        let (pr, _) = best.expect("bounded: t row has positive entry");
        let piv = rows[pr][c].clone();
        for x in rows[pr].iter_mut() {
            *x = &*x / &piv;
        }
        let prow = rows[pr].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == pr || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x = &*x - &(&f * p);
                }
            }
        }
        basis[pr] = c;
    }
}

/// All monomials whose exponent vectors lie in the Newton polyhedron of
/// `A`, minimalized. Candidates range over the box bounded by the
/// componentwise maximum of the generator exponents.
pub fn integral_closure(a: &MonomialIdeal) -> Result<MonomialIdeal> {
    if a.is_unit() {
        return Err(Error::Precondition("the unit ideal is not proper".into()));
    }
    if a.is_zero() {
        return Ok(a.clone());
    }
    let gens = a.gens();
    let mut candidates = monomials_in_box(&a.lcm_all());
    candidates.sort_by_key(Monomial::degree);
    let mut found: Vec<Monomial> = Vec::new();
    for u in candidates {
        if found.iter().any(|g| g.divides(&u)) || gens.iter().any(|g| g.divides(&u)) {
            continue;
        }
        if in_newton_polyhedron(gens, &u) {
            found.push(u);
        }
    }
    found.extend(gens.iter().cloned());
    Ok(MonomialIdeal::from_gens(a.ring(), found))
}
