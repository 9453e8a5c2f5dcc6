//! Exact dense linear algebra over a [`Field`]: ranks, kernels and an
//! incremental echelon basis.

use crate::field::{Field, Scalar};

/// Incrementally built reduced row-echelon basis of a subspace of `K^len`.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    len: usize,
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl Echelon {
    pub fn new(field: Field, len: usize) -> Self {
        Echelon {
            field,
            len,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.len
    }

    /// Reduce `v` against the basis; zero result means `v` is in the span.
    pub fn reduce(&self, v: &mut [Scalar]) {
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let c = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = &*x - &(&c * r);
                }
            }
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Scalar::is_zero)
    }

    /// Add `v` to the basis; returns `false` when it was already in the span.
    pub fn insert(&mut self, v: Vec<Scalar>) -> bool {
        assert_eq!(v.len(), self.len, "vector length mismatch");
        let mut v = v;
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero pivot");
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let c = row[p].clone();
            for (x, r) in row.iter_mut().zip(&v) {
                if !r.is_zero() {
                    *x = &*x - &(&c * r);
                }
            }
        }
        self.rows.push((p, v));
        true
    }

    pub fn zero_vector(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.len]
    }
}

/// Rank of the matrix whose rows are `rows`.
pub fn rank(field: Field, ncols: usize, rows: &[Vec<Scalar>]) -> usize {
    let mut e = Echelon::new(field, ncols);
    for r in rows {
        e.insert(r.clone());
    }
    e.rank()
}

/// Basis of `{ x : M x = 0 }` for the `nrows x ncols` matrix `m` given by rows.
pub fn kernel(field: Field, ncols: usize, m: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let mut e = Echelon::new(field, ncols);
    for r in m {
        e.insert(r.clone());
    }
    let pivots: Vec<usize> = e.rows.iter().map(|(p, _)| *p).collect();
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![field.zero(); ncols];
        v[free] = field.one();
        for (p, row) in &e.rows {
            if !row[free].is_zero() {
                v[*p] = -&row[free];
            }
        }
        out.push(v);
    }
    out
}

/// `M v` for `M` given by rows.
pub fn mat_vec(field: Field, m: &[Vec<Scalar>], v: &[Scalar]) -> Vec<Scalar> {
    m.iter()
        .map(|row| {
            row.iter().zip(v).fold(field.zero(), |acc, (a, b)| {
                if a.is_zero() || b.is_zero() {
                    acc
                } else {
                    &acc + &(a * b)
                }
            })
        })
        .collect()
}
