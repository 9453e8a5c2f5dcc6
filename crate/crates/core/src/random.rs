//! Seeded random instances for property suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dcalc::Permutation;
use crate::monomial::MonomialIdeal;
use crate::poly::Polynomial;
use crate::ring::{Monomial, Ring};

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A monomial of total degree in `lo..=hi`.
pub fn monomial<R: Rng>(rng: &mut R, n: usize, lo: u32, hi: u32) -> Monomial {
    let d = rng.gen_range(lo..=hi);
    let mut e = vec![0u32; n];
    for _ in 0..d {
        e[rng.gen_range(0..n)] += 1;
    }
    Monomial::from_exponents(e)
}

/// A proper nonzero monomial ideal with `1..=max_gens` generators of
/// degree `1..=max_deg` (before minimalization).
pub fn monomial_ideal<R: Rng>(rng: &mut R, ring: &Ring, max_gens: usize, max_deg: u32) -> MonomialIdeal {
    let n = ring.nvars();
    let k = rng.gen_range(1..=max_gens);
    let gens = (0..k).map(|_| monomial(rng, n, 1, max_deg)).collect();
    MonomialIdeal::from_gens(ring, gens)
}

/// A polynomial with up to `max_terms` terms of degree `<= max_deg` and
/// integer coefficients in `-c..=c`.
pub fn polynomial<R: Rng>(rng: &mut R, ring: &Ring, max_terms: usize, max_deg: u32, c: i64) -> Polynomial {
    let n = ring.nvars();
    let field = ring.field();
    let k = rng.gen_range(0..=max_terms);
    Polynomial::from_terms(
        ring,
        (0..k).map(|_| (monomial(rng, n, 0, max_deg), field.from_i64(rng.gen_range(-c..=c)))),
    )
}

pub fn permutation<R: Rng>(rng: &mut R, n: usize) -> Permutation {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    Permutation::from_images(v).expect("a shuffle is a permutation")
}

/// Ideals `J_1, …, J_n` with `J_i` generated by monomials in
/// `x_i, …, x_n` only (some may be zero or the unit ideal).
pub fn sum_family_members<R: Rng>(rng: &mut R, ring: &Ring, max_deg: u32) -> Vec<MonomialIdeal> {
    let n = ring.nvars();
    let members: Vec<MonomialIdeal> = (0..n)
        .map(|i| {
            let k = if rng.gen_bool(0.2) { 0 } else { rng.gen_range(1..=2usize) };
            let gens = (0..k)
                .map(|_| {
                    let tail = monomial(rng, n - i, 0, max_deg);
                    let mut e = vec![0u32; i];
                    e.extend_from_slice(tail.exponents());
                    Monomial::from_exponents(e)
                })
                .collect();
            MonomialIdeal::from_gens(ring, gens)
        })
        .collect();
    if members.iter().all(MonomialIdeal::is_zero) {
        let mut members = members;
        members[n - 1] = MonomialIdeal::from_gens(ring, vec![Monomial::var(n, n - 1)]);
        return members;
    }
    members
}
