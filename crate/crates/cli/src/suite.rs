//! Seeded randomized property suite. Each property draws its instances
//! from its own stream derived from the seed, so reports are reproducible.

use dgolod::dcalc::d_op;
use dgolod::field::Field;
use dgolod::golod::check_strongly_d_golod;
use dgolod::groebner::GroebnerConfig;
use dgolod::koszul::{build_chain, verify_basis, verify_zero_map};
use dgolod::poincare::golod_equality;
use dgolod::poly::Polynomial;
use dgolod::random::{monomial_ideal, permutation, polynomial, seeded, SeededRng};
use dgolod::resolution::minimal_resolution;
use dgolod::ring::{PolyRing, Ring};
use dgolod::Result;
use rand::Rng;
use serde_json::json;

use crate::commands::Context;
use crate::report::{Check, Outcome};

fn stream(seed: u64, k: u64) -> SeededRng {
    seeded(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(k))
}

fn in_max_ideal(rng: &mut SeededRng, ring: &Ring) -> Polynomial {
    let f = polynomial(rng, ring, 4, 4, 5);
    let c = Polynomial::constant(ring, f.constant_term());
    &f - &c
}

/// `d^r(fg) = d^r(f)d^r(g)x_r + Σ_{i>r} (d^r(f)d^i(g) + d^r(g)d^i(f)) x_i`.
fn product_rule_holds(f: &Polynomial, g: &Polynomial, r: usize) -> Result<bool> {
    let ring = f.ring();
    let n = ring.nvars();
    let df: Vec<Polynomial> = (0..n).map(|i| d_op(f, i)).collect::<Result<_>>()?;
    let dg: Vec<Polynomial> = (0..n).map(|i| d_op(g, i)).collect::<Result<_>>()?;
    let mut rhs = &(&df[r] * &dg[r]) * &Polynomial::var(ring, r);
    for i in r + 1..n {
        let t = &(&df[r] * &dg[i]) + &(&dg[r] * &df[i]);
        rhs = &rhs + &(&t * &Polynomial::var(ring, i));
    }
    Ok(d_op(&(f * g), r)? == rhs)
}

fn reconstruction_holds(f: &Polynomial) -> Result<bool> {
    let ring = f.ring();
    let mut sum = Polynomial::zero(ring);
    for r in 0..ring.nvars() {
        sum = &sum + &(&d_op(f, r)? * &Polynomial::var(ring, r));
    }
    Ok(&sum == f)
}

pub fn run(ctx: &Context, count: usize) -> Result<Outcome> {
    let cfg = GroebnerConfig::default();
    let mut checks = Vec::new();
    let fields = [ctx.field.unwrap_or(Field::Rationals), Field::prime(32003)?];

    eprintln!("suite: product rule and reconstruction");
    let mut rng = stream(ctx.seed, 1);
    let mut bad = 0;
    for k in 0..count {
        let field = fields[k % 2];
        let ring = PolyRing::standard(field, rng.gen_range(1..=4))?;
        let f = in_max_ideal(&mut rng, &ring);
        let g = in_max_ideal(&mut rng, &ring);
        let r = rng.gen_range(0..ring.nvars());
        if !product_rule_holds(&f, &g, r)? || !reconstruction_holds(&f)? {
            bad += 1;
        }
    }
    checks.push(Check::new("product-rule", bad == 0, format!("{} of {count} instances failed", bad)));

    eprintln!("suite: cycles, lifting identities and zero maps");
    let mut rng = stream(ctx.seed, 2);
    let (mut cycles_ok, mut total) = (0, count.div_ceil(4));
    for _ in 0..total {
        let ring = PolyRing::standard(fields[0], rng.gen_range(2..=3))?;
        let ideal = monomial_ideal(&mut rng, &ring, 4, 3);
        let sigma = permutation(&mut rng, ring.nvars());
        let ok = verify_basis(&ideal).is_ok()
            && minimal_resolution(&ideal).is_ok_and(|c| {
                (1..=c.length()).all(|i| (0..c.ranks()[i]).all(|j| build_chain(&c, i, j, &sigma).is_ok()))
            })
            && ideal
                .to_gens()
                .and_then(|g| verify_zero_map(&g, &sigma, None, &cfg))
                .is_ok();
        cycles_ok += usize::from(ok);
    }
    checks.push(Check::new(
        "koszul-cycles",
        cycles_ok == total,
        format!("{cycles_ok} of {total} instances passed"),
    ));

    eprintln!("suite: strongly d-Golod criterion against all permutations");
    let mut rng = stream(ctx.seed, 3);
    let mut strong = 0;
    let mut agree = 0;
    for _ in 0..count {
        let ring = PolyRing::standard(fields[0], rng.gen_range(1..=4))?;
        let ideal = monomial_ideal(&mut rng, &ring, 4, 3);
        if let Ok(c) = check_strongly_d_golod(&ideal) {
            agree += 1;
            strong += usize::from(c.holds);
        }
    }
    checks.push(Check::new(
        "strong-criterion",
        agree == count,
        format!("{agree} of {count} agree ({strong} strongly d-Golod)"),
    ));

    eprintln!("suite: Serre inequality");
    let mut rng = stream(ctx.seed, 4);
    total = count.div_ceil(8);
    let mut leq = 0;
    for _ in 0..total {
        let ring = PolyRing::standard(fields[0], rng.gen_range(1..=3))?;
        let ideal = monomial_ideal(&mut rng, &ring, 3, 3).to_gens()?;
        if golod_equality(&ideal, 5, &cfg)?.leq_everywhere {
            leq += 1;
        }
    }
    checks.push(Check::new(
        "serre-inequality",
        leq == total,
        format!("{leq} of {total} instances below the bound to degree 5"),
    ));

    let text = checks
        .iter()
        .map(|c| format!("{} {}: {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.details))
        .collect();
    Ok(Outcome {
        inputs: json!({ "count": count, "seed": ctx.seed }),
        results: json!({
            "properties": checks.len(),
            "passed": checks.iter().filter(|c| c.passed).count(),
        }),
        checks,
        text,
        ..Outcome::default()
    })
}
