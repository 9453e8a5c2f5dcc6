//! Built-in example ideals.

use std::fmt::Write as _;

use dgolod::dcalc::{d_op, Permutation};
use dgolod::field::Field;
use dgolod::golod::{check_d_sigma_golod, stretched_ideal, sum_family_ideal};
use dgolod::groebner::GroebnerConfig;
use dgolod::parse::{format_ideal_file, parse_poly, IdealFile};
use dgolod::poincare::ring_profile;
use dgolod::random::{seeded, sum_family_members};
use dgolod::ring::PolyRing;
use dgolod::{Error, Result};
use serde_json::json;

use crate::commands::{certificate_json, evidence_text, ideal_text, strings, Context};
use crate::report::{Check, Outcome};

const D_EXAMPLE: &str = "x1^2*x3 + x1*x2^3 + x2^2*x3^3 + x3^2*x4";
const D_EXAMPLE_VALUES: [&str; 4] = ["x2^3 + x1*x3", "x2*x3^3", "x3*x4", "0"];

fn numbers(spec: &str, what: &str) -> Result<Vec<String>> {
    let v: Vec<String> = spec.split(',').map(|s| s.trim().to_string()).collect();
    if v.iter().any(String::is_empty) {
        return Err(Error::Precondition(format!(
            "malformed fixture parameters for {what}: `{spec}`"
        )));
    }
    Ok(v)
}

fn int<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    s.parse()
        .map_err(|_| Error::Precondition(format!("`{s}` is not a valid {what}")))
}

pub fn run(ctx: &Context, name: &str) -> Result<Outcome> {
    let field = ctx.field.unwrap_or(Field::Rationals);
    if name == "paper-d-example" {
        return d_example(field);
    }
    if let Some(rest) = name.strip_prefix("stretched:") {
        let p = numbers(rest, "stretched")?;
        if p.len() != 3 {
            return Err(Error::Precondition("use stretched:N,S,art or stretched:N,S,nonart".into()));
        }
        let n: usize = int(&p[0], "variable count")?;
        let s: u32 = int(&p[1], "socle degree")?;
        let artinian = match p[2].as_str() {
            "art" => true,
            "nonart" => false,
            other => return Err(Error::Precondition(format!("expected art or nonart, got `{other}`"))),
        };
        return stretched(field, n, s, artinian);
    }
    if let Some(rest) = name.strip_prefix("sum-family:") {
        let p = numbers(rest, "sum-family")?;
        if p.len() != 2 {
            return Err(Error::Precondition("use sum-family:N,K".into()));
        }
        let n: usize = int(&p[0], "variable count")?;
        let k: u32 = int(&p[1], "power")?;
        return sum_family(field, n, k, ctx.seed);
    }
    Err(Error::Precondition(format!(
        "unknown fixture `{name}` (paper-d-example, stretched:N,S,art|nonart, sum-family:N,K)"
    )))
}

fn d_example(field: Field) -> Result<Outcome> {
    let ring = PolyRing::standard(field, 4)?;
    let f = parse_poly(&ring, D_EXAMPLE)?;
    let values = (0..4).map(|r| d_op(&f, r)).collect::<Result<Vec<_>>>()?;
    let mut text = format!("f = {f}\n");
    for (r, v) in values.iter().enumerate() {
        let _ = writeln!(text, "d^{}(f) = {v}", r + 1);
    }
    let got = strings(&values);
    let check = Check::new(
        "reconstruction",
        (0..4).fold(dgolod::poly::Polynomial::zero(&ring), |acc, r| {
            &acc + &(&values[r] * &dgolod::poly::Polynomial::var(&ring, r))
        }) == f,
        "sum of d^r(f) x_r equals f",
    );
    Ok(Outcome {
        inputs: json!({ "fixture": "paper-d-example", "field": field.to_string() }),
        results: json!({ "f": f.to_string(), "d": got, "expected": D_EXAMPLE_VALUES }),
        checks: vec![
            check,
            Check::new("listed-values", got == D_EXAMPLE_VALUES, "d^1..d^4 match the reference values"),
        ],
        text,
        ..Outcome::default()
    })
}

fn stretched(field: Field, n: usize, s: u32, artinian: bool) -> Result<Outcome> {
    let ring = PolyRing::standard(field, n)?;
    let ideal = stretched_ideal(&ring, s, artinian)?;
    let sigma = Permutation::last_first(n);
    let cfg = GroebnerConfig::default();
    let cert = check_d_sigma_golod(&ideal, &sigma, &cfg)?;
    let profile = ring_profile(&ideal, &cfg)?;
    let file = IdealFile {
        ring: ring.clone(),
        ideal,
        order: None,
        perm: Some(sigma.clone()),
    };
    let mut text = format_ideal_file(&file);
    let _ = writeln!(text, "# d_sigma(I) = {}", ideal_text(&cert.d_gens));
    let _ = writeln!(text, "# d_sigma-Golod: {}", cert.holds);
    let _ = writeln!(
        text,
        "# tau = {}, s = {}, stretched = {}",
        profile.tau,
        profile.s.map_or("-".into(), |s| s.to_string()),
        profile.stretched
    );
    let expected_tau = if artinian { n } else { n - 1 };
    Ok(Outcome {
        inputs: json!({ "fixture": format!("stretched:{n},{s},{}", if artinian { "art" } else { "nonart" }) }),
        results: json!({
            "generators": strings(file.ideal.gens()),
            "certificate": certificate_json(&cert),
            "profile": profile,
        }),
        checks: vec![
            Check::new("d_sigma-golod", cert.holds, evidence_text(&ring, &cert.evidence)),
            Check::new(
                "socle-dimension",
                profile.tau == expected_tau,
                format!("tau = {} (expected {expected_tau})", profile.tau),
            ),
        ],
        text,
        ..Outcome::default()
    })
}

fn sum_family(field: Field, n: usize, k: u32, seed: u64) -> Result<Outcome> {
    if n == 0 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    let ring = PolyRing::standard(field, n)?;
    let mut rng = seeded(seed);
    let members = sum_family_members(&mut rng, &ring, 2);
    let fam = sum_family_ideal(&members, k)?;
    let mut text = String::new();
    for (i, j) in members.iter().enumerate() {
        let _ = writeln!(text, "# J_{} = {}", i + 1, j.display());
    }
    let _ = writeln!(text, "# J = {}", fam.sum.display());
    let _ = writeln!(text, "# J^{k}: d-Golod {}", fam.certificate.holds);
    text.push_str(&format_ideal_file(&IdealFile {
        ring: ring.clone(),
        ideal: fam.power.to_gens()?,
        order: None,
        perm: None,
    }));
    Ok(Outcome {
        inputs: json!({ "fixture": format!("sum-family:{n},{k}"), "seed": seed }),
        results: json!({
            "members": members.iter().map(|j| j.display()).collect::<Vec<_>>(),
            "sum": fam.sum.display(),
            "power": strings(&fam.power.gens_as_polys()),
            "certificate": certificate_json(&fam.certificate),
        }),
        checks: vec![Check::new(
            "d-golod",
            fam.certificate.holds,
            evidence_text(&ring, &fam.certificate.evidence),
        )],
        text,
        ..Outcome::default()
    })
}
