//! One function per subcommand; each returns an [`Outcome`].

use std::fmt::Write as _;
use std::path::Path;

use dgolod::dcalc::{self, Permutation};
use dgolod::field::Field;
use dgolod::golod::{
    check_d_sigma_golod, check_strongly_d_golod_general, find_golod_permutation, Evidence,
    GolodCertificate, SigmaChoice,
};
use dgolod::groebner::{GroebnerConfig, IdealGens};
use dgolod::koszul::{build_chain, build_cycle, format_cycles, verify_basis, verify_zero_map};
use dgolod::monomial::{integral_closure, symbolic_power, MonomialIdeal};
use dgolod::parse::{format_ideal_file, format_ring, parse_ideal_file_with, parse_perm, IdealFile};
use dgolod::poincare::{
    golod_equality, hilbert_series, poincare_k_with, ring_profile, serre_bound, betti_of,
    PoincareOptions,
};
use dgolod::poly::Polynomial;
use dgolod::resolution::{format_complex, minimal_resolution, parse_complex, validate_complex, FreeComplex};
use dgolod::ring::{Monomial, Ring};
use dgolod::{Error, Result};
use serde_json::{json, Value};

use crate::report::{is_check_failure, Check, Outcome, EXIT_FALSE, EXIT_OK};
use crate::{Mode, Op, What};

pub struct Context {
    pub field: Option<Field>,
    pub seed: u64,
}

pub fn read_text(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
            .map_err(|e| Error::Precondition(format!("reading standard input: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path)
        .map_err(|e| Error::Precondition(format!("reading {}: {e}", path.display())))
}

pub fn load(ctx: &Context, path: &Path) -> Result<IdealFile> {
    parse_ideal_file_with(&read_text(path)?, ctx.field)
}

pub fn strings(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(ToString::to_string).collect()
}

pub fn mono(ring: &Ring, m: &Monomial) -> String {
    m.display_with(ring.var_names())
}

pub fn ideal_text(ps: &[Polynomial]) -> String {
    format!("({})", strings(ps).join(", "))
}

pub fn ideal_json(file: &IdealFile) -> Value {
    json!({
        "ring": format_ring(&file.ring),
        "generators": strings(file.ideal.gens()),
        "order": file.order.map(|o| o.to_string()),
        "perm": file.perm.as_ref().map(ToString::to_string),
    })
}

fn config_for(file: &IdealFile) -> GroebnerConfig {
    let mut cfg = GroebnerConfig::default();
    if let Some(o) = file.order {
        cfg.order = o;
    }
    cfg
}

fn perm_for(file: &IdealFile, given: Option<&str>) -> Result<Permutation> {
    let n = file.ring.nvars();
    match given {
        Some(s) => parse_perm(s, n),
        None => Ok(file.perm.clone().unwrap_or_else(|| Permutation::identity(n))),
    }
}

fn monomial_of(file: &IdealFile, what: &str) -> Result<MonomialIdeal> {
    file.ideal
        .to_monomial_ideal()
        .ok_or_else(|| Error::Unsupported(format!("{what} needs a monomial ideal")))
}

pub fn d_ideal_cmd_text(sigma: &Permutation, d: &[Polynomial]) -> String {
    let name = if sigma.is_identity() { "d(I)".to_string() } else { format!("d_sigma(I), sigma = {sigma}") };
    format!("{name}: {}\n", ideal_text(d))
}

pub fn d_ideal(ctx: &Context, path: &Path, perm: Option<&str>) -> Result<Outcome> {
    let file = load(ctx, path)?;
    let sigma = perm_for(&file, perm)?;
    let d = dcalc::d_ideal(&file.ideal, &sigma)?;
    Ok(Outcome {
        inputs: json!({ "file": path.display().to_string(), "ideal": ideal_json(&file), "sigma": sigma.to_string() }),
        results: json!({ "sigma": sigma.to_string(), "d_generators": strings(&d) }),
        text: d_ideal_cmd_text(&sigma, &d),
        ..Outcome::default()
    })
}

pub fn evidence_json(ring: &Ring, ev: &Evidence) -> Value {
    match ev {
        Evidence::Contained { products } => json!({ "kind": "contained", "products": products }),
        Evidence::Product {
            sigma,
            left,
            right,
            product,
            normal_form,
        } => json!({
            "kind": "product",
            "sigma": sigma.to_string(),
            "left": left.to_string(),
            "right": right.to_string(),
            "product": product.to_string(),
            "normal_form": normal_form.to_string(),
        }),
        Evidence::Criterion {
            u,
            v,
            i,
            j,
            quotient,
            sigma,
        } => json!({
            "kind": "criterion",
            "u": mono(ring, u),
            "v": mono(ring, v),
            "i": i + 1,
            "j": j + 1,
            "witness": mono(ring, quotient),
            "sigma": sigma.as_ref().map(ToString::to_string),
        }),
        Evidence::AllPermutations { count } => json!({ "kind": "all_permutations", "count": count }),
    }
}

pub fn evidence_text(ring: &Ring, ev: &Evidence) -> String {
    let names = ring.var_names();
    match ev {
        Evidence::Contained { products } => format!("all {products} products of generators lie in I"),
        Evidence::Product {
            left,
            right,
            product,
            normal_form,
            ..
        } => format!("witness: ({left})*({right}) = {product} not in I (normal form {normal_form})"),
        Evidence::Criterion {
            u,
            v,
            i,
            j,
            quotient,
            sigma,
        } => {
            let mut s = format!(
                "witness: {} not in I (u = {}, v = {}, divided by {}*{})",
                mono(ring, quotient),
                mono(ring, u),
                mono(ring, v),
                names[*i],
                names[*j]
            );
            if let Some(p) = sigma {
                let _ = write!(s, "; fails for sigma = {p}");
            }
            s
        }
        Evidence::AllPermutations { count } => format!("holds for all {count} permutations"),
    }
}

pub fn certificate_json(c: &GolodCertificate) -> Value {
    json!({
        "sigma": match &c.sigma {
            SigmaChoice::One(p) => p.to_string(),
            SigmaChoice::All => "all".to_string(),
        },
        "holds": c.holds,
        "d_generators": strings(&c.d_gens),
        "evidence": evidence_json(&c.ring, &c.evidence),
        "notes": c.notes,
    })
}

pub fn check(ctx: &Context, path: &Path, mode: Mode, perm: Option<&str>) -> Result<Outcome> {
    let file = load(ctx, path)?;
    let cfg = config_for(&file);
    let n = file.ring.nvars();
    let cert = match mode {
        Mode::D => check_d_sigma_golod(&file.ideal, &Permutation::identity(n), &cfg)?,
        Mode::DSigma => match perm.map(|s| parse_perm(s, n)).transpose()?.or(file.perm.clone()) {
            Some(sigma) => check_d_sigma_golod(&file.ideal, &sigma, &cfg)?,
            None => find_golod_permutation(&file.ideal, &cfg)?,
        },
        Mode::Strong => check_strongly_d_golod_general(&file.ideal, &cfg)?,
    };
    let mode_name = match mode {
        Mode::D => "d",
        Mode::DSigma => "d-sigma",
        Mode::Strong => "strong",
    };
    let mut text = format!("mode: {mode_name}\n");
    if let SigmaChoice::One(p) = &cert.sigma {
        let _ = writeln!(text, "sigma: {p}");
        let _ = writeln!(text, "d_sigma(I) = {}", ideal_text(&cert.d_gens));
    }
    let _ = writeln!(text, "holds: {}", cert.holds);
    let _ = writeln!(text, "{}", evidence_text(&file.ring, &cert.evidence));
    for note in &cert.notes {
        let _ = writeln!(text, "note: {note}");
    }
    let check = Check::new(
        format!("{mode_name}-golod"),
        cert.holds,
        evidence_text(&file.ring, &cert.evidence),
    );
    Ok(Outcome {
        inputs: json!({ "file": path.display().to_string(), "ideal": ideal_json(&file), "mode": mode_name }),
        results: certificate_json(&cert),
        checks: vec![check],
        text,
        ..Outcome::default()
    })
}

fn graded_betti(c: &FreeComplex) -> Vec<Vec<u32>> {
    c.degrees().unwrap_or_default()
}

pub fn betti(ctx: &Context, path: &Path, dump: bool) -> Result<Outcome> {
    let file = load(ctx, path)?;
    let m = monomial_of(&file, "betti")?;
    let c = minimal_resolution(&m)?;
    let betti = c.ranks().to_vec();
    let degrees = graded_betti(&c);
    let mut text = format!(
        "betti: {}\n",
        betti.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
    );
    for (i, ds) in degrees.iter().enumerate().skip(1) {
        let _ = writeln!(
            text,
            "F_{i}: {}",
            ds.iter().map(|d| format!("S(-{d})")).collect::<Vec<_>>().join(" + ")
        );
    }
    let complex = format_complex(&c);
    if dump {
        text.push_str(&complex);
    }
    Ok(Outcome {
        inputs: json!({ "file": path.display().to_string(), "ideal": ideal_json(&file) }),
        results: json!({
            "betti": betti,
            "total": betti.iter().sum::<usize>(),
            "generator_degrees": degrees,
            "complex": dump.then_some(complex),
        }),
        text,
        ..Outcome::default()
    })
}

fn resolution_for(ctx: &Context, file: &IdealFile, complex: Option<&Path>) -> Result<FreeComplex> {
    match complex {
        Some(p) => parse_complex(&file.ring, &read_text(p)?),
        None => {
            let _ = ctx;
            minimal_resolution(&monomial_of(file, "computing a resolution")?)
        }
    }
}

pub fn koszul_cycles(ctx: &Context, path: &Path, only: Option<usize>, perm: Option<&str>) -> Result<Outcome> {
    let file = load(ctx, path)?;
    let sigma = perm_for(&file, perm)?;
    let c = resolution_for(ctx, &file, None)?;
    let degrees: Vec<usize> = match only {
        Some(i) if i == 0 || i > c.length() => {
            return Err(Error::Precondition(format!(
                "homological degree {i} outside 1..={}",
                c.length()
            )))
        }
        Some(i) => vec![i],
        None => (1..=c.length()).collect(),
    };
    let mut cycles = Vec::new();
    for i in degrees {
        for j in 0..c.ranks()[i] {
            cycles.push((i, j, build_cycle(&c, i, j, &sigma)?));
        }
    }
    let list: Vec<Value> = cycles
        .iter()
        .map(|(i, j, z)| json!({ "i": i, "j": j + 1, "cycle": z.display() }))
        .collect();
    Ok(Outcome {
        inputs: json!({
            "file": path.display().to_string(),
            "ideal": ideal_json(&file),
            "sigma": sigma.to_string(),
            "i": only,
        }),
        results: json!({ "betti": c.ranks(), "cycles": list }),
        text: format_cycles(&cycles),
        ..Outcome::default()
    })
}

fn check_from(name: String, r: Result<String>) -> Result<Check> {
    match r {
        Ok(details) => Ok(Check::new(name, true, details)),
        Err(e) if is_check_failure(&e) => Ok(Check::new(name, false, e.to_string())),
        Err(e) => Err(e),
    }
}

pub fn verify(
    ctx: &Context,
    path: &Path,
    what: What,
    perm: Option<&str>,
    complex: Option<&Path>,
) -> Result<Outcome> {
    let file = load(ctx, path)?;
    let cfg = config_for(&file);
    let sigma = perm_for(&file, perm)?;
    let mut checks = Vec::new();
    let mut results = json!({});
    let supplied = complex.map(|p| parse_complex(&file.ring, &read_text(p)?)).transpose()?;
    if let Some(c) = &supplied {
        let v = validate_complex(c, file.ideal.gens(), &cfg)?;
        checks.push(Check::new(
            "supplied-resolution-valid",
            v.passed(),
            v.first_failure.clone().unwrap_or_else(|| "d^2 = 0, cokernel S/I, exact, minimal".into()),
        ));
        if !v.passed() {
            return Ok(finish_verify(path, &file, what, &sigma, checks, results));
        }
    }
    match what {
        What::Chain => {
            let c = match supplied {
                Some(c) => c,
                None => resolution_for(ctx, &file, None)?,
            };
            let mut count = 0;
            for i in 1..=c.length() {
                for j in 0..c.ranks()[i] {
                    count += 1;
                    checks.push(check_from(
                        format!("lifting-identities[{i}][{}]", j + 1),
                        build_chain(&c, i, j, &sigma).map(|ch| {
                            format!("{} lifting identities hold over S; total cycle verified", ch.i)
                        }),
                    )?);
                }
            }
            results = json!({ "chains": count, "betti": c.ranks() });
        }
        What::Basis => {
            if supplied.is_some() {
                return Err(Error::Unsupported(
                    "basis verification uses the computed minimal resolution".into(),
                ));
            }
            let m = monomial_of(&file, "basis verification")?;
            match verify_basis(&m) {
                Ok(rep) => {
                    for c in &rep.checks {
                        checks.push(Check::new(
                            format!("homology-basis[{}]", c.i),
                            c.cycles && c.independent && c.betti == c.homology_dim,
                            format!("b_{} = {} = dim H_{}", c.i, c.betti, c.i),
                        ));
                    }
                    results = json!({ "betti": rep.resolution.ranks() });
                }
                Err(e) if is_check_failure(&e) => {
                    checks.push(Check::new("homology-basis", false, e.to_string()));
                }
                Err(e) => return Err(e),
            }
        }
        What::ZeroMap => match verify_zero_map(&file.ideal, &sigma, supplied.as_ref(), &cfg) {
            Ok(rep) => {
                checks.push(Check::new(
                    "zero-map",
                    true,
                    format!(
                        "{} coefficients lie in d_sigma(I) = {}",
                        rep.coefficients.len(),
                        ideal_text(&rep.d_gens)
                    ),
                ));
                results = json!({
                    "d_generators": strings(&rep.d_gens),
                    "coefficients": rep.coefficients.iter().map(|c| json!({
                        "i": c.i,
                        "j": c.j + 1,
                        "wedge": c.wedge.iter().map(|r| r + 1).collect::<Vec<_>>(),
                        "coefficient": c.coeff.to_string(),
                        "member": c.member,
                    })).collect::<Vec<_>>(),
                });
            }
            Err(e) if is_check_failure(&e) => checks.push(Check::new("zero-map", false, e.to_string())),
            Err(e) => return Err(e),
        },
    }
    Ok(finish_verify(path, &file, what, &sigma, checks, results))
}

fn finish_verify(
    path: &Path,
    file: &IdealFile,
    what: What,
    sigma: &Permutation,
    checks: Vec<Check>,
    results: Value,
) -> Outcome {
    let what_name = match what {
        What::Chain => "chain",
        What::Basis => "basis",
        What::ZeroMap => "zero-map",
    };
    let mut text = String::new();
    for c in &checks {
        let _ = writeln!(text, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.details);
    }
    Outcome {
        inputs: json!({
            "file": path.display().to_string(),
            "ideal": ideal_json(file),
            "what": what_name,
            "sigma": sigma.to_string(),
        }),
        results,
        checks,
        text,
        ..Outcome::default()
    }
}

pub struct PoincareArgs {
    pub trunc: usize,
    pub serre: bool,
    pub golod_eq: bool,
    pub hmax: Option<usize>,
    pub degree_bound: Option<u32>,
    pub max_generators: usize,
}

pub fn poincare(ctx: &Context, path: &Path, args: PoincareArgs) -> Result<Outcome> {
    let PoincareArgs {
        trunc,
        serre,
        golod_eq,
        hmax,
        degree_bound,
        max_generators,
    } = args;
    let file = load(ctx, path)?;
    let cfg = config_for(&file);
    let opts = PoincareOptions {
        hmax: hmax.unwrap_or(usize::MAX),
        degree_bound,
        max_generators,
    };
    eprintln!("resolving the residue field to homological degree {}", trunc.min(opts.hmax));
    let comp = poincare_k_with(&file.ideal, trunc, &opts, &cfg)?;
    let mut text = format!("P(t) = {}\n", comp.series);
    if comp.stopped_by_limit {
        let _ = writeln!(text, "stopped by the generator limit after degree {}", comp.achieved);
    }
    if comp.truncated {
        let _ = writeln!(text, "internal degrees capped at {:?}", degree_bound);
    }
    let mut results = json!({
        "series": comp.series,
        "series_text": comp.series.to_string(),
        "achieved": comp.achieved,
        "degree_bounds": comp.degree_bounds,
        "truncated": comp.truncated,
        "stopped_by_limit": comp.stopped_by_limit,
        "artinian": comp.artinian,
    });
    if let Some(m) = file.ideal.to_monomial_ideal() {
        results["hilbert"] = json!(hilbert_series(&m, trunc));
    }
    if let Ok(p) = ring_profile(&file.ideal, &cfg) {
        let _ = writeln!(
            text,
            "profile: n = {}, artinian = {}, tau = {}, s = {}, stretched = {}{}",
            p.n,
            p.artinian,
            p.tau,
            p.s.map_or("-".into(), |s| s.to_string()),
            p.stretched,
            if p.degenerate { " (m^2 = 0)" } else { "" }
        );
        results["profile"] = json!(p);
    }
    let mut checks = Vec::new();
    let mut exit = EXIT_OK;
    if serre || golod_eq {
        let betti = betti_of(&file.ideal, &cfg)?;
        let bound = serre_bound(&betti, file.ring.nvars(), trunc);
        let _ = writeln!(text, "Serre bound = {bound}");
        results["betti"] = json!(betti);
        results["serre"] = json!(bound);
        checks.push(Check::new(
            "serre-inequality",
            comp.series.leq(&bound),
            "coefficientwise P(t) <= Serre bound",
        ));
    }
    if golod_eq {
        let eq = golod_equality(&file.ideal, trunc, &cfg)?;
        let _ = writeln!(text, "{}", eq.label);
        if !eq.equal_up_to_n {
            exit = EXIT_FALSE;
        }
        checks.push(Check::new("golod-equality", eq.equal_up_to_n, eq.label.clone()));
        results["golod_equality"] = json!(eq);
    }
    if comp.stopped_by_limit {
        exit = crate::report::EXIT_RESOURCE;
    }
    Ok(Outcome {
        inputs: json!({
            "file": path.display().to_string(),
            "ideal": ideal_json(&file),
            "trunc": trunc,
            "hmax": hmax,
            "degree_bound": degree_bound,
        }),
        results,
        checks,
        text,
        exit,
    })
}

pub fn ops(ctx: &Context, path: &Path, op: Op, k: Option<u32>, with: Option<&Path>) -> Result<Outcome> {
    let file = load(ctx, path)?;
    let a = monomial_of(&file, "ops")?;
    let other = match with {
        Some(p) => {
            let f2 = load(ctx, p)?;
            if f2.ring.var_names() != file.ring.var_names() {
                return Err(Error::RingMismatch);
            }
            let m = monomial_of(&f2, "ops")?;
            Some(MonomialIdeal::from_gens(&file.ring, m.gens().to_vec()))
        }
        None => None,
    };
    let need_other = |name: &str| {
        other
            .clone()
            .ok_or_else(|| Error::Precondition(format!("--op {name} needs --with FILE")))
    };
    let k = k.unwrap_or(2);
    let mut extra = json!({});
    let (name, out) = match op {
        Op::Power => ("power", a.power(k)?),
        Op::Symbolic => ("symbolic", symbolic_power(&a, k)?),
        Op::Saturate => {
            let b = other.clone().unwrap_or_else(|| MonomialIdeal::maximal(&file.ring));
            let (s, t0) = a.saturate(&b);
            extra = json!({ "stabilized_at": t0 });
            ("saturate", s)
        }
        Op::Colon => {
            let b = other.clone().unwrap_or_else(|| MonomialIdeal::maximal(&file.ring));
            ("colon", a.colon(&b))
        }
        Op::Intersect => ("intersect", a.intersect(&need_other("intersect")?)),
        Op::Closure => ("closure", integral_closure(&a)?),
    };
    let gens = out.gens_as_polys();
    let text = if gens.is_empty() {
        format!("{}\n# zero ideal\n", format_ring(&file.ring))
    } else {
        format_ideal_file(&IdealFile {
            ring: file.ring.clone(),
            ideal: IdealGens::new(&file.ring, gens.clone())?,
            order: None,
            perm: None,
        })
    };
    Ok(Outcome {
        inputs: json!({
            "file": path.display().to_string(),
            "ideal": ideal_json(&file),
            "op": name,
            "k": k,
            "with": with.map(|p| p.display().to_string()),
        }),
        results: json!({ "generators": strings(&gens), "details": extra }),
        text,
        ..Outcome::default()
    })
}
