//! `dgolod`: d-operators, Koszul cycles, Golod certificates and Poincaré
//! series from the command line.

mod commands;
mod fixtures;
mod report;
mod suite;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use dgolod::field::Field;
use dgolod::Error;

use report::{error_kind, exit_code_for, ErrorInfo, Outcome, Report, EXIT_USAGE, SCHEMA_VERSION};

#[derive(Parser, Debug)]
#[command(name = "dgolod", version, about = "d-operator calculus, Koszul cycles and d_sigma-Golod checks")]
pub struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Coefficient field override: Q or F<p>.
    #[arg(long, global = true, env = "DGOLOD_FIELD")]
    pub field: Option<String>,
    /// Worker threads.
    #[arg(long, global = true, env = "DGOLOD_THREADS")]
    pub threads: Option<usize>,
    /// Leave the timings object of the report empty.
    #[arg(long, global = true)]
    pub no_timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    D,
    DSigma,
    Strong,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum What {
    Chain,
    Basis,
    ZeroMap,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Op {
    Power,
    Symbolic,
    Saturate,
    Colon,
    Intersect,
    Closure,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generators of d_sigma(I).
    DIdeal {
        file: PathBuf,
        /// Images sigma(1),...,sigma(n), or `reverse`.
        #[arg(long)]
        perm: Option<String>,
    },
    /// Decide d-Golod, d_sigma-Golod or strongly d-Golod.
    Check {
        file: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        perm: Option<String>,
    },
    /// Betti numbers of S/I from the minimal resolution (monomial ideals).
    Betti {
        file: PathBuf,
        /// Also print the resolution in the complex file format.
        #[arg(long)]
        complex: bool,
    },
    /// The cycles z_ij built from the minimal resolution.
    KoszulCycles {
        file: PathBuf,
        /// Only this homological degree.
        #[arg(long)]
        i: Option<usize>,
        #[arg(long)]
        perm: Option<String>,
    },
    /// Lifting identities, the homology basis, or the zero map.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum)]
        what: What,
        #[arg(long)]
        perm: Option<String>,
        /// A resolution in the complex file format instead of the computed one.
        #[arg(long)]
        complex: Option<PathBuf>,
    },
    /// Truncated Poincaré series of the residue field of S/I.
    Poincare {
        file: PathBuf,
        #[arg(long, default_value_t = 8)]
        trunc: usize,
        /// Also print the Serre bound.
        #[arg(long)]
        serre: bool,
        /// Compare with the Serre bound; exit 1 if they differ.
        #[arg(long)]
        golod_eq: bool,
        #[arg(long)]
        hmax: Option<usize>,
        /// Internal-degree bound for every step.
        #[arg(long)]
        degree_bound: Option<u32>,
        /// Give up (exit 4) when a free module needs more generators.
        #[arg(long, default_value_t = 50_000)]
        max_generators: usize,
    },
    /// Monomial ideal operations.
    Ops {
        file: PathBuf,
        #[arg(long, value_enum)]
        op: Op,
        #[arg(long)]
        k: Option<u32>,
        /// Second operand (defaults to the maximal ideal for saturate and colon).
        #[arg(long)]
        with: Option<PathBuf>,
    },
    /// Built-in example ideals: paper-d-example, stretched:N,S,art|nonart,
    /// sum-family:N,K.
    Fixtures {
        #[arg(long)]
        name: String,
    },
    /// Seeded randomized property suite.
    Suite {
        /// Instances per property.
        #[arg(long, default_value_t = 40)]
        count: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::DIdeal { .. } => "d-ideal",
            Command::Check { .. } => "check",
            Command::Betti { .. } => "betti",
            Command::KoszulCycles { .. } => "koszul-cycles",
            Command::Verify { .. } => "verify",
            Command::Poincare { .. } => "poincare",
            Command::Ops { .. } => "ops",
            Command::Fixtures { .. } => "fixtures",
            Command::Suite { .. } => "suite",
        }
    }
}

pub fn parse_field(s: &str) -> dgolod::Result<Field> {
    let s = s.trim();
    if s == "Q" {
        return Ok(Field::Rationals);
    }
    let p = s
        .strip_prefix('F')
        .and_then(|d| d.parse::<u64>().ok())
        .ok_or_else(|| Error::InvalidField(format!("`{s}` (expected Q or F<prime>)")))?;
    Field::prime(p)
}

fn run(cli: &Cli) -> dgolod::Result<Outcome> {
    let field = cli.field.as_deref().map(parse_field).transpose()?;
    let ctx = commands::Context {
        field,
        seed: cli.seed,
    };
    match &cli.command {
        Command::DIdeal { file, perm } => commands::d_ideal(&ctx, file, perm.as_deref()),
        Command::Check { file, mode, perm } => commands::check(&ctx, file, *mode, perm.as_deref()),
        Command::Betti { file, complex } => commands::betti(&ctx, file, *complex),
        Command::KoszulCycles { file, i, perm } => commands::koszul_cycles(&ctx, file, *i, perm.as_deref()),
        Command::Verify {
            file,
            what,
            perm,
            complex,
        } => commands::verify(&ctx, file, *what, perm.as_deref(), complex.as_deref()),
        Command::Poincare {
            file,
            trunc,
            serre,
            golod_eq,
            hmax,
            degree_bound,
            max_generators,
        } => commands::poincare(
            &ctx,
            file,
            commands::PoincareArgs {
                trunc: *trunc,
                serre: *serre,
                golod_eq: *golod_eq,
                hmax: *hmax,
                degree_bound: *degree_bound,
                max_generators: *max_generators,
            },
        ),
        Command::Ops { file, op, k, with } => commands::ops(&ctx, file, *op, *k, with.as_deref()),
        Command::Fixtures { name } => fixtures::run(&ctx, name),
        Command::Suite { count } => suite::run(&ctx, *count),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(t) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global();
    }
    let start = Instant::now();
    let result = run(&cli);
    let elapsed = start.elapsed().as_secs_f64() * 1e3;
    let mut timings = BTreeMap::new();
    if !cli.no_timings {
        timings.insert("total_ms".to_string(), (elapsed * 1e3).round() / 1e3);
    }
    let (outcome, error) = match result {
        Ok(o) => (o, None),
        Err(e) => {
            let code = exit_code_for(&e);
            (
                Outcome {
                    exit: code,
                    ..Outcome::default()
                },
                Some(e),
            )
        }
    };
    let code = outcome.exit_code();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    if cli.json {
        let report = Report {
            schema_version: SCHEMA_VERSION,
            tool: "dgolod",
            version: env!("CARGO_PKG_VERSION"),
            command: cli.command.name().to_string(),
            inputs: outcome.inputs,
            results: outcome.results,
            checks: outcome.checks,
            timings,
            seed: cli.seed,
            exit_code: code,
            error: error.as_ref().map(|e| ErrorInfo {
                kind: error_kind(e).to_string(),
                message: e.to_string(),
            }),
        };
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        let _ = write!(out, "{}", outcome.text);
    }
    if let Some(e) = error {
        eprintln!("error: {e}");
    }
    ExitCode::from(code)
}
