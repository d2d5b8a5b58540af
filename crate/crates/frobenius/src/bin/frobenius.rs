//! Command-line interface for the enhancement workbench.
//!
//! Exit codes: 0 = success / decided, 2 = undetermined, 1 = input error.

use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use frobenius::algebra::{Algebra, AlgebraMorphism};
use frobenius::check::check_enhancement_named;
use frobenius::cone::{build_lambda_sigma, cone_cohomology};
use frobenius::error::Error;
use frobenius::examples;
use frobenius::hochschild::{cohomology, CochainSpace, Coefficients};
use frobenius::linalg::Field;
use frobenius::module;
use frobenius::report::{exit_code, machine_report, text_report};
use frobenius::specfile::{parse_spec, ParsedSpec};

#[derive(Parser)]
#[command(name = "frobenius", version, about = "Enhanced triangulated structure workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Parse an algebra file and print a summary
    Build { file: String },
    /// Hochschild cohomology dimension at a bidegree
    Hh {
        file: String,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        q: i64,
        /// spec file whose automorphism lines provide Λ(σ) coefficients
        #[arg(long)]
        coefficients: Option<String>,
    },
    /// Minimal projective resolution of the regular (bi)module
    Resolve {
        file: String,
        #[arg(long)]
        length: usize,
        /// resolve Λ as a bimodule over Λ^e instead of as a right module
        #[arg(long)]
        bimodule: bool,
    },
    /// Decide whether an enhanced triangulated structure exists
    CheckEnhancement {
        file: String,
        #[arg(long, default_value_t = 200)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        output: OutputFormat,
    },
    /// Cohomology of the graded algebra Λ(σ) at a bidegree, via the cone
    LambdaSigma {
        file: String,
        #[arg(long)]
        sigma: String,
        #[arg(long)]
        p: usize,
        #[arg(long, allow_hyphen_values = true)]
        q: i64,
    },
    /// Check the cochain-level identity suite on random cochains
    VerifyIdentities {
        file: String,
        #[arg(long, default_value_t = 25)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Build a named example and print it in the algebra-file format
    Example {
        name: String,
        #[arg(long, num_args = 0.., value_delimiter = ',')]
        params: Vec<usize>,
        /// "Q" or a prime p
        #[arg(long, default_value = "3")]
        field: String,
    },
}

fn parse_field(s: &str) -> Result<Field, Error> {
    match s {
        "Q" | "q" => Ok(Field::Rational),
        p => p
            .parse::<u32>()
            .map(Field::Fp)
            .map_err(|_| Error::Unsupported(format!("bad field: {p}"))),
    }
}

fn load(file: &str) -> Result<ParsedSpec, Error> {
    let text = std::fs::read_to_string(file)?;
    parse_spec(&text)
}

fn load_sigma(algebra: &Algebra, file: &str) -> Result<AlgebraMorphism, Error> {
    let parsed = load(file)?;
    let sigma = parsed
        .automorphism
        .ok_or_else(|| Error::Unsupported(format!("{file} contains no automorphism lines")))?;
    if parsed.algebra.dim() != algebra.dim() || parsed.algebra.field() != algebra.field() {
        return Err(Error::Unsupported(
            "the automorphism file describes a different algebra".into(),
        ));
    }
    if !sigma.is_automorphism(algebra)? {
        return Err(Error::Unsupported(
            "the supplied map is not an automorphism of this algebra".into(),
        ));
    }
    Ok(sigma)
}

fn summarize(a: &Algebra) -> String {
    let field = match a.field() {
        Field::Fp(p) => format!("F{p}"),
        Field::Rational => "Q".into(),
    };
    let graded = if a.is_graded() { ", graded" } else { "" };
    format!(
        "algebra over {field}: dimension {}, {} idempotent(s), {} generator(s){graded}",
        a.dim(),
        a.idempotents().len(),
        a.generators().len(),
    )
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Build { file } => {
            let parsed = load(&file)?;
            println!("{}", summarize(&parsed.algebra));
            println!("basis: {}", parsed.algebra.labels().join(", "));
            println!(
                "self-injective: {}",
                parsed.algebra.is_selfinjective()?
            );
            if parsed.automorphism.is_some() {
                println!("automorphism: present and verified");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Hh { file, n, q, coefficients } => {
            let parsed = load(&file)?;
            let a = Arc::new(parsed.algebra);
            let coeff = match &coefficients {
                Some(path) => Coefficients::twisted(load_sigma(&a, path)?),
                None => Coefficients::SelfCoeff,
            };
            let h = cohomology(&a, coeff, n, q);
            println!("HH^{{{n},{q}}} dimension: {}", h.dim());
            println!("cochain space: {}", h.space.dim());
            println!("cocycles: {}", h.cocycles.dim());
            println!("coboundaries: {}", h.coboundaries.dim());
            Ok(ExitCode::SUCCESS)
        }
        Command::Resolve { file, length, bimodule } => {
            let parsed = load(&file)?;
            let a = Arc::new(parsed.algebra);
            let target = if bimodule {
                let env = Arc::new(a.enveloping_algebra());
                module::regular_bimodule(&env).module
            } else {
                module::RightModule::regular(&a)
            };
            let res = module::minimal_resolution(&target, length)?;
            println!("module dimension: {}", target.dim());
            for i in 0..length {
                println!(
                    "P{i}: dim {}   Ω^{}: dim {}",
                    res.covers[i].p0.dim(),
                    i + 1,
                    res.syzygy(i + 1).dim()
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckEnhancement { file, budget, seed, output } => {
            let parsed = load(&file)?;
            let report = check_enhancement_named(&parsed.algebra, &file, budget, seed)?;
            match output {
                OutputFormat::Text => print!("{}", text_report(&report, &parsed.algebra)),
                OutputFormat::Machine => print!("{}", machine_report(&report, &parsed.algebra)),
            }
            Ok(ExitCode::from(exit_code(&report) as u8))
        }
        Command::LambdaSigma { file, sigma, p, q } => {
            let parsed = load(&file)?;
            let a = Arc::new(parsed.algebra);
            let sigma = load_sigma(&a, &sigma)?;
            let ls = build_lambda_sigma(&a, sigma)?;
            let h = cone_cohomology(&ls, p, q);
            println!("HH^{{{p},{q}}}(Λ(σ)) dimension: {}", h.dim());
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyIdentities { file, trials, seed } => {
            let parsed = load(&file)?;
            let a = Arc::new(parsed.algebra);
            let failures = verify_identities(&a, trials, seed);
            if failures.is_empty() {
                println!("all identities hold on {trials} random cochains per arity");
                Ok(ExitCode::SUCCESS)
            } else {
                for f in &failures {
                    eprintln!("FAILED: {f}");
                }
                Ok(ExitCode::FAILURE)
            }
        }
        Command::Example { name, params, field } => {
            let field = parse_field(&field)?;
            let a = examples::build_named_example(&name, field, &params)?;
            println!("# {}", name);
            print!("{}", example_spec_text(&name, field, &params)?);
            eprintln!("{}", summarize(&a));
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Cochain-level identity suite on seeded random cochains.
fn verify_identities(a: &Arc<Algebra>, trials: usize, seed: u64) -> Vec<String> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let spaces: Vec<CochainSpace> = (0..=3)
        .map(|n| CochainSpace::new(a, Coefficients::SelfCoeff, n, 0))
        .collect();
    let field = a.field();
    for _ in 0..trials {
        for space in &spaces {
            let c = space.random(&mut rng);
            if !c.differential().differential().is_zero() {
                failures.push(format!("d² ≠ 0 at arity {}", space.arity));
            }
        }
        let x = spaces[1].random(&mut rng);
        let y = spaces[2].random(&mut rng);
        let z = spaces[1].random(&mut rng);
        if !x.cup(&y).cup(&z).equals(&x.cup(&y.cup(&z))) {
            failures.push("cup associativity".into());
        }
        // d′ Leibniz for the dot product
        let sgn = if x.total_degree().rem_euclid(2) == 1 {
            field.from_i64(-1)
        } else {
            field.one()
        };
        let lhs = x.dot(&y).d_prime();
        let rhs = x.d_prime().dot(&y).add(&x.dot(&y.d_prime()).scale(&sgn));
        if !lhs.equals(&rhs) {
            failures.push("d′ Leibniz".into());
        }
        // graded antisymmetry of the bracket
        let s = field.from_i64(
            if ((x.total_degree() - 1) * (z.total_degree() - 1)).rem_euclid(2) == 1 {
                1
            } else {
                -1
            },
        );
        if !x.bracket(&z).equals(&z.bracket(&x).scale(&s)) {
            failures.push("bracket antisymmetry".into());
        }
    }
    failures.sort();
    failures.dedup();
    failures
}

/// Emit the algebra-file text of a named example.
fn example_spec_text(name: &str, field: Field, params: &[usize]) -> Result<String, Error> {
    let field_line = match field {
        Field::Fp(p) => format!("field {p}"),
        Field::Rational => "field Q".into(),
    };
    let text = match name {
        "dual_numbers" => format!("{field_line}\nvertices v\narrow x v v\nbound 2\nrelation x*x\n"),
        "truncated_poly" => {
            let n = params[0];
            let word = vec!["x"; n].join("*");
            format!("{field_line}\nvertices v\narrow x v v\nbound {n}\nrelation {word}\n")
        }
        "nakayama" => {
            let (m, n) = (params[0], params[1]);
            let mut s = format!("{field_line}\nvertices ");
            s.push_str(&(0..m).map(|v| format!("v{v}")).collect::<Vec<_>>().join(" "));
            s.push('\n');
            for v in 0..m {
                s.push_str(&format!("arrow a{v} v{v} v{}\n", (v + 1) % m));
            }
            s.push_str(&format!("bound {}\n", n + 1));
            for v in 0..m {
                let word: Vec<String> = (0..=n).map(|k| format!("a{}", (v + k) % m)).collect();
                s.push_str(&format!("relation {}\n", word.join("*")));
            }
            s
        }
        "product_field" => {
            let n = params[0];
            let verts = (0..n).map(|v| format!("v{v}")).collect::<Vec<_>>().join(" ");
            format!("{field_line}\nvertices {verts}\nbound 0\n")
        }
        "d4_deformed_preprojective" => format!(
            "{field_line}\nvertices v0 v1 v2 v3\n\
             arrow a0 v0 v2\narrow b0 v2 v0\n\
             arrow a1 v1 v2\narrow b1 v2 v1\n\
             arrow a2 v2 v3\narrow b2 v3 v2\n\
             bound 8\n\
             relation a0*b0\nrelation a1*b1\nrelation b2*a2\n\
             relation b0*a0 + b1*a1 + a2*b2 + b0*a0*b1*a1\n\
             relation b1*a1*b0*a0 + b0*a0*b1*a1\n"
        ),
        other => return Err(Error::Unsupported(format!("unknown example: {other}"))),
    };
    Ok(text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
