use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use nilcalc::catalog::{regenerate_table, verify_all, TableFormat};
use nilcalc::cohomology::{betti, consistency_report};
use nilcalc::complex::{
    deformation_kernel, hodge_numbers, is_abelian_structure, is_complex_lie_structure, moduli_bound, nijenhuis_vanishes,
    parse_j_file, zero_two_vanishes, AlmostComplexStructure, ExactStructure, JFile,
};
use nilcalc::fourdim::{gram_and_discriminant, normalize_lambda, verify_lambda, LambdaCase};
use nilcalc::search::{minimize, Outcome, SearchOptions, DEFAULT_DENBOUND, DEFAULT_RESTARTS, DEFAULT_TOL};
use nilcalc::symplectic::{exists_symplectic, moduli_dim_symplectic};
use nilcalc::{Error, LieAlgebraSpec, Rational, Scalar};
use serde_json::{json, Value};

const SCHEMA: u32 = 1;

/// Invariants of nilpotent Lie algebras given as tuples such as
/// "(0,0,0,0,13+42,14+23)".
///
/// Exit status: 0 on success, 1 when a check fails, 2 on usage or parse errors.
#[derive(Parser)]
#[command(name = "nilcalc", version)]
struct Cli {
    /// Print machine-readable JSON (schema 1) instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validity (d² = 0), nilpotency and step length.
    Check { tuple: String },
    /// Betti numbers, filtration dimensions and consistency identities.
    Invariants { tuple: String },
    /// Closed 2-forms and an exact symplectic witness when one exists.
    Symplectic { tuple: String },
    /// Almost-complex structures.
    #[command(subcommand)]
    Complex(ComplexCommand),
    /// Normal form of Λ(a,b,c) = ⟨e12+e34, e13-e24, a e14 - b e24 + c e23⟩ (a ≠ 0).
    Normalform4 {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(allow_hyphen_values = true)]
        c: String,
    },
    /// The catalog table of six-dimensional nilpotent Lie algebras.
    Table {
        /// Verify every row against recomputed invariants and stored witnesses.
        #[arg(long)]
        verify: bool,
        /// CSV output.
        #[arg(long)]
        csv: bool,
    },
}

#[derive(Subcommand)]
enum ComplexCommand {
    /// Integrability, structure type, Hodge numbers, moduli bound and deformation kernel.
    Verify {
        tuple: String,
        /// JSON file with a "matrix" or a "coframe" of exact entries.
        #[arg(long = "j")]
        j: PathBuf,
    },
    /// Numerical search for an integrable structure, verified exactly.
    /// Exits 1 when no witness is found, which is not a nonexistence proof.
    Search {
        tuple: String,
        #[command(flatten)]
        options: SearchArgs,
    },
}

#[derive(Args)]
struct SearchArgs {
    /// Seed of the restart streams.
    #[arg(long, env = "NILCALC_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_RESTARTS)]
    restarts: usize,
    /// Residual tolerance for convergence.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Largest denominator tried when rationalizing.
    #[arg(long, default_value_t = DEFAULT_DENBOUND)]
    denbound: u32,
}

struct Report {
    ok: bool,
    text: String,
    json: Value,
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::DimensionOutOfRange(_)
            | Error::IndexOutOfRange { .. }
            | Error::RepeatedIndex(_)
            | Error::DimensionMismatch { .. }
            | Error::OddDimension(_)
            | Error::ZeroLeading => Failure::Usage(e.to_string()),
            _ => Failure::Check(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Check { tuple } => check(tuple),
        Command::Invariants { tuple } => invariants(tuple),
        Command::Symplectic { tuple } => symplectic(tuple),
        Command::Complex(ComplexCommand::Verify { tuple, j }) => complex_verify(tuple, j),
        Command::Complex(ComplexCommand::Search { tuple, options }) => complex_search(tuple, options),
        Command::Normalform4 { a, b, c } => normalform4(a, b, c),
        Command::Table { verify, csv } => table(*verify, *csv),
    };
    let (code, text, mut value) = match result {
        Ok(r) => (if r.ok { 0 } else { 1 }, r.text, r.json),
        Err(Failure::Usage(message)) => (2, format!("error: {message}"), json!({ "error": message })),
        Err(Failure::Check(message)) => (1, format!("error: {message}"), json!({ "error": message })),
    };
    if cli.json {
        value["schema"] = json!(SCHEMA);
        println!("{}", serde_json::to_string_pretty(&value).expect("JSON values serialize"));
    } else if code == 2 {
        eprintln!("{text}");
    } else {
        print!("{text}");
        if !text.ends_with('\n') {
            println!();
        }
    }
    ExitCode::from(code)
}

fn parse(tuple: &str) -> Result<LieAlgebraSpec, Failure> {
    Ok(LieAlgebraSpec::parse(tuple)?)
}

fn check(tuple: &str) -> Result<Report, Failure> {
    let spec = parse(tuple)?;
    if !spec.is_lie_algebra() {
        return Ok(Report {
            ok: false,
            text: "not a Lie algebra".into(),
            json: json!({ "tuple": tuple, "lie_algebra": false, "nilpotent": null, "step": null }),
        });
    }
    let step = spec.filtration()?.step;
    let text = match step {
        Some(s) => format!("nilpotent Lie algebra {} of dimension {}, step {s}", spec.render(), spec.dim()),
        None => "Lie algebra, not nilpotent".into(),
    };
    Ok(Report {
        ok: step.is_some(),
        text,
        json: json!({ "tuple": spec.render(), "lie_algebra": true, "nilpotent": step.is_some(), "step": step }),
    })
}

fn invariants(tuple: &str) -> Result<Report, Failure> {
    let spec = parse(tuple)?;
    let b = betti(&spec)?;
    let filtration = spec.filtration()?;
    let consistency = if spec.dim() == 6 { Some(consistency_report(&spec)?) } else { None };
    let mut text = format!("b = {:?}\n", b.0);
    match filtration.step {
        Some(s) => writeln!(text, "s = {s}").unwrap(),
        None => writeln!(text, "not nilpotent").unwrap(),
    }
    writeln!(text, "dim V_i = {:?}", filtration.dims).unwrap();
    if let Some(c) = &consistency {
        writeln!(text, "b3 = 2(b2 - b1 + 1): {}", c.b3_formula).unwrap();
        writeln!(text, "b_i >= 2 for 1 <= i <= 5: {}", c.dixmier).unwrap();
        writeln!(text, "alternating sum vanishes: {}", c.euler).unwrap();
    }
    let ok = filtration.step.is_some() && consistency.as_ref().map_or(true, |c| c.passed());
    Ok(Report {
        ok,
        text,
        json: json!({
            "tuple": spec.render(),
            "betti": b.0,
            "step": filtration.step,
            "filtration_dims": filtration.dims,
            "consistency": consistency,
        }),
    })
}

fn symplectic(tuple: &str) -> Result<Report, Failure> {
    let spec = parse(tuple)?;
    let report = exists_symplectic(&spec)?;
    let dim = moduli_dim_symplectic(&spec)?;
    let text = match &report.witness {
        Some(w) => format!("symplectic: {w}\ndim S = {}\n", dim.unwrap_or_default()),
        None => format!(
            "no symplectic form: top power vanishes identically on {} closed 2-forms\n",
            nilcalc::symplectic::closed_two_forms(&spec)?.dim
        ),
    };
    Ok(Report {
        ok: true,
        text,
        json: json!({ "tuple": spec.render(), "report": report, "dim_s": dim }),
    })
}

fn complex_verify(tuple: &str, path: &PathBuf) -> Result<Report, Failure> {
    let spec = parse(tuple)?;
    let contents =
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    match parse_j_file(&contents)? {
        ExactStructure::Rational(j) => verify_structure(&spec, &j),
        ExactStructure::Surd(j) => verify_structure(&spec, &j),
    }
}

fn verify_structure<R: Scalar>(spec: &LieAlgebraSpec, j: &AlmostComplexStructure<R>) -> Result<Report, Failure> {
    if j.dim() != spec.dim() {
        return Err(Error::DimensionMismatch {
            expected: spec.dim(),
            found: j.dim(),
        }
        .into());
    }
    let nijenhuis = nijenhuis_vanishes(spec, j)?;
    let zero_two = zero_two_vanishes(spec, j)?;
    let mut text = format!("Nijenhuis tensor vanishes: {nijenhuis}\n(0,2) components vanish: {zero_two}\n");
    if !(nijenhuis && zero_two) {
        text.push_str("not integrable\n");
        return Ok(Report {
            ok: false,
            text,
            json: json!({ "tuple": spec.render(), "nijenhuis": nijenhuis, "zero_two": zero_two, "integrable": false }),
        });
    }
    let abelian = is_abelian_structure(spec, j)?;
    let complex_lie = is_complex_lie_structure(spec, j)?;
    let hodge = hodge_numbers(spec, j)?;
    let bound = moduli_bound(spec, j)?;
    let kernel = deformation_kernel(spec, j)?.summary();
    writeln!(text, "abelian: {abelian}\ncomplex Lie: {complex_lie}").unwrap();
    writeln!(text, "h^{{p,q}} (rows p, columns q):").unwrap();
    for row in &hodge.h {
        let cells: Vec<String> = row.iter().map(|h| format!("{h:>3}")).collect();
        writeln!(text, "{}", cells.join("")).unwrap();
    }
    writeln!(text, "moduli bound: {bound}\ndeformation kernel: {}", kernel.dim).unwrap();
    Ok(Report {
        ok: true,
        text,
        json: json!({
            "tuple": spec.render(),
            "nijenhuis": nijenhuis,
            "zero_two": zero_two,
            "integrable": true,
            "abelian": abelian,
            "complex_lie": complex_lie,
            "hodge": hodge,
            "moduli_bound": bound,
            "kernel": kernel,
        }),
    })
}

fn complex_search(tuple: &str, args: &SearchArgs) -> Result<Report, Failure> {
    let spec = parse(tuple)?;
    if args.restarts == 0 || !(args.tol > 0.0) || args.denbound == 0 {
        return Err(Failure::Usage("restarts, tol and denbound must be positive".into()));
    }
    let opts = SearchOptions {
        seed: args.seed,
        restarts: args.restarts,
        tol: args.tol,
        denbound: args.denbound,
    };
    let report = minimize(&spec, &opts)?;
    let witness = report.witness.as_ref().map(|w| JFile::from_coframe(&w.acs));
    let mut text = format!(
        "{} (seed {}, {} restarts, residual {:.3e})\n",
        report.label(),
        report.seed,
        report.restarts_used,
        report.final_residual
    );
    if let Some(w) = &witness {
        writeln!(text, "{}", w.to_json()).unwrap();
    }
    let witness_json: Option<Value> = witness.map(|w| serde_json::from_str(&w.to_json()).expect("J files are JSON"));
    Ok(Report {
        ok: report.outcome == Outcome::Witness,
        text,
        json: json!({
            "tuple": spec.render(),
            "outcome": report.outcome,
            "label": report.label(),
            "seed": report.seed,
            "restarts_used": report.restarts_used,
            "final_residual": report.final_residual,
            "witness": witness_json,
        }),
    })
}

fn normalform4(a: &str, b: &str, c: &str) -> Result<Report, Failure> {
    let parse = |s: &str| Rational::from_str(s).map_err(|_| Failure::Usage(format!("not a rational number: {s}")));
    let (a, b, c) = (parse(a)?, parse(b)?, parse(c)?);
    let gram = gram_and_discriminant(&a, &b, &c)?;
    let normal = normalize_lambda(&a, &b, &c)?;
    let verified = verify_lambda(&normal, &a, &b, &c)?;
    let case = match normal.case {
        LambdaCase::Minus => "minus",
        LambdaCase::Zero => "zero",
        LambdaCase::Plus => "plus",
    };
    let theta: Vec<Vec<String>> = normal.theta.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    let gram_rows: Vec<Vec<String>> = gram.gram.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    let mut text = format!(
        "discriminant b^2 - 4ac = {}\npositive definite: {}\ncase: {case}\nθ (column i holds f^i):\n",
        gram.discriminant, gram.positive_definite
    );
    for row in &theta {
        writeln!(text, "  [{}]", row.join(", ")).unwrap();
    }
    writeln!(text, "span verified: {verified}").unwrap();
    Ok(Report {
        ok: verified,
        text,
        json: json!({
            "a": a.to_string(),
            "b": b.to_string(),
            "c": c.to_string(),
            "gram": gram_rows,
            "discriminant": gram.discriminant.to_string(),
            "positive_definite": gram.positive_definite,
            "case": case,
            "theta": theta,
            "verified": verified,
        }),
    })
}

fn table(verify: bool, csv: bool) -> Result<Report, Failure> {
    if !verify {
        let format = if csv { TableFormat::Csv } else { TableFormat::Text };
        let text = regenerate_table(format)?;
        return Ok(Report {
            ok: true,
            json: json!({ "format": if csv { "csv" } else { "text" }, "table": text }),
            text,
        });
    }
    let reports = verify_all();
    let passed = reports.iter().filter(|r| r.passed()).count();
    let mut text = String::new();
    for r in &reports {
        let status = if r.passed() { "ok" } else { "FAIL" };
        let notes: Vec<String> = r
            .checks
            .iter()
            .filter(|c| !c.passed || c.detail.contains("erratum"))
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect();
        writeln!(text, "{status:<4} {:<24} {}", r.tuple, notes.join("; ")).unwrap();
    }
    writeln!(text, "{passed}/{} rows pass", reports.len()).unwrap();
    Ok(Report {
        ok: passed == reports.len(),
        text,
        json: json!({ "passed": passed, "total": reports.len(), "rows": reports }),
    })
}
