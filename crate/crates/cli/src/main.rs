use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use nabext::algebra::Algebra;
use nabext::classifier::{census, CandidateSpace, EnumOptions, DEFAULT_BUDGET};
use nabext::cochain::{gerstenhaber_bracket, hochschild_delta};
use nabext::error::Error;
use nabext::extension::{
    canonical_section, check_extension_equivalence, cocycle_from_section, verify_extension,
    ExtensionPresentation,
};
use nabext::field::{Field, FieldSpec, PrimeField, Rationals};
use nabext::io;
use nabext::linalg::Matrix;
use nabext::nonabelian::{
    abelian_specialize, build_extension, check_cocycle, cocycle_equivalence_transform,
    cocycle_to_mc, GaugeParam, NabCocycle,
};
use nabext::split::SplitDgla;

#[derive(Parser, Debug)]
#[command(
    name = "nabext",
    version,
    about = "Non-abelian extensions of associative algebras"
)]
struct Cli {
    /// Q or F<p>; must agree with the field declared by input files.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Largest candidate or gauge-parameter space searched exhaustively.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Seed for sampled sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Sample this many candidates when the space exceeds the budget.
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Write the output document here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Square {
    /// Every product is zero.
    Zero,
    /// Orthogonal idempotent basis.
    Idem,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Associativity of an algebra.
    CheckAssoc { algebra: PathBuf },
    /// Hochschild differential of a map with coefficients in an algebra.
    HochschildDelta { map: PathBuf, algebra: PathBuf },
    /// Gerstenhaber bracket of two maps.
    Bracket { f: PathBuf, g: PathBuf },
    /// Cocycle equations and the Maurer-Cartan equation, which must agree.
    McCheck { cocycle: PathBuf },
    /// The twisted product on A ⊕ B with its canonical presentation.
    BuildExtension { cocycle: PathBuf },
    /// The cocycle of an extension with respect to a section.
    ExtractCocycle {
        extension: PathBuf,
        /// Defaults to the canonical section.
        #[arg(long)]
        section: Option<PathBuf>,
    },
    /// Transform a cocycle by a gauge parameter.
    Gauge { cocycle: PathBuf, beta: PathBuf },
    /// Equivalence of two cocycles (via --beta, or by search over F_p) or of
    /// two extensions (via --theta).
    EquivCheck {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, conflicts_with = "theta")]
        beta: Option<PathBuf>,
        /// Entries of theta: E -> E'.
        #[arg(long)]
        theta: Option<PathBuf>,
    },
    /// Enumerate cocycles, extensions and classes over F_p.
    Census {
        #[arg(long = "dimA")]
        dim_a: usize,
        #[arg(long = "dimB")]
        dim_b: usize,
        #[arg(long, value_enum, default_value_t = Square::Zero)]
        a2: Square,
        #[arg(long, value_enum, default_value_t = Square::Zero)]
        b2: Square,
    },
    /// Bimodule and Hochschild cocycle of a cocycle with m_A = 0.
    Abelianize { cocycle: PathBuf },
}

/// Exit status: 0 ok, 1 check failed, 2 bad input, 3 internal inconsistency.
struct Outcome {
    code: u8,
    doc: Value,
    text: String,
}

impl Outcome {
    fn ok(doc: Value, text: impl Into<String>) -> Self {
        Outcome {
            code: 0,
            doc,
            text: text.into(),
        }
    }

    fn verdict(passed: bool, doc: Value, text: impl Into<String>) -> Self {
        Outcome {
            code: if passed { 0 } else { 1 },
            doc,
            text: text.into(),
        }
    }
}

type Res<T> = Result<T, Error>;

fn read(path: &Path) -> Res<Value> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Format(format!("cannot read {}: {e}", path.display())))?;
    io::parse_json(&text)
}

/// The field of the run: the flag if given, else the one the documents
/// declare. Disagreement is an input error.
fn resolve_field(flag: Option<&str>, declared: Option<FieldSpec>) -> Res<FieldSpec> {
    let flag = flag.map(FieldSpec::parse).transpose()?;
    match (flag, declared) {
        (Some(f), Some(d)) if f != d => Err(Error::FieldMismatch(f.to_string(), d.to_string())),
        (Some(f), _) | (None, Some(f)) => Ok(f),
        (None, None) => Ok(FieldSpec::Rationals),
    }
}

/// Runs `$body` with `$f` bound to the concrete field named by `$spec`.
macro_rules! with_field {
    ($spec:expr, |$f:ident| $body:expr) => {
        match $spec {
            FieldSpec::Rationals => {
                let $f = &Rationals;
                $body
            }
            FieldSpec::PrimeField(p) => {
                let $f = &PrimeField::new(u64::from(p))?;
                $body
            }
        }
    };
}

fn formatted<F: Field>(f: &F, v: &[F::Elem]) -> Vec<String> {
    v.iter().map(|x| f.format(x)).collect()
}

fn check_assoc<F: Field>(f: &F, doc: &Value) -> Res<Outcome> {
    let a = io::algebra_from_json(f, doc)?;
    Ok(match a.associativity_witness() {
        None => Outcome::ok(json!({ "associative": true }), "associative"),
        Some(w) => {
            let names: Vec<&str> = w
                .triple
                .iter()
                .map(|&i| a.basis_names()[i].as_str())
                .collect();
            Outcome::verdict(
                false,
                json!({
                    "associative": false,
                    "witness": w.triple,
                    "witness_names": names,
                    "associator": formatted(f, &w.value),
                }),
                format!(
                    "not associative: ({} {}) {} != {} ({} {})",
                    names[0], names[1], names[2], names[0], names[1], names[2]
                ),
            )
        }
    })
}

fn hochschild<F: Field>(f: &F, map: &Value, alg: &Value) -> Res<Outcome> {
    let m = io::map_from_json(f, map)?;
    let a = io::algebra_from_json(f, alg)?;
    let d = hochschild_delta(&m, &a)?;
    let text = format!(
        "delta: arity {} with {} nonzero entries",
        d.arity(),
        d.support_size()
    );
    Ok(Outcome::ok(io::map_to_json(&d, io::map_split(map)?), text))
}

fn bracket<F: Field>(f: &F, a: &Value, b: &Value) -> Res<Outcome> {
    let x = io::map_from_json(f, a)?;
    let y = io::map_from_json(f, b)?;
    let br = gerstenhaber_bracket(&x, &y)?;
    let split = io::map_split(a)?.or(io::map_split(b)?);
    let text = format!(
        "bracket: arity {} with {} nonzero entries",
        br.arity(),
        br.support_size()
    );
    Ok(Outcome::ok(io::map_to_json(&br, split), text))
}

fn mc_check<F: Field>(f: &F, doc: &Value) -> Res<Outcome> {
    let c = io::cocycle_from_json(f, doc)?;
    let violations = check_cocycle(&c)?;
    let dgla = SplitDgla::new(&c.a, &c.b)?;
    let residual = dgla.mc_residual(&cocycle_to_mc(&c))?;
    let is_mc = residual.is_zero();
    let report = json!({
        "cocycle": violations.is_empty(),
        "maurer_cartan": is_mc,
        "violations": violations.iter().map(|v| io::violation_to_json(&c, v)).collect::<Vec<_>>(),
        "residual": io::map_to_json(residual.map(), Some(c.split())),
    });
    if violations.is_empty() != is_mc {
        return Ok(Outcome {
            code: 3,
            doc: report,
            text: "inconsistent: cocycle and Maurer-Cartan verdicts differ".into(),
        });
    }
    let text = match violations.first() {
        None => "valid cocycle; Maurer-Cartan".to_string(),
        Some(v) => format!(
            "{} violations; first: {} at {:?}",
            violations.len(),
            v.which,
            v.witness
        ),
    };
    Ok(Outcome::verdict(is_mc, report, text))
}

fn build<F: Field>(f: &F, doc: &Value) -> Res<Outcome> {
    let c = io::cocycle_from_json(f, doc)?;
    let e = build_extension(&c)?;
    let ext = ExtensionPresentation::from_split(&e, &c.a, &c.b)?;
    let assoc = e.algebra.is_associative();
    let mut out = io::extension_to_json(&ext);
    out["associative"] = json!(assoc);
    let text = format!(
        "extension of dimension {}; associative: {assoc}",
        e.algebra.dim()
    );
    Ok(Outcome::ok(out, text))
}

fn extract<F: Field>(f: &F, doc: &Value, section: Option<&Value>) -> Res<Outcome> {
    let ext = io::extension_from_json(f, doc)?;
    let diag = verify_extension(&ext);
    if !diag.is_valid() {
        return Ok(Outcome::verdict(
            false,
            json!({ "valid_extension": false, "failures": diag.failures }),
            format!("not an extension: {}", diag.failures.join("; ")),
        ));
    }
    let s = match section {
        Some(v) => io::section_from_json(f, v, &ext)?,
        None => canonical_section(&ext)?,
    };
    let c = cocycle_from_section(&ext, &s)?;
    Ok(Outcome::ok(io::cocycle_to_json(&c), "cocycle extracted"))
}

fn gauge<F: Field>(f: &F, doc: &Value, beta: &Value) -> Res<Outcome> {
    let c = io::cocycle_from_json(f, doc)?;
    let beta = io::beta_from_json(f, beta, c.a.dim(), c.b.dim())?;
    let out = cocycle_equivalence_transform(&c, &beta)?;
    let dgla = SplitDgla::new(&c.a, &c.b)?;
    if dgla.gauge_closed_form(&cocycle_to_mc(&c), &beta)? != cocycle_to_mc(&out) {
        return Ok(Outcome {
            code: 3,
            doc: json!({ "error": "gauge action and cocycle transform disagree" }),
            text: "inconsistent: gauge action and cocycle transform disagree".into(),
        });
    }
    Ok(Outcome::ok(io::cocycle_to_json(&out), "transformed"))
}

/// Every gauge parameter over `F_p`, in index order.
fn all_betas(
    f: &PrimeField,
    a_dim: usize,
    b_dim: usize,
    budget: u128,
) -> Res<Vec<GaugeParam<PrimeField>>> {
    let n = a_dim * b_dim;
    let count = u128::from(f.modulus())
        .checked_pow(n as u32)
        .filter(|&c| c <= budget)
        .ok_or(Error::BudgetExceeded {
            size: u128::from(f.modulus()).saturating_pow(n as u32),
            budget,
        })?;
    let p = u128::from(f.modulus());
    (0..count)
        .map(|mut i| {
            let digits = (0..n)
                .map(|_| {
                    let d = (i % p) as u32;
                    i /= p;
                    d
                })
                .collect();
            GaugeParam::new(Matrix::from_rows(f, a_dim, b_dim, digits)?, a_dim, b_dim)
        })
        .collect()
}

fn equiv_cocycles<F: Field>(
    f: &F,
    first: &Value,
    second: &Value,
    beta: Option<&Value>,
    candidates: impl FnOnce(usize, usize) -> Res<Vec<GaugeParam<F>>>,
) -> Res<Outcome> {
    let c1 = io::cocycle_from_json(f, first)?;
    let c2 = io::cocycle_from_json(f, second)?;
    if c1.a != c2.a || c1.b != c2.b {
        return Err(Error::Format("cocycles have different A or B".into()));
    }
    let pool = match beta {
        Some(v) => vec![io::beta_from_json(f, v, c1.a.dim(), c1.b.dim())?],
        None => candidates(c1.a.dim(), c1.b.dim())?,
    };
    let dgla = SplitDgla::new(&c1.a, &c1.b)?;
    let (x1, x2) = (cocycle_to_mc(&c1), cocycle_to_mc(&c2));
    for b in &pool {
        let by_transform = cocycle_equivalence_transform(&c1, b)? == c2;
        if by_transform != dgla.check_gauge_witness(&x1, &x2, b)? {
            return Ok(Outcome {
                code: 3,
                doc: json!({ "error": "gauge action and cocycle transform disagree", "beta": io::beta_to_json(b)["beta"] }),
                text: "inconsistent: gauge action and cocycle transform disagree".into(),
            });
        }
        if by_transform {
            return Ok(Outcome::ok(
                json!({ "equivalent": true, "beta": io::beta_to_json(b)["beta"] }),
                "equivalent",
            ));
        }
    }
    Ok(Outcome::verdict(
        false,
        json!({ "equivalent": false, "searched": pool.len() }),
        format!("not equivalent ({} gauge parameters tried)", pool.len()),
    ))
}

fn equiv_extensions<F: Field>(f: &F, first: &Value, second: &Value, theta: &Value) -> Res<Outcome> {
    let e1 = io::extension_from_json(f, first)?;
    let e2 = io::extension_from_json(f, second)?;
    let theta = io::matrix_from_json(f, theta, Some((e2.e.dim(), e1.e.dim())))?;
    let d = check_extension_equivalence(&e1, &e2, &theta)?;
    let holds = d.holds();
    let doc = json!({
        "equivalent": holds,
        "morphism": d.morphism,
        "iota_commutes": d.iota_commutes,
        "p_commutes": d.p_commutes,
        "failures": d.failures,
    });
    let text = if holds {
        "equivalent".to_string()
    } else {
        format!("not an equivalence: {}", d.failures.join("; "))
    };
    Ok(Outcome::verdict(holds, doc, text))
}

fn abelianize<F: Field>(f: &F, doc: &Value) -> Res<Outcome> {
    let c: NabCocycle<F> = io::cocycle_from_json(f, doc)?;
    let data = match abelian_specialize(&c) {
        Err(Error::InvalidCocycle(msg)) => {
            return Ok(Outcome::verdict(
                false,
                json!({ "valid_cocycle": false, "reason": msg }),
                format!("not a cocycle: {msg}"),
            ))
        }
        other => other?,
    };
    let closed = data.is_hochschild_cocycle();
    let tables = io::cocycle_to_json(&c);
    let out = json!({
        "bimodule": { "left": tables["phi"], "right": tables["psi"] },
        "hochschild_cocycle": tables["chi"],
        "delta_chi": io::map_to_json(&data.delta_chi, Some(c.split())),
        "delta_chi_vanishes": closed,
    });
    if !closed {
        return Ok(Outcome {
            code: 3,
            doc: out,
            text: "inconsistent: valid abelian cocycle with nonzero delta chi".into(),
        });
    }
    Ok(Outcome::ok(
        out,
        "abelian: bimodule with Hochschild 2-cocycle",
    ))
}

fn factor(f: &PrimeField, prefix: &str, dim: usize, sq: Square) -> Res<Algebra<PrimeField>> {
    match sq {
        Square::Zero => Algebra::zero_product(f, prefix, dim),
        Square::Idem => Algebra::diagonal_idempotents(f, prefix, dim),
    }
}

fn run(cli: &Cli) -> Res<Outcome> {
    let flag = cli.field.as_deref();
    match &cli.command {
        Command::CheckAssoc { algebra } => {
            let doc = read(algebra)?;
            with_field!(resolve_field(flag, Some(io::algebra_field(&doc)?))?, |f| {
                check_assoc(f, &doc)
            })
        }
        Command::HochschildDelta { map, algebra } => {
            let (m, a) = (read(map)?, read(algebra)?);
            with_field!(resolve_field(flag, Some(io::algebra_field(&a)?))?, |f| {
                hochschild(f, &m, &a)
            })
        }
        Command::Bracket { f: fp, g: gp } => {
            let (a, b) = (read(fp)?, read(gp)?);
            let declared = a
                .get("field")
                .or(b.get("field"))
                .map(io::field_spec_from_json)
                .transpose()?;
            with_field!(resolve_field(flag, declared)?, |f| bracket(f, &a, &b))
        }
        Command::McCheck { cocycle } => {
            let doc = read(cocycle)?;
            with_field!(resolve_field(flag, Some(io::cocycle_field(&doc)?))?, |f| {
                mc_check(f, &doc)
            })
        }
        Command::BuildExtension { cocycle } => {
            let doc = read(cocycle)?;
            with_field!(resolve_field(flag, Some(io::cocycle_field(&doc)?))?, |f| {
                build(f, &doc)
            })
        }
        Command::ExtractCocycle { extension, section } => {
            let doc = read(extension)?;
            let s = section.as_deref().map(read).transpose()?;
            with_field!(
                resolve_field(flag, Some(io::extension_field(&doc)?))?,
                |f| extract(f, &doc, s.as_ref())
            )
        }
        Command::Gauge { cocycle, beta } => {
            let (doc, b) = (read(cocycle)?, read(beta)?);
            with_field!(resolve_field(flag, Some(io::cocycle_field(&doc)?))?, |f| {
                gauge(f, &doc, &b)
            })
        }
        Command::EquivCheck {
            first,
            second,
            beta,
            theta,
        } => {
            let (x, y) = (read(first)?, read(second)?);
            if let Some(t) = theta {
                let t = read(t)?;
                return with_field!(resolve_field(flag, Some(io::extension_field(&x)?))?, |f| {
                    equiv_extensions(f, &x, &y, &t)
                });
            }
            let b = beta.as_deref().map(read).transpose()?;
            let budget = cli.budget;
            match resolve_field(flag, Some(io::cocycle_field(&x)?))? {
                FieldSpec::Rationals => equiv_cocycles(&Rationals, &x, &y, b.as_ref(), |_, _| {
                    Err(Error::Format("over Q a --beta witness is required".into()))
                }),
                FieldSpec::PrimeField(p) => {
                    let f = PrimeField::new(u64::from(p))?;
                    equiv_cocycles(&f, &x, &y, b.as_ref(), |da, db| {
                        all_betas(&f, da, db, budget)
                    })
                }
            }
        }
        Command::Census {
            dim_a,
            dim_b,
            a2,
            b2,
        } => {
            let spec = resolve_field(flag, None)?;
            let FieldSpec::PrimeField(p) = spec else {
                return Err(Error::Format("census needs --field F<p>".into()));
            };
            let f = PrimeField::new(u64::from(p))?;
            let space =
                CandidateSpace::new(factor(&f, "a", *dim_a, *a2)?, factor(&f, "b", *dim_b, *b2)?)?;
            let opts = EnumOptions {
                budget: cli.budget,
                samples: cli.samples,
                seed: cli.seed,
                jobs: cli.jobs,
            };
            let report = census(&space, &opts)?;
            Ok(Outcome {
                code: if report.all_passed() { 0 } else { 3 },
                doc: io::report_to_json(&report),
                text: report.summary_text(),
            })
        }
        Command::Abelianize { cocycle } => {
            let doc = read(cocycle)?;
            with_field!(resolve_field(flag, Some(io::cocycle_field(&doc)?))?, |f| {
                abelianize(f, &doc)
            })
        }
    }
}

fn emit(cli: &Cli, out: &Outcome) -> std::io::Result<()> {
    let body = match cli.format {
        Format::Json => io::to_pretty(&out.doc),
        Format::Text => {
            let mut t = out.text.clone();
            if !t.ends_with('\n') {
                t.push('\n');
            }
            t
        }
    };
    match &cli.output {
        Some(path) => fs::write(path, body),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => match emit(&cli, &out) {
            Ok(()) => ExitCode::from(out.code),
            Err(e) => {
                eprintln!("error: cannot write output: {e}");
                ExitCode::from(2)
            }
        },
        Err(Error::CrossCheck(msg)) => {
            eprintln!("inconsistency: {msg}");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
