//! `imp` — classify Boolean CSP instances, compute Gröbner bases of their
//! combinatorial ideals, and decide ideal membership with certificates.

mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use imp_core::csp::{classify_language, ConstraintLanguage, CspInstance, Tractability};
use imp_core::encoder::{encode_generic, encode_majority, encode_max, encode_min};
use imp_core::groebner::{
    autoreduce, buchberger_with, elimination_ideal_with, truncated_basis_with, EngineConfig,
    GroebnerBasis, MembershipEvidence, SemilatticeClass, Strategy,
};
use imp_core::oracle::{enumerate_solutions_with, reference_reduced_gb_with};
use imp_core::poly::{divide, parse_polynomial, MonomialOrder, Polynomial};
use imp_core::solver::{
    decide, decide_sparse_counting, verify_evidence, Decision, ImpQuery, MembershipVerdict,
};
use imp_core::Error;

#[derive(Parser)]
#[command(name = "imp", version, about = "Ideal membership for Boolean CSP ideals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Instance file (JSON schema or DIMACS CNF).
    instance: PathBuf,
    /// Input format; inferred from the file extension when omitted.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Seed for randomized orderings inside the engine.
    #[arg(long)]
    seed: Option<u64>,
    /// Overrides both the basis-size and candidate budgets.
    #[arg(long)]
    budget: Option<usize>,
    /// Variable cap for exhaustive fallbacks.
    #[arg(long, default_value_t = 20)]
    max_vars: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dimacs,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Generic,
    Majority,
    Twoterms,
    Auto,
}

#[derive(Subcommand)]
enum Command {
    /// Report the polymorphisms and dichotomy class of the language.
    Classify(Common),
    /// Compute a (possibly truncated) reduced Gröbner basis.
    Groebner {
        #[command(flatten)]
        common: Common,
        /// Truncation degree (Min/Max classes only).
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
        strategy: StrategyArg,
    },
    /// Decide membership of a polynomial in the combinatorial ideal.
    Imp {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        poly: String,
        /// Use the sparse pairing algorithm (Min/Max classes).
        #[arg(long)]
        sparse: bool,
    },
    /// Enumerate solutions and the reference reduced basis by brute force.
    Oracle(Common),
    /// Compute the elimination ideal for the listed variables.
    Eliminate {
        #[command(flatten)]
        common: Common,
        /// Comma-separated 1-based variable indices to eliminate.
        #[arg(long, value_delimiter = ',')]
        vars: Vec<u32>,
    },
    /// Reduce a polynomial to normal form modulo the reduced basis.
    Reduce {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        poly: String,
    },
}

fn engine_config(common: &Common) -> EngineConfig {
    let mut cfg = EngineConfig { shuffle_seed: common.seed, ..EngineConfig::default() };
    if let Some(b) = common.budget {
        cfg.basis_budget = b;
        cfg.candidate_budget = b;
    }
    cfg
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::BasisBudgetExceeded(_)
        | Error::CandidateBudgetExceeded(_)
        | Error::InstanceTooLarge(..) => 2,
        Error::UnsupportedClass => 3,
        _ => 1,
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: exit_code_for(&e), message: e.to_string() }
    }
}

fn load(common: &Common) -> Result<(CspInstance, ConstraintLanguage), Failure> {
    let format = match common.format {
        Some(Format::Json) => input::Format::Json,
        Some(Format::Dimacs) => input::Format::Dimacs,
        None => input::infer_format(&common.instance),
    };
    input::parse_instance(&common.instance, format)
        .map_err(|message| Failure { code: 1, message })
}

fn poly_strings(polys: &[Polynomial]) -> Vec<String> {
    polys.iter().map(|p| p.to_string()).collect()
}

/// The reduced basis for the class the language falls in, using the
/// strongest structure available.
fn auto_basis(
    inst: &CspInstance,
    lang: &ConstraintLanguage,
    cfg: &EngineConfig,
) -> Result<(GroebnerBasis, &'static str), Error> {
    let ord = MonomialOrder::grlex();
    let cls = classify_language(lang);
    match cls.tractability {
        Tractability::MajorityTract => {
            let run = buchberger_with(&encode_majority(inst, lang)?, &ord, Strategy::Majority, cfg)?;
            Ok((autoreduce(&run.basis)?, "majority"))
        }
        Tractability::MinTract => {
            let run = buchberger_with(&encode_min(inst, lang)?, &ord, Strategy::TwoTerms, cfg)?;
            Ok((autoreduce(&run.basis)?, "twoterms"))
        }
        Tractability::MaxTract => {
            let run = buchberger_with(&encode_max(inst, lang)?, &ord, Strategy::TwoTerms, cfg)?;
            Ok((autoreduce(&run.basis)?, "twoterms"))
        }
        _ => {
            let run = buchberger_with(&encode_generic(inst, lang)?, &ord, Strategy::Generic, cfg)?;
            Ok((autoreduce(&run.basis)?, "generic"))
        }
    }
}

fn evidence_json(ev: &MembershipEvidence) -> serde_json::Value {
    match ev {
        MembershipEvidence::Syntactic { transcript, divisors } => json!({
            "kind": "syntactic",
            "cofactors": poly_strings(&transcript.cofactors),
            "remainder": transcript.remainder.to_string(),
            "divisors": poly_strings(divisors),
        }),
        MembershipEvidence::Semantic { assignments } => json!({
            "kind": "semantic",
            "assignments": assignments
                .iter()
                .map(|a| a.iter().map(|(v, b)| json!({"var": v, "value": b})).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        }),
        MembershipEvidence::Witness { assignment } => json!({
            "kind": "witness",
            "assignment": assignment.iter().map(|&b| u8::from(b)).collect::<Vec<_>>(),
        }),
    }
}

fn verdict_json(v: &MembershipVerdict, verified: bool) -> serde_json::Value {
    json!({
        "decision": match v.decision { Decision::In => "In", Decision::NotIn => "NotIn" },
        "pipeline": format!("{:?}", v.pipeline),
        "evidence": evidence_json(&v.evidence),
        "verified": verified,
    })
}

fn run(cli: &Cli) -> Result<serde_json::Value, Failure> {
    let start = Instant::now();
    let mut body = match &cli.command {
        Command::Classify(common) => {
            let (inst, lang) = load(common)?;
            inst.validate(&lang)?;
            let cls = classify_language(&lang);
            json!({
                "command": "classify",
                "classification": report::classification_json(&cls),
            })
        }
        Command::Groebner { common, degree, strategy } => {
            let (inst, lang) = load(common)?;
            let cfg = engine_config(common);
            let ord = MonomialOrder::grlex();
            let cls = classify_language(&lang);
            let (basis, used) = match (degree, strategy) {
                (Some(d), _) => {
                    let sem = match cls.tractability {
                        Tractability::MinTract => SemilatticeClass::Min,
                        Tractability::MaxTract => SemilatticeClass::Max,
                        _ => {
                            return Err(Failure {
                                code: 1,
                                message: "--degree requires a Min- or Max-closed language".into(),
                            })
                        }
                    };
                    (truncated_basis_with(&inst, &lang, sem, *d, &cfg)?, "truncated")
                }
                (None, StrategyArg::Auto) => auto_basis(&inst, &lang, &cfg)?,
                (None, StrategyArg::Generic) => {
                    let run =
                        buchberger_with(&encode_generic(&inst, &lang)?, &ord, Strategy::Generic, &cfg)?;
                    (autoreduce(&run.basis)?, "generic")
                }
                (None, StrategyArg::Majority) => {
                    let run =
                        buchberger_with(&encode_majority(&inst, &lang)?, &ord, Strategy::Majority, &cfg)?;
                    (autoreduce(&run.basis)?, "majority")
                }
                (None, StrategyArg::Twoterms) => {
                    let enc = match cls.tractability {
                        Tractability::MaxTract => encode_max(&inst, &lang)?,
                        _ => encode_min(&inst, &lang)?,
                    };
                    let run = buchberger_with(&enc, &ord, Strategy::TwoTerms, &cfg)?;
                    (autoreduce(&run.basis)?, "twoterms")
                }
            };
            json!({
                "command": "groebner",
                "classification": report::classification_json(&cls),
                "strategy": used,
                "basis": poly_strings(&basis.polynomials),
                "reduced": basis.reduced,
                "truncated_at": basis.truncated_at,
                "max_degree": basis.polynomials.iter().map(|p| p.total_degree()).max(),
            })
        }
        Command::Imp { common, poly, sparse } => {
            let (inst, lang) = load(common)?;
            let f = parse_polynomial(poly)?;
            let q = ImpQuery { instance: inst, language: lang, f, degree_bound: None };
            let (verdict, tests) = if *sparse {
                let cls = classify_language(&q.language);
                let sem = if cls.has(imp_core::csp::Polymorphism::Min) {
                    SemilatticeClass::Min
                } else if cls.has(imp_core::csp::Polymorphism::Max) {
                    SemilatticeClass::Max
                } else {
                    return Err(Error::UnsupportedClass.into());
                };
                let (v, t) = decide_sparse_counting(&q, sem)?;
                (v, Some(t))
            } else {
                (decide(&q)?, None)
            };
            let verified = verify_evidence(&verdict, &q);
            json!({
                "command": "imp",
                "poly": q.f.to_string(),
                "verdict": verdict_json(&verdict, verified),
                "pair_tests": tests,
            })
        }
        Command::Oracle(common) => {
            let (inst, lang) = load(common)?;
            let cfg = engine_config(common);
            let sols = enumerate_solutions_with(&inst, &lang, common.max_vars)?;
            let ord = MonomialOrder::grlex();
            let basis = if inst.num_vars <= 12 {
                Some(reference_reduced_gb_with(&inst, &lang, &ord, 12, &cfg)?)
            } else {
                None
            };
            let listed: Vec<String> = sols
                .points
                .iter()
                .take(1024)
                .map(|a| a.iter().map(|&b| if b { '1' } else { '0' }).collect())
                .collect();
            json!({
                "command": "oracle",
                "num_solutions": sols.points.len(),
                "solutions": listed,
                "solutions_truncated": sols.points.len() > 1024,
                "reference_basis": basis.map(|b| poly_strings(&b.polynomials)),
            })
        }
        Command::Eliminate { common, vars } => {
            let (inst, lang) = load(common)?;
            let cfg = engine_config(common);
            let gens = encode_generic(&inst, &lang)?;
            let out = elimination_ideal_with(&gens, vars, &cfg)?;
            json!({
                "command": "eliminate",
                "eliminated": vars,
                "basis": poly_strings(&out.polynomials),
            })
        }
        Command::Reduce { common, poly } => {
            let (inst, lang) = load(common)?;
            let cfg = engine_config(common);
            let f = parse_polynomial(poly)?;
            let (basis, used) = auto_basis(&inst, &lang, &cfg)?;
            let ord = MonomialOrder::grlex();
            let t = divide(&f.multilinearize(), &basis.polynomials, &ord)?;
            json!({
                "command": "reduce",
                "strategy": used,
                "basis": poly_strings(&basis.polynomials),
                "remainder": t.remainder.to_string(),
                "cofactors": poly_strings(&t.cofactors),
            })
        }
    };
    let obj = body.as_object_mut().expect("report body is an object");
    obj.insert("schema".into(), json!("imp-report/1"));
    obj.insert("timings".into(), json!({"total_ms": start.elapsed().as_millis() as u64}));
    Ok(body)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            use std::io::Write;
            let text = serde_json::to_string_pretty(&report).expect("serializable report");
            // Tolerate a closed pipe (e.g. piping into `head`).
            let _ = writeln!(std::io::stdout(), "{text}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
