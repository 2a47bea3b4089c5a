//! `fintop`: build, inspect and verify finite models of presented groups.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fintop::finspace::FinitePoset;
use fintop::group::{abelian_invariants, best_oracle, todd_coxeter, GroupError};
use fintop::pi1::{edge_path_presentation, tietze_simplify, verify_pi1, VerificationStatus, VerifyLimits};
use fintop::pipeline::explicit_quotient;
use fintop::presentation::{
    is_reduced, parse_presentation, ReduceError, ReducedPresentation, ReducedStatus, DEFAULT_REDUCE_STEPS,
};
use fintop::zn::{abelian_space, build_zn_quotient};
use fintop::{isomorphic, predicted_cardinality, quotient_model, reduce, Presentation};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "fintop", version, about = "Finite T0 models of presented groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit the finite model of a presentation, or of a product of cyclic groups with --orders.
    Build {
        presentation: Option<String>,
        #[arg(long)]
        orders: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Emit the orbit space of the n-fold rotation of the subdivided disc.
    Zn {
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Run every check on a presentation and print a JSON report.
    Verify {
        presentation: String,
        /// Compare the product space with these orders against the presentation instead.
        #[arg(long)]
        orders: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Simplify the edge-path group of a model.
    Pi1 {
        presentation: Option<String>,
        #[arg(long)]
        orders: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate the predicted number of points.
    Info {
        presentation: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug, Clone)]
struct Common {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    max_cosets: u64,
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    tietze_budget: u64,
    #[arg(long)]
    output: Option<PathBuf>,
}

impl Common {
    fn limits(&self) -> VerifyLimits {
        VerifyLimits { max_cosets: self.max_cosets as usize, tietze_budget: self.tietze_budget as usize }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Dot,
    Json,
    Text,
}

/// A failed run and its exit status.
#[derive(Debug)]
enum Failure {
    /// Something was checked and came out false.
    Violation(String),
    Usage(String),
    Budget(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Violation(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Budget(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Violation(m) | Failure::Usage(m) | Failure::Budget(m) => m,
        }
    }
}

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::NotEnumerated { .. } => Failure::Budget(e.to_string()),
            other => Failure::Violation(other.to_string()),
        }
    }
}

impl From<ReduceError> for Failure {
    fn from(e: ReduceError) -> Self {
        match e {
            ReduceError::OracleInconclusive(_) | ReduceError::StepBudgetExceeded(_) => Failure::Budget(e.to_string()),
            other => Failure::Violation(other.to_string()),
        }
    }
}

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

fn parse_orders(text: &str) -> Result<Vec<u64>, Failure> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(|s| s.trim().parse::<u64>().map_err(|e| usage(format!("bad order {s:?}: {e}")))).collect()
}

fn parse(text: &str) -> Result<Presentation, Failure> {
    parse_presentation(text).map_err(usage)
}

/// Reduces `p`, reporting on stderr when the relators had to change.
fn reduced(p: &Presentation, common: &Common) -> Result<ReducedPresentation, Failure> {
    let oracle = best_oracle(p, common.max_cosets as usize)?;
    let rp = reduce(p, oracle.as_ref(), DEFAULT_REDUCE_STEPS)?;
    if rp.presentation() != p {
        eprintln!("note: input is not reduced; using {}", rp.presentation());
    }
    Ok(rp)
}

/// The space named by a presentation or an `--orders` list, never both.
fn space_of(
    presentation: Option<&str>,
    orders: Option<&str>,
    common: &Common,
) -> Result<(String, FinitePoset), Failure> {
    match (presentation, orders) {
        (Some(text), None) => {
            let rp = reduced(&parse(text)?, common)?;
            Ok((rp.presentation().to_string(), quotient_model(&rp).poset().clone()))
        }
        (None, Some(o)) => {
            let orders = parse_orders(o)?;
            let space = abelian_space(&orders).map_err(usage)?;
            Ok((format!("orders {o}"), space))
        }
        _ => Err(usage("give either a presentation or --orders")),
    }
}

fn render(space: &FinitePoset, name: &str, format: Format) -> String {
    match format {
        Format::Dot => space.to_dot(name),
        Format::Json => space.to_json() + "\n",
        Format::Text => space.to_text(),
    }
}

fn render_value(v: &Value, format: Format) -> Result<String, Failure> {
    match format {
        Format::Json | Format::Text => Ok(serde_json::to_string_pretty(v).expect("json values serialize") + "\n"),
        Format::Dot => Err(usage("dot output is only available for spaces")),
    }
}

fn run(cli: Cli) -> Result<(String, Common, Option<Failure>), Failure> {
    match cli.command {
        Command::Build { presentation, orders, common } => {
            let (name, space) = space_of(presentation.as_deref(), orders.as_deref(), &common)?;
            Ok((render(&space, &name, common.format), common, None))
        }
        Command::Zn { n, common } => {
            let q = build_zn_quotient(n).map_err(usage)?;
            Ok((render(&q.poset, &format!("Z{n}"), common.format), common, None))
        }
        Command::Info { presentation, common } => {
            let p = parse(&presentation)?;
            let count = predicted_cardinality(&p);
            let out = match common.format {
                Format::Text => format!("{count}\n"),
                _ => render_value(
                    &json!({
                        "presentation": p.to_string(),
                        "generators": p.num_generators(),
                        "relators": p.relators().iter().map(|r| r.len()).collect::<Vec<_>>(),
                        "points": count,
                    }),
                    common.format,
                )?,
            };
            Ok((out, common, None))
        }
        Command::Pi1 { presentation, orders, common } => {
            let (name, space) = space_of(presentation.as_deref(), orders.as_deref(), &common)?;
            let ep = edge_path_presentation(&space).map_err(|e| Failure::Violation(e.to_string()))?;
            let outcome = tietze_simplify(&ep.presentation, common.tietze_budget as usize);
            let simplified = outcome.presentation;
            let invariants = abelian_invariants(&simplified)?;
            let order = if invariants.free_rank > 0 {
                None
            } else {
                todd_coxeter(&simplified, common.max_cosets as usize).ok().map(|t| t.size())
            };
            let out = match common.format {
                Format::Text => {
                    let order = order.map_or("unknown".to_string(), |o| o.to_string());
                    format!("space: {name}\npresentation: {simplified}\nabelianization: {invariants}\norder: {order}\n")
                }
                _ => render_value(
                    &json!({
                        "space": name,
                        "points": space.len(),
                        "edge_path_generators": ep.presentation.num_generators(),
                        "edge_path_relators": ep.presentation.relators().len(),
                        "presentation": simplified.to_string(),
                        "abelianization": invariants,
                        "order": order,
                        "tietze_budget_exhausted": outcome.budget_exhausted,
                    }),
                    common.format,
                )?,
            };
            let failure = outcome.budget_exhausted.then(|| Failure::Budget("Tietze budget exhausted".into()));
            Ok((out, common, failure))
        }
        Command::Verify { presentation, orders, common } => {
            let p = parse(&presentation)?;
            let (report, failure) = match orders {
                Some(o) => verify_product(&parse_orders(&o)?, &p, &common)?,
                None => verify(&p, &common)?,
            };
            Ok((render_value(&report, common.format)?, common, failure))
        }
    }
}

fn status_failure(status: VerificationStatus, reason: &str) -> Option<Failure> {
    match status {
        VerificationStatus::Verified | VerificationStatus::Consistent => None,
        VerificationStatus::Refuted => Some(Failure::Violation(format!("fundamental group refuted: {reason}"))),
        VerificationStatus::Inconclusive => Some(Failure::Budget(format!("fundamental group inconclusive: {reason}"))),
    }
}

fn verify_product(orders: &[u64], target: &Presentation, common: &Common) -> Result<(Value, Option<Failure>), Failure> {
    let space = abelian_space(orders).map_err(usage)?;
    let report = verify_pi1(&space, target, common.limits()).map_err(|e| Failure::Violation(e.to_string()))?;
    let failure = status_failure(report.status, &report.reason);
    let value = json!({
        "orders": orders,
        "target": target.to_string(),
        "actual_cardinality": space.len(),
        "connected": space.is_connected(),
        "beat_points": space.beat_points().iter().map(|&x| space.label(x)).collect::<Vec<_>>(),
        "pi1": report,
    });
    Ok((value, failure))
}

fn verify(p: &Presentation, common: &Common) -> Result<(Value, Option<Failure>), Failure> {
    let table = todd_coxeter(p, common.max_cosets as usize).ok();
    let oracle = best_oracle(p, common.max_cosets as usize)?;
    let certificate = is_reduced(p, oracle.as_ref());
    let mut problems = Vec::new();
    let mut report = json!({
        "presentation": p.to_string(),
        "finite_order": table.as_ref().map(|t| t.size()),
        "reducedness": certificate,
    });
    match certificate.status {
        ReducedStatus::Reduced => {}
        ReducedStatus::NotReduced => {
            return Ok((report, Some(Failure::Violation("presentation is not reduced".into()))));
        }
        ReducedStatus::Unverified => {
            return Ok((report, Some(Failure::Budget("reducedness could not be decided".into()))));
        }
    }
    let rp = ReducedPresentation::certify(p.clone(), oracle.as_ref())?;
    let model = quotient_model(&rp);
    let space = model.poset();
    let predicted = predicted_cardinality(p);
    if predicted != space.len() {
        problems.push("cardinality differs from prediction");
    }
    if !space.is_connected() {
        problems.push("space is disconnected");
    }
    report["predicted_cardinality"] = json!(predicted);
    report["actual_cardinality"] = json!(space.len());
    report["connected"] = json!(space.is_connected());
    report["beat_points"] = json!(space.beat_points().iter().map(|&x| space.label(x)).collect::<Vec<_>>());

    report["properly_discontinuous"] = Value::Null;
    report["isomorphic_to_explicit"] = Value::Null;
    if let Some(t) = &table {
        let explicit = explicit_quotient(&rp, t).map_err(|e| Failure::Violation(e.to_string()))?;
        report["properly_discontinuous"] = json!({
            "passed": explicit.discontinuity.passed(),
            "pairs_checked": explicit.discontinuity.pairs_checked,
            "violations": explicit.discontinuity.violations,
        });
        report["explicit_cardinality"] = json!(explicit.quotient.poset.len());
        if !explicit.discontinuity.passed() {
            problems.push("action is not properly discontinuous");
        }
        match isomorphic(space, &explicit.quotient.poset) {
            Ok(iso) => {
                report["isomorphic_to_explicit"] = json!(iso.is_some());
                if iso.is_none() {
                    problems.push("model differs from the explicit orbit space");
                }
            }
            Err(e) => eprintln!("warning: {e}"),
        }
    }

    let pi1 = verify_pi1(space, p, common.limits()).map_err(|e| Failure::Violation(e.to_string()))?;
    let pi1_failure = status_failure(pi1.status, &pi1.reason);
    report["pi1"] = json!(pi1);

    let failure = if problems.is_empty() { pi1_failure } else { Some(Failure::Violation(problems.join("; "))) };
    Ok((report, failure))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let failure = match run(cli) {
        Ok((out, common, failure)) => {
            let written = match &common.output {
                Some(path) => fs::write(path, &out).map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
                None => {
                    print!("{out}");
                    Ok(())
                }
            };
            written.err().or(failure)
        }
        Err(f) => Some(f),
    };
    match failure {
        None => ExitCode::SUCCESS,
        Some(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
