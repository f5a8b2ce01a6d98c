//! Batch command-line surface: Fox derivative reports, p-group
//! presentation certificates, liftability queries, subextension checks,
//! and the theorem sweep, all with reproducible JSON output.
//!
//! Exit codes: 0 success, 1 computational error (bounds, inconsistent
//! input), 2 theorem violation (an `implication_holds = false` case),
//! 3 spec/usage parse error.

use std::io::Write as _;
use std::process::ExitCode;
use std::str::FromStr;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use liftcheck::catalog::{groups_of_order_upto, parse_extension_spec, parse_group_spec, ParsedGroup};
use liftcheck::extensions::{is_liftable, CentralExtension, LiftWitness, PresentationStore};
use liftcheck::permmod::ActionSpec;
use liftcheck::presentations::{coset_enumeration, pgroup_presentation, DEFAULT_TABLE_LIMIT};
use liftcheck::subext::{necessary_condition, subextension_exists, theorem_sweep, SweepOptions};
use liftcheck::words::Word;

#[derive(Parser)]
#[command(name = "liftcheck", about = "Liftability and subextension checks for finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Flags selecting a group or extension spec, shared across subcommands.
#[derive(Args, Clone)]
struct SpecArgs {
    /// Catalog entry name (psl2, sl2, cyclic, elementary, dihedral,
    /// quaternion8, klein4, a4, heisenberg, modular16).
    #[arg(long)]
    catalog: Option<String>,

    /// Field size for the psl2/sl2 catalog entries.
    #[arg(long)]
    q: Option<u64>,

    /// Comma-separated catalog parameters, e.g. `p=3,d=2`.
    #[arg(long)]
    params: Option<String>,

    /// Inline JSON spec (group or extension format).
    #[arg(long)]
    spec: Option<String>,

    /// Path to a JSON spec file.
    #[arg(long)]
    spec_file: Option<String>,
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Fox derivatives and exponent sums of a free word.
    Fox {
        /// Word in the `x0^2 x1^-1` syntax (`e` for the identity).
        #[arg(long)]
        word: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// p-group presentation with exponent-sum and order certificates.
    Present {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        p: u64,
        /// Coset table row limit for the order certificate.
        #[arg(long, default_value_t = DEFAULT_TABLE_LIMIT)]
        coset_limit: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Liftability of point stabilizers of an extension's natural action.
    Liftable {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        p: Option<u64>,
        /// Check the stabilizer of this point only (default: one
        /// representative per orbit).
        #[arg(long)]
        stabilizer_of: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Subextension existence plus the necessary condition for one
    /// extension and its natural action.
    Subext {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        p: Option<u64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Theorem sweep over catalog groups: JSONL reports, exit 2 on any
    /// implication violation.
    Sweep {
        /// Include every catalog group of order at most this bound.
        #[arg(long, default_value_t = 16)]
        orders_upto: usize,
        #[arg(long, default_value_t = 2)]
        p: u64,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_TABLE_LIMIT)]
        coset_limit: usize,
        /// Recorded in the run header for reproducibility bookkeeping.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

const EXIT_OK: u8 = 0;
const EXIT_COMPUTE: u8 = 1;
const EXIT_VIOLATION: u8 = 2;
const EXIT_SPEC: u8 = 3;

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn spec(message: impl Into<String>) -> Self {
        Failure { code: EXIT_SPEC, message: message.into() }
    }
}

impl From<liftcheck::Error> for Failure {
    fn from(e: liftcheck::Error) -> Self {
        let code = match e {
            liftcheck::Error::UnknownCatalog { .. }
            | liftcheck::Error::CatalogParam(_)
            | liftcheck::Error::WordParse { .. } => EXIT_SPEC,
            _ => EXIT_COMPUTE,
        };
        Failure { code, message: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help/version are not errors.
            if e.use_stderr() {
                eprintln!("{e}");
                return ExitCode::from(EXIT_SPEC);
            }
            print!("{e}");
            return ExitCode::from(EXIT_OK);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn emit(output: &OutputArgs, lines: &[String]) -> Result<(), Failure> {
    let body = lines.join("\n") + "\n";
    match &output.out {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| Failure { code: EXIT_COMPUTE, message: format!("write {path}: {e}") }),
        None => {
            print!("{body}");
            std::io::stdout().flush().ok();
            Ok(())
        }
    }
}

/// Assembles the JSON spec value from the flag combination.
fn spec_value(spec: &SpecArgs) -> Result<Value, Failure> {
    let mut sources = 0;
    sources += usize::from(spec.catalog.is_some());
    sources += usize::from(spec.spec.is_some());
    sources += usize::from(spec.spec_file.is_some());
    if sources != 1 {
        return Err(Failure::spec("give exactly one of --catalog, --spec, --spec-file"));
    }
    if let Some(inline) = &spec.spec {
        return serde_json::from_str(inline).map_err(|e| Failure::spec(format!("--spec: {e}")));
    }
    if let Some(path) = &spec.spec_file {
        let body = std::fs::read_to_string(path)
            .map_err(|e| Failure::spec(format!("--spec-file {path}: {e}")))?;
        return serde_json::from_str(&body)
            .map_err(|e| Failure::spec(format!("--spec-file {path}: {e}")));
    }
    let name = spec.catalog.as_deref().expect("checked above");
    let mut obj = serde_json::Map::new();
    obj.insert("catalog".into(), Value::String(name.into()));
    if let Some(q) = spec.q {
        obj.insert("q".into(), json!(q));
    }
    if let Some(params) = &spec.params {
        let mut map = serde_json::Map::new();
        for pair in params.split(',').filter(|s| !s.is_empty()) {
            let (key, value) = pair
                .split_once('=')
                .ok_or_else(|| Failure::spec(format!("--params entry `{pair}` is not k=v")))?;
            let number: u64 = value
                .trim()
                .parse()
                .map_err(|_| Failure::spec(format!("--params value `{value}` is not an integer")))?;
            map.insert(key.trim().into(), json!(number));
        }
        obj.insert("params".into(), Value::Object(map));
    }
    Ok(Value::Object(obj))
}

/// Resolves an extension plus the action used for stabilizer queries.
fn resolve_extension(
    spec: &SpecArgs,
    p: Option<u64>,
) -> Result<(String, CentralExtension, ActionSpec), Failure> {
    let mut value = spec_value(spec)?;
    if let (Some(p), Value::Object(obj)) = (p, &mut value) {
        obj.entry("p").or_insert(json!(p));
    }
    // A bare group spec with --p means "zero cocycle over that group".
    let is_extension_spec = value.get("cocycle").is_some()
        || value.get("catalog").and_then(Value::as_str) == Some("sl2");
    let (name, ext, group) = if is_extension_spec {
        let (name, ext) = parse_extension_spec(&value)?;
        let group = match value.get("group") {
            Some(g) => parse_group_spec(g)?,
            None => {
                let q = value.get("q").and_then(Value::as_u64).expect("sl2 spec has q");
                let action = liftcheck::catalog::psl2_action(q)?;
                ParsedGroup {
                    name: name.clone(),
                    group: Arc::clone(&action.group),
                    action: Some(action),
                }
            }
        };
        (name, ext, group)
    } else {
        let group = parse_group_spec(&value)?;
        let p = value
            .get("p")
            .and_then(Value::as_u64)
            .ok_or_else(|| Failure::spec("zero-cocycle extension needs --p"))?;
        let cocycle = liftcheck::extensions::Cocycle::zero(p, group.group.order());
        let ext = liftcheck::extensions::build_extension(&group.group, cocycle)?;
        (format!("{} (split)", group.name), ext, group)
    };
    let action = match &group.action {
        Some(action)
            if Arc::ptr_eq(&action.group, &ext.base)
                || ext.base.same_multiplication(&action.group) =>
        {
            action.clone()
        }
        _ => {
            // Table groups get their regular action.
            let hom = ext.base.coset_action(&ext.base.trivial_subgroup())?;
            ActionSpec::from_hom(&hom, format!("{} regular", group.name))?
        }
    };
    Ok((name, ext, action))
}

fn witness_json(witness: &LiftWitness) -> Value {
    match witness {
        LiftWitness::Splitting(sigma) => json!({ "splitting": sigma }),
        LiftWitness::Obstruction { relator_index, value } => {
            json!({ "obstruction": { "relator_index": relator_index, "value": value } })
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Fox { word, output } => {
            let w = Word::from_str(&word)?;
            let alphabet = w.alphabet_span();
            let derivatives: Vec<Value> = (0..alphabet)
                .map(|i| {
                    let terms: Vec<Value> = w
                        .fox_derivative(i)
                        .terms()
                        .map(|(term, coeff)| json!([term.to_string(), coeff]))
                        .collect();
                    json!({
                        "generator": i,
                        "terms": terms,
                        "exponent_sum": w.exponent_sum(i),
                    })
                })
                .collect();
            let report = json!({ "word": w.to_string(), "derivatives": derivatives });
            emit(&output, &[report.to_string()])?;
            Ok(EXIT_OK)
        }
        Command::Present { spec, p, coset_limit, output } => {
            let group = parse_group_spec(&spec_value(&spec)?)?;
            let (pres, _) = pgroup_presentation(&group.group, p)?;
            let certificate = coset_enumeration(&pres, &[], coset_limit)?;
            let exponent_sums: Vec<Vec<i64>> = pres
                .relators
                .iter()
                .map(|r| (0..pres.generator_count).map(|i| r.exponent_sum(i)).collect())
                .collect();
            let report = json!({
                "group": group.name,
                "p": p,
                "generators": pres.generator_count,
                "relators": pres.relators.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                "exponent_sums": exponent_sums,
                "order_certificate": certificate,
                "group_order": group.group.order(),
            });
            emit(&output, &[report.to_string()])?;
            if certificate != group.group.order() {
                return Err(Failure {
                    code: EXIT_COMPUTE,
                    message: "order certificate mismatch".into(),
                });
            }
            Ok(EXIT_OK)
        }
        Command::Liftable { spec, p, stabilizer_of, output } => {
            let (name, ext, action) = resolve_extension(&spec, p)?;
            let store = PresentationStore::new(Arc::clone(&ext.base), ext.p);
            let points: Vec<usize> = match stabilizer_of {
                Some(point) => vec![point],
                None => action.orbits().iter().map(|o| o[0]).collect(),
            };
            let mut lines = Vec::new();
            for point in points {
                let stab = action.stabilizer(point)?;
                let report = is_liftable(&ext, &store, &stab)?;
                lines.push(
                    json!({
                        "extension": name,
                        "action": action.name,
                        "point": point,
                        "stabilizer_order": report.subgroup.order(),
                        "liftable": report.liftable,
                        "method_obstruction": report.method_obstruction,
                        "method_coboundary": report.method_coboundary,
                        "method_brute_force": report.method_brute_force,
                        "obstructions": report.obstructions,
                        "witness": witness_json(&report.witness),
                    })
                    .to_string(),
                );
            }
            emit(&output, &lines)?;
            Ok(EXIT_OK)
        }
        Command::Subext { spec, p, output } => {
            let (name, ext, action) = resolve_extension(&spec, p)?;
            let store = PresentationStore::new(Arc::clone(&ext.base), ext.p);
            let condition = necessary_condition(&ext, &store, &action)?;
            let witness = subextension_exists(&ext, &action)?;
            let implication_holds = witness.is_none() || condition.holds;
            let report = json!({
                "extension": name,
                "action": action.name,
                "action_degree": action.degree,
                "subextension_exists": witness.is_some(),
                "condition_holds": condition.holds,
                "implication_holds": implication_holds,
                "stabilizer_orders": condition.orbits.iter()
                    .map(|o| o.stabilizer.order()).collect::<Vec<_>>(),
                "liftable_per_orbit": condition.orbits.iter()
                    .map(|o| o.liftable).collect::<Vec<_>>(),
            });
            emit(&output, &[report.to_string()])?;
            if !implication_holds {
                eprintln!("theorem violation: subextension exists but the condition fails");
                return Ok(EXIT_VIOLATION);
            }
            Ok(EXIT_OK)
        }
        Command::Sweep { orders_upto, p, jobs, coset_limit, seed, output } => {
            if let Some(jobs) = jobs {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(jobs)
                    .build_global()
                    .map_err(|e| Failure { code: EXIT_COMPUTE, message: e.to_string() })?;
            }
            let max_group_order = std::env::var("LIFTCHECK_MAX_ORDER")
                .ok()
                .and_then(|v| v.parse().ok())
                .unwrap_or(64);
            let _ = coset_limit;
            let groups = groups_of_order_upto(orders_upto.min(max_group_order));
            let options = SweepOptions { max_group_order, ..SweepOptions::default() };
            let outcome = theorem_sweep(&groups, p, &options)?;
            let mut lines = Vec::with_capacity(outcome.reports.len());
            for report in &outcome.reports {
                lines.push(serde_json::to_string(report).expect("reports serialize"));
            }
            emit(&output, &lines)?;
            let violations =
                outcome.reports.iter().filter(|r| !r.implication_holds).count();
            eprintln!(
                "sweep: {} cases, {} violations, {} skipped (p = {p}, seed = {seed})",
                outcome.reports.len(),
                violations,
                outcome.skipped.len()
            );
            for line in &outcome.skipped {
                eprintln!("skipped: {line}");
            }
            if violations > 0 {
                return Ok(EXIT_VIOLATION);
            }
            Ok(EXIT_OK)
        }
    }
}
