//! Command-line front end: partition polynomials, tame masses per
//! conjugacy class, conductor computations, the wild enumeration commands,
//! and the orchestrated verification suites.
//!
//! Exit status: 0 when every requested identity holds, 1 on an identity
//! failure, 2 on a configuration error, 3 when an enumeration budget or
//! working precision is exhausted.

mod spec;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use galmass::masses::{mckay_tame_check, tame_mass_with_terms, CountingChoice, Sign};
use galmass::padic::{
    bhargava_check, per_partition_mass, serre_mass_check, wild_hilb_mass, Catalog, PadicError,
    DEFAULT_TUPLE_BUDGET, SLOW_TUPLE_BUDGET,
};
use galmass::partitions::{
    bhargava_rhs, count_partitions_into_parts, hilbert_origin_count, partition_count, Partition,
    MAX_PARTITION_N,
};
use galmass::qlaurent::MassPoly;
use galmass::reps::{conductors_from_filtration, wild_cyclic_jordan, RamFiltration};

#[derive(Parser)]
#[command(name = "galmass", version, about = "Exact mass formulas for local Galois representations")]
struct Cli {
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Directory for the on-disk extension cache.
    #[arg(long, global = true, env = "CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
}

#[derive(Subcommand)]
enum Command {
    /// Partition counts and the two closed-form polynomials.
    Partitions {
        #[arg(long)]
        n: u32,
        /// Also report P(n, parts), the count into exactly this many parts.
        #[arg(long)]
        parts: Option<u32>,
    },
    /// Total mass over Frobenius-stable classes, as a polynomial in q.
    Mass {
        /// Group: Sn:<n>, Cyclic:<l>, or JSON {"degree", "generators"}.
        #[arg(long)]
        group: String,
        /// Representation: sigma, 2sigma, regular, or a JSON tree.
        #[arg(long)]
        rep: String,
        /// Counting function: artin, swan, tame, v, or weight.
        #[arg(long)]
        counting: String,
        /// Exponent orientation; defaults to the counting function's
        /// convention (masses use -c, weight sums use +w).
        #[arg(long)]
        sign: Option<SignArg>,
        /// Residue cardinality class mod the group exponent.
        #[arg(long = "q-class", default_value_t = 1)]
        q_class: u64,
    },
    /// Check the weight class sum against an expected polynomial.
    MckayCheck {
        #[arg(long)]
        group: String,
        #[arg(long)]
        rep: String,
        #[arg(long = "q-class", default_value_t = 1)]
        q_class: u64,
        /// Expected polynomial as MassPoly JSON.
        #[arg(long, conflicts_with = "expect_hilbert")]
        expected: Option<String>,
        /// Expect the degree-n punctual point-count polynomial.
        #[arg(long)]
        expect_hilbert: Option<u32>,
    },
    /// The q <-> 1/q duality between the two partition polynomials.
    Duality {
        #[arg(long)]
        n: u32,
    },
    /// Conductors from a ramification filtration, or the cyclic
    /// Jordan-block closed forms.
    Conductor {
        /// JSON array of [ram_index, codim] pairs.
        #[arg(long, conflicts_with = "jordan")]
        filtration: Option<String>,
        /// n,p,j for the Jordan-block invariants.
        #[arg(long, value_delimiter = ',')]
        jordan: Option<Vec<u64>>,
    },
    /// Wild-case enumeration and mass checks over Q_p.
    #[command(subcommand)]
    Padic(PadicCmd),
    /// Run a named verification suite.
    Verify {
        /// One of: tame-mckay, wild-mass, comparisons.
        #[arg(long)]
        suite: String,
        /// Raise the enumeration budget (admits p = 2, n = 4).
        #[arg(long)]
        slow: bool,
    },
}

#[derive(Subcommand)]
enum PadicCmd {
    /// Enumerate the totally ramified degree-e extensions of the unramified
    /// degree-f base over Q_p.
    Enumerate {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        f: u32,
        #[arg(long)]
        e: u32,
        #[arg(long)]
        slow: bool,
    },
    /// The exact totally-ramified mass identity for one (base, e).
    SerreCheck {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        f: u32,
        #[arg(long)]
        e: u32,
        #[arg(long)]
        slow: bool,
    },
    /// Mass of degree-n etale algebras against the partition polynomial.
    Bhargava {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        slow: bool,
    },
    /// Per-partition refinement of the etale mass.
    PerPartition {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
        /// Restrict to one partition, written as comma-separated parts.
        #[arg(long, value_delimiter = ',')]
        partition: Option<Vec<u32>>,
        #[arg(long)]
        slow: bool,
    },
    /// The wild point-count identity at q = p.
    Hilb {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        slow: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, all_ok)) => {
            print_report(&report, cli.format);
            if all_ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(failure_code(&err))
        }
    }
}

fn failure_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<PadicError>() {
        Some(
            PadicError::BudgetExceeded { .. }
            | PadicError::PrecisionExhausted
            | PadicError::Indeterminate,
        ) => 3,
        _ => 2,
    }
}

fn catalog_for(cli_cache: &Option<PathBuf>, slow: bool) -> Catalog {
    let budget = if slow { SLOW_TUPLE_BUDGET } else { DEFAULT_TUPLE_BUDGET };
    Catalog::new(budget, cli_cache.clone())
}

fn run(cli: &Cli) -> Result<(Value, bool)> {
    match &cli.command {
        Command::Partitions { n, parts } => partitions_report(*n, *parts),
        Command::Mass { group, rep, counting, sign, q_class } => {
            mass_report(group, rep, counting, *sign, *q_class)
        }
        Command::MckayCheck { group, rep, q_class, expected, expect_hilbert } => {
            mckay_report(group, rep, *q_class, expected.as_deref(), *expect_hilbert)
        }
        Command::Duality { n } => duality_report(*n),
        Command::Conductor { filtration, jordan } => {
            conductor_report(filtration.as_deref(), jordan.as_deref())
        }
        Command::Padic(cmd) => padic_report(cli, cmd),
        Command::Verify { suite, slow } => verify_report(cli, suite, *slow),
    }
}

fn partitions_report(n: u32, parts: Option<u32>) -> Result<(Value, bool)> {
    if n == 0 || n > MAX_PARTITION_N {
        return Err(anyhow!("n must be in 1..={MAX_PARTITION_N}"));
    }
    let mut report = json!({
        "schema": 1,
        "n": n,
        "count": partition_count(n),
        "bhargava_polynomial": bhargava_rhs(n).to_json(),
        "hilbert_polynomial": hilbert_origin_count(n).to_json(),
    });
    if let Some(r) = parts {
        report["parts"] = json!(r);
        report["count_into_parts"] = json!(count_partitions_into_parts(n, r));
    }
    Ok((report, true))
}

fn mass_report(
    group: &str,
    rep: &str,
    counting: &str,
    sign: Option<SignArg>,
    q_class: u64,
) -> Result<(Value, bool)> {
    let model = spec::parse_group(group)?;
    let tame_rep = spec::parse_rep(rep, &model)?;
    let function = galmass::masses::counting_by_name(counting)
        .ok_or_else(|| anyhow!("unknown counting function '{counting}'; use artin, swan, tame, v, or weight"))?;
    let choice = match sign {
        None => CountingChoice::with_default_sign(function),
        Some(SignArg::Plus) => CountingChoice::new(function, Sign::Plus),
        Some(SignArg::Minus) => CountingChoice::new(function, Sign::Minus),
    };
    let (mass, terms) = tame_mass_with_terms(&tame_rep, &choice, q_class)?;
    let report = json!({
        "schema": 1,
        "group": model.describe(),
        "rep": rep,
        "counting": choice.function.name(),
        "sign": if matches!(choice.sign, Sign::Plus) { "+" } else { "-" },
        "q_class": q_class,
        "mass": mass.to_json(),
        "mass_display": mass.to_string(),
        "per_class": terms.iter().map(class_term_json).collect::<Vec<_>>(),
    });
    Ok((report, true))
}

fn class_term_json(t: &galmass::masses::ClassTerm) -> Value {
    json!({
        "class": t.label,
        "order": t.repr_order,
        "size": t.size.to_string(),
        "stable": t.stable,
        "value": t.value.to_string(),
        "exponent": t.exponent.as_ref().map(|e| e.to_string()),
    })
}

fn mckay_report(
    group: &str,
    rep: &str,
    q_class: u64,
    expected: Option<&str>,
    expect_hilbert: Option<u32>,
) -> Result<(Value, bool)> {
    let expected = match (expected, expect_hilbert) {
        (Some(json_text), None) => {
            let v: Value = serde_json::from_str(json_text).context("expected polynomial JSON")?;
            MassPoly::from_json(&v)?
        }
        (None, Some(n)) => hilbert_origin_count(n),
        _ => return Err(anyhow!("provide exactly one of --expected or --expect-hilbert")),
    };
    let model = spec::parse_group(group)?;
    let tame_rep = spec::parse_rep(rep, &model)?;
    let report = mckay_tame_check(&tame_rep, q_class, &expected)?;
    let ok = report.ok;
    let value = json!({
        "schema": 1,
        "group": model.describe(),
        "rep": rep,
        "q_class": q_class,
        "ok": ok,
        "computed": report.computed.to_json(),
        "expected": report.expected.to_json(),
        "diff": report.diff.to_json(),
        "per_class": report.per_class.iter().map(class_term_json).collect::<Vec<_>>(),
    });
    Ok((value, ok))
}

fn duality_report(n: u32) -> Result<(Value, bool)> {
    if n == 0 || n > MAX_PARTITION_N {
        return Err(anyhow!("n must be in 1..={MAX_PARTITION_N}"));
    }
    let hilbert = hilbert_origin_count(n);
    let bhargava = bhargava_rhs(n);
    let ok = galmass::masses::duality_check(&bhargava, &hilbert);
    let report = json!({
        "schema": 1,
        "n": n,
        "ok": ok,
        "hilbert_polynomial": hilbert.to_json(),
        "bhargava_polynomial": bhargava.to_json(),
    });
    Ok((report, ok))
}

fn conductor_report(filtration: Option<&str>, jordan: Option<&[u64]>) -> Result<(Value, bool)> {
    match (filtration, jordan) {
        (Some(text), None) => {
            let steps: Vec<(u64, u64)> =
                serde_json::from_str(text).context("filtration is a JSON array of [ram_index, codim]")?;
            let filt = RamFiltration::new(steps)?;
            let c = conductors_from_filtration(&filt);
            let report = json!({
                "schema": 1,
                "filtration": filt.steps(),
                "artin": c.artin.to_string(),
                "swan": c.swan.to_string(),
                "tame": c.tame,
            });
            Ok((report, true))
        }
        (None, Some(args)) => {
            let [n, p, j] = args else {
                return Err(anyhow!("--jordan takes exactly three values: n,p,j"));
            };
            let inv = wild_cyclic_jordan(*n as u32, *p, *j as u32)?;
            let report = json!({
                "schema": 1,
                "n": n, "p": p, "j": j,
                "artin": inv.artin,
                "tame": inv.tame,
                "weight": inv.weight,
                "two_tame_minus_artin": inv.two_tame_minus_artin(),
                "weight_double": inv.weight_double,
            });
            Ok((report, true))
        }
        _ => Err(anyhow!("provide exactly one of --filtration or --jordan")),
    }
}

fn padic_report(cli: &Cli, cmd: &PadicCmd) -> Result<(Value, bool)> {
    match cmd {
        PadicCmd::Enumerate { p, f, e, slow } => {
            let catalog = catalog_for(&cli.cache_dir, *slow);
            let inv = catalog.extensions(*p, *f, *e)?;
            let report = json!({
                "schema": 1,
                "p": p, "f": f, "e": e,
                "prec_b": inv.prec_b,
                "classified_prec": inv.classified_prec,
                "tuple_count": inv.tuple_count,
                "extensions": inv.extensions,
            });
            Ok((report, true))
        }
        PadicCmd::SerreCheck { p, f, e, slow } => {
            let catalog = catalog_for(&cli.cache_dir, *slow);
            let inv = catalog.extensions(*p, *f, *e)?;
            let serre = serre_mass_check(&inv);
            let report = json!({
                "schema": 1,
                "p": p, "f": f, "e": e,
                "classes": inv.extensions.len(),
                "lhs": serre.lhs.to_string(),
                "rhs": serre.rhs.to_string(),
                "ok": serre.ok,
            });
            Ok((report, serre.ok))
        }
        PadicCmd::Bhargava { p, n, slow } => {
            let catalog = catalog_for(&cli.cache_dir, *slow);
            let check = bhargava_check(&catalog, *p, *n)?;
            let report = json!({
                "schema": 1,
                "p": p, "n": n,
                "lhs": check.lhs.to_string(),
                "rhs": check.rhs.to_string(),
                "ok": check.ok,
            });
            Ok((report, check.ok))
        }
        PadicCmd::PerPartition { p, n, partition, slow } => {
            let catalog = catalog_for(&cli.cache_dir, *slow);
            let partitions = match partition {
                Some(parts) => vec![Partition::new(parts.clone(), *n)?],
                None => galmass::partitions::enumerate_partitions(*n),
            };
            let mut rows = Vec::new();
            let mut all_ok = true;
            for pt in &partitions {
                let check = per_partition_mass(&catalog, *p, *n, pt)?;
                all_ok &= check.ok;
                rows.push(json!({
                    "partition": pt.parts(),
                    "lhs": check.lhs.to_string(),
                    "rhs": check.rhs.to_string(),
                    "ok": check.ok,
                }));
            }
            let report = json!({
                "schema": 1,
                "p": p, "n": n,
                "ok": all_ok,
                "rows": rows,
            });
            Ok((report, all_ok))
        }
        PadicCmd::Hilb { p, n, slow } => {
            let catalog = catalog_for(&cli.cache_dir, *slow);
            let check = wild_hilb_mass(&catalog, *p, *n)?;
            let report = json!({
                "schema": 1,
                "p": p, "n": n,
                "lhs": check.lhs.to_string(),
                "rhs": check.rhs.to_string(),
                "ok": check.ok,
            });
            Ok((report, check.ok))
        }
    }
}

fn verify_report(cli: &Cli, suite: &str, slow: bool) -> Result<(Value, bool)> {
    let suite = suites::suite_by_name(suite).ok_or_else(|| {
        let names: Vec<&str> = suites::registry().iter().map(|s| s.name()).collect();
        anyhow!("unknown suite '{suite}'; available: {}", names.join(", "))
    })?;
    let ctx = suites::SuiteContext { slow, catalog: catalog_for(&cli.cache_dir, slow) };
    let report = suite.run(&ctx)?;
    let ok = report.ok();
    Ok((report.to_json(), ok))
}

fn print_report(report: &Value, format: Format) {
    match format {
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(report).expect("report serializes"));
        }
        Format::Table => print_table(report, 0),
    }
}

fn print_table(v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match val {
                    Value::Array(_) | Value::Object(_) => {
                        println!("{pad}{k}:");
                        print_table(val, indent + 1);
                    }
                    _ => println!("{pad}{k}: {}", scalar_str(val)),
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match item {
                    Value::Array(_) | Value::Object(_) => {
                        println!("{pad}-");
                        print_table(item, indent + 1);
                    }
                    _ => println!("{pad}- {}", scalar_str(item)),
                }
            }
        }
        _ => println!("{pad}{}", scalar_str(v)),
    }
}

fn scalar_str(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
