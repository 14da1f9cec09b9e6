//! `cosym`: build `L`-simplex sets of partial monoids, check them, and
//! export their Hall algebras and TQFT invariants as JSON.
//!
//! Exit codes: 0 all checks passed, 1 a check failed, 2 bad input or failed
//! construction, 3 I/O failure.

use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use cosym::constructions::simplex_set;
use cosym::export::{algebra_json, linear_json, report_json, span_json, structured_set_json, to_pretty};
use cosym::hall::{
    check_associativity, check_commutativity, check_frobenius, check_unit, hall_algebra, standard_presentation,
    verify_presentation, HallAlgebra,
};
use cosym::monoid_spec::{parse_monoid_kind, MonoidKind};
use cosym::suite::{resolve_element, run_check_suite};
use cosym::tqft::{
    closed_surface_word, closed_word_routes, evaluate_linear, evaluate_span, generator_spans, CobordismWord,
    GeneratorSpans, DEFAULT_APEX_LIMIT,
};
use cosym::{CheckReport, PartialMonoid, StructuredSet};

#[derive(Parser)]
#[command(name = "cosym", version, about = "Finite 2-Segal cosymmetric sets, Hall algebras and span TQFTs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// trunc:L, zmod:m, pset-disjoint:k, pset-union:k or table:<path>
    #[arg(long)]
    monoid: String,
    /// Label of the element L, e.g. 2 or {a,b}
    #[arg(long = "L")]
    top: String,
    /// Truncation level N
    #[arg(long, default_value_t = 4)]
    level: usize,
    /// Write JSON here instead of standard output (a directory for export)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Abort span evaluation when an apex exceeds this size
    #[arg(long, default_value_t = DEFAULT_APEX_LIMIT)]
    apex_limit: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Run every relation, pullback, construction and algebra check
    Check(Common),
    /// Export the Hall algebra and its checks
    Hall(Common),
    /// Evaluate a cobordism word or the closed-surface table
    Tqft {
        #[command(flatten)]
        common: Common,
        /// Layers separated by ';', generators by ','
        #[arg(long)]
        word: Option<String>,
        /// Tabulate closed surfaces of genus 0..=G
        #[arg(long)]
        genus: Option<usize>,
    },
    /// Write the structured set, the algebra and optionally a genus table
    Export {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        genus: Option<usize>,
    },
}

enum Failure {
    Input(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Io(_) => 3,
        }
    }
}

fn input<E: Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

/// The document to emit and whether every check in it passed.
struct Output {
    value: Value,
    passed: bool,
}

struct Setup {
    kind: MonoidKind,
    monoid: PartialMonoid,
    top: usize,
}

fn setup(c: &Common) -> Result<Setup, Failure> {
    let kind = parse_monoid_kind(&c.monoid).map_err(input)?;
    let monoid = kind.build().map_err(input)?;
    let top = resolve_element(&monoid, &c.top).map_err(input)?;
    Ok(Setup { kind, monoid, top })
}

fn build_set(s: &Setup, level: usize) -> Result<StructuredSet, Failure> {
    if level < 2 {
        return Err(Failure::Input(format!("--level must be at least 2, got {level}")));
    }
    simplex_set(&s.monoid, s.top, level).map_err(input)
}

fn algebra_checks(s: &Setup, a: &HallAlgebra) -> Vec<(&'static str, CheckReport)> {
    let mut out = vec![
        ("associativity", check_associativity(a)),
        ("commutativity", check_commutativity(a)),
        ("unit", check_unit(a)),
        ("frobenius", check_frobenius(a)),
    ];
    if let Some((p, images)) = standard_presentation(&s.kind, &s.monoid, s.top) {
        out.push(("presentation", verify_presentation(a, &p, &images)));
    }
    out
}

fn hall_document(s: &Setup, a: &HallAlgebra) -> Output {
    let checks = algebra_checks(s, a);
    let passed = checks.iter().all(|(_, r)| r.passed);
    let mut value = algebra_json(a);
    value["checks"] = checks.iter().map(|(k, r)| (k.to_string(), report_json(r))).collect();
    value["passed"] = json!(passed);
    value["presentation"] = json!(standard_presentation(&s.kind, &s.monoid, s.top).map(|(p, _)| p.to_string()));
    Output { value, passed }
}

fn genus_table(g: &GeneratorSpans, a: &HallAlgebra, max: usize, limit: usize) -> Result<Output, Failure> {
    let mut rows = Vec::new();
    let mut passed = true;
    for genus in 0..=max {
        let w = closed_surface_word(genus);
        let r = closed_word_routes(&w, g, a, limit).map_err(input)?;
        passed &= r.agree();
        rows.push(json!({
            "genus": genus,
            "word": w.to_string(),
            "value": r.matrix_value.to_string(),
            "span_value": r.span_value.to_string(),
            "span_apex": r.span_apex,
            "agree": r.agree(),
        }));
    }
    Ok(Output {
        value: json!({ "invariants": rows, "passed": passed }),
        passed,
    })
}

fn word_document(w: &CobordismWord, g: &GeneratorSpans, a: &HallAlgebra, limit: usize) -> Result<Output, Failure> {
    let span = evaluate_span(w, g, limit).map_err(input)?;
    let mut value = span_json(w, &span);
    // the linear route exists only for a nondegenerate pairing
    let linear = evaluate_linear(w, a).ok();
    let mut passed = true;
    if let Some(m) = &linear {
        value["matrix"] = linear_json(w, m)["matrix"].clone();
        let agree = &cosym::tqft::linearize(&span) == m;
        value["routes_agree"] = json!(agree);
        passed = agree;
    } else {
        value["matrix"] = Value::Null;
    }
    value["passed"] = json!(passed);
    Ok(Output { value, passed })
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))
}

fn emit(out: &Option<PathBuf>, doc: &Output) -> Result<(), Failure> {
    let text = to_pretty(&doc.value);
    match out {
        Some(p) => write_file(p, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Check(c) => {
            let s = setup(&c)?;
            if c.level < 2 {
                return Err(Failure::Input(format!("--level must be at least 2, got {}", c.level)));
            }
            let outcome = run_check_suite(Some(&s.kind), &s.monoid, s.top, c.level).map_err(input)?;
            let doc = Output {
                passed: outcome.passed(),
                value: outcome.json,
            };
            emit(&c.out, &doc)?;
            Ok(doc.passed)
        }
        Command::Hall(c) => {
            let s = setup(&c)?;
            let a = hall_algebra(&build_set(&s, c.level)?).map_err(input)?;
            let doc = hall_document(&s, &a);
            emit(&c.out, &doc)?;
            Ok(doc.passed)
        }
        Command::Tqft { common: c, word, genus } => {
            let s = setup(&c)?;
            let x = build_set(&s, c.level)?;
            let g = generator_spans(&x).map_err(input)?;
            let a = hall_algebra(&x).map_err(input)?;
            let doc = match (word, genus) {
                (Some(w), None) => word_document(&CobordismWord::parse(&w).map_err(input)?, &g, &a, c.apex_limit)?,
                (None, Some(max)) => genus_table(&g, &a, max, c.apex_limit)?,
                (None, None) => genus_table(&g, &a, 2, c.apex_limit)?,
                (Some(_), Some(_)) => return Err(Failure::Input("give --word or --genus, not both".into())),
            };
            emit(&c.out, &doc)?;
            Ok(doc.passed)
        }
        Command::Export { common: c, genus } => {
            let s = setup(&c)?;
            let dir = c.out.clone().ok_or_else(|| Failure::Input("export needs --out <directory>".into()))?;
            let x = build_set(&s, c.level)?;
            let a = hall_algebra(&x).map_err(input)?;
            std::fs::create_dir_all(&dir).map_err(|e| Failure::Io(format!("cannot create {}: {e}", dir.display())))?;
            write_file(&dir.join("structured_set.json"), &to_pretty(&structured_set_json(&x)))?;
            let hall = hall_document(&s, &a);
            write_file(&dir.join("algebra.json"), &to_pretty(&hall.value))?;
            let mut passed = hall.passed;
            if let Some(max) = genus {
                let g = generator_spans(&x).map_err(input)?;
                let table = genus_table(&g, &a, max, c.apex_limit)?;
                write_file(&dir.join("tqft.json"), &to_pretty(&table.value))?;
                passed &= table.passed;
            }
            Ok(passed)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            match &f {
                Failure::Input(m) => eprintln!("error: {m}"),
                Failure::Io(m) => eprintln!("I/O error: {m}"),
            }
            ExitCode::from(f.code())
        }
    }
}
