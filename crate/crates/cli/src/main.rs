use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ldp_core::diophantine::{verify_ksq_table, verify_search};
use ldp_core::dualgraph::table::verify_table_e35;
use ldp_core::fixtures::{run_fixture, FIXTURES};
use ldp_core::lattice::run_script_file;
use ldp_core::planecurve::{intersection_multiplicity, verify_special_config, FieldSpec, HomPoly, ProjPoint};
use ldp_core::rational::{self, Rational};
use ldp_core::{parse_dynkin, verify_all, DualGraph, Report};

#[derive(Parser)]
#[command(name = "ldp", version, about = "Exact checks for rank-one log del Pezzo surfaces")]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Coefficients, gaps, determinants and discrepancies of a Dynkin type.
    Graph {
        /// Bracket notation, e.g. "[2,3,2^2]" or "2[3]+[2^5]".
        expr: String,
        #[arg(value_enum, default_value_t = GraphQuery::All)]
        what: GraphQuery,
        /// Compare the (single or total) value with this fraction.
        #[arg(long)]
        expect: Option<String>,
    },
    /// Regenerate a table and compare it with the embedded values.
    Table {
        #[arg(value_enum)]
        which: TableName,
        /// Genus at which to instantiate the K^2 table.
        #[arg(long)]
        g: Option<i64>,
    },
    /// Run a preset search and compare with the expected solution set.
    Search {
        /// One of D1..D5, GEN-1..GEN-3.
        id: String,
        /// Split the enumeration across threads.
        #[arg(long)]
        parallel: bool,
    },
    /// Run a construction script and evaluate its `expect` lines.
    Construct {
        /// Script file.
        #[arg(required_unless_present = "fixture", conflicts_with = "fixture")]
        file: Option<PathBuf>,
        /// Name of a bundled construction instead of a file.
        #[arg(long)]
        fixture: Option<String>,
    },
    /// Plane-curve computations over Q or F_p.
    Curves {
        #[command(subcommand)]
        action: CurvesAction,
    },
    /// Run every embedded check.
    VerifyAll {
        #[arg(long)]
        parallel: bool,
    },
}

#[derive(Subcommand)]
enum CurvesAction {
    /// Check the special cuspidal configuration in the given characteristic.
    VerifyConfig {
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
    },
    /// Local intersection multiplicity of two curves at a point.
    Intersect {
        f: String,
        g: String,
        /// Point as x:y:z.
        #[arg(long)]
        at: String,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        #[arg(long)]
        expect: Option<String>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphQuery {
    Coeff,
    Gap,
    Det,
    Discrepancies,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableName {
    E35,
    Ksq,
}

/// Input or usage problems; reported with exit code 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn vector_text(v: &[Rational]) -> String {
    format!("[{}]", v.iter().map(rational::format).collect::<Vec<_>>().join(", "))
}

fn graph_report(expr: &str, what: GraphQuery, expect: Option<&str>) -> Result<Report, UsageError> {
    let d = parse_dynkin(expr)?;
    if d.is_empty() {
        return Err(UsageError("empty Dynkin type".into()));
    }
    let mut r = Report::new(format!("graph {expr}"));
    let mut values: Vec<(String, String, String)> = Vec::new();
    let mut total = Rational::from_integer(0.into());
    let graphs: &[DualGraph] = d.components();
    for g in graphs {
        let name = g.to_string();
        let disc = match g.discrepancies() {
            Ok(v) => v,
            Err(e) => {
                r.record("negative definite", &name, "true", e.to_string(), false);
                continue;
            }
        };
        let coeff = disc.max();
        let gap = g.gap().expect("negative definite");
        total += &gap;
        let want = |q: GraphQuery| what == q || what == GraphQuery::All;
        if want(GraphQuery::Coeff) {
            values.push(("coeff".into(), name.clone(), rational::format(&coeff)));
        }
        if want(GraphQuery::Gap) {
            values.push(("gap".into(), name.clone(), rational::format(&gap)));
        }
        if want(GraphQuery::Det) {
            values.push(("det".into(), name.clone(), g.determinant().to_string()));
        }
        if want(GraphQuery::Discrepancies) {
            values.push(("discrepancies".into(), name.clone(), vector_text(&disc.values)));
        }
        if what == GraphQuery::All {
            values.push(("klt".into(), name.clone(), disc.klt.to_string()));
        }
    }
    if graphs.len() > 1 && matches!(what, GraphQuery::Gap | GraphQuery::All) && r.passed() {
        values.push(("gap total".into(), d.to_string(), rational::format(&total)));
    }
    if let Some(e) = expect {
        let last = values.pop().ok_or_else(|| UsageError("nothing to compare".into()))?;
        let single = graphs.len() == 1 && what != GraphQuery::All;
        if !(single || last.0 == "gap total") {
            return Err(UsageError("--expect needs a single value: one component, or `gap` over several".into()));
        }
        let expected = match last.0.as_str() {
            "coeff" | "gap" | "gap total" => rational::format(&rational::parse(e)?),
            _ => e.to_string(),
        };
        for (id, inputs, v) in values {
            r.record(id, inputs, "", v, true);
        }
        r.compare(last.0, last.1, expected, last.2);
    } else {
        for (id, inputs, v) in values {
            r.record(id, inputs, "", v, true);
        }
    }
    Ok(r)
}

fn parse_point(field: FieldSpec, text: &str) -> Result<ProjPoint, UsageError> {
    let parts: Vec<&str> = text.split(':').collect();
    let [x, y, z] = parts.as_slice() else {
        return Err(UsageError(format!("point `{text}` must be x:y:z")));
    };
    let c = [rational::parse(x.trim())?, rational::parse(y.trim())?, rational::parse(z.trim())?];
    Ok(ProjPoint::new(field, c)?)
}

fn run(cli: &Cli) -> Result<Report, UsageError> {
    Ok(match &cli.command {
        Command::Graph { expr, what, expect } => graph_report(expr, *what, expect.as_deref())?,
        Command::Table { which: TableName::E35, g: Some(_) } => {
            return Err(UsageError("--g applies to `table ksq` only".into()))
        }
        Command::Table { which: TableName::E35, g: None } => verify_table_e35(),
        Command::Table { which: TableName::Ksq, g } => verify_ksq_table(*g)?,
        Command::Search { id, parallel } => verify_search(id, *parallel)?,
        Command::Construct { file: Some(path), .. } => run_script_file(path)?.report,
        Command::Construct { fixture: Some(name), .. } => {
            let names: Vec<&str> = FIXTURES.iter().map(|f| f.0).collect();
            run_fixture(name)
                .ok_or_else(|| UsageError(format!("unknown fixture `{name}`; bundled: {}", names.join(", "))))??
                .report
        }
        Command::Construct { .. } => return Err(UsageError("give a script file or --fixture".into())),
        Command::Curves { action: CurvesAction::VerifyConfig { characteristic } } => {
            verify_special_config(FieldSpec::from_characteristic(*characteristic)?)?
        }
        Command::Curves { action: CurvesAction::Intersect { f, g, at, characteristic, expect } } => {
            let field = FieldSpec::from_characteristic(*characteristic)?;
            let (f, g) = (HomPoly::parse(field, f)?, HomPoly::parse(field, g)?);
            let p = parse_point(field, at)?;
            let m = intersection_multiplicity(&f, &g, &p)?;
            let mut r = Report::new(format!("curves intersect --char {characteristic}"));
            let inputs = format!("{f} . {g} at {p}");
            match expect {
                Some(e) => {
                    r.compare("multiplicity", inputs, e.trim(), m.to_string());
                }
                None => r.record("multiplicity", inputs, "", m.to_string(), true),
            }
            r
        }
        Command::VerifyAll { parallel } => verify_all(*parallel),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let text = if cli.json { report.to_json() + "\n" } else { report.render_text() };
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
