use std::fmt::Write;

use cellcat::cellular::Verifier;
use cellcat::tl::{enumerate_diagrams, relation_suite, tl_cell_datum, TLDiagram, TLMorphism};
use clap::Subcommand;
use serde_json::{json, Value};

use crate::{input_error, CliError, Report};

const MAX_BOUNDARY: usize = 24;
const MAX_OBJECT: usize = 8;

#[derive(Subcommand)]
pub enum TlCommand {
    /// Number of diagrams n -> m
    Dim { n: usize, m: usize },
    /// Composite of two morphisms given as JSON, the first applied first
    Compose { first: String, second: String },
    /// Check the defining relations of the generators e_i
    Relations {
        #[arg(long, default_value_t = 5)]
        max_n: usize,
    },
    /// Gram matrix of the cell with t through strands on n points
    Gram { n: usize, t: usize },
}

pub fn run(cmd: &TlCommand) -> Result<Report, CliError> {
    match cmd {
        TlCommand::Dim { n, m } => dim(*n, *m),
        TlCommand::Compose { first, second } => compose(first, second),
        TlCommand::Relations { max_n } => relations(*max_n),
        TlCommand::Gram { n, t } => gram(*n, *t),
    }
}

fn dim(n: usize, m: usize) -> Result<Report, CliError> {
    if n + m > MAX_BOUNDARY {
        return Err(input_error(format!("n + m must be at most {MAX_BOUNDARY}")));
    }
    let d = enumerate_diagrams(n, m).len();
    Ok(Report {
        json: json!({ "n": n, "m": m, "dimension": d }),
        text: format!("{d}\n"),
        passed: true,
    })
}

/// Accepts a morphism `{"n", "m", "terms": [{"diagram", "coeff"}]}` or a bare diagram
/// `{"n", "m", "pairs"}`.
fn parse_morphism(arg: &str) -> Result<TLMorphism, CliError> {
    let value: Value = serde_json::from_str(arg).map_err(|e| input_error(format!("malformed JSON {arg:?}: {e}")))?;
    let parsed = if value.get("terms").is_some() {
        serde_json::from_value::<TLMorphism>(value)
    } else {
        serde_json::from_value::<TLDiagram>(value).map(TLMorphism::from_diagram)
    };
    parsed.map_err(|e| input_error(format!("invalid morphism {arg:?}: {e}")))
}

fn compose(first: &str, second: &str) -> Result<Report, CliError> {
    let f = parse_morphism(first)?;
    let g = parse_morphism(second)?;
    let h = f.compose(&g).map_err(|e| input_error(e.to_string()))?;
    Ok(Report {
        text: format!("{h:?}\n"),
        json: serde_json::to_value(&h).expect("morphisms serialize"),
        passed: true,
    })
}

fn relations(max_n: usize) -> Result<Report, CliError> {
    if !(1..=MAX_OBJECT).contains(&max_n) {
        return Err(input_error(format!("--max-n must lie in 1..={MAX_OBJECT}")));
    }
    let checks = relation_suite(max_n);
    let passed = checks.iter().all(|c| c.holds);
    let mut text = String::new();
    for c in &checks {
        writeln!(text, "[{}] n={} {}", if c.holds { "pass" } else { "FAIL" }, c.n, c.relation).unwrap();
    }
    writeln!(text, "status: {}", status(passed)).unwrap();
    Ok(Report {
        json: json!({ "max_n": max_n, "checks": checks, "status": status(passed) }),
        text,
        passed,
    })
}

fn gram(n: usize, t: usize) -> Result<Report, CliError> {
    if n > MAX_OBJECT {
        return Err(input_error(format!("n must be at most {MAX_OBJECT}")));
    }
    if t > n || (n - t) % 2 == 1 {
        return Err(input_error(format!("no cell with {t} through strands on {n} points")));
    }
    let datum = tl_cell_datum(n);
    let g = match Verifier::new(&datum).bilinear_form(n, t) {
        Ok(g) => g,
        Err(e) => {
            return Ok(Report {
                text: format!("[FAIL] Gram form is not well defined: {e}\n"),
                json: json!({ "n": n, "t": t, "status": "fail", "witness": e.witness }),
                passed: false,
            })
        }
    };
    let det = g.determinant();
    let mut text = String::new();
    for i in 0..g.matrix.rows() {
        let row: Vec<String> = (0..g.matrix.cols()).map(|j| g.matrix.get(i, j).to_string()).collect();
        writeln!(text, "[{}]", row.join(", ")).unwrap();
    }
    writeln!(text, "det = {det}").unwrap();
    let mut json = serde_json::to_value(&g).expect("forms serialize");
    json["determinant"] = json!(det);
    json["determinant_display"] = json!(det.to_string());
    Ok(Report { json, text, passed: true })
}

pub fn status(passed: bool) -> &'static str {
    if passed {
        "pass"
    } else {
        "fail"
    }
}
