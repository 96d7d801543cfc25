use std::fmt::Write;

use cellcat::sl2::{canonical_basis, canonical_basis_by_tensoring, compare_bases, BasedModuleData, Conventions};
use clap::Subcommand;
use serde_json::json;

use crate::tl::status;
use crate::{input_error, CliError, Report};

const MAX_LENGTH: usize = 12;
/// Beyond this length the basis is built by tensoring instead of the triangular solve.
const SOLVE_LIMIT: usize = 8;

#[derive(Subcommand)]
pub enum QgrpCommand {
    /// Canonical basis of the n-th tensor power with its partition by highest weight
    Canon { n: usize },
    /// Match the cup-diagram invariants against the dual canonical invariants
    Compare { n: usize },
    /// Print the convention choices
    Conventions,
}

pub fn run(cmd: &QgrpCommand) -> Result<Report, CliError> {
    match cmd {
        QgrpCommand::Canon { n } => canon(*n),
        QgrpCommand::Compare { n } => compare(*n),
        QgrpCommand::Conventions => {
            let c = Conventions::fixed();
            let json = json!(c);
            let mut text = String::new();
            for (k, v) in json.as_object().expect("struct") {
                writeln!(text, "{k}: {}", v.as_str().map(str::to_owned).unwrap_or_else(|| v.to_string())).unwrap();
            }
            Ok(Report { json, text, passed: true })
        }
    }
}

fn basis(n: usize) -> Result<BasedModuleData, CliError> {
    if n > MAX_LENGTH {
        return Err(input_error(format!("tensor length must be at most {MAX_LENGTH}")));
    }
    let built = if n <= SOLVE_LIMIT {
        canonical_basis(n)
    } else {
        canonical_basis_by_tensoring(n)
    };
    built.map_err(|e| input_error(e.to_string()))
}

fn canon(n: usize) -> Result<Report, CliError> {
    let data = basis(n)?;
    let sizes = data.partition_sizes();
    let hi = data.hi_sizes();
    let mut text = format!("n = {n}: {} elements\n", data.elements.len());
    for (l, k) in sizes.iter().rev() {
        writeln!(text, "  B[{l}]: {k} elements, {} hi", hi.get(l).copied().unwrap_or(0)).unwrap();
    }
    for e in &data.elements {
        let tags = [(e.hi, " hi"), (e.lo, " lo")].iter().filter(|(b, _)| *b).map(|(_, t)| *t).collect::<String>();
        writeln!(text, "b_{} (lambda {}{tags}) = {:?}", e.leading, e.lambda, e.vector).unwrap();
    }
    Ok(Report {
        json: json!({
            "n": n,
            "conventions": data.conventions(),
            "partition_sizes": sizes,
            "hi_sizes": hi,
            "elements": data.elements,
        }),
        text,
        passed: true,
    })
}

fn compare(n: usize) -> Result<Report, CliError> {
    if n % 2 == 1 {
        return Err(input_error(format!("tensor length {n} is odd, so there are no invariants")));
    }
    let data = basis(n)?;
    let report = compare_bases(&data).map_err(|e| input_error(e.to_string()))?;
    let mut text = format!("n = {n}: {}\n", if report.matched { "matched" } else { "not matched" });
    for a in &report.attempts {
        writeln!(text, "normalization {}: {}", a.normalization, if a.matched { "matched" } else { "not matched" }).unwrap();
        for p in &a.pairs {
            let sign = if p.sign < 0 { "-" } else { "" };
            writeln!(text, "  b*_{} = {sign}v^{} {}", p.canonical, p.exponent, p.diagram).unwrap();
        }
        for u in &a.unmatched {
            writeln!(text, "  b*_{u} unmatched").unwrap();
        }
    }
    let mut json = json!(report);
    json["conventions"] = json!(data.conventions());
    json["status"] = json!(status(report.matched));
    Ok(Report {
        json,
        text,
        passed: report.matched,
    })
}
