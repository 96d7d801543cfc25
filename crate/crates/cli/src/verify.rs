use std::fmt::Write;

use cellcat::cellular::{AxiomReport, CellDatum, InferredOrder, Poset, Verifier, WithPoset};
use cellcat::sl2::{build_sl2_cell_datum, Conventions};
use cellcat::tl::tl_cell_datum;
use clap::{Args, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::tl::status;
use crate::{input_error, CliError, Report};

const SPOT_CHECKS: usize = 64;

#[derive(Args)]
pub struct VerifyArgs {
    /// Which cell datum to verify
    #[arg(value_enum)]
    datum: DatumKind,

    /// Largest object (default 5 for tl, 3 for sl2, whose Hom spaces sit in tensor length 2·max_n)
    #[arg(long)]
    max_n: Option<usize>,

    /// Which order on the labels to verify against
    #[arg(long, value_enum, default_value_t = OrderMode::Declared)]
    order: OrderMode,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DatumKind {
    Tl,
    Sl2,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OrderMode {
    Declared,
    Inferred,
    Both,
    Reversed,
}

pub fn run(args: &VerifyArgs, seed: u64) -> Result<Report, CliError> {
    let (name, default, limit) = match args.datum {
        DatumKind::Tl => ("tl", 5, 8),
        DatumKind::Sl2 => ("sl2", 3, 6),
    };
    let max_n = args.max_n.unwrap_or(default);
    if !(1..=limit).contains(&max_n) {
        return Err(input_error(format!("--max-n for {name} must lie in 1..={limit}")));
    }
    let mut header = json!({ "datum": name, "max_n": max_n, "seed": seed });
    let report = match args.datum {
        DatumKind::Tl => verify_datum(&tl_cell_datum(max_n), args.order, seed),
        DatumKind::Sl2 => {
            header["conventions"] = json!(Conventions::fixed());
            match build_sl2_cell_datum(max_n) {
                Ok(datum) => {
                    let mut report = verify_datum(&datum, args.order, seed);
                    let counting = datum.counting_checks();
                    let holds = counting.iter().all(|c| c.holds);
                    report.json["counting"] = json!(counting);
                    writeln!(report.text, "[{}] counting identities: {} pairs", mark(holds), counting.len()).unwrap();
                    report.passed &= holds;
                    report
                }
                Err(e) => Report {
                    json: json!({ "error": e.to_string() }),
                    text: format!("[FAIL] datum construction: {e}\n"),
                    passed: false,
                },
            }
        }
    };
    let mut json = header;
    if let (Value::Object(out), Value::Object(body)) = (&mut json, report.json) {
        out.extend(body);
    }
    json["status"] = json!(status(report.passed));
    let text = format!(
        "datum: {name} (max_n {max_n})\n{}status: {}\n",
        report.text,
        status(report.passed)
    );
    Ok(Report {
        json,
        text,
        passed: report.passed,
    })
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn poset_text(p: &Poset) -> String {
    let covers: Vec<String> = p.covers().iter().map(|(a, b)| format!("{a}<{b}")).collect();
    if covers.is_empty() {
        "discrete".into()
    } else {
        covers.join(" ")
    }
}

fn verify_datum<D: CellDatum>(datum: &D, mode: OrderMode, seed: u64) -> Report {
    let verifier = Verifier::new(datum);
    let mut text = String::new();
    let mut passed = true;

    let inferred = verifier.infer_cell_order();
    let inferred_json = match &inferred {
        Ok(o) => {
            writeln!(text, "{}", inferred_text(o)).unwrap();
            passed &= o.is_acyclic();
            json!({
                "acyclic": o.is_acyclic(),
                "total": o.is_total(),
                "order": o.order,
                "leakage": o.leakage,
                "cycle": o.cycle,
            })
        }
        Err(e) => {
            writeln!(text, "[FAIL] order inference: {e}").unwrap();
            passed = false;
            json!({ "error": e.to_string() })
        }
    };
    let inferred_order = inferred.ok().and_then(|o| o.order);

    let orders: Vec<(&str, Option<Poset>)> = match mode {
        OrderMode::Declared => vec![("declared", Some(datum.poset().clone()))],
        OrderMode::Reversed => vec![("reversed", Some(datum.poset().reversed()))],
        OrderMode::Inferred => vec![("inferred", inferred_order.clone())],
        OrderMode::Both => vec![
            ("declared", Some(datum.poset().clone())),
            ("inferred", inferred_order.clone()),
        ],
    };
    let mut runs = Vec::new();
    for (name, poset) in orders {
        let Some(poset) = poset else {
            writeln!(text, "[FAIL] {name} order: no acyclic order was inferred").unwrap();
            passed = false;
            runs.push(json!({ "order": name, "status": "fail", "error": "no acyclic order was inferred" }));
            continue;
        };
        let (run, ok) = verify_under(datum, name, &poset, &mut text);
        passed &= ok;
        runs.push(run);
    }
    let mut consistent = Value::Null;
    if mode != OrderMode::Reversed {
        if let Some(order) = &inferred_order {
            let ok = order.is_refined_by(datum.poset());
            writeln!(text, "[{}] inferred order is refined by the declared order", mark(ok)).unwrap();
            consistent = json!(ok);
            passed &= ok;
        }
    }

    let (spot, ok) = spot_checks(&verifier, seed, &mut text);
    passed &= ok;
    Report {
        json: json!({
            "order_mode": match mode {
                OrderMode::Declared => "declared",
                OrderMode::Inferred => "inferred",
                OrderMode::Both => "both",
                OrderMode::Reversed => "reversed",
            },
            "inferred_order": inferred_json,
            "inferred_refined_by_declared": consistent,
            "runs": runs,
            "spot_checks": spot,
        }),
        text,
        passed,
    }
}

fn inferred_text(o: &InferredOrder) -> String {
    match (&o.order, &o.cycle) {
        (Some(p), _) => format!("inferred order: {} ({} leakage edges)", poset_text(p), o.leakage.len()),
        (None, Some(c)) => format!("inferred order: cyclic, {c:?}"),
        (None, None) => "inferred order: none".into(),
    }
}

/// Runs every C-1/C-2/C-3 check with the labels ordered by `poset`. Structure-constant
/// tables are kept only on failing reports.
fn verify_under<D: CellDatum>(datum: &D, name: &str, poset: &Poset, text: &mut String) -> (Value, bool) {
    let reordered = WithPoset::new(datum, poset.clone());
    let reports: Vec<AxiomReport> = Verifier::new(&reordered)
        .verify_all()
        .into_iter()
        .map(|mut r| {
            if r.passed() {
                r.r_tables = None;
            }
            r
        })
        .collect();
    let ok = reports.iter().all(AxiomReport::passed);
    let mut summary = serde_json::Map::new();
    let mut parts = Vec::new();
    for axiom in ["C-1", "C-2", "C-3"] {
        let of_kind: Vec<&AxiomReport> = reports.iter().filter(|r| r.axiom == axiom).collect();
        let good = of_kind.iter().filter(|r| r.passed()).count();
        summary.insert(axiom.into(), json!({ "checked": of_kind.len(), "passed": good }));
        parts.push(format!("{axiom} {good}/{}", of_kind.len()));
    }
    writeln!(text, "[{}] {name} order ({}): {}", mark(ok), poset_text(poset), parts.join(", ")).unwrap();
    if let Some(r) = reports.iter().find(|r| !r.passed()) {
        let witness = r.witness.as_ref().map(Value::to_string).unwrap_or_default();
        writeln!(text, "  first failure: {} at {:?}: {witness}", r.axiom, r.objects).unwrap();
    }
    let run = json!({
        "order": name,
        "poset": poset,
        "status": status(ok),
        "summary": summary,
        "reports": reports,
    });
    (run, ok)
}

/// Random composable triples of C-image morphisms between objects with nonempty Hom spaces: associativity, the anti-involution and
/// expansion of the product in the C-image.
fn spot_checks<D: CellDatum>(verifier: &Verifier<D>, seed: u64, text: &mut String) -> (Value, bool) {
    let datum = verifier.datum();
    let objects = datum.objects();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    let mut failure = None;
    let next = |from: usize, rng: &mut ChaCha8Rng| {
        let reachable: Vec<usize> = objects.iter().copied().filter(|&to| !verifier.hom_basis(from, to).is_empty()).collect();
        (!reachable.is_empty()).then(|| reachable[rng.gen_range(0..reachable.len())])
    };
    for _ in 0..SPOT_CHECKS {
        let n = objects[rng.gen_range(0..objects.len())];
        let Some(m) = next(n, &mut rng) else { continue };
        let Some(p) = next(m, &mut rng) else { continue };
        let Some(q) = next(p, &mut rng) else { continue };
        let (ab, bb, cb) = (verifier.hom_basis(n, m), verifier.hom_basis(m, p), verifier.hom_basis(p, q));
        let a = &ab.entries[rng.gen_range(0..ab.len())];
        let b = &bb.entries[rng.gen_range(0..bb.len())];
        let c = &cb.entries[rng.gen_range(0..cb.len())];
        let (fa, fb, fc) = (&a.morphism, &b.morphism, &c.morphism);
        let ab_ = datum.compose(fa, fb);
        let checks = [
            ("associativity", datum.compose(&ab_, fc) == datum.compose(fa, &datum.compose(fb, fc))),
            ("star reverses composition", datum.star(&ab_) == datum.compose(&datum.star(fb), &datum.star(fa))),
            ("star is an involution", datum.star(&datum.star(fa)) == *fa),
            ("product expands in the C-image", verifier.expand(&ab_, n, p).is_ok()),
        ];
        checked += 1;
        if let Some((what, _)) = checks.iter().find(|(_, ok)| !ok) {
            failure = Some(json!({
                "check": what,
                "objects": [n, m, p, q],
                "a": a.to_json(),
                "b": b.to_json(),
                "c": c.to_json(),
            }));
            break;
        }
    }
    let ok = failure.is_none();
    writeln!(text, "[{}] spot checks (seed {seed}): {checked} composable triples", mark(ok)).unwrap();
    let json = json!({
        "seed": seed,
        "samples": SPOT_CHECKS,
        "checked": checked,
        "status": status(ok),
        "failure": failure,
    });
    (json, ok)
}
