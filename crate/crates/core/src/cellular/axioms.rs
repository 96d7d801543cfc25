use serde_json::json;

use super::report::{matrix_json, AxiomReport, RTable};
use super::{CellDatum, Verifier};

impl<D: CellDatum> Verifier<'_, D> {
    /// C-1 on `Hom(n, m)`: the C-image has as many elements as the dimension and full rank.
    pub fn verify_c1(&self, n: usize, m: usize) -> AxiomReport {
        let basis = self.hom_basis(n, m);
        let mut report = AxiomReport::new("C-1", vec![n, m]);
        report.cardinality = Some(basis.len());
        report.dimension = Some(basis.ambient_dimension);
        report.rank = Some(basis.rank);
        if !basis.is_basis() {
            report = report.fail(json!({
                "cardinality": basis.len(),
                "dimension": basis.ambient_dimension,
                "rank": basis.rank,
            }));
        }
        report
    }

    /// C-2 on `Hom(n, m)`: `C^λ(S, T)* = C^λ(T, S)` for every label and pair.
    pub fn verify_c2(&self, n: usize, m: usize) -> AxiomReport {
        let datum = self.datum();
        let mut report = AxiomReport::new("C-2", vec![n, m]);
        let mut checked = 0;
        for &label in datum.poset().elements() {
            let ks = datum.cells(n, label);
            let kt = datum.cells(m, label);
            for s in &ks {
                for t in &kt {
                    checked += 1;
                    let lhs = datum.star(&datum.cell_morphism(label, s, t));
                    let rhs = datum.cell_morphism(label, t, s);
                    if lhs != rhs {
                        report.checked = Some(checked);
                        return report.fail(json!({ "label": label, "s": s, "t": t }));
                    }
                }
            }
        }
        report.checked = Some(checked);
        report
    }

    /// C-3 for basis morphisms `a: p -> n` acting on `C^λ(S, T): n -> m`.
    pub fn verify_c3(&self, p: usize, n: usize, m: usize) -> AxiomReport {
        let datum = self.datum();
        let mut report = AxiomReport::new("C-3", vec![p, n, m]);
        for (x, y) in [(p, n), (n, m), (p, m)] {
            let basis = self.hom_basis(x, y);
            if !basis.is_basis() {
                return report.fail(json!({
                    "reason": "inherited C-1 failure",
                    "hom": [x, y],
                    "cardinality": basis.len(),
                    "dimension": basis.ambient_dimension,
                    "rank": basis.rank,
                }));
            }
        }
        let left = self.hom_basis(p, n);
        let mut tables = Vec::new();
        let mut checked = 0;
        for a in &left.entries {
            for &label in datum.poset().elements() {
                let kn = datum.cells(n, label);
                let km = datum.cells(m, label);
                if kn.is_empty() || km.is_empty() {
                    continue;
                }
                checked += kn.len() * km.len();
                match self.extract_r(&a.morphism, p, n, m, label) {
                    Ok(matrix) => tables.push(RTable {
                        a: a.to_json(),
                        label,
                        rows: datum.cells(p, label).iter().map(|x| json!(x)).collect(),
                        cols: kn.iter().map(|x| json!(x)).collect(),
                        matrix: matrix_json(&matrix),
                    }),
                    Err(failure) => {
                        let mut w = failure.witness;
                        w["a"] = a.to_json();
                        report.checked = Some(checked);
                        return report.fail(w);
                    }
                }
            }
        }
        report.checked = Some(checked);
        report.r_tables = Some(tables);
        report
    }

    /// Every C-1, C-2 and C-3 report over all objects of the datum, in tuple order.
    pub fn verify_all(&self) -> Vec<AxiomReport> {
        let objects = self.datum().objects();
        let mut out = Vec::new();
        for &n in &objects {
            for &m in &objects {
                out.push(self.verify_c1(n, m));
            }
        }
        for &n in &objects {
            for &m in &objects {
                out.push(self.verify_c2(n, m));
            }
        }
        for &p in &objects {
            for &n in &objects {
                for &m in &objects {
                    out.push(self.verify_c3(p, n, m));
                }
            }
        }
        out
    }
}
