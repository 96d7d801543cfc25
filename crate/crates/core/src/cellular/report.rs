use serde::Serialize;
use serde_json::Value;

use crate::linalg::{Domain, Matrix};
use crate::Label;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Status::Pass
    }
}

/// A failed check with a witness describing the first offending tuple.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub witness: Value,
}

impl Failure {
    pub fn new(witness: Value) -> Self {
        Self { witness }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.witness)
    }
}

impl std::error::Error for Failure {}

/// Structure constants `r_a(S', S)` of one basis morphism `a` at one label.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RTable {
    pub a: Value,
    pub label: Label,
    /// `K(p, λ)`, indexing rows.
    pub rows: Vec<Value>,
    /// `K(n, λ)`, indexing columns.
    pub cols: Vec<Value>,
    /// Rows of the matrix, entries serialized in the base ring.
    pub matrix: Value,
}

pub(crate) fn serialize_matrix<R: Domain + Serialize, S: serde::Serializer>(
    m: &Matrix<R>,
    s: S,
) -> Result<S::Ok, S::Error> {
    m.to_rows().serialize(s)
}

pub(crate) fn matrix_json<R: Domain + Serialize>(m: &Matrix<R>) -> Value {
    serde_json::to_value(m.to_rows()).expect("matrix serializes")
}

/// Result of one axiom check on one tuple of objects.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomReport {
    pub axiom: &'static str,
    pub status: Status,
    pub objects: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cardinality: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dimension: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checked: Option<usize>,
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_tables: Option<Vec<RTable>>,
}

impl AxiomReport {
    pub(crate) fn new(axiom: &'static str, objects: Vec<usize>) -> Self {
        Self {
            axiom,
            status: Status::Pass,
            objects,
            cardinality: None,
            dimension: None,
            rank: None,
            checked: None,
            witness: None,
            r_tables: None,
        }
    }

    pub(crate) fn fail(mut self, witness: Value) -> Self {
        self.status = Status::Fail;
        self.witness = Some(witness);
        self
    }

    pub fn passed(&self) -> bool {
        self.status.passed()
    }
}
