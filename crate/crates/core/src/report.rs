//! Verification reports: checks sorted by id, exact witnesses as `"p/q"`
//! strings, and a canonical hash that ignores timings.

use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::Error;
use crate::exactlin::{FieldSpec, Matrix, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub description: String,
    pub reference: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub elapsed_ms: u64,
}

/// Outcome of one check body: `Ok(())` passes, `Err(witness)` fails.
pub type Verdict = Result<(), Value>;

pub fn verdict(passed: bool, witness: impl FnOnce() -> Value) -> Verdict {
    if passed {
        Ok(())
    } else {
        Err(witness())
    }
}

pub fn matrix_json(m: &Matrix) -> Value {
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": m
            .to_rows()
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

/// A scalar given as a JSON integer or a `"p/q"` string.
pub fn scalar_from_json(field: FieldSpec, v: &Value) -> Result<Scalar, Error> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|i| Scalar::from_i64(field, i))
            .ok_or_else(|| Error::Parse(format!("non-integer number {n}; use a \"p/q\" string"))),
        Value::String(s) => Scalar::parse(field, s),
        other => Err(Error::Parse(format!("expected a scalar, found {other}"))),
    }
}

/// A matrix given as a JSON array of rows.
pub fn matrix_from_json(field: FieldSpec, v: &Value) -> Result<Matrix, Error> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Parse("matrix must be an array of rows".into()))?;
    let rows = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Error::Parse("matrix row must be an array".into()))?
                .iter()
                .map(|x| scalar_from_json(field, x))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Matrix::from_rows(field, rows)
}

/// Collects checks; an `Err` from a check body is recorded as a failure
/// whose witness is the error message.
#[derive(Default)]
pub struct Recorder {
    checks: Vec<Check>,
}

impl Recorder {
    pub fn new() -> Self {
        Recorder::default()
    }

    pub fn check(
        &mut self,
        id: impl Into<String>,
        description: impl Into<String>,
        reference: &str,
        body: impl FnOnce() -> Result<Verdict, Error>,
    ) {
        let start = Instant::now();
        let outcome = body();
        let elapsed_ms = start.elapsed().as_millis() as u64;
        let (status, witness) = match outcome {
            Ok(Ok(())) => (Status::Pass, None),
            Ok(Err(w)) => (Status::Fail, Some(w)),
            Err(e) => (Status::Fail, Some(json!({ "error": e.to_string() }))),
        };
        self.checks.push(Check {
            id: id.into(),
            description: description.into(),
            reference: reference.to_string(),
            status,
            witness,
            elapsed_ms,
        });
    }

    pub fn extend(&mut self, other: Recorder) {
        self.checks.extend(other.checks);
    }

    pub fn into_checks(self) -> Vec<Check> {
        self.checks
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BatteryHeader {
    pub version: String,
    pub g: Vec<String>,
    pub l: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub tool: String,
    pub version: String,
    pub suite: String,
    pub group: String,
    pub normal: Vec<String>,
    pub field: String,
    pub battery: BatteryHeader,
    pub summary: Summary,
    pub checks: Vec<Check>,
    pub canonical_sha256: String,
}

impl VerificationReport {
    /// Sorts checks by id, rejects duplicate ids, and fills in the summary
    /// and canonical hash.
    pub fn new(
        suite: &str,
        group: &str,
        normal: Vec<String>,
        field: &str,
        battery: BatteryHeader,
        mut checks: Vec<Check>,
    ) -> Result<Self, Error> {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        if let Some(w) = checks.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(Error::Verification(format!("duplicate check id {}", w[0].id)));
        }
        let passed = checks.iter().filter(|c| c.status == Status::Pass).count();
        let mut report = VerificationReport {
            tool: "tannakit".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            suite: suite.into(),
            group: group.into(),
            normal,
            field: field.into(),
            battery,
            summary: Summary {
                total: checks.len(),
                passed,
                failed: checks.len() - passed,
            },
            checks,
            canonical_sha256: String::new(),
        };
        report.canonical_sha256 = report.canonical_hash();
        Ok(report)
    }

    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }

    /// SHA-256 of the JSON report with `elapsed_ms` and the hash field removed.
    pub fn canonical_hash(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        strip(&mut v);
        let bytes = serde_json::to_vec(&v).expect("value serializes");
        hex::encode(Sha256::digest(&bytes))
    }
}

fn strip(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("elapsed_ms");
            map.remove("canonical_sha256");
            map.values_mut().for_each(strip);
        }
        Value::Array(items) => items.iter_mut().for_each(strip),
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn header() -> BatteryHeader {
        BatteryHeader {
            version: "v".into(),
            g: vec![],
            l: vec![],
        }
    }

    #[test]
    fn checks_are_sorted_and_hash_ignores_time() {
        let mut r = Recorder::new();
        r.check("b", "second", "", || Ok(Ok(())));
        r.check("a", "first", "", || Ok(verdict(false, || json!({"k": 1}))));
        let mut checks = r.into_checks();
        let rep = VerificationReport::new("s", "G", vec![], "Q", header(), checks.clone()).unwrap();
        assert_eq!(rep.checks[0].id, "a");
        assert_eq!(rep.summary.failed, 1);
        assert!(rep.checks[0].witness.is_some());
        checks[0].elapsed_ms += 1000;
        let again = VerificationReport::new("s", "G", vec![], "Q", header(), checks).unwrap();
        assert_eq!(rep.canonical_sha256, again.canonical_sha256);
    }

    #[test]
    fn duplicate_ids_rejected() {
        let mut r = Recorder::new();
        r.check("a", "", "", || Ok(Ok(())));
        r.check("a", "", "", || Ok(Ok(())));
        assert!(VerificationReport::new("s", "G", vec![], "Q", header(), r.into_checks()).is_err());
    }

    #[test]
    fn errors_become_failures_with_witness() {
        let mut r = Recorder::new();
        r.check("e", "", "", || Err(Error::Verification("boom".into())));
        let c = &r.into_checks()[0];
        assert_eq!(c.status, Status::Fail);
        assert_eq!(c.witness.as_ref().unwrap()["error"], "verification failed: boom");
    }

    #[test]
    fn matrices_serialize_exactly() {
        let m = Matrix::from_fn(FieldSpec::Rationals, 1, 2, |_, j| {
            Scalar::from_ratio(FieldSpec::Rationals, 1, 2 + j as i64)
        });
        assert_eq!(matrix_json(&m)["entries"], json!([["1/2", "1/3"]]));
        let back = matrix_from_json(FieldSpec::Rationals, &matrix_json(&m)["entries"]).unwrap();
        assert_eq!(back, m);
        assert!(matrix_from_json(FieldSpec::Rationals, &json!([[1], [1, 2]])).is_err());
    }
}
