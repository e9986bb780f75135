//! Canonical JSON encoding of fields, matrices, pairs, and triples.
//!
//! Scalars are lowest-term strings ("-3/2", "5"); the field is carried
//! once per document as {"kind":"q"} or {"kind":"gfp","p":13}. Keys are
//! emitted in sorted order so exports are byte-stable.

use crate::field::{FieldSpec, Scalar};
use crate::linalg::Matrix;
use crate::lrpair::LRPairData;
use crate::lrtriple::LRTripleData;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed document: {0}")]
pub struct JsonError(pub String);

fn bad(msg: impl Into<String>) -> JsonError {
    JsonError(msg.into())
}

pub fn field_to_value(field: FieldSpec) -> Value {
    match field {
        FieldSpec::Rationals => json!({"kind": "q"}),
        FieldSpec::PrimeField(p) => json!({"kind": "gfp", "p": p}),
    }
}

pub fn field_from_value(v: &Value) -> Result<FieldSpec, JsonError> {
    let kind = v
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| bad("field.kind missing"))?;
    match kind {
        "q" => Ok(FieldSpec::Rationals),
        "gfp" => {
            let p = v
                .get("p")
                .and_then(Value::as_u64)
                .ok_or_else(|| bad("field.p missing"))?;
            FieldSpec::gfp(p).map_err(|e| bad(e.to_string()))
        }
        other => Err(bad(format!("unknown field kind {other:?}"))),
    }
}

pub fn scalar_list_to_value(list: &[Scalar]) -> Value {
    Value::Array(
        list.iter()
            .map(|s| Value::String(s.to_canonical_string()))
            .collect(),
    )
}

pub fn scalar_list_from_value(v: &Value, field: FieldSpec) -> Result<Vec<Scalar>, JsonError> {
    let arr = v.as_array().ok_or_else(|| bad("expected array"))?;
    arr.iter()
        .map(|e| {
            let s = e.as_str().ok_or_else(|| bad("expected scalar string"))?;
            Scalar::parse(s, field).map_err(|e| bad(e.to_string()))
        })
        .collect()
}

pub fn matrix_to_value(m: &Matrix) -> Value {
    let rows: Vec<Value> = (0..m.size())
        .map(|i| {
            Value::Array(
                (0..m.size())
                    .map(|j| Value::String(m[(i, j)].to_canonical_string()))
                    .collect(),
            )
        })
        .collect();
    json!({"d": m.size() - 1, "rows": rows})
}

pub fn matrix_from_value(v: &Value, field: FieldSpec) -> Result<Matrix, JsonError> {
    let d = v
        .get("d")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("matrix.d missing"))? as usize;
    let rows = v
        .get("rows")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("matrix.rows missing"))?;
    if rows.len() != d + 1 {
        return Err(bad("matrix.rows length does not match d"));
    }
    let mut parsed = Vec::with_capacity(d + 1);
    for row in rows {
        let scalars = scalar_list_from_value(row, field)?;
        if scalars.len() != d + 1 {
            return Err(bad("matrix row length does not match d"));
        }
        parsed.push(scalars);
    }
    Ok(Matrix::from_rows(parsed, field))
}

pub fn pair_to_value(p: &LRPairData) -> Value {
    json!({
        "d": p.diameter(),
        "field": field_to_value(p.field()),
        "A": matrix_to_value(p.a()),
        "B": matrix_to_value(p.b()),
        "phi": scalar_list_to_value(p.parameter_sequence()),
    })
}

/// Read the two matrices of a pair document (derived data is recomputed).
pub fn pair_matrices_from_value(v: &Value) -> Result<(Matrix, Matrix), JsonError> {
    let field = field_from_value(v.get("field").ok_or_else(|| bad("field missing"))?)?;
    let a = matrix_from_value(v.get("A").ok_or_else(|| bad("A missing"))?, field)?;
    let b = matrix_from_value(v.get("B").ok_or_else(|| bad("B missing"))?, field)?;
    Ok((a, b))
}

/// Encode a recognized triple; the derived block is advisory (recognition
/// always recomputes it on read).
pub fn triple_to_value(t: &LRTripleData, include_derived: bool) -> Value {
    let mut root = Map::new();
    root.insert("d".into(), json!(t.diameter()));
    root.insert("field".into(), field_to_value(t.field()));
    root.insert("A".into(), matrix_to_value(t.a()));
    root.insert("B".into(), matrix_to_value(t.b()));
    root.insert("C".into(), matrix_to_value(t.c()));
    if include_derived {
        let mut derived = Map::new();
        derived.insert("phi".into(), scalar_list_to_value(t.pair(0).parameter_sequence()));
        derived.insert("phi1".into(), scalar_list_to_value(t.pair(1).parameter_sequence()));
        derived.insert("phi2".into(), scalar_list_to_value(t.pair(2).parameter_sequence()));
        derived.insert("a".into(), scalar_list_to_value(t.trace_data(0)));
        derived.insert("a1".into(), scalar_list_to_value(t.trace_data(1)));
        derived.insert("a2".into(), scalar_list_to_value(t.trace_data(2)));
        derived.insert("alpha".into(), scalar_list_to_value(t.toeplitz().alpha(0)));
        derived.insert("alpha1".into(), scalar_list_to_value(t.toeplitz().alpha(1)));
        derived.insert("alpha2".into(), scalar_list_to_value(t.toeplitz().alpha(2)));
        derived.insert("beta".into(), scalar_list_to_value(t.toeplitz().beta(0)));
        derived.insert("beta1".into(), scalar_list_to_value(t.toeplitz().beta(1)));
        derived.insert("beta2".into(), scalar_list_to_value(t.toeplitz().beta(2)));
        derived.insert(
            "theta".into(),
            Value::String(t.theta().to_canonical_string()),
        );
        let flags = t.flags();
        derived.insert(
            "flags".into(),
            json!({
                "bipartite": flags.bipartite,
                "equitable": flags.equitable,
                "normalized": flags.normalized,
            }),
        );
        root.insert("derived".into(), Value::Object(derived));
    }
    Value::Object(root)
}

/// Read the three matrices of a triple document.
pub fn triple_matrices_from_value(v: &Value) -> Result<(Matrix, Matrix, Matrix), JsonError> {
    let field = field_from_value(v.get("field").ok_or_else(|| bad("field missing"))?)?;
    let a = matrix_from_value(v.get("A").ok_or_else(|| bad("A missing"))?, field)?;
    let b = matrix_from_value(v.get("B").ok_or_else(|| bad("B missing"))?, field)?;
    let c = matrix_from_value(v.get("C").ok_or_else(|| bad("C missing"))?, field)?;
    if a.size() != b.size() || a.size() != c.size() {
        return Err(bad("matrices must share one size"));
    }
    Ok((a, b, c))
}

/// The embedded derived block, when present, cross-checked against the
/// recomputed data; returns the ids of fields that disagree.
pub fn derived_block_mismatches(v: &Value, t: &LRTripleData) -> Vec<String> {
    let Some(derived) = v.get("derived") else {
        return Vec::new();
    };
    let expected = triple_to_value(t, true);
    let expected = expected.get("derived").unwrap();
    let mut out = Vec::new();
    if let Some(obj) = derived.as_object() {
        for (key, val) in obj {
            match expected.get(key) {
                Some(e) if e == val => {}
                _ => out.push(key.clone()),
            }
        }
    } else {
        out.push("derived".into());
    }
    out
}

/// Encode a relation report as {"family": ..., "results": [{"id", "holds"}]}.
pub fn relation_report_to_value(report: &crate::relations::RelationReport) -> Value {
    let results: Vec<Value> = report
        .checks
        .iter()
        .map(|c| json!({"id": c.id, "holds": c.holds}))
        .collect();
    json!({"family": report.family, "results": results})
}

/// Serialize with sorted keys and a trailing newline (byte-stable).
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable value");
    s.push('\n');
    s
}
