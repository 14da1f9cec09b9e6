//! JSON renderings of structured sets, algebras, spans and matrices.
//!
//! Objects are `serde_json::Value`s whose maps iterate in sorted key order,
//! so serialized output is byte-for-byte deterministic. Rationals and big
//! integers are written as strings (`"3"`, `"-1/2"`).

use serde_json::{json, Value};

use crate::finset::{FinMap, FinSet, Span};
use crate::hall::HallAlgebra;
use crate::linalg::{Rational, RationalMatrix};
use crate::report::CheckReport;
use crate::simplicial::StructuredSet;
use crate::tqft::CobordismWord;

pub fn rational_string(q: &Rational) -> String {
    q.to_string()
}

fn rationals(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|q| Value::String(rational_string(q))).collect())
}

fn table(m: &FinMap) -> Value {
    json!(m.image())
}

fn level(set: &FinSet) -> Value {
    json!({ "size": set.size(), "labels": set.labels() })
}

pub fn structured_set_json(x: &StructuredSet) -> Value {
    let p = x.parts();
    let rows = |maps: &[Vec<FinMap>]| -> Value {
        Value::Array(maps.iter().map(|r| Value::Array(r.iter().map(table).collect())).collect())
    };
    json!({
        "flavor": x.flavor().name(),
        "truncation": x.truncation(),
        "levels": p.levels.iter().map(level).collect::<Vec<_>>(),
        "face": rows(&p.face),
        "degeneracy": rows(&p.degeneracy),
        "tau": p.tau.as_ref().map(|t| t.iter().map(table).collect::<Vec<_>>()),
        "theta": p.theta.as_ref().map(|t| rows(t)),
    })
}

pub fn algebra_json(a: &HallAlgebra) -> Value {
    let constants: Vec<Value> = a
        .structure_constants()
        .into_iter()
        .map(|(x, y, z, c)| json!([x, y, z, c]))
        .collect();
    json!({
        "dimension": a.dimension(),
        "basis_labels": a.basis().labels(),
        "structure_constants": constants,
        "unit": rationals(a.unit()),
        "counit": a.counit().map(|c| rationals(c)),
        "pairing_determinant": a.pairing_determinant().map(|d| rational_string(&d)),
    })
}

pub fn matrix_json(m: &RationalMatrix) -> Value {
    Value::Array((0..m.rows()).map(|r| rationals(m.row(r))).collect())
}

fn profile(w: &CobordismWord) -> Value {
    let (i, o) = w.profile();
    json!({ "inputs": i, "outputs": o })
}

/// `fiber_matrix[a][b]` counts apex elements over `(a, b)` in the left and
/// right feet.
pub fn span_json(w: &CobordismWord, s: &Span) -> Value {
    json!({
        "word": w.to_string(),
        "profile": profile(w),
        "apex_size": s.apex().size(),
        "fiber_matrix": s.fiber_matrix_dense(),
    })
}

pub fn linear_json(w: &CobordismWord, m: &RationalMatrix) -> Value {
    json!({
        "word": w.to_string(),
        "profile": profile(w),
        "matrix": matrix_json(m),
    })
}

pub fn report_json(r: &CheckReport) -> Value {
    serde_json::to_value(r).expect("reports serialize")
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::simplex_set;
    use crate::hall::hall_algebra;
    use crate::pmonoid::make_cyclic_group;

    #[test]
    fn keys_are_sorted_and_output_is_stable() {
        let m = make_cyclic_group(2).unwrap();
        let x = simplex_set(&m, 1, 2).unwrap();
        let a = hall_algebra(&x).unwrap();
        let s = to_pretty(&algebra_json(&a));
        assert_eq!(s, to_pretty(&algebra_json(&hall_algebra(&simplex_set(&m, 1, 2).unwrap()).unwrap())));
        let keys: Vec<usize> = ["basis_labels", "counit", "dimension", "pairing_determinant", "structure_constants", "unit"]
            .iter()
            .map(|k| s.find(&format!("\"{k}\"")).unwrap())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        assert!(s.contains("\"pairing_determinant\": \"-1\""));
        let xs = structured_set_json(&x);
        assert_eq!(xs["flavor"], "cosymmetric");
        assert_eq!(xs["levels"][1]["size"], 2);
    }
}
