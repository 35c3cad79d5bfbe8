use serde_json::{json, Value};

use super::LieAlgebra;

/// Deterministic JSON rendering of the structure constants.
///
/// Schema: `{"name", "field", "dim", "basis": [label], "brackets": [{"i", "j",
/// "terms": [[k, scalar], ...]}]}` with `i < j`, only nonzero brackets, in
/// ascending `(i, j)` and ascending `k`. One basis label or bracket per line.
pub fn to_json(alg: &LieAlgebra) -> String {
    let mut out = String::from("{\n");
    out.push_str(&format!("  \"name\": {},\n", Value::from(alg.name().to_string())));
    out.push_str(&format!("  \"field\": {},\n", Value::from(alg.field().to_string())));
    out.push_str(&format!("  \"dim\": {},\n", alg.dim()));
    out.push_str("  \"basis\": [\n");
    let labels: Vec<String> = alg.basis().iter().map(|l| format!("    {}", Value::from(l.to_string()))).collect();
    out.push_str(&labels.join(",\n"));
    out.push_str("\n  ],\n  \"brackets\": [\n");
    let rows: Vec<String> = alg
        .stored()
        .map(|((i, j), terms)| {
            let terms: Vec<Value> = terms.iter().map(|(k, c)| json!([k, c.to_string()])).collect();
            format!("    {}", json!({"i": i, "j": j, "terms": terms}))
        })
        .collect();
    out.push_str(&rows.join(",\n"));
    out.push_str("\n  ]\n}\n");
    out
}
