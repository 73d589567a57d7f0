use serde_json::{json, Map, Value};
use syllagraph_core::{highlight_all, stats, CourseGraph};

use super::{require_valid, EmitError};

/// Version of the bundle layout; bumped on any incompatible change.
pub const SCHEMA_VERSION: u32 = 1;

/// Fixed provenance string. It never contains a timestamp so rebuilds are byte-identical.
pub const GENERATED_NOTE: &str = "generated by syllagraph; deterministic output, no timestamps";

/// The bundle as a JSON value.
///
/// `serde_json` maps are ordered by key, so serializing this value always yields
/// lexicographically sorted objects.
pub fn bundle_value(graph: &CourseGraph) -> Value {
    let highlights: Map<String, Value> = highlight_all(graph)
        .into_iter()
        .map(|(id, set)| (id.as_str().to_owned(), to_value(&set)))
        .collect();
    json!({
        "schema_version": SCHEMA_VERSION,
        "generated_note": GENERATED_NOTE,
        "graph": to_value(graph),
        "highlights": highlights,
        "stats": to_value(&stats(graph)),
    })
}

/// Pretty-printed bundle JSON with a trailing newline.
pub fn emit_bundle(graph: &CourseGraph) -> Result<Vec<u8>, EmitError> {
    require_valid(graph)?;
    Ok(to_bytes(&bundle_value(graph)))
}

pub(crate) fn to_bytes(value: &Value) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("JSON values always serialize");
    out.push(b'\n');
    out
}

fn to_value<T: serde::Serialize>(value: &T) -> Value {
    // Only string-keyed maps and plain data reach here, which serde_json always accepts.
    serde_json::to_value(value).expect("model types serialize to JSON")
}
