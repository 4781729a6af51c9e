//! Canonical JSON instances.
//!
//! ```json
//! {"format": "ctw-instance", "version": 1, "k": 5, "b": 2,
//!  "atomic": [[3, 4], [4, 1], [5, 4]], "soft_atomic": [],
//!  "disjunctive": [[2, 5, 2, 1]], "direct_successors": [4]}
//! ```
//!
//! Every field is required and unknown fields are rejected.

use ctw_core::{DuplicateWarning, Instance, InstanceError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::dat::DatDocument;

pub const FORMAT_TAG: &str = "ctw-instance";
pub const VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
    #[error("unsupported format {found:?}, expected {FORMAT_TAG:?}")]
    Format { found: String },
    #[error("unsupported version {found}, expected {VERSION}")]
    Version { found: u32 },
    #[error(transparent)]
    Semantic(#[from] InstanceError),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceJson {
    format: String,
    version: u32,
    k: usize,
    b: usize,
    atomic: Vec<[usize; 2]>,
    soft_atomic: Vec<[usize; 2]>,
    disjunctive: Vec<[usize; 4]>,
    direct_successors: Vec<usize>,
}

pub fn emit_json(inst: &Instance) -> String {
    let pair = |c: &ctw_core::AtomicConstraint| [c.before.get(), c.after.get()];
    let doc = InstanceJson {
        format: FORMAT_TAG.to_string(),
        version: VERSION,
        k: inst.k(),
        b: inst.b(),
        atomic: inst.atomic().iter().map(pair).collect(),
        soft_atomic: inst.soft_atomic().iter().map(pair).collect(),
        disjunctive: inst.disjunctive().iter().map(|d| d.as_tuple()).collect(),
        direct_successors: inst.direct_successors().iter().map(|j| j.get()).collect(),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("plain data serializes");
    text.push('\n');
    text
}

pub fn parse_json_with_warnings(text: &str) -> Result<(Instance, Vec<DuplicateWarning>), JsonError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let doc: InstanceJson = serde_path_to_error::deserialize(de).map_err(|e| JsonError::Schema {
        path: e.path().to_string(),
        message: e.inner().to_string(),
    })?;
    if doc.format != FORMAT_TAG {
        return Err(JsonError::Format { found: doc.format });
    }
    if doc.version != VERSION {
        return Err(JsonError::Version { found: doc.version });
    }
    let doc = DatDocument {
        k: doc.k,
        b: doc.b,
        atomic: doc.atomic,
        soft_atomic: doc.soft_atomic,
        disjunctive: doc.disjunctive,
        direct_successors: doc.direct_successors,
    };
    Ok(doc.into_instance()?)
}

pub fn parse_json(text: &str) -> Result<Instance, JsonError> {
    parse_json_with_warnings(text).map(|(inst, _)| inst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ctw_core::fixtures::worked_example;

    #[test]
    fn round_trip() {
        let inst = worked_example();
        assert_eq!(parse_json(&emit_json(&inst)).unwrap(), inst);
        assert_eq!(parse_json(&emit_json(&Instance::empty())).unwrap(), Instance::empty());
    }

    #[test]
    fn missing_field_names_it() {
        let text = r#"{"format":"ctw-instance","version":1,"k":1,"atomic":[],"soft_atomic":[],"disjunctive":[],"direct_successors":[]}"#;
        let err = parse_json(text).unwrap_err();
        assert!(matches!(&err, JsonError::Schema { .. }), "{err}");
        assert!(err.to_string().contains("missing field `b`"), "{err}");
    }

    #[test]
    fn schema_errors_carry_paths() {
        let text = r#"{"format":"ctw-instance","version":1,"k":3,"b":0,"atomic":[[1,2],[2]],"soft_atomic":[],"disjunctive":[],"direct_successors":[]}"#;
        let err = parse_json(text).unwrap_err();
        assert!(err.to_string().starts_with("atomic[1]"), "{err}");
        let unknown = r#"{"format":"ctw-instance","version":1,"k":0,"b":0,"atomic":[],"soft_atomic":[],"disjunctive":[],"direct_successors":[],"extra":1}"#;
        assert!(matches!(parse_json(unknown), Err(JsonError::Schema { .. })));
    }

    #[test]
    fn tags_are_checked() {
        let text = emit_json(&Instance::empty());
        let other = text.replace("\"version\": 1", "\"version\": 2");
        assert!(matches!(parse_json(&other), Err(JsonError::Version { found: 2 })));
        let other = text.replace("ctw-instance", "something-else");
        assert!(matches!(parse_json(&other), Err(JsonError::Format { .. })));
    }
}
