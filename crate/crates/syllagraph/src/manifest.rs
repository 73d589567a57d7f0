//! Provenance of the bundled corpus.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use syllagraph_core::corpus::MANIFEST_JSON;

/// Where a piece of corpus data comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Taken from the source course's published material.
    Paper,
    /// Chosen by the corpus maintainer.
    Curated,
    /// Stand-in value awaiting real data.
    Placeholder,
}

/// The manifest file shipped beside the corpus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusManifest {
    /// Per-node provenance.
    pub nodes: BTreeMap<String, Provenance>,
    /// Provenance of the whole edge list.
    pub edges: Provenance,
    /// Provenance of the resource links.
    pub resources: Provenance,
    /// Free-text citation and curation notes.
    pub citation: String,
}

/// Parses the embedded manifest.
pub fn corpus_manifest() -> CorpusManifest {
    serde_json::from_str(MANIFEST_JSON).expect("embedded manifest is valid")
}
