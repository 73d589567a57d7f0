//! The bundled intermediate-macroeconomics course graph.

use crate::dsl::parse;
use crate::model::CourseGraph;

/// Source text of the bundled corpus.
pub const SOURCE: &str = include_str!("../corpus/macro_big_picture.sgs");

/// Id of the corpus sink, the general-equilibrium diagram.
pub const SINK: &str = "gen_eq";

/// Parses the bundled corpus.
pub fn load_corpus() -> CourseGraph {
    // Integrity of the embedded file is covered by the test suite.
    parse(SOURCE).expect("bundled corpus parses")
}

/// Provenance manifest shipped beside the corpus, as JSON text.
///
/// Maps every node id to `paper` or `curated` and records that the edge list is curated.
pub const MANIFEST_JSON: &str = include_str!("../corpus/manifest.json");
