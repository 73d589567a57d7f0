//! File formats, link auditing and the command-line front end for syllagraph
//! course graphs. Parsing and analysis live in `syllagraph-core`.

pub mod cli;
pub mod emit;
pub mod linkcheck;
pub mod manifest;

pub use emit::{emit_bundle, emit_print, emit_site, EmitError, SiteTree};
pub use linkcheck::{check_links, CheckConfig, LinkReport, Outcome};
pub use manifest::{corpus_manifest, CorpusManifest, Provenance};
