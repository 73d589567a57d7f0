//! Deterministic artifacts built from a validated graph: the JSON bundle, the static
//! site that embeds the viewer, and the printable SVG.

mod bundle;
mod site;
mod svg;

use syllagraph_core::{validate, CourseGraph, Diagnostic, RuleConfig};

pub use bundle::{bundle_value, emit_bundle, GENERATED_NOTE, SCHEMA_VERSION};
pub use site::{emit_site, SiteTree, VIEWER_CSS, VIEWER_JS};
pub use svg::{emit_print, palette, CELL_H, CELL_W, GUTTER, MARGIN};

/// Why an emitter refused to run.
#[derive(Debug, thiserror::Error)]
pub enum EmitError {
    /// The graph has error-severity findings; they are carried for reporting.
    #[error("graph has {} validation error(s)", .0.len())]
    Invalid(Vec<Diagnostic>),
}

/// Emitters only accept graphs that are clean under the default rule set.
fn require_valid(graph: &CourseGraph) -> Result<(), EmitError> {
    let errors: Vec<Diagnostic> = validate(graph, &RuleConfig::default())
        .into_iter()
        .filter(Diagnostic::is_error)
        .collect();
    if errors.is_empty() {
        Ok(())
    } else {
        Err(EmitError::Invalid(errors))
    }
}
