//! Pure analyses over a [`CourseGraph`](crate::CourseGraph).

mod lint;
mod order;
mod reach;
mod stats;

use alloc::string::String;
use core::fmt;

pub use self::lint::{validate, Rule, RuleConfig};
pub use self::order::course_order;
pub use self::reach::{highlight, highlight_all, reachable_from, reaches};
pub use self::stats::{stats, Stats};

/// Errors from analyses that take a node id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    /// The id does not name a node of the graph.
    UnknownNode(String),
}

impl fmt::Display for AnalysisError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnalysisError::UnknownNode(id) => write!(f, "unknown node {id:?}"),
        }
    }
}

impl core::error::Error for AnalysisError {}
