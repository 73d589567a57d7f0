use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::NodeId;
use crate::analysis::Rule;

/// How serious a lint finding is. Errors sort before warnings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize),
    serde(rename_all = "lowercase")
)]
pub enum Severity {
    /// Blocks emission.
    Error,
    /// Reported only.
    Warning,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        })
    }
}

/// 1-based line and column into source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Location {
    /// Line, starting at 1.
    pub line: u32,
    /// Column in characters, starting at 1.
    pub column: u32,
}

impl Location {
    /// Creates a location.
    pub const fn new(line: u32, column: u32) -> Self {
        Self { line, column }
    }
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

/// What a diagnostic is about.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize),
    serde(tag = "type", rename_all = "snake_case")
)]
pub enum Subject {
    /// A single node.
    Node {
        /// The node.
        id: NodeId,
    },
    /// Several nodes together, sorted.
    Nodes {
        /// The nodes.
        ids: Vec<NodeId>,
    },
    /// One edge by index.
    Edge {
        /// Index into the graph's edge list.
        index: usize,
    },
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Node { id } => write!(f, "node {id}"),
            Subject::Nodes { ids } => {
                f.write_str("nodes ")?;
                for (i, id) in ids.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{id}")?;
                }
                Ok(())
            }
            Subject::Edge { index } => write!(f, "edge #{index}"),
        }
    }
}

/// One lint finding.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Diagnostic {
    /// Severity fixed by the rule.
    pub severity: Severity,
    /// Rule that fired.
    pub rule: Rule,
    /// Human-readable explanation.
    pub message: String,
    /// Where in the source, when a source map is available.
    pub location: Option<Location>,
    /// What the finding is about.
    pub subject: Option<Subject>,
}

impl Diagnostic {
    pub(crate) fn new(rule: Rule, subject: Subject, message: String) -> Self {
        Self {
            severity: rule.severity(),
            rule,
            message,
            location: None,
            subject: Some(subject),
        }
    }

    /// True for error severity.
    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(location) = self.location {
            write!(f, "{location}: ")?;
        }
        write!(
            f,
            "{}[{} {}]: {}",
            self.severity,
            self.rule.id(),
            self.rule.name(),
            self.message
        )
    }
}
