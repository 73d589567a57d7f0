//! The `.sgs` source format.
//!
//! ```text
//! syllagraph 1                      # optional version pragma
//! syllabus "Intermediate Macro" {
//!   sink gen_eq
//!   meta author: "..."
//!   node gen_eq {
//!     title: "General Equilibrium"
//!     side: other                   # as | ad | other
//!     pos: (4, 4)
//!     chapter: 9                    # repeatable, strictly increasing
//!     uses: AD                      # repeatable; bare word or "quoted"
//!     video: "https://..." "label"  # also text: and audio:
//!     note: "..."
//!   }
//!   edge agg_demand -> gen_eq : common_part "AD curve"
//!   symbol "AD" = "Aggregate demand"
//! }
//! ```
//!
//! Tokens may be spread over lines freely; `#` starts a comment. Parsing
//! reports every error it can find, resynchronizing at the next top-level
//! declaration after a syntax error.

mod lexer;
mod parser;
mod serialize;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::model::{CourseGraph, Location, NodeId, Subject};

pub use self::serialize::serialize;

/// The only format version this crate reads and writes.
pub const FORMAT_VERSION: u32 = 1;

/// A syntax or reference error in source text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based line.
    pub line: u32,
    /// 1-based column, counted in characters.
    pub column: u32,
    /// What the parser wanted.
    pub expected: String,
    /// What it got.
    pub found: String,
}

impl ParseError {
    /// Position as a [`Location`].
    pub fn location(&self) -> Location {
        Location::new(self.line, self.column)
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}: expected {}, found {}",
            self.line, self.column, self.expected, self.found
        )
    }
}

impl core::error::Error for ParseError {}

/// Where the parsed declarations came from, for attaching locations to diagnostics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceMap {
    /// The `syllabus` keyword.
    pub syllabus: Location,
    /// The sink id.
    pub sink: Location,
    /// Each node's id token.
    pub nodes: BTreeMap<NodeId, Location>,
    /// Each edge's `edge` keyword, by edge index.
    pub edges: Vec<Location>,
    /// Each glossary key, by glossary index.
    pub symbols: Vec<Location>,
}

impl SourceMap {
    /// Source location of a diagnostic subject.
    pub fn locate(&self, subject: &Subject) -> Option<Location> {
        match subject {
            Subject::Node { id } => self.nodes.get(id).copied(),
            Subject::Nodes { ids } => ids.iter().filter_map(|id| self.nodes.get(id)).min().copied(),
            Subject::Edge { index } => self.edges.get(*index).copied(),
        }
    }
}

/// Parses `.sgs` text into a validated graph.
pub fn parse(source: &str) -> Result<CourseGraph, Vec<ParseError>> {
    parser::parse_source(source).map(|(graph, _)| graph)
}

/// Like [`parse`], also returning declaration locations.
pub fn parse_with_spans(source: &str) -> Result<(CourseGraph, SourceMap), Vec<ParseError>> {
    parser::parse_source(source)
}
