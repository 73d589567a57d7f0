//! Course-graph compiler core.
//!
//! This crate holds everything that is a pure function of text or of an
//! in-memory [`CourseGraph`]: the domain model, the `.sgs` source format,
//! route/highlight analysis, lint rules, statistics and course ordering.
//! It is `#![no_std]` and only needs `alloc`; file IO, the HTTP link audit,
//! bundle/site/SVG emission and the command line live in the `syllagraph`
//! crate.

#![no_std]
#![warn(missing_docs)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod corpus;
pub mod dsl;
pub mod model;

#[doc(inline)]
pub use self::{
    analysis::{
        course_order, highlight, highlight_all, reachable_from, reaches, stats, validate,
        AnalysisError, Rule, RuleConfig, Stats,
    },
    dsl::{parse, parse_with_spans, serialize, ParseError, SourceMap},
    model::{
        CourseGraph, Diagnostic, Edge, GraphBuilder, GridPos, HighlightSet, Location, ModelError,
        Node, NodeBuilder, NodeId, RelationshipKind, Resource, ResourceKind, Severity, Side,
        Subject, SymbolEntry,
    },
};
