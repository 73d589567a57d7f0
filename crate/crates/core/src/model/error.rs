use alloc::string::String;
use core::fmt;

use super::{GridPos, NodeId, RelationshipKind};

/// The first invariant a construction attempt violated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelError {
    /// Identifier outside the `[a-z][a-z0-9_]*` alphabet.
    InvalidId(String),
    /// Node title empty or whitespace.
    EmptyTitle(NodeId),
    /// A grid coordinate above 999.
    PosOutOfRange {
        /// Offending node.
        node: NodeId,
        /// Offending position.
        pos: GridPos,
    },
    /// Chapter number 0.
    ChapterZero(NodeId),
    /// Chapter tags not strictly increasing.
    ChaptersNotIncreasing(NodeId),
    /// Url without an http(s) scheme.
    BadUrl(String),
    /// Resource label empty; carries the url.
    EmptyLabel(String),
    /// Empty glossary key or `uses` key.
    EmptySymbolKey,
    /// Glossary meaning empty; carries the key.
    EmptyMeaning(String),
    /// Edge note present but blank.
    BlankEdgeNote {
        /// Edge source.
        from: NodeId,
        /// Edge target.
        to: NodeId,
    },
    /// Meta key outside `[A-Za-z_][A-Za-z0-9_]*`.
    InvalidMetaKey(String),
    /// Meta key given twice.
    DuplicateMeta(String),
    /// Node id declared twice.
    DuplicateNode(NodeId),
    /// The sink does not name a node.
    UnknownSink(NodeId),
    /// An edge endpoint does not name a node.
    UnknownEndpoint(NodeId),
    /// Same (from, to, kind) twice.
    DuplicateEdge {
        /// Edge source.
        from: NodeId,
        /// Edge target.
        to: NodeId,
        /// Edge kind.
        kind: RelationshipKind,
    },
    /// Edge from a node to itself.
    SelfLoop(NodeId),
    /// Glossary key given twice.
    DuplicateSymbol(String),
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::InvalidId(id) => write!(f, "invalid node id {id:?}"),
            ModelError::EmptyTitle(id) => write!(f, "node {id} has an empty title"),
            ModelError::PosOutOfRange { node, pos } => {
                write!(f, "node {node} position {pos} is outside 0..=999")
            }
            ModelError::ChapterZero(id) => write!(f, "node {id} has chapter 0"),
            ModelError::ChaptersNotIncreasing(id) => {
                write!(f, "node {id} chapters are not strictly increasing")
            }
            ModelError::BadUrl(url) => write!(f, "url {url:?} is not http(s)"),
            ModelError::EmptyLabel(url) => write!(f, "resource {url:?} has an empty label"),
            ModelError::EmptySymbolKey => f.write_str("empty symbol key"),
            ModelError::EmptyMeaning(key) => write!(f, "symbol {key:?} has an empty meaning"),
            ModelError::BlankEdgeNote { from, to } => write!(f, "edge {from}->{to} has a blank note"),
            ModelError::InvalidMetaKey(key) => write!(f, "invalid meta key {key:?}"),
            ModelError::DuplicateMeta(key) => write!(f, "meta key {key:?} given twice"),
            ModelError::DuplicateNode(id) => write!(f, "node {id} declared twice"),
            ModelError::UnknownSink(id) => write!(f, "sink {id} is not a declared node"),
            ModelError::UnknownEndpoint(id) => write!(f, "edge endpoint {id} is not a declared node"),
            ModelError::DuplicateEdge { from, to, kind } => {
                write!(f, "edge {from}->{to}:{kind} declared twice")
            }
            ModelError::SelfLoop(id) => write!(f, "edge {id}->{id} is a self-loop"),
            ModelError::DuplicateSymbol(key) => write!(f, "symbol {key:?} declared twice"),
        }
    }
}

impl core::error::Error for ModelError {}
