use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use super::{Edge, ModelError, Node, NodeId, SymbolEntry};

/// A whole syllabus: nodes, typed edges, glossary and the sink they route toward.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CourseGraph {
    title: String,
    sink: NodeId,
    nodes: Vec<Node>,
    edges: Vec<Edge>,
    glossary: Vec<SymbolEntry>,
    meta: BTreeMap<String, String>,
    #[cfg_attr(feature = "serde", serde(skip))]
    index: BTreeMap<NodeId, usize>,
}

impl CourseGraph {
    /// Starts a graph with its title and sink id.
    pub fn builder(title: impl Into<String>, sink: NodeId) -> GraphBuilder {
        GraphBuilder {
            title: title.into(),
            sink,
            nodes: Vec::new(),
            edges: Vec::new(),
            glossary: Vec::new(),
            meta: Vec::new(),
        }
    }

    /// Syllabus title.
    pub fn title(&self) -> &str {
        &self.title
    }

    /// Id of the terminal node routes are highlighted toward.
    pub fn sink(&self) -> &NodeId {
        &self.sink
    }

    /// Nodes in declaration order.
    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    /// Edges in declaration order; edge indices refer to this slice.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Glossary in declaration order.
    pub fn glossary(&self) -> &[SymbolEntry] {
        &self.glossary
    }

    /// Free-form metadata.
    pub fn meta(&self) -> &BTreeMap<String, String> {
        &self.meta
    }

    /// Looks a node up by id.
    pub fn node_by_id(&self, id: &str) -> Option<&Node> {
        self.index_of(id).map(|i| &self.nodes[i])
    }

    /// Position of a node in [`CourseGraph::nodes`].
    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// Looks a glossary entry up by key.
    pub fn symbol(&self, key: &str) -> Option<&SymbolEntry> {
        self.glossary.iter().find(|s| s.key() == key)
    }
}

/// Collects the parts of a [`CourseGraph`] and validates them in [`GraphBuilder::build`].
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    title: String,
    sink: NodeId,
    nodes: Vec<Node>,
    edges: Vec<Edge>,
    glossary: Vec<SymbolEntry>,
    meta: Vec<(String, String)>,
}

impl GraphBuilder {
    /// Appends a node.
    pub fn node(mut self, node: Node) -> Self {
        self.nodes.push(node);
        self
    }

    /// Appends an edge.
    pub fn edge(mut self, edge: Edge) -> Self {
        self.edges.push(edge);
        self
    }

    /// Appends a glossary entry.
    pub fn symbol(mut self, entry: SymbolEntry) -> Self {
        self.glossary.push(entry);
        self
    }

    /// Adds a metadata pair.
    pub fn meta(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.meta.push((key.into(), value.into()));
        self
    }

    /// Checks the graph invariants and reports the first one violated.
    pub fn build(self) -> Result<CourseGraph, ModelError> {
        let mut index = BTreeMap::new();
        for (i, node) in self.nodes.iter().enumerate() {
            if index.insert(node.id().clone(), i).is_some() {
                return Err(ModelError::DuplicateNode(node.id().clone()));
            }
        }
        if !index.contains_key(&self.sink) {
            return Err(ModelError::UnknownSink(self.sink));
        }
        let mut seen = BTreeSet::new();
        for edge in &self.edges {
            for end in [edge.from(), edge.to()] {
                if !index.contains_key(end) {
                    return Err(ModelError::UnknownEndpoint(end.clone()));
                }
            }
            if edge.from() == edge.to() {
                return Err(ModelError::SelfLoop(edge.from().clone()));
            }
            if !seen.insert((edge.from(), edge.to(), edge.kind())) {
                return Err(ModelError::DuplicateEdge {
                    from: edge.from().clone(),
                    to: edge.to().clone(),
                    kind: edge.kind(),
                });
            }
        }
        let mut keys = BTreeSet::new();
        for entry in &self.glossary {
            if !keys.insert(entry.key()) {
                return Err(ModelError::DuplicateSymbol(entry.key().into()));
            }
        }
        let mut meta = BTreeMap::new();
        for (key, value) in self.meta {
            if !is_meta_key(&key) {
                return Err(ModelError::InvalidMetaKey(key));
            }
            if meta.contains_key(&key) {
                return Err(ModelError::DuplicateMeta(key));
            }
            meta.insert(key, value);
        }
        Ok(CourseGraph {
            title: self.title,
            sink: self.sink,
            nodes: self.nodes,
            edges: self.edges,
            glossary: self.glossary,
            meta,
            index,
        })
    }
}

/// Meta keys are bare words: `[A-Za-z_][A-Za-z0-9_]*`.
pub fn is_meta_key(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// The nodes and edges lying on some directed route from `origin` to the sink.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct HighlightSet {
    /// Hovered node.
    pub origin: NodeId,
    /// Nodes on a route; empty when the origin cannot reach the sink.
    pub node_ids: BTreeSet<NodeId>,
    /// Indices into [`CourseGraph::edges`].
    pub edge_indices: BTreeSet<usize>,
}

impl HighlightSet {
    /// True when nothing is lit.
    pub fn is_empty(&self) -> bool {
        self.node_ids.is_empty()
    }
}
