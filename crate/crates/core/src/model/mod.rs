//! Immutable domain types shared by the parser, analyses and emitters.
//!
//! Every type here is validated on construction. A value that exists has
//! already passed its invariants, so downstream code never re-checks them.

mod diagnostic;
mod error;
mod graph;

use alloc::string::String;
use alloc::vec::Vec;
use core::borrow::Borrow;
use core::fmt;

pub use self::diagnostic::{Diagnostic, Location, Severity, Subject};
pub use self::error::ModelError;
pub use self::graph::{CourseGraph, GraphBuilder, HighlightSet};

/// Largest accepted grid coordinate on either axis.
pub const MAX_GRID: u32 = 999;

/// A node identifier: lowercase ASCII letters, digits and `_`, starting with a letter.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize), serde(transparent))]
pub struct NodeId(String);

impl NodeId {
    /// Validates `raw` as an identifier.
    pub fn new(raw: impl Into<String>) -> Result<Self, ModelError> {
        let raw = raw.into();
        if is_identifier(&raw) {
            Ok(Self(raw))
        } else {
            Err(ModelError::InvalidId(raw))
        }
    }

    /// The identifier text.
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

/// Returns true when `s` is a legal node identifier.
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Borrow<str> for NodeId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl AsRef<str> for NodeId {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// Which derivation a diagram belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize, serde::Deserialize),
    serde(rename_all = "lowercase")
)]
pub enum Side {
    /// Aggregate-supply derivation.
    As,
    /// Aggregate-demand derivation.
    Ad,
    /// Anything outside the two derivations.
    Other,
}

impl Side {
    /// All sides in canonical order.
    pub const ALL: [Side; 3] = [Side::As, Side::Ad, Side::Other];

    /// Source-format keyword.
    pub fn keyword(self) -> &'static str {
        match self {
            Side::As => "as",
            Side::Ad => "ad",
            Side::Other => "other",
        }
    }

    /// Human label.
    pub fn label(self) -> &'static str {
        match self {
            Side::As => "AS",
            Side::Ad => "AD",
            Side::Other => "Other",
        }
    }

    /// Inverse of [`Side::keyword`].
    pub fn from_keyword(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|side| side.keyword() == s)
    }
}

/// The type of relationship one diagram has with another.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize, serde::Deserialize),
    serde(rename_all = "snake_case")
)]
pub enum RelationshipKind {
    /// One diagram is derived from the other.
    Derivative,
    /// The two diagrams share a component.
    CommonPart,
    /// The two diagrams view the same object from different angles.
    Perspective,
}

impl RelationshipKind {
    /// All kinds in canonical order.
    pub const ALL: [RelationshipKind; 3] = [
        RelationshipKind::Derivative,
        RelationshipKind::CommonPart,
        RelationshipKind::Perspective,
    ];

    /// Serialized name.
    pub fn name(self) -> &'static str {
        match self {
            RelationshipKind::Derivative => "derivative",
            RelationshipKind::CommonPart => "common_part",
            RelationshipKind::Perspective => "perspective",
        }
    }

    /// Inverse of [`RelationshipKind::name`].
    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|kind| kind.name() == s)
    }
}

impl fmt::Display for RelationshipKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Grid cell of a node: column then row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct GridPos {
    /// Grid column, `0..=999`.
    pub col: u32,
    /// Grid row, `0..=999`.
    pub row: u32,
}

impl GridPos {
    /// Creates a position without range checks; [`NodeBuilder::build`] checks them.
    pub const fn new(col: u32, row: u32) -> Self {
        Self { col, row }
    }
}

impl fmt::Display for GridPos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.col, self.row)
    }
}

/// Media kind of a resource link.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize),
    serde(rename_all = "lowercase")
)]
pub enum ResourceKind {
    /// Instructional video.
    Video,
    /// Text or web page.
    Text,
    /// Audio recording.
    Audio,
}

impl ResourceKind {
    /// All kinds in canonical order.
    pub const ALL: [ResourceKind; 3] = [ResourceKind::Video, ResourceKind::Text, ResourceKind::Audio];

    /// Source-format directive name.
    pub fn keyword(self) -> &'static str {
        match self {
            ResourceKind::Video => "video",
            ResourceKind::Text => "text",
            ResourceKind::Audio => "audio",
        }
    }

    /// Inverse of [`ResourceKind::keyword`].
    pub fn from_keyword(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|kind| kind.keyword() == s)
    }
}

/// A link to an external learning resource.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Resource {
    kind: ResourceKind,
    url: String,
    label: String,
}

impl Resource {
    /// Requires an `http://` or `https://` url and a nonempty label.
    pub fn new(
        kind: ResourceKind,
        url: impl Into<String>,
        label: impl Into<String>,
    ) -> Result<Self, ModelError> {
        let url = url.into();
        let label = label.into();
        if !(url.starts_with("http://") || url.starts_with("https://")) {
            return Err(ModelError::BadUrl(url));
        }
        if label.trim().is_empty() {
            return Err(ModelError::EmptyLabel(url));
        }
        Ok(Self { kind, url, label })
    }

    /// Media kind.
    pub fn kind(&self) -> ResourceKind {
        self.kind
    }

    /// Absolute url.
    pub fn url(&self) -> &str {
        &self.url
    }

    /// Display label.
    pub fn label(&self) -> &str {
        &self.label
    }
}

/// One glossary row.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SymbolEntry {
    key: String,
    meaning: String,
}

impl SymbolEntry {
    /// Both parts must be nonempty.
    pub fn new(key: impl Into<String>, meaning: impl Into<String>) -> Result<Self, ModelError> {
        let key = key.into();
        let meaning = meaning.into();
        if key.trim().is_empty() {
            return Err(ModelError::EmptySymbolKey);
        }
        if meaning.trim().is_empty() {
            return Err(ModelError::EmptyMeaning(key));
        }
        Ok(Self { key, meaning })
    }

    /// The symbol as written.
    pub fn key(&self) -> &str {
        &self.key
    }

    /// What the symbol stands for.
    pub fn meaning(&self) -> &str {
        &self.meaning
    }
}

/// One diagram of the course.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Node {
    id: NodeId,
    title: String,
    side: Side,
    pos: GridPos,
    chapters: Vec<u32>,
    symbols: Vec<String>,
    resources: Vec<Resource>,
    note: Option<String>,
}

impl Node {
    /// Starts a node with its required fields.
    pub fn builder(id: NodeId, title: impl Into<String>, side: Side, pos: GridPos) -> NodeBuilder {
        NodeBuilder {
            node: Node {
                id,
                title: title.into(),
                side,
                pos,
                chapters: Vec::new(),
                symbols: Vec::new(),
                resources: Vec::new(),
                note: None,
            },
        }
    }

    /// Identifier.
    pub fn id(&self) -> &NodeId {
        &self.id
    }

    /// Diagram title.
    pub fn title(&self) -> &str {
        &self.title
    }

    /// Derivation side.
    pub fn side(&self) -> Side {
        self.side
    }

    /// Grid position.
    pub fn pos(&self) -> GridPos {
        self.pos
    }

    /// Chapter tags, strictly increasing.
    pub fn chapters(&self) -> &[u32] {
        &self.chapters
    }

    /// Glossary keys this diagram uses.
    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    /// Resource links in declaration order.
    pub fn resources(&self) -> &[Resource] {
        &self.resources
    }

    /// Free-text note.
    pub fn note(&self) -> Option<&str> {
        self.note.as_deref()
    }

    /// Number of video resources.
    pub fn video_count(&self) -> usize {
        self.resources_of(ResourceKind::Video).count()
    }

    /// Resources of one kind, in declaration order.
    pub fn resources_of(&self, kind: ResourceKind) -> impl Iterator<Item = &Resource> {
        self.resources.iter().filter(move |r| r.kind == kind)
    }
}

/// Accumulates the optional parts of a [`Node`].
#[derive(Debug, Clone)]
pub struct NodeBuilder {
    node: Node,
}

impl NodeBuilder {
    /// Appends a chapter tag.
    pub fn chapter(mut self, chapter: u32) -> Self {
        self.node.chapters.push(chapter);
        self
    }

    /// Appends a glossary key.
    pub fn uses(mut self, key: impl Into<String>) -> Self {
        self.node.symbols.push(key.into());
        self
    }

    /// Appends a resource.
    pub fn resource(mut self, resource: Resource) -> Self {
        self.node.resources.push(resource);
        self
    }

    /// Sets the note.
    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.node.note = Some(note.into());
        self
    }

    /// Checks the node invariants.
    pub fn build(self) -> Result<Node, ModelError> {
        let node = self.node;
        if node.title.trim().is_empty() {
            return Err(ModelError::EmptyTitle(node.id));
        }
        if node.pos.col > MAX_GRID || node.pos.row > MAX_GRID {
            return Err(ModelError::PosOutOfRange { node: node.id, pos: node.pos });
        }
        if node.chapters.first() == Some(&0) {
            return Err(ModelError::ChapterZero(node.id));
        }
        if node.chapters.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ModelError::ChaptersNotIncreasing(node.id));
        }
        if node.symbols.iter().any(|s| s.trim().is_empty()) {
            return Err(ModelError::EmptySymbolKey);
        }
        Ok(node)
    }
}

/// A directed, typed relationship between two diagrams.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Edge {
    from: NodeId,
    to: NodeId,
    kind: RelationshipKind,
    note: Option<String>,
}

impl Edge {
    /// A note, if given, must contain something other than whitespace.
    pub fn new(
        from: NodeId,
        to: NodeId,
        kind: RelationshipKind,
        note: Option<String>,
    ) -> Result<Self, ModelError> {
        if note.as_deref().is_some_and(|n| n.trim().is_empty()) {
            return Err(ModelError::BlankEdgeNote { from, to });
        }
        Ok(Self { from, to, kind, note })
    }

    /// Source node.
    pub fn from(&self) -> &NodeId {
        &self.from
    }

    /// Target node.
    pub fn to(&self) -> &NodeId {
        &self.to
    }

    /// Relationship kind.
    pub fn kind(&self) -> RelationshipKind {
        self.kind
    }

    /// Arrow annotation.
    pub fn note(&self) -> Option<&str> {
        self.note.as_deref()
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}:{}", self.from, self.to, self.kind)
    }
}
