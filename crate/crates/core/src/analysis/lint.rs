//! The lint rule registry.
//!
//! | id | name                 | severity |
//! |----|----------------------|----------|
//! | R1 | notation-consistency | error    |
//! | R2 | note-brevity         | warning  |
//! | R3 | video-range          | warning  |
//! | R4 | sink-reachability    | error    |
//! | R5 | position-overlap     | warning  |
//! | R6 | orphan-node          | warning  |
//! | R7 | acyclicity           | warning  |
//! | R8 | direct-media-link    | warning  |
//!
//! A non-sink node without any edge can never reach the sink; it is reported
//! once, by R6, and R4 covers the connected nodes that still miss the sink.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::reach::Adjacency;
use crate::model::{CourseGraph, Diagnostic, NodeId, ResourceKind, Severity, Subject};

/// A lint rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    /// Every `uses` key resolves in the glossary.
    NotationConsistency,
    /// Node and edge notes stay short.
    NoteBrevity,
    /// Each node has between `min_videos` and `max_videos` videos.
    VideoRange,
    /// Every node reaches the sink.
    SinkReachability,
    /// No two nodes share a grid cell.
    PositionOverlap,
    /// Every non-sink node has an edge.
    OrphanNode,
    /// No directed cycles.
    Acyclicity,
    /// Video and audio links point at media files or embed players.
    DirectMediaLink,
}

impl Rule {
    /// Every rule, in id order.
    pub const ALL: [Rule; 8] = [
        Rule::NotationConsistency,
        Rule::NoteBrevity,
        Rule::VideoRange,
        Rule::SinkReachability,
        Rule::PositionOverlap,
        Rule::OrphanNode,
        Rule::Acyclicity,
        Rule::DirectMediaLink,
    ];

    /// Short id, `R1` to `R8`.
    pub fn id(self) -> &'static str {
        match self {
            Rule::NotationConsistency => "R1",
            Rule::NoteBrevity => "R2",
            Rule::VideoRange => "R3",
            Rule::SinkReachability => "R4",
            Rule::PositionOverlap => "R5",
            Rule::OrphanNode => "R6",
            Rule::Acyclicity => "R7",
            Rule::DirectMediaLink => "R8",
        }
    }

    /// Kebab-case name.
    pub fn name(self) -> &'static str {
        match self {
            Rule::NotationConsistency => "notation-consistency",
            Rule::NoteBrevity => "note-brevity",
            Rule::VideoRange => "video-range",
            Rule::SinkReachability => "sink-reachability",
            Rule::PositionOverlap => "position-overlap",
            Rule::OrphanNode => "orphan-node",
            Rule::Acyclicity => "acyclicity",
            Rule::DirectMediaLink => "direct-media-link",
        }
    }

    /// Fixed severity.
    pub fn severity(self) -> Severity {
        match self {
            Rule::NotationConsistency | Rule::SinkReachability => Severity::Error,
            _ => Severity::Warning,
        }
    }

    /// Looks a rule up by id (`R3`, case-insensitive) or name (`video-range`).
    pub fn lookup(s: &str) -> Option<Rule> {
        Self::ALL
            .into_iter()
            .find(|r| r.id().eq_ignore_ascii_case(s) || r.name() == s)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for Rule {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.id())
    }
}

/// Thresholds and switches for [`validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleConfig {
    max_note_chars: usize,
    min_videos: usize,
    max_videos: usize,
    disabled: BTreeSet<Rule>,
}

impl Default for RuleConfig {
    fn default() -> Self {
        Self { max_note_chars: 80, min_videos: 5, max_videos: 10, disabled: BTreeSet::new() }
    }
}

impl RuleConfig {
    /// Returns `None` unless `min_videos <= max_videos` and `max_note_chars >= 1`.
    pub fn new(max_note_chars: usize, min_videos: usize, max_videos: usize) -> Option<Self> {
        (min_videos <= max_videos && max_note_chars >= 1).then(|| Self {
            max_note_chars,
            min_videos,
            max_videos,
            disabled: BTreeSet::new(),
        })
    }

    /// Turns a rule off.
    pub fn disable(mut self, rule: Rule) -> Self {
        self.disabled.insert(rule);
        self
    }

    /// Longest allowed note, in characters.
    pub fn max_note_chars(&self) -> usize {
        self.max_note_chars
    }

    /// Fewest videos per node.
    pub fn min_videos(&self) -> usize {
        self.min_videos
    }

    /// Most videos per node.
    pub fn max_videos(&self) -> usize {
        self.max_videos
    }

    /// Disabled rules.
    pub fn disabled(&self) -> &BTreeSet<Rule> {
        &self.disabled
    }

    /// Whether a rule runs.
    pub fn enabled(&self, rule: Rule) -> bool {
        !self.disabled.contains(&rule)
    }
}

/// Runs every enabled rule. Output is sorted by (severity, rule, subject, message).
pub fn validate(graph: &CourseGraph, config: &RuleConfig) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let adj = Adjacency::new(graph);
    let mut run = |rule: Rule, check: &dyn Fn(&mut Vec<Diagnostic>)| {
        if config.enabled(rule) {
            check(&mut out);
        }
    };
    run(Rule::NotationConsistency, &|out| notation_consistency(graph, out));
    run(Rule::NoteBrevity, &|out| note_brevity(graph, config, out));
    run(Rule::VideoRange, &|out| video_range(graph, config, out));
    run(Rule::SinkReachability, &|out| sink_reachability(graph, &adj, out));
    run(Rule::PositionOverlap, &|out| position_overlap(graph, out));
    run(Rule::OrphanNode, &|out| orphan_node(graph, &adj, out));
    run(Rule::Acyclicity, &|out| acyclicity(graph, &adj, out));
    run(Rule::DirectMediaLink, &|out| direct_media_link(graph, out));
    out.sort_by(|a, b| {
        (a.severity, a.rule, &a.subject, &a.message).cmp(&(b.severity, b.rule, &b.subject, &b.message))
    });
    out
}

fn node_subject(id: &NodeId) -> Subject {
    Subject::Node { id: id.clone() }
}

fn notation_consistency(graph: &CourseGraph, out: &mut Vec<Diagnostic>) {
    for node in graph.nodes() {
        for key in node.symbols() {
            if graph.symbol(key).is_none() {
                out.push(Diagnostic::new(
                    Rule::NotationConsistency,
                    node_subject(node.id()),
                    format!("node {} uses symbol {key:?}, which is not in the glossary", node.id()),
                ));
            }
        }
    }
}

fn note_brevity(graph: &CourseGraph, config: &RuleConfig, out: &mut Vec<Diagnostic>) {
    let max = config.max_note_chars;
    for node in graph.nodes() {
        if let Some(len) = node.note().map(|n| n.chars().count()).filter(|&l| l > max) {
            out.push(Diagnostic::new(
                Rule::NoteBrevity,
                node_subject(node.id()),
                format!("note on node {} has {len} characters (max {max})", node.id()),
            ));
        }
    }
    for (index, edge) in graph.edges().iter().enumerate() {
        if let Some(len) = edge.note().map(|n| n.chars().count()).filter(|&l| l > max) {
            out.push(Diagnostic::new(
                Rule::NoteBrevity,
                Subject::Edge { index },
                format!("note on edge {edge} has {len} characters (max {max})"),
            ));
        }
    }
}

fn video_range(graph: &CourseGraph, config: &RuleConfig, out: &mut Vec<Diagnostic>) {
    for node in graph.nodes() {
        let count = node.video_count();
        if count < config.min_videos || count > config.max_videos {
            out.push(Diagnostic::new(
                Rule::VideoRange,
                node_subject(node.id()),
                format!(
                    "node {} has {count} videos (expected {} to {})",
                    node.id(),
                    config.min_videos,
                    config.max_videos
                ),
            ));
        }
    }
}

fn sink_reachability(graph: &CourseGraph, adj: &Adjacency, out: &mut Vec<Diagnostic>) {
    let to_sink = super::reaches(graph, graph.sink().as_str()).expect("sink is validated");
    for (i, node) in graph.nodes().iter().enumerate() {
        let isolated = adj.out[i].is_empty() && adj.inc[i].is_empty();
        if !to_sink.contains(node.id()) && !isolated {
            out.push(Diagnostic::new(
                Rule::SinkReachability,
                node_subject(node.id()),
                format!("node {} has no route to the sink {}", node.id(), graph.sink()),
            ));
        }
    }
}

fn position_overlap(graph: &CourseGraph, out: &mut Vec<Diagnostic>) {
    let mut cells: BTreeMap<_, Vec<NodeId>> = BTreeMap::new();
    for node in graph.nodes() {
        cells.entry(node.pos()).or_default().push(node.id().clone());
    }
    for (pos, mut ids) in cells {
        if ids.len() > 1 {
            ids.sort();
            let names: Vec<&str> = ids.iter().map(NodeId::as_str).collect();
            out.push(Diagnostic::new(
                Rule::PositionOverlap,
                Subject::Nodes { ids: ids.clone() },
                format!("nodes {} share position {pos}", names.join(", ")),
            ));
        }
    }
}

fn orphan_node(graph: &CourseGraph, adj: &Adjacency, out: &mut Vec<Diagnostic>) {
    for (i, node) in graph.nodes().iter().enumerate() {
        if node.id() != graph.sink() && adj.out[i].is_empty() && adj.inc[i].is_empty() {
            out.push(Diagnostic::new(
                Rule::OrphanNode,
                node_subject(node.id()),
                format!("node {} has no incident edge", node.id()),
            ));
        }
    }
}

fn acyclicity(graph: &CourseGraph, adj: &Adjacency, out: &mut Vec<Diagnostic>) {
    for component in strongly_connected(adj) {
        if component.len() < 2 {
            continue;
        }
        let mut ids: Vec<NodeId> = component.iter().map(|&i| graph.nodes()[i].id().clone()).collect();
        ids.sort();
        let names: Vec<&str> = ids.iter().map(NodeId::as_str).collect();
        out.push(Diagnostic::new(
            Rule::Acyclicity,
            Subject::Nodes { ids: ids.clone() },
            format!("directed cycle through {}", names.join(", ")),
        ));
    }
}

/// Iterative Tarjan; returns the strongly connected components.
fn strongly_connected(adj: &Adjacency) -> Vec<Vec<usize>> {
    const UNSEEN: usize = usize::MAX;
    let n = adj.out.len();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut components = Vec::new();
    let mut counter = 0;
    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        // (node, next child position)
        let mut frames = vec![(root, 0usize)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (u, ref mut child)) = frames.last_mut() {
            if let Some(&v) = adj.out[u].get(*child) {
                *child += 1;
                if index[v] == UNSEEN {
                    index[v] = counter;
                    low[v] = counter;
                    counter += 1;
                    stack.push(v);
                    on_stack[v] = true;
                    frames.push((v, 0));
                } else if on_stack[v] {
                    low[u] = low[u].min(index[v]);
                }
                continue;
            }
            frames.pop();
            if let Some(&(parent, _)) = frames.last() {
                low[parent] = low[parent].min(low[u]);
            }
            if low[u] == index[u] {
                let mut component = Vec::new();
                loop {
                    let w = stack.pop().expect("u is on the stack");
                    on_stack[w] = false;
                    component.push(w);
                    if w == u {
                        break;
                    }
                }
                components.push(component);
            }
        }
    }
    components
}

const MEDIA_EXTENSIONS: [&str; 14] = [
    "mp4", "m4v", "webm", "ogv", "ogg", "mov", "mkv", "mp3", "m4a", "aac", "wav", "oga", "flac",
    "opus",
];

/// (host suffix, path prefix) pairs of embeddable players.
const EMBED_PATHS: [(&str, &str); 4] = [
    ("youtube.com", "/embed/"),
    ("youtube-nocookie.com", "/embed/"),
    ("player.vimeo.com", "/video/"),
    ("w.soundcloud.com", "/player/"),
];

/// True when a url names a media file or an embed player rather than a hosting page.
pub(crate) fn is_direct_media_url(url: &str) -> bool {
    let Some((_, rest)) = url.split_once("://") else {
        return false;
    };
    let rest = rest.split(['?', '#']).next().unwrap_or("");
    let (host, path) = match rest.find('/') {
        Some(i) => (&rest[..i], &rest[i..]),
        None => (rest, ""),
    };
    let host = host.rsplit('@').next().unwrap_or(host);
    let host = host.split(':').next().unwrap_or(host).to_ascii_lowercase();
    let embedded = EMBED_PATHS.iter().any(|(suffix, prefix)| {
        (host == *suffix || host.ends_with(&format!(".{suffix}"))) && path.starts_with(prefix)
    });
    let file = path.rsplit('/').next().unwrap_or("");
    let media_file = file
        .rsplit_once('.')
        .is_some_and(|(stem, ext)| !stem.is_empty() && MEDIA_EXTENSIONS.contains(&ext.to_ascii_lowercase().as_str()));
    embedded || media_file
}

fn direct_media_link(graph: &CourseGraph, out: &mut Vec<Diagnostic>) {
    for node in graph.nodes() {
        for r in node.resources() {
            if matches!(r.kind(), ResourceKind::Video | ResourceKind::Audio) && !is_direct_media_url(r.url()) {
                out.push(Diagnostic::new(
                    Rule::DirectMediaLink,
                    node_subject(node.id()),
                    format!(
                        "{} link {} on node {} is not a media file or embed url",
                        r.kind().keyword(),
                        r.url(),
                        node.id()
                    ),
                ));
            }
        }
    }
}
