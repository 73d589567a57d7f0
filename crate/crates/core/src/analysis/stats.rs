use alloc::collections::BTreeMap;

use crate::model::{CourseGraph, RelationshipKind, ResourceKind, Side};

/// Summary counts for a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Stats {
    /// Number of nodes.
    pub node_count: usize,
    /// Number of edges.
    pub edge_count: usize,
    /// Nodes per side; every side is present, possibly with 0.
    pub side_counts: BTreeMap<Side, usize>,
    /// Video links over all nodes.
    pub video_link_total: usize,
    /// Text links over all nodes.
    pub text_link_total: usize,
    /// Edges per relationship kind; every kind is present.
    pub kind_counts: BTreeMap<RelationshipKind, usize>,
}

/// Counts nodes, edges, sides, links and relationship kinds.
pub fn stats(graph: &CourseGraph) -> Stats {
    let mut side_counts: BTreeMap<Side, usize> = Side::ALL.iter().map(|s| (*s, 0)).collect();
    let mut kind_counts: BTreeMap<RelationshipKind, usize> =
        RelationshipKind::ALL.iter().map(|k| (*k, 0)).collect();
    let mut video_link_total = 0;
    let mut text_link_total = 0;
    for node in graph.nodes() {
        *side_counts.entry(node.side()).or_default() += 1;
        video_link_total += node.resources_of(ResourceKind::Video).count();
        text_link_total += node.resources_of(ResourceKind::Text).count();
    }
    for edge in graph.edges() {
        *kind_counts.entry(edge.kind()).or_default() += 1;
    }
    let stats = Stats {
        node_count: graph.nodes().len(),
        edge_count: graph.edges().len(),
        side_counts,
        video_link_total,
        text_link_total,
        kind_counts,
    };
    assert_eq!(stats.side_counts.values().sum::<usize>(), stats.node_count);
    stats
}
