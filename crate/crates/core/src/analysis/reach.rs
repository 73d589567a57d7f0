//! Directed-walk reachability and hover highlight sets.
//!
//! Routes are walks, not simple paths. On an acyclic graph the two agree;
//! on a cyclic one walks keep every query linear in the graph size.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use super::AnalysisError;
use crate::model::{CourseGraph, HighlightSet, NodeId};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Direction {
    Forward,
    Backward,
}

/// Adjacency lists over node indices.
pub(crate) struct Adjacency {
    pub(crate) out: Vec<Vec<usize>>,
    pub(crate) inc: Vec<Vec<usize>>,
}

impl Adjacency {
    pub(crate) fn new(graph: &CourseGraph) -> Self {
        let n = graph.nodes().len();
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for edge in graph.edges() {
            let from = graph.index_of(edge.from().as_str()).expect("endpoints are validated");
            let to = graph.index_of(edge.to().as_str()).expect("endpoints are validated");
            out[from].push(to);
            inc[to].push(from);
        }
        Self { out, inc }
    }

    /// Marks every node reachable from `start` (inclusive). O(V + E).
    fn walk(&self, start: usize, direction: Direction) -> Vec<bool> {
        let lists = match direction {
            Direction::Forward => &self.out,
            Direction::Backward => &self.inc,
        };
        let mut seen = vec![false; lists.len()];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(u) = stack.pop() {
            for &v in &lists[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }
}

fn resolve(graph: &CourseGraph, id: &str) -> Result<usize, AnalysisError> {
    graph
        .index_of(id)
        .ok_or_else(|| AnalysisError::UnknownNode(id.into()))
}

fn collect_ids(graph: &CourseGraph, marks: &[bool]) -> BTreeSet<NodeId> {
    graph
        .nodes()
        .iter()
        .zip(marks)
        .filter(|(_, &m)| m)
        .map(|(n, _)| n.id().clone())
        .collect()
}

/// Every node some directed walk from `id` reaches, `id` included.
pub fn reachable_from(graph: &CourseGraph, id: &str) -> Result<BTreeSet<NodeId>, AnalysisError> {
    let start = resolve(graph, id)?;
    let marks = Adjacency::new(graph).walk(start, Direction::Forward);
    Ok(collect_ids(graph, &marks))
}

/// Every node with a directed walk to `id`, `id` included.
pub fn reaches(graph: &CourseGraph, id: &str) -> Result<BTreeSet<NodeId>, AnalysisError> {
    let target = resolve(graph, id)?;
    let marks = Adjacency::new(graph).walk(target, Direction::Backward);
    Ok(collect_ids(graph, &marks))
}

fn highlight_with(
    graph: &CourseGraph,
    adj: &Adjacency,
    to_sink: &[bool],
    origin: usize,
) -> HighlightSet {
    let origin_id = graph.nodes()[origin].id().clone();
    let sink = graph.index_of(graph.sink().as_str()).expect("sink is validated");
    let from_origin = adj.walk(origin, Direction::Forward);
    if !from_origin[sink] {
        return HighlightSet {
            origin: origin_id,
            node_ids: BTreeSet::new(),
            edge_indices: BTreeSet::new(),
        };
    }
    let on_route: Vec<bool> = from_origin.iter().zip(to_sink).map(|(&a, &b)| a && b).collect();
    let edge_indices = graph
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| {
            let u = graph.index_of(e.from().as_str()).expect("validated");
            let v = graph.index_of(e.to().as_str()).expect("validated");
            from_origin[u] && to_sink[v]
        })
        .map(|(i, _)| i)
        .collect();
    HighlightSet {
        origin: origin_id,
        node_ids: collect_ids(graph, &on_route),
        edge_indices,
    }
}

/// Nodes and edges on some directed route from `id` to the sink.
///
/// An edge `u -> v` is lit when `id` reaches `u` and `v` reaches the sink.
/// Both sets are empty when `id` cannot reach the sink.
pub fn highlight(graph: &CourseGraph, id: &str) -> Result<HighlightSet, AnalysisError> {
    let origin = resolve(graph, id)?;
    let adj = Adjacency::new(graph);
    let sink = graph.index_of(graph.sink().as_str()).expect("sink is validated");
    let to_sink = adj.walk(sink, Direction::Backward);
    Ok(highlight_with(graph, &adj, &to_sink, origin))
}

/// Highlight sets for every node, keyed by id.
pub fn highlight_all(graph: &CourseGraph) -> BTreeMap<NodeId, HighlightSet> {
    let adj = Adjacency::new(graph);
    let sink = graph.index_of(graph.sink().as_str()).expect("sink is validated");
    let to_sink = adj.walk(sink, Direction::Backward);
    (0..graph.nodes().len())
        .map(|i| (graph.nodes()[i].id().clone(), highlight_with(graph, &adj, &to_sink, i)))
        .collect()
}
