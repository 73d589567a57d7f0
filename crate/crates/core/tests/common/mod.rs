//! Test-only oracles, deliberately independent of the library's traversal code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use proptest::prelude::*;
use syllagraph_core::{CourseGraph, Edge, GridPos, Node, NodeId, RelationshipKind, Side};

/// Union of the nodes and edge indices of every simple path `origin => sink`,
/// found by exhaustive depth-first enumeration over edges.
pub fn enumerate_routes(graph: &CourseGraph, origin: &str) -> (BTreeSet<String>, BTreeSet<usize>) {
    fn dfs(
        graph: &CourseGraph,
        at: &str,
        visited: &mut Vec<String>,
        path_edges: &mut Vec<usize>,
        nodes: &mut BTreeSet<String>,
        edges: &mut BTreeSet<usize>,
    ) {
        if at == graph.sink().as_str() {
            nodes.extend(visited.iter().cloned());
            edges.extend(path_edges.iter().copied());
            return;
        }
        for (i, e) in graph.edges().iter().enumerate() {
            if e.from().as_str() == at && !visited.iter().any(|v| v == e.to().as_str()) {
                visited.push(e.to().as_str().to_string());
                path_edges.push(i);
                dfs(graph, e.to().as_str(), visited, path_edges, nodes, edges);
                path_edges.pop();
                visited.pop();
            }
        }
    }
    let mut nodes = BTreeSet::new();
    let mut edges = BTreeSet::new();
    dfs(graph, origin, &mut vec![origin.to_string()], &mut Vec::new(), &mut nodes, &mut edges);
    (nodes, edges)
}

/// Reflexive-transitive closure by repeated boolean matrix multiplication.
pub fn closure_matrix(graph: &CourseGraph) -> Vec<Vec<bool>> {
    let n = graph.nodes().len();
    let idx = |id: &NodeId| graph.nodes().iter().position(|x| x.id() == id).unwrap();
    let mut adj = vec![vec![false; n]; n];
    for e in graph.edges() {
        adj[idx(e.from())][idx(e.to())] = true;
    }
    let mut reach: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
    loop {
        let mut next = reach.clone();
        for i in 0..n {
            for j in 0..n {
                if !next[i][j] {
                    next[i][j] = (0..n).any(|k| reach[i][k] && adj[k][j]);
                }
            }
        }
        if next == reach {
            return reach;
        }
        reach = next;
    }
}

pub fn id(s: &str) -> NodeId {
    NodeId::new(s).unwrap()
}

pub fn names(set: &BTreeSet<NodeId>) -> BTreeSet<String> {
    set.iter().map(|n| n.as_str().to_string()).collect()
}

fn kind(k: u8) -> RelationshipKind {
    RelationshipKind::ALL[k as usize % 3]
}

/// Random DAG: up to `max_nodes` nodes, at most 30 edges, all pointing forward
/// in a shuffled order, and a random sink.
pub fn arb_dag(max_nodes: usize) -> impl Strategy<Value = CourseGraph> {
    (1..=max_nodes)
        .prop_flat_map(|n| {
            let pairs = proptest::collection::vec((0..n, 0..n, 0u8..3), 0..=30);
            let order = Just((0..n).collect::<Vec<usize>>()).prop_shuffle();
            (Just(n), order, pairs, 0..n)
        })
        .prop_map(|(n, order, pairs, sink)| {
            let name = |i: usize| format!("n{i}");
            let mut b = CourseGraph::builder("dag", id(&name(sink)));
            for i in 0..n {
                b = b.node(
                    Node::builder(id(&name(i)), name(i), Side::Other, GridPos::new(i as u32, 0))
                        .build()
                        .unwrap(),
                );
            }
            let rank = |i: usize| order.iter().position(|&x| x == i).unwrap();
            let mut seen = BTreeSet::new();
            for (a, c, k) in pairs {
                if a == c {
                    continue;
                }
                let (from, to) = if rank(a) < rank(c) { (a, c) } else { (c, a) };
                if seen.insert((from, to, k % 3)) {
                    b = b.edge(Edge::new(id(&name(from)), id(&name(to)), kind(k), None).unwrap());
                }
            }
            b.build().unwrap()
        })
}
