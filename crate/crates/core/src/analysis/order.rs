use alloc::vec::Vec;

use crate::model::{CourseGraph, NodeId};

/// Teaching order: chapter-tagged nodes by (first chapter, row, column, id),
/// then untagged nodes by (row, column, id).
pub fn course_order(graph: &CourseGraph) -> Vec<NodeId> {
    let mut nodes: Vec<_> = graph.nodes().iter().collect();
    nodes.sort_by_key(|n| {
        let chapter = n.chapters().first().copied();
        (
            chapter.is_none(),
            chapter.unwrap_or(0),
            n.pos().row,
            n.pos().col,
            n.id().clone(),
        )
    });
    nodes.into_iter().map(|n| n.id().clone()).collect()
}
