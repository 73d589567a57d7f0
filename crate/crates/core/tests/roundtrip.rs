use std::collections::BTreeSet;

use proptest::prelude::*;
use syllagraph_core::corpus::{load_corpus, SOURCE};
use syllagraph_core::{
    parse, serialize, CourseGraph, Edge, GridPos, Node, NodeId, RelationshipKind, Resource,
    ResourceKind, Side, SymbolEntry,
};

/// Strings with quotes, backslashes, control characters and non-ASCII text.
fn text() -> impl Strategy<Value = String> {
    "[a-zA-Z0-9 \"\\\\#{}():=,\t\n\u{1}πδ–“”]{0,12}".prop_map(|s| format!("x{s}"))
}

fn resource() -> impl Strategy<Value = Resource> {
    (0usize..3, "[a-z0-9/._?=&-]{0,16}", text()).prop_map(|(k, path, label)| {
        Resource::new(ResourceKind::ALL[k], format!("https://h.example/{path}"), label).unwrap()
    })
}

fn node(i: usize) -> impl Strategy<Value = Node> {
    (
        text(),
        0usize..3,
        (0u32..=999, 0u32..=999),
        proptest::collection::btree_set(1u32..40, 0..3),
        proptest::collection::vec(prop_oneof![text(), "[A-Za-z_][A-Za-z0-9_]{0,3}"], 0..3),
        proptest::collection::vec(resource(), 0..4),
        proptest::option::of(text()),
    )
        .prop_map(move |(title, side, (col, row), chapters, uses, resources, note)| {
            let mut b = Node::builder(
                NodeId::new(format!("n{i}")).unwrap(),
                title,
                Side::ALL[side],
                GridPos::new(col, row),
            );
            for c in chapters {
                b = b.chapter(c);
            }
            for u in uses {
                b = b.uses(u);
            }
            for r in resources {
                b = b.resource(r);
            }
            if let Some(n) = note {
                b = b.note(n);
            }
            b.build().unwrap()
        })
}

fn graph() -> impl Strategy<Value = CourseGraph> {
    (1usize..6)
        .prop_flat_map(|n| {
            let nodes: Vec<_> = (0..n).map(node).collect();
            (
                nodes,
                0..n,
                proptest::collection::vec((0..n, 0..n, 0usize..3, proptest::option::of(text())), 0..8),
                proptest::collection::btree_map(text(), text(), 0..4),
                proptest::collection::btree_map("[A-Za-z_][A-Za-z0-9_]{0,5}", text(), 0..3),
                text(),
            )
        })
        .prop_map(|(nodes, sink, edges, glossary, meta, title)| {
            let sink_id = nodes[sink].id().clone();
            let mut b = CourseGraph::builder(title, sink_id);
            let ids: Vec<NodeId> = nodes.iter().map(|n| n.id().clone()).collect();
            for n in nodes {
                b = b.node(n);
            }
            let mut seen = BTreeSet::new();
            for (from, to, kind, note) in edges {
                if from != to && seen.insert((from, to, kind)) {
                    let e = Edge::new(ids[from].clone(), ids[to].clone(), RelationshipKind::ALL[kind], note);
                    b = b.edge(e.unwrap());
                }
            }
            for (k, m) in glossary {
                b = b.symbol(SymbolEntry::new(k, m).unwrap());
            }
            for (k, v) in meta {
                b = b.meta(k, v);
            }
            b.build().unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn serialize_then_parse_is_identity(g in graph()) {
        let text = serialize(&g);
        let back = parse(&text);
        prop_assert!(back.is_ok(), "{:?}\n{}", back.err(), text);
        prop_assert_eq!(back.unwrap(), g);
    }

    #[test]
    fn crlf_and_lf_parse_equal(g in graph()) {
        let lf = serialize(&g);
        let crlf = lf.replace('\n', "\r\n");
        prop_assert_eq!(parse(&lf).unwrap(), parse(&crlf).unwrap());
    }
}

#[test]
fn corpus_round_trips() {
    let g = load_corpus();
    let text = serialize(&g);
    assert_eq!(parse(&text).unwrap(), g);
    assert_eq!(serialize(&parse(&text).unwrap()), text);
}

#[test]
fn parsing_is_deterministic() {
    assert_eq!(parse(SOURCE), parse(SOURCE));
}

#[test]
fn two_independent_errors_are_both_reported() {
    let src = SOURCE
        .replacen("side: as", "side: sideways", 1)
        .replacen("pos: (8, 0)", "pos: (8 0)", 1);
    let errs = parse(&src).unwrap_err();
    assert!(errs.len() >= 2, "{errs:?}");
}
