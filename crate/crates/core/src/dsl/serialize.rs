use alloc::string::String;
use core::fmt::Write;

use super::lexer::{is_word_char, is_word_start};
use super::FORMAT_VERSION;
use crate::model::CourseGraph;

/// Writes the canonical `.sgs` form of a graph.
///
/// Layout: version pragma, then sink, meta (key order), nodes, edges and
/// glossary, each in declaration order, two-space indentation, LF endings.
pub fn serialize(graph: &CourseGraph) -> String {
    let mut out = String::new();
    // Writing into a String cannot fail.
    let _ = write_graph(&mut out, graph);
    out
}

fn write_graph(out: &mut String, g: &CourseGraph) -> core::fmt::Result {
    writeln!(out, "syllagraph {FORMAT_VERSION}")?;
    writeln!(out, "syllabus {} {{", quote(g.title()))?;
    writeln!(out, "  sink {}", g.sink())?;
    for (key, value) in g.meta() {
        writeln!(out, "  meta {key}: {}", quote(value))?;
    }
    for node in g.nodes() {
        writeln!(out)?;
        writeln!(out, "  node {} {{", node.id())?;
        writeln!(out, "    title: {}", quote(node.title()))?;
        writeln!(out, "    side: {}", node.side().keyword())?;
        writeln!(out, "    pos: ({}, {})", node.pos().col, node.pos().row)?;
        for chapter in node.chapters() {
            writeln!(out, "    chapter: {chapter}")?;
        }
        for key in node.symbols() {
            if is_bare_word(key) {
                writeln!(out, "    uses: {key}")?;
            } else {
                writeln!(out, "    uses: {}", quote(key))?;
            }
        }
        for r in node.resources() {
            writeln!(out, "    {}: {} {}", r.kind().keyword(), quote(r.url()), quote(r.label()))?;
        }
        if let Some(note) = node.note() {
            writeln!(out, "    note: {}", quote(note))?;
        }
        writeln!(out, "  }}")?;
    }
    if !g.edges().is_empty() {
        writeln!(out)?;
    }
    for edge in g.edges() {
        write!(out, "  edge {} -> {} : {}", edge.from(), edge.to(), edge.kind())?;
        if let Some(note) = edge.note() {
            write!(out, " {}", quote(note))?;
        }
        writeln!(out)?;
    }
    if !g.glossary().is_empty() {
        writeln!(out)?;
    }
    for entry in g.glossary() {
        writeln!(out, "  symbol {} = {}", quote(entry.key()), quote(entry.meaning()))?;
    }
    writeln!(out, "}}")
}

fn is_bare_word(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(is_word_start) && chars.all(is_word_char)
}

/// Double-quotes `s`, escaping quotes, backslashes and control characters.
pub(crate) fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if c.is_control() => {
                let _ = write!(out, "\\u{{{:x}}}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}
