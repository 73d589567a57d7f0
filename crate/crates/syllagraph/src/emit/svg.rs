use std::collections::BTreeMap;
use std::fmt::Write as _;

use syllagraph_core::{CourseGraph, Node, RelationshipKind, Side};

use super::site::escape_html;
use super::{require_valid, EmitError};

/// Width of a node box.
pub const CELL_W: i64 = 180;
/// Height of a node box.
pub const CELL_H: i64 = 90;
/// Space between neighbouring boxes.
pub const GUTTER: i64 = 40;
/// Space around the whole grid.
pub const MARGIN: i64 = 40;

const LEGEND_H: i64 = 70;
const PARALLEL_STEP: i64 = 10;
const TITLE_CHARS: usize = 24;

/// The documented colour scheme.
pub mod palette {
    use syllagraph_core::{RelationshipKind, Side};

    /// Chapter numbers share the derivative red.
    pub const CHAPTER: &str = "#cc0000";

    /// Stroke colour of an edge kind.
    pub fn stroke(kind: RelationshipKind) -> &'static str {
        match kind {
            RelationshipKind::Derivative => "#cc0000",
            RelationshipKind::CommonPart => "#1f5fbf",
            RelationshipKind::Perspective => "#2e8b3e",
        }
    }

    /// Fill colour of a node side.
    pub fn fill(side: Side) -> &'static str {
        match side {
            Side::As => "#ffe8b0",
            Side::Ad => "#d6e9ff",
            Side::Other => "#e6e6e6",
        }
    }

    /// Dash pattern distinguishing kinds in greyscale print.
    pub fn dash(kind: RelationshipKind) -> Option<&'static str> {
        match kind {
            RelationshipKind::Derivative => None,
            RelationshipKind::CommonPart => Some("8 4"),
            RelationshipKind::Perspective => Some("2 4"),
        }
    }
}

/// The print view as one SVG document.
///
/// Each node is the only `<rect>` element it produces and each edge is the only
/// `<path>`; arrowheads are marker polygons and the legend uses circles and lines,
/// so both counts can be read straight off the output.
pub fn emit_print(graph: &CourseGraph) -> Result<Vec<u8>, EmitError> {
    require_valid(graph)?;
    let max_col = graph.nodes().iter().map(|n| n.pos().col).max().unwrap_or(0) as i64;
    let max_row = graph.nodes().iter().map(|n| n.pos().row).max().unwrap_or(0) as i64;
    let width = 2 * MARGIN + (max_col + 1) * CELL_W + max_col * GUTTER;
    let grid_h = 2 * MARGIN + (max_row + 1) * CELL_H + max_row * GUTTER;
    let height = grid_h + LEGEND_H;

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="Helvetica, Arial, sans-serif">"#
    );
    let _ = writeln!(s, "<title>{}</title>", escape_html(graph.title()));
    s.push_str("<defs>\n");
    for kind in RelationshipKind::ALL {
        let _ = writeln!(
            s,
            r#"<marker id="arrow-{name}" viewBox="0 0 10 10" refX="10" refY="5" markerWidth="8" markerHeight="8" orient="auto"><polygon points="0,0 10,5 0,10" fill="{color}"/></marker>"#,
            name = kind.name(),
            color = palette::stroke(kind)
        );
    }
    s.push_str("</defs>\n");

    s.push_str("<g class=\"nodes\">\n");
    for node in graph.nodes() {
        write_node(&mut s, node);
    }
    s.push_str("</g>\n<g class=\"edges\">\n");
    write_edges(&mut s, graph);
    s.push_str("</g>\n");
    write_legend(&mut s, grid_h);
    s.push_str("</svg>\n");
    Ok(s.into_bytes())
}

fn origin(node: &Node) -> (i64, i64) {
    let pos = node.pos();
    (
        MARGIN + pos.col as i64 * (CELL_W + GUTTER),
        MARGIN + pos.row as i64 * (CELL_H + GUTTER),
    )
}

fn center(node: &Node) -> (i64, i64) {
    let (x, y) = origin(node);
    (x + CELL_W / 2, y + CELL_H / 2)
}

fn write_node(s: &mut String, node: &Node) {
    let (x, y) = origin(node);
    let _ = writeln!(
        s,
        r##"<g class="node" id="node-{id}"><rect x="{x}" y="{y}" width="{CELL_W}" height="{CELL_H}" rx="6" fill="{fill}" stroke="#333333" stroke-width="1"/>"##,
        id = node.id(),
        fill = palette::fill(node.side()),
    );
    let lines = wrap(node.title(), TITLE_CHARS);
    let line_h = 14;
    let top = y + CELL_H / 2 - (lines.len() as i64 - 1) * line_h / 2 + 4;
    let _ = write!(s, r#"<text x="{}" y="{top}" font-size="12" text-anchor="middle">"#, x + CELL_W / 2);
    for (i, line) in lines.iter().enumerate() {
        let dy = if i == 0 { 0 } else { line_h };
        let _ = write!(s, r#"<tspan x="{}" dy="{dy}">{}</tspan>"#, x + CELL_W / 2, escape_html(line));
    }
    s.push_str("</text>");
    if !node.chapters().is_empty() {
        let chapters: Vec<String> = node.chapters().iter().map(u32::to_string).collect();
        let _ = write!(
            s,
            r#"<text x="{}" y="{}" font-size="11" font-weight="bold" text-anchor="end" fill="{}">{}</text>"#,
            x + CELL_W - 6,
            y + 14,
            palette::CHAPTER,
            chapters.join(", ")
        );
    }
    s.push_str("</g>\n");
}

/// Greedy word wrap; a word longer than `width` gets a line of its own.
fn wrap(text: &str, width: usize) -> Vec<String> {
    let mut lines: Vec<String> = Vec::new();
    let mut current = String::new();
    for word in text.split_whitespace() {
        if !current.is_empty() && current.chars().count() + 1 + word.chars().count() > width {
            lines.push(std::mem::take(&mut current));
        }
        if !current.is_empty() {
            current.push(' ');
        }
        current.push_str(word);
    }
    if !current.is_empty() || lines.is_empty() {
        lines.push(current);
    }
    lines
}

fn write_edges(s: &mut String, graph: &CourseGraph) {
    // Edges joining the same pair of boxes are fanned out so they stay distinguishable.
    let mut bundles: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (i, e) in graph.edges().iter().enumerate() {
        let a = graph.index_of(e.from().as_str()).expect("endpoint exists");
        let b = graph.index_of(e.to().as_str()).expect("endpoint exists");
        bundles.entry((a.min(b), a.max(b))).or_default().push(i);
    }
    let mut offset = vec![0i64; graph.edges().len()];
    for members in bundles.values() {
        let n = members.len() as i64;
        for (k, &i) in members.iter().enumerate() {
            offset[i] = (2 * k as i64 - (n - 1)) * PARALLEL_STEP / 2;
        }
    }

    for (i, edge) in graph.edges().iter().enumerate() {
        let from = graph.node_by_id(edge.from().as_str()).expect("endpoint exists");
        let to = graph.node_by_id(edge.to().as_str()).expect("endpoint exists");
        let (c1, c2) = (center(from), center(to));
        let (dx, dy) = (c2.0 - c1.0, c2.1 - c1.1);
        // Shift perpendicular to the dominant direction.
        let shift = if dx.abs() >= dy.abs() { (0, offset[i]) } else { (offset[i], 0) };
        let p1 = add(add(c1, clip(dx, dy)), shift);
        let p2 = add(add(c2, clip(-dx, -dy)), shift);
        let kind = edge.kind();
        let dash = palette::dash(kind)
            .map(|d| format!(r#" stroke-dasharray="{d}""#))
            .unwrap_or_default();
        let _ = writeln!(
            s,
            r#"<path class="edge {name}" d="M {} {} L {} {}" fill="none" stroke="{color}" stroke-width="2"{dash} marker-end="url(#arrow-{name})"/>"#,
            p1.0,
            p1.1,
            p2.0,
            p2.1,
            name = kind.name(),
            color = palette::stroke(kind),
        );
        if let Some(note) = edge.note() {
            let _ = writeln!(
                s,
                r##"<text class="edge-note" x="{}" y="{}" font-size="9" text-anchor="middle" fill="#444444">{}</text>"##,
                (p1.0 + p2.0) / 2,
                (p1.1 + p2.1) / 2 - 4,
                escape_html(note)
            );
        }
    }
}

fn add(a: (i64, i64), b: (i64, i64)) -> (i64, i64) {
    (a.0 + b.0, a.1 + b.1)
}

/// Offset from a box centre to where the ray towards `(dx, dy)` leaves the box.
fn clip(dx: i64, dy: i64) -> (i64, i64) {
    let (hw, hh) = (CELL_W / 2, CELL_H / 2);
    if dx == 0 && dy == 0 {
        (0, 0)
    } else if dx.abs() * hh >= dy.abs() * hw {
        (dx.signum() * hw, div_round(dy * hw, dx.abs()))
    } else {
        (div_round(dx * hh, dy.abs()), dy.signum() * hh)
    }
}

fn div_round(n: i64, d: i64) -> i64 {
    let q = n / d;
    let r = n % d;
    if 2 * r.abs() >= d {
        q + n.signum()
    } else {
        q
    }
}

fn write_legend(s: &mut String, top: i64) {
    let y = top + 10;
    s.push_str("<g class=\"legend\" font-size=\"11\">\n");
    let mut x = MARGIN;
    for kind in RelationshipKind::ALL {
        let dash = palette::dash(kind)
            .map(|d| format!(r#" stroke-dasharray="{d}""#))
            .unwrap_or_default();
        let _ = writeln!(
            s,
            r#"<line x1="{x}" y1="{y}" x2="{}" y2="{y}" stroke="{}" stroke-width="2"{dash}/><text x="{}" y="{}">{}</text>"#,
            x + 30,
            palette::stroke(kind),
            x + 36,
            y + 4,
            kind.name().replace('_', "-")
        );
        x += 150;
    }
    let y = y + 30;
    let mut x = MARGIN;
    for side in Side::ALL {
        let _ = writeln!(
            s,
            r##"<circle cx="{}" cy="{y}" r="7" fill="{}" stroke="#333333"/><text x="{}" y="{}">{}</text>"##,
            x + 7,
            palette::fill(side),
            x + 20,
            y + 4,
            side.label()
        );
        x += 150;
    }
    let _ = writeln!(
        s,
        r#"<text x="{x}" y="{}" fill="{}">red numbers: chapters</text>"#,
        y + 4,
        palette::CHAPTER
    );
    s.push_str("</g>\n");
}
