use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::lexer::{tokenize, Tok, Token};
use super::{ParseError, SourceMap, FORMAT_VERSION};
use crate::model::{
    CourseGraph, Edge, GridPos, Location, Node, NodeId, RelationshipKind, Resource, ResourceKind,
    Side, SymbolEntry, MAX_GRID,
};

const TOP_LEVEL: [&str; 5] = ["sink", "meta", "node", "edge", "symbol"];
const TOP_LEVEL_EXPECTED: &str = "top-level declaration (sink, meta, node, edge, symbol)";
const NODE_EXPECTED: &str =
    "node directive (title, side, pos, chapter, uses, video, text, audio, note)";

/// Marker for a syntax error that has already been recorded.
struct Reported;

type PResult<T> = Result<T, Reported>;

#[derive(Default)]
struct Collected {
    sink: Option<(NodeId, Location)>,
    meta: Vec<(String, String, Location)>,
    declared: Vec<(NodeId, Location)>,
    nodes: Vec<Node>,
    edges: Vec<RawEdge>,
    symbols: Vec<(SymbolEntry, Location)>,
}

struct RawEdge {
    edge: Edge,
    at: Location,
    from_at: Location,
    to_at: Location,
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    /// Braces opened by the item currently being parsed.
    depth: u32,
    errors: Vec<ParseError>,
}

pub(super) fn parse_source(src: &str) -> Result<(CourseGraph, SourceMap), Vec<ParseError>> {
    let mut p = Parser { toks: tokenize(src), pos: 0, depth: 0, errors: Vec::new() };
    let result = p.document();
    let mut errors = p.errors;
    match result {
        Ok(ok) if errors.is_empty() => Ok(ok),
        _ => {
            errors.sort_by_key(|e| (e.line, e.column));
            Err(errors)
        }
    }
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let tok = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        tok
    }

    fn error_at(&mut self, at: Location, expected: impl Into<String>, found: impl Into<String>) {
        self.errors.push(ParseError {
            line: at.line,
            column: at.column,
            expected: expected.into(),
            found: found.into(),
        });
    }

    /// Records an error at the current token without consuming it.
    fn fail<T>(&mut self, expected: &str) -> PResult<T> {
        let tok = self.peek().clone();
        match tok.tok {
            Tok::Bad { expected, found } => self.error_at(tok.at, expected, found),
            other => self.error_at(tok.at, expected, other.to_string()),
        }
        Err(Reported)
    }

    fn expect(&mut self, want: Tok, expected: &str) -> PResult<Location> {
        if self.peek().tok == want {
            Ok(self.next().at)
        } else {
            self.fail(expected)
        }
    }

    fn expect_word(&mut self, expected: &str) -> PResult<(String, Location)> {
        match &self.peek().tok {
            Tok::Word(w) => {
                let w = w.clone();
                Ok((w, self.next().at))
            }
            _ => self.fail(expected),
        }
    }

    fn expect_id(&mut self) -> PResult<(NodeId, Location)> {
        if let Tok::Word(w) = &self.peek().tok {
            if let Ok(id) = NodeId::new(w.as_str()) {
                return Ok((id, self.next().at));
            }
        }
        self.fail("node id")
    }

    fn expect_str(&mut self, expected: &str) -> PResult<(String, Location)> {
        match &self.peek().tok {
            Tok::Str(s) => {
                let s = s.clone();
                Ok((s, self.next().at))
            }
            _ => self.fail(expected),
        }
    }

    fn expect_int(&mut self, expected: &str) -> PResult<(u32, Location)> {
        match self.peek().tok {
            Tok::Int(n) => Ok((n, self.next().at)),
            _ => self.fail(expected),
        }
    }

    /// Skips to the next top-level keyword or the brace closing the syllabus.
    fn recover(&mut self) {
        let mut depth = self.depth;
        loop {
            match &self.peek().tok {
                Tok::Eof => break,
                Tok::RBrace if depth == 0 => break,
                Tok::RBrace => depth -= 1,
                Tok::LBrace => depth += 1,
                Tok::Word(w) if depth == 0 && TOP_LEVEL.contains(&w.as_str()) => break,
                _ => {}
            }
            self.next();
        }
        self.depth = 0;
    }

    fn document(&mut self) -> PResult<(CourseGraph, SourceMap)> {
        if self.peek().tok == Tok::Word("syllagraph".into()) {
            self.next();
            match self.peek().tok {
                Tok::Int(FORMAT_VERSION) => {
                    self.next();
                }
                _ => {
                    // Keep going: the rest may still be worth checking.
                    let _ = self.fail::<()>("format version 1");
                    self.next();
                }
            }
        }
        if self.peek().tok != Tok::Word("syllabus".into()) {
            return self.fail("\"syllabus\"");
        }
        let syllabus_at = self.next().at;
        let (title, _) = self.expect_str("syllabus title string")?;
        self.expect(Tok::LBrace, "\"{\"")?;

        let mut c = Collected::default();
        let close_at = loop {
            let tok = self.peek().clone();
            match &tok.tok {
                Tok::RBrace => {
                    self.next();
                    break tok.at;
                }
                Tok::Eof => {
                    self.error_at(tok.at, "\"}\" closing the syllabus", "end of input");
                    break tok.at;
                }
                Tok::Word(w) if TOP_LEVEL.contains(&w.as_str()) => {
                    let keyword = w.clone();
                    self.next();
                    self.depth = 0;
                    if self.item(&keyword, tok.at, &mut c).is_err() {
                        self.recover();
                    }
                }
                _ => {
                    let _ = self.fail::<()>(TOP_LEVEL_EXPECTED);
                    self.next();
                    self.recover();
                }
            }
        };
        if self.peek().tok != Tok::Eof {
            let _ = self.fail::<()>("end of input");
        }
        self.check_graph(&c, close_at);
        if !self.errors.is_empty() {
            return Err(Reported);
        }
        self.assemble(title, syllabus_at, c)
    }

    fn item(&mut self, keyword: &str, at: Location, c: &mut Collected) -> PResult<()> {
        match keyword {
            "sink" => {
                if c.sink.is_some() {
                    self.error_at(at, "single sink declaration", "sink");
                }
                let (id, id_at) = self.expect_id()?;
                c.sink.get_or_insert((id, id_at));
            }
            "meta" => {
                let (key, key_at) = self.expect_word("meta key")?;
                self.expect(Tok::Colon, "\":\"")?;
                let (value, _) = self.expect_str("meta value string")?;
                c.meta.push((key, value, key_at));
            }
            "node" => {
                let (id, id_at) = self.expect_id()?;
                c.declared.push((id.clone(), id_at));
                if let Some(node) = self.node_block(id, id_at)? {
                    c.nodes.push(node);
                }
            }
            "edge" => {
                let (from, from_at) = self.expect_id()?;
                self.expect(Tok::Arrow, "\"->\"")?;
                let (to, to_at) = self.expect_id()?;
                self.expect(Tok::Colon, "\":\"")?;
                let kind = match &self.peek().tok {
                    Tok::Word(w) => RelationshipKind::from_name(w),
                    _ => None,
                };
                let Some(kind) = kind else {
                    return self.fail("relationship kind (derivative, common_part, perspective)");
                };
                self.next();
                let note = match &self.peek().tok {
                    Tok::Str(s) => {
                        let s = s.clone();
                        Some((s, self.next().at))
                    }
                    _ => None,
                };
                let note_at = note.as_ref().map_or(at, |(_, a)| *a);
                match Edge::new(from, to, kind, note.map(|(s, _)| s)) {
                    Ok(edge) => c.edges.push(RawEdge { edge, at, from_at, to_at }),
                    Err(_) => self.error_at(note_at, "nonblank edge note", "blank string"),
                }
            }
            "symbol" => {
                let (key, key_at) = self.expect_str("symbol key string")?;
                self.expect(Tok::Equals, "\"=\"")?;
                let (meaning, meaning_at) = self.expect_str("symbol meaning string")?;
                match SymbolEntry::new(key, meaning) {
                    Ok(entry) => c.symbols.push((entry, key_at)),
                    Err(crate::model::ModelError::EmptySymbolKey) => {
                        self.error_at(key_at, "nonempty symbol key", "blank string")
                    }
                    Err(_) => self.error_at(meaning_at, "nonempty symbol meaning", "blank string"),
                }
            }
            _ => unreachable!("caller only passes top-level keywords"),
        }
        Ok(())
    }

    /// Parses `{ ... }` after `node <id>`. Returns `None` when the block was
    /// syntactically fine but violated a node invariant (already reported).
    fn node_block(&mut self, id: NodeId, id_at: Location) -> PResult<Option<Node>> {
        self.expect(Tok::LBrace, "\"{\"")?;
        self.depth = 1;

        let mut title: Option<(String, Location)> = None;
        let mut side: Option<Side> = None;
        let mut pos: Option<(GridPos, Location)> = None;
        let mut note: Option<String> = None;
        let mut chapters: Vec<(u32, Location)> = Vec::new();
        let mut uses: Vec<String> = Vec::new();
        let mut resources: Vec<Resource> = Vec::new();
        let mut valid = true;

        let close_at = loop {
            let tok = self.peek().clone();
            let name = match tok.tok {
                Tok::RBrace => {
                    self.next();
                    break tok.at;
                }
                Tok::Word(name) => name,
                _ => return self.fail(NODE_EXPECTED),
            };
            let single = matches!(name.as_str(), "title" | "side" | "pos" | "note");
            let seen = match name.as_str() {
                "title" => title.is_some(),
                "side" => side.is_some(),
                "pos" => pos.is_some(),
                "note" => note.is_some(),
                _ => false,
            };
            if !single
                && !matches!(name.as_str(), "chapter" | "uses")
                && ResourceKind::from_keyword(&name).is_none()
            {
                return self.fail(NODE_EXPECTED);
            }
            self.next();
            if seen {
                self.error_at(tok.at, format!("single {name} directive"), name.clone());
                valid = false;
            }
            self.expect(Tok::Colon, "\":\"")?;
            match name.as_str() {
                "title" => title = Some(self.expect_str("title string")?),
                "side" => {
                    let parsed = match &self.peek().tok {
                        Tok::Word(w) => Side::from_keyword(w),
                        _ => None,
                    };
                    match parsed {
                        Some(s) => {
                            self.next();
                            side = Some(s);
                        }
                        None => return self.fail("side (as, ad, other)"),
                    }
                }
                "pos" => {
                    let at = self.expect(Tok::LParen, "\"(\"")?;
                    let (col, _) = self.expect_int("grid column")?;
                    self.expect(Tok::Comma, "\",\"")?;
                    let (row, _) = self.expect_int("grid row")?;
                    self.expect(Tok::RParen, "\")\"")?;
                    pos = Some((GridPos::new(col, row), at));
                }
                "chapter" => chapters.push(self.expect_int("chapter number")?),
                "uses" => {
                    let key = match &self.peek().tok {
                        Tok::Word(w) | Tok::Str(w) => w.clone(),
                        _ => return self.fail("symbol key"),
                    };
                    let at = self.next().at;
                    if key.trim().is_empty() {
                        self.error_at(at, "nonempty symbol key", "blank string");
                        valid = false;
                    }
                    uses.push(key);
                }
                "note" => note = Some(self.expect_str("note string")?.0),
                kind => {
                    let kind = ResourceKind::from_keyword(kind).expect("checked above");
                    let (url, url_at) = self.expect_str("url string")?;
                    let (label, label_at) = self.expect_str("label string")?;
                    match Resource::new(kind, url.clone(), label) {
                        Ok(r) => resources.push(r),
                        Err(crate::model::ModelError::BadUrl(_)) => {
                            self.error_at(url_at, "url starting with http:// or https://", url);
                            valid = false;
                        }
                        Err(_) => {
                            self.error_at(label_at, "nonempty label", "blank string");
                            valid = false;
                        }
                    }
                }
            }
        };
        self.depth = 0;

        let missing = |what: &str, present: bool, p: &mut Self| {
            if !present {
                p.error_at(close_at, format!("{what} directive"), "}");
            }
            present
        };
        valid &= missing("title", title.is_some(), self);
        valid &= missing("side", side.is_some(), self);
        valid &= missing("pos", pos.is_some(), self);
        if let Some((t, at)) = &title {
            if t.trim().is_empty() {
                self.error_at(*at, "nonempty title", "blank string");
                valid = false;
            }
        }
        if let Some((p, at)) = pos {
            if p.col > MAX_GRID || p.row > MAX_GRID {
                self.error_at(at, "grid coordinates in 0..=999", p.to_string());
                valid = false;
            }
        }
        let mut previous = 0;
        for &(chapter, at) in &chapters {
            if chapter <= previous {
                let expected = if previous == 0 {
                    "positive chapter number".to_string()
                } else {
                    format!("chapter greater than {previous}")
                };
                self.error_at(at, expected, chapter.to_string());
                valid = false;
            }
            previous = previous.max(chapter);
        }
        if !valid {
            return Ok(None);
        }

        let (title, _) = title.expect("checked");
        let mut builder =
            Node::builder(id, title, side.expect("checked"), pos.expect("checked").0);
        for (chapter, _) in chapters {
            builder = builder.chapter(chapter);
        }
        for key in uses {
            builder = builder.uses(key);
        }
        for r in resources {
            builder = builder.resource(r);
        }
        if let Some(note) = note {
            builder = builder.note(note);
        }
        match builder.build() {
            Ok(node) => Ok(Some(node)),
            Err(e) => {
                self.error_at(id_at, "valid node", e.to_string());
                Ok(None)
            }
        }
    }

    /// Cross-item checks, reported with the location of the offending reference.
    fn check_graph(&mut self, c: &Collected, close_at: Location) {
        let mut declared = BTreeSet::new();
        for (id, at) in &c.declared {
            if !declared.insert(id.as_str()) {
                self.error_at(*at, "unique node id", id.as_str());
            }
        }
        match &c.sink {
            None => self.error_at(close_at, "sink declaration", "}"),
            Some((id, at)) if !declared.contains(id.as_str()) => {
                self.error_at(*at, "declared node id", id.as_str())
            }
            Some(_) => {}
        }
        let mut seen = BTreeSet::new();
        for raw in &c.edges {
            let e = &raw.edge;
            for (end, at) in [(e.from(), raw.from_at), (e.to(), raw.to_at)] {
                if !declared.contains(end.as_str()) {
                    self.error_at(at, "declared node id", end.as_str());
                }
            }
            if e.from() == e.to() {
                self.error_at(raw.at, "distinct edge endpoints", format!("{} -> {}", e.from(), e.to()));
            } else if !seen.insert((e.from(), e.to(), e.kind())) {
                self.error_at(
                    raw.at,
                    "unique edge",
                    format!("{} -> {} : {}", e.from(), e.to(), e.kind()),
                );
            }
        }
        let mut keys = BTreeSet::new();
        for (entry, at) in &c.symbols {
            if !keys.insert(entry.key()) {
                self.error_at(*at, "unique symbol key", format!("{:?}", entry.key()));
            }
        }
        let mut meta_keys = BTreeSet::new();
        for (key, _, at) in &c.meta {
            if !meta_keys.insert(key.as_str()) {
                self.error_at(*at, "unique meta key", key.as_str());
            }
        }
    }

    fn assemble(
        &mut self,
        title: String,
        syllabus_at: Location,
        c: Collected,
    ) -> PResult<(CourseGraph, SourceMap)> {
        let (sink, sink_at) = c.sink.expect("checked");
        let mut map = SourceMap {
            syllabus: syllabus_at,
            sink: sink_at,
            nodes: c.declared.into_iter().collect::<BTreeMap<_, _>>(),
            edges: Vec::with_capacity(c.edges.len()),
            symbols: Vec::with_capacity(c.symbols.len()),
        };
        let mut builder = CourseGraph::builder(title, sink);
        for node in c.nodes {
            builder = builder.node(node);
        }
        for raw in c.edges {
            map.edges.push(raw.at);
            builder = builder.edge(raw.edge);
        }
        for (entry, at) in c.symbols {
            map.symbols.push(at);
            builder = builder.symbol(entry);
        }
        for (key, value, _) in c.meta {
            builder = builder.meta(key, value);
        }
        match builder.build() {
            Ok(graph) => Ok((graph, map)),
            Err(e) => {
                self.error_at(syllabus_at, "valid course graph", e.to_string());
                Err(Reported)
            }
        }
    }
}
