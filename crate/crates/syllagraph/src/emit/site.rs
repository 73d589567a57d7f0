use std::collections::BTreeMap;

use serde_json::json;
use syllagraph_core::CourseGraph;

use super::bundle::{bundle_value, to_bytes};
use super::{require_valid, EmitError};

/// Viewer script, embedded at build time.
pub const VIEWER_JS: &str = include_str!("../../assets/viewer.js");
/// Viewer stylesheet, embedded at build time.
pub const VIEWER_CSS: &str = include_str!("../../assets/viewer.css");

/// Relative path to file contents for a static site.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SiteTree {
    files: BTreeMap<String, Vec<u8>>,
}

impl SiteTree {
    fn insert(&mut self, path: &str, bytes: impl Into<Vec<u8>>) {
        debug_assert!(!path.starts_with('/') && !path.split('/').any(|c| c == ".." || c.is_empty()));
        self.files.insert(path.to_owned(), bytes.into());
    }

    /// Files in path order.
    pub fn files(&self) -> &BTreeMap<String, Vec<u8>> {
        &self.files
    }

    /// Contents of one file.
    pub fn get(&self, path: &str) -> Option<&[u8]> {
        self.files.get(path).map(Vec::as_slice)
    }
}

/// The site: `index.html`, `bundle.json` and the viewer assets.
///
/// The page also carries the bundle inline so it works when opened from disk,
/// where browsers block `fetch` of neighbouring files.
pub fn emit_site(graph: &CourseGraph) -> Result<SiteTree, EmitError> {
    require_valid(graph)?;
    let bundle = to_bytes(&bundle_value(graph));
    let inline = String::from_utf8(bundle.clone())
        .expect("serde_json emits UTF-8")
        .trim_end()
        .replace("</", "<\\/");
    let config = json!({ "hover_delay_ms": 5000, "show_edge_notes": true, "bundle_url": "bundle.json" });

    let mut tree = SiteTree::default();
    tree.insert("index.html", index_html(graph.title(), &config.to_string(), &inline));
    tree.insert("bundle.json", bundle);
    tree.insert("assets/viewer.js", VIEWER_JS);
    tree.insert("assets/viewer.css", VIEWER_CSS);
    Ok(tree)
}

fn index_html(title: &str, config: &str, bundle: &str) -> String {
    let title = escape_html(title);
    format!(
        r#"<!DOCTYPE html>
<html lang="en">
<head>
<meta charset="utf-8">
<meta name="viewport" content="width=device-width, initial-scale=1">
<title>{title}</title>
<link rel="stylesheet" href="assets/viewer.css">
</head>
<body>
<header><h1>{title}</h1></header>
<main id="syllagraph"></main>
<script type="application/json" id="syllagraph-config">{config}</script>
<script type="application/json" id="syllagraph-bundle">{bundle}</script>
<script src="assets/viewer.js"></script>
</body>
</html>
"#
    )
}

pub(crate) fn escape_html(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&#39;"),
            c if c.is_control() && c != '\n' && c != '\t' => out.push('\u{fffd}'),
            c => out.push(c),
        }
    }
    out
}
