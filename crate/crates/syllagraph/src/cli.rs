//! The `syllagraph` command line.
//!
//! Exit codes: 0 success, 1 validation errors (or failed links under `--strict`),
//! 2 parse failure, 3 I/O failure, 4 bad invocation.

use std::ffi::OsString;
use std::fs;
use std::io::{self, IsTerminal, Write};
use std::path::{Path, PathBuf};

use clap::{error::ErrorKind, Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use syllagraph_core::{
    course_order, highlight, parse_with_spans, stats, validate, CourseGraph, Diagnostic, Rule, RuleConfig,
    Severity, SourceMap,
};

use crate::emit::{emit_bundle, emit_print, emit_site, EmitError};
use crate::linkcheck::{check_links, CheckConfig};

/// Version of every JSON document the CLI prints.
pub const JSON_SCHEMA_VERSION: u32 = 1;

/// Environment variable that turns off ANSI styling when set to a non-empty value.
pub const NO_COLOR_ENV: &str = "SYLLAGRAPH_NO_COLOR";

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum Exit {
    /// Everything succeeded.
    Success = 0,
    /// Error-severity diagnostics, or failed links with `--strict`.
    Invalid = 1,
    /// The input did not parse.
    Parse = 2,
    /// Reading input or writing output failed.
    Io = 3,
    /// Unknown flags, bad values or unknown node ids.
    Usage = 4,
}

#[derive(Debug, Parser)]
#[command(name = "syllagraph", version, about = "Compile, check and publish course concept graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum What {
    Bundle,
    Site,
    Print,
}

#[derive(Debug, Args)]
struct RuleArgs {
    /// Longest allowed node or edge note, in characters.
    #[arg(long, default_value_t = 80)]
    max_note_chars: usize,
    /// Fewest videos a node should link.
    #[arg(long, default_value_t = 5)]
    min_videos: usize,
    /// Most videos a node should link.
    #[arg(long, default_value_t = 10)]
    max_videos: usize,
    /// Rules to skip, by id (R3) or name (video-range); comma separated or repeated.
    #[arg(long, value_delimiter = ',')]
    disable: Vec<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the lint rules and report diagnostics.
    Validate {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        rules: RuleArgs,
    },
    /// Show the routes from one node to the sink.
    Highlight {
        path: PathBuf,
        #[arg(long)]
        node: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Write the bundle, the static site or the print view.
    Emit {
        path: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum)]
        what: What,
    },
    /// Probe every resource URL.
    CheckLinks {
        path: PathBuf,
        /// Per-request deadline in milliseconds.
        #[arg(long, default_value_t = 10_000)]
        timeout_ms: u64,
        /// Most requests in flight at once.
        #[arg(long, default_value_t = 8)]
        concurrency: usize,
        /// Extra attempts after a timeout or connection failure.
        #[arg(long, default_value_t = 1)]
        retries: u32,
        #[arg(long)]
        user_agent: Option<String>,
        /// Exit 1 when any link is not ok.
        #[arg(long)]
        strict: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print node, edge, side, link and kind counts.
    Stats {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print nodes in teaching order.
    Order {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

/// Runs the CLI against the process's standard streams.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let color = io::stderr().is_terminal() && std::env::var_os(NO_COLOR_ENV).is_none_or(|v| v.is_empty());
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock(), color) as u8
}

/// Runs the CLI with explicit output streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write, color: bool) -> Exit
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    Exit::Success
                }
                _ => {
                    let _ = write!(err, "{text}");
                    Exit::Usage
                }
            };
        }
    };
    let mut ctx = Ctx { out, err, color };
    match ctx.dispatch(cli.command) {
        Ok(code) => code,
        Err(Failure(code)) => code,
    }
}

/// Early exit carrying its code; the message has already been printed.
struct Failure(Exit);

struct Ctx<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    color: bool,
}

impl Ctx<'_> {
    fn dispatch(&mut self, command: Command) -> Result<Exit, Failure> {
        match command {
            Command::Validate { path, format, rules } => self.validate(&path, format, &rules),
            Command::Highlight { path, node, format } => self.highlight(&path, &node, format),
            Command::Emit { path, out, what } => self.emit(&path, &out, what),
            Command::CheckLinks {
                path,
                timeout_ms,
                concurrency,
                retries,
                user_agent,
                strict,
                format,
            } => {
                let ua = user_agent.unwrap_or_else(|| CheckConfig::default().user_agent().to_owned());
                let Some(config) = CheckConfig::new(concurrency, timeout_ms, retries, ua) else {
                    return Err(self.usage("--concurrency and --timeout-ms must be at least 1"));
                };
                self.check_links(&path, &config, strict, format)
            }
            Command::Stats { path, format } => self.stats(&path, format),
            Command::Order { path, format } => self.order(&path, format),
        }
    }

    fn usage(&mut self, message: &str) -> Failure {
        let _ = writeln!(self.err, "{}: {message}", self.paint("error", "1;31"));
        Failure(Exit::Usage)
    }

    fn paint(&self, text: &str, code: &str) -> String {
        if self.color {
            format!("\x1b[{code}m{text}\x1b[0m")
        } else {
            text.to_owned()
        }
    }

    fn load(&mut self, path: &Path) -> Result<(CourseGraph, SourceMap), Failure> {
        let source = fs::read_to_string(path).map_err(|e| {
            let _ = writeln!(self.err, "{}: {}: cannot read: {e}", path.display(), self.paint("error", "1;31"));
            Failure(Exit::Io)
        })?;
        parse_with_spans(&source).map_err(|errors| {
            for e in &errors {
                let _ = writeln!(self.err, "{}:{}: {}: {}", path.display(), e.location(), self.paint("error", "1;31"), e_text(e));
            }
            let _ = writeln!(self.err, "{}: {} parse error(s)", path.display(), errors.len());
            Failure(Exit::Parse)
        })
    }

    fn json(&mut self, value: Value) -> Result<(), Failure> {
        let mut text = serde_json::to_string_pretty(&value).expect("JSON values always serialize");
        text.push('\n');
        self.write_out(&text)
    }

    fn write_out(&mut self, text: &str) -> Result<(), Failure> {
        self.out.write_all(text.as_bytes()).map_err(|_| Failure(Exit::Io))
    }

    fn report_diagnostics(&mut self, path: &Path, diags: &[Diagnostic]) {
        for d in diags {
            let (label, code) = match d.severity {
                Severity::Error => ("error", "1;31"),
                Severity::Warning => ("warning", "1;33"),
            };
            let at = d.location.map(|l| format!(":{l}")).unwrap_or_default();
            let _ = writeln!(
                self.err,
                "{}{at}: {}[{} {}]: {}",
                path.display(),
                self.paint(label, code),
                d.rule.id(),
                d.rule.name(),
                d.message
            );
        }
    }

    fn validate(&mut self, path: &Path, format: Format, args: &RuleArgs) -> Result<Exit, Failure> {
        let Some(mut config) = RuleConfig::new(args.max_note_chars, args.min_videos, args.max_videos) else {
            return Err(self.usage("need --max-note-chars >= 1 and --min-videos <= --max-videos"));
        };
        for name in &args.disable {
            match Rule::lookup(name) {
                Some(rule) => config = config.disable(rule),
                None => {
                    let known: Vec<&str> = Rule::ALL.iter().map(|r| r.id()).collect();
                    return Err(self.usage(&format!("unknown rule '{name}'; known rules: {}", known.join(", "))));
                }
            }
        }
        let (graph, map) = self.load(path)?;
        let diags = located(&graph, &map, &config);
        let errors = diags.iter().filter(|d| d.is_error()).count();
        let warnings = diags.len() - errors;
        match format {
            Format::Text => {
                self.report_diagnostics(path, &diags);
                let _ = writeln!(self.err, "{}: {errors} error(s), {warnings} warning(s)", path.display());
            }
            Format::Json => self.json(json!({
                "schema_version": JSON_SCHEMA_VERSION,
                "diagnostics": serde_json::to_value(&diags).expect("diagnostics serialize"),
                "summary": { "errors": errors, "warnings": warnings },
            }))?,
        }
        Ok(if errors == 0 { Exit::Success } else { Exit::Invalid })
    }

    fn highlight(&mut self, path: &Path, node: &str, format: Format) -> Result<Exit, Failure> {
        let (graph, _) = self.load(path)?;
        let Ok(set) = highlight(&graph, node) else {
            let ids: Vec<&str> = graph.nodes().iter().map(|n| n.id().as_str()).collect();
            return Err(self.usage(&format!("unknown node '{node}'; valid ids: {}", ids.join(", "))));
        };
        let edges: Vec<String> = set.edge_indices.iter().map(|&i| graph.edges()[i].to_string()).collect();
        match format {
            Format::Text => {
                let mut text = format!("origin: {}\nsink: {}\nnodes ({}):\n", set.origin, graph.sink(), set.node_ids.len());
                for id in &set.node_ids {
                    text.push_str(&format!("  {id}\n"));
                }
                text.push_str(&format!("edges ({}):\n", edges.len()));
                for e in &edges {
                    text.push_str(&format!("  {e}\n"));
                }
                self.write_out(&text)?;
            }
            Format::Json => self.json(json!({
                "schema_version": JSON_SCHEMA_VERSION,
                "highlight": {
                    "origin": set.origin,
                    "sink": graph.sink(),
                    "node_ids": set.node_ids,
                    "edge_indices": set.edge_indices,
                    "edges": edges,
                },
            }))?,
        }
        Ok(Exit::Success)
    }

    fn emit(&mut self, path: &Path, out_dir: &Path, what: What) -> Result<Exit, Failure> {
        let (graph, map) = self.load(path)?;
        let errors: Vec<Diagnostic> = located(&graph, &map, &RuleConfig::default())
            .into_iter()
            .filter(Diagnostic::is_error)
            .collect();
        if !errors.is_empty() {
            self.report_diagnostics(path, &errors);
            let _ = writeln!(self.err, "{}: {} error(s); nothing written", path.display(), errors.len());
            return Ok(Exit::Invalid);
        }
        let files: Vec<(PathBuf, Vec<u8>)> = match what {
            What::Bundle => vec![(PathBuf::from("bundle.json"), emit_bundle(&graph).map_err(refused)?)],
            What::Print => vec![(PathBuf::from("print.svg"), emit_print(&graph).map_err(refused)?)],
            What::Site => emit_site(&graph)
                .map_err(refused)?
                .files()
                .iter()
                .map(|(p, bytes)| (PathBuf::from(p), bytes.clone()))
                .collect(),
        };
        match write_all_atomic(out_dir, &files) {
            Ok(written) => {
                let mut text = String::new();
                for p in written {
                    text.push_str(&format!("{}\n", p.display()));
                }
                self.write_out(&text)?;
                Ok(Exit::Success)
            }
            Err(e) => {
                let _ = writeln!(self.err, "{}: {}: cannot write: {e}", out_dir.display(), self.paint("error", "1;31"));
                Ok(Exit::Io)
            }
        }
    }

    fn check_links(&mut self, path: &Path, config: &CheckConfig, strict: bool, format: Format) -> Result<Exit, Failure> {
        let (graph, _) = self.load(path)?;
        let report = match check_links(&graph, config) {
            Ok(r) => r,
            Err(e) => {
                let _ = writeln!(self.err, "{}: {e}", self.paint("error", "1;31"));
                return Ok(Exit::Io);
            }
        };
        match format {
            Format::Text => {
                let mut text = String::new();
                for e in &report.entries {
                    let status = e.http_status.map(|s| s.to_string()).unwrap_or_else(|| "-".into());
                    text.push_str(&format!(
                        "{:<11} {:>3} {:>6}ms  {}[{}] {}\n",
                        e.outcome.name(),
                        status,
                        e.latency_ms,
                        e.node,
                        e.resource_index,
                        e.url
                    ));
                }
                let s = report.summary;
                text.push_str(&format!(
                    "summary: ok {}, broken {}, timeout {}, invalid_url {}\n",
                    s.ok, s.broken, s.timeout, s.invalid_url
                ));
                self.write_out(&text)?;
            }
            Format::Json => self.json(json!({
                "schema_version": JSON_SCHEMA_VERSION,
                "report": serde_json::to_value(&report).expect("report serializes"),
            }))?,
        }
        Ok(if strict && report.summary.failures() > 0 { Exit::Invalid } else { Exit::Success })
    }

    fn stats(&mut self, path: &Path, format: Format) -> Result<Exit, Failure> {
        let (graph, _) = self.load(path)?;
        let s = stats(&graph);
        match format {
            Format::Text => {
                let mut rows: Vec<(String, usize)> = vec![("nodes".into(), s.node_count), ("edges".into(), s.edge_count)];
                rows.extend(s.side_counts.iter().map(|(side, n)| (format!("side {}", side.label()), *n)));
                rows.push(("video links".into(), s.video_link_total));
                rows.push(("text links".into(), s.text_link_total));
                rows.extend(s.kind_counts.iter().map(|(kind, n)| (format!("kind {}", kind.name()), *n)));
                let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                let mut text = String::new();
                for (k, n) in rows {
                    text.push_str(&format!("{k:<width$}  {n:>5}\n"));
                }
                self.write_out(&text)?;
            }
            Format::Json => self.json(json!({
                "schema_version": JSON_SCHEMA_VERSION,
                "stats": serde_json::to_value(&s).expect("stats serialize"),
            }))?,
        }
        Ok(Exit::Success)
    }

    fn order(&mut self, path: &Path, format: Format) -> Result<Exit, Failure> {
        let (graph, _) = self.load(path)?;
        let ids = course_order(&graph);
        match format {
            Format::Text => {
                let mut text = String::new();
                for (i, id) in ids.iter().enumerate() {
                    let node = graph.node_by_id(id.as_str()).expect("ordered ids exist");
                    let chapters: Vec<String> = node.chapters().iter().map(u32::to_string).collect();
                    let ch = if chapters.is_empty() { "-".to_owned() } else { chapters.join(",") };
                    text.push_str(&format!("{:>3}. [{ch}] {id}  {}\n", i + 1, node.title()));
                }
                self.write_out(&text)?;
            }
            Format::Json => self.json(json!({ "schema_version": JSON_SCHEMA_VERSION, "order": ids }))?,
        }
        Ok(Exit::Success)
    }
}

fn e_text(e: &syllagraph_core::ParseError) -> String {
    format!("expected {}, found {}", e.expected, e.found)
}

fn refused(e: EmitError) -> Failure {
    // The CLI validates first, so emitters only refuse if the two checks ever disagree.
    match e {
        EmitError::Invalid(_) => Failure(Exit::Invalid),
    }
}

fn located(graph: &CourseGraph, map: &SourceMap, config: &RuleConfig) -> Vec<Diagnostic> {
    let mut diags = validate(graph, config);
    for d in &mut diags {
        d.location = d.subject.as_ref().and_then(|s| map.locate(s));
    }
    diags
}

/// Writes each file by staging it in a temporary file beside its destination and
/// renaming it into place, so a failure never leaves a partial file behind.
fn write_all_atomic(dir: &Path, files: &[(PathBuf, Vec<u8>)]) -> io::Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let staging = tempfile::Builder::new().prefix(".syllagraph-").tempdir_in(dir)?;
    let mut staged = Vec::with_capacity(files.len());
    for (rel, bytes) in files {
        let tmp = staging.path().join(rel);
        if let Some(parent) = tmp.parent() {
            fs::create_dir_all(parent)?;
        }
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        staged.push((tmp, dir.join(rel)));
    }
    let mut written = Vec::with_capacity(staged.len());
    for (tmp, dest) in staged {
        if let Some(parent) = dest.parent() {
            fs::create_dir_all(parent)?;
        }
        fs::rename(&tmp, &dest)?;
        written.push(dest);
    }
    Ok(written)
}
