//! Resource URL health audit with a bounded number of requests in flight.

use std::time::{Duration, Instant};

use futures::stream::{self, StreamExt};
use reqwest::{header, redirect, Client, Method, StatusCode};
use serde::Serialize;
use syllagraph_core::{CourseGraph, NodeId, ResourceKind};
use url::Url;

const MAX_REDIRECTS: usize = 5;

/// Audit settings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckConfig {
    max_concurrent: usize,
    timeout_ms: u64,
    retries: u32,
    user_agent: String,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self {
            max_concurrent: 8,
            timeout_ms: 10_000,
            retries: 1,
            user_agent: concat!("syllagraph-linkcheck/", env!("CARGO_PKG_VERSION")).to_owned(),
        }
    }
}

impl CheckConfig {
    /// `None` when `max_concurrent` or `timeout_ms` is zero.
    pub fn new(max_concurrent: usize, timeout_ms: u64, retries: u32, user_agent: impl Into<String>) -> Option<Self> {
        (max_concurrent >= 1 && timeout_ms >= 1).then(|| Self {
            max_concurrent,
            timeout_ms,
            retries,
            user_agent: user_agent.into(),
        })
    }

    /// Upper bound on simultaneous requests.
    pub fn max_concurrent(&self) -> usize {
        self.max_concurrent
    }

    /// Per-attempt deadline in milliseconds.
    pub fn timeout_ms(&self) -> u64 {
        self.timeout_ms
    }

    /// Extra attempts after a timeout or connection failure.
    pub fn retries(&self) -> u32 {
        self.retries
    }

    /// Value of the `User-Agent` header.
    pub fn user_agent(&self) -> &str {
        &self.user_agent
    }
}

/// Classification of one link.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    /// Final status in 200..=399.
    Ok,
    /// Final status 400 or above, a redirect loop, or an unreachable host.
    Broken,
    /// Every attempt exceeded the deadline.
    Timeout,
    /// Not a well-formed http(s) URL; never requested.
    InvalidUrl,
}

impl Outcome {
    /// Snake-case name as used in reports.
    pub fn name(self) -> &'static str {
        match self {
            Outcome::Ok => "ok",
            Outcome::Broken => "broken",
            Outcome::Timeout => "timeout",
            Outcome::InvalidUrl => "invalid_url",
        }
    }
}

/// Result for one (node, resource) pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkEntry {
    /// Owning node.
    pub node: NodeId,
    /// Position of the resource within the node.
    pub resource_index: usize,
    /// Resource kind.
    pub kind: ResourceKind,
    /// The URL as written.
    pub url: String,
    /// Classification.
    pub outcome: Outcome,
    /// Last HTTP status seen, if any response arrived.
    pub http_status: Option<u16>,
    /// Wall time across all attempts.
    pub latency_ms: u64,
}

/// Outcome counts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct LinkSummary {
    /// Healthy links.
    pub ok: usize,
    /// Dead links.
    pub broken: usize,
    /// Links that never answered in time.
    pub timeout: usize,
    /// Malformed links.
    pub invalid_url: usize,
}

impl LinkSummary {
    /// Links that are not `ok`.
    pub fn failures(&self) -> usize {
        self.broken + self.timeout + self.invalid_url
    }
}

/// Full audit result, ordered by (node id, resource index).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkReport {
    /// One entry per resource in the graph.
    pub entries: Vec<LinkEntry>,
    /// Counts by outcome.
    pub summary: LinkSummary,
}

impl LinkReport {
    fn new(mut entries: Vec<LinkEntry>) -> Self {
        entries.sort_by(|a, b| (&a.node, a.resource_index).cmp(&(&b.node, b.resource_index)));
        let mut summary = LinkSummary::default();
        for e in &entries {
            match e.outcome {
                Outcome::Ok => summary.ok += 1,
                Outcome::Broken => summary.broken += 1,
                Outcome::Timeout => summary.timeout += 1,
                Outcome::InvalidUrl => summary.invalid_url += 1,
            }
        }
        Self { entries, summary }
    }
}

/// Failure to set up the audit itself; individual link failures are outcomes instead.
#[derive(Debug, thiserror::Error)]
pub enum LinkCheckError {
    /// The async runtime could not start.
    #[error("cannot start I/O runtime: {0}")]
    Runtime(#[from] std::io::Error),
    /// The HTTP client could not be configured.
    #[error("cannot build HTTP client: {0}")]
    Client(#[from] reqwest::Error),
}

struct Job {
    node: NodeId,
    resource_index: usize,
    kind: ResourceKind,
    url: String,
}

/// Checks every resource URL in `graph`, blocking until all are classified.
pub fn check_links(graph: &CourseGraph, config: &CheckConfig) -> Result<LinkReport, LinkCheckError> {
    let jobs: Vec<Job> = graph
        .nodes()
        .iter()
        .flat_map(|n| {
            n.resources().iter().enumerate().map(move |(i, r)| Job {
                node: n.id().clone(),
                resource_index: i,
                kind: r.kind(),
                url: r.url().to_owned(),
            })
        })
        .collect();
    if jobs.is_empty() {
        return Ok(LinkReport::new(Vec::new()));
    }

    let client = Client::builder()
        .user_agent(config.user_agent.clone())
        .timeout(Duration::from_millis(config.timeout_ms))
        .redirect(redirect_policy())
        .build()?;
    let runtime = tokio::runtime::Builder::new_current_thread().enable_all().build()?;
    let entries = runtime.block_on(async {
        stream::iter(jobs)
            .map(|job| {
                let client = &client;
                async move { check_one(client, config, job).await }
            })
            .buffer_unordered(config.max_concurrent)
            .collect::<Vec<_>>()
            .await
    });
    Ok(LinkReport::new(entries))
}

fn redirect_policy() -> redirect::Policy {
    redirect::Policy::custom(|attempt| {
        if attempt.previous().len() > MAX_REDIRECTS {
            attempt.error("too many redirects")
        } else if attempt.previous().contains(attempt.url()) {
            attempt.error("redirect loop")
        } else {
            attempt.follow()
        }
    })
}

/// A URL is requestable when it parses, uses http(s) and names a host.
pub fn parse_http_url(raw: &str) -> Option<Url> {
    let url = Url::parse(raw).ok()?;
    let http = matches!(url.scheme(), "http" | "https");
    (http && url.host_str().is_some_and(|h| !h.is_empty())).then_some(url)
}

enum Attempt {
    Status(StatusCode),
    Timeout,
    Unreachable,
    Broken,
}

async fn check_one(client: &Client, config: &CheckConfig, job: Job) -> LinkEntry {
    let started = Instant::now();
    let (outcome, http_status) = match parse_http_url(&job.url) {
        None => (Outcome::InvalidUrl, None),
        Some(url) => probe(client, config, url).await,
    };
    LinkEntry {
        node: job.node,
        resource_index: job.resource_index,
        kind: job.kind,
        url: job.url,
        outcome,
        http_status,
        latency_ms: if outcome == Outcome::InvalidUrl {
            0
        } else {
            started.elapsed().as_millis() as u64
        },
    }
}

async fn probe(client: &Client, config: &CheckConfig, url: Url) -> (Outcome, Option<u16>) {
    let mut last = Attempt::Unreachable;
    for _ in 0..=config.retries {
        last = head_then_get(client, url.clone()).await;
        if !matches!(last, Attempt::Timeout | Attempt::Unreachable) {
            break;
        }
    }
    match last {
        Attempt::Status(s) if s.is_success() || s.is_redirection() => (Outcome::Ok, Some(s.as_u16())),
        Attempt::Status(s) => (Outcome::Broken, Some(s.as_u16())),
        Attempt::Timeout => (Outcome::Timeout, None),
        Attempt::Unreachable | Attempt::Broken => (Outcome::Broken, None),
    }
}

async fn head_then_get(client: &Client, url: Url) -> Attempt {
    let head = send(client.request(Method::HEAD, url.clone())).await;
    match head {
        Attempt::Status(s) if s == StatusCode::METHOD_NOT_ALLOWED || s == StatusCode::NOT_IMPLEMENTED => {
            // Hosts that reject HEAD get a one-byte ranged GET instead of the full body.
            send(client.get(url).header(header::RANGE, "bytes=0-0")).await
        }
        other => other,
    }
}

async fn send(request: reqwest::RequestBuilder) -> Attempt {
    match request.send().await {
        Ok(response) => Attempt::Status(response.status()),
        Err(e) if e.is_timeout() => Attempt::Timeout,
        Err(e) if e.is_redirect() => Attempt::Broken,
        Err(e) if e.is_connect() => Attempt::Unreachable,
        Err(_) => Attempt::Broken,
    }
}
