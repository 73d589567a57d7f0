#![allow(dead_code)]

use std::collections::BTreeSet;
use std::io::{BufRead, BufReader, Write};
use std::net::{SocketAddr, TcpListener, TcpStream};
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::thread;
use std::time::Duration;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use syllagraph_core::{
    CourseGraph, Edge, GridPos, Node, NodeId, RelationshipKind, Resource, ResourceKind, Side, SymbolEntry,
};

pub fn fixture(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(rel)
}

pub fn corpus_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/corpus/macro_big_picture.sgs")
}

/// Probe counters shared with the server threads.
#[derive(Default)]
pub struct Probe {
    pub in_flight: AtomicUsize,
    pub max_in_flight: AtomicUsize,
    pub hits: AtomicUsize,
    pub log: Mutex<Vec<(String, String, String)>>,
}

/// Tiny HTTP/1.1 server on a loopback port. Routes:
/// `/ok` 200, `/missing` 404, `/slow` sleeps `slow_ms` then 200, `/delay` sleeps 100 ms then 200,
/// `/head-rejected` 405 on HEAD and 206 on GET, `/redirect` 301 to `/ok`,
/// `/loop-a` and `/loop-b` redirect to each other, `/hops/N` redirects down to `/hops/0` then 200.
pub struct MockServer {
    pub addr: SocketAddr,
    pub probe: Arc<Probe>,
}

impl MockServer {
    pub fn start(slow_ms: u64) -> Self {
        let listener = TcpListener::bind("127.0.0.1:0").expect("bind loopback");
        let addr = listener.local_addr().unwrap();
        let probe = Arc::new(Probe::default());
        let shared = Arc::clone(&probe);
        thread::spawn(move || {
            for stream in listener.incoming().flatten() {
                let probe = Arc::clone(&shared);
                thread::spawn(move || handle(stream, &probe, slow_ms));
            }
        });
        Self { addr, probe }
    }

    pub fn url(&self, path: &str) -> String {
        format!("http://{}{}", self.addr, path)
    }

    pub fn max_in_flight(&self) -> usize {
        self.probe.max_in_flight.load(Ordering::SeqCst)
    }

    pub fn hits(&self) -> usize {
        self.probe.hits.load(Ordering::SeqCst)
    }

    pub fn requests(&self) -> Vec<(String, String, String)> {
        self.probe.log.lock().unwrap().clone()
    }
}

fn handle(stream: TcpStream, probe: &Probe, slow_ms: u64) {
    let _ = stream.set_read_timeout(Some(Duration::from_secs(5)));
    let mut reader = BufReader::new(match stream.try_clone() {
        Ok(s) => s,
        Err(_) => return,
    });
    let mut request_line = String::new();
    if reader.read_line(&mut request_line).is_err() || request_line.is_empty() {
        return;
    }
    let mut agent = String::new();
    loop {
        let mut line = String::new();
        match reader.read_line(&mut line) {
            Ok(0) | Err(_) => break,
            Ok(_) if line == "\r\n" || line == "\n" => break,
            Ok(_) => {
                if let Some(v) = line.to_ascii_lowercase().strip_prefix("user-agent:") {
                    agent = v.trim().to_owned();
                }
            }
        }
    }
    let mut parts = request_line.split_whitespace();
    let method = parts.next().unwrap_or("").to_owned();
    let path = parts.next().unwrap_or("").to_owned();

    let now = probe.in_flight.fetch_add(1, Ordering::SeqCst) + 1;
    probe.max_in_flight.fetch_max(now, Ordering::SeqCst);
    probe.hits.fetch_add(1, Ordering::SeqCst);
    probe.log.lock().unwrap().push((method.clone(), path.clone(), agent));

    let (status, location): (u16, Option<String>) = match path.as_str() {
        "/ok" => (200, None),
        "/missing" => (404, None),
        "/slow" => {
            thread::sleep(Duration::from_millis(slow_ms));
            (200, None)
        }
        "/delay" => {
            thread::sleep(Duration::from_millis(100));
            (200, None)
        }
        "/head-rejected" if method == "HEAD" => (405, None),
        "/head-rejected" => (206, None),
        "/redirect" => (301, Some("/ok".into())),
        "/loop-a" => (302, Some("/loop-b".into())),
        "/loop-b" => (302, Some("/loop-a".into())),
        p if p.starts_with("/hops/") => match p["/hops/".len()..].parse::<u32>() {
            Ok(0) => (200, None),
            Ok(n) => (302, Some(format!("/hops/{}", n - 1))),
            Err(_) => (400, None),
        },
        _ => (404, None),
    };
    // Leave the in-flight window before replying so a client that immediately
    // starts its next request is never double counted.
    probe.in_flight.fetch_sub(1, Ordering::SeqCst);

    let body: &[u8] = if status == 206 && method == "GET" { b"x" } else { b"" };
    let mut response = format!("HTTP/1.1 {status} Mock\r\nContent-Length: {}\r\nConnection: close\r\n", body.len());
    if let Some(loc) = location {
        response.push_str(&format!("Location: {loc}\r\n"));
    }
    if status == 206 {
        response.push_str("Content-Range: bytes 0-0/1\r\n");
    }
    response.push_str("\r\n");
    let mut stream = stream;
    let _ = stream.write_all(response.as_bytes());
    if method != "HEAD" {
        let _ = stream.write_all(body);
    }
    let _ = stream.flush();
}

/// A port on which nothing listens.
pub fn dead_port() -> u16 {
    let l = TcpListener::bind("127.0.0.1:0").unwrap();
    l.local_addr().unwrap().port()
}

fn nid(s: impl Into<String>) -> NodeId {
    NodeId::new(s).unwrap()
}

/// One node per URL, each owning a single video resource, all linked to a sink.
pub fn graph_with_links(urls: &[String]) -> CourseGraph {
    let mut b = CourseGraph::builder("links", nid("sink"));
    b = b.node(Node::builder(nid("sink"), "Sink", Side::Other, GridPos::new(0, 0)).build().unwrap());
    for (i, url) in urls.iter().enumerate() {
        let id = format!("n{i:03}");
        let node = Node::builder(nid(&id), format!("Node {i}"), Side::As, GridPos::new(1, i as u32))
            .resource(Resource::new(ResourceKind::Video, url.clone(), "clip").unwrap())
            .build()
            .unwrap();
        b = b
            .node(node)
            .edge(Edge::new(nid(&id), nid("sink"), RelationshipKind::Derivative, None).unwrap());
    }
    b.build().unwrap()
}

/// Random DAG: nodes are shuffled into a topological order and every edge points forward.
pub fn random_dag(rng: &mut ChaCha8Rng, max_nodes: usize, max_edges: usize) -> CourseGraph {
    let n = rng.random_range(1..=max_nodes);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    // Half the time the sink is last in topological order so that most nodes have routes.
    let sink = if rng.random_bool(0.5) { order[n - 1] } else { rng.random_range(0..n) };
    let mut b = CourseGraph::builder("random", nid(format!("v{sink}")));
    for i in 0..n {
        let side = Side::ALL[rng.random_range(0..3)];
        b = b.node(
            Node::builder(nid(format!("v{i}")), format!("V{i}"), side, GridPos::new(i as u32, 0))
                .build()
                .unwrap(),
        );
    }
    let mut seen = BTreeSet::new();
    if n > 1 {
        for _ in 0..rng.random_range(0..=max_edges) {
            let (x, y) = (rng.random_range(0..n), rng.random_range(0..n));
            if x == y {
                continue;
            }
            let (lo, hi) = (x.min(y), x.max(y));
            let (from, to) = (order[lo], order[hi]);
            let kind = RelationshipKind::ALL[rng.random_range(0..3)];
            if seen.insert((from, to, kind)) {
                b = b.edge(Edge::new(nid(format!("v{from}")), nid(format!("v{to}")), kind, None).unwrap());
            }
        }
    }
    b.build().unwrap()
}

/// Union of nodes and edge indices over every simple path from `origin` to the sink,
/// found by exhaustive depth-first enumeration over the edge list.
pub fn enumerate_routes(graph: &CourseGraph, origin: &str) -> (BTreeSet<String>, BTreeSet<usize>) {
    fn dfs(
        graph: &CourseGraph,
        at: &str,
        on_path: &mut Vec<String>,
        used: &mut Vec<usize>,
        nodes: &mut BTreeSet<String>,
        edges: &mut BTreeSet<usize>,
    ) {
        if at == graph.sink().as_str() {
            nodes.extend(on_path.iter().cloned());
            edges.extend(used.iter().copied());
            return;
        }
        for (i, e) in graph.edges().iter().enumerate() {
            if e.from().as_str() == at && !on_path.iter().any(|p| p == e.to().as_str()) {
                on_path.push(e.to().as_str().to_owned());
                used.push(i);
                dfs(graph, e.to().as_str(), on_path, used, nodes, edges);
                used.pop();
                on_path.pop();
            }
        }
    }
    let mut nodes = BTreeSet::new();
    let mut edges = BTreeSet::new();
    dfs(graph, origin, &mut vec![origin.to_owned()], &mut Vec::new(), &mut nodes, &mut edges);
    (nodes, edges)
}

const ALPHABET: &[char] = &[
    'a', 'b', 'Z', '0', '7', ' ', ' ', '"', '\\', '#', '{', '}', '(', ')', ':', '=', ',', '\n', '\t', '\r', 'π',
    'δ', '–', '“', '”', '\u{1}', '\u{7f}', '😀',
];

fn text(rng: &mut ChaCha8Rng) -> String {
    let len = rng.random_range(0..12);
    let mut s = String::from("x");
    for _ in 0..len {
        s.push(*ALPHABET.choose(rng).unwrap());
    }
    s
}

/// Random valid graph exercising every directive and awkward string content.
pub fn random_graph(rng: &mut ChaCha8Rng) -> CourseGraph {
    let n = rng.random_range(1..=6);
    let mut b = CourseGraph::builder(text(rng), nid(format!("n{}", rng.random_range(0..n))));
    for i in 0..n {
        let mut nb = Node::builder(
            nid(format!("n{i}")),
            text(rng),
            Side::ALL[rng.random_range(0..3)],
            GridPos::new(rng.random_range(0..=999), rng.random_range(0..=999)),
        );
        let mut chapter = 0;
        for _ in 0..rng.random_range(0..3) {
            chapter += rng.random_range(1..10);
            nb = nb.chapter(chapter);
        }
        for _ in 0..rng.random_range(0..3) {
            nb = nb.uses(if rng.random_bool(0.5) { text(rng) } else { format!("K{}", rng.random_range(0..9)) });
        }
        for _ in 0..rng.random_range(0..4) {
            let kind = ResourceKind::ALL[rng.random_range(0..3)];
            let scheme = if rng.random_bool(0.5) { "http" } else { "https" };
            let url = format!("{scheme}://h.example/p{}?q={}", rng.random_range(0..99), rng.random_range(0..99));
            nb = nb.resource(Resource::new(kind, url, text(rng)).unwrap());
        }
        if rng.random_bool(0.5) {
            nb = nb.note(text(rng));
        }
        b = b.node(nb.build().unwrap());
    }
    let mut seen = BTreeSet::new();
    for _ in 0..rng.random_range(0..8) {
        let (x, y, k) = (rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..3));
        if x != y && seen.insert((x, y, k)) {
            let note = rng.random_bool(0.5).then(|| text(rng));
            b = b.edge(Edge::new(nid(format!("n{x}")), nid(format!("n{y}")), RelationshipKind::ALL[k], note).unwrap());
        }
    }
    let mut keys = BTreeSet::new();
    for _ in 0..rng.random_range(0..4) {
        let key = text(rng);
        if keys.insert(key.clone()) {
            b = b.symbol(SymbolEntry::new(key, text(rng)).unwrap());
        }
    }
    let mut metas = BTreeSet::new();
    for _ in 0..rng.random_range(0..3) {
        let key = format!("k_{}", rng.random_range(0..5));
        if metas.insert(key.clone()) {
            b = b.meta(key, text(rng));
        }
    }
    b.build().unwrap()
}
