//! Acceptance suite: one line per criterion, each run under its own time limit.
//!
//! Run with `cargo test -p syllagraph --test acceptance`.

mod support;

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use syllagraph::linkcheck::{check_links, CheckConfig, Outcome};
use syllagraph::{emit_bundle, emit_print, emit_site};
use syllagraph_core::corpus::{load_corpus, SINK};
use syllagraph_core::{highlight, parse, serialize, stats, validate, Rule, RuleConfig, Severity, Side};
use support::{dead_port, enumerate_routes, fixture, graph_with_links, random_dag, random_graph, MockServer};

struct Criterion {
    name: &'static str,
    limit: Option<Duration>,
    check: fn(),
}

const TITLES: [&str; 27] = [
    "The Leisure-Work Choice Problem",
    "Individual Labor Supply Curve",
    "Labor Supply Diagram",
    "Two-dimensional Production Function Diagram (Y-L Space)",
    "Marginal Product of Labor (MPL) Diagram",
    "Labor Demand Diagram",
    "Labor Market Equilibrium Diagram",
    "Three-dimensional Production Function Diagram (Y-L-K Space)",
    "Two-dimensional Production Function Diagram (Y-K Space)",
    "Marginal Product of Capital (MPK) Diagram",
    "Capital Demand Diagram",
    "Solow Model",
    "Aggregate Supply (AS) Diagram",
    "A Diagram for General Equilibrium in the Macroeconomy",
    "Money Demand Diagram",
    "Money Market Equilibrium Diagram (Money Supply and Demand)",
    "LM Diagram (Liquidity-Money Diagram)",
    "Labor Market Equilibrium Diagram",
    "Aggregate Demand (AD) Diagram",
    "Phillips Curve",
    "Saving vs. Interest Rate Diagram",
    "National Saving and Investment Model (aka \u{201c}Classical Cross\u{201d} Model)",
    "IS Diagram (Investment=Saving Diagram)",
    "IS-LM Model",
    "User Cost of Capital Model",
    "Investment vs. Interest Rate Diagram",
    "Aggregate Expenditure Line (aka \u{201c}Keynesian Cross\u{201d} Model)",
];

const GLOSSARY: &[(&str, &str)] = &[
    ("\u{2013}", "Fixed"),
    ("~", "Changing"),
    ("I", "Income"),
    ("I(w 1)", "Income at wage rate 1"),
    ("U", "Utility level OR Utility Indifference Curve"),
    ("L", "Leisure hours"),
    ("W", "Hours Worked"),
    ("W", "Nominal wage rate"),
    ("w", "Real wage rate OR W/P"),
    ("P", "Price level"),
    ("I.E", "Income effect"),
    ("S.E", "Substitution effect"),
    ("L", "Labor supplied OR Labor hours worked"),
    ("LS", "Labor supplied (Supply of labor)"),
    ("LD", "Labor demand (Demand for labor)"),
    ("MCL", "Marginal cost of labor"),
    ("MPL", "Marginal product of labor"),
    ("Y", "Output (Income)"),
    ("A", "Technology level OR Total Factor Productivity (TFP) level"),
    ("PF", "Production function"),
    ("MPL'", "Derivative of marginal product of labor with respect to L"),
    ("MPK", "Marginal product of capital"),
    ("MPK'", "Derivative of marginal product of capital with respect to K"),
    ("F(.) OR f(.)", "Function of"),
    ("\u{3b4}", "Depreciation rate"),
    ("LRAS", "Long-run aggregate supply"),
    ("SRAS", "Short-run aggregate supply"),
    ("AS", "Aggregate supply"),
    ("AD", "Aggregate demand"),
    ("FE", "Full employment"),
    ("Y^* of Y of FE", "Output level at full employment"),
    ("PE", "Price expectation"),
    ("MS^*", "Money supply"),
    ("M0", "Sum of currency in circulation (notes and coins) plus banks' reserves with the central bank"),
    ("M1", "Currency in circulation plus current (checking) accounts plus deposit accounts transferable by checks"),
    ("i", "Nominal interest rate"),
    ("r", "Real interest rate"),
    ("MD", "Money demand (Demand for money)"),
    ("LM", "Liquidity-Money equilibrium curve"),
    ("L(Y, i)", "Liquidity function"),
    ("S", "National saving"),
    ("I", "National investment"),
    ("IS", "Investment-Saving curve"),
    ("K", "Capital stock"),
    ("UC", "User cost of capital"),
    ("E", "Expenditures"),
    ("G", "Government Expenditures"),
    ("I(r1)", "Investments made at the interest rate \u{201c}r1\u{201d}"),
    ("C", "Consumption"),
    ("\u{3c0}", "Inflation rate"),
    ("U", "Unemployment rate"),
    ("\\bar{U}", "The natural rate of unemployment"),
    ("LRPC", "Long-run Philips curve"),
    ("SRPC", "Short-run Philips curve"),
];

fn corpus_counts() {
    let g = load_corpus();
    let s = stats(&g);
    assert_eq!(s.node_count, 27);
    assert_eq!(s.side_counts[&Side::As], 13);
    assert_eq!(s.side_counts[&Side::Ad], 12);
    assert_eq!(s.side_counts[&Side::Other], 2);
    let titles: Vec<&str> = g.nodes().iter().map(|n| n.title()).collect();
    assert_eq!(titles, TITLES);
    for &(key, meaning) in GLOSSARY {
        let entry = g.symbol(key).unwrap_or_else(|| panic!("glossary lacks {key:?}"));
        assert!(
            entry.meaning().split("; ").any(|m| m == meaning),
            "{key:?} lacks meaning {meaning:?}: {:?}",
            entry.meaning()
        );
    }
    assert_eq!(g.symbol("MPL").unwrap().meaning(), "Marginal product of labor");
}

fn highlight_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let mut lit_edges = 0;
    for round in 0..500 {
        let g = random_dag(&mut rng, 12, 30);
        assert!(g.edges().len() <= 30);
        for node in g.nodes() {
            let got = highlight(&g, node.id().as_str()).unwrap();
            let (nodes, edges) = enumerate_routes(&g, node.id().as_str());
            let got_nodes: BTreeSet<String> = got.node_ids.iter().map(|n| n.to_string()).collect();
            assert_eq!(got_nodes, nodes, "round {round}, origin {}", node.id());
            assert_eq!(got.edge_indices, edges, "round {round}, origin {}", node.id());
            lit_edges += edges.len();
        }
    }
    // Guards against a generator that only produces trivial graphs.
    assert!(lit_edges > 3_000, "only {lit_edges} lit edges");
}

fn corpus_routes() {
    let g = load_corpus();
    for node in g.nodes() {
        let h = highlight(&g, node.id().as_str()).unwrap();
        assert!(!h.is_empty(), "{}", node.id());
        assert!(h.node_ids.iter().any(|n| n.as_str() == SINK));
        assert!(h.node_ids.contains(node.id()));
    }
    let sink = highlight(&g, SINK).unwrap();
    let ids: Vec<&str> = sink.node_ids.iter().map(|n| n.as_str()).collect();
    assert_eq!(ids, [SINK]);
    assert!(sink.edge_indices.is_empty());
}

fn dsl_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    for round in 0..1000 {
        let g = random_graph(&mut rng);
        let text = serialize(&g);
        let back = parse(&text).unwrap_or_else(|e| panic!("round {round}: {e:?}\n{text}"));
        assert_eq!(back, g, "round {round}");
    }
    let corpus = load_corpus();
    assert_eq!(parse(&serialize(&corpus)).unwrap(), corpus);
}

fn lint_fixtures() {
    let cases = [
        ("r1_notation.sgs", Rule::NotationConsistency),
        ("r2_note_brevity.sgs", Rule::NoteBrevity),
        ("r3_video_range.sgs", Rule::VideoRange),
        ("r4_sink_reachability.sgs", Rule::SinkReachability),
        ("r5_position_overlap.sgs", Rule::PositionOverlap),
        ("r6_orphan.sgs", Rule::OrphanNode),
        ("r7_cycle.sgs", Rule::Acyclicity),
        ("r8_direct_media.sgs", Rule::DirectMediaLink),
    ];
    let config = RuleConfig::default();
    for (file, rule) in cases {
        let src = std::fs::read_to_string(fixture(&format!("lint/{file}"))).unwrap();
        let g = parse(&src).unwrap_or_else(|e| panic!("{file}: {e:?}"));
        let fired: BTreeSet<Rule> = validate(&g, &config).iter().map(|d| d.rule).collect();
        assert_eq!(fired, BTreeSet::from([rule]), "{file}");
    }
    let clean = std::fs::read_to_string(fixture("lint/clean.sgs")).unwrap();
    assert!(validate(&parse(&clean).unwrap(), &config).is_empty());
    let corpus = validate(&load_corpus(), &config);
    assert_eq!(corpus.iter().filter(|d| d.severity == Severity::Error).count(), 0);
}

fn deterministic_emission() {
    let g = load_corpus();
    assert_eq!(emit_bundle(&g).unwrap(), emit_bundle(&g).unwrap());
    assert_eq!(emit_site(&g).unwrap(), emit_site(&g).unwrap());
    let svg = emit_print(&g).unwrap();
    assert_eq!(svg, emit_print(&g).unwrap());
    let svg = String::from_utf8(svg).unwrap();
    assert_eq!(svg.matches("<rect").count(), 27);
    assert_eq!(svg.matches("<path").count(), g.edges().len());
    assert_eq!(svg.matches("marker-end=\"url(#arrow-").count(), g.edges().len());
}

fn link_audit() {
    let server = MockServer::start(1_500);
    let urls: Vec<String> = ["/ok", "/missing", "/slow"].iter().map(|p| server.url(p)).collect();
    let config = CheckConfig::new(4, 300, 1, "acceptance").unwrap();
    let report = check_links(&graph_with_links(&urls), &config).unwrap();
    let outcomes: Vec<Outcome> = report.entries.iter().map(|e| e.outcome).collect();
    assert_eq!(outcomes, [Outcome::Ok, Outcome::Broken, Outcome::Timeout]);
    assert!(report.entries[2].latency_ms >= 300);

    let busy = MockServer::start(1_500);
    let many: Vec<String> = (0..32).map(|_| busy.url("/delay")).collect();
    let bounded = CheckConfig::new(4, 5_000, 0, "acceptance").unwrap();
    let report = check_links(&graph_with_links(&many), &bounded).unwrap();
    assert_eq!(report.summary.ok, 32);
    assert!(busy.max_in_flight() <= 4, "in flight {}", busy.max_in_flight());

    let port = dead_port();
    let dead: Vec<String> = (0..12).map(|i| format!("http://127.0.0.1:{port}/{i}")).collect();
    let report = check_links(&graph_with_links(&dead), &config).unwrap();
    assert_eq!(report.entries.len(), 12);
    assert_eq!(report.summary.ok, 0);
    let slow: Vec<String> = (0..6).map(|_| server.url("/slow")).collect();
    let report = check_links(&graph_with_links(&slow), &config).unwrap();
    assert_eq!(report.summary.timeout, 6);
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { name: "corpus counts, titles and glossary", limit: Some(Duration::from_secs(1)), check: corpus_counts },
        Criterion { name: "highlight equals path enumeration on 500 random DAGs", limit: Some(Duration::from_secs(30)), check: highlight_oracle },
        Criterion { name: "corpus routes reach the sink", limit: Some(Duration::from_secs(1)), check: corpus_routes },
        Criterion { name: "DSL round-trip on 1000 graphs and the corpus", limit: Some(Duration::from_secs(30)), check: dsl_round_trip },
        Criterion { name: "lint fixtures fire exactly their rule", limit: None, check: lint_fixtures },
        Criterion { name: "deterministic bundle, site and print emission", limit: None, check: deterministic_emission },
        Criterion { name: "link audit against a mock server", limit: Some(Duration::from_secs(20)), check: link_audit },
    ];

    panic::set_hook(Box::new(|info| eprintln!("    {info}")));
    let mut failed = 0;
    for c in &criteria {
        let started = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(c.check));
        let elapsed = started.elapsed();
        let over = c.limit.is_some_and(|l| elapsed > l);
        let pass = result.is_ok() && !over;
        if !pass {
            failed += 1;
        }
        let limit = c.limit.map(|l| format!(", limit {} s", l.as_secs())).unwrap_or_default();
        let note = if over && result.is_ok() { " (over time limit)" } else { "" };
        println!(
            "{} {} ({} ms{limit}){note}",
            if pass { "PASS" } else { "FAIL" },
            c.name,
            elapsed.as_millis()
        );
    }
    println!("{} of {} acceptance criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
