//! Builds the degeneration graph, prints its Hasse reduction and the components.
//!
//! Run with `cargo run --release --example degeneration_graph [-- --no-limits]`.

use superlie::catalog::Catalog;
use superlie::degeneration::{build_graph, components, hasse_reduction, GraphConfig};

fn main() {
    let no_limits = std::env::args().any(|a| a == "--no-limits");
    let cfg = GraphConfig { include_family_limits: !no_limits, ..GraphConfig::default() };
    let started = std::time::Instant::now();
    let graph = build_graph(Catalog::builtin(), &cfg).expect("consistent graph");

    for w in &graph.witness_outcomes {
        let verdict = match (&w.failure, w.expected_success) {
            (None, true) => "verified".to_string(),
            (None, false) => "verified (unexpected)".to_string(),
            (Some(f), false) => format!("fails as expected: {}", f),
            (Some(f), true) => format!("FAILED: {}", f),
        };
        println!("{:8} {}", w.id, verdict);
    }

    println!("\nHasse reduction:");
    for e in hasse_reduction(&graph) {
        let label = e.label();
        if label.is_empty() {
            println!("  {} -> {}", e.from, e.to);
        } else {
            println!("  {} -> {}  [{}]", e.from, e.to, label);
        }
    }

    let report = components(&graph);
    println!("\ncomponents: {}", report.component_ids().join(", "));
    for (n, m) in &report.inconclusive {
        println!("  inconclusive: nothing rules out {} dominating {}", m, n);
    }
    println!(
        "{} closure edges, {} certificates, {:.1?}",
        graph.edges.len(),
        graph.certificates.len(),
        started.elapsed()
    );
}
