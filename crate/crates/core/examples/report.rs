//! Run the whole pipeline through the library and summarise the report.
//!
//! `cargo run --release --example report [-- --seed N]`

use superlie::catalog::Catalog;
use superlie::report::{reproduce, ReproduceOptions};

fn main() {
    let mut opts = ReproduceOptions::default();
    let args: Vec<String> = std::env::args().collect();
    if let Some(i) = args.iter().position(|a| a == "--seed") {
        opts.seed = args[i + 1].parse().expect("integer seed");
    }
    let (report, dot) = reproduce(Catalog::builtin(), &opts).expect("pipeline runs");
    println!("components: {}", report.components.component_ids().join(", "));
    println!("rigid: {}", report.rigid.join(", "));
    println!("Hasse diagram: {} edges, {} bytes of DOT", report.hasse.len(), dot.len());
    println!("{} discrepancies with the tables:", report.discrepancies.len());
    for d in &report.discrepancies {
        println!("  {}", d);
    }
    if report.passed() {
        println!("all expectations hold");
    } else {
        for f in &report.failures {
            println!("FAILED: {}", f);
        }
        std::process::exit(1);
    }
}
