//! Verify a degeneration given as a parametric change of basis, then show what goes wrong
//! with a misprinted one.
//!
//! `cargo run --release --example witness_limit`

use std::collections::BTreeMap;

use superlie::catalog::Catalog;
use superlie::degeneration::{parse_witnesses, verify_witness};
use superlie::superalg::print_algebra;

// New basis vectors in the old basis; `sqrt(t)` is read with t = s².
const WITNESSES: &str = "\
witness LS19 -> LS4
id demo.ok
uses_sqrt true
x1 = t e1
x2 = 2 t e2
y1 = sqrt(t) f1
y2 = sqrt(t) f2

witness LS19 -> LS12
id demo.bad
uses_sqrt true
x1 = 2 t e2
x2 = 2 t e1
y1 = sqrt(t) f1
y2 = sqrt(t) f2
";

fn main() {
    let catalog = Catalog::builtin();
    for w in parse_witnesses(WITNESSES).expect("witness text parses") {
        print!("{} ({} -> {}): ", w.id, w.source, w.target);
        match verify_witness(&w, catalog, &BTreeMap::new()) {
            Ok(v) => println!("limit is\n{}", print_algebra(&v.limit, "limit")),
            Err(e) => println!("{}", e),
        }
    }

    // Stored witnesses with a free parameter are checked at sampled values.
    let w = catalog.witness("T3.07").unwrap();
    let (n, res) = superlie::degeneration::verify_at_samples(w, catalog, &Default::default());
    println!(
        "{} ({} -> {}): {} at {} samples",
        w.id,
        w.source,
        w.target,
        if res.is_ok() { "verified" } else { "failed" },
        n
    );
}
