//! Certifies every non-degeneration row at sampled parameters and compares the cited
//! derivation dimensions with the computed ones.
//!
//! `cargo run --release --example table2`

use superlie::catalog::{certify_table2, Catalog, SpecializationPlan};

fn main() {
    let outcomes = certify_table2(Catalog::builtin(), &SpecializationPlan::default());
    let mut uncertified = 0;
    let mut mismatched = 0;
    for o in &outcomes {
        let first = &o.samples[0];
        let rule = first.certificate.as_ref().map_or("-".to_string(), |c| c.rule_name());
        let dims = match (&o.cited, first.derivation_dims) {
            (Some(c), Some((l, r))) => format!("  cited {}  computed {} / {}", c, l, r),
            _ => String::new(),
        };
        let ident = match o.identification_ok() {
            Some(true) => "  identification ok",
            Some(false) => "  identification FAILS",
            None => "",
        };
        println!("{:2} {} -> {}: {}{}{}", o.row, o.source, o.target, rule, dims, ident);
        for s in &o.samples {
            if let Some(e) = &s.error {
                println!("     {} -> {}: {}", s.source, s.target, e);
            }
        }
        if !o.certified() {
            uncertified += 1;
        }
        if o.cited_dims_match() == Some(false) {
            mismatched += 1;
        }
    }
    println!(
        "\n{} rows, {} without a certificate, {} with cited dimensions not reproduced",
        outcomes.len(),
        uncertified,
        mismatched
    );
}
