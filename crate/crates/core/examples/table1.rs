//! Orbit dimension, rk Γ, derived dimensions and (i,j)-invariants of every catalog node,
//! compared with the tabulated values.
//!
//! `cargo run --release --example table1`

use superlie::catalog::{check_table1, ls14_delta_check, Catalog, SpecializationPlan};

fn main() {
    let catalog = Catalog::builtin();
    let outcomes = check_table1(catalog, &SpecializationPlan::default()).expect("catalog nodes");
    for o in &outcomes {
        for s in &o.samples {
            let ij: Vec<String> = s.ij.iter().take(3).map(|(k, v)| format!("{}={}", k, v)).collect();
            println!(
                "{:24} orbit {:2}  rkΓ {}  derived {:?}  {}{}",
                s.label,
                s.orbit_dim,
                s.gamma_rank,
                s.derived,
                ij.join(" "),
                if s.mismatches.is_empty() { "" } else { "  MISMATCH" }
            );
            for m in &s.mismatches {
                println!("    {}", m);
            }
        }
    }
    println!();
    for d in ls14_delta_check(catalog).unwrap() {
        println!("LS14 at α = {:2}: computed {:?}, tabulated {:?}", d.alpha.to_string(), d.computed, d.tabulated);
    }
}
