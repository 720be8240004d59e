//! Second cohomology of every catalog entry, families at sampled parameters.
//!
//! `cargo run --release --example rigidity [-- --basis]` prints the graded dimensions of
//! H²(g, g) and, with `--basis`, representative cocycles in wedge notation.

use superlie::catalog::{Catalog, SpecializationPlan};
use superlie::cohomology::h2_dims;

fn main() {
    let show_basis = std::env::args().any(|a| a == "--basis");
    let catalog = Catalog::builtin();
    let plan = SpecializationPlan::default();
    let mut rigid = Vec::new();
    for entry in catalog.entries() {
        let samples = if entry.params().is_empty() {
            vec![Vec::new()]
        } else {
            plan.assignments(&entry.name, entry.params())
                .into_iter()
                .map(|m| entry.params().iter().map(|p| m[p].clone()).collect())
                .collect()
        };
        let mut all_rigid = true;
        for values in &samples {
            let a = catalog.instantiate(&entry.name, values).expect("catalog entry");
            let h = h2_dims(&a);
            let vals: Vec<String> = values.iter().map(|v| v.to_string()).collect();
            let label =
                if vals.is_empty() { entry.name.clone() } else { format!("{}[{}]", entry.name, vals.join(",")) };
            println!("{:28} H2 = ({}, {})", label, h.dim_even, h.dim_odd);
            if show_basis {
                for c in h.basis_even.iter().chain(&h.basis_odd) {
                    println!("    {}", c);
                }
            }
            all_rigid &= h.dim_even == 0;
        }
        if all_rigid {
            rigid.push(entry.name.clone());
        }
    }
    println!("\nH2_0 = 0 for: {}", rigid.join(", "));
}
