//! Parse a superalgebra from text, check the axioms, compute its invariants and locate it
//! among the catalog entries.
//!
//! `cargo run --release --example custom_algebra [-- path/to/file]`
//!
//! Without an argument a rescaled copy of LS19 is used, so the search should land on LS19.

use superlie::catalog::{Catalog, SpecializationPlan};
use superlie::cohomology::h2_dims;
use superlie::invariants::{
    certify, default_grid, default_queries, invariant_profile, Analyzed, CertifierConfig, DEFAULT_IJ_SAMPLES,
};
use superlie::superalg::parse_algebra_file;

const DEFAULT: &str = "\
superalgebra G dim (2,2)
[e1,e2] = e1
[e1,f2] = 3 f1
[e2,f1] = -f1
[f1,f2] = 1/3 e1
[f2,f2] = 2 e2
";

fn main() {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {}", path, e)),
        None => DEFAULT.to_string(),
    };
    let file = parse_algebra_file(&text).unwrap_or_else(|e| panic!("{}", e));
    let a = file.instantiate(&[]).expect("constant structure constants");

    let report = a.validate();
    if !report.is_valid() {
        for v in &report.violations {
            println!("{}", v);
        }
        return;
    }
    let seed = SpecializationPlan::default().seed;
    let profile = invariant_profile(&a, &default_grid(), &default_queries(), DEFAULT_IJ_SAMPLES, seed);
    println!("{}", serde_json::to_string_pretty(&profile).unwrap());
    let h = h2_dims(&a);
    println!("H2 = ({}, {})", h.dim_even, h.dim_odd);

    // An entry that neither direction of the certifier can separate from `a` is a candidate.
    let catalog = Catalog::builtin();
    let g = Analyzed::new(a, DEFAULT_IJ_SAMPLES, seed);
    let cfg = CertifierConfig::default();
    let mut candidates = Vec::new();
    for e in catalog.entries().iter().filter(|e| e.params().is_empty()) {
        let b = Analyzed::new(catalog.instantiate(&e.name, &[]).unwrap(), DEFAULT_IJ_SAMPLES, seed);
        if certify(&g, &b, &cfg, 1).is_none() && certify(&b, &g, &cfg, 1).is_none() {
            candidates.push(e.name.clone());
        }
    }
    println!("not separated from: {}", candidates.join(", "));
}
