#![allow(dead_code)]

use std::sync::OnceLock;

use proptest::prelude::*;

use superlie::catalog::{Catalog, SpecializationPlan};
use superlie::cohomology::{coords1, Cochain1};
use superlie::degeneration::{build_graph, verify_witness, BasisChange, DegenerationGraph, GraphConfig};
use superlie::exactnum::GaussianRational as Q;
use superlie::invariants::{default_grid, default_queries, Analyzed, IJInvariantResult, DEFAULT_IJ_SAMPLES};
use superlie::linalg::Matrix;
use superlie::superalg::{Functor, SuperAlgebra, SuperDim};

/// Every catalog entry, families at the default sampled parameters.
pub fn catalog_samples() -> Vec<(String, SuperAlgebra<Q>)> {
    let catalog = Catalog::builtin();
    let plan = SpecializationPlan::default();
    let mut out = Vec::new();
    for e in catalog.entries() {
        for a in plan.assignments(&e.name, e.params()) {
            let values: Vec<Q> = e.params().iter().map(|p| a[p].clone()).collect();
            let label = format!("{}{:?}", e.name, values.iter().map(|v| v.to_string()).collect::<Vec<_>>());
            out.push((label, catalog.instantiate(&e.name, &values).unwrap()));
        }
    }
    out
}

pub fn ls(reference: &str) -> SuperAlgebra<Q> {
    Catalog::builtin().instantiate_ref(reference).unwrap()
}

pub fn samples() -> &'static Vec<(String, SuperAlgebra<Q>)> {
    static S: OnceLock<Vec<(String, SuperAlgebra<Q>)>> = OnceLock::new();
    S.get_or_init(catalog_samples)
}

pub fn graph() -> &'static DegenerationGraph {
    static G: OnceLock<DegenerationGraph> = OnceLock::new();
    G.get_or_init(|| build_graph(Catalog::builtin(), &GraphConfig::default()).unwrap())
}

pub fn gauss() -> impl Strategy<Value = Q> {
    (-4i64..=4, -4i64..=4).prop_map(|(a, b)| Q::complex((a, 1), (b, 1)))
}

pub fn cochain1_from(dim: SuperDim, parity: u8, vals: &[Q]) -> Cochain1 {
    let mut m = Matrix::zeros(dim.total(), dim.total());
    for (&(r, c), v) in coords1(dim, parity).iter().zip(vals.iter().cycle()) {
        m[(r, c)] = v.clone();
    }
    Cochain1 { parity, matrix: m }
}

pub fn block(n: usize) -> impl Strategy<Value = Matrix<Q>> {
    prop::collection::vec(-3i64..=3, n * n)
        .prop_map(move |v| {
            Matrix::from_rows(v.chunks(n).map(|r| r.iter().map(|&x| Q::from_int(x)).collect()).collect())
        })
        .prop_filter("invertible", |m| !m.det().is_zero())
}

pub fn change() -> impl Strategy<Value = BasisChange<Q>> {
    (block(2), block(2)).prop_map(|(e, o)| BasisChange::new(e, o).unwrap())
}

/// Along a verified degeneration `g → h` with `g ≇ h`: orbit dimension drops, every
/// derivation space grows, derived dimensions and rk Γ do not grow, tracelessness passes
/// down, existing `(i,j)`-invariants agree, and the same holds weakly for `A`, `ab`, `F`.
pub fn audit(g: &Analyzed, h: &Analyzed, strict: bool, what: &str) {
    if strict {
        assert!(g.orbit_dim() > h.orbit_dim(), "{}: orbit {} -> {}", what, g.orbit_dim(), h.orbit_dim());
    } else {
        assert!(g.orbit_dim() >= h.orbit_dim(), "{}: orbit", what);
    }
    for q in default_queries() {
        assert!(g.derivation_dim(&q) <= h.derivation_dim(&q), "{}: {}", what, q);
    }
    let (dg, dh) = (g.derived(), h.derived());
    assert!(dg.0 >= dh.0 && dg.1 >= dh.1, "{}: derived {:?} -> {:?}", what, dg, dh);
    assert!(g.gamma_rank() >= h.gamma_rank(), "{}: rk Γ", what);
    assert!(!g.traceless() || h.traceless(), "{}: traceless", what);
    for (i, j) in default_grid() {
        if let (IJInvariantResult::Exists(a), IJInvariantResult::Exists(b)) = (g.ij(i, j), h.ij(i, j)) {
            assert_eq!(a, b, "{}: c_{{{},{}}}", what, i, j);
        }
    }
}

/// Audits every verified witness instance whose source is a constant algebra; returns how many.
pub fn audit_witnesses() -> usize {
    let catalog = Catalog::builtin();
    let plan = SpecializationPlan::default();
    let mut audited = 0;
    for w in catalog.witnesses().iter().filter(|w| w.status.expects_success()) {
        for free in plan.assignments(&w.id, &w.free_symbols()) {
            let v = verify_witness(w, catalog, &free).unwrap();
            let Ok(src) = w.source_algebra(catalog, &free).unwrap().try_map(|x| x.as_constant().ok_or(())) else {
                continue;
            };
            let g = Analyzed::new(src, DEFAULT_IJ_SAMPLES, plan.seed);
            let h = Analyzed::new(v.limit, DEFAULT_IJ_SAMPLES, plan.seed);
            audit(&g, &h, true, &w.id);
            for f in Functor::ALL {
                audit(g.functor(f), h.functor(f), false, &format!("{} under {}", w.id, f));
            }
            audited += 1;
        }
    }
    audited
}
