mod common;

use common::ls;
use superlie::catalog::{check_table1, Catalog, SpecializationPlan};
use superlie::exactnum::GaussianRational as Q;
use superlie::invariants::{
    derivation_dim, ij_invariant, orbit_dim, DerivationQuery, IJInvariantResult, DEFAULT_IJ_SAMPLES,
};

const SEED: u64 = 2718;

#[test]
fn spot_values() {
    assert_eq!(orbit_dim(&ls("LS5")), 6);
    assert_eq!(ls("LS1").gamma_rank(), 2);
    assert_eq!(ij_invariant(&ls("LS8"), 2, 3, DEFAULT_IJ_SAMPLES, SEED), IJInvariantResult::Exists(Q::one()));
    assert_eq!(ij_invariant(&ls("LS19"), 2, 2, DEFAULT_IJ_SAMPLES, SEED), IJInvariantResult::Exists(Q::from_int(2)));
    assert_eq!(orbit_dim(&ls("LS13[2,2]")), 2);
    assert_eq!(ls("LS7").derived_dims(), (1, 2));
    assert_eq!(ls("LS8").derived_dims(), (1, 1));
}

#[test]
fn orbit_dimension_is_group_dimension_minus_derivations() {
    for name in ["LS0", "LS3", "LS11", "LS6[1]", "LS19"] {
        let a = ls(name);
        assert_eq!(orbit_dim(&a) + derivation_dim(&a, &DerivationQuery::even_derivations()), 8, "{}", name);
    }
}

#[test]
fn ls6_closed_form_at_integers() {
    // (1 + α)² / (1 + α²) at α = 2 and 3.
    assert_eq!(ij_invariant(&ls("LS6[2]"), 1, 1, DEFAULT_IJ_SAMPLES, SEED), IJInvariantResult::Exists(Q::ratio(9, 5)));
    assert_eq!(ij_invariant(&ls("LS6[3]"), 1, 1, DEFAULT_IJ_SAMPLES, SEED), IJInvariantResult::Exists(Q::ratio(8, 5)));
    // At α = −1 only even exponents give an invariant.
    assert_eq!(ij_invariant(&ls("LS6[-1]"), 1, 1, DEFAULT_IJ_SAMPLES, SEED), IJInvariantResult::NotDefined);
    assert_eq!(ij_invariant(&ls("LS6[-1]"), 2, 2, DEFAULT_IJ_SAMPLES, SEED), IJInvariantResult::Exists(Q::from_int(2)));
}

#[test]
fn every_row_at_every_sample() {
    let outcomes = check_table1(Catalog::builtin(), &SpecializationPlan::default()).unwrap();
    assert_eq!(outcomes.len(), 23);
    for o in outcomes {
        for s in o.samples {
            assert!(s.mismatches.is_empty(), "{}: {:?}", s.label, s.mismatches);
        }
    }
}

#[test]
fn ls14_special_fibres() {
    assert_eq!(ls("LS14[0]").derived_dims(), (1, 1));
    assert_eq!(ls("LS14[-1]").derived_dims(), (1, 1));
    assert_eq!(ls("LS14[1]").derived_dims(), (1, 2));
}
