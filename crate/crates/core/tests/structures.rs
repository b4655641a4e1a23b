mod common;

use std::collections::BTreeSet;

use dyerlashof::dring::{bo_dring, derive_generalized_adem, dring_validate, nstar_total_square, thom_reduction};
use dyerlashof::fgl::{fgl_violations, lubin_quotient, LazardRing};
use dyerlashof::qring::is_admissible_pair;
use dyerlashof::series::{CoefficientRing, RingElem, RingMap};

#[test]
fn lazard_laws_are_valid_and_quotients_are_morphisms() {
    for dmax in 1..=4 {
        let law = LazardRing::new(dmax).unwrap().law(dmax + 1).unwrap();
        assert!(fgl_violations(law.series()).unwrap().is_empty(), "dmax {dmax}");
        let iso = lubin_quotient(&law).unwrap();
        iso.check_morphism().unwrap();
        iso.check_kernel().unwrap();
    }
}

#[test]
fn universal_derivation_specializes_to_the_classical_relations() {
    let max = 6;
    let amax = max + (max - 1) / 2;
    let law = LazardRing::new(3).unwrap().law(amax).unwrap();
    let d = derive_generalized_adem(&law, amax).unwrap();
    let kill = RingMap::new(d.ring.clone(), CoefficientRing::gf2(), vec![RingElem::zero(); d.ring.num_generators()])
        .unwrap();
    for m in 0..=max {
        for n in 0..=max - m {
            if is_admissible_pair(m, n) {
                continue;
            }
            let rule = d.rule(m, n).unwrap_or_else(|| panic!("no rule for q_{m} q_{n}"));
            let mut found = BTreeSet::new();
            for (c, op) in &rule.rhs {
                if !kill.apply(c).is_zero() && !found.insert(*op) {
                    found.remove(op);
                }
            }
            assert_eq!(found, common::adem_closed_form(m, n), "q_{m} q_{n}");
        }
    }
}

#[test]
fn bo_over_the_lazard_ring_is_a_d_ring() {
    let bo = bo_dring(&nstar_total_square(3, 4).unwrap()).unwrap();
    let report = dring_validate(&bo).unwrap();
    assert!(report.passed(), "{report}");
    let reduced = thom_reduction(&bo).unwrap();
    assert!(reduced.law().is_additive());
    assert_eq!(reduced.coefficient_generators(), 0);
}

#[test]
fn truncation_below_the_degree_bound_is_refused() {
    assert!(nstar_total_square(4, 3).is_err());
}
