mod common;

use std::sync::{Arc, OnceLock};

use dyerlashof::coverings::FiniteCovering;
use dyerlashof::dring::{nstar_total_square, BasisChange, Direction, TotalSquare};
use dyerlashof::qring::{
    adem_expand, binom_mod2, free_q_basis, is_admissible_pair, normal_form, normal_form_with, QMonomial, QPolynomial,
    Strategy as Rewrite, DEFAULT_STEP_GUARD,
};
use dyerlashof::series::{vars, CoefficientRing, RingElem, TruncatedSeries};
use proptest::prelude::*;

fn chi_at(p: &FiniteCovering, x: i128) -> i128 {
    p.fiber_sizes().iter().map(|&s| x.pow(s as u32)).sum()
}

fn covering() -> impl Strategy<Value = FiniteCovering> {
    prop::collection::vec(0usize..4, 0..4).prop_map(|sizes| FiniteCovering::with_fiber_sizes(&sizes))
}

fn nstar() -> &'static TotalSquare {
    static TS: OnceLock<TotalSquare> = OnceLock::new();
    TS.get_or_init(|| nstar_total_square(3, 4).unwrap())
}

/// A sum of products of generators, chosen by index lists.
fn ring_elem(ring: &Arc<CoefficientRing>, terms: &[Vec<usize>]) -> RingElem {
    let mut out = RingElem::zero();
    for t in terms {
        let mut m = ring.one();
        for &g in t {
            m = ring.mul(&m, &ring.generator(g % ring.num_generators()));
        }
        out += &m;
    }
    out
}

fn series(ring: &Arc<CoefficientRing>, exps: &[(u32, u32)]) -> TruncatedSeries {
    let xy = vars(&[("x", 1), ("y", 1)]);
    let terms: Vec<[u32; 2]> = exps.iter().map(|&(a, b)| [a, b]).collect();
    TruncatedSeries::from_terms(ring, &xy, 8, terms.iter().map(|e| (&e[..], ring.one())))
}

fn exps() -> impl Strategy<Value = Vec<(u32, u32)>> {
    prop::collection::vec((0u32..6, 0u32..6), 0..6)
}

proptest! {
    #[test]
    fn binomial_matches_the_series_oracle(a in -64i64..64, b in -4i64..48) {
        prop_assert_eq!(binom_mod2(a, b), common::binom_oracle(a, b));
    }

    #[test]
    fn adem_expansion_matches_the_closed_form(m in 0u32..24, n in 0u32..24) {
        prop_assume!(!is_admissible_pair(m, n));
        let p = adem_expand(m, n);
        let got: std::collections::BTreeSet<(u32, u32)> =
            p.terms().map(|t| (t.indices()[0], t.indices()[1])).collect();
        prop_assert_eq!(got, common::adem_closed_form(m, n));
        prop_assert!(p.is_admissible());
    }

    #[test]
    fn normal_form_is_idempotent_and_grade_preserving(indices in prop::collection::vec(0u32..10, 1..5), g in 0i64..4) {
        let mono = QMonomial::new(indices.clone());
        let nf = normal_form(&QPolynomial::monomial(indices)).unwrap();
        prop_assert!(nf.is_admissible());
        prop_assert_eq!(normal_form(&nf).unwrap(), nf.clone());
        if !nf.is_zero() {
            prop_assert_eq!(nf.grade(g), Some(mono.grade(g)));
        }
    }

    #[test]
    fn rewriting_strategies_agree(indices in prop::collection::vec(0u32..8, 1..5)) {
        let p = QPolynomial::monomial(indices);
        let left = normal_form_with(&p, Rewrite::Leftmost, DEFAULT_STEP_GUARD, |_, _| {}).unwrap();
        let right = normal_form_with(&p, Rewrite::Rightmost, DEFAULT_STEP_GUARD, |_, _| {}).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn free_basis_is_admissible_and_bounded(len in 0usize..4, grade in 0u32..14, g in 0u32..3) {
        let basis = free_q_basis(g, len, grade);
        prop_assert!(basis.windows(2).all(|w| w[0] < w[1]));
        for (m, d) in &basis {
            prop_assert!(m.is_admissible());
            prop_assert!(m.len() <= len);
            prop_assert!(*d <= grade);
            prop_assert_eq!(m.grade(g as i64), *d as i64);
        }
    }

    #[test]
    fn series_arithmetic_is_a_commutative_ring(a in exps(), b in exps(), c in exps()) {
        let ring = CoefficientRing::gf2();
        let (a, b, c) = (series(&ring, &a), series(&ring, &b), series(&ring, &c));
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        prop_assert!(a.add(&a).unwrap().is_zero());
        prop_assert_eq!(a.mul(&a).unwrap(), a.pow(2));
    }

    #[test]
    fn total_square_is_a_ring_map(
        a in prop::collection::vec(prop::collection::vec(0usize..16, 0..3), 0..4),
        b in prop::collection::vec(prop::collection::vec(0usize..16, 0..3), 0..4),
    ) {
        let ts = nstar();
        let ring = ts.ring();
        let (a, b) = (ring_elem(ring, &a), ring_elem(ring, &b));
        let (da, db) = (ts.apply(&a).unwrap(), ts.apply(&b).unwrap());
        prop_assert_eq!(ts.apply(&(&a + &b)).unwrap(), da.add(&db).unwrap());
        prop_assert_eq!(ts.apply(&ring.mul(&a, &b)).unwrap(), da.mul(&db).unwrap());
        prop_assert_eq!(da.constant_term(), ring.mul(&a, &a));
    }

    #[test]
    fn basis_change_round_trips(m in 1u32..12) {
        let bc = BasisChange::new(m);
        let dq = bc.matrix(Direction::DToQ);
        let qd = bc.matrix(Direction::QToD);
        prop_assert!(bc.is_identity(&bc.multiply(&dq, &qd)));
        prop_assert!(bc.is_identity(&bc.multiply(&qd, &dq)));
        prop_assert!(bc.is_identity(&bc.reduce(&qd).unwrap()));
    }

    #[test]
    fn euler_characteristic_is_a_homomorphism(p in covering(), q in covering(), x in 0i128..4) {
        prop_assert_eq!(chi_at(&p.sum(&q), x), chi_at(&p, x) + chi_at(&q, x));
        prop_assert_eq!(chi_at(&p.product(&q), x), chi_at(&p, x) * chi_at(&q, x));
        let comp = p.compose(&q, 10_000).unwrap();
        prop_assert_eq!(chi_at(&comp, x), chi_at(&p, chi_at(&q, x)));
        prop_assert_eq!(p.derivative().euler_char(), p.euler_char().derivative());
        prop_assert_eq!(p.apply_to_set(x as usize).count() as i128, chi_at(&p, x));
    }

    #[test]
    fn leibniz_and_chain_rule(p in covering(), q in covering()) {
        let lhs = p.product(&q).derivative().euler_char();
        let rhs = p.derivative().product(&q).sum(&p.product(&q.derivative())).euler_char();
        prop_assert_eq!(lhs, rhs);
        let chain = p.compose(&q, 10_000).unwrap().derivative().euler_char();
        let outer = p.derivative().compose(&q, 10_000).unwrap();
        prop_assert_eq!(chain, outer.product(&q.derivative()).euler_char());
    }

    #[test]
    fn divided_derivatives_count_subsets(p in covering(), k in 1usize..4) {
        let dk = p.divided_derivative(k).unwrap().euler_char();
        prop_assert_eq!(dk, p.euler_char().divided_derivative(k as u32));
    }

    #[test]
    fn coverings_round_trip_through_json(p in covering()) {
        let text = serde_json::to_string(&p).unwrap();
        let back: FiniteCovering = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, p);
    }
}

#[test]
fn malformed_covering_json_is_rejected() {
    let bad = r#"{"base_size": 2, "fibers": [[0, 1], [1]]}"#;
    assert!(serde_json::from_str::<FiniteCovering>(bad).is_err());
}
