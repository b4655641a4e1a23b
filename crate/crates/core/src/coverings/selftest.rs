//! Seeded randomized checks of the covering calculus.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::covering::FiniteCovering;
use super::poly::{binomial, IntPolynomial};
use super::splitting::{split_covering, splitting_check};
use super::CoveringError;

/// A composition operation, injectable so that a faulty one can be exercised.
pub type ComposeFn<'a> = dyn Fn(&FiniteCovering, &FiniteCovering) -> Result<FiniteCovering, CoveringError> + 'a;

/// Bases of constructed composites stay below this many elements.
pub const COMPOSE_LIMIT: usize = 2_000;
/// Functor applications enumerate at most this many elements.
pub const APPLY_LIMIT: i128 = 100_000;
/// Largest base of a random covering.
pub const MAX_BASE: usize = 4;
/// Splitting is checked on every `x^n` with `n` up to this degree.
pub const SPLITTING_DEGREE: u32 = 20;
const MAX_ATTEMPTS: usize = 100_000;

pub const LAWS: [&str; 9] = [
    "sum",
    "product",
    "composition",
    "derivative",
    "leibniz",
    "chain-rule",
    "functor-cardinality",
    "divided-derivative",
    "splitting-covering",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SelftestConfig {
    pub trials: usize,
    pub max_size: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub law: String,
    pub p: FiniteCovering,
    pub q: FiniteCovering,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LawTally {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelftestReport {
    pub config: SelftestConfig,
    pub laws: BTreeMap<String, LawTally>,
    /// Monomials `x^n` with `s(x^{n+1}) ≡ x^n (mod 2)`, out of `SPLITTING_DEGREE + 1`.
    pub splitting_passed: usize,
    pub splitting_failed: usize,
    pub counterexample: Option<Counterexample>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.splitting_failed == 0 && self.laws.values().all(|t| t.failed == 0)
    }
}

/// A covering with at most `max_size` total elements over at most [`MAX_BASE`]
/// points, with elements placed uniformly at random.
pub fn random_covering(rng: &mut impl Rng, max_size: usize) -> FiniteCovering {
    let n = rng.gen_range(0..=max_size);
    let m = if n == 0 { rng.gen_range(0..=MAX_BASE) } else { rng.gen_range(1..=MAX_BASE) };
    let mut fibers = vec![Vec::new(); m];
    for e in 0..n {
        fibers[rng.gen_range(0..m)].push(e);
    }
    FiniteCovering::new(m, fibers).expect("a partition by construction")
}

/// Whether every construction the suite performs on `(p, q)` stays within the limits.
fn fits(p: &FiniteCovering, q: &FiniteCovering) -> bool {
    let (cp, cq) = (p.euler_char(), q.euler_char());
    let comp = cp.compose(&cq);
    let outer = cp.derivative().compose(&cq);
    let limit = COMPOSE_LIMIT as i128;
    comp.eval(1) <= limit
        && comp.derivative().eval(1) <= 10 * limit
        && outer.eval(1) <= limit
        && outer.eval(1) * cq.derivative().eval(1) <= 25 * limit
        && cp.eval(4) <= APPLY_LIMIT
        && cq.eval(4) <= APPLY_LIMIT
        && comp.eval(3) <= APPLY_LIMIT
}

/// Draws a pair by rejection until [`fits`] holds.
pub fn random_pair(rng: &mut impl Rng, max_size: usize) -> Result<(FiniteCovering, FiniteCovering), CoveringError> {
    for _ in 0..MAX_ATTEMPTS {
        let p = random_covering(rng, max_size);
        let q = random_covering(rng, max_size);
        if fits(&p, &q) {
            return Ok((p, q));
        }
    }
    Err(CoveringError::RejectionExhausted { attempts: MAX_ATTEMPTS })
}

/// The suite with the built-in composition.
pub fn run_selftest(config: SelftestConfig) -> Result<SelftestReport, CoveringError> {
    run_selftest_with(config, &|p, q| p.compose(q, COMPOSE_LIMIT))
}

pub fn run_selftest_with(config: SelftestConfig, compose: &ComposeFn<'_>) -> Result<SelftestReport, CoveringError> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut suite = Suite {
        laws: LAWS.iter().map(|l| (l.to_string(), LawTally::default())).collect(),
        counterexample: None,
    };
    for _ in 0..config.trials {
        let (p, q) = random_pair(&mut rng, config.max_size)?;
        suite.trial(&p, &q, compose)?;
    }
    let mut splitting_passed = 0;
    for n in 0..=SPLITTING_DEGREE {
        if splitting_check(&IntPolynomial::monomial(1, n)).holds {
            splitting_passed += 1;
        }
    }
    Ok(SelftestReport {
        config,
        laws: suite.laws,
        splitting_passed,
        splitting_failed: SPLITTING_DEGREE as usize + 1 - splitting_passed,
        counterexample: suite.counterexample,
    })
}

struct Suite {
    laws: BTreeMap<String, LawTally>,
    counterexample: Option<Counterexample>,
}

fn compare(what: &str, left: &IntPolynomial, right: &IntPolynomial) -> Option<String> {
    (left != right).then(|| format!("{what}: {left} != {right}"))
}

impl Suite {
    fn record(&mut self, law: &str, p: &FiniteCovering, q: &FiniteCovering, failure: Option<String>) {
        let tally = self.laws.get_mut(law).expect("known law");
        match failure {
            None => tally.passed += 1,
            Some(detail) => {
                tally.failed += 1;
                if self.counterexample.is_none() {
                    self.counterexample = Some(Counterexample {
                        law: law.to_string(),
                        p: p.clone(),
                        q: q.clone(),
                        detail,
                    });
                }
            }
        }
    }

    fn trial(&mut self, p: &FiniteCovering, q: &FiniteCovering, compose: &ComposeFn<'_>) -> Result<(), CoveringError> {
        let (cp, cq) = (p.euler_char(), q.euler_char());
        let (dp, dq) = (p.derivative(), q.derivative());

        let f = compare("χ(p + q)", &p.sum(q).euler_char(), &cp.add(&cq));
        self.record("sum", p, q, f);
        let f = compare("χ(p × q)", &p.product(q).euler_char(), &cp.mul(&cq));
        self.record("product", p, q, f);
        let pq = compose(p, q)?;
        let f = compare("χ(p ∘ q)", &pq.euler_char(), &cp.compose(&cq));
        self.record("composition", p, q, f);
        let f = compare("χ(p')", &dp.euler_char(), &cp.derivative())
            .or_else(|| compare("χ(q')", &dq.euler_char(), &cq.derivative()));
        self.record("derivative", p, q, f);

        let lhs = p.product(q).derivative().euler_char();
        let rhs = dp.product(q).sum(&p.product(&dq)).euler_char();
        let f = compare("χ((p × q)')", &lhs, &rhs);
        self.record("leibniz", p, q, f);
        let lhs = pq.derivative().euler_char();
        let rhs = compose(&dp, q)?.product(&dq).euler_char();
        let f = compare("χ((p ∘ q)')", &lhs, &rhs);
        self.record("chain-rule", p, q, f);

        let f = self.cardinalities(p, q, &pq);
        self.record("functor-cardinality", p, q, f);
        let f = self.divided(p)?;
        self.record("divided-derivative", p, q, f);

        let xp = FiniteCovering::identity(1).product(p);
        let split = split_covering(&xp)?.euler_char().mod2();
        let f = compare("χ(s(x × p)) mod 2", &split, &cp.mod2());
        self.record("splitting-covering", p, q, f);
        Ok(())
    }

    fn cardinalities(&self, p: &FiniteCovering, q: &FiniteCovering, pq: &FiniteCovering) -> Option<String> {
        for (name, c) in [("p", p), ("q", q)] {
            let chi = c.euler_char();
            for k in 0..=4 {
                let count = c.apply_to_set(k).count() as i128;
                if count != chi.eval(k as i128) {
                    return Some(format!("|{name}(X)| = {count} != χ({name})({k}) for |X| = {k}"));
                }
            }
        }
        for k in 0..=3 {
            let inner = q.apply_to_set(k).count();
            let nested = p.apply_to_set(inner).count();
            let direct = pq.apply_to_set(k).count();
            if nested != direct {
                return Some(format!("|p(q(X))| = {nested} != |(p ∘ q)(X)| = {direct} for |X| = {k}"));
            }
        }
        None
    }

    fn divided(&self, p: &FiniteCovering) -> Result<Option<String>, CoveringError> {
        if p.divided_derivative(1)?.euler_char() != p.derivative().euler_char() {
            return Ok(Some("p^(1)/1! differs from p'".into()));
        }
        for k in 1..=3 {
            let mut expected = IntPolynomial::zero();
            for f in p.fiber_sizes() {
                if f >= k {
                    expected.add_term((f - k) as u32, binomial(f as u32, k as u32));
                }
            }
            let found = p.divided_derivative(k)?.euler_char();
            if found != expected {
                return Ok(Some(format!("χ(p^({k})/{k}!) = {found} != {expected}")));
            }
        }
        let halves = 2 * p.divided_derivative(2)?.total_size();
        let (d1, labels) = p.derivative_labeled();
        let (d2, labels2) = d1.derivative_labeled();
        let marked = labels2
            .iter()
            .filter(|&&(a, b)| {
                let (t, e) = labels[a];
                let (t2, e2) = labels[b];
                t == t2 && e != e2 && e != t && e2 != t
            })
            .count();
        if d2.total_size() != marked || halves != marked {
            return Ok(Some(format!(
                "2 |p''/2| = {halves} but p'' has {marked} doubly marked points of {}",
                d2.total_size()
            )));
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_suite_passes() {
        let config = SelftestConfig {
            trials: 20,
            max_size: 12,
            seed: 7,
        };
        let report = run_selftest(config).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.laws["sum"].passed, 20);
        assert_eq!(run_selftest(config).unwrap(), report);
    }

    #[test]
    fn faulty_compose_is_caught() {
        let config = SelftestConfig {
            trials: 10,
            max_size: 8,
            seed: 1,
        };
        let wrong = |p: &FiniteCovering, q: &FiniteCovering| Ok(p.product(q));
        let report = run_selftest_with(config, &wrong).unwrap();
        assert!(!report.passed());
        assert!(report.counterexample.is_some());
    }

    #[test]
    fn no_trials_is_vacuous() {
        let report = run_selftest(SelftestConfig {
            trials: 0,
            max_size: 12,
            seed: 0,
        })
        .unwrap();
        assert!(report.passed());
        assert_eq!(report.splitting_passed, 21);
    }
}
