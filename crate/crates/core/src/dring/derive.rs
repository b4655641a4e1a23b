//! Relations among formal composites `q_m q_n` forced by the symmetry of `D_t D_s`.
//!
//! With `D_s(x) = Σ_n q_n(x) s^n` and `D_t(s) = h_t(s) = s F(s, t)`,
//! `D_t D_s(x) = Σ_{m,n} (q_m q_n)(x) t^m h_t(s)^n`. Symmetry in `t, s` makes every
//! coefficient of `Σ (q_m q_n) (t^m h_t(s)^n + s^m h_s(t)^n)` vanish. The composites
//! are uninterpreted unknowns here.

use std::sync::Arc;

use serde::Serialize;

use crate::fgl::FormalGroupLaw;
use crate::qring::is_admissible_pair;
use crate::series::{vars, CoefficientRing, RingElem, TruncatedSeries};

use super::DringError;

pub type Composite = (u32, u32);

/// `q_m q_n = Σ c (q_m' q_n')`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolvedRule {
    pub lhs: Composite,
    pub rhs: Vec<(RingElem, Composite)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RuleTermJson {
    /// Monomials of the coefficient, `"1"` for the unit.
    pub coeff: Vec<String>,
    pub ops: [u32; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RuleJson {
    pub lhs: [u32; 2],
    pub rhs: Vec<RuleTermJson>,
}

/// One coefficient of the symmetry identity, `Σ c (q_m q_n) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawRelation {
    /// Exponents `(a, b)` of `t^a s^b`, with `a > b`.
    pub monomial: (u32, u32),
    pub terms: Vec<(RingElem, Composite)>,
}

#[derive(Clone, Debug)]
pub struct AdemDerivation {
    pub ring: Arc<CoefficientRing>,
    pub amax: u32,
    /// All `(m, n)` with `m + 2n <= amax`.
    pub composites: Vec<Composite>,
    pub raw: Vec<RawRelation>,
    /// Rules for the inadmissible composites that could be eliminated, sorted by `lhs`.
    pub rules: Vec<SolvedRule>,
    /// Inadmissible composites with no unit pivot within the bound.
    pub unsolved: Vec<Composite>,
    /// Relations left after elimination; they involve no eliminated composite.
    pub residual: Vec<Vec<(RingElem, Composite)>>,
}

impl AdemDerivation {
    pub fn rule(&self, m: u32, n: u32) -> Option<&SolvedRule> {
        self.rules.iter().find(|r| r.lhs == (m, n))
    }

    pub fn rule_json(&self, rule: &SolvedRule) -> RuleJson {
        RuleJson {
            lhs: [rule.lhs.0, rule.lhs.1],
            rhs: rule
                .rhs
                .iter()
                .map(|(c, op)| RuleTermJson {
                    coeff: c.terms().map(|m| self.ring.format_monomial(m)).collect(),
                    ops: [op.0, op.1],
                })
                .collect(),
        }
    }

    pub fn rules_json(&self) -> Vec<RuleJson> {
        self.rules.iter().map(|r| self.rule_json(r)).collect()
    }

    /// `q_m q_n = ...` as text.
    pub fn format_rule(&self, rule: &SolvedRule) -> String {
        let rhs: Vec<String> = rule
            .rhs
            .iter()
            .map(|(c, (m, n))| {
                if self.ring.is_one(c) {
                    format!("q_{m} q_{n}")
                } else if c.len() == 1 {
                    format!("{} q_{m} q_{n}", self.ring.format(c))
                } else {
                    format!("({}) q_{m} q_{n}", self.ring.format(c))
                }
            })
            .collect();
        let rhs = if rhs.is_empty() { "0".to_string() } else { rhs.join(" + ") };
        format!("q_{} q_{} = {rhs}", rule.lhs.0, rule.lhs.1)
    }
}

/// Derives the relations among `q_m q_n` with `m + 2n <= amax` from the symmetry
/// axiom for `law`, and solves them for the inadmissible composites.
///
/// Pivots are taken on inadmissible composites only, largest `m - 2n` first with
/// ties broken by `(m, n)`, and only where the pivot coefficient is exactly one.
pub fn derive_generalized_adem(law: &FormalGroupLaw, amax: u32) -> Result<AdemDerivation, DringError> {
    if law.weight() != 1 || !law.params().is_empty() {
        return Err(DringError::Shape("the law must be over x, y of weight one".into()));
    }
    if law.truncation() < amax {
        return Err(DringError::Shape(format!(
            "the law is truncated at {} but {amax} is needed",
            law.truncation()
        )));
    }
    let ring = law.ring().clone();
    let ts_vars = vars(&[("t", 1), ("s", 1)]);
    let t = TruncatedSeries::variable(&ring, &ts_vars, amax, "t")?;
    let s = TruncatedSeries::variable(&ring, &ts_vars, amax, "s")?;
    let fst = law
        .series()
        .restrict(amax)
        .rename(&[("x", "s"), ("y", "t")])
        .reembed(&ts_vars)?;
    let h = s.mul(&fst)?;

    let mut composites = Vec::new();
    let mut polys = Vec::new();
    let mut hpow = TruncatedSeries::one(&ring, &ts_vars, amax);
    for n in 0..=amax / 2 {
        let mut tm = TruncatedSeries::one(&ring, &ts_vars, amax);
        for m in 0..=amax - 2 * n {
            let p = tm.mul(&hpow)?;
            polys.push(p.add(&p.swap_variables("t", "s")?)?);
            composites.push((m, n));
            tm = tm.mul(&t)?;
        }
        hpow = hpow.mul(&h)?;
    }

    let mut rows: Vec<Vec<RingElem>> = Vec::new();
    let mut raw = Vec::new();
    for e in 1..=amax {
        for b in 0..=(e - 1) / 2 {
            let a = e - b;
            let row: Vec<RingElem> = polys.iter().map(|p| p.coefficient(&[a, b])).collect();
            if row.iter().all(RingElem::is_zero) {
                continue;
            }
            raw.push(RawRelation {
                monomial: (a, b),
                terms: sparse(&row, &composites),
            });
            rows.push(row);
        }
    }

    let mut candidates: Vec<usize> = (0..composites.len())
        .filter(|&c| {
            let (m, n) = composites[c];
            !is_admissible_pair(m, n)
        })
        .collect();
    candidates.sort_by_key(|&c| {
        let (m, n) = composites[c];
        (std::cmp::Reverse(m as i64 - 2 * n as i64), m, n)
    });

    let mut used = vec![false; rows.len()];
    let mut pivots = Vec::new();
    let mut unsolved = Vec::new();
    for &c in &candidates {
        let Some(r) = (0..rows.len()).find(|&r| !used[r] && ring.is_one(&rows[r][c])) else {
            unsolved.push(composites[c]);
            continue;
        };
        used[r] = true;
        pivots.push((c, r));
        let pivot_row = rows[r].clone();
        for (r2, row) in rows.iter_mut().enumerate() {
            if r2 == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (entry, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *entry += &ring.mul(&factor, p);
                }
            }
        }
    }

    let mut rules: Vec<SolvedRule> = pivots
        .iter()
        .map(|&(c, r)| {
            let mut rhs = sparse(&rows[r], &composites);
            rhs.retain(|(_, op)| *op != composites[c]);
            SolvedRule {
                lhs: composites[c],
                rhs,
            }
        })
        .collect();
    rules.sort_by_key(|r| r.lhs);
    unsolved.sort();
    let residual = rows
        .iter()
        .zip(&used)
        .filter(|(row, &u)| !u && row.iter().any(|e| !e.is_zero()))
        .map(|(row, _)| sparse(row, &composites))
        .collect();
    Ok(AdemDerivation {
        ring,
        amax,
        composites,
        raw,
        rules,
        unsolved,
        residual,
    })
}

/// Nonzero entries with their composites, ordered by `(m, n)`.
fn sparse(row: &[RingElem], composites: &[Composite]) -> Vec<(RingElem, Composite)> {
    let mut out: Vec<(RingElem, Composite)> = row
        .iter()
        .zip(composites)
        .filter(|(e, _)| !e.is_zero())
        .map(|(e, &c)| (e.clone(), c))
        .collect();
    out.sort_by_key(|(_, c)| *c);
    out
}
