//! The Q-structure on `GF(2)[b_0, b_1, ...]` characterized by
//! `Q_t(b)(x(x + t)) = b(x) b(x + t)` with `b(x) = Σ b_i x^i`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::fgl::additive_over;
use crate::series::{invariant_rewrite, vars, CoefficientRing, RingElem, TruncatedSeries};

use super::adem::adem_expand;
use super::cartan::cartan_expand;
use super::QringError;

/// `q_n(b_k)` for all `n + 2k <= truncation`.
#[derive(Clone, Debug)]
pub struct PriddyTable {
    truncation: u32,
    ring: Arc<CoefficientRing>,
    table: BTreeMap<(u32, u32), RingElem>,
}

/// `GF(2)[b_0, ..., b_n]` with `b_i` in degree `i`, truncated above total degree `n`.
pub fn b_ring(n: u32) -> Arc<CoefficientRing> {
    let gens = (0..=n).map(|i| (format!("b_{i}"), i)).collect();
    CoefficientRing::gf2()
        .adjoin_free(gens, Some(n))
        .expect("distinct generator names")
}

/// `b(x) = Σ b_i x^i` over the given variables, whose first entry is `x`.
pub(crate) fn b_series(
    ring: &Arc<CoefficientRing>,
    first_b: usize,
    count: u32,
    v: &[crate::series::Variable],
    truncation: u32,
) -> TruncatedSeries {
    let mut b = TruncatedSeries::zero(ring, v, truncation);
    for i in 0..count.min(truncation + 1) {
        let mut exps = vec![0; v.len()];
        exps[0] = i;
        let term = TruncatedSeries::monomial(ring, v, truncation, &exps, &ring.generator(first_b + i as usize));
        b.add_assign(&term).expect("same shape");
    }
    b
}

impl PriddyTable {
    pub fn new(truncation: u32) -> Result<Self, QringError> {
        let ring = b_ring(truncation);
        let xt = vars(&[("x", 1), ("t", 1)]);
        let b = b_series(&ring, 0, truncation + 1, &xt, truncation);
        let x = TruncatedSeries::variable(&ring, &xt, truncation, "x")?;
        let t = TruncatedSeries::variable(&ring, &xt, truncation, "t")?;
        let shifted = b.substitute(&[("x", &x.add(&t)?)])?;
        let law = additive_over(&ring, truncation);
        let h = invariant_rewrite(&b.mul(&shifted)?, law.series())?;
        let mut table = BTreeMap::new();
        for k in 0..=truncation / 2 {
            for n in 0..=truncation - 2 * k {
                table.insert((n, k), h.coefficient(&[n, k]));
            }
        }
        Ok(PriddyTable {
            truncation,
            ring,
            table,
        })
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn ring(&self) -> &Arc<CoefficientRing> {
        &self.ring
    }

    pub fn b(&self, k: u32) -> RingElem {
        self.ring.generator(k as usize)
    }

    /// `q_n(b_k)`.
    pub fn q(&self, n: u32, k: u32) -> Result<&RingElem, QringError> {
        self.table.get(&(n, k)).ok_or(QringError::OutOfRange {
            n,
            k,
            truncation: self.truncation,
        })
    }

    /// `q_m` of an arbitrary polynomial, by additivity and the Cartan formula.
    pub fn apply(&self, m: u32, p: &RingElem) -> Result<RingElem, QringError> {
        let mut out = RingElem::zero();
        for mono in p.terms() {
            let factors: Vec<u32> = mono
                .exponents()
                .iter()
                .enumerate()
                .flat_map(|(i, &e)| std::iter::repeat_n(i as u32, e as usize))
                .collect();
            for term in cartan_expand(m, &factors) {
                let mut prod = self.ring.one();
                for (k, j) in term {
                    prod = self.ring.mul(&prod, self.q(j, k)?);
                    if prod.is_zero() {
                        break;
                    }
                }
                out += &prod;
            }
        }
        Ok(out)
    }

    pub fn format(&self, e: &RingElem) -> String {
        self.ring.format(e)
    }
}

/// `q_n(b_k)` from a fresh table at the given truncation.
pub fn priddy_action(n: u32, k: u32, truncation: u32) -> Result<RingElem, QringError> {
    let table = PriddyTable::new(truncation)?;
    Ok(table.q(n, k)?.clone())
}

/// Both sides of the Adem relation for `q_m q_n` evaluated on `b_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdemCheck {
    pub m: u32,
    pub n: u32,
    pub k: u32,
    pub lhs: String,
    pub rhs: String,
    pub difference: String,
    pub equal: bool,
    /// For `m = 0`, whether `q_0(q_n(b_k)) = q_n(b_k)^2`.
    pub squaring: Option<bool>,
}

/// Evaluates `q_m(q_n(b_k))` and the Adem expansion of `q_m q_n` on `b_k`.
/// Needs `m + 2n + 4k <= truncation`.
pub fn check_adem_on_priddy(table: &PriddyTable, m: u32, n: u32, k: u32) -> Result<AdemCheck, QringError> {
    let inner = table.q(n, k)?;
    let lhs = table.apply(m, inner)?;
    let mut rhs = RingElem::zero();
    for term in adem_expand(m, n).terms() {
        let idx = term.indices();
        rhs += &table.apply(idx[0], table.q(idx[1], k)?)?;
    }
    let difference = &lhs + &rhs;
    let squaring = (m == 0).then(|| lhs == table.ring.mul(inner, inner));
    Ok(AdemCheck {
        m,
        n,
        k,
        lhs: table.format(&lhs),
        rhs: table.format(&rhs),
        difference: table.format(&difference),
        equal: difference.is_zero(),
        squaring,
    })
}
