use std::sync::Arc;

use crate::series::{CoefficientRing, RingElem, RingMap};

use super::DringError;

/// Which way a [`BasisChange`] matrix converts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `q_n = Σ_k [RP^{n-k}] d_k`.
    DToQ,
    /// The inverse: `d_n = Σ_k c_{n-k} q_k` with `Σ c_j x^j = 1 / Σ [RP^i] x^i`.
    QToD,
}

/// The relation `(Σ [RP^i] x^i)(Σ d_k x^k) = Σ q_n x^n` up to index `max_index`.
///
/// `[RP^0] = 1` and `[RP^1] = 0`; the symbols `rp_i` for `2 <= i <= max_index` are
/// free generators of degree `i`.
#[derive(Clone, Debug)]
pub struct BasisChange {
    ring: Arc<CoefficientRing>,
    max_index: u32,
}

impl BasisChange {
    pub fn new(max_index: u32) -> Self {
        let gens = (2..=max_index).map(|i| (format!("rp_{i}"), i)).collect();
        let ring = CoefficientRing::free(gens, None).expect("distinct names");
        BasisChange { ring, max_index }
    }

    pub fn ring(&self) -> &Arc<CoefficientRing> {
        &self.ring
    }

    pub fn max_index(&self) -> u32 {
        self.max_index
    }

    /// `[RP^i]`.
    pub fn rp(&self, i: u32) -> RingElem {
        match i {
            0 => self.ring.one(),
            1 => RingElem::zero(),
            _ if i <= self.max_index => self.ring.generator(i as usize - 2),
            _ => RingElem::zero(),
        }
    }

    /// Coefficients of `1 / Σ [RP^i] x^i`, by `c_j = Σ_{i >= 1} [RP^i] c_{j-i}`.
    fn inverse_series(&self) -> Vec<RingElem> {
        let mut c = vec![self.ring.one()];
        for j in 1..=self.max_index {
            let mut cj = RingElem::zero();
            for i in 1..=j {
                cj += &self.ring.mul(&self.rp(i), &c[(j - i) as usize]);
            }
            c.push(cj);
        }
        c
    }

    /// The lower-unitriangular matrix with entry `[n][k]` the coefficient of the
    /// source basis element `k` in the target element `n`.
    pub fn matrix(&self, direction: Direction) -> Vec<Vec<RingElem>> {
        let entries: Vec<RingElem> = match direction {
            Direction::DToQ => (0..=self.max_index).map(|i| self.rp(i)).collect(),
            Direction::QToD => self.inverse_series(),
        };
        let m = self.max_index as usize;
        (0..=m)
            .map(|n| {
                (0..=m)
                    .map(|k| if k <= n { entries[n - k].clone() } else { RingElem::zero() })
                    .collect()
            })
            .collect()
    }

    pub fn multiply(&self, a: &[Vec<RingElem>], b: &[Vec<RingElem>]) -> Vec<Vec<RingElem>> {
        let m = a.len();
        (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        let mut e = RingElem::zero();
                        for k in 0..m {
                            e += &self.ring.mul(&a[i][k], &b[k][j]);
                        }
                        e
                    })
                    .collect()
            })
            .collect()
    }

    pub fn is_identity(&self, a: &[Vec<RingElem>]) -> bool {
        a.iter().enumerate().all(|(i, row)| {
            row.iter()
                .enumerate()
                .all(|(j, e)| if i == j { self.ring.is_one(e) } else { e.is_zero() })
        })
    }

    /// Sends every `[RP^i]` with `i > 0` to zero, entrywise.
    pub fn reduce(&self, a: &[Vec<RingElem>]) -> Result<Vec<Vec<RingElem>>, DringError> {
        let images = vec![RingElem::zero(); self.ring.num_generators()];
        let map = RingMap::new(self.ring.clone(), self.ring.clone(), images)?;
        Ok(a.iter().map(|row| row.iter().map(|e| map.apply(e)).collect()).collect())
    }

    /// `target_n = Σ coeff * source_k` as text, e.g. `d_2 = q_2 + rp_2*q_0`.
    pub fn format_row(&self, direction: Direction, n: usize) -> String {
        let (target, source) = match direction {
            Direction::DToQ => ("q", "d"),
            Direction::QToD => ("d", "q"),
        };
        let row = &self.matrix(direction)[n];
        let mut parts = Vec::new();
        for k in (0..=n).rev() {
            let e = &row[k];
            if e.is_zero() {
                continue;
            }
            if self.ring.is_one(e) {
                parts.push(format!("{source}_{k}"));
            } else if e.len() == 1 {
                parts.push(format!("{}*{source}_{k}", self.ring.format(e)));
            } else {
                parts.push(format!("({})*{source}_{k}", self.ring.format(e)));
            }
        }
        format!("{target}_{n} = {}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_rows() {
        let bc = BasisChange::new(4);
        assert_eq!(bc.format_row(Direction::DToQ, 0), "q_0 = d_0");
        assert_eq!(bc.format_row(Direction::DToQ, 1), "q_1 = d_1");
        assert_eq!(bc.format_row(Direction::QToD, 2), "d_2 = q_2 + rp_2*q_0");
    }

    #[test]
    fn round_trip_and_reduction() {
        let bc = BasisChange::new(10);
        let dq = bc.matrix(Direction::DToQ);
        let qd = bc.matrix(Direction::QToD);
        assert!(bc.is_identity(&bc.multiply(&dq, &qd)));
        assert!(bc.is_identity(&bc.multiply(&qd, &dq)));
        assert!(!bc.is_identity(&dq));
        assert!(bc.is_identity(&bc.reduce(&dq).unwrap()));
    }
}
