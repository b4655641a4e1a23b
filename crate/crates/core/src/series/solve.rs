//! Weight-by-weight solution of `Σ c_k C_k = G` for ring-valued unknowns `c_k`.
//!
//! Column `k` must start exactly in weight `weights[k]` with GF(2) scalar
//! coefficients there. The unknowns of weight `w` are then fixed by the weight-`w`
//! part of the residual, and the full columns are subtracted before moving on.

use super::gf2::BitRow;
use super::{RingElem, SeriesError, TruncatedSeries};
use std::collections::BTreeMap;

pub(crate) fn solve_by_weight(
    target: &TruncatedSeries,
    columns: &[TruncatedSeries],
    weights: &[u32],
) -> Result<Vec<RingElem>, SeriesError> {
    debug_assert_eq!(columns.len(), weights.len());
    let ring = target.ring().clone();
    let mut by_weight: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (k, (c, &w)) in columns.iter().zip(weights).enumerate() {
        match c.min_weight() {
            Some(found) if found == w => {}
            Some(found) => return Err(SeriesError::ColumnWeight { column: k, expected: w, found }),
            None => return Err(SeriesError::Underdetermined { weight: w, unknown: k }),
        }
        by_weight.entry(w).or_default().push(k);
    }

    let mut solution = vec![RingElem::zero(); columns.len()];
    let mut residual = target.clone();
    for w in 0..=target.truncation() {
        let unknowns = by_weight.get(&w).map(Vec::as_slice).unwrap_or(&[]);
        let rhs_part = residual.homogeneous_part(w);
        if unknowns.is_empty() {
            if let Some((e, _)) = rhs_part.terms().next() {
                return Err(SeriesError::Inconsistent {
                    weight: w,
                    monomial: residual.format_monomial(e.as_slice()),
                });
            }
            continue;
        }

        // rows: source monomials of weight w
        let mut row_index: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
        let mut rows: Vec<(BitRow, RingElem)> = Vec::new();
        let mut row_of = |exps: &[u32], rows: &mut Vec<(BitRow, RingElem)>| -> usize {
            *row_index.entry(exps.to_vec()).or_insert_with(|| {
                rows.push((BitRow::new(unknowns.len()), RingElem::zero()));
                rows.len() - 1
            })
        };
        for (col, &k) in unknowns.iter().enumerate() {
            for (e, c) in columns[k].terms() {
                if e.weight() != w {
                    break;
                }
                if !ring.is_one(c) {
                    return Err(SeriesError::NonScalarLeading { column: k });
                }
                let r = row_of(e.as_slice(), &mut rows);
                rows[r].0.flip(col);
            }
        }
        for (e, c) in rhs_part.terms() {
            let r = row_of(e.as_slice(), &mut rows);
            rows[r].1 += c;
        }
        let monomials: Vec<Vec<u32>> = {
            let mut m: Vec<(usize, Vec<u32>)> = row_index.into_iter().map(|(e, i)| (i, e)).collect();
            m.sort();
            m.into_iter().map(|(_, e)| e).collect()
        };

        let mut order: Vec<usize> = (0..rows.len()).collect();
        let mut next = 0;
        for (col, &unknown) in unknowns.iter().enumerate() {
            let Some(pos) = (next..order.len()).find(|&p| rows[order[p]].0.get(col)) else {
                return Err(SeriesError::Underdetermined { weight: w, unknown });
            };
            order.swap(next, pos);
            let pivot = order[next];
            let (pbits, prhs) = rows[pivot].clone();
            for &r in &order {
                if r != pivot && rows[r].0.get(col) {
                    rows[r].0.xor_assign(&pbits);
                    rows[r].1 += &prhs;
                }
            }
            next += 1;
        }
        for &r in &order[next..] {
            if !rows[r].1.is_zero() {
                return Err(SeriesError::Inconsistent {
                    weight: w,
                    monomial: residual.format_monomial(&monomials[r]),
                });
            }
        }
        for (col, &k) in unknowns.iter().enumerate() {
            let c = rows[order[col]].1.clone();
            if c.is_zero() {
                continue;
            }
            residual.add_assign(&columns[k].scale(&c))?;
            solution[k] = c;
        }
        debug_assert!(residual.homogeneous_part(w).is_zero());
    }
    Ok(solution)
}
