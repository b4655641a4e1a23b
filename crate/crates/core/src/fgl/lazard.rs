use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::series::{vars, CoefficientRing, RingElem, TruncatedSeries, Variable};

use super::{fgl_validate, FglError, FormalGroupLaw};

/// The order-two Lazard ring, exact in degrees `<= dmax`.
///
/// Generators are `a_i_j` for `i, j >= 1` and `i + j - 1 <= dmax`, ordered by
/// degree and then by `i`. The unit coefficients are eliminated up front.
#[derive(Clone, Debug)]
pub struct LazardRing {
    dmax: u32,
    ring: Arc<CoefficientRing>,
    indices: Vec<(u32, u32)>,
}

/// `(i, j)` for each generator `a_i_j`, in generator order.
pub fn lazard_generators(dmax: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for d in 1..=dmax {
        for i in 1..=d {
            out.push((i, d + 1 - i));
        }
    }
    out
}

fn universal_series(
    ring: &Arc<CoefficientRing>,
    indices: &[(u32, u32)],
    v: &[Variable],
    truncation: u32,
) -> TruncatedSeries {
    let x = TruncatedSeries::variable(ring, v, truncation, "x").expect("x");
    let y = TruncatedSeries::variable(ring, v, truncation, "y").expect("y");
    let mut f = x.add(&y).expect("same shape");
    for (g, &(i, j)) in indices.iter().enumerate() {
        let term = TruncatedSeries::monomial(ring, v, truncation, &[i, j], &ring.generator(g));
        f.add_assign(&term).expect("same shape");
    }
    f
}

fn coefficients_into(s: &TruncatedSeries, out: &mut BTreeSet<RingElem>) {
    for (_, c) in s.terms() {
        out.insert(c.clone());
    }
}

impl LazardRing {
    pub fn new(dmax: u32) -> Result<Self, FglError> {
        if dmax == 0 {
            return Err(FglError::Shape("the Lazard approximation needs dmax >= 1".into()));
        }
        let indices = lazard_generators(dmax);
        let gens: Vec<(String, u32)> = indices
            .iter()
            .map(|&(i, j)| (format!("a_{i}_{j}"), i + j - 1))
            .collect();
        let free = CoefficientRing::free(gens.clone(), Some(dmax))?;
        let n = dmax + 1;
        let xy = vars(&[("x", 1), ("y", 1)]);
        let f = universal_series(&free, &indices, &xy, n);

        let mut relations = BTreeSet::new();
        coefficients_into(&f.add(&f.swap_variables("x", "y")?)?, &mut relations);
        let x = TruncatedSeries::variable(&free, &xy, n, "x")?;
        coefficients_into(&f.substitute(&[("y", &x)])?, &mut relations);
        let xyz = vars(&[("x", 1), ("y", 1), ("z", 1)]);
        let f3 = f.reembed(&xyz)?;
        let z = TruncatedSeries::variable(&free, &xyz, n, "z")?;
        let fyz = f.rename(&[("x", "y"), ("y", "z")]).reembed(&xyz)?;
        let left = f3.substitute(&[("x", &f3), ("y", &z)])?;
        let right = f3.substitute(&[("y", &fyz)])?;
        coefficients_into(&left.add(&right)?, &mut relations);

        let ring = CoefficientRing::new(gens, relations.into_iter().collect(), Some(dmax))?;
        Ok(LazardRing { dmax, ring, indices })
    }

    pub fn dmax(&self) -> u32 {
        self.dmax
    }

    pub fn ring(&self) -> &Arc<CoefficientRing> {
        &self.ring
    }

    pub fn generator_indices(&self) -> &[(u32, u32)] {
        &self.indices
    }

    /// The universal law at any truncation; coefficients beyond the ring's bound vanish.
    pub fn law(&self, truncation: u32) -> Result<FormalGroupLaw, FglError> {
        let xy = vars(&[("x", 1), ("y", 1)]);
        fgl_validate(&universal_series(&self.ring, &self.indices, &xy, truncation))
    }

    /// Graded ranks in degrees `0..=dmax`.
    pub fn ranks(&self) -> BTreeMap<u32, usize> {
        (0..=self.dmax)
            .map(|d| (d, self.ring.graded_rank(d).expect("within bound")))
            .collect()
    }
}

/// The ring and the universal law at truncation `dmax + 1`.
pub fn lazard_ring(dmax: u32) -> Result<(Arc<CoefficientRing>, FormalGroupLaw), FglError> {
    let l = LazardRing::new(dmax)?;
    let law = l.law(dmax + 1)?;
    Ok((l.ring.clone(), law))
}

pub fn lazard_law(dmax: u32, truncation: u32) -> Result<FormalGroupLaw, FglError> {
    LazardRing::new(dmax)?.law(truncation)
}

pub fn lazard_ranks(dmax: u32) -> Result<BTreeMap<u32, usize>, FglError> {
    Ok(LazardRing::new(dmax)?.ranks())
}
