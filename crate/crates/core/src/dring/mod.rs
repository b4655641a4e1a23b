//! Total squares `D_t: R -> R[[t]]` and the axioms that make `(R, F, D_t)` a D-ring.

mod basis;
mod derive;
mod structures;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::fgl::{lubin_quotient, FglError, FormalGroupLaw};
use crate::qring::QringError;
use crate::series::{vars, CoefficientRing, RingElem, RingError, SeriesError, TruncatedSeries, Variable};

pub use basis::{BasisChange, Direction};
pub use derive::{derive_generalized_adem, AdemDerivation, RuleJson, RuleTermJson, SolvedRule};
pub use structures::{additive_total_square, bo_dring, nstar_total_square, thom_reduction};

#[derive(Debug, Error)]
pub enum DringError {
    #[error("malformed total square: {0}")]
    Shape(String),
    #[error("the total square fails {0}")]
    Invalid(Box<DringReport>),
    #[error("the reduced law is not additive")]
    NotAdditive,
    #[error(transparent)]
    Fgl(#[from] FglError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Qring(#[from] QringError),
}

/// A ring `R` with an order-two law `F` and the images `D_t(g)` of its generators.
///
/// The law is over `x, y` of weight one at truncation `T + 2`; each image is a
/// series in `t` at truncation `T`. The first `coefficient_generators` generators
/// of `R` are those of the coefficient ring of `F`.
#[derive(Clone, Debug)]
pub struct TotalSquare {
    ring: Arc<CoefficientRing>,
    law: FormalGroupLaw,
    action: Vec<TruncatedSeries>,
    truncation: u32,
    coefficient_generators: usize,
}

impl TotalSquare {
    pub fn new(
        law: FormalGroupLaw,
        action: Vec<TruncatedSeries>,
        truncation: u32,
        coefficient_generators: usize,
    ) -> Result<Self, DringError> {
        let ring = law.ring().clone();
        if law.weight() != 1 || !law.params().is_empty() {
            return Err(DringError::Shape("the law must be over x, y of weight one".into()));
        }
        if law.truncation() < truncation + 2 {
            return Err(DringError::Shape(format!(
                "the law is truncated at {} but {} is needed",
                law.truncation(),
                truncation + 2
            )));
        }
        if action.len() != ring.num_generators() || coefficient_generators > action.len() {
            return Err(DringError::Shape(format!(
                "{} images for {} generators",
                action.len(),
                ring.num_generators()
            )));
        }
        let t = t_vars();
        for a in &action {
            if a.variables() != t.as_slice() || a.truncation() != truncation || **a.ring() != *ring {
                return Err(DringError::Shape("every image must be a series in t over the ring".into()));
            }
        }
        Ok(TotalSquare {
            ring,
            law: law.restrict(truncation + 2),
            action,
            truncation,
            coefficient_generators,
        })
    }

    pub fn ring(&self) -> &Arc<CoefficientRing> {
        &self.ring
    }

    pub fn law(&self) -> &FormalGroupLaw {
        &self.law
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn coefficient_generators(&self) -> usize {
        self.coefficient_generators
    }

    pub fn action(&self) -> &[TruncatedSeries] {
        &self.action
    }

    /// `D_t` of the named generator.
    pub fn image_of(&self, name: &str) -> Option<&TruncatedSeries> {
        self.ring.generator_index(name).map(|i| &self.action[i])
    }

    /// `D_t(e)` by multiplicative extension.
    pub fn apply(&self, e: &RingElem) -> Result<TruncatedSeries, DringError> {
        Ok(TruncatedSeries::evaluate_ring_hom(
            &self.ring,
            e,
            &self.action,
            &t_vars(),
            self.truncation,
        )?)
    }

    /// `d_n(e)`, the coefficient of `t^n` in `D_t(e)`.
    pub fn d(&self, n: u32, e: &RingElem) -> Result<RingElem, DringError> {
        Ok(self.apply(e)?.coefficient(&[n]))
    }

    /// Replaces the image of one generator, e.g. to corrupt a valid structure.
    pub fn with_image(&self, generator: usize, image: TruncatedSeries) -> Result<Self, DringError> {
        let mut action = self.action.clone();
        action[generator] = image;
        TotalSquare::new(self.law.clone(), action, self.truncation, self.coefficient_generators)
    }
}

pub(crate) fn t_vars() -> Vec<Variable> {
    vars(&[("t", 1)])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DringAxiom {
    /// Relations of `R` map to zero.
    WellDefined,
    /// `D_0(g) = g^2`.
    Squaring,
    /// `D_t(F) = F_t`.
    QuotientLaw,
    /// `D_t D_s` is symmetric in `t, s`.
    Symmetry,
}

impl fmt::Display for DringAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DringAxiom::WellDefined => "well-definedness",
            DringAxiom::Squaring => "D_0(a) = a^2",
            DringAxiom::QuotientLaw => "D_t(F) = F_t",
            DringAxiom::Symmetry => "symmetry of D_t D_s",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomStatus {
    pub axiom: DringAxiom,
    pub passed: bool,
    /// The first offending coefficient.
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DringReport {
    pub truncation: u32,
    pub axioms: Vec<AxiomStatus>,
}

impl DringReport {
    pub fn passed(&self) -> bool {
        self.axioms.iter().all(|a| a.passed)
    }

    pub fn status(&self, axiom: DringAxiom) -> Option<&AxiomStatus> {
        self.axioms.iter().find(|a| a.axiom == axiom)
    }
}

impl fmt::Display for DringReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let failed: Vec<String> = self
            .axioms
            .iter()
            .filter(|a| !a.passed)
            .map(|a| format!("{} ({})", a.axiom, a.counterexample.as_deref().unwrap_or("?")))
            .collect();
        if failed.is_empty() {
            f.write_str("no axiom")
        } else {
            f.write_str(&failed.join("; "))
        }
    }
}

fn status(axiom: DringAxiom, counterexample: Option<String>) -> AxiomStatus {
    AxiomStatus {
        axiom,
        passed: counterexample.is_none(),
        counterexample,
    }
}

/// Checks well-definedness and the three D-ring axioms up to the truncation.
pub fn dring_validate(ts: &TotalSquare) -> Result<DringReport, DringError> {
    Ok(DringReport {
        truncation: ts.truncation,
        axioms: vec![
            status(DringAxiom::WellDefined, check_relations(ts)?),
            status(DringAxiom::Squaring, check_squaring(ts)),
            status(DringAxiom::QuotientLaw, check_quotient_law(ts)?),
            status(DringAxiom::Symmetry, check_symmetry(ts)?),
        ],
    })
}

fn check_relations(ts: &TotalSquare) -> Result<Option<String>, DringError> {
    for r in ts.ring.relations() {
        let image = ts.apply(r)?;
        let found = image.terms().next().map(|(e, c)| {
            format!(
                "D_t({}) has {} at {}",
                ts.ring.format(r),
                ts.ring.format(c),
                image.format_monomial(e.as_slice())
            )
        });
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

fn check_squaring(ts: &TotalSquare) -> Option<String> {
    for (g, image) in ts.action.iter().enumerate() {
        let gen = ts.ring.generator(g);
        let square = ts.ring.mul(&gen, &gen);
        let found = image.constant_term();
        if found != square {
            return Some(format!(
                "D_0({}) = {}",
                ts.ring.generators()[g].name,
                ts.ring.format(&found)
            ));
        }
    }
    None
}

/// `D_t(F)` over `x, y` (weight two) and `t`, at the truncation of `F_t`.
fn image_of_law(ts: &TotalSquare, target: &[Variable], truncation: u32) -> Result<TruncatedSeries, DringError> {
    let mut out = TruncatedSeries::zero(&ts.ring, target, truncation);
    for (e, c) in ts.law.series().terms() {
        let (i, j) = (e.as_slice()[0], e.as_slice()[1]);
        let dc = ts.apply(c)?;
        for (te, tc) in dc.terms() {
            let term = TruncatedSeries::monomial(&ts.ring, target, truncation, &[i, j, te.as_slice()[0]], tc);
            out.add_assign(&term)?;
        }
    }
    Ok(out)
}

fn check_quotient_law(ts: &TotalSquare) -> Result<Option<String>, DringError> {
    let quotient = lubin_quotient(&ts.law)?;
    let ft = quotient.target().series();
    let image = image_of_law(ts, ft.variables(), ft.truncation())?;
    Ok(image.first_difference(ft)?.map(|(e, c)| {
        format!(
            "D_t(F) and F_t differ by {} at {}",
            ts.ring.format(&c),
            ft.format_monomial(&e)
        )
    }))
}

/// `D_t(D_s(g))` over `t, s`, extending `D_t` by `D_t(s) = s F(s, t)`.
pub(crate) fn double_image(ts: &TotalSquare, g: usize) -> Result<TruncatedSeries, DringError> {
    let n = ts.truncation;
    let ts_vars = vars(&[("t", 1), ("s", 1)]);
    let s = TruncatedSeries::variable(&ts.ring, &ts_vars, n, "s")?;
    let fst = ts
        .law
        .series()
        .restrict(n)
        .rename(&[("x", "s"), ("y", "t")])
        .reembed(&ts_vars)?;
    let h = s.mul(&fst)?;
    let mut hpow = TruncatedSeries::one(&ts.ring, &ts_vars, n);
    let mut out = TruncatedSeries::zero(&ts.ring, &ts_vars, n);
    for k in 0..=n / 2 {
        let dk = ts.action[g].coefficient(&[k]);
        if !dk.is_zero() {
            let inner = ts.apply(&dk)?.reembed(&ts_vars)?;
            out.add_assign(&inner.mul(&hpow)?)?;
        }
        hpow = hpow.mul(&h)?;
    }
    Ok(out)
}

fn check_symmetry(ts: &TotalSquare) -> Result<Option<String>, DringError> {
    for g in 0..ts.action.len() {
        let lhs = double_image(ts, g)?;
        let swapped = lhs.swap_variables("t", "s")?;
        if let Some((e, c)) = lhs.first_difference(&swapped)? {
            return Ok(Some(format!(
                "D_t D_s({}) is not symmetric: {} at {}",
                ts.ring.generators()[g].name,
                ts.ring.format(&c),
                lhs.format_monomial(&e)
            )));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgl::additive_fgl;

    #[test]
    fn trivial_structure_on_gf2() {
        let ts = TotalSquare::new(additive_fgl(8), Vec::new(), 6, 0).unwrap();
        let report = dring_validate(&ts).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(report.axioms.len(), 4);
    }

    #[test]
    fn short_law_is_rejected() {
        assert!(matches!(
            TotalSquare::new(additive_fgl(5), Vec::new(), 6, 0),
            Err(DringError::Shape(_))
        ));
    }
}
