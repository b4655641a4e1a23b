//! Formal group laws of order two.
//!
//! A law is a series over the variables `x, y, p_1, ..., p_r` where `x` and `y`
//! share a weight `w` and the `p_i` are parameters (such as `t` and `s` after
//! Lubin quotients). The coefficient of `x^i y^j p^α` has ring degree equal to the
//! weight of that monomial minus `w`.

mod lazard;
mod lubin;

pub use lazard::{lazard_generators, lazard_law, lazard_ranks, lazard_ring, LazardRing};
pub use lubin::{iterated_quotient, lubin_quotient, lubin_quotient_in, quotient_by_point, Isogeny, IteratedQuotient};

use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::series::{vars, CoefficientRing, RingError, RingMap, SeriesError, TruncatedSeries, Variable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Axiom {
    Unit,
    Commutativity,
    Associativity,
    OrderTwo,
    Homogeneity,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Axiom::Unit => "unit",
            Axiom::Commutativity => "commutativity",
            Axiom::Associativity => "associativity",
            Axiom::OrderTwo => "order two",
            Axiom::Homogeneity => "homogeneity",
        };
        f.write_str(name)
    }
}

/// An axiom that fails, with the first offending monomial and its coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub monomial: String,
    pub coefficient: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at {} (coefficient {})", self.axiom, self.monomial, self.coefficient)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FglError {
    #[error("not a formal group law of order two: {}", list(.0))]
    Invalid(Vec<Violation>),
    #[error("malformed law: {0}")]
    Shape(String),
    #[error("weight {weight}: the quotient law is not determined")]
    UnderdeterminedStep { weight: u32 },
    #[error("weight {weight}: the quotient law has no solution at {monomial}")]
    InconsistentStep { weight: u32, monomial: String },
    #[error("the isogeny does not vanish at {point}")]
    NotAKernelPoint { point: String },
    #[error("the isogeny is not a morphism of laws: first difference at {monomial}")]
    MorphismMismatch { monomial: String },
    #[error("composite isogeny differs from the closed form at {monomial}")]
    ClosedFormMismatch { monomial: String },
    #[error("composite isogeny does not vanish at {point}")]
    KernelMismatch { point: String },
    #[error("quotient laws in the two orders differ at {monomial}")]
    SymmetryMismatch { monomial: String },
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

fn list(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

/// A validated formal group law of order two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalGroupLaw {
    series: TruncatedSeries,
}

impl FormalGroupLaw {
    pub(crate) fn new_unchecked(series: TruncatedSeries) -> Self {
        FormalGroupLaw { series }
    }

    pub fn series(&self) -> &TruncatedSeries {
        &self.series
    }

    pub fn ring(&self) -> &Arc<CoefficientRing> {
        self.series.ring()
    }

    pub fn truncation(&self) -> u32 {
        self.series.truncation()
    }

    /// The common weight of `x` and `y`.
    pub fn weight(&self) -> u32 {
        self.series.variables()[0].weight
    }

    pub fn params(&self) -> &[Variable] {
        &self.series.variables()[2..]
    }

    /// `F(a, b)`; `a` and `b` share a variable list containing the parameters.
    pub fn evaluate(&self, a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
        self.series.substitute(&[("x", a), ("y", b)])
    }

    pub fn is_additive(&self) -> bool {
        let r = self.ring();
        let v = self.series.variables();
        let n = self.truncation();
        let x = TruncatedSeries::variable(r, v, n, "x").expect("x");
        let y = TruncatedSeries::variable(r, v, n, "y").expect("y");
        x.add(&y).is_ok_and(|s| s == self.series)
    }

    /// Image under a ring homomorphism; laws map to laws.
    pub fn map_coefficients(&self, map: &RingMap) -> Result<Self, FglError> {
        Ok(FormalGroupLaw::new_unchecked(self.series.map_coefficients(map)?))
    }

    pub fn change_ring(&self, ring: &Arc<CoefficientRing>) -> Result<Self, FglError> {
        Ok(FormalGroupLaw::new_unchecked(self.series.change_ring(ring)?))
    }

    pub fn restrict(&self, truncation: u32) -> Self {
        FormalGroupLaw::new_unchecked(self.series.restrict(truncation))
    }
}

impl fmt::Display for FormalGroupLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.series.fmt(f)
    }
}

/// The additive law `x + y` over GF(2).
pub fn additive_fgl(truncation: u32) -> FormalGroupLaw {
    additive_over(&CoefficientRing::gf2(), truncation)
}

/// The additive law over a given ring, with `x` and `y` of weight one.
pub fn additive_over(ring: &Arc<CoefficientRing>, truncation: u32) -> FormalGroupLaw {
    let v = vars(&[("x", 1), ("y", 1)]);
    let x = TruncatedSeries::variable(ring, &v, truncation, "x").expect("x");
    let y = TruncatedSeries::variable(ring, &v, truncation, "y").expect("y");
    FormalGroupLaw::new_unchecked(x.add(&y).expect("same shape"))
}

fn check_shape(s: &TruncatedSeries) -> Result<u32, FglError> {
    let v = s.variables();
    if v.len() < 2 || v[0].name != "x" || v[1].name != "y" {
        return Err(FglError::Shape("the first two variables must be x and y".into()));
    }
    if v[0].weight != v[1].weight {
        return Err(FglError::Shape("x and y must have the same weight".into()));
    }
    if v[2..].iter().any(|p| p.name == "x" || p.name == "y" || p.name == "z") {
        return Err(FglError::Shape("parameters may not be named x, y or z".into()));
    }
    if s.truncation() < v[0].weight {
        return Err(FglError::Shape(format!(
            "truncation {} is below the weight {} of x",
            s.truncation(),
            v[0].weight
        )));
    }
    Ok(v[0].weight)
}

fn first_violation(
    axiom: Axiom,
    diff: &TruncatedSeries,
) -> Option<Violation> {
    diff.terms().next().map(|(e, c)| Violation {
        axiom,
        monomial: diff.format_monomial(e.as_slice()),
        coefficient: diff.ring().format(c),
    })
}

/// All axioms that fail for a candidate law, each with its first offending coefficient.
pub fn fgl_violations(candidate: &TruncatedSeries) -> Result<Vec<Violation>, FglError> {
    let w = check_shape(candidate)?;
    let ring = candidate.ring();
    let v = candidate.variables();
    let n = candidate.truncation();
    let x = TruncatedSeries::variable(ring, v, n, "x")?;
    let y = TruncatedSeries::variable(ring, v, n, "y")?;
    let mut out = Vec::new();

    let zero = TruncatedSeries::zero(ring, v, n);
    let left_unit = candidate.substitute(&[("y", &zero)])?.add(&x)?;
    let right_unit = candidate.substitute(&[("x", &zero)])?.add(&y)?;
    out.extend(first_violation(Axiom::Unit, &left_unit).or_else(|| first_violation(Axiom::Unit, &right_unit)));

    let swapped = candidate.swap_variables("x", "y")?;
    out.extend(first_violation(Axiom::Commutativity, &swapped.add(candidate)?));

    let mut amb = vec![v[0].clone(), v[1].clone(), Variable::new("z", w)];
    amb.extend(v[2..].iter().cloned());
    let f = candidate.reembed(&amb)?;
    let z = TruncatedSeries::variable(ring, &amb, n, "z")?;
    let fxy = f.clone();
    let fyz = candidate.rename(&[("x", "y"), ("y", "z")]).reembed(&amb)?;
    let left = f.substitute(&[("x", &fxy), ("y", &z)])?;
    let right = f.substitute(&[("y", &fyz)])?;
    out.extend(first_violation(Axiom::Associativity, &left.add(&right)?));

    out.extend(first_violation(Axiom::OrderTwo, &candidate.substitute(&[("y", &x)])?));

    for (e, c) in candidate.terms() {
        let expected = e.weight().checked_sub(w);
        if let Some(m) = c.terms().find(|m| Some(m.degree()) != expected) {
            out.push(Violation {
                axiom: Axiom::Homogeneity,
                monomial: candidate.format_monomial(e.as_slice()),
                coefficient: ring.format_monomial(m),
            });
            break;
        }
    }
    Ok(out)
}

/// Checks every axiom and returns the validated law or the list of violations.
pub fn fgl_validate(candidate: &TruncatedSeries) -> Result<FormalGroupLaw, FglError> {
    let violations = fgl_violations(candidate)?;
    if violations.is_empty() {
        Ok(FormalGroupLaw::new_unchecked(candidate.clone()))
    } else {
        Err(FglError::Invalid(violations))
    }
}
