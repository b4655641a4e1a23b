//! Multivariate power series over a [`CoefficientRing`], truncated at a total
//! weighted degree.
//!
//! Variables carry positive integer weights. The truncation `N` keeps exactly the
//! monomials of weighted degree at most `N`. Terms are stored in graded
//! lexicographic order: by weighted degree, then by exponent vector in the
//! declared variable order.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::ring::{CoefficientRing, RingElem, RingMap};
use super::SeriesError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Variable {
    pub name: String,
    pub weight: u32,
}

impl Variable {
    pub fn new(name: impl Into<String>, weight: u32) -> Self {
        assert!(weight > 0, "variable weights are positive");
        Variable {
            name: name.into(),
            weight,
        }
    }
}

/// Shorthand for a list of variables: `vars(&[("x", 1), ("t", 1)])`.
pub fn vars(pairs: &[(&str, u32)]) -> Vec<Variable> {
    pairs.iter().map(|&(n, w)| Variable::new(n, w)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponents {
    weight: u32,
    exps: Box<[u32]>,
}

impl Exponents {
    fn new(exps: &[u32], vars: &[Variable]) -> Self {
        let weight = exps.iter().zip(vars).map(|(e, v)| e * v.weight).sum();
        Exponents {
            weight,
            exps: exps.into(),
        }
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.exps
    }

    fn times(&self, other: &Exponents) -> Exponents {
        Exponents {
            weight: self.weight + other.weight,
            exps: self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a + b).collect(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct TruncatedSeries {
    ring: Arc<CoefficientRing>,
    vars: Arc<[Variable]>,
    truncation: u32,
    terms: BTreeMap<Exponents, RingElem>,
}

impl PartialEq for TruncatedSeries {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring)
            && self.vars == other.vars
            && self.truncation == other.truncation
            && self.terms == other.terms
    }
}

impl Eq for TruncatedSeries {}

fn var_names(vars: &[Variable]) -> String {
    let names: Vec<String> = vars.iter().map(|v| format!("{}:{}", v.name, v.weight)).collect();
    format!("[{}]", names.join(", "))
}

impl TruncatedSeries {
    pub fn zero(ring: &Arc<CoefficientRing>, vars: &[Variable], truncation: u32) -> Self {
        TruncatedSeries {
            ring: ring.clone(),
            vars: vars.into(),
            truncation,
            terms: BTreeMap::new(),
        }
    }

    fn empty_like(&self, truncation: u32) -> Self {
        TruncatedSeries {
            ring: self.ring.clone(),
            vars: self.vars.clone(),
            truncation,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<CoefficientRing>, vars: &[Variable], truncation: u32, c: &RingElem) -> Self {
        let mut s = Self::zero(ring, vars, truncation);
        let zero = vec![0; vars.len()];
        s.add_term(Exponents::new(&zero, vars), ring.normalize(c));
        s
    }

    pub fn one(ring: &Arc<CoefficientRing>, vars: &[Variable], truncation: u32) -> Self {
        Self::constant(ring, vars, truncation, &ring.one())
    }

    pub fn variable(
        ring: &Arc<CoefficientRing>,
        vars: &[Variable],
        truncation: u32,
        name: &str,
    ) -> Result<Self, SeriesError> {
        let i = vars
            .iter()
            .position(|v| v.name == name)
            .ok_or_else(|| SeriesError::UnknownVariable(name.to_string()))?;
        let mut exps = vec![0; vars.len()];
        exps[i] = 1;
        Ok(Self::monomial(ring, vars, truncation, &exps, &ring.one()))
    }

    /// `coeff * Π vars^exps`, or zero when above the truncation.
    pub fn monomial(
        ring: &Arc<CoefficientRing>,
        vars: &[Variable],
        truncation: u32,
        exps: &[u32],
        coeff: &RingElem,
    ) -> Self {
        assert_eq!(exps.len(), vars.len(), "one exponent per variable");
        let mut s = Self::zero(ring, vars, truncation);
        s.add_term(Exponents::new(exps, vars), ring.normalize(coeff));
        s
    }

    pub fn from_terms<'a>(
        ring: &Arc<CoefficientRing>,
        vars: &[Variable],
        truncation: u32,
        terms: impl IntoIterator<Item = (&'a [u32], RingElem)>,
    ) -> Self {
        let mut s = Self::zero(ring, vars, truncation);
        for (exps, c) in terms {
            assert_eq!(exps.len(), vars.len(), "one exponent per variable");
            s.add_term(Exponents::new(exps, vars), ring.normalize(&c));
        }
        s
    }

    /// Adds a normalized coefficient at a monomial, dropping it above truncation.
    fn add_term(&mut self, e: Exponents, c: RingElem) {
        if c.is_zero() || e.weight > self.truncation {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn ring(&self) -> &Arc<CoefficientRing> {
        &self.ring
    }

    pub fn variables(&self) -> &[Variable] {
        &self.vars
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &RingElem)> + '_ {
        self.terms.iter()
    }

    pub fn weight_of(&self, exps: &[u32]) -> u32 {
        exps.iter().zip(self.vars.iter()).map(|(e, v)| e * v.weight).sum()
    }

    pub fn coefficient(&self, exps: &[u32]) -> RingElem {
        let key = Exponents::new(exps, &self.vars);
        self.terms.get(&key).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> RingElem {
        self.coefficient(&vec![0; self.vars.len()])
    }

    pub fn min_weight(&self) -> Option<u32> {
        self.terms.keys().next().map(|e| e.weight)
    }

    pub fn homogeneous_part(&self, weight: u32) -> Self {
        let mut s = self.empty_like(self.truncation);
        s.terms = self
            .terms
            .iter()
            .filter(|(e, _)| e.weight == weight)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        s
    }

    /// Drops everything above a (lower) truncation.
    pub fn restrict(&self, truncation: u32) -> Self {
        let truncation = truncation.min(self.truncation);
        let mut s = self.empty_like(truncation);
        s.terms = self
            .terms
            .iter()
            .filter(|(e, _)| e.weight <= truncation)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        s
    }

    fn check_compatible(&self, other: &Self) -> Result<(), SeriesError> {
        if self.vars != other.vars {
            return Err(SeriesError::VariableMismatch {
                left: var_names(&self.vars),
                right: var_names(&other.vars),
            });
        }
        if self.truncation != other.truncation {
            return Err(SeriesError::TruncationMismatch {
                left: self.truncation,
                right: other.truncation,
            });
        }
        if !Arc::ptr_eq(&self.ring, &other.ring) && self.ring != other.ring {
            return Err(SeriesError::RingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn add_assign(&mut self, other: &Self) -> Result<(), SeriesError> {
        self.check_compatible(other)?;
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let mut out = self.empty_like(self.truncation);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                if ea.weight + eb.weight > self.truncation {
                    break;
                }
                let c = self.ring.mul(ca, cb);
                out.add_term(ea.times(eb), c);
            }
        }
        out
    }

    pub fn scale(&self, c: &RingElem) -> Self {
        let mut out = self.empty_like(self.truncation);
        let c = self.ring.normalize(c);
        if c.is_zero() {
            return out;
        }
        let unit = self.ring.is_one(&c);
        for (e, d) in &self.terms {
            let prod = if unit { d.clone() } else { self.ring.mul(&c, d) };
            out.add_term(e.clone(), prod);
        }
        out
    }

    /// Multiplication by `coeff * Π vars^exps`.
    pub fn mul_monomial(&self, exps: &[u32], coeff: &RingElem) -> Self {
        let shift = Exponents::new(exps, &self.vars);
        let mut out = self.empty_like(self.truncation);
        if shift.weight > self.truncation {
            return out;
        }
        let unit = self.ring.is_one(coeff);
        for (e, d) in &self.terms {
            if e.weight + shift.weight > self.truncation {
                break;
            }
            let prod = if unit { d.clone() } else { self.ring.mul(coeff, d) };
            out.add_term(e.times(&shift), prod);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = TruncatedSeries::one(&self.ring, &self.vars, self.truncation);
        for _ in 0..k {
            if out.is_zero() {
                break;
            }
            out = out.mul_unchecked(self);
        }
        out
    }

    /// Re-expresses the series over another variable list, matching by name.
    pub fn reembed(&self, target: &[Variable]) -> Result<Self, SeriesError> {
        let mut map = Vec::with_capacity(self.vars.len());
        for v in self.vars.iter() {
            let pos = target.iter().position(|w| w.name == v.name);
            if let Some(p) = pos {
                if target[p].weight != v.weight {
                    return Err(SeriesError::VariableMismatch {
                        left: var_names(&self.vars),
                        right: var_names(target),
                    });
                }
            }
            map.push(pos);
        }
        let mut out = TruncatedSeries::zero(&self.ring, target, self.truncation);
        for (e, c) in &self.terms {
            let mut exps = vec![0; target.len()];
            for (i, &k) in e.exps.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                match map[i] {
                    Some(p) => exps[p] = k,
                    None => return Err(SeriesError::UnknownVariable(self.vars[i].name.clone())),
                }
            }
            out.add_term(Exponents::new(&exps, target), c.clone());
        }
        Ok(out)
    }

    /// Renames variables in place (simultaneously), keeping their positions.
    pub fn rename(&self, renames: &[(&str, &str)]) -> Self {
        let vars: Vec<Variable> = self
            .vars
            .iter()
            .map(|v| match renames.iter().find(|(from, _)| *from == v.name) {
                Some((_, to)) => Variable::new(*to, v.weight),
                None => v.clone(),
            })
            .collect();
        TruncatedSeries {
            ring: self.ring.clone(),
            vars: vars.into(),
            truncation: self.truncation,
            terms: self.terms.clone(),
        }
    }

    /// Exchanges the roles of two variables and returns the result over the
    /// original variable order.
    pub fn swap_variables(&self, a: &str, b: &str) -> Result<Self, SeriesError> {
        self.rename(&[(a, b), (b, a)]).reembed(&self.vars)
    }

    /// Simultaneous substitution of series for variables.
    ///
    /// All bound series must share one variable list, ring and truncation; the
    /// result lives over that variable list. Unbound variables of `self` are
    /// matched by name in it. Each bound series needs zero constant term and
    /// minimal weight at least the weight of the variable it replaces, so the
    /// composite is exact up to the smaller of the two truncations.
    pub fn substitute(&self, bindings: &[(&str, &TruncatedSeries)]) -> Result<Self, SeriesError> {
        let Some((_, first)) = bindings.first() else {
            return Ok(self.clone());
        };
        for (_, b) in bindings {
            first.check_compatible(b)?;
        }
        if !Arc::ptr_eq(&self.ring, &first.ring) && *self.ring != *first.ring {
            return Err(SeriesError::RingMismatch);
        }
        let target_vars = first.vars.clone();
        let truncation = self.truncation.min(first.truncation);

        let mut images: Vec<Option<TruncatedSeries>> = Vec::with_capacity(self.vars.len());
        for v in self.vars.iter() {
            match bindings.iter().find(|(name, _)| *name == v.name) {
                Some((_, s)) => {
                    if !s.constant_term().is_zero() {
                        return Err(SeriesError::NonzeroConstantTerm {
                            variable: v.name.clone(),
                        });
                    }
                    if let Some(w) = s.min_weight() {
                        if w < v.weight {
                            return Err(SeriesError::WeightDeficit {
                                variable: v.name.clone(),
                                weight: v.weight,
                                found: w,
                            });
                        }
                    }
                    images.push(Some(s.restrict(truncation)));
                }
                None => match target_vars.iter().find(|w| w.name == v.name) {
                    Some(w) if w.weight == v.weight => images.push(Some(TruncatedSeries::variable(
                        &self.ring,
                        &target_vars,
                        truncation,
                        &v.name,
                    )?)),
                    Some(_) => {
                        return Err(SeriesError::VariableMismatch {
                            left: var_names(&self.vars),
                            right: var_names(&target_vars),
                        })
                    }
                    None => images.push(None),
                },
            }
        }

        let mut powers: Vec<Vec<TruncatedSeries>> = images
            .iter()
            .map(|_| vec![TruncatedSeries::one(&self.ring, &target_vars, truncation)])
            .collect();
        let mut out = TruncatedSeries::zero(&self.ring, &target_vars, truncation);
        for (e, c) in &self.terms {
            if e.weight > truncation {
                break;
            }
            let mut prod: Option<TruncatedSeries> = None;
            for (i, &k) in e.exps.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let Some(img) = &images[i] else {
                    return Err(SeriesError::UnknownVariable(self.vars[i].name.clone()));
                };
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().expect("nonempty").mul_unchecked(img);
                    powers[i].push(next);
                }
                let p = &powers[i][k as usize];
                prod = Some(match prod {
                    None => p.clone(),
                    Some(acc) => acc.mul_unchecked(p),
                });
            }
            let term = match prod {
                None => TruncatedSeries::constant(&self.ring, &target_vars, truncation, c),
                Some(p) => p.scale(c),
            };
            for (te, tc) in term.terms {
                out.add_term(te, tc);
            }
        }
        Ok(out)
    }

    /// Applies a ring map to every coefficient.
    pub fn map_coefficients(&self, map: &RingMap) -> Result<Self, SeriesError> {
        if !Arc::ptr_eq(&self.ring, map.source()) && *self.ring != **map.source() {
            return Err(SeriesError::RingMismatch);
        }
        let mut out = TruncatedSeries::zero(map.target(), &self.vars, self.truncation);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), map.apply(c));
        }
        Ok(out)
    }

    /// Moves the series into a ring whose generators extend those of its own ring.
    pub fn change_ring(&self, ring: &Arc<CoefficientRing>) -> Result<Self, SeriesError> {
        let mut out = TruncatedSeries::zero(ring, &self.vars, self.truncation);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), ring.include(&self.ring, c)?);
        }
        Ok(out)
    }

    /// Evaluates the ring homomorphism sending generator `g` to `images[g]` on
    /// the element `e`. The images share a variable list, ring and truncation.
    pub fn evaluate_ring_hom(
        ring: &Arc<CoefficientRing>,
        e: &RingElem,
        images: &[TruncatedSeries],
        vars: &[Variable],
        truncation: u32,
    ) -> Result<Self, SeriesError> {
        if images.len() != ring.num_generators() {
            return Err(SeriesError::Ring(super::RingError::ArityMismatch {
                expected: ring.num_generators(),
                found: images.len(),
            }));
        }
        let mut out = TruncatedSeries::zero(ring, vars, truncation);
        for img in images {
            out.check_compatible(img)?;
        }
        let mut powers: Vec<Vec<TruncatedSeries>> = images
            .iter()
            .map(|_| vec![TruncatedSeries::one(ring, vars, truncation)])
            .collect();
        for m in e.terms() {
            let mut acc = TruncatedSeries::one(ring, vars, truncation);
            for (g, &k) in m.exponents().iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[g].len() <= k as usize {
                    let next = powers[g].last().expect("nonempty").mul_unchecked(&images[g]);
                    powers[g].push(next);
                }
                acc = acc.mul_unchecked(&powers[g][k as usize]);
            }
            for (te, tc) in acc.terms {
                out.add_term(te, tc);
            }
        }
        Ok(out)
    }

    /// The first monomial (in canonical order) where two series differ, with the
    /// coefficient of their difference.
    pub fn first_difference(&self, other: &Self) -> Result<Option<(Vec<u32>, RingElem)>, SeriesError> {
        let diff = self.add(other)?;
        Ok(diff
            .terms
            .into_iter()
            .next()
            .map(|(e, c)| (e.exps.to_vec(), c)))
    }

    pub fn format_monomial(&self, exps: &[u32]) -> String {
        let parts: Vec<String> = exps
            .iter()
            .zip(self.vars.iter())
            .filter(|(&k, _)| k > 0)
            .map(|(&k, v)| if k == 1 { v.name.clone() } else { format!("{}^{}", v.name, k) })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for TruncatedSeries {
    /// Highest terms first, e.g. `x^2 + x*t`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono = self.format_monomial(&e.exps);
            let coeff = self.ring.format(c);
            if self.ring.is_one(c) {
                write!(f, "{mono}")?;
            } else if mono == "1" {
                if c.len() > 1 {
                    write!(f, "({coeff})")?;
                } else {
                    write!(f, "{coeff}")?;
                }
            } else if c.len() > 1 {
                write!(f, "({coeff})*{mono}")?;
            } else {
                write!(f, "{coeff}*{mono}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xt(n: u32) -> (Arc<CoefficientRing>, Vec<Variable>, TruncatedSeries, TruncatedSeries) {
        let r = CoefficientRing::gf2();
        let v = vars(&[("x", 1), ("t", 1)]);
        let x = TruncatedSeries::variable(&r, &v, n, "x").unwrap();
        let t = TruncatedSeries::variable(&r, &v, n, "t").unwrap();
        (r, v, x, t)
    }

    #[test]
    fn frobenius() {
        let (_, _, x, t) = xt(5);
        let s = x.add(&t).unwrap();
        let sq = s.mul(&s).unwrap();
        assert_eq!(sq, x.pow(2).add(&t.pow(2)).unwrap());
    }

    #[test]
    fn x_times_x_plus_t() {
        let (_, _, x, t) = xt(5);
        let p = x.mul(&x.add(&t).unwrap()).unwrap();
        assert_eq!(p.to_string(), "x^2 + x*t");
    }

    #[test]
    fn truncation_drops_high_terms() {
        let r = CoefficientRing::gf2();
        let v = vars(&[("x", 1)]);
        let x = TruncatedSeries::variable(&r, &v, 2, "x").unwrap();
        let s = x.add(&x.pow(2)).unwrap();
        assert_eq!(s.mul(&s).unwrap(), x.pow(2));
    }

    #[test]
    fn self_sum_is_zero() {
        let (_, _, x, t) = xt(4);
        let s = x.mul(&t).unwrap().add(&x).unwrap();
        assert!(s.add(&s).unwrap().is_zero());
    }

    #[test]
    fn mismatched_variables_are_rejected() {
        let (r, _, x, _) = xt(4);
        let y = TruncatedSeries::variable(&r, &vars(&[("y", 1)]), 4, "y").unwrap();
        assert!(matches!(x.mul(&y), Err(SeriesError::VariableMismatch { .. })));
        let x3 = x.restrict(3);
        assert!(matches!(x.add(&x3), Err(SeriesError::TruncationMismatch { .. })));
    }

    #[test]
    fn substitute_sum_for_variable() {
        let r = CoefficientRing::gf2();
        let v = vars(&[("x", 1), ("y", 1), ("s", 1), ("t", 1)]);
        let var = |n: &str| TruncatedSeries::variable(&r, &v, 6, n).unwrap();
        let target = var("x").add(&var("y")).unwrap();
        let st = var("s").add(&var("t")).unwrap();
        let out = target.substitute(&[("y", &st)]).unwrap();
        assert_eq!(out, var("x").add(&st).unwrap());
    }

    #[test]
    fn substitute_square() {
        let r = CoefficientRing::gf2();
        let v = vars(&[("x", 1)]);
        let x = TruncatedSeries::variable(&r, &v, 6, "x").unwrap();
        let target = x.add(&x.pow(3)).unwrap();
        let out = target.substitute(&[("x", &x.pow(2))]).unwrap();
        assert_eq!(out, x.pow(2).add(&x.pow(6)).unwrap());
    }

    #[test]
    fn substitution_rejects_constant_terms() {
        let (r, v, x, _) = xt(4);
        let one = TruncatedSeries::one(&r, &v, 4);
        let shifted = x.add(&one).unwrap();
        assert!(matches!(
            x.substitute(&[("x", &shifted)]),
            Err(SeriesError::NonzeroConstantTerm { .. })
        ));
    }

    #[test]
    fn swap_exchanges_roles() {
        let (_, _, x, t) = xt(4);
        let s = x.mul(&t.pow(2)).unwrap();
        assert_eq!(s.swap_variables("x", "t").unwrap(), t.mul(&x.pow(2)).unwrap());
    }

    #[test]
    fn ring_coefficients_multiply_and_reduce() {
        let gens = vec![("g".to_string(), 1u32)];
        let free = CoefficientRing::free(gens.clone(), Some(4)).unwrap();
        let rel = free.mul(&free.generator(0), &free.generator(0));
        let r = CoefficientRing::new(gens, vec![rel], Some(4)).unwrap();
        let v = vars(&[("x", 1)]);
        let gx = TruncatedSeries::monomial(&r, &v, 4, &[1], &r.generator(0));
        assert!(gx.mul(&gx).unwrap().is_zero());
        assert_eq!(gx.to_string(), "g*x");
    }
}
