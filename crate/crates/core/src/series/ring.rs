//! Graded commutative GF(2)-algebras presented by generators and relations.
//!
//! Relations are handled degreewise: the ideal they generate is row-reduced in
//! every degree up to the ring's bound, and each element is kept in the normal
//! form given by the non-pivot monomials of that reduction.
//!
//! Generators of degree zero, and generators adjoined with [`CoefficientRing::adjoin_free`],
//! are *free*: no relation may involve them and they do not count towards the
//! presented degree. The remaining (*presented*) generators are truncated at the
//! presented bound, which is also the degree up to which the relations are exact.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::gf2::{rref, BitRow};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("relation {index} mixes degrees {first} and {second}")]
    NonHomogeneousRelation { index: usize, first: u32, second: u32 },
    #[error("relation {index} involves the free generator {generator}")]
    RelationOnFreeGenerator { index: usize, generator: String },
    #[error("a presentation with relations needs a degree bound")]
    MissingDegreeBound,
    #[error("degree {degree} is above the bound {bound} up to which the ring is exact")]
    DegreeAboveBound { degree: u32, bound: u32 },
    #[error("duplicate generator name {0:?}")]
    DuplicateGenerator(String),
    #[error("invalid generator name {0:?}")]
    InvalidGeneratorName(String),
    #[error("element has {found} exponents but the ring has {expected} generators")]
    ArityMismatch { expected: usize, found: usize },
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("ring {0} is not an extension of the given subring")]
    NotASubring(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
    pub presented: bool,
}

/// A monomial in the ring generators, ordered by degree and then
/// lexicographically by exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    degree: u32,
    exps: Box<[u16]>,
}

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    fn times(&self, other: &Monomial) -> Monomial {
        Monomial {
            degree: self.degree + other.degree,
            exps: self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a + b).collect(),
        }
    }
}

/// An element of a [`CoefficientRing`]: a set of monomials with coefficient one.
///
/// Addition never needs the ring, since the sum of two normal forms is a normal
/// form. Multiplication goes through [`CoefficientRing::mul`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElem {
    terms: BTreeSet<Monomial>,
}

impl RingElem {
    pub fn zero() -> Self {
        RingElem::default()
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

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = &Monomial> + '_ {
        self.terms.iter()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.terms.contains(m)
    }

    pub(crate) fn toggle(&mut self, m: Monomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    /// The common degree of all terms, if there is one.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let first = self.terms.iter().next()?.degree;
        self.terms.iter().all(|m| m.degree == first).then_some(first)
    }
}

impl AddAssign<&RingElem> for RingElem {
    fn add_assign(&mut self, rhs: &RingElem) {
        for m in &rhs.terms {
            self.toggle(m.clone());
        }
    }
}

impl Add<&RingElem> for &RingElem {
    type Output = RingElem;

    fn add(self, rhs: &RingElem) -> RingElem {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct DegreePiece {
    monomials: usize,
    pivots: usize,
}

#[derive(Clone, Debug)]
pub struct CoefficientRing {
    generators: Vec<Generator>,
    index: HashMap<String, usize>,
    relations: Vec<RingElem>,
    presented_bound: Option<u32>,
    total_bound: Option<u32>,
    // pivot monomial (presented part) -> the non-pivot monomials it equals
    reductions: HashMap<Monomial, Vec<Monomial>>,
    pieces: BTreeMap<u32, DegreePiece>,
}

impl PartialEq for CoefficientRing {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators
            && self.presented_bound == other.presented_bound
            && self.total_bound == other.total_bound
            && self.reductions == other.reductions
    }
}

impl Eq for CoefficientRing {}

fn check_name(name: &str) -> Result<(), RingError> {
    let ok = !name.is_empty()
        && name != "1"
        && name != "0"
        && name.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '[' || c == ']')
        && !name.starts_with(|c: char| c.is_ascii_digit());
    if ok {
        Ok(())
    } else {
        Err(RingError::InvalidGeneratorName(name.to_string()))
    }
}

impl CoefficientRing {
    /// The field with two elements.
    pub fn gf2() -> Arc<Self> {
        Self::build(Vec::new(), Vec::new(), None, None).expect("empty presentation")
    }

    /// Polynomial ring on the given generators, truncated above `max_degree`.
    pub fn free(
        generators: Vec<(String, u32)>,
        max_degree: Option<u32>,
    ) -> Result<Arc<Self>, RingError> {
        Self::new(generators, Vec::new(), max_degree)
    }

    /// A presentation by generators and homogeneous relations.
    ///
    /// Positive-degree generators are presented; degree-zero generators are free.
    /// `max_degree` bounds the presented degree; it is required when relations are
    /// given. The relation elements must have one exponent per generator, as
    /// produced by [`CoefficientRing::free`] on the same generator list.
    pub fn new(
        generators: Vec<(String, u32)>,
        relations: Vec<RingElem>,
        max_degree: Option<u32>,
    ) -> Result<Arc<Self>, RingError> {
        let gens = generators
            .into_iter()
            .map(|(name, degree)| Generator {
                name,
                degree,
                presented: degree > 0,
            })
            .collect();
        Self::build(gens, relations, max_degree, max_degree)
    }

    /// Adjoins free generators and bounds the total degree by `total_bound`.
    pub fn adjoin_free(
        &self,
        generators: Vec<(String, u32)>,
        total_bound: Option<u32>,
    ) -> Result<Arc<Self>, RingError> {
        let mut gens = self.generators.clone();
        gens.extend(generators.into_iter().map(|(name, degree)| Generator {
            name,
            degree,
            presented: false,
        }));
        let width = gens.len();
        let relations = self
            .relations
            .iter()
            .map(|r| pad_elem(r, width))
            .collect();
        Self::build(gens, relations, self.presented_bound, total_bound)
    }

    /// The ring on the generators selected by `keep`, with the relations and bounds
    /// of `self` restricted accordingly. Relations mentioning a dropped generator
    /// are discarded, which is the right thing when those generators are sent to zero.
    pub fn restrict_generators(&self, keep: &[bool]) -> Result<Arc<Self>, RingError> {
        let gens: Vec<Generator> = self
            .generators
            .iter()
            .zip(keep)
            .filter(|(_, &k)| k)
            .map(|(g, _)| g.clone())
            .collect();
        let relations = self
            .relations
            .iter()
            .filter(|r| {
                r.terms()
                    .all(|m| m.exps.iter().zip(keep).all(|(&e, &k)| k || e == 0))
            })
            .map(|r| {
                let mut out = RingElem::zero();
                for m in r.terms() {
                    out.toggle(Monomial {
                        degree: m.degree,
                        exps: m.exps.iter().zip(keep).filter(|(_, &k)| k).map(|(&e, _)| e).collect(),
                    });
                }
                out
            })
            .filter(|r| !r.is_zero())
            .collect();
        let presented_bound = if gens.iter().any(|g| g.presented) {
            self.presented_bound
        } else {
            None
        };
        Self::build(gens, relations, presented_bound, self.total_bound)
    }

    fn build(
        generators: Vec<Generator>,
        relations: Vec<RingElem>,
        presented_bound: Option<u32>,
        total_bound: Option<u32>,
    ) -> Result<Arc<Self>, RingError> {
        let mut index = HashMap::new();
        for (i, g) in generators.iter().enumerate() {
            check_name(&g.name)?;
            if index.insert(g.name.clone(), i).is_some() {
                return Err(RingError::DuplicateGenerator(g.name.clone()));
            }
        }
        let mut ring = CoefficientRing {
            generators,
            index,
            relations: Vec::new(),
            presented_bound,
            total_bound,
            reductions: HashMap::new(),
            pieces: BTreeMap::new(),
        };
        for (i, r) in relations.iter().enumerate() {
            ring.check_arity(r)?;
            let mut degree = None;
            for m in r.terms() {
                if let Some(g) = ring.generators.iter().zip(m.exps.iter()).find(|(g, &e)| e > 0 && !g.presented) {
                    return Err(RingError::RelationOnFreeGenerator {
                        index: i,
                        generator: g.0.name.clone(),
                    });
                }
                match degree {
                    None => degree = Some(m.degree),
                    Some(d) if d != m.degree => {
                        return Err(RingError::NonHomogeneousRelation {
                            index: i,
                            first: d,
                            second: m.degree,
                        })
                    }
                    _ => {}
                }
            }
        }
        let relations: Vec<RingElem> = relations.into_iter().filter(|r| !r.is_zero()).collect();
        if !relations.is_empty() && presented_bound.is_none() {
            return Err(RingError::MissingDegreeBound);
        }
        ring.relations = relations;
        ring.reduce_relations();
        Ok(Arc::new(ring))
    }

    fn reduce_relations(&mut self) {
        let Some(bound) = self.presented_bound else {
            return;
        };
        let presented: Vec<usize> = (0..self.generators.len())
            .filter(|&i| self.generators[i].presented)
            .collect();
        let mut ideal_rows: BTreeMap<u32, Vec<Vec<Monomial>>> = BTreeMap::new();
        for d in 0..=bound {
            let mut basis = self.presented_monomials(d);
            basis.sort_by(|a, b| b.cmp(a));
            let column: HashMap<&Monomial, usize> =
                basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
            let to_row = |monos: &mut dyn Iterator<Item = Monomial>| {
                let mut row = BitRow::new(basis.len());
                for m in monos {
                    row.flip(column[&m]);
                }
                row
            };
            let mut rows = Vec::new();
            for r in self.relations.iter().filter(|r| r.homogeneous_degree() == Some(d)) {
                rows.push(to_row(&mut r.terms().cloned()));
            }
            for &g in &presented {
                let gd = self.generators[g].degree;
                if gd > d {
                    continue;
                }
                let Some(lower) = ideal_rows.get(&(d - gd)) else {
                    continue;
                };
                let gen = self.generator_monomial(g);
                for lrow in lower {
                    rows.push(to_row(&mut lrow.iter().map(|m| m.times(&gen))));
                }
            }
            let reduced = rref(rows);
            let mut stored = Vec::with_capacity(reduced.len());
            for (p, row) in &reduced {
                let rest: Vec<Monomial> = row.ones().filter(|c| c != p).map(|c| basis[c].clone()).collect();
                self.reductions.insert(basis[*p].clone(), rest);
                stored.push(row.ones().map(|c| basis[c].clone()).collect());
            }
            if !stored.is_empty() {
                ideal_rows.insert(d, stored);
            }
            self.pieces.insert(
                d,
                DegreePiece {
                    monomials: basis.len(),
                    pivots: reduced.len(),
                },
            );
        }
    }

    fn generator_monomial(&self, g: usize) -> Monomial {
        let mut exps = vec![0u16; self.generators.len()];
        exps[g] = 1;
        Monomial {
            degree: self.generators[g].degree,
            exps: exps.into(),
        }
    }

    fn check_arity(&self, e: &RingElem) -> Result<(), RingError> {
        match e.terms().find(|m| m.exps.len() != self.generators.len()) {
            Some(m) => Err(RingError::ArityMismatch {
                expected: self.generators.len(),
                found: m.exps.len(),
            }),
            None => Ok(()),
        }
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// The relations as given (zero relations dropped).
    pub fn relations(&self) -> &[RingElem] {
        &self.relations
    }

    pub fn presented_bound(&self) -> Option<u32> {
        self.presented_bound
    }

    pub fn total_bound(&self) -> Option<u32> {
        self.total_bound
    }

    pub fn one(&self) -> RingElem {
        let mut e = RingElem::zero();
        e.toggle(Monomial {
            degree: 0,
            exps: vec![0; self.generators.len()].into(),
        });
        e
    }

    pub fn is_one(&self, e: &RingElem) -> bool {
        e.len() == 1 && e.terms().next().is_some_and(Monomial::is_one)
    }

    pub fn generator(&self, i: usize) -> RingElem {
        let mut e = RingElem::zero();
        self.reduce_into(&self.generator_monomial(i), &mut e);
        e
    }

    pub fn generator_named(&self, name: &str) -> Option<RingElem> {
        self.generator_index(name).map(|i| self.generator(i))
    }

    /// Builds a monomial from an exponent vector (one entry per generator).
    pub fn monomial(&self, exps: &[u16]) -> Result<Monomial, RingError> {
        if exps.len() != self.generators.len() {
            return Err(RingError::ArityMismatch {
                expected: self.generators.len(),
                found: exps.len(),
            });
        }
        let degree = exps
            .iter()
            .zip(&self.generators)
            .map(|(&e, g)| e as u32 * g.degree)
            .sum();
        Ok(Monomial {
            degree,
            exps: exps.into(),
        })
    }

    fn presented_degree(&self, m: &Monomial) -> u32 {
        m.exps
            .iter()
            .zip(&self.generators)
            .filter(|(_, g)| g.presented)
            .map(|(&e, g)| e as u32 * g.degree)
            .sum()
    }

    fn within_bounds(&self, m: &Monomial) -> bool {
        if self.total_bound.is_some_and(|b| m.degree > b) {
            return false;
        }
        match self.presented_bound {
            Some(b) => self.presented_degree(m) <= b,
            None => true,
        }
    }

    fn reduce_into(&self, m: &Monomial, out: &mut RingElem) {
        if !self.within_bounds(m) {
            return;
        }
        if self.reductions.is_empty() {
            out.toggle(m.clone());
            return;
        }
        let mut presented = Vec::with_capacity(m.exps.len());
        let mut free = Vec::with_capacity(m.exps.len());
        let mut pdeg = 0;
        for (&e, g) in m.exps.iter().zip(&self.generators) {
            if g.presented {
                presented.push(e);
                free.push(0);
                pdeg += e as u32 * g.degree;
            } else {
                presented.push(0);
                free.push(e);
            }
        }
        let key = Monomial {
            degree: pdeg,
            exps: presented.into(),
        };
        match self.reductions.get(&key) {
            Some(replacement) => {
                let free = Monomial {
                    degree: m.degree - pdeg,
                    exps: free.into(),
                };
                for r in replacement {
                    out.toggle(r.times(&free));
                }
            }
            None => out.toggle(m.clone()),
        }
    }

    /// Normal form: truncation followed by reduction modulo the relations.
    pub fn normalize(&self, e: &RingElem) -> RingElem {
        let mut out = RingElem::zero();
        for m in e.terms() {
            self.reduce_into(m, &mut out);
        }
        out
    }

    pub fn mul(&self, a: &RingElem, b: &RingElem) -> RingElem {
        let mut out = RingElem::zero();
        if a.is_zero() || b.is_zero() {
            return out;
        }
        for x in a.terms() {
            for y in b.terms() {
                self.reduce_into(&x.times(y), &mut out);
            }
        }
        out
    }

    pub fn pow(&self, a: &RingElem, k: u32) -> RingElem {
        let mut out = self.normalize(&self.one());
        for _ in 0..k {
            out = self.mul(&out, a);
        }
        out
    }

    /// Monomials of degree `d` in the presented generators.
    pub fn presented_monomials(&self, d: u32) -> Vec<Monomial> {
        let gens: Vec<usize> = (0..self.generators.len())
            .filter(|&i| self.generators[i].presented)
            .collect();
        let mut out = Vec::new();
        let mut exps = vec![0u16; self.generators.len()];
        self.enumerate(&gens, 0, d, &mut exps, &mut out);
        out.sort();
        out
    }

    fn enumerate(&self, gens: &[usize], at: usize, remaining: u32, exps: &mut [u16], out: &mut Vec<Monomial>) {
        if at == gens.len() {
            if remaining == 0 {
                out.push(self.monomial(exps).expect("arity"));
            }
            return;
        }
        let g = gens[at];
        let deg = self.generators[g].degree;
        let mut e = 0u16;
        loop {
            let used = e as u32 * deg;
            if used > remaining {
                break;
            }
            exps[g] = e;
            self.enumerate(gens, at + 1, remaining - used, exps, out);
            e += 1;
        }
        exps[g] = 0;
    }

    /// Dimension over GF(2) (over the free generators, for rings that have them)
    /// of the presented part in degree `d`.
    pub fn graded_rank(&self, d: u32) -> Result<usize, RingError> {
        if let Some(bound) = self.presented_bound {
            if d > bound {
                return Err(RingError::DegreeAboveBound { degree: d, bound });
            }
            let piece = &self.pieces[&d];
            return Ok(piece.monomials - piece.pivots);
        }
        Ok(self.presented_monomials(d).len())
    }

    /// Re-expresses an element of `sub` (whose generators are a prefix of ours).
    pub fn include(&self, sub: &CoefficientRing, e: &RingElem) -> Result<RingElem, RingError> {
        if sub.generators.len() > self.generators.len()
            || sub.generators[..] != self.generators[..sub.generators.len()]
        {
            return Err(RingError::NotASubring(self.describe()));
        }
        Ok(self.normalize(&pad_elem(e, self.generators.len())))
    }

    fn describe(&self) -> String {
        let names: Vec<&str> = self.generators.iter().map(|g| g.name.as_str()).collect();
        format!("GF(2)[{}]", names.join(", "))
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".to_string();
        }
        let parts: Vec<String> = m
            .exps
            .iter()
            .zip(&self.generators)
            .filter(|(&e, _)| e > 0)
            .map(|(&e, g)| {
                if e == 1 {
                    g.name.clone()
                } else {
                    format!("{}^{}", g.name, e)
                }
            })
            .collect();
        parts.join("*")
    }

    /// Monomials in descending order, joined by `+`; `0` for zero.
    pub fn format(&self, e: &RingElem) -> String {
        if e.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = e.terms().rev().map(|m| self.format_monomial(m)).collect();
        parts.join(" + ")
    }

    pub fn parse_monomial(&self, s: &str) -> Result<Monomial, RingError> {
        let err = |reason: &str| RingError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let s = s.trim();
        let mut exps = vec![0u16; self.generators.len()];
        if s != "1" {
            for factor in s.split('*') {
                let factor = factor.trim();
                let (name, power) = match factor.split_once('^') {
                    Some((n, p)) => (n.trim(), p.trim().parse::<u16>().map_err(|_| err("bad exponent"))?),
                    None => (factor, 1),
                };
                let i = self.generator_index(name).ok_or_else(|| err("unknown generator"))?;
                exps[i] += power;
            }
        }
        self.monomial(&exps)
    }

    /// Parses a sum of monomials such as `a_1_2*a_2_1 + a_1_1^2`, reducing to normal form.
    pub fn parse(&self, s: &str) -> Result<RingElem, RingError> {
        let mut out = RingElem::zero();
        for term in s.split('+') {
            let term = term.trim();
            if term == "0" {
                continue;
            }
            if term.is_empty() {
                return Err(RingError::Parse {
                    input: s.to_string(),
                    reason: "empty term".to_string(),
                });
            }
            let m = self.parse_monomial(term)?;
            out.toggle(m);
        }
        Ok(self.normalize(&out))
    }
}

fn pad_elem(e: &RingElem, width: usize) -> RingElem {
    let mut out = RingElem::zero();
    for m in e.terms() {
        let mut exps = m.exps.to_vec();
        exps.resize(width, 0);
        out.toggle(Monomial {
            degree: m.degree,
            exps: exps.into(),
        });
    }
    out
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())?;
        if !self.relations.is_empty() {
            write!(f, " / ({} relations)", self.relations.len())?;
        }
        Ok(())
    }
}

/// A ring homomorphism given by the images of the source generators.
#[derive(Clone, Debug)]
pub struct RingMap {
    source: Arc<CoefficientRing>,
    target: Arc<CoefficientRing>,
    images: Vec<RingElem>,
}

impl RingMap {
    pub fn new(
        source: Arc<CoefficientRing>,
        target: Arc<CoefficientRing>,
        images: Vec<RingElem>,
    ) -> Result<Self, RingError> {
        if images.len() != source.num_generators() {
            return Err(RingError::ArityMismatch {
                expected: source.num_generators(),
                found: images.len(),
            });
        }
        for img in &images {
            target.check_arity(img)?;
        }
        let images = images.iter().map(|i| target.normalize(i)).collect();
        Ok(RingMap { source, target, images })
    }

    pub fn source(&self) -> &Arc<CoefficientRing> {
        &self.source
    }

    pub fn target(&self) -> &Arc<CoefficientRing> {
        &self.target
    }

    pub fn apply(&self, e: &RingElem) -> RingElem {
        let mut out = RingElem::zero();
        for m in e.terms() {
            let mut acc = self.target.one();
            for (g, &k) in m.exps.iter().enumerate() {
                for _ in 0..k {
                    acc = self.target.mul(&acc, &self.images[g]);
                }
            }
            out += &self.target.normalize(&acc);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(prefix: &str, degs: &[u32]) -> Vec<(String, u32)> {
        degs.iter().enumerate().map(|(i, &d)| (format!("{prefix}_{i}"), d)).collect()
    }

    #[test]
    fn empty_presentation_is_gf2() {
        let r = CoefficientRing::gf2();
        let one = r.one();
        assert!(r.is_one(&r.mul(&one, &one)));
        assert!((&one + &one).is_zero());
        assert_eq!(r.graded_rank(0).unwrap(), 1);
        assert_eq!(r.graded_rank(3).unwrap(), 0);
    }

    #[test]
    fn free_ring_degree_four_has_five_monomials() {
        let gens: Vec<(String, u32)> = (0..=6).map(|i| (format!("b_{i}"), i)).collect();
        let r = CoefficientRing::free(gens, None).unwrap();
        assert_eq!(r.presented_monomials(4).len(), 5);
        assert_eq!(r.graded_rank(4).unwrap(), 5);
        assert!(!r.generators()[0].presented);
    }

    #[test]
    fn cube_vanishes_modulo_square() {
        let free = CoefficientRing::free(names("g", &[1]), Some(5)).unwrap();
        let g = free.generator(0);
        let rel = free.mul(&g, &g);
        let r = CoefficientRing::new(names("g", &[1]), vec![rel], Some(5)).unwrap();
        let g = r.generator(0);
        assert!(r.pow(&g, 3).is_zero());
        assert_eq!(r.graded_rank(1).unwrap(), 1);
        assert_eq!(r.graded_rank(2).unwrap(), 0);
    }

    #[test]
    fn non_homogeneous_relation_is_rejected() {
        let free = CoefficientRing::free(names("g", &[1, 2]), Some(4)).unwrap();
        let rel = &free.generator(0) + &free.generator(1);
        let err = CoefficientRing::new(names("g", &[1, 2]), vec![rel], Some(4)).unwrap_err();
        assert!(matches!(err, RingError::NonHomogeneousRelation { .. }));
    }

    #[test]
    fn relations_need_a_bound() {
        let free = CoefficientRing::free(names("g", &[1]), None).unwrap();
        let rel = free.generator(0);
        let err = CoefficientRing::new(names("g", &[1]), vec![rel], None).unwrap_err();
        assert_eq!(err, RingError::MissingDegreeBound);
    }

    #[test]
    fn relation_on_degree_zero_generator_is_rejected() {
        let free = CoefficientRing::free(names("g", &[0, 1]), Some(3)).unwrap();
        let rel = free.mul(&free.generator(0), &free.generator(1));
        let err = CoefficientRing::new(names("g", &[0, 1]), vec![rel], Some(3)).unwrap_err();
        assert!(matches!(err, RingError::RelationOnFreeGenerator { .. }));
    }

    #[test]
    fn rank_above_bound_is_refused() {
        let r = CoefficientRing::free(names("g", &[1]), Some(3)).unwrap();
        assert_eq!(
            r.graded_rank(4),
            Err(RingError::DegreeAboveBound { degree: 4, bound: 3 })
        );
    }

    #[test]
    fn equal_constructions_share_normal_forms() {
        let gens = names("g", &[1, 1, 2]);
        let free = CoefficientRing::free(gens.clone(), Some(4)).unwrap();
        let rel = &free.mul(&free.generator(0), &free.generator(1)) + &free.generator(2);
        let r = CoefficientRing::new(gens, vec![rel], Some(4)).unwrap();
        let a = r.mul(&r.generator(0), &r.generator(1));
        let b = r.generator(2);
        assert_eq!(a, b);
        let a2 = r.mul(&a, &r.generator(0));
        let b2 = r.mul(&r.generator(0), &b);
        assert_eq!(a2, b2);
    }

    #[test]
    fn parse_and_format_round_trip() {
        let gens = names("a", &[1, 2]);
        let r = CoefficientRing::free(gens, None).unwrap();
        let e = r.parse("a_0^2 + a_1 + a_0*a_1 + a_1").unwrap();
        assert_eq!(r.format(&e), "a_0*a_1 + a_0^2");
        assert_eq!(r.parse(&r.format(&e)).unwrap(), e);
        assert!(r.parse("a_7").is_err());
    }

    #[test]
    fn adjoined_generators_escape_the_presented_bound() {
        let gens = names("a", &[1]);
        let base = CoefficientRing::free(gens, Some(2)).unwrap();
        let ext = base.adjoin_free(vec![("b_1".into(), 1), ("b_0".into(), 0)], Some(5)).unwrap();
        let a = ext.generator(0);
        let b = ext.generator(1);
        assert!(ext.pow(&a, 3).is_zero());
        assert!(!ext.pow(&b, 5).is_zero());
        assert!(ext.pow(&b, 6).is_zero());
        let b0 = ext.generator(2);
        assert!(!ext.pow(&b0, 40).is_zero());
    }

    #[test]
    fn ring_map_kills_generators() {
        let base = CoefficientRing::free(names("a", &[1, 1]), None).unwrap();
        let target = CoefficientRing::free(names("c", &[1]), None).unwrap();
        let map = RingMap::new(base.clone(), target.clone(), vec![RingElem::zero(), target.generator(0)]).unwrap();
        let e = base.parse("a_0*a_1 + a_1^2 + 1").unwrap();
        assert_eq!(target.format(&map.apply(&e)), "c_0^2 + 1");
    }
}
