use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

/// `q_m q_n` is admissible when `m <= n`; otherwise an Adem relation rewrites it.
pub fn is_admissible_pair(m: u32, n: u32) -> bool {
    m <= n
}

/// A composite `q_{m_1} ... q_{m_k}` applied to a generator; `q_{m_k}` acts first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QMonomial {
    indices: Vec<u32>,
}

impl Ord for QMonomial {
    /// Shorter composites first, then lexicographic.
    fn cmp(&self, other: &Self) -> Ordering {
        self.indices
            .len()
            .cmp(&other.indices.len())
            .then_with(|| self.indices.cmp(&other.indices))
    }
}

impl PartialOrd for QMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl QMonomial {
    pub fn new(indices: Vec<u32>) -> Self {
        QMonomial { indices }
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Grade of the composite applied to a generator of grade `g`, using
    /// `grade(q_n(x)) = 2 grade(x) + n`.
    pub fn grade(&self, g: i64) -> i64 {
        self.indices.iter().rev().fold(g, |acc, &m| 2 * acc + m as i64)
    }

    /// Positions `p` with `(m_p, m_{p+1})` inadmissible, left to right.
    pub fn inadmissible_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices
            .windows(2)
            .enumerate()
            .filter(|(_, w)| !is_admissible_pair(w[0], w[1]))
            .map(|(p, _)| p)
    }

    pub fn is_admissible(&self) -> bool {
        self.inadmissible_positions().next().is_none()
    }

    /// Applied to a named generator, e.g. `q_1 q_2 x`.
    pub fn format_applied(&self, generator: &str) -> String {
        if self.indices.is_empty() {
            generator.to_string()
        } else {
            format!("{self} {generator}")
        }
    }
}

impl fmt::Display for QMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.indices.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.indices.iter().map(|m| format!("q_{m}")).collect();
        f.write_str(&parts.join(" "))
    }
}

impl Serialize for QMonomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.indices.serialize(s)
    }
}

/// A GF(2)-linear combination of composites, kept in canonical order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QPolynomial {
    terms: BTreeSet<QMonomial>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        QPolynomial::default()
    }

    pub fn monomial(indices: Vec<u32>) -> Self {
        let mut p = QPolynomial::zero();
        p.toggle(QMonomial::new(indices));
        p
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

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = &QMonomial> + '_ {
        self.terms.iter()
    }

    pub fn contains(&self, m: &QMonomial) -> bool {
        self.terms.contains(m)
    }

    pub fn toggle(&mut self, m: QMonomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn add_assign(&mut self, other: &QPolynomial) {
        for m in &other.terms {
            self.toggle(m.clone());
        }
    }

    /// The common grade of all terms on a generator of grade `g`.
    pub fn grade(&self, g: i64) -> Option<i64> {
        let first = self.terms.iter().next()?.grade(g);
        self.terms.iter().all(|m| m.grade(g) == first).then_some(first)
    }

    pub fn is_admissible(&self) -> bool {
        self.terms.iter().all(QMonomial::is_admissible)
    }

    pub fn format_applied(&self, generator: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self.terms.iter().map(|m| m.format_applied(generator)).collect();
        parts.join(" + ")
    }
}

impl FromIterator<QMonomial> for QPolynomial {
    fn from_iter<I: IntoIterator<Item = QMonomial>>(iter: I) -> Self {
        let mut p = QPolynomial::zero();
        for m in iter {
            p.toggle(m);
        }
        p
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|m| m.to_string()).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl Serialize for QPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.terms.iter())
    }
}
