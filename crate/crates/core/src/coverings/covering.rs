use serde::{Deserialize, Serialize};

use super::poly::IntPolynomial;
use super::CoveringError;

/// A map of finite sets `p: T -> B`, stored as its fibers.
///
/// `T = {0, ..., n-1}` and every element lies in exactly one fiber; fibers may be empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "CoveringJson")]
pub struct FiniteCovering {
    base_size: usize,
    fibers: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct CoveringJson {
    base_size: usize,
    fibers: Vec<Vec<usize>>,
}

impl TryFrom<CoveringJson> for FiniteCovering {
    type Error = CoveringError;

    fn try_from(j: CoveringJson) -> Result<Self, CoveringError> {
        FiniteCovering::new(j.base_size, j.fibers)
    }
}

/// Fibers of consecutive labels with the given sizes.
fn from_sizes(sizes: impl IntoIterator<Item = usize>) -> FiniteCovering {
    let mut next = 0;
    let fibers: Vec<Vec<usize>> = sizes
        .into_iter()
        .map(|k| {
            let f = (next..next + k).collect();
            next += k;
            f
        })
        .collect();
    FiniteCovering {
        base_size: fibers.len(),
        fibers,
    }
}

impl FiniteCovering {
    pub fn new(base_size: usize, fibers: Vec<Vec<usize>>) -> Result<Self, CoveringError> {
        if fibers.len() != base_size {
            return Err(CoveringError::NotAPartition(format!(
                "{} fibers over a base of size {base_size}",
                fibers.len()
            )));
        }
        let total: usize = fibers.iter().map(Vec::len).sum();
        let mut seen = vec![false; total];
        for &e in fibers.iter().flatten() {
            if e >= total || std::mem::replace(&mut seen[e], true) {
                return Err(CoveringError::NotAPartition(format!(
                    "element {e} is repeated or outside 0..{total}"
                )));
            }
        }
        Ok(FiniteCovering { base_size, fibers })
    }

    /// The covering with the given fiber sizes, labeled consecutively.
    pub fn with_fiber_sizes(sizes: &[usize]) -> Self {
        from_sizes(sizes.iter().copied())
    }

    /// The empty covering; `χ = 0`.
    pub fn empty() -> Self {
        from_sizes([])
    }

    /// The `n`-fold covering of a point; `χ = x^n`.
    pub fn trivial(n: usize) -> Self {
        from_sizes([n])
    }

    /// The identity of an `m`-point set; `χ = m x`.
    pub fn identity(m: usize) -> Self {
        from_sizes(vec![1; m])
    }

    pub fn base_size(&self) -> usize {
        self.base_size
    }

    pub fn total_size(&self) -> usize {
        self.fibers.iter().map(Vec::len).sum()
    }

    pub fn fibers(&self) -> &[Vec<usize>] {
        &self.fibers
    }

    pub fn fiber_sizes(&self) -> Vec<usize> {
        self.fibers.iter().map(Vec::len).collect()
    }

    /// `p(t)` for every `t`.
    pub fn projection(&self) -> Vec<usize> {
        let mut out = vec![0; self.total_size()];
        for (b, f) in self.fibers.iter().enumerate() {
            for &e in f {
                out[e] = b;
            }
        }
        out
    }

    /// The same covering with each fiber labeled consecutively in base order.
    pub fn canonical(&self) -> Self {
        from_sizes(self.fiber_sizes())
    }

    /// `Σ_b x^{|p^{-1}(b)|}`.
    pub fn euler_char(&self) -> IntPolynomial {
        let mut p = IntPolynomial::zero();
        for f in &self.fibers {
            p.add_term(f.len() as u32, 1);
        }
        p
    }

    /// `F + G`: the disjoint union of bases.
    pub fn sum(&self, other: &Self) -> Self {
        from_sizes(self.fiber_sizes().into_iter().chain(other.fiber_sizes()))
    }

    /// `F × G`: base `B × B'`, fiber over `(b, b')` the disjoint union of fibers.
    pub fn product(&self, other: &Self) -> Self {
        let (a, b) = (self.fiber_sizes(), other.fiber_sizes());
        from_sizes(a.iter().flat_map(|&i| b.iter().map(move |&j| i + j)))
    }

    /// `F ∘ G`: base `{(b, φ) : φ: p^{-1}(b) -> B'}`, fiber over `(b, φ)` the union
    /// of the fibers of `q` over the values of `φ`.
    ///
    /// Fails when the base would exceed `limit` elements.
    pub fn compose(&self, other: &Self, limit: usize) -> Result<Self, CoveringError> {
        let inner = other.fiber_sizes();
        let mut base = 0usize;
        for f in &self.fibers {
            let count = inner
                .len()
                .checked_pow(f.len() as u32)
                .filter(|c| base.saturating_add(*c) <= limit);
            base += count.ok_or(CoveringError::TooLarge { limit })?;
        }
        let mut sizes = Vec::with_capacity(base);
        for f in &self.fibers {
            for phi in Functions::new(f.len(), inner.len()) {
                sizes.push(phi.iter().map(|&v| inner[v]).sum());
            }
        }
        Ok(from_sizes(sizes))
    }

    /// `p'`: base `T`, fiber over `t` the set `p^{-1}(p(t)) - {t}`.
    pub fn derivative(&self) -> Self {
        let sizes = self.projection().iter().map(|&b| self.fibers[b].len() - 1).collect::<Vec<_>>();
        from_sizes(sizes)
    }

    /// The derivative with each new element labeled by the pair `(t, e)` it stands for.
    pub fn derivative_labeled(&self) -> (Self, Vec<(usize, usize)>) {
        let proj = self.projection();
        let mut labels = Vec::new();
        let mut fibers = Vec::with_capacity(proj.len());
        for (t, &b) in proj.iter().enumerate() {
            let mut f = Vec::new();
            for &e in &self.fibers[b] {
                if e != t {
                    f.push(labels.len());
                    labels.push((t, e));
                }
            }
            fibers.push(f);
        }
        (
            FiniteCovering {
                base_size: fibers.len(),
                fibers,
            },
            labels,
        )
    }

    /// `p^(k) / k!`: base `{(b, S) : S ⊆ p^{-1}(b), |S| = k}`, fiber over `(b, S)`
    /// the set `p^{-1}(b) - S`.
    pub fn divided_derivative(&self, k: usize) -> Result<Self, CoveringError> {
        if k == 0 {
            return Err(CoveringError::ZeroOrder);
        }
        let mut sizes = Vec::new();
        for f in &self.fibers {
            for _ in Subsets::new(f.len(), k) {
                sizes.push(f.len() - k);
            }
        }
        Ok(from_sizes(sizes))
    }

    /// `p(X) = {(b, u) : u: p^{-1}(b) -> X}` for `X = {0, ..., x-1}`, in base order
    /// and then in lexicographic order of `u` (listed along the fiber).
    pub fn apply_to_set(&self, x: usize) -> impl Iterator<Item = (usize, Vec<usize>)> + '_ {
        self.fibers
            .iter()
            .enumerate()
            .flat_map(move |(b, f)| Functions::new(f.len(), x).map(move |u| (b, u)))
    }
}

/// All maps `{0..n} -> {0..m}`, as value lists in lexicographic order.
struct Functions {
    current: Option<Vec<usize>>,
    m: usize,
}

impl Functions {
    fn new(n: usize, m: usize) -> Self {
        Functions {
            current: (n == 0 || m > 0).then(|| vec![0; n]),
            m,
        }
    }
}

impl Iterator for Functions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().expect("checked");
        let mut i = cur.len();
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < self.m {
                break;
            }
            cur[i] = 0;
        }
        Some(out)
    }
}

/// All `k`-element subsets of `{0..n}`, in lexicographic order.
struct Subsets {
    current: Option<Vec<usize>>,
    n: usize,
}

impl Subsets {
    fn new(n: usize, k: usize) -> Self {
        Subsets {
            current: (k <= n).then(|| (0..k).collect()),
            n,
        }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().expect("checked");
        let k = cur.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if cur[i] < self.n - k + i {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}
