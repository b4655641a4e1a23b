use std::collections::BTreeSet;

/// `q_n(f_1 ... f_r) = Σ q_{i_1}(f_1) ... q_{i_r}(f_r)` over compositions `i_1 + ... + i_r = n`.
///
/// Each product is returned as the sorted list of `(factor, index)` pairs, so
/// equal products coincide and cancel in pairs. An empty factor list is the unit,
/// for which only `q_0(1) = 1` survives.
pub fn cartan_expand<T: Ord + Clone>(n: u32, factors: &[T]) -> BTreeSet<Vec<(T, u32)>> {
    let mut out = BTreeSet::new();
    let mut parts = vec![0u32; factors.len()];
    compositions(n, 0, &mut parts, &mut |parts| {
        let mut term: Vec<(T, u32)> = factors.iter().cloned().zip(parts.iter().copied()).collect();
        term.sort();
        if !out.remove(&term) {
            out.insert(term);
        }
    });
    out
}

fn compositions(left: u32, at: usize, parts: &mut [u32], emit: &mut impl FnMut(&[u32])) {
    if at == parts.len() {
        if left == 0 {
            emit(parts);
        }
        return;
    }
    if at + 1 == parts.len() {
        parts[at] = left;
        emit(parts);
        return;
    }
    for i in 0..=left {
        parts[at] = i;
        compositions(left - i, at + 1, parts, emit);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_factors() {
        let zero = cartan_expand(0, &["x", "y"]);
        assert_eq!(zero.into_iter().collect::<Vec<_>>(), vec![vec![("x", 0), ("y", 0)]]);
        let one = cartan_expand(1, &["x", "y"]);
        assert_eq!(one.len(), 2);
    }

    #[test]
    fn repeated_factor_cancels_cross_terms() {
        let two = cartan_expand(2, &["x", "x"]);
        assert_eq!(two.into_iter().collect::<Vec<_>>(), vec![vec![("x", 1), ("x", 1)]]);
    }

    #[test]
    fn unit() {
        assert_eq!(cartan_expand::<u32>(0, &[]).len(), 1);
        assert!(cartan_expand::<u32>(3, &[]).is_empty());
    }
}
