//! Dense GF(2) row vectors and reduced row echelon form.

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitRow {
    len: usize,
    words: Vec<u64>,
}

impl BitRow {
    pub fn new(len: usize) -> Self {
        BitRow {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitRow) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Index of the leftmost set bit.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }
}

/// Reduced row echelon form with leftmost pivots.
///
/// Returns `(pivot column, row)` pairs sorted by pivot column. Every returned
/// row has a zero in every other row's pivot column.
pub fn rref(rows: impl IntoIterator<Item = BitRow>) -> Vec<(usize, BitRow)> {
    let mut pivots: Vec<(usize, BitRow)> = Vec::new();
    for mut row in rows {
        for (p, prow) in &pivots {
            if row.get(*p) {
                row.xor_assign(prow);
            }
        }
        let Some(p) = row.first_one() else { continue };
        for (_, prow) in pivots.iter_mut() {
            if prow.get(p) {
                prow.xor_assign(&row);
            }
        }
        let at = pivots.partition_point(|(q, _)| *q < p);
        pivots.insert(at, (p, row));
    }
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(bits: &[usize], len: usize) -> BitRow {
        let mut r = BitRow::new(len);
        for &b in bits {
            r.set(b);
        }
        r
    }

    #[test]
    fn rref_is_reduced() {
        let rows = vec![row(&[1, 2], 4), row(&[0, 1], 4), row(&[0, 2], 4)];
        let out = rref(rows);
        assert_eq!(out.len(), 2);
        assert_eq!(out[0].0, 0);
        assert_eq!(out[1].0, 1);
        for (p, r) in &out {
            for (q, _) in &out {
                assert_eq!(r.get(*q), p == q);
            }
        }
    }

    #[test]
    fn wide_rows_cross_word_boundaries() {
        let mut a = row(&[3, 70, 129], 130);
        let b = row(&[70, 129], 130);
        a.xor_assign(&b);
        assert_eq!(a.ones().collect::<Vec<_>>(), vec![3]);
        assert_eq!(b.first_one(), Some(70));
    }
}
