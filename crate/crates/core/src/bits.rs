//! Square boolean matrices backed by one bitset per row.

use fixedbitset::FixedBitSet;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: Vec<FixedBitSet>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        BitMatrix {
            rows: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::new(n);
        for i in 0..n {
            m.set(i, i);
        }
        m
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].contains(j)
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize) {
        self.rows[i].insert(j);
    }

    #[inline]
    pub fn row(&self, i: usize) -> &FixedBitSet {
        &self.rows[i]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut FixedBitSet {
        &mut self.rows[i]
    }

    /// Warshall's algorithm, one row union per (k, i) with `i → k`.
    pub fn close_transitively(&mut self) {
        let n = self.size();
        for k in 0..n {
            let row_k = self.rows[k].clone();
            for i in 0..n {
                if i != k && self.rows[i].contains(k) {
                    self.rows[i].union_with(&row_k);
                }
            }
        }
    }

    pub fn transpose(&self) -> Self {
        let n = self.size();
        let mut t = Self::new(n);
        for i in 0..n {
            for j in self.rows[i].ones() {
                t.set(j, i);
            }
        }
        t
    }

    pub fn is_subset(&self, other: &BitMatrix) -> bool {
        self.size() == other.size()
            && self
                .rows
                .iter()
                .zip(&other.rows)
                .all(|(a, b)| a.is_subset(b))
    }

    /// All set entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.ones().map(move |j| (i, j)))
    }

    pub fn count_ones(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_of_a_path() {
        let mut m = BitMatrix::identity(4);
        m.set(0, 1);
        m.set(1, 2);
        m.set(2, 3);
        m.close_transitively();
        assert!(m.get(0, 3));
        assert!(m.get(1, 3));
        assert!(!m.get(3, 0));
        assert_eq!(m.count_ones(), 10);
    }

    #[test]
    fn transpose_swaps_entries() {
        let mut m = BitMatrix::new(3);
        m.set(0, 2);
        let t = m.transpose();
        assert!(t.get(2, 0));
        assert!(!t.get(0, 2));
    }
}
