//! Finite lattices with precomputed meet and join tables.

pub mod named;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::bits::BitMatrix;
use crate::order::{OrderError, Poset, QuasiOrder};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("not a partial order: {0}")]
    NotAPartialOrder(#[from] OrderError),
    #[error("elements {0} and {1} have no meet or no join")]
    NotALattice(usize, usize),
    #[error("a lattice needs at least one element")]
    Empty,
    #[error("operation table disagrees with the order at ({0}, {1})")]
    TableMismatch(usize, usize),
}

/// `(lo, hi)` with `lo ≤ hi` in the ambient lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderedPair {
    pub lo: usize,
    pub hi: usize,
}

impl OrderedPair {
    pub fn new(lo: usize, hi: usize) -> Self {
        OrderedPair { lo, hi }
    }

    pub fn is_trivial(&self) -> bool {
        self.lo == self.hi
    }
}

/// How an `(a1, b1, a2, b2)` quadruple sits in a lattice. The variants are
/// ordered so that a stronger class compares greater.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum N6Class {
    NotN6,
    PlainN6,
    SpanningN6,
    StrongN6,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLattice {
    /// Row `x` is the up-set of `x`.
    up: BitMatrix,
    /// Row `y` is the down-set of `y`.
    down: BitMatrix,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
    labels: Vec<String>,
}

impl FiniteLattice {
    /// Computes the operation tables from an order matrix, failing on the
    /// first pair without a greatest lower or least upper bound.
    pub fn from_leq(leq: BitMatrix, labels: Vec<String>) -> Result<Self, LatticeError> {
        let n = leq.size();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        let order = QuasiOrder::from_matrix(leq)?;
        Poset::with_labels(order.clone(), labels.clone())?;
        let up = order.matrix().clone();
        let down = up.transpose();
        let down_counts: Vec<usize> = (0..n).map(|x| down.row(x).count_ones(..)).collect();
        let up_counts: Vec<usize> = (0..n).map(|x| up.row(x).count_ones(..)).collect();

        let bound = |sets: &BitMatrix, counts: &[usize], x: usize, y: usize| -> Option<usize> {
            let mut common = sets.row(x).clone();
            common.intersect_with(sets.row(y));
            let best = common.ones().max_by_key(|&m| (counts[m], usize::MAX - m))?;
            common.is_subset(sets.row(best)).then_some(best)
        };

        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for x in 0..n {
            for y in x..n {
                let m = bound(&down, &down_counts, x, y).ok_or(LatticeError::NotALattice(x, y))?;
                let j = bound(&up, &up_counts, x, y).ok_or(LatticeError::NotALattice(x, y))?;
                meet[x * n + y] = m;
                meet[y * n + x] = m;
                join[x * n + y] = j;
                join[y * n + x] = j;
            }
        }
        Ok(Self::assemble(up, down, meet, join, labels))
    }

    /// Builds from covering pairs `(x, y)`, `x ⋖ y`.
    pub fn from_covers(
        labels: Vec<String>,
        covers: &[(usize, usize)],
    ) -> Result<Self, LatticeError> {
        let order = QuasiOrder::quos(labels.len(), covers)?;
        Self::from_leq(order.matrix().clone(), labels)
    }

    /// Accepts externally computed tables after checking each entry is the
    /// glb/lub of its arguments under `leq`.
    pub fn from_tables(
        leq: BitMatrix,
        meet: Vec<usize>,
        join: Vec<usize>,
        labels: Vec<String>,
    ) -> Result<Self, LatticeError> {
        let n = leq.size();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        let order = QuasiOrder::from_matrix(leq)?;
        Poset::with_labels(order.clone(), labels.clone())?;
        let up = order.matrix().clone();
        let down = up.transpose();
        for x in 0..n {
            for y in 0..n {
                let m = meet[x * n + y];
                let j = join[x * n + y];
                if m >= n || j >= n {
                    return Err(LatticeError::TableMismatch(x, y));
                }
                let mut lower = down.row(x).clone();
                lower.intersect_with(down.row(y));
                let mut upper = up.row(x).clone();
                upper.intersect_with(up.row(y));
                if !lower.contains(m) || !lower.is_subset(down.row(m)) {
                    return Err(LatticeError::TableMismatch(x, y));
                }
                if !upper.contains(j) || !upper.is_subset(up.row(j)) {
                    return Err(LatticeError::TableMismatch(x, y));
                }
            }
        }
        Ok(Self::assemble(up, down, meet, join, labels))
    }

    fn assemble(
        up: BitMatrix,
        down: BitMatrix,
        meet: Vec<usize>,
        join: Vec<usize>,
        labels: Vec<String>,
    ) -> Self {
        let n = up.size();
        let bottom = (0..n).find(|&x| up.row(x).count_ones(..) == n).unwrap();
        let top = (0..n).find(|&x| down.row(x).count_ones(..) == n).unwrap();
        let mut upper_covers = vec![Vec::new(); n];
        let mut lower_covers = vec![Vec::new(); n];
        for (x, ups) in upper_covers.iter_mut().enumerate() {
            for y in up.row(x).ones() {
                if y == x {
                    continue;
                }
                let mut between = up.row(x).clone();
                between.intersect_with(down.row(y));
                if between.count_ones(..) == 2 {
                    ups.push(y);
                    lower_covers[y].push(x);
                }
            }
        }
        FiniteLattice {
            up,
            down,
            meet,
            join,
            bottom,
            top,
            upper_covers,
            lower_covers,
            labels,
        }
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up.get(x, y)
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.size() + y]
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.size() + y]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn leq_matrix(&self) -> &BitMatrix {
        &self.up
    }

    pub fn up_set(&self, x: usize) -> &FixedBitSet {
        self.up.row(x)
    }

    pub fn down_set(&self, x: usize) -> &FixedBitSet {
        self.down.row(x)
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper_covers[x]
    }

    pub fn lower_covers(&self, y: usize) -> &[usize] {
        &self.lower_covers[y]
    }

    /// `y` covers `x`.
    pub fn covers(&self, x: usize, y: usize) -> bool {
        self.upper_covers[x].contains(&y)
    }

    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.size())
            .flat_map(|x| self.upper_covers[x].iter().map(move |&y| (x, y)))
            .collect()
    }

    /// `Pairs(L)`, reflexive pairs included, in row-major order.
    pub fn ordered_pairs(&self) -> Vec<OrderedPair> {
        self.up
            .entries()
            .map(|(lo, hi)| OrderedPair { lo, hi })
            .collect()
    }

    pub fn poset(&self) -> Poset {
        Poset::with_labels(
            QuasiOrder::from_matrix_unchecked(self.up.clone()),
            self.labels.clone(),
        )
        .expect("lattice order is a partial order")
    }

    /// Number of edges in a longest chain.
    pub fn length(&self) -> usize {
        let mut height = vec![0usize; self.size()];
        for x in self.linear_extension() {
            for &y in &self.upper_covers[x] {
                height[y] = height[y].max(height[x] + 1);
            }
        }
        height[self.top]
    }

    /// Elements sorted so that `x < y` implies `x` comes first.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.size()).collect();
        order.sort_by_key(|&x| (self.down.row(x).count_ones(..), x));
        order
    }

    /// Contains both bounds and is closed under meet and join.
    pub fn is_01_sublattice(&self, subset: &[usize]) -> bool {
        subset.contains(&self.bottom) && subset.contains(&self.top) && self.is_sublattice(subset)
    }

    pub fn is_sublattice(&self, subset: &[usize]) -> bool {
        let mut member = FixedBitSet::with_capacity(self.size());
        for &x in subset {
            member.insert(x);
        }
        subset.iter().all(|&x| {
            subset
                .iter()
                .all(|&y| member.contains(self.meet(x, y)) && member.contains(self.join(x, y)))
        })
    }

    /// `x` and `y` are complements of each other.
    pub fn are_complements(&self, x: usize, y: usize) -> bool {
        self.meet(x, y) == self.bottom && self.join(x, y) == self.top
    }

    pub fn classify_n6(&self, quad: (usize, usize, usize, usize)) -> N6Class {
        let (a1, b1, a2, b2) = quad;
        let lo = self.meet(b1, b2);
        let hi = self.join(a1, a2);
        let shape = lo == self.meet(a1, a2)
            && self.lt(a1, b1)
            && self.lt(a2, b2)
            && hi == self.join(b1, b2);
        if !shape {
            return N6Class::NotN6;
        }
        let six = [lo, a1, b1, a2, b2, hi];
        let distinct = (0..6).all(|i| (i + 1..6).all(|j| six[i] != six[j]));
        if !distinct || !self.is_sublattice(&six) {
            return N6Class::NotN6;
        }
        if lo != self.bottom || hi != self.top {
            return N6Class::PlainN6;
        }
        let (bot, top) = (self.bottom, self.top);
        let strong = [(a1, b1, a2, b2), (a2, b2, a1, b1)]
            .into_iter()
            .all(|(ai, bi, aj, bj)| {
                (0..self.size()).all(|x| {
                    let up_ok = !(x != bot && self.leq(x, bi)) || self.join(x, aj) == top;
                    let down_ok = !(x != top && self.leq(ai, x)) || self.meet(x, bj) == bot;
                    up_ok && down_ok
                })
            });
        if strong {
            N6Class::StrongN6
        } else {
            N6Class::SpanningN6
        }
    }

    /// Every maximal chain `bottom ⋖ … ⋖ top`, by depth-first search over
    /// upper covers.
    pub fn maximal_chains(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut path = vec![self.bottom];
        self.chains_from(&mut path, &mut out);
        out
    }

    fn chains_from(&self, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let x = *path.last().unwrap();
        if x == self.top {
            out.push(path.clone());
            return;
        }
        for &y in &self.upper_covers[x] {
            path.push(y);
            self.chains_from(path, out);
            path.pop();
        }
    }
}
