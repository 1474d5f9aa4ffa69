//! Finite quasiorders and ordered sets over dense integer carriers.
//!
//! Elements are the indices `0..size`. A [`Poset`] additionally keeps a side
//! table of labels, used only for I/O and diagnostics.

mod iso;

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::bits::BitMatrix;

pub use iso::{poset_isomorphic, IsoWitness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("index {index} out of range for a carrier of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("relation is not reflexive at {0}")]
    NotReflexive(usize),
    #[error("relation is not transitive: {0} <= {1} <= {2}")]
    NotTransitive(usize, usize, usize),
    #[error("relation is not antisymmetric: {0} and {1} are mutually below each other")]
    NotAntisymmetric(usize, usize),
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error("label table has {labels} entries but the carrier has {size}")]
    LabelCount { labels: usize, size: usize },
}

/// A reflexive, transitive relation `rel[x][y] ⟺ x ≤ y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuasiOrder {
    rel: BitMatrix,
}

impl QuasiOrder {
    /// The least quasiorder on `0..size` containing every pair of `seed`.
    pub fn quos(size: usize, seed: &[(usize, usize)]) -> Result<Self, OrderError> {
        let mut rel = BitMatrix::identity(size);
        for &(x, y) in seed {
            for index in [x, y] {
                if index >= size {
                    return Err(OrderError::IndexOutOfRange { index, size });
                }
            }
            rel.set(x, y);
        }
        rel.close_transitively();
        Ok(QuasiOrder { rel })
    }

    pub fn identity(size: usize) -> Self {
        QuasiOrder {
            rel: BitMatrix::identity(size),
        }
    }

    /// Wraps an explicit relation matrix after checking the quasiorder laws.
    pub fn from_matrix(rel: BitMatrix) -> Result<Self, OrderError> {
        let n = rel.size();
        for x in 0..n {
            if !rel.get(x, x) {
                return Err(OrderError::NotReflexive(x));
            }
        }
        for x in 0..n {
            for y in rel.row(x).ones() {
                if !rel.row(y).is_subset(rel.row(x)) {
                    let z = rel.row(y).difference(rel.row(x)).next().unwrap();
                    return Err(OrderError::NotTransitive(x, y, z));
                }
            }
        }
        Ok(QuasiOrder { rel })
    }

    pub(crate) fn from_matrix_unchecked(rel: BitMatrix) -> Self {
        debug_assert!(QuasiOrder::from_matrix(rel.clone()).is_ok());
        QuasiOrder { rel }
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.rel.size()
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.rel.get(x, y)
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) && !self.leq(y, x)
    }

    /// Neither `x ≤ y` nor `y ≤ x`.
    #[inline]
    pub fn parallel(&self, x: usize, y: usize) -> bool {
        !self.leq(x, y) && !self.leq(y, x)
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.rel
    }

    /// The up-set `{y : x ≤ y}`.
    pub fn up_set(&self, x: usize) -> &FixedBitSet {
        self.rel.row(x)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rel.entries()
    }

    pub fn is_subrelation_of(&self, other: &QuasiOrder) -> bool {
        self.rel.is_subset(&other.rel)
    }

    pub fn least_elements(&self) -> Vec<usize> {
        let n = self.size();
        (0..n)
            .filter(|&x| self.rel.row(x).count_ones(..) == n)
            .collect()
    }

    pub fn greatest_elements(&self) -> Vec<usize> {
        let n = self.size();
        (0..n).filter(|&g| (0..n).all(|x| self.leq(x, g))).collect()
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.antisymmetry_violation().is_none()
    }

    fn antisymmetry_violation(&self) -> Option<(usize, usize)> {
        self.pairs().find(|&(x, y)| x != y && self.leq(y, x))
    }

    /// Every two elements have a common upper bound.
    pub fn is_directed(&self) -> bool {
        let n = self.size();
        (0..n).all(|x| {
            (x + 1..n).all(|y| {
                let mut common = self.rel.row(x).clone();
                common.intersect_with(self.rel.row(y));
                !common.is_clear()
            })
        })
    }

    /// Quotient by `Θ = ν ∩ ν⁻¹`. Blocks are numbered in order of their
    /// least member.
    pub fn theta_quotient(&self) -> ThetaQuotient {
        let n = self.size();
        let mut projection = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n {
            if projection[x] != usize::MAX {
                continue;
            }
            let block = reps.len();
            reps.push(x);
            for (y, slot) in projection.iter_mut().enumerate().skip(x) {
                if self.leq(x, y) && self.leq(y, x) {
                    *slot = block;
                }
            }
        }
        let k = reps.len();
        let mut rel = BitMatrix::new(k);
        for (bx, &x) in reps.iter().enumerate() {
            for (by, &y) in reps.iter().enumerate() {
                if self.leq(x, y) {
                    rel.set(bx, by);
                }
            }
        }
        let labels = reps.iter().map(|r| r.to_string()).collect();
        ThetaQuotient {
            poset: Poset {
                order: QuasiOrder { rel },
                labels,
            },
            projection,
        }
    }
}

/// The ordered set of `Θ`-blocks together with the element-to-block map.
#[derive(Clone, Debug)]
pub struct ThetaQuotient {
    pub poset: Poset,
    pub projection: Vec<usize>,
}

/// An antisymmetric quasiorder with a label per element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    order: QuasiOrder,
    labels: Vec<String>,
}

impl Poset {
    /// Labels default to the decimal indices.
    pub fn new(order: QuasiOrder) -> Result<Self, OrderError> {
        let labels = (0..order.size()).map(|i| i.to_string()).collect();
        Poset::with_labels(order, labels)
    }

    pub fn with_labels(order: QuasiOrder, labels: Vec<String>) -> Result<Self, OrderError> {
        if labels.len() != order.size() {
            return Err(OrderError::LabelCount {
                labels: labels.len(),
                size: order.size(),
            });
        }
        if let Some((x, y)) = order.antisymmetry_violation() {
            return Err(OrderError::NotAntisymmetric(x, y));
        }
        let mut seen = HashMap::new();
        for l in &labels {
            if seen.insert(l.as_str(), ()).is_some() {
                return Err(OrderError::DuplicateLabel(l.clone()));
            }
        }
        Ok(Poset { order, labels })
    }

    /// Builds `quos(pairs)` over the given labels and demands antisymmetry.
    pub fn from_labeled_pairs(
        labels: Vec<String>,
        leq: &[(String, String)],
    ) -> Result<Self, OrderError> {
        let index: HashMap<&str, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let lookup = |l: &String| {
            index
                .get(l.as_str())
                .copied()
                .ok_or_else(|| OrderError::UnknownLabel(l.clone()))
        };
        let seed = leq
            .iter()
            .map(|(x, y)| Ok((lookup(x)?, lookup(y)?)))
            .collect::<Result<Vec<_>, OrderError>>()?;
        let order = QuasiOrder::quos(labels.len(), &seed)?;
        Poset::with_labels(order, labels)
    }

    /// A chain `0 < 1 < … < n-1`.
    pub fn chain(n: usize) -> Self {
        let seed: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Poset::new(QuasiOrder::quos(n, &seed).unwrap()).unwrap()
    }

    /// An `n`-element antichain.
    pub fn antichain(n: usize) -> Self {
        Poset::new(QuasiOrder::identity(n)).unwrap()
    }

    /// `0 < x_1, …, x_k < 1` with the `x_i` pairwise incomparable.
    pub fn bounded_antichain(k: usize) -> Self {
        let top = k + 1;
        let mut seed = vec![(0, top)];
        for i in 1..=k {
            seed.push((0, i));
            seed.push((i, top));
        }
        Poset::new(QuasiOrder::quos(k + 2, &seed).unwrap()).unwrap()
    }

    pub fn order(&self) -> &QuasiOrder {
        &self.order
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

    #[inline]
    pub fn size(&self) -> usize {
        self.order.size()
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.order.leq(x, y)
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.order.leq(x, y)
    }

    pub fn least(&self) -> Option<usize> {
        self.order.least_elements().first().copied()
    }

    pub fn greatest(&self) -> Option<usize> {
        self.order.greatest_elements().first().copied()
    }

    pub fn is_bounded(&self) -> bool {
        self.least().is_some() && self.greatest().is_some()
    }

    pub fn is_directed_with_zero(&self) -> bool {
        self.least().is_some() && self.order.is_directed()
    }

    /// `↓c`, in increasing index order.
    pub fn principal_ideal(&self, c: usize) -> Vec<usize> {
        (0..self.size()).filter(|&x| self.leq(x, c)).collect()
    }

    /// Nonempty and closed downwards.
    pub fn is_order_ideal(&self, subset: &[usize]) -> bool {
        if subset.is_empty() {
            return false;
        }
        let mut member = vec![false; self.size()];
        for &x in subset {
            member[x] = true;
        }
        subset
            .iter()
            .all(|&y| (0..self.size()).all(|x| !self.leq(x, y) || member[x]))
    }

    /// The induced sub-poset on `subset`, indexed in the order given.
    pub fn restrict(&self, subset: &[usize]) -> Poset {
        let k = subset.len();
        let mut rel = BitMatrix::new(k);
        for (i, &x) in subset.iter().enumerate() {
            for (j, &y) in subset.iter().enumerate() {
                if self.leq(x, y) {
                    rel.set(i, j);
                }
            }
        }
        Poset {
            order: QuasiOrder { rel },
            labels: subset.iter().map(|&x| self.labels[x].clone()).collect(),
        }
    }

    pub fn upper_covers(&self, x: usize) -> Vec<usize> {
        (0..self.size())
            .filter(|&y| self.lt(x, y) && !(0..self.size()).any(|z| self.lt(x, z) && self.lt(z, y)))
            .collect()
    }

    /// Pairs `(x, y)` with `x ⋖ y`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        (0..self.size())
            .flat_map(|x| self.upper_covers(x).into_iter().map(move |y| (x, y)))
            .collect()
    }

    /// Renames elements: element `x` of `self` becomes element `perm[x]`.
    pub fn permuted(&self, perm: &[usize]) -> Poset {
        let n = self.size();
        let mut rel = BitMatrix::new(n);
        let mut labels = vec![String::new(); n];
        for x in 0..n {
            labels[perm[x]] = self.labels[x].clone();
            for y in self.order.up_set(x).ones() {
                rel.set(perm[x], perm[y]);
            }
        }
        Poset {
            order: QuasiOrder { rel },
            labels,
        }
    }

    /// The cofinal chain `q_0 = p_0`, `q_i = q_{i-1} ⊔ p_i`, where `a ⊔ b` is
    /// the upper bound of least index and the enumeration starts at the zero.
    /// Returns `None` when some pair has no upper bound or there is no zero.
    pub fn cofinal_chain(&self) -> Option<Vec<usize>> {
        let zero = self.least()?;
        let n = self.size();
        let enumeration = std::iter::once(zero).chain((0..n).filter(|&x| x != zero));
        let mut chain: Vec<usize> = Vec::with_capacity(n);
        for p in enumeration {
            let next = match chain.last() {
                None => p,
                Some(&q) => (0..n).find(|&k| self.leq(q, k) && self.leq(p, k))?,
            };
            if chain.last() != Some(&next) {
                chain.push(next);
            }
        }
        Some(chain)
    }
}
