//! Lattice congruences: generation by closure, principal congruences and
//! the ordered set they form.

mod oracle;
mod princ;

use petgraph::unionfind::UnionFind;

use crate::lattice::{FiniteLattice, OrderedPair};

pub use oracle::{perspective, projectivity_oracle, weakly_projective_into};
pub use princ::{princ, princ_with, PrincPoset};

/// An equivalence relation on lattice elements. Each element stores the
/// least index of its block, which makes equal partitions compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    block: Vec<usize>,
}

impl Partition {
    /// `Δ`: every block a singleton.
    pub fn discrete(n: usize) -> Self {
        Partition {
            block: (0..n).collect(),
        }
    }

    /// `∇`: a single block.
    pub fn full(n: usize) -> Self {
        Partition { block: vec![0; n] }
    }

    /// Canonicalises arbitrary block ids.
    pub fn from_block_ids(ids: &[usize]) -> Self {
        let mut first = std::collections::HashMap::new();
        let block = ids
            .iter()
            .enumerate()
            .map(|(x, id)| *first.entry(*id).or_insert(x))
            .collect();
        Partition { block }
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Self {
        let mut ids: Vec<usize> = (0..n).collect();
        for b in blocks {
            if let Some(&first) = b.first() {
                for &x in b {
                    ids[x] = first;
                }
            }
        }
        Partition::from_block_ids(&ids)
    }

    fn from_union_find(mut uf: UnionFind<usize>, n: usize) -> Self {
        let roots: Vec<usize> = (0..n).map(|x| uf.find_mut(x)).collect();
        Partition::from_block_ids(&roots)
    }

    pub fn size(&self) -> usize {
        self.block.len()
    }

    /// Least element of the block containing `x`.
    #[inline]
    pub fn block_of(&self, x: usize) -> usize {
        self.block[x]
    }

    #[inline]
    pub fn same_block(&self, x: usize, y: usize) -> bool {
        self.block[x] == self.block[y]
    }

    pub fn block_ids(&self) -> &[usize] {
        &self.block
    }

    pub fn block_count(&self) -> usize {
        self.block
            .iter()
            .enumerate()
            .filter(|(x, b)| *x == **b)
            .count()
    }

    /// Blocks in order of their least element, members ascending.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut slot = vec![usize::MAX; self.size()];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for (x, &b) in self.block.iter().enumerate() {
            if b == x {
                slot[x] = out.len();
                out.push(Vec::new());
            }
            out[slot[b]].push(x);
        }
        out
    }

    pub fn is_discrete(&self) -> bool {
        self.block.iter().enumerate().all(|(x, &b)| x == b)
    }

    pub fn is_full(&self) -> bool {
        self.block.iter().all(|&b| b == 0)
    }

    /// `self ⊆ other` as relations.
    pub fn is_refinement_of(&self, other: &Partition) -> bool {
        self.block
            .iter()
            .enumerate()
            .all(|(x, &b)| other.block[x] == other.block[b])
    }

    /// Join in the partition lattice (transitive closure of the union).
    pub fn join(&self, other: &Partition) -> Partition {
        let n = self.size();
        let mut uf = UnionFind::new(n);
        for x in 0..n {
            uf.union(x, self.block[x]);
            uf.union(x, other.block[x]);
        }
        Partition::from_union_find(uf, n)
    }
}

/// `cg(a, b)`: the least congruence collapsing `a` and `b`.
pub fn cg(l: &FiniteLattice, a: usize, b: usize) -> Partition {
    let lo = l.meet(a, b);
    let hi = l.join(a, b);
    con_gen(l, &[(lo, hi)])
}

pub fn cg_pair(l: &FiniteLattice, p: OrderedPair) -> Partition {
    cg(l, p.lo, p.hi)
}

/// The least congruence containing every pair in `pairs`.
///
/// Union-find closure: each successful merge of `x` and `y` queues
/// `(x∧z, y∧z)` and `(x∨z, y∨z)` for all `z`. A popped pair that is already
/// in one block needs no translates of its own, since the chain of merges
/// connecting it already queued translates linking `x∘z` to `y∘z`.
pub fn con_gen(l: &FiniteLattice, pairs: &[(usize, usize)]) -> Partition {
    let n = l.size();
    let mut uf = UnionFind::new(n);
    let mut work: Vec<(usize, usize)> = pairs.iter().copied().filter(|(x, y)| x != y).collect();
    let mut merges = 0;
    while let Some((x, y)) = work.pop() {
        if !uf.union(x, y) {
            continue;
        }
        merges += 1;
        if merges == n - 1 {
            return Partition::full(n);
        }
        for z in 0..n {
            let (mx, my) = (l.meet(x, z), l.meet(y, z));
            if mx != my {
                work.push((mx, my));
            }
            let (jx, jy) = (l.join(x, z), l.join(y, z));
            if jx != jy {
                work.push((jx, jy));
            }
        }
    }
    Partition::from_union_find(uf, n)
}

/// Compatibility with both lattice operations.
pub fn is_congruence(l: &FiniteLattice, p: &Partition) -> bool {
    let n = l.size();
    if p.size() != n {
        return false;
    }
    (0..n).all(|x| {
        let r = p.block_of(x);
        x == r
            || (0..n).all(|z| {
                p.same_block(l.meet(x, z), l.meet(r, z)) && p.same_block(l.join(x, z), l.join(r, z))
            })
    })
}
