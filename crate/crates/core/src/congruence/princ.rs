use std::collections::HashMap;

use crate::bits::BitMatrix;
use crate::lattice::{FiniteLattice, OrderedPair};
use crate::order::{Poset, QuasiOrder};
use crate::par::{map_range, Exec};

use super::{cg, Partition};

const NO_PAIR: u32 = u32::MAX;

/// The distinct principal congruences of a lattice, ordered by inclusion.
///
/// Congruences are numbered by first appearance when `Pairs(L)` is scanned
/// in row-major order, so index 0 is always `Δ` and each congruence's
/// representative is the first pair generating it.
#[derive(Clone, Debug)]
pub struct PrincPoset {
    congruences: Vec<Partition>,
    representatives: Vec<OrderedPair>,
    order: Poset,
    pair_index: Vec<u32>,
    n: usize,
}

impl PrincPoset {
    pub fn len(&self) -> usize {
        self.congruences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.congruences.is_empty()
    }

    pub fn congruences(&self) -> &[Partition] {
        &self.congruences
    }

    pub fn congruence(&self, i: usize) -> &Partition {
        &self.congruences[i]
    }

    pub fn representatives(&self) -> &[OrderedPair] {
        &self.representatives
    }

    /// Containment order on congruence indices.
    pub fn poset(&self) -> &Poset {
        &self.order
    }

    /// `C_i ⊆ C_j`.
    pub fn contained(&self, i: usize, j: usize) -> bool {
        self.order.leq(i, j)
    }

    /// Index of `cg(lo, hi)`; `None` when `lo ≰ hi`.
    pub fn index_of_pair(&self, lo: usize, hi: usize) -> Option<usize> {
        match self.pair_index[lo * self.n + hi] {
            NO_PAIR => None,
            i => Some(i as usize),
        }
    }

    /// Index of the congruence equal to `p`, if `p` is principal.
    pub fn find(&self, p: &Partition) -> Option<usize> {
        self.congruences.iter().position(|c| c == p)
    }

    /// Covering pairs of the containment order.
    pub fn containment_edges(&self) -> Vec<(usize, usize)> {
        self.order.covers()
    }
}

pub fn princ(l: &FiniteLattice) -> PrincPoset {
    princ_with(l, Exec::default())
}

/// Scans `Pairs(L)`. Prime quotients are closed directly; for `x < y` the
/// scan uses `cg(x, y) = cg(x, y') ∨ cg(y', y)` with `y'` a lower cover of
/// `y` above `x`, which holds because congruence joins are transitive
/// closures of unions.
pub fn princ_with(l: &FiniteLattice, exec: Exec) -> PrincPoset {
    let n = l.size();
    let covers: Vec<(usize, usize)> = l.cover_pairs();
    let cover_cgs = map_range(exec, covers.len(), |i| cg(l, covers[i].0, covers[i].1));
    let cover_slot: HashMap<(usize, usize), usize> =
        covers.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let order = l.linear_extension();
    let full = Partition::full(n);

    let rows: Vec<Vec<(usize, Partition)>> = map_range(exec, n, |x| {
        let mut row: Vec<Option<Partition>> = vec![None; n];
        for &y in &order {
            if !l.leq(x, y) {
                continue;
            }
            let c = if y == x {
                Partition::discrete(n)
            } else {
                let mid = *l
                    .lower_covers(y)
                    .iter()
                    .find(|&&m| l.leq(x, m))
                    .expect("an interval has a lower cover of its top above its bottom");
                let lower = row[mid].as_ref().expect("lower cover handled first");
                if lower.is_full() {
                    full.clone()
                } else {
                    lower.join(&cover_cgs[cover_slot[&(mid, y)]])
                }
            };
            row[y] = Some(c);
        }
        row.into_iter()
            .enumerate()
            .filter_map(|(y, c)| c.map(|c| (y, c)))
            .collect()
    });

    let mut index: HashMap<Partition, u32> = HashMap::new();
    let mut congruences = Vec::new();
    let mut representatives = Vec::new();
    let mut pair_index = vec![NO_PAIR; n * n];
    for (x, row) in rows.into_iter().enumerate() {
        for (y, c) in row {
            let next = congruences.len() as u32;
            let id = *index.entry(c.clone()).or_insert_with(|| {
                congruences.push(c);
                representatives.push(OrderedPair::new(x, y));
                next
            });
            pair_index[x * n + y] = id;
        }
    }

    let k = congruences.len();
    let mut rel = BitMatrix::new(k);
    for i in 0..k {
        for j in 0..k {
            if congruences[i].is_refinement_of(&congruences[j]) {
                rel.set(i, j);
            }
        }
    }
    let labels = representatives
        .iter()
        .map(|p| format!("cg({},{})", l.label(p.lo), l.label(p.hi)))
        .collect();
    let order = Poset::with_labels(QuasiOrder::from_matrix_unchecked(rel), labels)
        .expect("distinct partitions are ordered antisymmetrically");
    PrincPoset {
        congruences,
        representatives,
        order,
        pair_index,
        n,
    }
}
