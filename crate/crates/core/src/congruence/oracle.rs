//! Dilworth's characterisation of `cg` membership through weak
//! perspectivities, computed without any congruence closure. It serves as an
//! independent check on [`super::cg`].

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;

use crate::lattice::{FiniteLattice, OrderedPair};

/// `p1` and `p2` are perspective: for some `{i, j} = {1, 2}`,
/// `x_i = y_i ∧ x_j` and `y_j = x_j ∨ y_i`.
pub fn perspective(l: &FiniteLattice, p1: OrderedPair, p2: OrderedPair) -> bool {
    let oriented =
        |a: OrderedPair, b: OrderedPair| a.lo == l.meet(a.hi, b.lo) && b.hi == l.join(b.lo, a.hi);
    oriented(p1, p2) || oriented(p2, p1)
}

/// All ordered pairs that reach `target` through a finite sequence of weak
/// perspectivities into the next pair: up steps `y = z ∧ y'`, `z ≤ z'`, and
/// down steps `z = y ∨ z'`, `y ≥ y'`. Indexed as `lo * n + hi`.
pub fn weakly_projective_into(l: &FiniteLattice, target: OrderedPair) -> FixedBitSet {
    let n = l.size();
    let pairs = l.ordered_pairs();
    let mut seen = FixedBitSet::with_capacity(n * n);
    let mut queue = VecDeque::new();
    seen.insert(target.lo * n + target.hi);
    queue.push_back(target);
    while let Some(next) = queue.pop_front() {
        for &p in &pairs {
            let key = p.lo * n + p.hi;
            if seen.contains(key) {
                continue;
            }
            let up = p.lo == l.meet(p.hi, next.lo) && l.leq(p.hi, next.hi);
            let down = p.hi == l.join(p.lo, next.hi) && l.leq(next.lo, p.lo);
            if up || down {
                seen.insert(key);
                queue.push_back(p);
            }
        }
    }
    seen
}

/// Decides `(u1, v1) ∈ cg(u2, v2)`: breadth-first search over `Pairs(L)`
/// seeded at `p2`, then a search for a chain `u1 = x_0 ≤ … ≤ x_n = v1`
/// whose every step was reached.
pub fn projectivity_oracle(l: &FiniteLattice, p1: OrderedPair, p2: OrderedPair) -> bool {
    if p1.is_trivial() {
        return true;
    }
    let n = l.size();
    let reach = weakly_projective_into(l, p2);
    let mut visited = FixedBitSet::with_capacity(n);
    let mut queue = VecDeque::from([p1.lo]);
    visited.insert(p1.lo);
    while let Some(x) = queue.pop_front() {
        if x == p1.hi {
            return true;
        }
        for y in l.up_set(x).ones() {
            if y != x && !visited.contains(y) && l.leq(y, p1.hi) && reach.contains(x * n + y) {
                visited.insert(y);
                queue.push_back(y);
            }
        }
    }
    false
}
