//! Order isomorphism by invariant-refined backtracking.

use super::Poset;

/// A bijection `map: P → Q` with `x ≤ y ⟺ map[x] ≤ map[y]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoWitness {
    pub map: Vec<usize>,
}

impl IsoWitness {
    pub fn identity(n: usize) -> Self {
        IsoWitness {
            map: (0..n).collect(),
        }
    }

    pub fn inverse(&self) -> IsoWitness {
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        IsoWitness { map: inv }
    }

    /// Re-checks bijectivity and order preservation in both directions.
    pub fn verify(&self, p: &Poset, q: &Poset) -> bool {
        let n = p.size();
        if q.size() != n || self.map.len() != n {
            return false;
        }
        let mut hit = vec![false; n];
        for &y in &self.map {
            if y >= n || hit[y] {
                return false;
            }
            hit[y] = true;
        }
        (0..n).all(|x| (0..n).all(|y| p.leq(x, y) == q.leq(self.map[x], self.map[y])))
    }
}

type Profile = (usize, usize, usize, usize);

fn base_profiles(p: &Poset) -> Vec<Profile> {
    let n = p.size();
    (0..n)
        .map(|x| {
            let down = (0..n).filter(|&y| p.leq(y, x)).count();
            let up = (0..n).filter(|&y| p.leq(x, y)).count();
            let upper = p.upper_covers(x).len();
            let lower = (0..n)
                .filter(|&y| p.lt(y, x) && !(0..n).any(|z| p.lt(y, z) && p.lt(z, x)))
                .count();
            (down, up, lower, upper)
        })
        .collect()
}

/// One refinement round: each element is described by its own profile and
/// the sorted profiles of everything strictly below and strictly above it.
fn refined_profiles(p: &Poset) -> Vec<(Profile, Vec<Profile>, Vec<Profile>)> {
    let base = base_profiles(p);
    let n = p.size();
    (0..n)
        .map(|x| {
            let mut below: Vec<_> = (0..n).filter(|&y| p.lt(y, x)).map(|y| base[y]).collect();
            let mut above: Vec<_> = (0..n).filter(|&y| p.lt(x, y)).map(|y| base[y]).collect();
            below.sort_unstable();
            above.sort_unstable();
            (base[x], below, above)
        })
        .collect()
}

/// Decides `p ≅ q`; the returned witness is deterministic for fixed inputs.
pub fn poset_isomorphic(p: &Poset, q: &Poset) -> Option<IsoWitness> {
    let n = p.size();
    if q.size() != n {
        return None;
    }
    if p.order().matrix().count_ones() != q.order().matrix().count_ones() {
        return None;
    }
    let pp = refined_profiles(p);
    let qp = refined_profiles(q);
    let mut ps = pp.clone();
    let mut qs = qp.clone();
    ps.sort();
    qs.sort();
    if ps != qs {
        return None;
    }

    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..n).filter(|&y| qp[y] == pp[x]).collect())
        .collect();
    // most constrained elements first
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| (candidates[x].len(), x));

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(p, q, &order, &candidates, 0, &mut map, &mut used) {
        Some(IsoWitness { map })
    } else {
        None
    }
}

fn extend(
    p: &Poset,
    q: &Poset,
    order: &[usize],
    candidates: &[Vec<usize>],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&x) = order.get(depth) else {
        return true;
    };
    for &y in &candidates[x] {
        if used[y] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&w| {
            let v = map[w];
            p.leq(x, w) == q.leq(y, v) && p.leq(w, x) == q.leq(v, y)
        });
        if !consistent {
            continue;
        }
        map[x] = y;
        used[y] = true;
        if extend(p, q, order, candidates, depth + 1, map, used) {
            return true;
        }
        used[y] = false;
        map[x] = usize::MAX;
    }
    false
}
