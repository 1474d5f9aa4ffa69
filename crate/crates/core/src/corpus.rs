//! Test inputs: every bounded ordered set up to a size, and seeded random
//! ones. Element 0 is always the zero and the last element the top.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bits::BitMatrix;
use crate::order::{poset_isomorphic, Poset, QuasiOrder};

/// All ordered sets on `m` elements, one per isomorphism class.
pub fn all_posets(m: usize) -> Vec<Poset> {
    let slots: Vec<(usize, usize)> = (0..m)
        .flat_map(|i| (0..m).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut found: Vec<Poset> = Vec::new();
    for mask in 0u64..1 << slots.len() {
        let mut rel = BitMatrix::identity(m);
        for (bit, &(i, j)) in slots.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                rel.set(i, j);
            }
        }
        let Ok(order) = QuasiOrder::from_matrix(rel) else {
            continue;
        };
        let Ok(p) = Poset::new(order) else {
            continue;
        };
        if !found.iter().any(|q| poset_isomorphic(q, &p).is_some()) {
            found.push(p);
        }
    }
    found
}

/// `inner` with a new zero below and a new top above; an empty `inner`
/// gives the two-element chain.
pub fn bound(inner: &Poset) -> Poset {
    let m = inner.size();
    let n = m + 2;
    let mut seed: Vec<(usize, usize)> = (0..n).flat_map(|x| [(0, x), (x, n - 1)]).collect();
    seed.extend(inner.order().pairs().map(|(x, y)| (x + 1, y + 1)));
    Poset::new(QuasiOrder::quos(n, &seed).expect("in range")).expect("bounding keeps antisymmetry")
}

/// Every bounded ordered set with at most `max` elements, up to isomorphism.
pub fn exhaustive_bounded(max: usize) -> Vec<Poset> {
    let mut out = Vec::new();
    if max >= 1 {
        out.push(Poset::chain(1));
    }
    for n in 2..=max {
        out.extend(all_posets(n - 2).iter().map(bound));
    }
    out
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A bounded ordered set with `n ≥ 1` elements; the inner part is a random
/// order whose edge density is itself random.
pub fn random_bounded(rng: &mut impl Rng, n: usize) -> Poset {
    assert!(n >= 1);
    if n == 1 {
        return Poset::chain(1);
    }
    let m = n - 2;
    let density = rng.gen_range(0.1..0.7);
    let mut seed = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            if rng.gen_bool(density) {
                seed.push((i, j));
            }
        }
    }
    // shuffle indices so the linear order of labels is not a linear extension
    let mut perm: Vec<usize> = (0..m).collect();
    perm.shuffle(rng);
    let seed: Vec<_> = seed.into_iter().map(|(i, j)| (perm[i], perm[j])).collect();
    let inner = Poset::new(QuasiOrder::quos(m, &seed).expect("in range")).expect("acyclic");
    bound(&inner)
}

/// A random bounded ordered set of size `1..=max`.
pub fn random_bounded_upto(rng: &mut impl Rng, max: usize) -> Poset {
    let n = rng.gen_range(1..=max);
    random_bounded(rng, n)
}

/// A random bounded ordered set together with a strictly increasing chain
/// `0 = c_0 < … < c_{k-1} = top` of `k` generators.
pub fn random_ideal_chain(rng: &mut impl Rng, max: usize, k: usize) -> (Poset, Vec<usize>) {
    assert!(k >= 2 && max >= k);
    loop {
        let n = rng.gen_range(k..=max);
        let p = random_bounded(rng, n);
        let (zero, top) = (0, n - 1);
        let mut walk = vec![zero];
        while let Some(&x) = walk.last().filter(|&&x| x != top) {
            let up = p.upper_covers(x);
            walk.push(*up.choose(rng).expect("below the top"));
        }
        if walk.len() < k {
            continue;
        }
        let mut middle: Vec<usize> = walk[1..walk.len() - 1]
            .choose_multiple(rng, k - 2)
            .copied()
            .collect();
        middle.sort_by_key(|&x| walk.iter().position(|&w| w == x));
        let mut chain = vec![zero];
        chain.extend(middle);
        chain.push(top);
        return (p, chain);
    }
}
