use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::congruence::{con_gen, princ_with, PrincPoset};
use crate::lattice::{FiniteLattice, N6Class, OrderedPair};
use crate::order::{IsoWitness, QuasiOrder};
use crate::par::{map_range, Exec};

use super::{
    AuxStructure, Axiom, AxiomReport, AxiomResult, Clause, Coloring, ColoringError, Witness,
};

/// Index maps from a smaller structure into a larger one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub lattice: Vec<usize>,
    pub colors: Vec<usize>,
}

impl Embedding {
    pub fn identity(elements: usize, colors: usize) -> Self {
        Embedding {
            lattice: (0..elements).collect(),
            colors: (0..colors).collect(),
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Embedding) -> Embedding {
        Embedding {
            lattice: self.lattice.iter().map(|&x| other.lattice[x]).collect(),
            colors: self.colors.iter().map(|&c| other.colors[c]).collect(),
        }
    }
}

/// Exhaustive (C1)/(C2) check. Pairs are grouped by `(γ, cg)` first, so the
/// quadratic comparison runs over the distinct combinations only.
pub fn check_quasicolored(
    l: &FiniteLattice,
    gamma: &Coloring,
    nu: &QuasiOrder,
) -> Result<Option<Witness>, ColoringError> {
    if let Some(c) = gamma.missing_color(nu.size()) {
        return Err(ColoringError::NotSurjective(c));
    }
    let p = princ_with(l, Exec::default());
    Ok(quasicolor_failure(l, gamma, nu, &p))
}

fn quasicolor_failure(
    l: &FiniteLattice,
    gamma: &Coloring,
    nu: &QuasiOrder,
    princ: &PrincPoset,
) -> Option<Witness> {
    let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
    let mut combos: Vec<(usize, usize, OrderedPair)> = Vec::new();
    for pair in l.ordered_pairs() {
        let c = gamma.get(pair.lo, pair.hi);
        let k = princ
            .index_of_pair(pair.lo, pair.hi)
            .expect("ordered pairs have a principal congruence");
        seen.entry((c, k)).or_insert_with(|| {
            combos.push((c, k, pair));
            combos.len() - 1
        });
    }
    for &(c1, k1, first) in &combos {
        for &(c2, k2, second) in &combos {
            let colored = nu.leq(c1, c2);
            let contained = princ.contained(k1, k2);
            if colored != contained {
                let clause = if colored { Clause::C1 } else { Clause::C2 };
                return Some(Witness::Pairs {
                    clause,
                    first,
                    second,
                });
            }
        }
    }
    None
}

/// The join law along a chain `u_0 ≤ … ≤ u_n`: `γ(u_0, u_n)` is above every
/// step color and below each of their common upper bounds.
pub fn check_chain_lemma(
    l: &FiniteLattice,
    gamma: &Coloring,
    nu: &QuasiOrder,
    chain: &[usize],
) -> Result<bool, ColoringError> {
    if let Some(i) = (1..chain.len()).find(|&i| !l.leq(chain[i - 1], chain[i])) {
        return Err(ColoringError::NotAChain(i));
    }
    let (Some(&first), Some(&last)) = (chain.first(), chain.last()) else {
        return Ok(true);
    };
    let mut bounds = full_set(nu.size());
    for w in chain.windows(2) {
        bounds.intersect_with(nu.up_set(gamma.get(w[0], w[1])));
    }
    Ok(join_law_holds(nu, gamma.get(first, last), &bounds))
}

fn full_set(n: usize) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    s.insert_range(..);
    s
}

fn join_law_holds(nu: &QuasiOrder, whole: usize, bounds: &FixedBitSet) -> bool {
    bounds.contains(whole) && bounds.is_subset(nu.up_set(whole))
}

/// Runs the join law on every maximal chain of `a.lattice` by depth-first
/// search, carrying the common upper bounds of the step colors along the
/// path. Returns the first failing chain and the number of chains visited.
pub fn check_maximal_chains(a: &AuxStructure) -> (usize, Option<Vec<usize>>) {
    let l = &a.lattice;
    let whole = a.gamma.get(l.bottom(), l.top());
    let mut path = vec![l.bottom()];
    let mut count = 0;
    let failure = chains_dfs(a, whole, &mut path, full_set(a.colors()), &mut count);
    (count, failure)
}

fn chains_dfs(
    a: &AuxStructure,
    whole: usize,
    path: &mut Vec<usize>,
    bounds: FixedBitSet,
    count: &mut usize,
) -> Option<Vec<usize>> {
    let x = *path.last().unwrap();
    if x == a.lattice.top() {
        *count += 1;
        return (!join_law_holds(&a.nu, whole, &bounds)).then(|| path.clone());
    }
    for &y in a.lattice.upper_covers(x) {
        let mut next = bounds.clone();
        next.intersect_with(a.nu.up_set(a.gamma.get(x, y)));
        path.push(y);
        let found = chains_dfs(a, whole, path, next, count);
        path.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Evaluates all eight axioms.
pub fn check_aux(a: &AuxStructure) -> AxiomReport {
    check_aux_with(a, Exec::default())
}

pub fn check_aux_with(a: &AuxStructure, exec: Exec) -> AxiomReport {
    let p = princ_with(&a.lattice, exec);
    check_aux_against(a, &p, exec)
}

/// As [`check_aux`], reusing an already computed `Princ L`.
pub fn check_aux_against(a: &AuxStructure, princ: &PrincPoset, exec: Exec) -> AxiomReport {
    let l = &a.lattice;
    let h = a.colors();
    let n = l.size();
    let result = |axiom, failure| AxiomResult { axiom, failure };
    let mut results = Vec::with_capacity(8);

    let a1 = match a.gamma.missing_color(h) {
        Some(c) => Some(Witness::Uncovered(c)),
        None => quasicolor_failure(l, &a.gamma, &a.nu, princ),
    };
    results.push(result(Axiom::A1, a1));

    let least = a.nu.least_elements();
    let greatest = a.nu.greatest_elements();
    let a2 = if least != [a.zero] {
        Some(Witness::Least(least))
    } else if greatest.len() > 1 {
        Some(Witness::Greatest(greatest))
    } else {
        None
    };
    results.push(result(Axiom::A2, a2));

    let a3 = (0..h)
        .find(|&c| {
            let (d, e) = (a.delta[c], a.epsilon[c]);
            if c == a.zero {
                d != e
            } else {
                !l.covers(d, e)
            }
        })
        .map(Witness::Color);
    results.push(result(Axiom::A3, a3));

    let a4 = (0..h)
        .find(|&c| {
            let (d, e) = (a.delta[c], a.epsilon[c]);
            !l.leq(d, e) || a.gamma.get(d, e) != c
        })
        .map(Witness::Color);
    results.push(result(Axiom::A4, a4));

    let nonzero: Vec<usize> = (0..h).filter(|&c| c != a.zero).collect();
    let pairs: Vec<(usize, usize)> = nonzero
        .iter()
        .enumerate()
        .flat_map(|(i, &p)| nonzero[i + 1..].iter().map(move |&q| (p, q)))
        .collect();
    let classes = map_range(exec, pairs.len(), |i| {
        let (p, q) = pairs[i];
        l.classify_n6((a.delta[p], a.epsilon[p], a.delta[q], a.epsilon[q]))
    });
    let a5 = pairs
        .iter()
        .zip(&classes)
        .find(|(_, &class)| class == N6Class::NotN6)
        .map(|(&(p, q), _)| Witness::Colors(p, q));
    results.push(result(Axiom::A5, a5));

    let a6 = pairs
        .iter()
        .zip(&classes)
        .find(|(&(p, q), &class)| a.nu.parallel(p, q) && class == N6Class::SpanningN6)
        .map(|(&(p, q), _)| Witness::Colors(p, q));
    results.push(result(Axiom::A6, a6));

    let a7 = if n > 1 {
        let count = complement_atoms(l).len();
        (count < 3).then_some(Witness::Count(count))
    } else {
        None
    };
    results.push(result(Axiom::A7, a7));

    let a8 = match a.one() {
        Some(one) if n > 1 => {
            let gens: Vec<(usize, usize)> = (0..h)
                .filter(|&c| c != one)
                .map(|c| (a.delta[c], a.epsilon[c]))
                .collect();
            con_gen(l, &gens).is_full().then_some(Witness::Color(one))
        }
        _ => None,
    };
    results.push(result(Axiom::A8, a8));

    AxiomReport { results }
}

/// Elements `0 ≺ x ≺ 1` that complement every element outside
/// `{0, 1, x}`.
pub fn complement_atoms(l: &FiniteLattice) -> Vec<usize> {
    let (bot, top) = (l.bottom(), l.top());
    l.upper_covers(bot)
        .iter()
        .copied()
        .filter(|&x| x != top && l.covers(x, top))
        .filter(|&x| {
            (0..l.size()).all(|y| y == bot || y == top || y == x || l.are_complements(x, y))
        })
        .collect()
}

/// The map `cg(x, y) ↦ [γ(x, y)]` from `Princ L` onto the quotient of the
/// colors by `ν ∩ ν⁻¹`, checked to be an order isomorphism.
pub fn colors_to_princ(a: &AuxStructure, princ: &PrincPoset) -> Option<IsoWitness> {
    let quotient = a.nu.theta_quotient();
    let map: Vec<usize> = princ
        .representatives()
        .iter()
        .map(|p| quotient.projection[a.gamma.get(p.lo, p.hi)])
        .collect();
    let w = IsoWitness { map };
    w.verify(princ.poset(), &quotient.poset).then_some(w)
}

/// `small` is a substructure of `big` under `embed`: the lattice map is an
/// injective lattice homomorphism, `ν ⊆ ν'` along the color map, zeros
/// correspond, and `γ`, `δ`, `ε` are restrictions.
pub fn aux_substructure(small: &AuxStructure, big: &AuxStructure, embed: &Embedding) -> bool {
    let (l, m) = (&small.lattice, &big.lattice);
    let (el, eh) = (&embed.lattice, &embed.colors);
    if el.len() != l.size() || eh.len() != small.colors() {
        return false;
    }
    if !injective_into(el, m.size()) || !injective_into(eh, big.colors()) {
        return false;
    }
    let n = l.size();
    let homomorphic = (0..n).all(|x| {
        (0..n).all(|y| {
            m.meet(el[x], el[y]) == el[l.meet(x, y)] && m.join(el[x], el[y]) == el[l.join(x, y)]
        })
    });
    let order_kept = (0..small.colors())
        .all(|p| (0..small.colors()).all(|q| !small.nu.leq(p, q) || big.nu.leq(eh[p], eh[q])));
    let colors_kept = small
        .gamma
        .entries()
        .all(|(x, y, c)| big.gamma.try_get(el[x], el[y]) == Some(eh[c]));
    let primes_kept = (0..small.colors()).all(|p| {
        big.delta[eh[p]] == el[small.delta[p]] && big.epsilon[eh[p]] == el[small.epsilon[p]]
    });
    homomorphic && order_kept && eh[small.zero] == big.zero && colors_kept && primes_kept
}

fn injective_into(map: &[usize], size: usize) -> bool {
    let mut hit = vec![false; size];
    map.iter()
        .all(|&x| x < size && !std::mem::replace(&mut hit[x], true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::named;

    fn two_chain_aux(top_color: usize, colors: usize) -> AuxStructure {
        let l = named::chain(2);
        let gamma = Coloring::from_fn(&l, |x, y| if x == y { 0 } else { top_color });
        let nu = QuasiOrder::quos(colors, &[(0, colors - 1)]).unwrap();
        let labels = (0..colors).map(|c| c.to_string()).collect();
        let mut epsilon = vec![1; colors];
        epsilon[0] = 0;
        AuxStructure::new(l, gamma, nu, labels, vec![0; colors], epsilon, 0).unwrap()
    }

    #[test]
    fn one_element_lattice_is_quasicolored() {
        let l = named::chain(1);
        let gamma = Coloring::from_fn(&l, |_, _| 0);
        let nu = QuasiOrder::identity(1);
        assert_eq!(check_quasicolored(&l, &gamma, &nu), Ok(None));
    }

    #[test]
    fn two_chain_quasicolorings() {
        let l = named::chain(2);
        let two = QuasiOrder::quos(2, &[(0, 1)]).unwrap();
        let good = Coloring::from_fn(&l, |x, y| usize::from(x != y));
        assert_eq!(check_quasicolored(&l, &good, &two), Ok(None));

        let flat = Coloring::from_fn(&l, |_, _| 0);
        assert_eq!(
            check_quasicolored(&l, &flat, &two),
            Err(ColoringError::NotSurjective(1))
        );
        let w = check_quasicolored(&l, &flat, &QuasiOrder::identity(1)).unwrap();
        assert!(matches!(
            w,
            Some(Witness::Pairs {
                clause: Clause::C1,
                ..
            })
        ));
    }

    #[test]
    fn chain_lemma_trivial_chains() {
        let a = two_chain_aux(1, 2);
        for x in 0..2 {
            assert_eq!(
                check_chain_lemma(&a.lattice, &a.gamma, &a.nu, &[x]),
                Ok(true)
            );
        }
        assert_eq!(
            check_chain_lemma(&a.lattice, &a.gamma, &a.nu, &[0, 1]),
            Ok(true)
        );
        assert_eq!(
            check_chain_lemma(&a.lattice, &a.gamma, &a.nu, &[1, 0]),
            Err(ColoringError::NotAChain(1))
        );
    }

    #[test]
    fn degenerate_prime_quotient_fails_a3() {
        let mut a = two_chain_aux(1, 2);
        a.epsilon[1] = 0;
        let report = check_aux(&a);
        assert_eq!(
            report.get(Axiom::A3).unwrap().failure,
            Some(Witness::Color(1))
        );
        assert!(!report.passed());
    }

    #[test]
    fn two_chain_lacks_complement_atoms() {
        // everything else about the 2-chain structure is fine, but it has no
        // atoms strictly below the top
        let report = check_aux(&two_chain_aux(1, 2));
        let failing: Vec<Axiom> = report.failures().map(|r| r.axiom).collect();
        assert_eq!(failing, vec![Axiom::A7]);
    }

    #[test]
    fn identity_embedding_is_a_substructure() {
        let a = two_chain_aux(1, 2);
        assert!(aux_substructure(&a, &a, &Embedding::identity(2, 2)));
        let swapped = Embedding {
            lattice: vec![1, 0],
            colors: vec![0, 1],
        };
        assert!(!aux_substructure(&a, &a, &swapped));
    }

    #[test]
    fn lemma_map_on_two_chain() {
        let a = two_chain_aux(1, 2);
        let p = crate::congruence::princ(&a.lattice);
        let w = colors_to_princ(&a, &p).unwrap();
        assert_eq!(w.map, vec![0, 1]);
    }
}
