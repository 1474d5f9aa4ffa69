use std::collections::HashSet;

use crate::bits::BitMatrix;
use crate::lattice::FiniteLattice;
use crate::order::QuasiOrder;
use crate::quasicolor::{AuxStructure, Coloring, Embedding};

use super::{trivial_aux, ConstructionError, ExtensionResult, StepKind, TraceStep};

/// Adds a color for each label of `k_labels` and a new greatest color
/// `top_label`.
///
/// The old lattice is placed between a fresh bottom and top. Each new color
/// `w` gets a chain `a_w ≺ b_w`; the top color gets `a ≺ b` together with an
/// extra atom `t ≺ b` so that collapsing its prime quotient collapses
/// everything; and three atom-coatoms `m1, m2, m3` complement every other
/// element. All of these are complements of the old elements. Old indices
/// are kept, new elements and colors are appended.
pub fn vertical_extend(
    a: &AuxStructure,
    k_labels: &[String],
    top_label: &str,
) -> Result<ExtensionResult, ConstructionError> {
    let mut used: HashSet<&str> = a.color_labels.iter().map(String::as_str).collect();
    for label in k_labels.iter().map(String::as_str).chain([top_label]) {
        if !used.insert(label) {
            return Err(ConstructionError::LabelCollision(label.to_string()));
        }
    }

    let old = &a.lattice;
    let n = old.size();
    let h = a.colors();
    let k = k_labels.len();
    let stage = (0..)
        .find(|s| old.index_of(&format!("0v{s}")).is_none())
        .expect("some stage tag is free");

    let bot = n;
    let top = n + 1;
    let a_w = |i: usize| n + 2 + 2 * i;
    let b_w = |i: usize| n + 3 + 2 * i;
    let a_top = n + 2 + 2 * k;
    let t = a_top + 1;
    let b_top = a_top + 2;
    let size = a_top + 6;

    let mut labels = old.labels().to_vec();
    labels.push(format!("0v{stage}"));
    labels.push(format!("1v{stage}"));
    for w in k_labels {
        labels.push(format!("a[{w}]"));
        labels.push(format!("b[{w}]"));
    }
    labels.push(format!("a[{top_label}]"));
    labels.push(format!("t[{top_label}]"));
    labels.push(format!("b[{top_label}]"));
    for i in 1..=3 {
        labels.push(format!("m{i}v{stage}"));
    }
    if let Some(dup) = duplicate(&labels) {
        return Err(ConstructionError::LabelCollision(dup));
    }

    let mut leq = BitMatrix::identity(size);
    for x in 0..n {
        for y in old.up_set(x).ones() {
            leq.set(x, y);
        }
    }
    for x in 0..size {
        leq.set(bot, x);
        leq.set(x, top);
    }
    for i in 0..k {
        leq.set(a_w(i), b_w(i));
    }
    leq.set(a_top, b_top);
    leq.set(t, b_top);
    let lattice = FiniteLattice::from_leq(leq, labels)?;

    let top_color = h + k;
    let colors = h + k + 1;
    let mut seed: Vec<(usize, usize)> = a.nu.pairs().collect();
    for c in 0..colors {
        seed.push((a.zero, c));
        seed.push((c, top_color));
    }
    let nu = QuasiOrder::quos(colors, &seed)?;

    let gamma = Coloring::from_fn(&lattice, |x, y| {
        if x < n && y < n {
            a.gamma.get(x, y)
        } else if x == y {
            a.zero
        } else if x >= a_w(0) && x < a_top && (x - a_w(0)) % 2 == 0 && y == x + 1 {
            h + (x - a_w(0)) / 2
        } else {
            top_color
        }
    });

    let mut color_labels = a.color_labels.clone();
    color_labels.extend(k_labels.iter().cloned());
    color_labels.push(top_label.to_string());
    let mut delta = a.delta.clone();
    let mut epsilon = a.epsilon.clone();
    for i in 0..k {
        delta.push(a_w(i));
        epsilon.push(b_w(i));
    }
    delta.push(a_top);
    epsilon.push(b_top);

    let aux = AuxStructure::new(lattice, gamma, nu, color_labels, delta, epsilon, a.zero)?;
    let mut parameters = k_labels.to_vec();
    parameters.push(top_label.to_string());
    Ok(ExtensionResult {
        embed: Embedding::identity(n, h),
        step: TraceStep {
            kind: StepKind::Vertical,
            parameters,
            before: n,
            after: size,
        },
        aux,
    })
}

/// The vertical extension of the trivial structure with no new middle
/// colors: nine elements, two colors.
pub fn vertical_skeleton() -> AuxStructure {
    vertical_extend(&trivial_aux("0"), &[], "1")
        .expect("fresh labels")
        .aux
}

fn duplicate(labels: &[String]) -> Option<String> {
    let mut seen = HashSet::new();
    labels.iter().find(|l| !seen.insert(l.as_str())).cloned()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::{cg, princ};
    use crate::lattice::N6Class;
    use crate::order::{poset_isomorphic, Poset};
    use crate::quasicolor::{aux_substructure, check_aux, complement_atoms};

    fn names(k: usize) -> Vec<String> {
        (1..=k).map(|i| format!("h{i}")).collect()
    }

    #[test]
    fn skeleton_has_nine_elements_and_two_congruences() {
        let a = vertical_skeleton();
        assert_eq!(a.lattice.size(), 9);
        assert!(check_aux(&a).passed(), "{}", check_aux(&a));
        assert!(poset_isomorphic(princ(&a.lattice).poset(), &Poset::chain(2)).is_some());
    }

    #[test]
    fn one_new_color_gives_a_three_chain() {
        let r = vertical_extend(&trivial_aux("0"), &names(1), "1").unwrap();
        assert_eq!(r.aux.lattice.size(), 11);
        assert!(check_aux(&r.aux).passed());
        assert!(poset_isomorphic(princ(&r.aux.lattice).poset(), &Poset::chain(3)).is_some());
    }

    #[test]
    fn k_new_colors_give_a_bounded_antichain() {
        for k in 0..=4 {
            let base = trivial_aux("0");
            let r = vertical_extend(&base, &names(k), "1").unwrap();
            assert_eq!(r.aux.lattice.size(), 2 * k + 9);
            assert!(check_aux(&r.aux).passed());
            assert!(aux_substructure(&base, &r.aux, &r.embed));
            let expected = if k == 0 {
                Poset::chain(2)
            } else {
                Poset::bounded_antichain(k)
            };
            assert!(poset_isomorphic(princ(&r.aux.lattice).poset(), &expected).is_some());
        }
    }

    #[test]
    fn new_parallel_colors_are_strong() {
        let r = vertical_extend(&trivial_aux("0"), &names(3), "1").unwrap();
        let a = &r.aux;
        for p in 1..a.colors() {
            for q in 1..a.colors() {
                if a.nu.parallel(p, q) {
                    let quad = (a.delta[p], a.epsilon[p], a.delta[q], a.epsilon[q]);
                    assert_eq!(a.lattice.classify_n6(quad), N6Class::StrongN6);
                }
            }
        }
    }

    #[test]
    fn top_color_generates_everything() {
        let a = vertical_skeleton();
        let one = a.one().unwrap();
        assert!(cg(&a.lattice, a.delta[one], a.epsilon[one]).is_full());
        // x0 and the three m's
        assert_eq!(complement_atoms(&a.lattice).len(), 4);
    }

    #[test]
    fn nested_extension_keeps_the_old_structure() {
        let first = vertical_extend(&trivial_aux("0"), &names(2), "1").unwrap();
        let second = vertical_extend(&first.aux, &["u".to_string()], "top").unwrap();
        assert!(check_aux(&second.aux).passed());
        assert!(aux_substructure(&first.aux, &second.aux, &second.embed));
        assert_eq!(
            second.aux.lattice.size(),
            first.aux.lattice.size() + 2 + 2 + 3 + 3
        );
    }

    #[test]
    fn label_collisions_are_rejected() {
        let err = vertical_extend(&trivial_aux("0"), &["0".to_string()], "1").unwrap_err();
        assert_eq!(err, ConstructionError::LabelCollision("0".into()));
        let err = vertical_extend(&trivial_aux("0"), &["x".to_string()], "x").unwrap_err();
        assert_eq!(err, ConstructionError::LabelCollision("x".into()));
    }
}
