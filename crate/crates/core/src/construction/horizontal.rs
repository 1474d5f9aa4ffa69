use crate::bits::BitMatrix;
use crate::lattice::{FiniteLattice, N6Class};
use crate::order::QuasiOrder;
use crate::quasicolor::{AuxStructure, Coloring, Embedding};

use super::bridge::{bridge_template, Role, P_PAIRS, Q_PAIRS};
use super::{ConstructionError, ExtensionResult, Precondition, StepKind, TraceStep};

/// Splices a bridge onto the spanning N6 `{0, a_p, b_p, a_q, b_q, 1}` and
/// adds `p ≤ q` to the color order.
///
/// Five elements `c, d, e, f, g` are appended. Order, join and meet follow
/// the case displays of the construction: pairs inside the old lattice or
/// inside the bridge keep their order, and mixed pairs go through the
/// nearest boundary element. The resulting tables are validated against the
/// order before anything else uses them.
pub fn horizontal_extend(
    a: &AuxStructure,
    p: usize,
    q: usize,
) -> Result<ExtensionResult, ConstructionError> {
    let refuse = |reason| ConstructionError::PreconditionViolated { p, q, reason };
    if p == a.zero || q == a.zero {
        return Err(refuse(Precondition::ZeroColor));
    }
    if !a.nu.parallel(p, q) {
        return Err(refuse(Precondition::NotParallel));
    }
    let old = &a.lattice;
    let quad = (a.delta[p], a.epsilon[p], a.delta[q], a.epsilon[q]);
    if old.classify_n6(quad) < N6Class::SpanningN6 {
        return Err(refuse(Precondition::NotSpanning));
    }
    let one = a.one().ok_or(ConstructionError::MissingTop)?;

    let tpl = bridge_template();
    let n = old.size();
    let size = n + 5;
    let mut at = [0usize; 11];
    at[Role::Zero.index()] = old.bottom();
    at[Role::Ap.index()] = quad.0;
    at[Role::Bp.index()] = quad.1;
    at[Role::Aq.index()] = quad.2;
    at[Role::Bq.index()] = quad.3;
    at[Role::One.index()] = old.top();
    for (i, r) in Role::INNER.iter().enumerate() {
        at[r.index()] = n + i;
    }
    let mut role: Vec<Option<Role>> = vec![None; size];
    for r in Role::ALL {
        role[at[r.index()]] = Some(r);
    }
    let is_new = |x: usize| x >= n;
    let t_leq = |r: Role, s: Role| tpl.lattice.leq(r.index(), s.index());

    let leq = |x: usize, y: usize| -> bool {
        match (role[x], role[y]) {
            _ if !is_new(x) && !is_new(y) => old.leq(x, y),
            (Some(rx), Some(ry)) => t_leq(rx, ry),
            (None, Some(ry)) => Role::BOUNDARY
                .iter()
                .any(|&z| old.leq(x, at[z.index()]) && t_leq(z, ry)),
            (Some(rx), None) => Role::BOUNDARY
                .iter()
                .any(|&z| t_leq(rx, z) && old.leq(at[z.index()], y)),
            (None, None) => unreachable!("both old"),
        }
    };
    let mut order = BitMatrix::new(size);
    for x in 0..size {
        for y in 0..size {
            if leq(x, y) {
                order.set(x, y);
            }
        }
    }

    // nearest boundary element above / below, the identity on old elements
    let up_to_boundary = |x: usize| match role[x] {
        Some(r) if is_new(x) => at[tpl.boundary_above(r).index()],
        _ => x,
    };
    let down_to_boundary = |x: usize| match role[x] {
        Some(r) if is_new(x) => at[tpl.boundary_below(r).index()],
        _ => x,
    };
    // nearest bridge element above / below, the identity on new elements
    let boundary: Vec<usize> = Role::BOUNDARY.iter().map(|r| at[r.index()]).collect();
    let least_above = |u: usize| -> Role {
        if is_new(u) {
            return role[u].unwrap();
        }
        let b = *boundary
            .iter()
            .filter(|&&z| old.leq(u, z))
            .find(|&&z| boundary.iter().all(|&w| !old.leq(u, w) || old.leq(z, w)))
            .expect("a least boundary element above each old element");
        role[b].unwrap()
    };
    let greatest_below = |u: usize| -> Role {
        if is_new(u) {
            return role[u].unwrap();
        }
        let b = *boundary
            .iter()
            .filter(|&&z| old.leq(z, u))
            .find(|&&z| boundary.iter().all(|&w| !old.leq(w, u) || old.leq(w, z)))
            .expect("a greatest boundary element below each old element");
        role[b].unwrap()
    };

    let g = at[Role::G.index()];
    let c = at[Role::C.index()];
    let mut join = vec![0; size * size];
    let mut meet = vec![0; size * size];
    for x in 0..size {
        for y in 0..size {
            let both_old = !is_new(x) && !is_new(y);
            join[x * size + y] = if both_old || !(order.get(x, g) && order.get(y, g)) {
                old.join(up_to_boundary(x), up_to_boundary(y))
            } else {
                at[tpl
                    .lattice
                    .join(least_above(x).index(), least_above(y).index())]
            };
            meet[x * size + y] = if both_old || !(order.get(c, x) && order.get(c, y)) {
                old.meet(down_to_boundary(x), down_to_boundary(y))
            } else {
                at[tpl
                    .lattice
                    .meet(greatest_below(x).index(), greatest_below(y).index())]
            };
        }
    }

    let (lp, lq) = (&a.color_labels[p], &a.color_labels[q]);
    let mut labels = old.labels().to_vec();
    for r in Role::INNER {
        labels.push(format!("{}[{lp},{lq}]", r.name()));
    }
    let lattice = FiniteLattice::from_tables(order, meet, join, labels)?;

    let colored = |pairs: &[(Role, Role)], x: usize, y: usize| {
        pairs
            .iter()
            .any(|&(r, s)| at[r.index()] == x && at[s.index()] == y)
    };
    let gamma = Coloring::from_fn(&lattice, |x, y| {
        if !is_new(x) && !is_new(y) {
            a.gamma.get(x, y)
        } else if colored(&P_PAIRS, x, y) {
            p
        } else if colored(&Q_PAIRS, x, y) {
            q
        } else if x == y {
            a.zero
        } else {
            one
        }
    });
    let mut seed: Vec<(usize, usize)> = a.nu.pairs().collect();
    seed.push((p, q));
    let nu = QuasiOrder::quos(a.colors(), &seed)?;

    let aux = AuxStructure::new(
        lattice,
        gamma,
        nu,
        a.color_labels.clone(),
        a.delta.clone(),
        a.epsilon.clone(),
        a.zero,
    )?;
    Ok(ExtensionResult {
        embed: Embedding::identity(n, a.colors()),
        step: TraceStep {
            kind: StepKind::Horizontal,
            parameters: vec![lp.clone(), lq.clone()],
            before: n,
            after: size,
        },
        aux,
    })
}
