//! The eleven-element bridge lattice.
//!
//! Its boundary `{0, a_p, b_p, a_q, b_q, 1}` is a copy of N6; the five
//! inner elements force `cg(a_p, b_p) ⊆ cg(a_q, b_q)` through the
//! perspectivities `(c, d) ~ (c, e) ~ (a_q, b_q)`, `(d, e) ~ (f, g)` and
//! `(f, g) ~ (a_p, b_p)`.

use crate::lattice::FiniteLattice;

/// Positions in the template, also used as role tags when the template is
/// spliced into a larger lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    Zero = 0,
    Ap,
    Bp,
    Aq,
    Bq,
    C,
    D,
    E,
    F,
    G,
    One,
}

impl Role {
    pub const ALL: [Role; 11] = [
        Role::Zero,
        Role::Ap,
        Role::Bp,
        Role::Aq,
        Role::Bq,
        Role::C,
        Role::D,
        Role::E,
        Role::F,
        Role::G,
        Role::One,
    ];
    pub const BOUNDARY: [Role; 6] = [
        Role::Zero,
        Role::Ap,
        Role::Bp,
        Role::Aq,
        Role::Bq,
        Role::One,
    ];
    pub const INNER: [Role; 5] = [Role::C, Role::D, Role::E, Role::F, Role::G];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn is_boundary(self) -> bool {
        !Role::INNER.contains(&self)
    }

    pub fn name(self) -> &'static str {
        ROLE_NAMES[self.index()]
    }
}

const ROLE_NAMES: [&str; 11] = [
    "0", "a_p", "b_p", "a_q", "b_q", "c", "d", "e", "f", "g", "1",
];

const COVERS: [(Role, Role); 15] = [
    (Role::Zero, Role::Ap),
    (Role::Zero, Role::C),
    (Role::C, Role::D),
    (Role::C, Role::Aq),
    (Role::D, Role::E),
    (Role::D, Role::F),
    (Role::Ap, Role::Bp),
    (Role::Ap, Role::F),
    (Role::E, Role::Bq),
    (Role::E, Role::G),
    (Role::Aq, Role::Bq),
    (Role::F, Role::G),
    (Role::Bp, Role::G),
    (Role::Bq, Role::One),
    (Role::G, Role::One),
];

/// Pairs colored `p` by a horizontal extension.
pub const P_PAIRS: [(Role, Role); 2] = [(Role::D, Role::E), (Role::F, Role::G)];
/// Pairs colored `q` by a horizontal extension.
pub const Q_PAIRS: [(Role, Role); 2] = [(Role::C, Role::D), (Role::C, Role::E)];

/// The template lattice, indexed by [`Role::index`].
#[derive(Clone, Debug)]
pub struct BridgeTemplate {
    pub lattice: FiniteLattice,
}

impl BridgeTemplate {
    pub fn at(&self, r: Role) -> usize {
        r.index()
    }

    /// Pairs with a designated color role: `(lo, hi, colored_q)`.
    pub fn colored_pairs(&self) -> Vec<(Role, Role, bool)> {
        P_PAIRS
            .iter()
            .map(|&(x, y)| (x, y, false))
            .chain(Q_PAIRS.iter().map(|&(x, y)| (x, y, true)))
            .collect()
    }

    /// Least boundary element above `r`.
    pub fn boundary_above(&self, r: Role) -> Role {
        self.boundary_extreme(r, true)
    }

    /// Greatest boundary element below `r`.
    pub fn boundary_below(&self, r: Role) -> Role {
        self.boundary_extreme(r, false)
    }

    fn boundary_extreme(&self, r: Role, above: bool) -> Role {
        let l = &self.lattice;
        let related = |b: Role| {
            if above {
                l.leq(r.index(), b.index())
            } else {
                l.leq(b.index(), r.index())
            }
        };
        let candidates: Vec<Role> = Role::BOUNDARY.into_iter().filter(|&b| related(b)).collect();
        let extreme = candidates
            .iter()
            .copied()
            .find(|&b| {
                candidates.iter().all(|&o| {
                    if above {
                        l.leq(b.index(), o.index())
                    } else {
                        l.leq(o.index(), b.index())
                    }
                })
            })
            .expect("boundary projections exist in the template");
        extreme
    }
}

pub fn bridge_template() -> BridgeTemplate {
    let labels = ROLE_NAMES.iter().map(|s| s.to_string()).collect();
    let covers: Vec<(usize, usize)> = COVERS
        .iter()
        .map(|&(x, y)| (x.index(), y.index()))
        .collect();
    let lattice =
        FiniteLattice::from_covers(labels, &covers).expect("the bridge order is a lattice");
    BridgeTemplate { lattice }
}
