//! Quasi-colored lattices and auxiliary structures, with exhaustive checkers
//! for the quasi-coloring conditions, the chain join law and the eight
//! auxiliary-structure axioms.

mod check;

use std::fmt;

use thiserror::Error;

use crate::lattice::{FiniteLattice, OrderedPair};
use crate::order::{OrderError, QuasiOrder};

pub use check::{
    aux_substructure, check_aux, check_aux_against, check_aux_with, check_chain_lemma,
    check_maximal_chains, check_quasicolored, colors_to_princ, complement_atoms, Embedding,
};

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("color {0} has no preimage")]
    NotSurjective(usize),
    #[error("ordered pair ({0}, {1}) is uncolored")]
    Uncolored(usize, usize),
    #[error("({0}, {1}) is not an ordered pair")]
    NotOrdered(usize, usize),
    #[error("color {color} out of range for {size} colors")]
    ColorOutOfRange { color: usize, size: usize },
    #[error("elements do not form an increasing chain at position {0}")]
    NotAChain(usize),
    #[error("{0}")]
    Shape(String),
    #[error(transparent)]
    Order(#[from] OrderError),
}

/// `γ: Pairs(L) → H`, stored densely as an `n × n` table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    n: usize,
    table: Vec<u32>,
}

impl Coloring {
    /// Fills every ordered pair of `l` with `color(x, y)`.
    pub fn from_fn(l: &FiniteLattice, mut color: impl FnMut(usize, usize) -> usize) -> Self {
        let n = l.size();
        let mut table = vec![NONE; n * n];
        for x in 0..n {
            for y in l.up_set(x).ones() {
                table[x * n + y] = color(x, y) as u32;
            }
        }
        Coloring { n, table }
    }

    /// Builds from explicit entries and checks that they cover exactly
    /// `Pairs(l)` with colors below `colors`.
    pub fn from_entries(
        l: &FiniteLattice,
        colors: usize,
        entries: &[(usize, usize, usize)],
    ) -> Result<Self, ColoringError> {
        let n = l.size();
        let mut table = vec![NONE; n * n];
        for &(x, y, c) in entries {
            if x >= n || y >= n || !l.leq(x, y) {
                return Err(ColoringError::NotOrdered(x, y));
            }
            if c >= colors {
                return Err(ColoringError::ColorOutOfRange {
                    color: c,
                    size: colors,
                });
            }
            table[x * n + y] = c as u32;
        }
        for p in l.ordered_pairs() {
            if table[p.lo * n + p.hi] == NONE {
                return Err(ColoringError::Uncolored(p.lo, p.hi));
            }
        }
        Ok(Coloring { n, table })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Color of the ordered pair `(x, y)`.
    ///
    /// # Panics
    /// If `(x, y)` is not an ordered pair of the lattice.
    #[inline]
    pub fn get(&self, x: usize, y: usize) -> usize {
        let c = self.table[x * self.n + y];
        assert!(c != NONE, "({x}, {y}) is not an ordered pair");
        c as usize
    }

    pub fn try_get(&self, x: usize, y: usize) -> Option<usize> {
        match self.table.get(x * self.n + y) {
            Some(&c) if c != NONE && x < self.n && y < self.n => Some(c as usize),
            _ => None,
        }
    }

    /// `(x, y, color)` for every ordered pair, row-major.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.table
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != NONE)
            .map(move |(i, &c)| (i / self.n, i % self.n, c as usize))
    }

    /// Overwrites the color of an existing ordered pair.
    pub fn set(&mut self, x: usize, y: usize, color: usize) {
        let slot = &mut self.table[x * self.n + y];
        assert!(*slot != NONE, "({x}, {y}) is not an ordered pair");
        *slot = color as u32;
    }

    /// First color in `0..colors` that no pair receives.
    pub fn missing_color(&self, colors: usize) -> Option<usize> {
        let mut hit = vec![false; colors];
        for (_, _, c) in self.entries() {
            if c < colors {
                hit[c] = true;
            }
        }
        hit.iter().position(|h| !h)
    }
}

/// `⟨L; γ, H, ν, δ, ε⟩`. Colors are the indices of `nu`; `zero` is the
/// designated `0_H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuxStructure {
    pub lattice: FiniteLattice,
    pub gamma: Coloring,
    pub nu: QuasiOrder,
    pub color_labels: Vec<String>,
    pub delta: Vec<usize>,
    pub epsilon: Vec<usize>,
    pub zero: usize,
}

impl AuxStructure {
    /// Checks that the parts fit together; the axioms are left to
    /// [`check_aux`].
    pub fn new(
        lattice: FiniteLattice,
        gamma: Coloring,
        nu: QuasiOrder,
        color_labels: Vec<String>,
        delta: Vec<usize>,
        epsilon: Vec<usize>,
        zero: usize,
    ) -> Result<Self, ColoringError> {
        let h = nu.size();
        let n = lattice.size();
        if color_labels.len() != h || delta.len() != h || epsilon.len() != h {
            return Err(ColoringError::Shape(format!(
                "{h} colors but {} labels, {} delta and {} epsilon entries",
                color_labels.len(),
                delta.len(),
                epsilon.len()
            )));
        }
        if zero >= h {
            return Err(ColoringError::ColorOutOfRange {
                color: zero,
                size: h,
            });
        }
        if gamma.size() != n {
            return Err(ColoringError::Shape(format!(
                "coloring is over {} elements, lattice has {n}",
                gamma.size()
            )));
        }
        if let Some(&x) = delta.iter().chain(&epsilon).find(|&&x| x >= n) {
            return Err(ColoringError::Shape(format!("element {x} out of range")));
        }
        for p in lattice.ordered_pairs() {
            match gamma.try_get(p.lo, p.hi) {
                None => return Err(ColoringError::Uncolored(p.lo, p.hi)),
                Some(c) if c >= h => {
                    return Err(ColoringError::ColorOutOfRange { color: c, size: h })
                }
                Some(_) => {}
            }
        }
        Ok(AuxStructure {
            lattice,
            gamma,
            nu,
            color_labels,
            delta,
            epsilon,
            zero,
        })
    }

    pub fn colors(&self) -> usize {
        self.nu.size()
    }

    /// `(δ(p), ε(p))`.
    pub fn prime(&self, p: usize) -> OrderedPair {
        OrderedPair::new(self.delta[p], self.epsilon[p])
    }

    /// The unique greatest color, if any.
    pub fn one(&self) -> Option<usize> {
        match self.nu.greatest_elements()[..] {
            [g] => Some(g),
            _ => None,
        }
    }

    pub fn color_index(&self, label: &str) -> Option<usize> {
        self.color_labels.iter().position(|l| l == label)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    A1,
    A2,
    A3,
    A4,
    A5,
    A6,
    A7,
    A8,
}

impl Axiom {
    pub const ALL: [Axiom; 8] = [
        Axiom::A1,
        Axiom::A2,
        Axiom::A3,
        Axiom::A4,
        Axiom::A5,
        Axiom::A6,
        Axiom::A7,
        Axiom::A8,
    ];
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})", self)
    }
}

/// Which half of the quasi-coloring condition failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Clause {
    /// `γ(p1) ≤ν γ(p2)` but `cg(p1) ⊄ cg(p2)`.
    C1,
    /// `cg(p1) ⊆ cg(p2)` but `γ(p1) ≰ν γ(p2)`.
    C2,
}

/// Evidence that an axiom fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Pairs {
        clause: Clause,
        first: OrderedPair,
        second: OrderedPair,
    },
    Uncovered(usize),
    Color(usize),
    Colors(usize, usize),
    Count(usize),
    Least(Vec<usize>),
    Greatest(Vec<usize>),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Pairs {
                clause,
                first,
                second,
            } => write!(
                f,
                "{clause:?} fails for ({}, {}) against ({}, {})",
                first.lo, first.hi, second.lo, second.hi
            ),
            Witness::Uncovered(c) => write!(f, "color {c} has no preimage"),
            Witness::Color(c) => write!(f, "color {c}"),
            Witness::Colors(p, q) => write!(f, "colors {p} and {q}"),
            Witness::Count(k) => write!(f, "only {k} qualifying elements"),
            Witness::Least(v) => write!(f, "least colors {v:?}"),
            Witness::Greatest(v) => write!(f, "greatest colors {v:?}"),
        }
    }
}

/// Outcome of one axiom: `None` on success.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomResult {
    pub axiom: Axiom,
    pub failure: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AxiomReport {
    pub results: Vec<AxiomResult>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.failure.is_none())
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomResult> {
        self.results.iter().filter(|r| r.failure.is_some())
    }

    pub fn get(&self, axiom: Axiom) -> Option<&AxiomResult> {
        self.results.iter().find(|r| r.axiom == axiom)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.results.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            match &r.failure {
                None => write!(f, "{} ok", r.axiom)?,
                Some(w) => write!(f, "{} FAILED: {w}", r.axiom)?,
            }
        }
        Ok(())
    }
}
