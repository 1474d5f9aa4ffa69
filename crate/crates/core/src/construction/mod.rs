//! Building auxiliary structures: the trivial start, vertical extensions
//! that add colors, horizontal extensions that splice in a bridge, and the
//! drivers that represent a given ordered set.

mod bridge;
mod drivers;
mod horizontal;
mod vertical;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{FiniteLattice, LatticeError};
use crate::order::{OrderError, QuasiOrder};
use crate::quasicolor::{AuxStructure, Coloring, ColoringError, Embedding};

pub use bridge::{bridge_template, BridgeTemplate, Role};
pub use drivers::{
    combin_extend, principal_generator, represent, represent_chain, represent_observed,
    CombinResult, Representation, Stage, Stages,
};
pub use horizontal::horizontal_extend;
pub use vertical::{vertical_extend, vertical_skeleton};

/// Why a horizontal extension was refused.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precondition {
    ZeroColor,
    NotParallel,
    NotSpanning,
}

impl std::fmt::Display for Precondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Precondition::ZeroColor => "one of the colors is the least color",
            Precondition::NotParallel => "the colors are comparable",
            Precondition::NotSpanning => "the prime quotients do not form a spanning N6",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("the ordered set has no least element")]
    NoZero,
    #[error("the ordered set is not directed (a finite directed set with zero has a top)")]
    NotDirected,
    #[error("cannot bridge colors {p} and {q}: {reason}")]
    PreconditionViolated {
        p: usize,
        q: usize,
        reason: Precondition,
    },
    #[error("the color set has no greatest element")]
    MissingTop,
    #[error("label `{0}` is already in use")]
    LabelCollision(String),
    #[error("the colors do not embed as an order ideal")]
    NotAnIdeal,
    #[error("not an increasing chain of principal ideals starting at zero: {0}")]
    NotAChainOfIdeals(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Order(#[from] OrderError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StepKind {
    Vertical,
    Horizontal,
}

/// One extension step: its kind, the color labels it was given and the
/// lattice size before and after.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub kind: StepKind,
    pub parameters: Vec<String>,
    pub before: usize,
    pub after: usize,
}

/// An extended structure and the maps carrying the input into it.
#[derive(Debug, Clone)]
pub struct ExtensionResult {
    pub aux: AuxStructure,
    pub embed: Embedding,
    pub step: TraceStep,
}

/// The one-element lattice with the single color `zero_label`.
pub fn trivial_aux(zero_label: &str) -> AuxStructure {
    let lattice = FiniteLattice::from_covers(vec!["x0".into()], &[]).expect("one element");
    let gamma = Coloring::from_fn(&lattice, |_, _| 0);
    AuxStructure::new(
        lattice,
        gamma,
        QuasiOrder::identity(1),
        vec![zero_label.to_string()],
        vec![0],
        vec![0],
        0,
    )
    .expect("the trivial structure is well formed")
}
