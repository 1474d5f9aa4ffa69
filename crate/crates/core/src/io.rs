//! JSON formats. Elements are referred to by label everywhere, so files are
//! readable and survive reindexing.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::congruence::PrincPoset;
use crate::construction::TraceStep;
use crate::lattice::{FiniteLattice, LatticeError};
use crate::order::{OrderError, Poset, QuasiOrder};
use crate::quasicolor::{AuxStructure, Coloring, ColoringError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown element `{0}`")]
    UnknownLabel(String),
    #[error("duplicate element `{0}`")]
    DuplicateLabel(String),
    #[error("declared {which} `{declared}` but the order gives `{actual}`")]
    WrongBound {
        which: &'static str,
        declared: String,
        actual: String,
    },
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

struct Index<'a>(HashMap<&'a str, usize>);

impl<'a> Index<'a> {
    fn new(labels: &'a [String]) -> Result<Self, IoError> {
        let mut map = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if map.insert(l.as_str(), i).is_some() {
                return Err(IoError::DuplicateLabel(l.clone()));
            }
        }
        Ok(Index(map))
    }

    fn get(&self, label: &str) -> Result<usize, IoError> {
        self.0
            .get(label)
            .copied()
            .ok_or_else(|| IoError::UnknownLabel(label.to_string()))
    }
}

/// `{"elements": [...], "leq": [[x, y], ...]}`; `leq` is closed under
/// reflexivity and transitivity on load.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub elements: Vec<String>,
    #[serde(default)]
    pub leq: Vec<(String, String)>,
}

impl PosetJson {
    /// Writes the strict relation, pairs sorted by label.
    pub fn from_poset(p: &Poset) -> Self {
        let mut leq: Vec<(String, String)> = p
            .order()
            .pairs()
            .filter(|(x, y)| x != y)
            .map(|(x, y)| (p.label(x).to_string(), p.label(y).to_string()))
            .collect();
        leq.sort();
        PosetJson {
            elements: p.labels().to_vec(),
            leq,
        }
    }

    pub fn to_poset(&self) -> Result<Poset, IoError> {
        Ok(Poset::from_labeled_pairs(self.elements.clone(), &self.leq)?)
    }

    /// The closure of `leq` as a quasiorder, without demanding antisymmetry.
    pub fn to_quasiorder(&self) -> Result<QuasiOrder, IoError> {
        let index = Index::new(&self.elements)?;
        let seed = self
            .leq
            .iter()
            .map(|(x, y)| Ok((index.get(x)?, index.get(y)?)))
            .collect::<Result<Vec<_>, IoError>>()?;
        Ok(QuasiOrder::quos(self.elements.len(), &seed)?)
    }
}

/// `{"elements", "covers", "bottom", "top"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
    pub bottom: String,
    pub top: String,
}

impl LatticeJson {
    pub fn from_lattice(l: &FiniteLattice) -> Self {
        let label = |x: usize| l.label(x).to_string();
        let mut covers: Vec<(String, String)> = l
            .cover_pairs()
            .into_iter()
            .map(|(x, y)| (label(x), label(y)))
            .collect();
        covers.sort();
        LatticeJson {
            elements: l.labels().to_vec(),
            covers,
            bottom: label(l.bottom()),
            top: label(l.top()),
        }
    }

    pub fn to_lattice(&self) -> Result<FiniteLattice, IoError> {
        let index = Index::new(&self.elements)?;
        let covers = self
            .covers
            .iter()
            .map(|(x, y)| Ok((index.get(x)?, index.get(y)?)))
            .collect::<Result<Vec<_>, IoError>>()?;
        let l = FiniteLattice::from_covers(self.elements.clone(), &covers)?;
        for (which, declared, actual) in [
            ("bottom", &self.bottom, l.bottom()),
            ("top", &self.top, l.top()),
        ] {
            if index.get(declared)? != actual {
                return Err(IoError::WrongBound {
                    which,
                    declared: declared.clone(),
                    actual: l.label(actual).to_string(),
                });
            }
        }
        Ok(l)
    }
}

/// One principal congruence: a generating pair and its blocks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceJson {
    pub generator: (String, String),
    pub blocks: Vec<Vec<String>>,
}

/// `Princ L`: the congruences, Δ first, and the covering pairs of
/// containment as `[smaller, larger]` indices into `congruences`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrincJson {
    pub congruences: Vec<CongruenceJson>,
    pub edges: Vec<(usize, usize)>,
}

impl PrincJson {
    pub fn from_princ(l: &FiniteLattice, p: &PrincPoset) -> Self {
        let congruences = p
            .congruences()
            .iter()
            .zip(p.representatives())
            .map(|(c, r)| {
                let mut blocks: Vec<Vec<String>> = c
                    .blocks()
                    .into_iter()
                    .map(|b| {
                        let mut b: Vec<String> =
                            b.into_iter().map(|x| l.label(x).to_string()).collect();
                        b.sort();
                        b
                    })
                    .collect();
                blocks.sort();
                CongruenceJson {
                    generator: (l.label(r.lo).to_string(), l.label(r.hi).to_string()),
                    blocks,
                }
            })
            .collect();
        PrincJson {
            congruences,
            edges: p.containment_edges(),
        }
    }
}

/// A coloring entry `[lo, hi, color]`.
pub type GammaEntry = (String, String, String);

/// The lattice, the colors with their quasiorder, every colored pair and
/// the prime quotients `delta[i] ≺ epsilon[i]` of color `colors.elements[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuxJson {
    pub lattice: LatticeJson,
    pub colors: PosetJson,
    pub zero: String,
    pub gamma: Vec<GammaEntry>,
    pub delta: Vec<String>,
    pub epsilon: Vec<String>,
}

impl AuxJson {
    pub fn from_aux(a: &AuxStructure) -> Self {
        let l = &a.lattice;
        let label = |x: usize| l.label(x).to_string();
        let color = |c: usize| a.color_labels[c].clone();
        let mut leq: Vec<(String, String)> =
            a.nu.pairs()
                .filter(|(x, y)| x != y)
                .map(|(x, y)| (color(x), color(y)))
                .collect();
        leq.sort();
        let gamma = l
            .ordered_pairs()
            .into_iter()
            .map(|p| (label(p.lo), label(p.hi), color(a.gamma.get(p.lo, p.hi))))
            .collect();
        AuxJson {
            lattice: LatticeJson::from_lattice(l),
            colors: PosetJson {
                elements: a.color_labels.clone(),
                leq,
            },
            zero: color(a.zero),
            gamma,
            delta: a.delta.iter().map(|&x| label(x)).collect(),
            epsilon: a.epsilon.iter().map(|&x| label(x)).collect(),
        }
    }

    pub fn to_aux(&self) -> Result<AuxStructure, IoError> {
        let lattice = self.lattice.to_lattice()?;
        let nu = self.colors.to_quasiorder()?;
        let elems = Index::new(&self.lattice.elements)?;
        let colors = Index::new(&self.colors.elements)?;
        let entries = self
            .gamma
            .iter()
            .map(|(x, y, c)| Ok((elems.get(x)?, elems.get(y)?, colors.get(c)?)))
            .collect::<Result<Vec<_>, IoError>>()?;
        let gamma = Coloring::from_entries(&lattice, nu.size(), &entries)?;
        let lookup = |v: &[String]| {
            v.iter()
                .map(|x| elems.get(x))
                .collect::<Result<Vec<_>, IoError>>()
        };
        let delta = lookup(&self.delta)?;
        let epsilon = lookup(&self.epsilon)?;
        let zero = colors.get(&self.zero)?;
        Ok(AuxStructure::new(
            lattice,
            gamma,
            nu,
            self.colors.elements.clone(),
            delta,
            epsilon,
            zero,
        )?)
    }
}

pub fn trace_to_json(trace: &[TraceStep]) -> String {
    serde_json::to_string_pretty(trace).expect("trace steps serialize")
}

pub fn trace_from_json(s: &str) -> Result<Vec<TraceStep>, IoError> {
    Ok(serde_json::from_str(s)?)
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes")
}

pub fn from_json<T: for<'de> Deserialize<'de>>(s: &str) -> Result<T, IoError> {
    Ok(serde_json::from_str(s)?)
}
