use crate::congruence::{princ, PrincPoset};
use crate::order::{IsoWitness, Poset};
use crate::quasicolor::{colors_to_princ, AuxStructure, Embedding};

use super::{
    horizontal_extend, trivial_aux, vertical_extend, ConstructionError, ExtensionResult, TraceStep,
};

/// Output of [`combin_extend`].
#[derive(Debug, Clone)]
pub struct CombinResult {
    pub aux: AuxStructure,
    /// Carries the input structure into `aux`.
    pub embed: Embedding,
    /// Element of the target ordered set ↦ color of `aux`.
    pub h_map: Vec<usize>,
    pub trace: Vec<TraceStep>,
}

/// Grows `a`, whose colors sit in `h_up` as an order ideal via
/// `ideal_embed`, until its colors are all of `h_up`.
///
/// One vertical extension adds the missing colors below the top and the top
/// itself; then every pair `0 < p < q < 1` of `h_up` not already inside the
/// old colors is visited in lexicographic index order and bridged unless
/// `p < q` already holds. `observe` sees every intermediate step.
pub fn combin_extend(
    a: &AuxStructure,
    h_up: &Poset,
    ideal_embed: &[usize],
    observe: &mut dyn FnMut(&ExtensionResult),
) -> Result<CombinResult, ConstructionError> {
    let big = h_up.size();
    let (Some(bottom), Some(top)) = (h_up.least(), h_up.greatest()) else {
        return Err(ConstructionError::NotAnIdeal);
    };
    let h = a.colors();
    let mut inside = vec![None; big];
    for (c, &x) in ideal_embed.iter().enumerate() {
        if x >= big || inside[x].is_some() {
            return Err(ConstructionError::NotAnIdeal);
        }
        inside[x] = Some(c);
    }
    let restricted =
        (0..h).all(|c| (0..h).all(|d| a.nu.leq(c, d) == h_up.leq(ideal_embed[c], ideal_embed[d])));
    if ideal_embed.len() != h
        || !h_up.is_order_ideal(ideal_embed)
        || !restricted
        || ideal_embed[a.zero] != bottom
    {
        return Err(ConstructionError::NotAnIdeal);
    }
    if inside[top].is_some() {
        return Ok(CombinResult {
            aux: a.clone(),
            embed: Embedding::identity(a.lattice.size(), h),
            h_map: inside
                .into_iter()
                .map(|c| c.expect("H is everything"))
                .collect(),
            trace: Vec::new(),
        });
    }

    let fresh: Vec<usize> = (0..big)
        .filter(|&x| x != top && inside[x].is_none())
        .collect();
    let labels: Vec<String> = fresh.iter().map(|&x| h_up.label(x).to_string()).collect();
    let first = vertical_extend(a, &labels, h_up.label(top))?;
    observe(&first);
    let mut h_map: Vec<usize> = vec![0; big];
    for x in 0..big {
        h_map[x] = match inside[x] {
            Some(c) => c,
            None if x == top => h + fresh.len(),
            None => h + fresh.iter().position(|&f| f == x).unwrap(),
        };
    }
    let embed = first.embed.clone();
    let mut trace = vec![first.step.clone()];
    let mut cur = first.aux;

    for p in 0..big {
        for q in 0..big {
            let interior = |x| x != bottom && x != top;
            if !(interior(p) && interior(q) && h_up.lt(p, q)) {
                continue;
            }
            if inside[p].is_some() && inside[q].is_some() {
                continue;
            }
            let (cp, cq) = (h_map[p], h_map[q]);
            if cur.nu.lt(cp, cq) {
                continue;
            }
            let step = horizontal_extend(&cur, cp, cq)?;
            observe(&step);
            trace.push(step.step.clone());
            cur = step.aux;
        }
    }

    let complete =
        (0..big).all(|x| (0..big).all(|y| cur.nu.leq(h_map[x], h_map[y]) == h_up.leq(x, y)));
    if !complete {
        return Err(ConstructionError::VerificationFailed(
            "final color order differs from the target order".into(),
        ));
    }
    Ok(CombinResult {
        aux: cur,
        embed,
        h_map,
        trace,
    })
}

/// A lattice representing an ordered set, with the evidence.
#[derive(Debug, Clone)]
pub struct Representation {
    pub aux: AuxStructure,
    pub princ: PrincPoset,
    /// `Princ L` index ↦ element of the represented ordered set.
    pub witness: IsoWitness,
    /// Color ↦ element of the represented ordered set.
    pub color_to_p: Vec<usize>,
    pub trace: Vec<TraceStep>,
}

/// Builds `L` with `Princ L ≅ p` for a finite ordered set with zero that is
/// directed (equivalently, bounded).
pub fn represent(p: &Poset) -> Result<Representation, ConstructionError> {
    represent_observed(p, &mut |_| {})
}

pub fn represent_observed(
    p: &Poset,
    observe: &mut dyn FnMut(&ExtensionResult),
) -> Result<Representation, ConstructionError> {
    let zero = p.least().ok_or(ConstructionError::NoZero)?;
    if p.greatest().is_none() || !p.is_directed_with_zero() {
        return Err(ConstructionError::NotDirected);
    }
    let start = trivial_aux(p.label(zero));
    let (aux, color_to_p, trace) = if p.size() == 1 {
        (start, vec![zero], Vec::new())
    } else {
        let r = combin_extend(&start, p, &[zero], observe)?;
        (r.aux, invert(&r.h_map), r.trace)
    };
    let (princ, witness) = verify_against(&aux, &color_to_p, p)?;
    Ok(Representation {
        aux,
        princ,
        witness,
        color_to_p,
        trace,
    })
}

/// Computes `Princ L` and the isomorphism `cg(x, y) ↦ γ(x, y)` onto
/// `target`, re-validating it.
fn verify_against(
    aux: &AuxStructure,
    color_to_target: &[usize],
    target: &Poset,
) -> Result<(PrincPoset, IsoWitness), ConstructionError> {
    let princ = princ(&aux.lattice);
    if colors_to_princ(aux, &princ).is_none() {
        return Err(ConstructionError::VerificationFailed(
            "congruences and color classes are not isomorphic".into(),
        ));
    }
    let map = princ
        .representatives()
        .iter()
        .map(|r| color_to_target[aux.gamma.get(r.lo, r.hi)])
        .collect();
    let witness = IsoWitness { map };
    if !witness.verify(princ.poset(), target) {
        return Err(ConstructionError::VerificationFailed(
            "principal congruences are not isomorphic to the target".into(),
        ));
    }
    Ok((princ, witness))
}

fn invert(map: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; map.len()];
    for (x, &c) in map.iter().enumerate() {
        inv[c] = x;
    }
    inv
}

/// The generator of `ideal` if it is a principal ideal `↓c`.
pub fn principal_generator(p: &Poset, ideal: &[usize]) -> Option<usize> {
    let mut sorted = ideal.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let top = sorted
        .iter()
        .copied()
        .find(|&c| sorted.iter().all(|&x| p.leq(x, c)))?;
    (p.principal_ideal(top) == sorted).then_some(top)
}

/// One stage of [`represent_chain`].
#[derive(Debug, Clone)]
pub struct Stage {
    pub generator: usize,
    /// `↓generator` in increasing index order.
    pub ideal: Vec<usize>,
    pub aux: AuxStructure,
    /// Color ↦ element of the ambient ordered set.
    pub h_to_p: Vec<usize>,
    pub princ: PrincPoset,
    /// `Princ L` index ↦ position in `ideal`.
    pub witness: IsoWitness,
    /// Carries the previous stage into this one; `None` for the first.
    pub embed: Option<Embedding>,
    pub trace: Vec<TraceStep>,
}

/// Lazily built stages, one per generator.
pub struct Stages<'a> {
    p: &'a Poset,
    generators: Vec<usize>,
    next: usize,
    prev: Option<Stage>,
    failed: bool,
}

impl Iterator for Stages<'_> {
    type Item = Result<Stage, ConstructionError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed || self.next >= self.generators.len() {
            return None;
        }
        let c = self.generators[self.next];
        self.next += 1;
        let result = self.build(c);
        match &result {
            Ok(stage) => self.prev = Some(stage.clone()),
            Err(_) => self.failed = true,
        }
        Some(result)
    }
}

impl Stages<'_> {
    fn build(&self, c: usize) -> Result<Stage, ConstructionError> {
        let ideal = self.p.principal_ideal(c);
        let local = self.p.restrict(&ideal);
        let position = |x: usize| ideal.binary_search(&x).expect("member of the ideal");
        let (aux, h_to_p, embed, trace) = match &self.prev {
            None => (trivial_aux(self.p.label(c)), vec![c], None, Vec::new()),
            Some(prev) => {
                let ideal_embed: Vec<usize> = prev.h_to_p.iter().map(|&x| position(x)).collect();
                let r = combin_extend(&prev.aux, &local, &ideal_embed, &mut |_| {})?;
                let h_to_p = invert(&r.h_map).into_iter().map(|i| ideal[i]).collect();
                (r.aux, h_to_p, Some(r.embed), r.trace)
            }
        };
        let to_local: Vec<usize> = h_to_p.iter().map(|&x| position(x)).collect();
        let (princ, witness) = verify_against(&aux, &to_local, &local)?;
        Ok(Stage {
            generator: c,
            ideal,
            aux,
            h_to_p,
            princ,
            witness,
            embed,
            trace,
        })
    }
}

/// Represents the growing principal ideals `↓c_0 ⊆ ↓c_1 ⊆ …` one at a
/// time; each stage is a substructure of the next. `c_0` must be the zero.
///
/// Every stage is verified before it is yielded. A stage that has to put a
/// new color above a nonzero color of the previous stage fails: the
/// previous lattice is an interval collapsed by the congruence of its top
/// color, and bridging from inside it makes that congruence total. The
/// iterator then yields `VerificationFailed` and stops.
pub fn represent_chain<'a>(
    p: &'a Poset,
    generators: &[usize],
) -> Result<Stages<'a>, ConstructionError> {
    let bad = |why: &str| ConstructionError::NotAChainOfIdeals(why.to_string());
    let zero = p.least().ok_or(ConstructionError::NoZero)?;
    match generators.first() {
        None => return Err(bad("no ideals given")),
        Some(&c) if c != zero => return Err(bad("the first ideal is not {0}")),
        _ => {}
    }
    if generators.iter().any(|&c| c >= p.size()) {
        return Err(bad("generator out of range"));
    }
    if generators.windows(2).any(|w| !p.leq(w[0], w[1])) {
        return Err(bad("the ideals do not increase"));
    }
    Ok(Stages {
        p,
        generators: generators.to_vec(),
        next: 0,
        prev: None,
        failed: false,
    })
}
