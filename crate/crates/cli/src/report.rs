use princ_core::congruence::PrincPoset;
use princ_core::construction::TraceStep;
use princ_core::lattice::FiniteLattice;
use princ_core::order::{poset_isomorphic, Poset};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Ok,
    Fail,
}

/// One row of the isomorphism: a principal congruence, named by a pair
/// generating it, and the element of the input it corresponds to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRow {
    pub generator: (String, String),
    pub element: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub input_elements: usize,
    pub input_relations: usize,
    pub trace: Vec<TraceStep>,
    pub lattice_elements: usize,
    pub principal_congruences: usize,
    pub verdict: Verdict,
    pub witness: Option<Vec<WitnessRow>>,
    pub explanation: Option<String>,
    /// One line per axiom, present when an auxiliary structure was checked.
    pub axioms: Option<Vec<String>>,
    pub maximal_chains: Option<usize>,
    pub wall_ms: f64,
}

impl RunReport {
    /// Compares `Princ L` with `p`. The witness is re-validated before the
    /// verdict is set to ok.
    pub fn compare(command: &str, p: &Poset, l: &FiniteLattice, princ: &PrincPoset) -> Self {
        let iso = poset_isomorphic(princ.poset(), p).filter(|w| w.verify(princ.poset(), p));
        let witness = iso.as_ref().map(|w| {
            princ
                .representatives()
                .iter()
                .zip(&w.map)
                .map(|(r, &x)| WitnessRow {
                    generator: (l.label(r.lo).to_string(), l.label(r.hi).to_string()),
                    element: p.label(x).to_string(),
                })
                .collect()
        });
        let explanation = iso.is_none().then(|| {
            format!(
                "no order isomorphism between the {} principal congruences and the {} input elements",
                princ.len(),
                p.size()
            )
        });
        RunReport {
            command: command.to_string(),
            input_elements: p.size(),
            input_relations: p.order().pairs().filter(|(x, y)| x != y).count(),
            trace: Vec::new(),
            lattice_elements: l.size(),
            principal_congruences: princ.len(),
            verdict: if iso.is_some() {
                Verdict::Ok
            } else {
                Verdict::Fail
            },
            witness,
            explanation,
            axioms: None,
            maximal_chains: None,
            wall_ms: 0.0,
        }
    }

    pub fn fail(&mut self, why: String) {
        self.verdict = Verdict::Fail;
        self.explanation = Some(match self.explanation.take() {
            Some(old) => format!("{old}; {why}"),
            None => why,
        });
    }

    pub fn summary(&self) -> String {
        let verdict = match self.verdict {
            Verdict::Ok => "ok",
            Verdict::Fail => "FAIL",
        };
        let mut s = format!(
            "{}: {verdict}: {} input elements, {} lattice elements, {} principal congruences",
            self.command, self.input_elements, self.lattice_elements, self.principal_congruences
        );
        if let Some(why) = &self.explanation {
            s.push_str(&format!(" ({why})"));
        }
        s
    }
}
