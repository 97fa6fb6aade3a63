//! JSON encodings of every model, and model-level membership and DOT export.
//!
//! - semilinear set: `{"dim", "components": [{"base", "periods"}]}`
//! - automaton: `{"states", "alphabet", "initial", "finals", "transitions":
//!   [{"from", "label", "to"}]}` with `""` for ε
//! - CA / ε-CA: automaton fields plus `"constraint"`
//! - PA: automaton fields plus `"dim"`, `"vectors"`, `"constraint"`
//! - DetAPA: automaton fields plus `"dim"`, `"affine": [{"t", "M", "v"}]`,
//!   `"constraint"`
//! - BSL: `{"socle": ["ab", ..], "iteration_set"}`
//! - 1-CQDD: `{"components": [<CA>, ..]}`

use std::fmt::Write;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::apa::{AffineFn, DetApa};
use crate::automata::{to_dot, write_body, Automaton, Letter, Transition};
use crate::bsl::{BslLanguage, Socle};
use crate::error::{Error, Result};
use crate::flatten::{Cqdd, FlatDetCa};
use crate::limits::Limits;
use crate::models::{Ca, Pa};
use crate::semilinear::{IntMatrix, LinearSet, SemilinearSet};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SemilinearJson {
    dim: usize,
    components: Vec<LinearSet>,
}

#[derive(Debug, Serialize, Deserialize)]
struct TransitionJson {
    from: usize,
    label: String,
    to: usize,
}

#[derive(Debug, Serialize, Deserialize)]
struct AffineJson {
    t: usize,
    #[serde(rename = "M")]
    m: Vec<Vec<u64>>,
    v: Vec<u64>,
}

/// The union of all model fields; which ones are present decides the kind.
#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    states: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    alphabet: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    initial: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    finals: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    transitions: Option<Vec<TransitionJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    vectors: Option<Vec<Vec<u64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    affine: Option<Vec<AffineJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    constraint: Option<SemilinearJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    socle: Option<Socle>,
    #[serde(skip_serializing_if = "Option::is_none")]
    iteration_set: Option<SemilinearJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    components: Option<Vec<ModelJson>>,
}

fn parse_err(e: impl std::fmt::Display) -> Error {
    Error::Parse(e.to_string())
}

fn letter(s: &str) -> Result<Letter> {
    let mut it = s.chars();
    match (it.next(), it.next()) {
        (Some(c), None) => Ok(c),
        _ => Err(Error::Parse(format!("letter {s:?} is not a single character"))),
    }
}

impl SemilinearJson {
    fn decode(self) -> Result<SemilinearSet> {
        let components = self
            .components
            .into_iter()
            .map(|c| LinearSet::new(c.base().to_vec(), c.periods().to_vec()))
            .collect::<Result<Vec<_>>>()?;
        SemilinearSet::new(self.dim, components)
    }

    fn encode(s: &SemilinearSet) -> Self {
        SemilinearJson {
            dim: s.dim(),
            components: s.components().to_vec(),
        }
    }
}

impl ModelJson {
    fn automaton(&mut self) -> Result<Automaton> {
        let missing = |f: &str| Error::Parse(format!("missing field {f:?}"));
        let states = self.states.ok_or_else(|| missing("states"))?;
        let alphabet = self
            .alphabet
            .take()
            .unwrap_or_default()
            .iter()
            .map(|s| letter(s))
            .collect::<Result<Vec<_>>>()?;
        let transitions = self
            .transitions
            .take()
            .ok_or_else(|| missing("transitions"))?
            .into_iter()
            .map(|t| {
                Ok(if t.label.is_empty() {
                    Transition::epsilon(t.from, t.to)
                } else {
                    Transition::new(t.from, letter(&t.label)?, t.to)
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let initial = self.initial.ok_or_else(|| missing("initial"))?;
        let finals = self.finals.take().ok_or_else(|| missing("finals"))?;
        Automaton::new(states, alphabet, transitions, initial, finals)
    }

    fn constraint(&mut self) -> Result<SemilinearSet> {
        self.constraint
            .take()
            .ok_or_else(|| Error::Parse("missing field \"constraint\"".into()))?
            .decode()
    }

    fn from_automaton(a: &Automaton) -> Self {
        ModelJson {
            states: Some(a.num_states()),
            alphabet: Some(a.alphabet().iter().map(|c| c.to_string()).collect()),
            initial: Some(a.initial()),
            finals: Some(a.finals().iter().copied().collect()),
            transitions: Some(
                a.transitions()
                    .iter()
                    .map(|t| TransitionJson {
                        from: t.from,
                        label: t.label.map(String::from).unwrap_or_default(),
                        to: t.to,
                    })
                    .collect(),
            ),
            ..ModelJson::default()
        }
    }

    fn from_ca(ca: &Ca) -> Self {
        ModelJson {
            constraint: Some(SemilinearJson::encode(ca.constraint())),
            ..ModelJson::from_automaton(ca.automaton())
        }
    }

    fn into_ca(mut self) -> Result<Ca> {
        let a = self.automaton()?;
        Ca::new(a, self.constraint()?)
    }
}

/// Any model file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Model {
    Pa(Pa),
    /// A CA, or an ε-CA when its automaton has ε-transitions.
    Ca(Ca),
    DetApa(DetApa),
    Bsl(BslLanguage),
    Cqdd(Cqdd),
}

impl Model {
    /// Parses a model; the kind is read off the fields present.
    pub fn from_json(text: &str) -> Result<Model> {
        let value: Value = serde_json::from_str(text).map_err(parse_err)?;
        Model::from_value(value)
    }

    pub fn from_value(value: Value) -> Result<Model> {
        let mut j: ModelJson = serde_json::from_value(value).map_err(parse_err)?;
        if let Some(socle) = j.socle.take() {
            let e = j
                .iteration_set
                .take()
                .ok_or_else(|| Error::Parse("missing field \"iteration_set\"".into()))?
                .decode()?;
            return Ok(Model::Bsl(BslLanguage::new(socle, e)?));
        }
        if let Some(components) = j.components.take() {
            if j.states.is_some() {
                return Err(Error::Parse("a CQDD file has only \"components\"".into()));
            }
            let components = components
                .into_iter()
                .map(|c| FlatDetCa::new(c.into_ca()?))
                .collect::<Result<Vec<_>>>()?;
            return Ok(Model::Cqdd(Cqdd { components }));
        }
        let automaton = j.automaton()?;
        if let Some(affine) = j.affine.take() {
            let dim = j
                .dim
                .ok_or_else(|| Error::Parse("missing field \"dim\"".into()))?;
            let mut fns = vec![None; automaton.num_transitions()];
            for f in affine {
                let m = IntMatrix::from_rows(dim, f.m)?;
                let slot = fns
                    .get_mut(f.t)
                    .ok_or_else(|| Error::Parse(format!("affine entry for unknown transition {}", f.t)))?;
                *slot = Some(AffineFn::new(m, f.v)?);
            }
            let fns = fns
                .into_iter()
                .enumerate()
                .map(|(t, f)| f.ok_or_else(|| Error::Parse(format!("transition {t} has no affine map"))))
                .collect::<Result<Vec<_>>>()?;
            return Ok(Model::DetApa(DetApa::new(automaton, fns, j.constraint()?)?));
        }
        if let Some(vectors) = j.vectors.take() {
            let dim = j
                .dim
                .ok_or_else(|| Error::Parse("missing field \"dim\"".into()))?;
            return Ok(Model::Pa(Pa::new(automaton, dim, vectors, j.constraint()?)?));
        }
        Ok(Model::Ca(Ca::new(automaton, j.constraint()?)?))
    }

    pub fn to_value(&self) -> Value {
        let j = match self {
            Model::Pa(pa) => ModelJson {
                dim: Some(pa.dim()),
                vectors: Some(pa.vectors().to_vec()),
                constraint: Some(SemilinearJson::encode(pa.constraint())),
                ..ModelJson::from_automaton(pa.automaton())
            },
            Model::Ca(ca) => ModelJson::from_ca(ca),
            Model::DetApa(apa) => ModelJson {
                dim: Some(apa.dim()),
                affine: Some(
                    apa.affine()
                        .iter()
                        .enumerate()
                        .map(|(t, f)| AffineJson {
                            t,
                            m: f.matrix().to_rows(),
                            v: f.vector().to_vec(),
                        })
                        .collect(),
                ),
                constraint: Some(SemilinearJson::encode(apa.constraint())),
                ..ModelJson::from_automaton(apa.automaton())
            },
            Model::Bsl(b) => ModelJson {
                socle: Some(b.socle().clone()),
                iteration_set: Some(SemilinearJson::encode(b.iteration_set())),
                ..ModelJson::default()
            },
            Model::Cqdd(c) => ModelJson {
                components: Some(c.components.iter().map(|f| ModelJson::from_ca(f.ca())).collect()),
                ..ModelJson::default()
            },
        };
        serde_json::to_value(j).expect("model JSON is serializable")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("model JSON is serializable")
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Model::Pa(_) => "PA",
            Model::Ca(ca) if ca.has_epsilon() => "ε-CA",
            Model::Ca(_) => "CA",
            Model::DetApa(_) => "DetAPA",
            Model::Bsl(_) => "BSL",
            Model::Cqdd(_) => "CQDD",
        }
    }

    /// Exact membership.
    pub fn accepts(&self, w: &[Letter], limits: &Limits) -> Result<bool> {
        match self {
            Model::Pa(pa) => Ok(pa.accepts(w)),
            Model::Ca(ca) => ca.accepts(w, limits),
            Model::DetApa(apa) => apa.accepts(w),
            Model::Bsl(b) => Ok(b.contains(w)),
            Model::Cqdd(c) => Ok(c.accepts(w)),
        }
    }

    /// Letters the model can read, sorted.
    pub fn alphabet(&self) -> Vec<Letter> {
        match self {
            Model::Pa(pa) => pa.automaton().alphabet().to_vec(),
            Model::Ca(ca) => ca.automaton().alphabet().to_vec(),
            Model::DetApa(apa) => apa.automaton().alphabet().to_vec(),
            Model::Bsl(b) => b.socle().letters(),
            Model::Cqdd(c) => {
                let mut l: Vec<Letter> = c
                    .components
                    .iter()
                    .flat_map(|f| f.automaton().alphabet().iter().copied())
                    .collect();
                l.sort_unstable();
                l.dedup();
                l
            }
        }
    }

    /// Graphviz rendering. A BSL is drawn as the automaton of its canonical
    /// ε-CA and a CQDD as one cluster per component.
    pub fn to_dot(&self, name: &str) -> String {
        match self {
            Model::Pa(pa) => to_dot(pa.automaton(), name),
            Model::Ca(ca) => to_dot(ca.automaton(), name),
            Model::DetApa(apa) => to_dot(apa.automaton(), name),
            Model::Bsl(b) => to_dot(&crate::bsl::socle_automaton(b.socle()).0, name),
            Model::Cqdd(c) => {
                let mut out = String::new();
                writeln!(out, "digraph \"{}\" {{", name.replace('"', "\\\"")).unwrap();
                for (i, f) in c.components.iter().enumerate() {
                    writeln!(out, "  subgraph \"cluster_{i}\" {{").unwrap();
                    writeln!(out, "    label=\"component {i}\";").unwrap();
                    write_body(f.automaton(), &format!("c{i}_"), "    ", &mut out);
                    out.push_str("  }\n");
                }
                out.push_str("}\n");
                out
            }
        }
    }
}
