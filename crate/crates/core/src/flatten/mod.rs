//! From bounded languages to finite unions of flat deterministic CA.

mod branch;
mod slre;
mod words;

use rayon::prelude::*;
use serde::Serialize;

pub use branch::{
    branch_periods, flatten_branch, matrix_period, residue_tuples, BranchVectors,
};
pub use slre::{bounded_socle_of_regular, normalize_branch, runs_slre, Branch, Slre};
pub use words::{common_root, primitive_root};

use crate::apa::{epsca_to_detapa, CdMode, DetApa};
use crate::automata::{is_deterministic, is_flat, Automaton, Letter};
use crate::bsl::{pa_iteration_set, BslLanguage, Socle};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::models::{Ca, Pa};

/// A CA whose automaton is flat and deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatDetCa(Ca);

impl FlatDetCa {
    pub fn new(ca: Ca) -> Result<Self> {
        if !is_deterministic(ca.automaton()) {
            return Err(Error::invalid("automaton is not deterministic"));
        }
        if !is_flat(ca.automaton()) {
            return Err(Error::invalid("automaton is not flat"));
        }
        Ok(FlatDetCa(ca))
    }

    pub fn ca(&self) -> &Ca {
        &self.0
    }

    pub fn automaton(&self) -> &Automaton {
        self.0.automaton()
    }

    pub fn accepts(&self, w: &[Letter]) -> bool {
        self.0.accepts_epsilon_free(w)
    }
}

/// A finite union of flat DetCA (a 1-CQDD).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Cqdd {
    pub components: Vec<FlatDetCa>,
}

impl Cqdd {
    pub fn accepts(&self, w: &[Letter]) -> bool {
        self.components.iter().any(|c| c.accepts(w))
    }

    pub fn num_states(&self) -> usize {
        self.components.iter().map(|c| c.automaton().num_states()).sum()
    }

    pub fn num_transitions(&self) -> usize {
        self.components
            .iter()
            .map(|c| c.automaton().num_transitions())
            .sum()
    }
}

/// Flattens a DetAPA whose language is bounded and whose monoid is finite.
/// Components are ordered by branch and then by residue tuple; components
/// with an empty constraint are dropped.
pub fn detapa_to_cqdd(apa: &DetApa, limits: &Limits) -> Result<Cqdd> {
    apa.monoid_closure(limits.monoid_cap)?;
    let slre = runs_slre(apa.automaton())?;
    let mut jobs = Vec::new();
    for branch in &slre.branches {
        let periods = branch_periods(branch, apa.affine(), apa.dim(), limits.monoid_cap)?;
        for a in residue_tuples(&periods) {
            jobs.push((branch, a, periods.clone()));
        }
    }
    let components: Vec<FlatDetCa> = jobs
        .par_iter()
        .map(|(branch, a, periods)| branch::flat_component(branch, apa, a, periods, limits))
        .collect::<Result<_>>()?;
    Ok(Cqdd {
        components: components
            .into_iter()
            .filter(|c| !c.ca().constraint().is_empty())
            .collect(),
    })
}

/// Sizes of the object produced by one pipeline stage.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StageReport {
    pub stage: &'static str,
    pub states: usize,
    pub transitions: usize,
    pub dimension: usize,
    pub components: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct PipelineReport {
    pub stages: Vec<StageReport>,
}

fn staged<T>(stage: &'static str, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::Stage {
        stage,
        source: Box::new(e),
    })
}

/// PA with a socle → iteration set → canonical ε-CA → DetAPA → 1-CQDD.
pub fn bounded_pa_to_cqdd(
    pa: &Pa,
    socle: &Socle,
    limits: &Limits,
) -> Result<(Cqdd, PipelineReport)> {
    let mut report = PipelineReport::default();
    report.stages.push(StageReport {
        stage: "pa",
        states: pa.automaton().num_states(),
        transitions: pa.automaton().num_transitions(),
        dimension: pa.dim(),
        components: pa.constraint().components().len(),
    });
    let e = staged("iteration_set", pa_iteration_set(pa, socle, limits))?;
    report.stages.push(StageReport {
        stage: "iteration_set",
        states: 0,
        transitions: 0,
        dimension: e.dim(),
        components: e.components().len(),
    });
    let bsl = staged("iteration_set", BslLanguage::new(socle.clone(), e))?;
    saturated_to_cqdd(&bsl, limits, report)
}

/// BSL → full iteration set → canonical ε-CA → DetAPA → 1-CQDD.
pub fn bsl_to_cqdd(bsl: &BslLanguage, limits: &Limits) -> Result<(Cqdd, PipelineReport)> {
    let bsl = staged("iteration_set", bsl.saturate(limits))?;
    let mut report = PipelineReport::default();
    report.stages.push(StageReport {
        stage: "iteration_set",
        states: 0,
        transitions: 0,
        dimension: bsl.iteration_set().dim(),
        components: bsl.iteration_set().components().len(),
    });
    saturated_to_cqdd(&bsl, limits, report)
}

fn saturated_to_cqdd(
    bsl: &BslLanguage,
    limits: &Limits,
    mut report: PipelineReport,
) -> Result<(Cqdd, PipelineReport)> {
    let ca = staged("canonical_epsca", bsl.canonical_epsca(limits))?;
    report.stages.push(StageReport {
        stage: "canonical_epsca",
        states: ca.automaton().num_states(),
        transitions: ca.automaton().num_transitions(),
        dimension: ca.constraint().dim(),
        components: ca.constraint().components().len(),
    });
    let mode = limits.cd_bound.map_or(CdMode::Trusted, CdMode::Verify);
    let apa = staged("detapa", epsca_to_detapa(&ca, mode, limits))?;
    report.stages.push(StageReport {
        stage: "detapa",
        states: apa.automaton().num_states(),
        transitions: apa.automaton().num_transitions(),
        dimension: apa.dim(),
        components: apa.constraint().components().len(),
    });
    let cqdd = staged("cqdd", detapa_to_cqdd(&apa, limits))?;
    report.stages.push(StageReport {
        stage: "cqdd",
        states: cqdd.num_states(),
        transitions: cqdd.num_transitions(),
        dimension: 0,
        components: cqdd.components.len(),
    });
    Ok((cqdd, report))
}
