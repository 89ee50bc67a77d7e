//! Pipeline orchestration and the structured report document.

use adiasearch::closed_form::CompleteGraphForms;
use adiasearch::evolve::evolve;
use adiasearch::gap::{
    compare_with_closed_forms, gap_terms, GapModel, GapTerms, Quantity, ReferenceComparison,
};
use adiasearch::graph::{Family, Graph};
use adiasearch::lanczos::{lanczos, KrylovReduction};
use adiasearch::poly::SpectralTable;
use adiasearch::reduced::ReducedHamiltonian;
use adiasearch::schedule::local_schedule;
use adiasearch::{Error, Result};
use serde::Serialize;

/// Everything downstream verbs need, built once per invocation.
pub struct Pipeline {
    pub graph: Graph,
    pub marked: usize,
    pub kr: KrylovReduction,
    pub st: SpectralTable,
}

impl Pipeline {
    pub fn new(graph: Graph, marked: usize) -> Result<Pipeline> {
        let kr = lanczos(&graph, marked)?;
        let st = SpectralTable::new(&kr);
        Ok(Pipeline {
            graph,
            marked,
            kr,
            st,
        })
    }

    pub fn reduced(&self) -> ReducedHamiltonian {
        ReducedHamiltonian::new(&self.kr, self.graph.degree())
    }

    /// Default hopping strength: the critical value at `s`, falling back to
    /// `1/D` when the model has no positive solution there.
    pub fn gamma_crit_or_default(&self, s: f64) -> f64 {
        GapModel::new(&self.st)
            .and_then(|m| m.gamma_crit(s))
            .unwrap_or(1.0 / self.graph.degree() as f64)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphSection {
    pub family: String,
    pub vertices: usize,
    pub degree: usize,
    pub edges: usize,
    pub marked: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct LanczosSection {
    pub alphas: Vec<f64>,
    pub betas: Vec<f64>,
    pub dim: usize,
    pub marked: usize,
    #[serde(rename = "breakdownResidual")]
    pub breakdown_residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumSection {
    pub roots: Vec<f64>,
    pub norms: Vec<f64>,
    pub weights: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MinimumSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signed: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<&'static str>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExactScheduleSection {
    pub gamma: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub total_time: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g_min_exact: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s_star: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub asymptotic_complete: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<&'static str>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FidelitySection {
    pub epsilon: f64,
    pub gamma: f64,
    pub total_time: f64,
    pub final_fidelity: f64,
    pub norm_drift: f64,
}

/// The full report document; section order is the serialization order.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub graph: GraphSection,
    pub lanczos: LanczosSection,
    pub spectrum: SpectrumSection,
    pub gap_terms: GapTerms,
    /// Critical hopping strength of the model at `s = 1/2`.
    pub gamma_crit: Quantity,
    /// Model gap magnitude at `s = 1`.
    pub g_min: MinimumSection,
    /// Model search-time estimate.
    pub t_perturbative: Quantity,
    /// Total time of the local schedule driven by the exact gap.
    pub t_schedule_exact: ExactScheduleSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fidelity: Option<FidelitySection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form_comparison: Option<ReferenceComparison>,
}

pub struct ReportConfig {
    pub epsilon: f64,
    pub gamma: Option<f64>,
    pub grid: usize,
    pub evolve: bool,
}

pub fn graph_section(graph: &Graph, marked: usize) -> GraphSection {
    GraphSection {
        family: graph.family().to_string(),
        vertices: graph.vertex_count(),
        degree: graph.degree(),
        edges: graph.edge_count(),
        marked,
    }
}

pub fn lanczos_section(p: &Pipeline) -> LanczosSection {
    LanczosSection {
        alphas: p.kr.alphas().to_vec(),
        betas: p.kr.betas().to_vec(),
        dim: p.kr.dim(),
        marked: p.kr.marked(),
        breakdown_residual: p.kr.breakdown_residual(),
    }
}

pub fn spectrum_section(p: &Pipeline) -> SpectrumSection {
    SpectrumSection {
        roots: p.st.roots().to_vec(),
        norms: p.st.norms().to_vec(),
        weights: p.st.weights().to_vec(),
    }
}

pub fn build_report(p: &Pipeline, config: &ReportConfig) -> Result<Report> {
    let terms = gap_terms(&p.st)?;
    let model = GapModel::new(&p.st)?;

    let gamma_crit = Quantity::from_result(model.gamma_crit(0.5));
    let g_min = match model.g_min(1.0) {
        Ok(m) => MinimumSection {
            value: Some(m.magnitude),
            signed: Some(m.signed),
            error: None,
        },
        Err(e) => MinimumSection {
            value: None,
            signed: None,
            error: Some(e.code()),
        },
    };
    let t_perturbative = Quantity::from_result(model.search_time(config.epsilon));

    let gamma = config
        .gamma
        .unwrap_or_else(|| p.gamma_crit_or_default(0.5));
    let rh = p.reduced();
    let schedule = local_schedule(
        |s| rh.exact_gap(s, gamma).unwrap_or(-1.0),
        config.epsilon,
        0.0,
        config.grid,
    );
    let (t_schedule_exact, schedule) = match schedule {
        Ok(sched) => {
            let (s_star, g_min_exact) = rh.min_gap(gamma)?;
            let asymptotic_complete = match p.graph.family() {
                Family::Complete { n } => {
                    Some(CompleteGraphForms::new(n, config.epsilon).total_time_asymptotic())
                }
                _ => None,
            };
            (
                ExactScheduleSection {
                    gamma,
                    total_time: Some(sched.total_time()),
                    g_min_exact: Some(g_min_exact),
                    s_star: Some(s_star),
                    asymptotic_complete,
                    error: None,
                },
                Some(sched),
            )
        }
        Err(e) => (
            ExactScheduleSection {
                gamma,
                total_time: None,
                g_min_exact: None,
                s_star: None,
                asymptotic_complete: None,
                error: Some(e.code()),
            },
            None,
        ),
    };

    let fidelity = if config.evolve {
        let sched = schedule.ok_or(Error::DomainError(
            "cannot evolve: the exact schedule failed".into(),
        ))?;
        let (coords, _) = p.kr.project_state(&p.graph.uniform_state())?;
        let out = evolve(&rh, gamma, &sched, &coords)?;
        Some(FidelitySection {
            epsilon: config.epsilon,
            gamma,
            total_time: sched.total_time(),
            final_fidelity: out.final_fidelity(),
            norm_drift: out.norm_drift(),
        })
    } else {
        None
    };

    let closed_form_comparison = match p.graph.family() {
        Family::Custom => None,
        family => Some(compare_with_closed_forms(family, config.epsilon)?),
    };

    Ok(Report {
        graph: graph_section(&p.graph, p.marked),
        lanczos: lanczos_section(p),
        spectrum: spectrum_section(p),
        gap_terms: terms,
        gamma_crit,
        g_min,
        t_perturbative,
        t_schedule_exact,
        fidelity,
        closed_form_comparison,
    })
}
