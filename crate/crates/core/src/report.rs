//! Corpus-level reporting: for each graph, the Hamiltonicity verdict, the
//! indicator residuals under both propagation semantics, the discrete
//! brute-force verdict, and the numeric search minima.

use crate::graph::{indicator_x, is_hamiltonian, DirectedGraph, HamiltonCertificate};
use crate::rat::format_ratio;
use crate::reduction::{
    discrete_bruteforce, indicator_check, indicator_raw, ReductionConfig, ResidualRecord,
    Semantics,
};
use crate::solver::{pattern_search, sweep, PatternResult, SweepConfig};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct ReportOptions {
    pub eps_exponent: Option<u32>,
    pub sweep: SweepConfig,
    /// Cap of the pattern-search grid ladder per axis (8/64/512/4096).
    pub ladder_cap: usize,
    /// Maximum cost-1 edge count for the discrete brute force.
    pub discrete_budget: usize,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            eps_exponent: None,
            sweep: SweepConfig::default(),
            ladder_cap: 64,
            discrete_budget: 12,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IndicatorSummary {
    /// Exact epsilon amounts the constraint sets would need: (eps1, eps2, eps3).
    pub eps: [String; 3],
    pub residuals: ResidualRecord,
}

#[derive(Clone, Debug, Serialize)]
pub struct DiscreteSummary {
    pub feasible: bool,
    pub satisfying_count: usize,
    pub skipped: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepSummary {
    pub alpha: f64,
    pub beta: f64,
    pub total: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphRecord {
    pub file: String,
    pub n: usize,
    pub edge_count: usize,
    pub error: Option<String>,
    pub hamiltonian: Option<bool>,
    pub certificate: Option<Vec<usize>>,
    /// Indicator residuals for the certificate tour, per semantics.
    pub indicator_literal: Option<IndicatorSummary>,
    pub indicator_token: Option<IndicatorSummary>,
    pub discrete_token: Option<DiscreteSummary>,
    pub sweep_min: Option<SweepSummary>,
    /// Pattern-search upper bound for the certificate tour pattern.
    pub pattern: Option<PatternResult>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusReport {
    pub options: ReportOptions,
    pub records: Vec<GraphRecord>,
}

impl CorpusReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

fn indicator_summary(
    g: &DirectedGraph,
    cert: &HamiltonCertificate,
    cfg: &ReductionConfig,
) -> Result<IndicatorSummary, String> {
    let x = indicator_x(g, cert).map_err(|e| e.to_string())?;
    let (e1, e2, e3) = indicator_raw(g, cfg, &x).map_err(|e| e.to_string())?;
    let residuals = indicator_check(g, cfg, &x).map_err(|e| e.to_string())?;
    Ok(IndicatorSummary {
        eps: [format_ratio(&e1), format_ratio(&e2), format_ratio(&e3)],
        residuals,
    })
}

/// Builds the record for one graph; search failures land in `error` rather
/// than aborting the corpus run.
pub fn graph_record(file: &str, g: &DirectedGraph, opts: &ReportOptions) -> GraphRecord {
    let mut rec = GraphRecord {
        file: file.to_string(),
        n: g.n(),
        edge_count: g.edge_count(),
        error: None,
        hamiltonian: None,
        certificate: None,
        indicator_literal: None,
        indicator_token: None,
        discrete_token: None,
        sweep_min: None,
        pattern: None,
    };
    let mut errors: Vec<String> = Vec::new();

    let token_cfg = ReductionConfig {
        semantics: Semantics::Token,
        eps_exponent: opts.eps_exponent,
        ..Default::default()
    };
    let literal_cfg = ReductionConfig {
        semantics: Semantics::Literal,
        ..token_cfg
    };

    let cert = is_hamiltonian(g);
    rec.hamiltonian = Some(cert.is_some());
    if let Some(cert) = &cert {
        rec.certificate = Some(cert.order.clone());
        match indicator_summary(g, cert, &literal_cfg) {
            Ok(s) => rec.indicator_literal = Some(s),
            Err(e) => errors.push(format!("indicator literal: {e}")),
        }
        match indicator_summary(g, cert, &token_cfg) {
            Ok(s) => rec.indicator_token = Some(s),
            Err(e) => errors.push(format!("indicator token: {e}")),
        }
    }

    match discrete_bruteforce(g, &token_cfg, opts.discrete_budget) {
        Ok(v) => {
            rec.discrete_token = Some(DiscreteSummary {
                feasible: v.feasible,
                satisfying_count: v.satisfying.len(),
                skipped: None,
            });
        }
        Err(e) => {
            rec.discrete_token = Some(DiscreteSummary {
                feasible: false,
                satisfying_count: 0,
                skipped: Some(e.to_string()),
            });
        }
    }

    match sweep(g, &token_cfg, &opts.sweep) {
        Ok(s) => {
            let m = s.min_cell();
            rec.sweep_min = Some(SweepSummary {
                alpha: m.alpha,
                beta: m.beta,
                total: m.record.total,
            });
        }
        Err(e) => errors.push(format!("sweep: {e}")),
    }

    if let Some(cert) = &cert {
        let sc = SweepConfig {
            grid_alpha: opts.ladder_cap,
            grid_beta: opts.ladder_cap,
            budget: (opts.ladder_cap as u64 * opts.ladder_cap as u64)
                .saturating_mul(4)
                .max(opts.sweep.budget),
            ..opts.sweep
        };
        match pattern_search(g, &cert.tour_edges(), &sc) {
            Ok(p) => rec.pattern = Some(p),
            Err(e) => errors.push(format!("pattern: {e}")),
        }
    }

    if !errors.is_empty() {
        rec.error = Some(errors.join("; "));
    }
    rec
}

/// One record per named graph, sorted by file name. Parse failures become
/// records with only the error field set.
pub fn run_corpus(
    entries: Vec<(String, Result<DirectedGraph, String>)>,
    opts: &ReportOptions,
) -> CorpusReport {
    let mut records: Vec<GraphRecord> = entries
        .into_iter()
        .map(|(file, g)| match g {
            Ok(g) => graph_record(&file, &g, opts),
            Err(e) => GraphRecord {
                file,
                n: 0,
                edge_count: 0,
                error: Some(e),
                hamiltonian: None,
                certificate: None,
                indicator_literal: None,
                indicator_token: None,
                discrete_token: None,
                sweep_min: None,
                pattern: None,
            },
        })
        .collect();
    records.sort_by(|a, b| a.file.cmp(&b.file));
    CorpusReport {
        options: opts.clone(),
        records,
    }
}
