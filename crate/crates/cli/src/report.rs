//! Report types and their canonical JSON and text renderings.

use std::fmt::Write as _;

use serde::Serialize;
use torelli_core::mcg::DepthReport;
use torelli_core::sullivan::{FormalityVerdict, MasseySurvey};

use crate::scenario::Scenario;
use crate::verify::VerifyReport;

pub const TOOL: &str = "torelli";

#[derive(Clone, Debug, Serialize)]
pub struct ModelSummary {
    pub genus: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,
    pub class: usize,
    pub generators: usize,
    pub dims_by_weight: Vec<usize>,
    pub differential_terms: usize,
    pub d_squared_zero: bool,
    pub b1: usize,
    pub cup_rank: usize,
    pub cup_kernel_dim: usize,
    pub surface_cup_kernel_dim: usize,
    /// Nonzero entries `(row, column, value)` of the derivation `D = log φ`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub derivation: Option<Vec<(usize, usize, String)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub export: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MasseyOutcome {
    pub word: String,
    pub class: usize,
    pub survey: MasseySurvey,
}

#[derive(Clone, Debug, Serialize)]
pub struct DimsReport {
    pub genus: usize,
    pub class: usize,
    /// `d_1, …, d_{class−1}`.
    pub lie_dims: Vec<u64>,
    /// Monomial counts `c_0, …, c_{class−1}` of the quotient envelope.
    pub envelope_counts: Vec<String>,
    /// Free Lie algebra dimensions on `2g` letters, for comparison.
    pub free_lie_dims: Vec<u64>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PipelineResult {
    Depth(DepthReport),
    Model(ModelSummary),
    Massey(MasseyOutcome),
    Verdict(FormalityVerdict),
    Dims(DimsReport),
    Verify(VerifyReport),
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Timing {
    pub total_ms: u128,
    pub steps_ms: Vec<u128>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scenario: Option<Scenario>,
    pub results: Vec<PipelineResult>,
    /// Deterministic size statistics.
    pub stats: Vec<(String, usize)>,
    /// Wall-clock data; the only part of a report that may differ between runs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            tool: TOOL.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            scenario: None,
            results: Vec::new(),
            stats: Vec::new(),
            timing: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}: {}", self.tool, self.version, self.command);
        for r in &self.results {
            out.push('\n');
            render_result(&mut out, r);
        }
        if !self.stats.is_empty() {
            out.push('\n');
            for (k, v) in &self.stats {
                let _ = writeln!(out, "{k}: {v}");
            }
        }
        if let Some(t) = &self.timing {
            let _ = writeln!(out, "time: {} ms", t.total_ms);
        }
        out
    }
}

fn render_result(out: &mut String, r: &PipelineResult) {
    match r {
        PipelineResult::Depth(d) => {
            let _ = writeln!(out, "depth of {} (max class {}): {}", d.word, d.max_class, d.depth);
            if let Some(b) = d.bracket_bound {
                let _ = writeln!(out, "  bracket lower bound: {b}");
            }
            for g in d.witnesses() {
                let _ = writeln!(out, "  {}: {}", g.generator, g.leading);
            }
        }
        PipelineResult::Model(m) => {
            let what = m.word.as_deref().map_or("surface".to_string(), |w| format!("mapping torus of {w}"));
            let _ = writeln!(out, "model of the {what}, genus {}, class {}", m.genus, m.class);
            let _ = writeln!(out, "  generators {} by weight {:?}, d² = 0: {}", m.generators, m.dims_by_weight, m.d_squared_zero);
            let _ = writeln!(
                out,
                "  b1 {}, cup rank {}, cup kernel {}, surface cup kernel {}",
                m.b1, m.cup_rank, m.cup_kernel_dim, m.surface_cup_kernel_dim
            );
            if let Some(d) = &m.derivation {
                let _ = writeln!(out, "  derivation entries: {}", d.len());
            }
            if let Some(e) = &m.export {
                out.push_str(e);
            }
        }
        PipelineResult::Massey(m) => {
            let _ = writeln!(out, "triple Massey products for {} at class {}", m.word, m.class);
            render_survey(out, &m.survey);
        }
        PipelineResult::Verdict(v) => {
            let _ = writeln!(out, "verdict for {}: {}", v.word, v.verdict_line());
            let _ = writeln!(out, "  depth {}", v.depth);
            if let Some(o) = v.obstruction.found() {
                let coords: Vec<String> = o.coordinates.iter().map(|c| format!("{}·{}", c.coefficient, c.label)).collect();
                let _ = writeln!(out, "  obstruction N = {} at {}: {}", o.n, o.generator, coords.join(" + "));
            }
            let c = &v.cohomology;
            let _ = writeln!(
                out,
                "  computed (class {}): b1 {}, cup rank {}, cup kernel {}, surface cup kernel {}",
                c.model_class, c.b1, c.cup_rank, c.cup_kernel_dim, c.surface_cup_kernel_dim
            );
            let _ = writeln!(out, "  asserted Betti numbers: {:?}", c.betti_asserted);
            render_survey(out, &v.massey);
            for n in &v.notes {
                let _ = writeln!(out, "  note: {n}");
            }
        }
        PipelineResult::Dims(d) => {
            let _ = writeln!(out, "genus {} up to class {}", d.genus, d.class);
            let _ = writeln!(out, "  Lie dims {:?}", d.lie_dims);
            let _ = writeln!(out, "  free Lie dims {:?}", d.free_lie_dims);
            let _ = writeln!(out, "  envelope counts [{}]", d.envelope_counts.join(", "));
        }
        PipelineResult::Verify(v) => {
            let _ = writeln!(out, "verify genus {} class {}", v.genus, v.class);
            for c in &v.checks {
                let _ = writeln!(out, "  {} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
                if let Some(x) = &c.counterexample {
                    let _ = writeln!(out, "    counterexample: {x}");
                }
            }
        }
    }
}

fn render_survey(out: &mut String, s: &MasseySurvey) {
    let _ = writeln!(
        out,
        "  triple products: {} defined of {} surveyed, {} vanish, {} do not",
        s.defined, s.triples, s.vanishing, s.nonvanishing
    );
    for w in &s.witnesses {
        let _ = writeln!(out, "  nonzero ⟨{}, {}, {}⟩ ∋ {}", w.x, w.y, w.z, w.representative);
        let _ = writeln!(out, "    certificate: {}", w.certificate);
    }
}
