//! Runs pipelines against a surface and a twist registry.

use std::collections::BTreeMap;
use std::time::Instant;

use torelli_core::mcg::{depth_report, McgWord, TwistRegistry};
use torelli_core::scalar::format_rational;
use torelli_core::sullivan::{formality_verdict, mapping_torus_model, massey_survey, surface_model, MinimalModel};
use torelli_core::tensor::{envelope_counts, labute_graded_dims};
use torelli_core::torus::{mapping_torus, MalcevAlgebra};
use torelli_core::{Rational, Surface};

use crate::report::{DimsReport, MasseyOutcome, ModelSummary, PipelineResult, Report, Timing};
use crate::scenario::{PipelineKind, Resolved};
use crate::CliError;

pub struct Runner<'a> {
    surface: &'a Surface,
    registry: &'a TwistRegistry,
    include_models: bool,
    malcev: BTreeMap<usize, MalcevAlgebra>,
}

impl<'a> Runner<'a> {
    pub fn new(surface: &'a Surface, registry: &'a TwistRegistry, include_models: bool) -> Self {
        Runner {
            surface,
            registry,
            include_models,
            malcev: BTreeMap::new(),
        }
    }

    fn malcev(&mut self, class: usize) -> Result<&MalcevAlgebra, CliError> {
        if !self.malcev.contains_key(&class) {
            let m = MalcevAlgebra::build(self.surface, class)?;
            self.malcev.insert(class, m);
        }
        Ok(&self.malcev[&class])
    }

    pub fn depth(&self, m: &McgWord, max_class: usize) -> Result<PipelineResult, CliError> {
        Ok(PipelineResult::Depth(depth_report(self.surface, self.registry, m, max_class)?))
    }

    fn torus_model(&mut self, m: &McgWord, class: usize) -> Result<(MinimalModel<Rational>, Vec<(usize, usize, String)>), CliError> {
        let (surface, registry) = (self.surface, self.registry);
        let malcev = self.malcev(class)?;
        let torus = mapping_torus(malcev, registry, m, true)?;
        let mut derivation: Vec<(usize, usize, String)> =
            torus.torus.derivation.entries().map(|(i, j, x)| (i, j, format_rational(x))).collect();
        derivation.sort_by_key(|e| (e.0, e.1));
        Ok((mapping_torus_model(surface.genus(), &torus.torus)?, derivation))
    }

    pub fn model(&mut self, m: Option<&McgWord>, class: usize) -> Result<PipelineResult, CliError> {
        let genus = self.surface.genus();
        let (model, derivation) = match m {
            Some(m) => {
                let (model, d) = self.torus_model(m, class)?;
                (model, Some(d))
            }
            None => (surface_model(genus, self.malcev(class)?.algebra())?, None),
        };
        let cup = model.h1_and_cup();
        Ok(PipelineResult::Model(ModelSummary {
            genus,
            word: m.map(|m| m.to_string()),
            class,
            generators: model.len(),
            dims_by_weight: model.dims_by_weight(),
            differential_terms: (0..model.len()).map(|k| model.d_generator(k).len()).sum(),
            d_squared_zero: model.d_squared_defects().is_empty(),
            b1: cup.b1(),
            cup_rank: cup.cup_rank,
            cup_kernel_dim: cup.cup_kernel_dim,
            surface_cup_kernel_dim: cup.surface_cup_kernel_dim,
            derivation: derivation.filter(|_| self.include_models),
            export: self.include_models.then(|| model.export()),
        }))
    }

    pub fn massey(&mut self, m: &McgWord, class: usize) -> Result<PipelineResult, CliError> {
        let (model, _) = self.torus_model(m, class)?;
        Ok(PipelineResult::Massey(MasseyOutcome {
            word: m.to_string(),
            class,
            survey: massey_survey(&model)?,
        }))
    }

    pub fn verdict(&mut self, m: &McgWord, max_class: usize, model_class: usize) -> Result<PipelineResult, CliError> {
        Ok(PipelineResult::Verdict(formality_verdict(self.surface, self.registry, m, max_class, model_class)?))
    }

    /// Dimensions of the Malcev algebras built so far.
    pub fn stats(&self) -> Vec<(String, usize)> {
        self.malcev.iter().map(|(c, m)| (format!("malcev_dim_class_{c}"), m.dim())).collect()
    }
}

fn mobius(n: u64) -> i64 {
    let (mut n, mut mu, mut p) = (n, 1i64, 2u64);
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// Dimensions of the degree-`n` parts of the free Lie algebra on `k` letters.
pub fn free_lie_dims(k: u64, n: usize) -> Vec<u64> {
    (1..=n as u64)
        .map(|n| {
            let s: i128 = (1..=n).filter(|d| n % d == 0).map(|d| mobius(d) as i128 * (k as i128).pow((n / d) as u32)).sum();
            (s / n as i128) as u64
        })
        .collect()
}

pub fn dims(surface: &Surface, class: usize) -> Result<PipelineResult, CliError> {
    surface.check_class(class)?;
    let genus = surface.genus();
    let n = class.saturating_sub(1);
    Ok(PipelineResult::Dims(DimsReport {
        genus,
        class,
        lie_dims: labute_graded_dims(genus, n)?,
        envelope_counts: envelope_counts(genus, n).iter().map(|c| c.to_string()).collect(),
        free_lie_dims: free_lie_dims(2 * genus as u64, n),
    }))
}

/// Runs every pipeline of a scenario in order.
pub fn run_scenario(resolved: Resolved, timing: bool) -> Result<Report, CliError> {
    let start = Instant::now();
    let include_models = resolved.scenario.output.as_ref().is_some_and(|o| o.include_models);
    let max_class = resolved.scenario.max_class;
    let mut runner = Runner::new(&resolved.surface, &resolved.registry, include_models);
    let mut report = Report::new("run");
    let mut steps = Vec::new();
    for (kind, word, class) in &resolved.pipelines {
        let step = Instant::now();
        let result = match (kind, word) {
            (PipelineKind::Depth, Some(m)) => runner.depth(m, max_class)?,
            (PipelineKind::Model, m) => runner.model(m.as_ref(), *class)?,
            (PipelineKind::Massey, Some(m)) => runner.massey(m, *class)?,
            (PipelineKind::Verdict, Some(m)) => runner.verdict(m, max_class, *class)?,
            (k, None) => return Err(CliError::validation(format!("{k:?} pipeline needs a word"))),
        };
        report.results.push(result);
        steps.push(step.elapsed().as_millis());
    }
    report.stats = vec![("pipelines".into(), resolved.pipelines.len())];
    report.stats.extend(runner.stats());
    report.scenario = Some(resolved.scenario.clone());
    if timing {
        report.timing = Some(Timing {
            total_ms: start.elapsed().as_millis(),
            steps_ms: steps,
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witt_formula() {
        assert_eq!(free_lie_dims(2, 6), vec![2, 1, 2, 3, 6, 9]);
        assert_eq!(free_lie_dims(4, 3), vec![4, 6, 20]);
    }
}
