//! Scenario files: a surface, twist declarations, named expressions and the
//! pipelines to run on them.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};
use torelli_core::mcg::{McgWord, TwistRegistry};
use torelli_core::{Error, Surface, SurfaceGroup, DEFAULT_CLASS_CAP};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistDecl {
    pub name: String,
    /// Handles (1-based) bounded by the separating curve, in boundary order.
    pub boundary: Vec<usize>,
    /// Handles whose generators the twist conjugates.
    pub conjugated: Vec<usize>,
    #[serde(default = "default_sign")]
    pub sign: i8,
}

fn default_sign() -> i8 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedWord {
    pub name: String,
    pub expr: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PipelineKind {
    Depth,
    Model,
    Massey,
    Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Pipeline {
    pub run: PipelineKind,
    /// A named word or an expression; a model pipeline without a word uses the surface alone.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,
    /// Model class for `model`, `massey` and `verdict` (default 4).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputOptions {
    #[serde(default)]
    pub include_models: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub genus: usize,
    pub max_class: usize,
    #[serde(default)]
    pub twists: Vec<TwistDecl>,
    #[serde(default)]
    pub words: Vec<NamedWord>,
    #[serde(default)]
    pub pipelines: Vec<Pipeline>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputOptions>,
}

pub const DEFAULT_MODEL_CLASS: usize = 4;

/// A validated scenario, ready to run.
pub struct Resolved {
    pub scenario: Scenario,
    pub surface: Surface,
    pub registry: TwistRegistry,
    /// Pipelines with their words resolved, in declaration order.
    pub pipelines: Vec<(PipelineKind, Option<McgWord>, usize)>,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::validation(format!("scenario: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::validation(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn resolve(self, hard_cap: usize) -> Result<Resolved, CliError> {
        let group = SurfaceGroup::new(self.genus)?;
        if self.max_class < 3 {
            return Err(Error::ClassTooSmall { min: 3, got: self.max_class }.into());
        }
        if self.max_class > hard_cap {
            return Err(Error::ClassTooLarge {
                requested: self.max_class,
                max: hard_cap,
            }
            .into());
        }
        let mut registry = TwistRegistry::new(group);
        for t in &self.twists {
            registry.declare(&t.name, &t.boundary, &t.conjugated, t.sign)?;
        }
        let mut names = BTreeSet::new();
        let mut named = Vec::new();
        for w in &self.words {
            if !names.insert(w.name.clone()) {
                return Err(CliError::validation(format!("word name `{}` declared twice", w.name)));
            }
            named.push((w.name.clone(), registry.parse(&w.expr)?));
        }
        let mut pipelines = Vec::new();
        for p in &self.pipelines {
            let word = match &p.word {
                None if p.run == PipelineKind::Model => None,
                None => return Err(CliError::validation(format!("{:?} pipeline needs a word", p.run))),
                Some(w) => Some(match named.iter().find(|(n, _)| n == w) {
                    Some((_, m)) => m.clone(),
                    None => registry.parse(w)?,
                }),
            };
            let class = p.class.unwrap_or(DEFAULT_MODEL_CLASS);
            if class < 2 || class > hard_cap {
                return Err(CliError::validation(format!("model class {class} outside 2..={hard_cap}")));
            }
            pipelines.push((p.run, word, class));
        }
        let surface = Surface::with_class_cap(self.genus, hard_cap)?;
        Ok(Resolved {
            scenario: self,
            surface,
            registry,
            pipelines,
        })
    }
}

/// The hard cap on classes unless overridden.
pub fn default_hard_cap() -> usize {
    DEFAULT_CLASS_CAP
}

/// Twists known to the single-shot commands: `t` cuts off handle 1, and in
/// genus 4 the pair `t1`, `t2` of the bundled bracket scenario.
pub fn default_registry(genus: usize) -> Result<TwistRegistry, CliError> {
    let mut reg = TwistRegistry::new(SurfaceGroup::new(genus)?);
    let others: Vec<usize> = (2..=genus).collect();
    reg.declare("t", &[1], &others, 1)?;
    if genus == 4 {
        reg.declare("t1", &[1, 2], &[3, 4], 1)?;
        reg.declare("t2", &[1, 4], &[2, 3], 1)?;
    }
    Ok(reg)
}
