//! Exact computations with Torelli elements acting on the lower central
//! series of closed surface groups.
//!
//! * [`words`]: surface group words and Dehn's algorithm.
//! * [`tensor`]: Magnus expansion, the quotient envelope and Lie bases.
//! * [`mcg`]: separating twists, mapping class words and depth reports.
//! * [`torus`]: Malcev algebras and mapping-torus algebras.
//! * [`sullivan`]: minimal models, Massey products and formality verdicts.

pub mod error;
pub mod lie;
pub mod linalg;
pub mod mcg;
pub mod scalar;
pub mod sullivan;
pub mod surface;
pub mod tensor;
pub mod torus;
pub mod words;

pub use error::{Error, Result};
pub use scalar::{Field, Rational, Ring};
pub use surface::{LeadingTerm, Surface, DEFAULT_CLASS_CAP};
pub use words::{GroupWord, Letter, SurfaceGroup};

/// Exact series, as used for logarithms and Lie coordinates.
pub type Series = tensor::TruncatedSeries<Rational>;
/// Integer series, as produced by the Magnus expansion of group words.
pub type IntSeries = tensor::TruncatedSeries<i128>;
/// Floating-point series for quick numerical experiments.
pub type FloatSeries = tensor::TruncatedSeries<f64>;
/// Exact sparse matrices.
pub type Matrix = linalg::SparseMatrix<Rational>;
/// Exact Lie algebras with structure constants in the rationals.
pub type LieAlgebra = lie::GradedLieAlgebra<Rational>;
