//! Truncated noncommutative power series, the Magnus expansion and the
//! quotient envelope of a surface group.

pub mod dense;
pub mod envelope;
pub mod labute;
pub mod lyndon;
pub mod monomial;
pub mod series;

pub use dense::{magnus_expand, sparse_normal_form, DenseSeries, RewriteRule, DENSE_ENTRY_BUDGET};
pub use envelope::{Envelope, EnvelopeScalar};
pub use labute::{envelope_counts, labute_graded_dims, LabuteBasis, LabuteElement};
pub use lyndon::{lyndon_words, Bracket};
pub use monomial::{symbol_name, Monomial};
pub use series::TruncatedSeries;
