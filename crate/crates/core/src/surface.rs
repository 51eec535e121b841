//! Per-genus computation context: caches envelopes and Lie bases.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::scalar::{int_to_rational, serde_rational, Rational};
use crate::tensor::{magnus_expand, Envelope, EnvelopeScalar, LabuteBasis, TruncatedSeries};
use crate::words::{GroupWord, SurfaceGroup};
use crate::{Error, Result};

/// Default hard cap on the truncation class.
pub const DEFAULT_CLASS_CAP: usize = 7;

#[derive(Debug)]
pub struct Surface {
    group: SurfaceGroup,
    class_cap: usize,
    envelopes: Mutex<BTreeMap<usize, Arc<Envelope>>>,
    bases: Mutex<BTreeMap<usize, Arc<LabuteBasis>>>,
}

impl Surface {
    pub fn new(genus: usize) -> Result<Self> {
        Self::with_class_cap(genus, DEFAULT_CLASS_CAP)
    }

    pub fn with_class_cap(genus: usize, class_cap: usize) -> Result<Self> {
        Ok(Surface {
            group: SurfaceGroup::new(genus)?,
            class_cap,
            envelopes: Mutex::new(BTreeMap::new()),
            bases: Mutex::new(BTreeMap::new()),
        })
    }

    pub fn group(&self) -> &SurfaceGroup {
        &self.group
    }

    pub fn genus(&self) -> usize {
        self.group.genus()
    }

    pub fn generators(&self) -> usize {
        self.group.generators()
    }

    pub fn class_cap(&self) -> usize {
        self.class_cap
    }

    pub fn check_class(&self, class: usize) -> Result<()> {
        if class > self.class_cap {
            return Err(Error::ClassTooLarge {
                requested: class,
                max: self.class_cap,
            });
        }
        Ok(())
    }

    /// The quotient envelope at a class within the cap.
    pub fn envelope(&self, class: usize) -> Result<Arc<Envelope>> {
        self.check_class(class)?;
        self.envelope_uncapped(class)
    }

    fn envelope_uncapped(&self, class: usize) -> Result<Arc<Envelope>> {
        let mut cache = self.envelopes.lock().expect("envelope cache poisoned");
        if let Some(e) = cache.get(&class) {
            return Ok(e.clone());
        }
        let e = Arc::new(Envelope::new(&self.group, class)?);
        cache.insert(class, e.clone());
        Ok(e)
    }

    /// Basis of the degree-`d` Lie piece, built on first use.
    pub fn labute_basis(&self, degree: usize) -> Result<Arc<LabuteBasis>> {
        if degree == 0 {
            return Err(Error::ClassTooSmall { min: 1, got: 0 });
        }
        if let Some(b) = self.bases.lock().expect("basis cache poisoned").get(&degree) {
            return Ok(b.clone());
        }
        let env = self.envelope_uncapped(degree + 1)?;
        let basis = Arc::new(LabuteBasis::build(self.genus(), degree, env.graded_rule::<i128>())?);
        self.bases.lock().expect("basis cache poisoned").insert(degree, basis.clone());
        Ok(basis)
    }

    /// Magnus expansion in the free algebra (not normalized).
    pub fn magnus_expand(&self, w: &GroupWord, class: usize) -> Result<TruncatedSeries<i128>> {
        self.check_class(class)?;
        self.group.check_word(w)?;
        magnus_expand(w, self.generators(), class)
    }

    pub fn normal_form<T: EnvelopeScalar>(&self, s: &TruncatedSeries<T>) -> Result<TruncatedSeries<T>> {
        Ok(self.envelope(s.class())?.normal_form(s))
    }

    /// True when `w ∈ Γ_l`.
    pub fn identity_mod_class(&self, w: &GroupWord, l: usize) -> Result<bool> {
        if l == 0 {
            return Err(Error::ClassTooSmall { min: 1, got: 0 });
        }
        self.envelope(l)?.is_identity(w)
    }

    /// Lowest nonvanishing degree of `log M(w)` and its coordinates in the Lie basis.
    pub fn leading_term(&self, w: &GroupWord, max_class: usize) -> Result<LeadingTerm> {
        let env = self.envelope(max_class)?;
        let dense = env.magnus_dense(w)?;
        let Some(d) = dense.lowest_positive_degree() else {
            return Ok(LeadingTerm::Trivial { below_class: max_class });
        };
        // Only degrees ≤ d matter for the degree-d part of the logarithm.
        let series = dense.to_sparse().truncate(d + 1).map(int_to_rational);
        let log = self.envelope_uncapped(d + 1)?.log(&series)?;
        let basis = self.labute_basis(d)?;
        let coords = basis.coordinates(&log.component_map(d))?;
        Ok(LeadingTerm::Term {
            degree: d,
            coordinates: coords
                .into_iter()
                .map(|(index, coefficient)| LieCoordinate {
                    index,
                    label: basis.element(index).label.clone(),
                    coefficient,
                })
                .collect(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LieCoordinate {
    pub index: usize,
    pub label: String,
    #[serde(with = "serde_rational")]
    pub coefficient: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LeadingTerm {
    /// The word lies in `Γ_{below_class}`.
    Trivial { below_class: usize },
    Term { degree: usize, coordinates: Vec<LieCoordinate> },
}

impl LeadingTerm {
    pub fn degree(&self) -> Option<usize> {
        match self {
            LeadingTerm::Trivial { .. } => None,
            LeadingTerm::Term { degree, .. } => Some(*degree),
        }
    }
}

impl fmt::Display for LeadingTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LeadingTerm::Trivial { below_class } => write!(f, "trivial below class {below_class}"),
            LeadingTerm::Term { degree, coordinates } => {
                write!(f, "degree {degree}:")?;
                for c in coordinates {
                    write!(f, " {}·{}", c.coefficient, c.label)?;
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutator_leading_term() {
        let s = Surface::new(2).unwrap();
        let w = s.group().parse_word("a1 b1 a1^-1 b1^-1").unwrap();
        let lt = s.leading_term(&w, 4).unwrap();
        assert_eq!(lt.degree(), Some(2));
        // A1·B1 − B1·A1 is the bracket [A1,B1], possibly expressed through the relation.
        let LeadingTerm::Term { coordinates, .. } = lt else { unreachable!() };
        assert!(!coordinates.is_empty());
        assert!(s.identity_mod_class(s.group().relator(), 6).unwrap());
        assert!(matches!(s.envelope(8), Err(Error::ClassTooLarge { .. })));
    }
}
