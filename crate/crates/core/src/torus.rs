//! Malcev Lie algebras of surface groups and of symplectized mapping tori.
//!
//! The class-`n` Malcev algebra is realized inside the quotient envelope:
//! each graded basis element is lifted to a group commutator `γ`, and
//! `v_γ = log M(γ)` (in normal form) gives a filtered basis. Coordinates of
//! any Lie element are then read off degree by degree.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::lie::GradedLieAlgebra;
use crate::linalg::{Echelon, SparseMatrix, SparseVec};
use crate::mcg::{McgWord, TwistRegistry};
use num_traits::Zero;

use crate::scalar::{Rational, Ring};
use crate::surface::Surface;
use crate::tensor::{Envelope, LabuteBasis};
use crate::words::GroupWord;
use crate::{Error, LieAlgebra, Matrix, Result, Series};

#[derive(Clone, Debug)]
pub struct FilteredElement {
    pub label: String,
    pub degree: usize,
    pub word: GroupWord,
    pub vector: Series,
}

/// The class-`n` Malcev algebra with its filtered basis.
#[derive(Debug)]
pub struct MalcevAlgebra {
    class: usize,
    env: Arc<Envelope>,
    graded: Vec<Arc<LabuteBasis>>,
    offsets: Vec<usize>,
    elements: Vec<FilteredElement>,
    algebra: LieAlgebra,
}

impl MalcevAlgebra {
    /// Builds the filtered basis, checks its triangularity against the graded
    /// basis, and computes the structure constants.
    pub fn build(surface: &Surface, class: usize) -> Result<Self> {
        if class < 2 {
            return Err(Error::ClassTooSmall { min: 2, got: class });
        }
        let env = surface.envelope(class)?;
        let mut graded = Vec::new();
        let mut offsets = Vec::new();
        let mut elements = Vec::new();
        for d in 1..class {
            let basis = surface.labute_basis(d)?;
            offsets.push(elements.len());
            let built: Vec<FilteredElement> = basis
                .elements()
                .par_iter()
                .enumerate()
                .map(|(i, e)| {
                    let word = e.bracket.group_word();
                    let vector = env.log(&env.expand_rational(&word)?)?;
                    let lowest = vector.lowest_positive_degree();
                    let expected = basis.element_series::<Rational>(i, class);
                    if lowest != Some(d) || vector.component(d) != expected {
                        return Err(Error::Invariant(format!(
                            "log of the commutator realizing {} does not start with its bracket",
                            e.label
                        )));
                    }
                    Ok(FilteredElement {
                        label: e.label.clone(),
                        degree: d,
                        word,
                        vector,
                    })
                })
                .collect::<Result<_>>()?;
            elements.extend(built);
            graded.push(basis);
        }
        offsets.push(elements.len());
        let labels = elements.iter().map(|e| e.label.clone()).collect();
        let degrees = elements.iter().map(|e| e.degree).collect();
        let mut m = MalcevAlgebra {
            class,
            env,
            graded,
            offsets,
            elements,
            algebra: GradedLieAlgebra::new(class, true, labels, degrees),
        };
        let n = m.elements.len();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| m.elements[i].degree + m.elements[j].degree < class)
            .collect();
        let brackets: Vec<((usize, usize), SparseVec<usize, Rational>)> = pairs
            .par_iter()
            .map(|&(i, j)| {
                let c = m.env.commutator(&m.elements[i].vector, &m.elements[j].vector);
                Ok(((i, j), m.coordinates(&c)?))
            })
            .collect::<Result<_>>()?;
        for ((i, j), v) in brackets {
            m.algebra.set_bracket(i, j, v);
        }
        m.algebra.check_weights()?;
        Ok(m)
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[FilteredElement] {
        &self.elements
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn envelope(&self) -> &Envelope {
        &self.env
    }

    /// Index range of the basis elements of degree `d`.
    pub fn degree_range(&self, d: usize) -> std::ops::Range<usize> {
        self.offsets[d - 1]..self.offsets[d]
    }

    /// Coordinates of a Lie element (a normal-form series with zero constant term).
    pub fn coordinates(&self, s: &Series) -> Result<SparseVec<usize, Rational>> {
        if !s.constant_term().is_zero() {
            return Err(Error::ConstantTerm {
                expected: "0",
                found: s.constant_term().to_string(),
            });
        }
        let mut residual = s.clone();
        let mut out = SparseVec::new();
        for d in 1..self.class {
            let comp = residual.component_map(d);
            if comp.is_empty() {
                continue;
            }
            for (i, c) in self.graded[d - 1].coordinates(&comp)? {
                let idx = self.offsets[d - 1] + i;
                residual = residual.sub(&self.elements[idx].vector.scale(&c));
                out.insert(idx, c);
            }
        }
        if !residual.is_zero() {
            return Err(Error::Invariant("coordinate solve left a nonzero residual".into()));
        }
        Ok(out)
    }

    /// The Lie element with the given coordinates.
    pub fn element(&self, coords: &SparseVec<usize, Rational>) -> Series {
        let mut out = Series::zero(self.env.alphabet(), self.class);
        for (i, c) in coords {
            out = out.add(&self.elements[*i].vector.scale(c));
        }
        out
    }

    /// Matrix of the automorphism induced by a group automorphism, one column per basis element.
    pub fn induced_matrix(&self, phi: &crate::mcg::Automorphism) -> Result<Matrix> {
        let cols: Vec<SparseVec<usize, Rational>> = self
            .elements
            .par_iter()
            .map(|e| {
                let image = phi.apply(&e.word);
                let v = self.env.log(&self.env.expand_rational(&image)?)?;
                self.coordinates(&v)
            })
            .collect::<Result<_>>()?;
        Ok(SparseMatrix::from_columns(self.dim(), cols))
    }

    /// `M − I` sends degree `d` into degrees `> d`.
    pub fn is_block_unipotent(&self, m: &Matrix) -> bool {
        m.entries().all(|(i, j, x)| {
            self.elements[i].degree > self.elements[j].degree || (i == j && *x == Rational::from_int(1))
        }) && (0..self.dim()).all(|j| m.get(j, j) == Rational::from_int(1))
    }

    /// `M[e_i, e_j] = [M e_i, M e_j]` on all basis pairs.
    pub fn is_automorphism(&self, m: &Matrix) -> bool {
        let n = self.dim();
        let cols = m.columns();
        (0..n).into_par_iter().all(|i| {
            (i + 1..n)
                .filter(|&j| self.elements[i].degree + self.elements[j].degree < self.class)
                .all(|j| {
                    let lhs = m.apply(&self.algebra.bracket(i, j));
                    lhs == self.algebra.bracket_vectors(&cols[i], &cols[j])
                })
        })
    }
}

/// Matrix of the action of a Torelli word on the class-`n` Malcev algebra.
pub fn phi_matrix(malcev: &MalcevAlgebra, registry: &TwistRegistry, m: &McgWord) -> Result<Matrix> {
    let phi = registry.automorphism(m)?;
    if !phi.acts_trivially_on_homology() {
        return Err(Error::NotTorelli(m.to_string()));
    }
    let mat = malcev.induced_matrix(&phi)?;
    if !malcev.is_block_unipotent(&mat) {
        return Err(Error::Invariant(format!("action of {m} is not block-unipotent")));
    }
    Ok(mat)
}

pub fn log_unipotent(m: &Matrix) -> Result<Matrix> {
    m.log_unipotent()
}

/// Inverse of a unipotent matrix, `exp(−log M)`.
pub fn inverse_unipotent(m: &Matrix) -> Result<Matrix> {
    m.log_unipotent()?.scale(&Rational::from_int(-1)).exp_nilpotent()
}

/// Malcev algebra of `X_φ`: `L ⋊ ⟨s⟩`, with `[s, x] = D x`, plus a central `t`.
#[derive(Clone, Debug)]
pub struct MappingTorusAlgebra {
    pub base: LieAlgebra,
    pub derivation: Matrix,
    pub symplectize: bool,
    pub algebra: LieAlgebra,
}

impl MappingTorusAlgebra {
    pub fn s_index(&self) -> usize {
        self.base.dim()
    }

    pub fn t_index(&self) -> Option<usize> {
        self.symplectize.then(|| self.base.dim() + 1)
    }
}

pub fn build_mapping_torus_algebra(base: &LieAlgebra, derivation: &Matrix, symplectize: bool) -> Result<MappingTorusAlgebra> {
    let n = base.dim();
    if derivation.rows() != n || derivation.cols() != n {
        return Err(Error::Invariant(format!(
            "derivation is {}×{}, algebra has dimension {n}",
            derivation.rows(),
            derivation.cols()
        )));
    }
    let columns = derivation.columns().to_vec();
    for (j, col) in columns.iter().enumerate() {
        if col.keys().any(|&i| base.degree(i) <= base.degree(j)) {
            return Err(Error::Invariant(format!("derivation does not raise the weight of {}", base.label(j))));
        }
    }
    if !base.is_derivation(&columns) {
        return Err(Error::Invariant("derivation violates the Leibniz rule".into()));
    }
    let mut labels = base.labels().to_vec();
    let mut degrees = base.degrees().to_vec();
    labels.push("s".into());
    degrees.push(1);
    if symplectize {
        labels.push("t".into());
        degrees.push(1);
    }
    let mut algebra = GradedLieAlgebra::new(base.class(), true, labels, degrees);
    for (i, j, k, c) in base.structure_constants() {
        let mut v = algebra.bracket(i, j);
        v.insert(k, c);
        algebra.set_bracket(i, j, v);
    }
    for (j, col) in columns.into_iter().enumerate() {
        algebra.set_bracket(n, j, col);
    }
    algebra.check_weights()?;
    algebra.check_jacobi()?;
    Ok(MappingTorusAlgebra {
        base: base.clone(),
        derivation: derivation.clone(),
        symplectize,
        algebra,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraInvariants {
    pub dim: usize,
    pub center_dim: usize,
    /// `dim A_k / A_{k+1}` for the lower central series of the truncated algebra.
    pub lcs_quotients: Vec<usize>,
    pub ad_s_rank: usize,
    pub s_central: bool,
    pub t_central: Option<bool>,
}

fn basis_vector(i: usize) -> SparseVec<usize, Rational> {
    SparseVec::from([(i, Rational::from_int(1))])
}

fn center_dim(a: &LieAlgebra) -> usize {
    let n = a.dim();
    let mut e: Echelon<(usize, usize), Rational> = Echelon::new();
    for i in 0..n {
        let mut v = BTreeMap::new();
        for j in (0..n).filter(|&j| a.degree(i) + a.degree(j) < a.class()) {
            for (k, c) in a.bracket(i, j) {
                v.insert((j, k), c);
            }
        }
        e.insert(v);
    }
    n - e.rank()
}

fn lcs_quotients(a: &LieAlgebra) -> Vec<usize> {
    let n = a.dim();
    let mut current: Vec<SparseVec<usize, Rational>> = (0..n).map(basis_vector).collect();
    let mut out = Vec::new();
    while !current.is_empty() {
        let mut e = Echelon::new();
        let mut next = Vec::new();
        for i in 0..n {
            for v in &current {
                let b = a.bracket_vectors(&basis_vector(i), v);
                if e.insert(b.clone()).is_none() {
                    next.push(b);
                }
            }
        }
        out.push(current.len() - next.len());
        if next.len() == current.len() {
            break;
        }
        current = next;
    }
    out
}

pub fn algebra_invariants(a: &MappingTorusAlgebra) -> AlgebraInvariants {
    let s = a.s_index();
    let s_central = (0..a.algebra.dim()).all(|j| a.algebra.bracket(s, j).is_empty());
    let t_central = a.t_index().map(|t| (0..a.algebra.dim()).all(|j| a.algebra.bracket(t, j).is_empty()));
    AlgebraInvariants {
        dim: a.algebra.dim(),
        center_dim: center_dim(&a.algebra),
        lcs_quotients: lcs_quotients(&a.algebra),
        ad_s_rank: a.derivation.rank(),
        s_central,
        t_central,
    }
}

/// Everything needed downstream for one Torelli word at one class.
#[derive(Debug)]
pub struct MappingTorus {
    pub word: McgWord,
    pub phi: Matrix,
    pub torus: MappingTorusAlgebra,
}

pub fn mapping_torus(malcev: &MalcevAlgebra, registry: &TwistRegistry, m: &McgWord, symplectize: bool) -> Result<MappingTorus> {
    let phi = phi_matrix(malcev, registry, m)?;
    let d = log_unipotent(&phi)?;
    if d.exp_nilpotent()? != phi {
        return Err(Error::Invariant("exp(log M) ≠ M".into()));
    }
    if !malcev.is_automorphism(&phi) {
        return Err(Error::Invariant(format!("action of {m} does not preserve brackets")));
    }
    let torus = build_mapping_torus_algebra(malcev.algebra(), &d, symplectize)?;
    Ok(MappingTorus {
        word: m.clone(),
        phi,
        torus,
    })
}

/// Lists `(row, column, value)` of the nonzero entries of `M − I`, for reports.
pub fn unipotent_part(m: &Matrix) -> Vec<(usize, usize, Rational)> {
    let mut out: Vec<(usize, usize, Rational)> = m.sub(&Matrix::identity(m.rows())).entries().map(|(i, j, x)| (i, j, x.clone())).collect();
    out.sort_by_key(|e| (e.0, e.1));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mcg::builtin_separating_twist;

    #[test]
    fn twist_action_at_class_three_and_four() {
        let reg = builtin_separating_twist(2).unwrap();
        let s = Surface::new(2).unwrap();
        let t = reg.parse("t").unwrap();
        let m3 = MalcevAlgebra::build(&s, 3).unwrap();
        assert_eq!(m3.dim(), 9);
        assert!(phi_matrix(&m3, &reg, &t).unwrap().is_identity());
        let m4 = MalcevAlgebra::build(&s, 4).unwrap();
        m4.algebra().check_jacobi().unwrap();
        let phi = phi_matrix(&m4, &reg, &t).unwrap();
        assert!(!phi.is_identity());
        assert!(m4.is_automorphism(&phi));
        let torus = mapping_torus(&m4, &reg, &t, true).unwrap();
        let inv = algebra_invariants(&torus.torus);
        assert_eq!(inv.dim, 4 + 5 + 16 + 2);
        assert!(inv.ad_s_rank > 0);
        assert!(!inv.s_central);
        assert_eq!(inv.t_central, Some(true));
    }
}
