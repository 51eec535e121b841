//! Graded Lie algebra of the lower central series of a surface group.
//!
//! Bases are built from Lyndon words over the reversed alphabet
//! `Bg > Ag > … > B1 > A1`. With that order the standard bracket of a Lyndon
//! word `ℓ` expands to `ℓ` plus strictly smaller words, and the quadratic
//! rewrite `Bg·Ag → …` only lowers words further. So whenever `ℓ` avoids the
//! factor `Bg·Ag`, `ℓ` is the largest monomial of the normal form of its
//! bracket, with coefficient 1, and these brackets are unitriangular.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::dense::{sparse_normal_form, RewriteRule};
use super::lyndon::{lyndon_words, Bracket};
use super::monomial::Monomial;
use super::series::TruncatedSeries;
use crate::scalar::Ring;
use crate::{Error, Result};

/// `c_0..=c_n`: dimensions of the graded pieces of the quotient envelope,
/// from `1/(1 − 2g·t + t²)`.
pub fn envelope_counts(genus: usize, n: usize) -> Vec<BigInt> {
    let two_g = BigInt::from(2 * genus);
    let mut c: Vec<BigInt> = Vec::with_capacity(n + 1);
    for d in 0..=n {
        let v = match d {
            0 => BigInt::one(),
            1 => two_g.clone(),
            _ => &two_g * &c[d - 1] - &c[d - 2],
        };
        c.push(v);
    }
    c
}

/// `d_1..=d_n`: dimensions of the graded Lie algebra, obtained by inverting
/// `Π_i (1 − t^i)^{−d_i} = Σ c_d t^d`.
pub fn labute_graded_dims_big(genus: usize, n: usize) -> Vec<BigInt> {
    let c = envelope_counts(genus, n);
    // Product of the factors fixed so far, truncated at t^n.
    let mut prod = vec![BigInt::zero(); n + 1];
    prod[0] = BigInt::one();
    let mut dims = Vec::with_capacity(n);
    for m in 1..=n {
        let dm = &c[m] - &prod[m];
        // Multiply by (1 − t^m)^{−dm} = Σ_j C(dm + j − 1, j) t^{mj}.
        let mut next = vec![BigInt::zero(); n + 1];
        let mut binom = BigInt::one();
        for j in 0..=n / m {
            if j > 0 {
                binom = binom * (&dm + BigInt::from(j - 1)) / BigInt::from(j);
            }
            for e in 0..=n - m * j {
                if !prod[e].is_zero() {
                    next[e + m * j] += &prod[e] * &binom;
                }
            }
        }
        prod = next;
        dims.push(dm);
    }
    dims
}

/// `d_1..=d_n` as machine integers.
pub fn labute_graded_dims(genus: usize, n: usize) -> Result<Vec<u64>> {
    labute_graded_dims_big(genus, n)
        .into_iter()
        .map(|d| d.to_u64().ok_or_else(|| Error::BudgetExceeded(format!("dimension {d} does not fit in 64 bits"))))
        .collect()
}

/// One basis element: a normal Lyndon word and the normal form of its bracket.
#[derive(Clone, Debug)]
pub struct LabuteElement {
    pub bracket: Bracket,
    pub label: String,
    /// The Lyndon word in monomial letters.
    pub word: Vec<usize>,
    /// Normal form of the bracket, by increasing index; the last entry is
    /// the word itself with coefficient 1.
    pub poly: Vec<(u64, i128)>,
}

impl LabuteElement {
    pub fn pivot(&self) -> u64 {
        self.poly.last().expect("nonzero basis element").0
    }
}

/// Basis of the degree-`d` piece.
#[derive(Clone, Debug)]
pub struct LabuteBasis {
    genus: usize,
    degree: usize,
    elements: Vec<LabuteElement>,
    pivots: HashMap<u64, usize>,
    /// Number of Lyndon words whose brackets were checked to lie in the span.
    pub dependent_checked: usize,
}

impl LabuteBasis {
    /// Builds the basis and checks it against the Hilbert-series dimension.
    ///
    /// `graded` must be the quadratic rewrite rule, truncated at class `> degree`.
    pub fn build(genus: usize, degree: usize, graded: &RewriteRule<i128>) -> Result<Self> {
        let k = 2 * genus;
        if graded.class() <= degree {
            return Err(Error::Invariant(format!("graded rule truncated below degree {degree}")));
        }
        let forbidden = (k - 1, k - 2);
        let to_letter = |s: usize| k - 1 - s;
        let mut elements = Vec::new();
        let mut pivots = HashMap::new();
        let mut dependent = Vec::new();
        for symbols in lyndon_words(k, degree) {
            let word: Vec<usize> = symbols.iter().map(|&s| to_letter(s)).collect();
            let bracket = Bracket::standard(&symbols).map_letters(&to_letter);
            let normal = !word.windows(2).any(|p| (p[0], p[1]) == forbidden);
            let poly = graded_normal_poly(&bracket, k, degree, graded);
            if normal {
                let target = Monomial::from_letters(&word, k).index();
                match poly.last() {
                    Some(&(idx, 1)) if idx == target => {}
                    _ => {
                        return Err(Error::Invariant(format!(
                            "bracket of normal Lyndon word {} is not unitriangular",
                            bracket.label()
                        )))
                    }
                }
                pivots.insert(target, elements.len());
                elements.push(LabuteElement {
                    label: bracket.label(),
                    bracket,
                    word,
                    poly,
                });
            } else {
                dependent.push((bracket, poly));
            }
        }
        let mut basis = LabuteBasis {
            genus,
            degree,
            elements,
            pivots,
            dependent_checked: 0,
        };
        // Rank filter: every other Lyndon bracket reduces to zero against the pivots.
        for (bracket, poly) in dependent {
            let v: BTreeMap<u64, i128> = poly.into_iter().collect();
            if basis.reduce(v).is_err() {
                return Err(Error::Invariant(format!(
                    "Lyndon bracket {} is independent of the normal brackets",
                    bracket.label()
                )));
            }
            basis.dependent_checked += 1;
        }
        let expected = labute_graded_dims(genus, degree)?[degree - 1];
        if basis.elements.len() as u64 != expected {
            return Err(Error::Invariant(format!(
                "degree {degree} basis has {} elements, expected {expected}",
                basis.elements.len()
            )));
        }
        Ok(basis)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[LabuteElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &LabuteElement {
        &self.elements[i]
    }

    fn reduce<T: Ring>(&self, mut v: BTreeMap<u64, T>) -> std::result::Result<Vec<(usize, T)>, u64> {
        let mut coords = Vec::new();
        while let Some((idx, c)) = v.pop_last() {
            let Some(&i) = self.pivots.get(&idx) else {
                return Err(idx);
            };
            for (m, a) in &self.elements[i].poly[..self.elements[i].poly.len() - 1] {
                let entry = v.entry(*m).or_insert_with(T::zero);
                *entry -= c.mul_ref(&T::from_int(*a as i64));
                if entry.is_zero() {
                    v.remove(m);
                }
            }
            coords.push((i, c));
        }
        coords.sort_by_key(|(i, _)| *i);
        Ok(coords)
    }

    /// Coordinates of a homogeneous normal-form vector of this degree.
    ///
    /// Fails if the vector is not in the span, i.e. is not a Lie element.
    pub fn coordinates<T: Ring>(&self, v: &BTreeMap<u64, T>) -> Result<Vec<(usize, T)>> {
        self.reduce(v.clone()).map_err(|idx| {
            let m = Monomial::new(self.degree, idx);
            Error::Invariant(format!(
                "degree-{} vector is not a Lie element (stuck at {})",
                self.degree,
                m.display(2 * self.genus)
            ))
        })
    }

    /// The basis element as a homogeneous series.
    pub fn element_series<T: Ring>(&self, i: usize, class: usize) -> TruncatedSeries<T> {
        let k = 2 * self.genus;
        TruncatedSeries::from_terms(
            k,
            class,
            self.elements[i].poly.iter().map(|(idx, c)| (Monomial::new(self.degree, *idx), T::from_int(*c as i64))),
        )
    }
}

fn graded_normal_poly(bracket: &Bracket, k: usize, degree: usize, graded: &RewriteRule<i128>) -> Vec<(u64, i128)> {
    let s = TruncatedSeries::from_terms(
        k,
        degree + 1,
        bracket.polynomial(k).into_iter().map(|(idx, c)| (Monomial::new(degree, idx), c)),
    );
    sparse_normal_form(&s, graded).component_map(degree).into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[u64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn envelope_and_lie_dimensions() {
        assert_eq!(envelope_counts(2, 5), big(&[1, 4, 15, 56, 209, 780]));
        assert_eq!(labute_graded_dims(2, 5).unwrap(), vec![4, 5, 16, 45, 144]);
        assert_eq!(labute_graded_dims(3, 5).unwrap(), vec![6, 14, 64, 280, 1344]);
        assert_eq!(labute_graded_dims(4, 7).unwrap(), vec![8, 27, 160, 945, 6048, 39600, 267840]);
    }
}
