//! Finite-dimensional nilpotent Lie algebras given by structure constants.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::linalg::{axpy, SparseVec};
use crate::scalar::Ring;
use crate::{Error, Result};

/// A Lie algebra with a basis of weighted elements, truncated at a class.
///
/// Brackets of weights `p` and `q` land in weight exactly `p + q` when the
/// algebra is graded, and in weights `≥ p + q` when it is only filtered.
/// Anything of weight `≥ class` is zero.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedLieAlgebra<T> {
    class: usize,
    filtered: bool,
    labels: Vec<String>,
    degrees: Vec<usize>,
    brackets: BTreeMap<(usize, usize), SparseVec<usize, T>>,
}

impl<T: Ring> GradedLieAlgebra<T> {
    pub fn new(class: usize, filtered: bool, labels: Vec<String>, degrees: Vec<usize>) -> Self {
        assert_eq!(labels.len(), degrees.len());
        GradedLieAlgebra {
            class,
            filtered,
            labels,
            degrees,
            brackets: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn is_filtered(&self) -> bool {
        self.filtered
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    /// Number of basis elements of each weight `1..class`.
    pub fn dims_by_degree(&self) -> Vec<usize> {
        let mut out = vec![0; self.class.saturating_sub(1)];
        for &d in &self.degrees {
            if d >= 1 && d < self.class {
                out[d - 1] += 1;
            }
        }
        out
    }

    /// Sets `[e_i, e_j] = v` (and `[e_j, e_i] = −v`).
    pub fn set_bracket(&mut self, i: usize, j: usize, v: SparseVec<usize, T>) {
        assert!(i != j, "[e_i, e_i] is always zero");
        let (key, v) = if i < j {
            ((i, j), v)
        } else {
            let mut neg = SparseVec::new();
            axpy(&mut neg, &-T::one(), &v);
            ((j, i), neg)
        };
        if v.is_empty() {
            self.brackets.remove(&key);
        } else {
            self.brackets.insert(key, v);
        }
    }

    pub fn bracket(&self, i: usize, j: usize) -> SparseVec<usize, T> {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => SparseVec::new(),
            Less => self.brackets.get(&(i, j)).cloned().unwrap_or_default(),
            Greater => {
                let mut out = SparseVec::new();
                if let Some(v) = self.brackets.get(&(j, i)) {
                    axpy(&mut out, &-T::one(), v);
                }
                out
            }
        }
    }

    pub fn bracket_vectors(&self, x: &SparseVec<usize, T>, y: &SparseVec<usize, T>) -> SparseVec<usize, T> {
        let mut out = SparseVec::new();
        for (i, a) in x {
            for (j, b) in y {
                if i == j || self.degrees[*i] + self.degrees[*j] >= self.class {
                    continue;
                }
                axpy(&mut out, &a.mul_ref(b), &self.bracket(*i, *j));
            }
        }
        out
    }

    /// Nonzero constants `(i, j, k, C_ij^k)` with `i < j`, sorted.
    pub fn structure_constants(&self) -> Vec<(usize, usize, usize, T)> {
        let mut out = Vec::new();
        for ((i, j), v) in &self.brackets {
            for (k, c) in v {
                out.push((*i, *j, *k, c.clone()));
            }
        }
        out
    }

    pub fn nonzero_constants(&self) -> usize {
        self.brackets.values().map(|v| v.len()).sum()
    }

    /// Checks that every bracket respects the weights and the truncation.
    pub fn check_weights(&self) -> Result<()> {
        for ((i, j), v) in &self.brackets {
            let w = self.degrees[*i] + self.degrees[*j];
            for k in v.keys() {
                let dk = self.degrees[*k];
                let ok = if self.filtered { dk >= w } else { dk == w };
                if !ok || dk >= self.class {
                    return Err(Error::Invariant(format!(
                        "[{}, {}] has a component along {} of weight {dk}",
                        self.labels[*i], self.labels[*j], self.labels[*k]
                    )));
                }
            }
        }
        Ok(())
    }

    /// First basis triple violating the Jacobi identity, if any.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        let e = |i: usize| SparseVec::from([(i, T::one())]);
        let mut by_degree: Vec<usize> = (0..n).collect();
        by_degree.sort_by_key(|&i| (self.degrees[i], i));
        let mut found: Option<(usize, usize, usize)> = None;
        for i in 0..n {
            for j in i + 1..n {
                let w = self.degrees[i] + self.degrees[j];
                if w + 1 >= self.class {
                    continue;
                }
                let ij = e(i);
                let jj = e(j);
                let bij = self.bracket(i, j);
                for &k in by_degree.iter().take_while(|&&k| w + self.degrees[k] < self.class) {
                    if k <= j || found.is_some_and(|f| f <= (i, j, k)) {
                        continue;
                    }
                    let kk = e(k);
                    let mut sum = self.bracket_vectors(&bij, &kk);
                    let t2 = self.bracket_vectors(&self.bracket(j, k), &ij);
                    let t3 = self.bracket_vectors(&self.bracket(k, i), &jj);
                    axpy(&mut sum, &T::one(), &t2);
                    axpy(&mut sum, &T::one(), &t3);
                    if !sum.is_empty() {
                        found = Some((i, j, k));
                    }
                }
                if found.is_some_and(|f| f.0 == i && f.1 == j) {
                    return found;
                }
            }
        }
        found
    }

    pub fn check_jacobi(&self) -> Result<()> {
        match self.jacobi_violation() {
            None => Ok(()),
            Some((i, j, k)) => Err(Error::Invariant(format!(
                "Jacobi identity fails on ({}, {}, {})",
                self.labels[i], self.labels[j], self.labels[k]
            ))),
        }
    }

    /// `D[x,y] = [Dx,y] + [x,Dy]` on every basis pair, for a weight-nondecreasing `D`
    /// given by columns. Pairs of total weight `≥ class` are skipped, since both sides vanish.
    pub fn is_derivation(&self, columns: &[SparseVec<usize, T>]) -> bool {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                if self.degrees[i] + self.degrees[j] >= self.class {
                    continue;
                }
                let mut lhs = SparseVec::new();
                for (k, c) in self.bracket(i, j) {
                    axpy(&mut lhs, &c, &columns[k]);
                }
                let mut rhs = self.bracket_vectors(&columns[i], &SparseVec::from([(j, T::one())]));
                let t = self.bracket_vectors(&SparseVec::from([(i, T::one())]), &columns[j]);
                axpy(&mut rhs, &T::one(), &t);
                axpy(&mut lhs, &-T::one(), &rhs);
                if !lhs.is_empty() {
                    return false;
                }
            }
        }
        true
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> GradedLieAlgebra<U> {
        GradedLieAlgebra {
            class: self.class,
            filtered: self.filtered,
            labels: self.labels.clone(),
            degrees: self.degrees.clone(),
            brackets: self
                .brackets
                .iter()
                .map(|(k, v)| (*k, v.iter().map(|(i, c)| (*i, f(c))).filter(|(_, c)| !c.is_zero()).collect()))
                .filter(|(_, v): &(_, SparseVec<usize, U>)| !v.is_empty())
                .collect(),
        }
    }

    /// Basis labels with weights, then sorted `[i,j,k,c]` quadruples.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# basis {}", self.dim());
        for (i, (l, d)) in self.labels.iter().zip(&self.degrees).enumerate() {
            let _ = writeln!(out, "{i} {l} {d}");
        }
        let _ = writeln!(out, "# brackets {}", self.nonzero_constants());
        for (i, j, k, c) in self.structure_constants() {
            let _ = writeln!(out, "[{i},{j},{k},{c}]");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heisenberg_jacobi_and_corruption() {
        let mut h = GradedLieAlgebra::<i64>::new(3, false, vec!["x".into(), "y".into(), "z".into()], vec![1, 1, 2]);
        h.set_bracket(1, 0, [(2, 1)].into());
        assert_eq!(h.bracket(0, 1), [(2, -1)].into());
        h.check_weights().unwrap();
        h.check_jacobi().unwrap();
        assert_eq!(h.dims_by_degree(), vec![2, 1]);

        let names = ["x", "y", "z", "u", "v", "w", "r"].map(String::from).to_vec();
        let mut f = GradedLieAlgebra::<i64>::new(4, false, names, vec![1, 1, 1, 2, 2, 2, 3]);
        f.set_bracket(0, 1, [(3, 1)].into());
        f.set_bracket(1, 2, [(4, 1)].into());
        f.set_bracket(2, 0, [(5, 1)].into());
        f.set_bracket(0, 4, [(6, 1)].into());
        f.set_bracket(1, 5, [(6, -1)].into());
        f.check_jacobi().unwrap();
        let mut bad = f.clone();
        bad.set_bracket(2, 3, [(6, 1)].into());
        assert_eq!(bad.jacobi_violation(), Some((0, 1, 2)));
        bad.set_bracket(3, 4, [(6, 1)].into());
        assert!(bad.check_weights().is_err());
    }
}
