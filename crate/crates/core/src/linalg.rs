//! Sparse vectors, column-sparse matrices and row echelon forms over exact fields.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::{Field, Ring};
use crate::{Error, Result};

/// Sparse vector keyed by basis index; zero entries are never stored.
pub type SparseVec<K, T> = BTreeMap<K, T>;

/// `v += c·w`, dropping entries that cancel.
pub fn axpy<K: Ord + Copy, T: Ring>(v: &mut SparseVec<K, T>, c: &T, w: &SparseVec<K, T>) {
    if c.is_zero() {
        return;
    }
    for (k, x) in w {
        let entry = v.entry(*k).or_insert_with(T::zero);
        *entry += c.mul_ref(x);
        if entry.is_zero() {
            v.remove(k);
        }
    }
}

pub fn scaled<K: Ord + Copy, T: Ring>(c: &T, w: &SparseVec<K, T>) -> SparseVec<K, T> {
    let mut out = SparseVec::new();
    axpy(&mut out, c, w);
    out
}

/// Column-sparse matrix; column `j` is the image of the `j`-th basis vector.
#[derive(Clone, PartialEq, Debug)]
pub struct SparseMatrix<T> {
    rows: usize,
    columns: Vec<SparseVec<usize, T>>,
}

impl<T: Ring> SparseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            columns: vec![SparseVec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            rows: n,
            columns: (0..n).map(|i| SparseVec::from([(i, T::one())])).collect(),
        }
    }

    /// Matrix whose `j`-th column is `columns[j]`; zero entries are dropped.
    pub fn from_columns(rows: usize, columns: Vec<SparseVec<usize, T>>) -> Self {
        let columns = columns
            .into_iter()
            .map(|c| {
                assert!(c.keys().all(|&i| i < rows), "row index out of range");
                c.into_iter().filter(|(_, x)| !x.is_zero()).collect()
            })
            .collect();
        SparseMatrix { rows, columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.columns[j].get(&i).cloned().unwrap_or_else(T::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        assert!(i < self.rows);
        if v.is_zero() {
            self.columns[j].remove(&i);
        } else {
            self.columns[j].insert(i, v);
        }
    }

    pub fn column(&self, j: usize) -> &SparseVec<usize, T> {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec<usize, T>] {
        &self.columns
    }

    /// Nonzero entries `(row, column, value)` in column-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &T)> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(j, c)| c.iter().map(move |(i, x)| (*i, j, x)))
    }

    pub fn apply(&self, v: &SparseVec<usize, T>) -> SparseVec<usize, T> {
        let mut out = SparseVec::new();
        for (j, c) in v {
            axpy(&mut out, c, &self.columns[*j]);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols(), other.rows, "dimension mismatch");
        SparseMatrix {
            rows: self.rows,
            columns: other.columns.iter().map(|c| self.apply(c)).collect(),
        }
    }

    fn combine(&self, other: &Self, c: &T) -> Self {
        assert_eq!((self.rows, self.cols()), (other.rows, other.cols()));
        let mut out = self.clone();
        for (x, y) in out.columns.iter_mut().zip(&other.columns) {
            axpy(x, c, y);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, &T::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, &-T::one())
    }

    pub fn scale(&self, c: &T) -> Self {
        SparseMatrix {
            rows: self.rows,
            columns: self.columns.iter().map(|col| scaled(c, col)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols() && *self == Self::identity(self.rows)
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> SparseMatrix<U> {
        SparseMatrix::from_columns(
            self.rows,
            self.columns.iter().map(|c| c.iter().map(|(i, x)| (*i, f(x))).collect()).collect(),
        )
    }

    /// Number of nonzero entries.
    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }
}

impl<T: Field> SparseMatrix<T> {
    pub fn rank(&self) -> usize {
        let mut e = Echelon::new();
        for c in &self.columns {
            e.insert(c.clone());
        }
        e.rank()
    }

    /// `log(I + N) = Σ (−1)^{k+1} N^k / k` for nilpotent `N`.
    pub fn log_unipotent(&self) -> Result<Self> {
        let n = self.sub(&Self::identity(self.rows));
        let terms = nilpotent_powers(&n)?;
        let mut out = Self::zeros(self.rows, self.cols());
        for (k, p) in terms.iter().enumerate() {
            let k = k as i64 + 1;
            let sign = if k % 2 == 1 { T::one() } else { -T::one() };
            out = out.combine(p, &(sign / T::from_int(k)));
        }
        Ok(out)
    }

    /// `exp(N) = Σ N^k / k!` for nilpotent `N`.
    pub fn exp_nilpotent(&self) -> Result<Self> {
        let terms = nilpotent_powers(self)?;
        let mut out = Self::identity(self.rows);
        let mut fact = T::one();
        for (k, p) in terms.iter().enumerate() {
            fact = fact * T::from_int(k as i64 + 1);
            out = out.combine(p, &(T::one() / fact.clone()));
        }
        Ok(out)
    }
}

/// `[N, N², …]` up to the last nonzero power; fails if `N` is not nilpotent.
fn nilpotent_powers<T: Ring>(n: &SparseMatrix<T>) -> Result<Vec<SparseMatrix<T>>> {
    assert_eq!(n.rows, n.cols(), "square matrix expected");
    let mut out = Vec::new();
    let mut p = n.clone();
    while !p.is_zero() {
        if out.len() > n.rows {
            return Err(Error::Invariant("matrix is not unipotent".into()));
        }
        let next = p.mul(n);
        out.push(p);
        p = next;
    }
    Ok(out)
}

impl<T: Ring> fmt::Display for SparseMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols()).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Incremental row echelon form with the largest key as pivot.
///
/// Every inserted vector carries a label; reductions report how a vector is
/// expressed through the inserted ones.
#[derive(Clone, Debug)]
pub struct Echelon<K, T> {
    rows: BTreeMap<K, (SparseVec<K, T>, SparseVec<usize, T>)>,
    inserted: usize,
}

impl<K: Ord + Copy, T: Field> Default for Echelon<K, T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Ord + Copy, T: Field> Echelon<K, T> {
    pub fn new() -> Self {
        Echelon {
            rows: BTreeMap::new(),
            inserted: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Returns `(residual, combination)` with `v = Σ combination[l]·input_l + residual`.
    pub fn reduce(&self, v: &SparseVec<K, T>) -> (SparseVec<K, T>, SparseVec<usize, T>) {
        let mut v = v.clone();
        let mut combo = SparseVec::new();
        let mut bound: Option<K> = None;
        loop {
            let next = match bound {
                None => v.keys().next_back().copied(),
                Some(b) => v.range(..b).next_back().map(|(k, _)| *k),
            };
            let Some(key) = next else { break };
            bound = Some(key);
            if let Some((row, row_combo)) = self.rows.get(&key) {
                let c = v[&key].clone();
                axpy(&mut v, &-c.clone(), row);
                axpy(&mut combo, &c, row_combo);
            }
        }
        (v, combo)
    }

    /// Pivot keys in increasing order.
    pub fn pivots(&self) -> impl Iterator<Item = &K> + '_ {
        self.rows.keys()
    }

    pub fn contains(&self, v: &SparseVec<K, T>) -> bool {
        self.reduce(v).0.is_empty()
    }

    /// Inserts the next labelled vector; returns its residual combination if it was dependent.
    pub fn insert(&mut self, v: SparseVec<K, T>) -> Option<SparseVec<usize, T>> {
        let label = self.inserted;
        self.inserted += 1;
        let (residual, combo) = self.reduce(&v);
        match residual.keys().next_back().copied() {
            None => Some(combo),
            Some(pivot) => {
                let inv = T::one() / residual[&pivot].clone();
                let mut row_combo = scaled(&-T::one(), &combo);
                row_combo.insert(label, T::one());
                self.rows.insert(pivot, (scaled(&inv, &residual), scaled(&inv, &row_combo)));
                None
            }
        }
    }
}

/// Basis of the kernel of the map `e_i ↦ images[i]`.
pub fn kernel<K: Ord + Copy, T: Field>(images: &[SparseVec<K, T>]) -> Vec<SparseVec<usize, T>> {
    let mut e = Echelon::new();
    let mut out = Vec::new();
    for (i, v) in images.iter().enumerate() {
        if let Some(combo) = e.insert(v.clone()) {
            let mut k = scaled(&-T::one(), &combo);
            k.insert(i, T::one());
            out.push(k);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn echelon_tracks_combinations() {
        let a: SparseVec<usize, Rational> = [(0, q(1)), (2, q(2))].into();
        let b: SparseVec<usize, Rational> = [(1, q(1)), (2, q(1))].into();
        let c: SparseVec<usize, Rational> = [(0, q(2)), (1, q(-1)), (2, q(3))].into();
        let mut e = Echelon::new();
        assert!(e.insert(a).is_none());
        assert!(e.insert(b).is_none());
        let combo = e.insert(c).expect("dependent");
        assert_eq!(combo, [(0, q(2)), (1, q(-1))].into());
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn unipotent_log_exp() {
        let mut m = SparseMatrix::<Rational>::identity(3);
        m.set(0, 1, q(2));
        m.set(1, 2, q(3));
        m.set(0, 2, q(5));
        let l = m.log_unipotent().unwrap();
        assert_eq!(l.exp_nilpotent().unwrap(), m);
        assert_eq!(l.get(0, 2), Rational::new(2.into(), 1.into()));
    }
}
