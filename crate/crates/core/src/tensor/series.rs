use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use super::monomial::Monomial;
use crate::scalar::{Field, Ring};

/// Sparse noncommutative polynomial truncated by total degree.
///
/// A series of class `n` keeps the terms of degree `0..n`; every stored
/// coefficient is nonzero.
#[derive(Clone, PartialEq, Debug)]
pub struct TruncatedSeries<T> {
    alphabet: usize,
    class: usize,
    terms: BTreeMap<Monomial, T>,
}

impl<T: Ring> TruncatedSeries<T> {
    pub fn zero(alphabet: usize, class: usize) -> Self {
        assert!(class >= 1, "truncation class must be ≥ 1");
        TruncatedSeries {
            alphabet,
            class,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(alphabet: usize, class: usize) -> Self {
        Self::constant(alphabet, class, T::one())
    }

    pub fn constant(alphabet: usize, class: usize, c: T) -> Self {
        let mut s = Self::zero(alphabet, class);
        s.add_term(Monomial::ONE, c);
        s
    }

    pub fn monomial(alphabet: usize, class: usize, m: Monomial, c: T) -> Self {
        let mut s = Self::zero(alphabet, class);
        s.add_term(m, c);
        s
    }

    /// `1 + X_symbol`.
    pub fn letter(alphabet: usize, class: usize, symbol: usize) -> Self {
        let mut s = Self::one(alphabet, class);
        s.add_term(Monomial::letter(symbol), T::one());
        s
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, T)>>(alphabet: usize, class: usize, terms: I) -> Self {
        let mut s = Self::zero(alphabet, class);
        for (m, c) in terms {
            s.add_term(m, c);
        }
        s
    }

    pub(crate) fn from_map_unchecked(alphabet: usize, class: usize, terms: BTreeMap<Monomial, T>) -> Self {
        TruncatedSeries { alphabet, class, terms }
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, T> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, T> {
        self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> T {
        self.terms.get(m).cloned().unwrap_or_else(T::zero)
    }

    pub fn constant_term(&self) -> T {
        self.coefficient(&Monomial::ONE)
    }

    /// Adds `c·m`, dropping it if `m` is beyond the truncation.
    pub fn add_term(&mut self, m: Monomial, c: T) {
        if m.degree() >= self.class || c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(self.alphabet, other.alphabet, "alphabet mismatch");
        assert_eq!(self.class, other.class, "truncation class mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-T::one())
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero(self.alphabet, self.class);
        }
        let terms = self.terms.iter().map(|(m, x)| (*m, x.mul_ref(c))).filter(|(_, x)| !x.is_zero()).collect();
        Self::from_map_unchecked(self.alphabet, self.class, terms)
    }

    /// Truncated product in the free algebra.
    pub fn mul(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let k = self.alphabet;
        let mut acc: HashMap<Monomial, T> = HashMap::new();
        for (m1, c1) in &self.terms {
            let room = self.class - m1.degree();
            for (m2, c2) in other.terms.range(..Monomial::new(room, 0)) {
                let prod = c1.mul_ref(c2);
                *acc.entry(m1.concat(m2, k)).or_insert_with(T::zero) += prod;
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Self::from_map_unchecked(self.alphabet, self.class, terms)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// Homogeneous component of degree `d`.
    pub fn component(&self, d: usize) -> Self {
        let terms = self
            .terms
            .range(Monomial::new(d, 0)..)
            .take_while(|(m, _)| m.degree() == d)
            .map(|(m, c)| (*m, c.clone()))
            .collect();
        Self::from_map_unchecked(self.alphabet, self.class, terms)
    }

    /// Terms of degree `d` keyed by their index.
    pub fn component_map(&self, d: usize) -> BTreeMap<u64, T> {
        self.terms
            .range(Monomial::new(d, 0)..)
            .take_while(|(m, _)| m.degree() == d)
            .map(|(m, c)| (m.index(), c.clone()))
            .collect()
    }

    /// Smallest degree `≥ 1` carrying a nonzero term.
    pub fn lowest_positive_degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.degree()).find(|&d| d >= 1)
    }

    pub fn truncate(&self, class: usize) -> Self {
        let terms = self.terms.range(..Monomial::new(class, 0)).map(|(m, c)| (*m, c.clone())).collect();
        Self::from_map_unchecked(self.alphabet, class, terms)
    }

    /// Same terms, larger truncation class.
    pub fn widen(&self, class: usize) -> Self {
        assert!(class >= self.class);
        Self::from_map_unchecked(self.alphabet, class, self.terms.clone())
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> TruncatedSeries<U> {
        let terms = self.terms.iter().map(|(m, c)| (*m, f(c))).filter(|(_, c)| !c.is_zero()).collect();
        TruncatedSeries::from_map_unchecked(self.alphabet, self.class, terms)
    }

    /// True when no monomial contains the factor `Bg·Ag`.
    pub fn is_normalized(&self) -> bool {
        let k = self.alphabet;
        self.terms.keys().all(|m| m.find_factor(k, k - 1, k - 2).is_none())
    }

    /// One term per line, `<coefficient> <monomial>`, in deglex order.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (m, c) in &self.terms {
            let _ = writeln!(out, "{} {}", c, m.display(self.alphabet));
        }
        out
    }
}

impl<T: Field> TruncatedSeries<T> {
    /// `Σ_{k≥1} (-1)^{k+1} (s-1)^k / k`; requires constant term 1.
    pub fn log(&self) -> crate::Result<Self> {
        if self.constant_term() != T::one() {
            return Err(crate::Error::ConstantTerm {
                expected: "1",
                found: self.constant_term().to_string(),
            });
        }
        let mut x = self.clone();
        x.terms.remove(&Monomial::ONE);
        let mut out = Self::zero(self.alphabet, self.class);
        let mut power = x.clone();
        let mut k = 1i64;
        while !power.is_zero() {
            let sign = if k % 2 == 1 { T::one() } else { -T::one() };
            out = out.add(&power.scale(&(sign / T::from_int(k))));
            power = power.mul(&x);
            k += 1;
        }
        Ok(out)
    }

    /// `Σ_{k≥0} s^k / k!`; requires constant term 0.
    pub fn exp(&self) -> crate::Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(crate::Error::ConstantTerm {
                expected: "0",
                found: self.constant_term().to_string(),
            });
        }
        let mut out = Self::one(self.alphabet, self.class);
        let mut power = Self::one(self.alphabet, self.class);
        let mut k = 1i64;
        loop {
            power = power.mul(self).scale(&(T::one() / T::from_int(k)));
            if power.is_zero() {
                break;
            }
            out = out.add(&power);
            k += 1;
        }
        Ok(out)
    }
}
