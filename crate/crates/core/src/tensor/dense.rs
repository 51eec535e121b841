use std::collections::BTreeMap;

use super::monomial::{find_factor, Monomial};
use super::series::TruncatedSeries;
use crate::scalar::Ring;
use crate::words::GroupWord;
use crate::{Error, Result};

/// Total number of dense entries a single series may allocate.
pub const DENSE_ENTRY_BUDGET: u64 = 1 << 26;

/// Dense truncated series: one coefficient block per degree.
#[derive(Clone, Debug)]
pub struct DenseSeries<T> {
    k: usize,
    class: usize,
    blocks: Vec<Vec<T>>,
}

pub fn dense_size(k: usize, class: usize) -> Option<u64> {
    let mut total = 0u64;
    let mut block = 1u64;
    for _ in 0..class {
        total = total.checked_add(block)?;
        block = block.checked_mul(k as u64)?;
    }
    Some(total)
}

impl<T: Ring> DenseSeries<T> {
    pub fn zero(k: usize, class: usize) -> Result<Self> {
        match dense_size(k, class) {
            Some(n) if n <= DENSE_ENTRY_BUDGET => {}
            _ => {
                return Err(Error::BudgetExceeded(format!(
                    "dense series over {k} symbols at class {class} exceeds {DENSE_ENTRY_BUDGET} entries"
                )))
            }
        }
        let blocks = (0..class).map(|d| vec![T::zero(); k.pow(d as u32)]).collect();
        Ok(DenseSeries { k, class, blocks })
    }

    pub fn one(k: usize, class: usize) -> Result<Self> {
        let mut s = Self::zero(k, class)?;
        s.blocks[0][0] = T::one();
        Ok(s)
    }

    pub fn from_sparse(s: &TruncatedSeries<T>) -> Result<Self> {
        let mut out = Self::zero(s.alphabet(), s.class())?;
        for (m, c) in s.terms() {
            out.blocks[m.degree()][m.index() as usize] = c.clone();
        }
        Ok(out)
    }

    pub fn to_sparse(&self) -> TruncatedSeries<T> {
        let mut terms = BTreeMap::new();
        for (d, block) in self.blocks.iter().enumerate() {
            for (idx, c) in block.iter().enumerate() {
                if !c.is_zero() {
                    terms.insert(Monomial::new(d, idx as u64), c.clone());
                }
            }
        }
        TruncatedSeries::from_map_unchecked(self.k, self.class, terms)
    }

    /// `self ← self · (1 + X_x)`.
    pub fn mul_letter(&mut self, x: usize) {
        let k = self.k;
        for d in (0..self.class - 1).rev() {
            let (lo, hi) = self.blocks.split_at_mut(d + 1);
            let (src, dst) = (&lo[d], &mut hi[0]);
            for (idx, c) in src.iter().enumerate() {
                if !c.is_zero() {
                    dst[idx * k + x] += c;
                }
            }
        }
    }

    /// `self ← self · (1 + X_x)^{-1}`, solving `T_d = S_d − T_{d−1}·X_x`.
    pub fn mul_letter_inverse(&mut self, x: usize) {
        let k = self.k;
        for d in 1..self.class {
            let (lo, hi) = self.blocks.split_at_mut(d);
            let (src, dst) = (&lo[d - 1], &mut hi[0]);
            for (idx, c) in src.iter().enumerate() {
                if !c.is_zero() {
                    dst[idx * k + x] -= c;
                }
            }
        }
    }

    /// Rewrites every occurrence of the rule's forbidden factor until none is left.
    ///
    /// Degrees are processed in increasing order and indices in decreasing
    /// order: a rewrite only feeds strictly smaller indices of the same degree
    /// or higher degrees, so one sweep suffices.
    pub fn normalize(&mut self, rule: &RewriteRule<T>) {
        assert!(rule.class >= self.class, "rewrite rule truncated below the series");
        let k = self.k;
        let powk: Vec<u64> = (0..=self.class).map(|e| (k as u64).pow(e as u32)).collect();
        for d in 2..self.class {
            for idx in (0..self.blocks[d].len()).rev() {
                if self.blocks[d][idx].is_zero() {
                    continue;
                }
                let Some(p) = find_factor(idx as u64, d, k, rule.first, rule.second) else {
                    continue;
                };
                let c = std::mem::replace(&mut self.blocks[d][idx], T::zero());
                let tail = d - p - 2;
                let prefix = idx as u64 / powk[d - p];
                let suffix = idx as u64 % powk[tail];
                for (e, ridx, coef) in &rule.terms {
                    let t = p + e + tail;
                    if t >= self.class {
                        break;
                    }
                    let target = (prefix * powk[*e] + ridx) * powk[tail] + suffix;
                    self.blocks[t][target as usize] += c.mul_ref(coef);
                }
            }
        }
    }

    pub fn block(&self, d: usize) -> &[T] {
        &self.blocks[d]
    }

    /// True when every positive-degree coefficient vanishes and the constant is 1.
    pub fn is_one(&self) -> bool {
        self.blocks[0][0] == T::one() && self.blocks[1..].iter().all(|b| b.iter().all(|c| c.is_zero()))
    }

    pub fn lowest_positive_degree(&self) -> Option<usize> {
        (1..self.class).find(|&d| self.blocks[d].iter().any(|c| !c.is_zero()))
    }
}

/// Dense Magnus expansion `a_i ↦ 1 + X_i` of a group word.
pub fn dense_magnus<T: Ring>(w: &GroupWord, k: usize, class: usize) -> Result<DenseSeries<T>> {
    let mut s = DenseSeries::one(k, class)?;
    for l in w.letters() {
        let x = l.generator as usize;
        if x >= k {
            return Err(Error::GeneratorOutOfRange {
                index: x,
                generators: k,
            });
        }
        if l.inverse {
            s.mul_letter_inverse(x);
        } else {
            s.mul_letter(x);
        }
    }
    Ok(s)
}

/// Magnus expansion as a sparse series.
pub fn magnus_expand<T: Ring>(w: &GroupWord, k: usize, class: usize) -> Result<TruncatedSeries<T>> {
    Ok(dense_magnus::<T>(w, k, class)?.to_sparse())
}

/// The relation `M(r) = 1 + ρ` read as `Bg·Ag → Bg·Ag + ρ`; the right side
/// has no `Bg·Ag` term and every other term is smaller or of higher degree.
#[derive(Clone, Debug)]
pub struct RewriteRule<T> {
    pub(crate) k: usize,
    pub(crate) class: usize,
    pub(crate) first: usize,
    pub(crate) second: usize,
    /// `(degree, index, coefficient)`, sorted by degree.
    pub(crate) terms: Vec<(usize, u64, T)>,
}

impl<T: Ring> RewriteRule<T> {
    /// Builds the rule from the relator's expansion `M(r) = 1 + ρ`.
    pub fn from_relator_expansion(rho_plus_one: &TruncatedSeries<T>) -> Result<Self> {
        let k = rho_plus_one.alphabet();
        let class = rho_plus_one.class();
        let first = k - 1;
        let second = k - 2;
        let lead = Monomial::from_letters(&[first, second], k);
        if rho_plus_one.constant_term() != T::one() {
            return Err(Error::Invariant("relator expansion must have constant term 1".into()));
        }
        if rho_plus_one.lowest_positive_degree().is_some_and(|d| d < 2) {
            return Err(Error::Invariant("relator expansion has a linear part".into()));
        }
        if rho_plus_one.coefficient(&lead) != -T::one() {
            return Err(Error::Invariant("relator expansion does not lead with −Bg·Ag".into()));
        }
        let terms = rho_plus_one
            .terms()
            .iter()
            .filter(|(m, _)| m.degree() > 0 && **m != lead)
            .map(|(m, c)| (m.degree(), m.index(), c.clone()))
            .collect();
        let rule = RewriteRule {
            k,
            class,
            first,
            second,
            terms,
        };
        Ok(rule)
    }

    /// Keeps only the quadratic part of the rule (the graded relation).
    pub fn graded(&self) -> Self {
        RewriteRule {
            class: self.class,
            terms: self.terms.iter().filter(|(d, _, _)| *d == 2).cloned().collect(),
            ..*self
        }
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> RewriteRule<U> {
        RewriteRule {
            k: self.k,
            class: self.class,
            first: self.first,
            second: self.second,
            terms: self.terms.iter().map(|(d, i, c)| (*d, *i, f(c))).collect(),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &T)> {
        self.terms.iter().map(|(d, i, c)| (Monomial::new(*d, *i), c))
    }
}

/// Sparse normal form by worklist; independent of the dense sweep.
pub fn sparse_normal_form<T: Ring>(s: &TruncatedSeries<T>, rule: &RewriteRule<T>) -> TruncatedSeries<T> {
    assert!(rule.class >= s.class(), "rewrite rule truncated below the series");
    let k = s.alphabet();
    let class = s.class();
    let powk: Vec<u64> = (0..=class).map(|e| (k as u64).pow(e as u32)).collect();
    let mut pending: Vec<BTreeMap<u64, T>> = vec![BTreeMap::new(); class];
    for (m, c) in s.terms() {
        pending[m.degree()].insert(m.index(), c.clone());
    }
    let mut out = BTreeMap::new();
    for d in 0..class {
        while let Some((idx, c)) = pending[d].pop_last() {
            if c.is_zero() {
                continue;
            }
            match find_factor(idx, d, k, rule.first, rule.second) {
                None => {
                    out.insert(Monomial::new(d, idx), c);
                }
                Some(p) => {
                    let tail = d - p - 2;
                    let prefix = idx / powk[d - p];
                    let suffix = idx % powk[tail];
                    for (e, ridx, coef) in &rule.terms {
                        let t = p + e + tail;
                        if t >= class {
                            break;
                        }
                        let target = (prefix * powk[*e] + ridx) * powk[tail] + suffix;
                        *pending[t].entry(target).or_insert_with(T::zero) += c.mul_ref(coef);
                    }
                }
            }
        }
    }
    TruncatedSeries::from_map_unchecked(k, class, out)
}
