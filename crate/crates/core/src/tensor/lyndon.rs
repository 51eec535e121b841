//! Lyndon words and their standard bracketings.

use std::collections::BTreeMap;

use super::monomial::symbol_name;
use crate::words::GroupWord;

/// All Lyndon words of length exactly `n` over `0..k`, in lexicographic order (Duval).
pub fn lyndon_words(k: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if n == 0 || k == 0 {
        return out;
    }
    let mut w = vec![0usize];
    loop {
        if w.len() == n {
            out.push(w.clone());
        }
        let m = w.len();
        while w.len() < n {
            w.push(w[w.len() - m]);
        }
        while w.last() == Some(&(k - 1)) {
            w.pop();
        }
        match w.last_mut() {
            Some(x) => *x += 1,
            None => break,
        }
    }
    out
}

pub fn is_lyndon(w: &[usize]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w[i..] > *w)
}

/// Standard factorization `w = u·v` with `v` the longest proper Lyndon suffix.
pub fn standard_factorization(w: &[usize]) -> Option<(&[usize], &[usize])> {
    if w.len() < 2 {
        return None;
    }
    (1..w.len()).find(|&i| is_lyndon(&w[i..])).map(|i| w.split_at(i))
}

/// Bracketing tree of a Lyndon word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bracket {
    Letter(usize),
    Node(Box<Bracket>, Box<Bracket>),
}

impl Bracket {
    pub fn standard(w: &[usize]) -> Bracket {
        match standard_factorization(w) {
            None => Bracket::Letter(w[0]),
            Some((u, v)) => Bracket::Node(Box::new(Bracket::standard(u)), Box::new(Bracket::standard(v))),
        }
    }

    pub fn map_letters(&self, f: &impl Fn(usize) -> usize) -> Bracket {
        match self {
            Bracket::Letter(x) => Bracket::Letter(f(*x)),
            Bracket::Node(l, r) => Bracket::Node(Box::new(l.map_letters(f)), Box::new(r.map_letters(f))),
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            Bracket::Letter(_) => 1,
            Bracket::Node(l, r) => l.degree() + r.degree(),
        }
    }

    /// Expansion in the free associative algebra, keyed by base-`k` index.
    pub fn polynomial(&self, k: usize) -> BTreeMap<u64, i128> {
        match self {
            Bracket::Letter(x) => BTreeMap::from([(*x as u64, 1)]),
            Bracket::Node(l, r) => {
                let (pl, pr) = (l.polynomial(k), r.polynomial(k));
                let (dl, dr) = (l.degree() as u32, r.degree() as u32);
                let mut out = BTreeMap::new();
                for (il, cl) in &pl {
                    for (ir, cr) in &pr {
                        *out.entry(il * (k as u64).pow(dr) + ir).or_insert(0) += cl * cr;
                        *out.entry(ir * (k as u64).pow(dl) + il).or_insert(0) -= cl * cr;
                    }
                }
                out.retain(|_, c| *c != 0);
                out
            }
        }
    }

    /// The iterated group commutator with the same shape.
    pub fn group_word(&self) -> GroupWord {
        match self {
            Bracket::Letter(x) => GroupWord::generator(*x),
            Bracket::Node(l, r) => GroupWord::commutator(&l.group_word(), &r.group_word()),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Bracket::Letter(x) => symbol_name(*x),
            Bracket::Node(l, r) => format!("[{},{}]", l.label(), r.label()),
        }
    }
}
