//! Free and surface group words.
//!
//! Generators of the genus-`g` surface group are numbered `0..2g` in the
//! order `a1, b1, a2, b2, …, ag, bg`; this is also the symbol order used by
//! the Magnus expansion. Words are immutable and always freely reduced.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Letter {
    pub generator: u16,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, sign: i8) -> Self {
        debug_assert!(sign == 1 || sign == -1);
        Letter {
            generator: generator as u16,
            inverse: sign < 0,
        }
    }

    pub fn gen(generator: usize) -> Self {
        Letter::new(generator, 1)
    }

    #[inline]
    pub fn inv(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    #[inline]
    pub fn sign(self) -> i8 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    #[inline]
    pub fn index(self) -> usize {
        self.generator as usize
    }
}

/// Name of generator `index` (`a1`, `b1`, `a2`, …).
pub fn generator_name(index: usize) -> String {
    let handle = index / 2 + 1;
    if index % 2 == 0 {
        format!("a{handle}")
    } else {
        format!("b{handle}")
    }
}

/// Index of the `a` generator of a 1-based handle.
pub fn a(handle: usize) -> usize {
    2 * (handle - 1)
}

/// Index of the `b` generator of a 1-based handle.
pub fn b(handle: usize) -> usize {
    2 * (handle - 1) + 1
}

/// Handle (1-based) carrying a generator.
pub fn handle_of(generator: usize) -> usize {
    generator / 2 + 1
}

fn push_reduced(out: &mut Vec<Letter>, x: Letter) {
    if out.last() == Some(&x.inv()) {
        out.pop();
    } else {
        out.push(x);
    }
}

/// A freely reduced word in the generators.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GroupWord {
    letters: Vec<Letter>,
}

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord::default()
    }

    /// Freely reduces an arbitrary letter sequence. No range check; use
    /// [`SurfaceGroup::free_reduce`] when the ambient group matters.
    pub fn reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out = Vec::new();
        for x in letters {
            push_reduced(&mut out, x);
        }
        GroupWord { letters: out }
    }

    pub fn generator(index: usize) -> Self {
        GroupWord {
            letters: vec![Letter::gen(index)],
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        GroupWord {
            letters: self.letters.iter().rev().map(|x| x.inv()).collect(),
        }
    }

    pub fn mul(&self, other: &GroupWord) -> GroupWord {
        let mut out = self.letters.clone();
        for &x in &other.letters {
            push_reduced(&mut out, x);
        }
        GroupWord { letters: out }
    }

    /// `x y x⁻¹ y⁻¹`, freely reduced.
    pub fn commutator(x: &GroupWord, y: &GroupWord) -> GroupWord {
        x.mul(y).mul(&x.inverse()).mul(&y.inverse())
    }

    pub fn pow(&self, n: i64) -> GroupWord {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = GroupWord::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// Image under the substitution `generator ↦ images[generator]`.
    pub fn substitute(&self, images: &[GroupWord], inverse_images: &[GroupWord]) -> GroupWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.len());
        for x in &self.letters {
            let img = if x.inverse {
                &inverse_images[x.index()]
            } else {
                &images[x.index()]
            };
            for &y in img.letters() {
                push_reduced(&mut out, y);
            }
        }
        GroupWord { letters: out }
    }

    /// Exponent sum of every generator: the image in `H_1`.
    pub fn exponent_sums(&self, generators: usize) -> Vec<i64> {
        let mut v = vec![0i64; generators];
        for x in &self.letters {
            if x.index() < generators {
                v[x.index()] += x.sign() as i64;
            }
        }
        v
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|x| x.index()).max()
    }

    /// Parses whitespace separated tokens such as `a1 b1 a1^-1 b1^-1`.
    /// The token `1` (or an empty string) is the identity.
    pub fn parse(s: &str) -> Result<GroupWord> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (base, exp) = match tok.split_once('^') {
                Some((base, e)) => {
                    let e: i64 = e
                        .parse()
                        .map_err(|_| Error::WordSyntax(format!("bad exponent in `{tok}`")))?;
                    (base, e)
                }
                None => (tok, 1),
            };
            let mut chars = base.chars();
            let kind = chars.next();
            let handle: usize = chars
                .as_str()
                .parse()
                .map_err(|_| Error::WordSyntax(format!("bad generator `{tok}`")))?;
            if handle == 0 {
                return Err(Error::WordSyntax(format!("handles are numbered from 1: `{tok}`")));
            }
            let index = match kind {
                Some('a') => a(handle),
                Some('b') => b(handle),
                _ => return Err(Error::WordSyntax(format!("bad generator `{tok}`"))),
            };
            let sign = if exp < 0 { -1 } else { 1 };
            for _ in 0..exp.unsigned_abs() {
                letters.push(Letter::new(index, sign));
            }
        }
        Ok(GroupWord::reduce(letters))
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, x) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", generator_name(x.index()))?;
            if x.inverse {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupWord({self})")
    }
}

fn cyclic_reduce(mut w: Vec<Letter>) -> Vec<Letter> {
    let mut lo = 0;
    let mut hi = w.len();
    while hi - lo >= 2 && w[lo] == w[hi - 1].inv() {
        lo += 1;
        hi -= 1;
    }
    w.truncate(hi);
    w.drain(..lo);
    w
}

/// `π₁(S_g) = ⟨a1, b1, …, ag, bg | (a1,b1)⋯(ag,bg)⟩`.
#[derive(Clone, Debug)]
pub struct SurfaceGroup {
    genus: usize,
    relator: GroupWord,
    /// Cyclic rotations of the relator and its inverse.
    symmetrized: Vec<Vec<Letter>>,
}

impl PartialEq for SurfaceGroup {
    fn eq(&self, other: &Self) -> bool {
        self.genus == other.genus
    }
}

impl Eq for SurfaceGroup {}

impl SurfaceGroup {
    pub fn new(genus: usize) -> Result<Self> {
        if genus < 2 {
            return Err(Error::GenusTooSmall(genus));
        }
        let mut relator = GroupWord::identity();
        for h in 1..=genus {
            relator = relator.mul(&Self::handle_commutator(h));
        }
        debug_assert_eq!(relator.len(), 4 * genus);
        let mut symmetrized = Vec::with_capacity(8 * genus);
        for base in [relator.clone(), relator.inverse()] {
            let l = base.letters();
            for shift in 0..l.len() {
                symmetrized.push(l[shift..].iter().chain(&l[..shift]).copied().collect());
            }
        }
        Ok(SurfaceGroup {
            genus,
            relator,
            symmetrized,
        })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn generators(&self) -> usize {
        2 * self.genus
    }

    pub fn relator(&self) -> &GroupWord {
        &self.relator
    }

    /// `(a_h, b_h)` for a 1-based handle.
    pub fn handle_commutator(handle: usize) -> GroupWord {
        GroupWord::commutator(&GroupWord::generator(a(handle)), &GroupWord::generator(b(handle)))
    }

    /// Standard symplectic intersection pairing, `a_i · b_i = 1`.
    pub fn intersection_form(&self) -> Vec<Vec<i64>> {
        let n = self.generators();
        let mut m = vec![vec![0i64; n]; n];
        for h in 1..=self.genus {
            m[a(h)][b(h)] = 1;
            m[b(h)][a(h)] = -1;
        }
        m
    }

    pub fn check_word(&self, w: &GroupWord) -> Result<()> {
        match w.max_generator() {
            Some(i) if i >= self.generators() => Err(Error::GeneratorOutOfRange {
                index: i,
                generators: self.generators(),
            }),
            _ => Ok(()),
        }
    }

    pub fn free_reduce(&self, letters: &[Letter]) -> Result<GroupWord> {
        if let Some(x) = letters.iter().find(|x| x.index() >= self.generators()) {
            return Err(Error::GeneratorOutOfRange {
                index: x.index(),
                generators: self.generators(),
            });
        }
        Ok(GroupWord::reduce(letters.iter().copied()))
    }

    pub fn parse_word(&self, s: &str) -> Result<GroupWord> {
        let w = GroupWord::parse(s)?;
        self.check_word(&w)?;
        Ok(w)
    }

    /// Decides whether `w` is trivial in the surface group.
    ///
    /// The presentation satisfies C'(1/6) for `g ≥ 2`, so Dehn's algorithm
    /// is complete: a nontrivial cyclically reduced word equal to 1 contains
    /// more than half of some cyclic permutation of the relator or its
    /// inverse. Each replacement strictly shortens the word.
    pub fn dehn_is_trivial(&self, w: &GroupWord) -> bool {
        let half = 2 * self.genus;
        let rlen = 4 * self.genus;
        let mut cur = cyclic_reduce(w.letters().to_vec());
        loop {
            let n = cur.len();
            if n == 0 {
                return true;
            }
            // greedy longest match on the cyclic word
            let mut best: Option<(usize, usize, usize)> = None;
            for start in 0..n {
                for (ri, r) in self.symmetrized.iter().enumerate() {
                    if r[0] != cur[start] {
                        continue;
                    }
                    let maxk = n.min(rlen);
                    let mut k = 0;
                    while k < maxk && cur[(start + k) % n] == r[k] {
                        k += 1;
                    }
                    if k > half && best.is_none_or(|(_, _, bk)| k > bk) {
                        best = Some((start, ri, k));
                    }
                }
            }
            let Some((start, ri, k)) = best else {
                return false;
            };
            let r = &self.symmetrized[ri];
            let mut next: Vec<Letter> = r[k..].iter().rev().map(|x| x.inv()).collect();
            next.extend((k..n).map(|i| cur[(start + i) % n]));
            cur = cyclic_reduce(GroupWord::reduce(next).letters);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> GroupWord {
        GroupWord::parse(s).unwrap()
    }

    #[test]
    fn free_reduce_examples() {
        let g = SurfaceGroup::new(2).unwrap();
        let a1 = Letter::gen(0);
        assert!(g.free_reduce(&[a1, a1.inv()]).unwrap().is_empty());
        let rel = g.relator().letters().to_vec();
        assert_eq!(g.free_reduce(&rel).unwrap().len(), 8);
        let b1 = Letter::gen(1);
        let a2 = Letter::gen(2);
        assert_eq!(g.free_reduce(&[a1, b1, b1.inv(), a2]).unwrap(), w("a1 a2"));
        assert_eq!(
            g.free_reduce(&[Letter::gen(4)]),
            Err(Error::GeneratorOutOfRange {
                index: 4,
                generators: 4
            })
        );
    }

    #[test]
    fn commutator_examples() {
        let a1 = w("a1");
        let b1 = w("b1");
        assert_eq!(GroupWord::commutator(&a1, &b1), w("a1 b1 a1^-1 b1^-1"));
        let x = w("a1 b2^-1 a2");
        assert!(GroupWord::commutator(&x, &x).is_empty());
        assert!(GroupWord::commutator(&GroupWord::identity(), &b1).is_empty());
    }

    #[test]
    fn invert_examples() {
        assert_eq!(w("a1 b2").inverse(), w("b2^-1 a1^-1"));
        assert!(GroupWord::identity().inverse().is_empty());
        let g = SurfaceGroup::new(3).unwrap();
        assert!(g.relator().inverse().mul(g.relator()).is_empty());
    }

    #[test]
    fn relator_is_product_of_handle_commutators() {
        let g = SurfaceGroup::new(2).unwrap();
        assert_eq!(g.relator(), &w("a1 b1 a1^-1 b1^-1 a2 b2 a2^-1 b2^-1"));
    }

    #[test]
    fn dehn_examples() {
        let g = SurfaceGroup::new(2).unwrap();
        assert!(g.dehn_is_trivial(g.relator()));
        assert!(!g.dehn_is_trivial(&w("a1")));
        let c = GroupWord::commutator(&w("a1"), &w("b2"));
        assert!(!g.dehn_is_trivial(&c));
        // conjugates and cyclic permutations of the relator
        let conj = w("b2 a1").mul(g.relator()).mul(&w("b2 a1").inverse());
        assert!(g.dehn_is_trivial(&conj));
        assert!(g.dehn_is_trivial(&w("a2 b2 a2^-1 b2^-1 a1 b1 a1^-1 b1^-1")));
        assert!(g.dehn_is_trivial(&g.relator().pow(3)));
        // product of two conjugates of relator^{±1}
        let p = w("a1").mul(g.relator()).mul(&w("a1^-1 b2")).mul(&g.relator().inverse()).mul(&w("b2^-1"));
        assert!(g.dehn_is_trivial(&p));
    }

    #[test]
    fn intersection_form_is_symplectic() {
        let g = SurfaceGroup::new(3).unwrap();
        let m = g.intersection_form();
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(m[i][j], -m[j][i]);
            }
            assert_eq!(m[i].iter().filter(|&&x| x != 0).count(), 1);
        }
        assert_eq!(m[0][1], 1);
    }

    #[test]
    fn parse_display() {
        let x = w("a1 b1^-1 a3^2");
        assert_eq!(x.to_string(), "a1 b1^-1 a3 a3");
        assert_eq!(GroupWord::identity().to_string(), "1");
        assert!(GroupWord::parse("c1").is_err());
        assert!(GroupWord::parse("a0").is_err());
        let g = SurfaceGroup::new(2).unwrap();
        assert!(g.parse_word("a3").is_err());
        assert!(SurfaceGroup::new(1).is_err());
    }
}
