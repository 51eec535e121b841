use std::fmt;

/// A word in the noncommuting symbols `A1 < B1 < … < Ag < Bg`.
///
/// Stored as its degree and its base-`k` index (first letter most
/// significant), so the derived order is degree-lexicographic.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial {
    degree: u8,
    index: u64,
}

/// Largest supported word length; `16^15` still fits in a `u64`.
pub const MAX_DEGREE: usize = 15;

impl Monomial {
    pub const ONE: Monomial = Monomial { degree: 0, index: 0 };

    #[inline]
    pub fn new(degree: usize, index: u64) -> Self {
        debug_assert!(degree <= MAX_DEGREE);
        Monomial {
            degree: degree as u8,
            index,
        }
    }

    pub fn letter(symbol: usize) -> Self {
        Monomial::new(1, symbol as u64)
    }

    pub fn from_letters(letters: &[usize], k: usize) -> Self {
        let mut index = 0u64;
        for &x in letters {
            debug_assert!(x < k);
            index = index * k as u64 + x as u64;
        }
        Monomial::new(letters.len(), index)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    #[inline]
    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn letters(&self, k: usize) -> Vec<usize> {
        let mut out = vec![0; self.degree()];
        let mut idx = self.index;
        for slot in out.iter_mut().rev() {
            *slot = (idx % k as u64) as usize;
            idx /= k as u64;
        }
        out
    }

    #[inline]
    pub fn concat(&self, other: &Monomial, k: usize) -> Monomial {
        Monomial::new(
            self.degree() + other.degree(),
            self.index * (k as u64).pow(other.degree as u32) + other.index,
        )
    }

    /// Leftmost position `p` with letters `p, p+1` equal to `(first, second)`.
    pub fn find_factor(&self, k: usize, first: usize, second: usize) -> Option<usize> {
        find_factor(self.index, self.degree(), k, first, second)
    }

    pub fn display(&self, k: usize) -> MonomialDisplay {
        MonomialDisplay { m: *self, k }
    }
}

#[inline]
pub(crate) fn find_factor(index: u64, degree: usize, k: usize, first: usize, second: usize) -> Option<usize> {
    if degree < 2 {
        return None;
    }
    let mut digits = [0u8; MAX_DEGREE];
    let mut idx = index;
    for slot in digits[..degree].iter_mut().rev() {
        *slot = (idx % k as u64) as u8;
        idx /= k as u64;
    }
    (0..degree - 1).find(|&p| digits[p] as usize == first && digits[p + 1] as usize == second)
}

/// Name of symbol `i`: `A1, B1, A2, …`.
pub fn symbol_name(i: usize) -> String {
    if i % 2 == 0 {
        format!("A{}", i / 2 + 1)
    } else {
        format!("B{}", i / 2 + 1)
    }
}

pub struct MonomialDisplay {
    m: Monomial,
    k: usize,
}

impl fmt::Display for MonomialDisplay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m.degree == 0 {
            return write!(f, "1");
        }
        let names: Vec<String> = self.m.letters(self.k).into_iter().map(symbol_name).collect();
        write!(f, "{}", names.join("*"))
    }
}
