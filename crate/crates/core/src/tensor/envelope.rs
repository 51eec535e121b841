use std::sync::OnceLock;

use super::dense::{dense_magnus, sparse_normal_form, DenseSeries, RewriteRule};
use super::monomial::MAX_DEGREE;
use super::series::TruncatedSeries;
use crate::scalar::{int_to_rational, Rational, Ring};
use crate::words::{GroupWord, SurfaceGroup};
use crate::{Error, Result};

/// Coefficient types with a cached copy of the rewrite rules.
pub trait EnvelopeScalar: Ring {
    fn rule(env: &Envelope) -> &RewriteRule<Self>;
    fn graded_rule(env: &Envelope) -> &RewriteRule<Self>;
}

/// Truncated quotient `Q⟨⟨A, B⟩⟩ / (M(r) − 1)` of a surface group at a fixed class.
#[derive(Debug)]
pub struct Envelope {
    group: SurfaceGroup,
    class: usize,
    rule: RewriteRule<i128>,
    graded: RewriteRule<i128>,
    rule_q: OnceLock<RewriteRule<Rational>>,
    graded_q: OnceLock<RewriteRule<Rational>>,
}

impl EnvelopeScalar for i128 {
    fn rule(env: &Envelope) -> &RewriteRule<i128> {
        &env.rule
    }
    fn graded_rule(env: &Envelope) -> &RewriteRule<i128> {
        &env.graded
    }
}

impl EnvelopeScalar for Rational {
    fn rule(env: &Envelope) -> &RewriteRule<Rational> {
        env.rule_q.get_or_init(|| env.rule.map(int_to_rational))
    }
    fn graded_rule(env: &Envelope) -> &RewriteRule<Rational> {
        env.graded_q.get_or_init(|| env.graded.map(int_to_rational))
    }
}

impl Envelope {
    pub fn new(group: &SurfaceGroup, class: usize) -> Result<Self> {
        if class < 1 {
            return Err(Error::ClassTooSmall { min: 1, got: class });
        }
        if class > MAX_DEGREE {
            return Err(Error::ClassTooLarge {
                requested: class,
                max: MAX_DEGREE,
            });
        }
        let k = group.generators();
        // The rule needs terms up to degree class − 1, and at least the quadratic part.
        let rel = dense_magnus::<i128>(group.relator(), k, class.max(3))?.to_sparse();
        let rule = RewriteRule::from_relator_expansion(&rel)?;
        let graded = rule.graded();
        Ok(Envelope {
            group: group.clone(),
            class,
            rule,
            graded,
            rule_q: OnceLock::new(),
            graded_q: OnceLock::new(),
        })
    }

    pub fn group(&self) -> &SurfaceGroup {
        &self.group
    }

    pub fn genus(&self) -> usize {
        self.group.genus()
    }

    pub fn alphabet(&self) -> usize {
        self.group.generators()
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn rule<T: EnvelopeScalar>(&self) -> &RewriteRule<T> {
        T::rule(self)
    }

    pub fn graded_rule<T: EnvelopeScalar>(&self) -> &RewriteRule<T> {
        T::graded_rule(self)
    }

    /// Normalized dense Magnus expansion of a word.
    pub fn magnus_dense(&self, w: &GroupWord) -> Result<DenseSeries<i128>> {
        self.group.check_word(w)?;
        let mut s = dense_magnus::<i128>(w, self.alphabet(), self.class)?;
        s.normalize(&self.rule);
        Ok(s)
    }

    /// Normal form of the Magnus expansion of a word.
    pub fn expand(&self, w: &GroupWord) -> Result<TruncatedSeries<i128>> {
        Ok(self.magnus_dense(w)?.to_sparse())
    }

    pub fn expand_rational(&self, w: &GroupWord) -> Result<TruncatedSeries<Rational>> {
        Ok(self.expand(w)?.map(int_to_rational))
    }

    fn check_series<T: Ring>(&self, s: &TruncatedSeries<T>) {
        assert_eq!(s.alphabet(), self.alphabet(), "series over the wrong alphabet");
        assert!(s.class() <= self.class, "series class exceeds the envelope class");
    }

    pub fn normal_form<T: EnvelopeScalar>(&self, s: &TruncatedSeries<T>) -> TruncatedSeries<T> {
        self.check_series(s);
        sparse_normal_form(s, T::rule(self))
    }

    /// Normal form using only the quadratic relation; for homogeneous Lie polynomials.
    pub fn graded_normal_form<T: EnvelopeScalar>(&self, s: &TruncatedSeries<T>) -> TruncatedSeries<T> {
        self.check_series(s);
        sparse_normal_form(s, T::graded_rule(self))
    }

    pub fn dense_normal_form<T: EnvelopeScalar>(&self, s: &TruncatedSeries<T>) -> Result<TruncatedSeries<T>> {
        self.check_series(s);
        let mut d = DenseSeries::from_sparse(s)?;
        d.normalize(T::rule(self));
        Ok(d.to_sparse())
    }

    pub fn mul<T: EnvelopeScalar>(&self, a: &TruncatedSeries<T>, b: &TruncatedSeries<T>) -> TruncatedSeries<T> {
        self.normal_form(&a.mul(b))
    }

    pub fn commutator<T: EnvelopeScalar>(&self, a: &TruncatedSeries<T>, b: &TruncatedSeries<T>) -> TruncatedSeries<T> {
        self.normal_form(&a.commutator(b))
    }

    pub fn log(&self, s: &TruncatedSeries<Rational>) -> Result<TruncatedSeries<Rational>> {
        Ok(self.normal_form(&s.log()?))
    }

    pub fn exp(&self, s: &TruncatedSeries<Rational>) -> Result<TruncatedSeries<Rational>> {
        Ok(self.normal_form(&s.exp()?))
    }

    /// True when `w ∈ Γ_class`, i.e. its expansion is 1 in every degree below the class.
    pub fn is_identity(&self, w: &GroupWord) -> Result<bool> {
        Ok(self.magnus_dense(w)?.is_one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relator_and_its_conjugates_vanish() {
        let g = SurfaceGroup::new(3).unwrap();
        let env = Envelope::new(&g, 5).unwrap();
        assert!(env.is_identity(g.relator()).unwrap());
        let x = g.parse_word("a2 b3^-1").unwrap();
        let conj = x.mul(g.relator()).mul(&x.inverse());
        assert!(env.is_identity(&conj).unwrap());
        assert!(!env.is_identity(&g.parse_word("a1 b1 a1^-1 b1^-1").unwrap()).unwrap());
    }

    #[test]
    fn log_exp_round_trip() {
        let g = SurfaceGroup::new(2).unwrap();
        let env = Envelope::new(&g, 5).unwrap();
        let s = env.expand_rational(&g.parse_word("a1 b2 a2^-1 b1 b1").unwrap()).unwrap();
        let back = env.exp(&env.log(&s).unwrap()).unwrap();
        assert_eq!(back, s);
    }
}
