use proptest::prelude::*;
use torelli_core::mcg::{builtin_s4_scenario, builtin_separating_twist, TwistRegistry};
use torelli_core::tensor::magnus_expand;
use torelli_core::torus::{inverse_unipotent, phi_matrix, MalcevAlgebra};
use torelli_core::{GroupWord, Letter, Surface, SurfaceGroup};

fn word_strategy(generators: usize, max_len: usize) -> impl Strategy<Value = GroupWord> {
    prop::collection::vec((0..generators, prop::bool::ANY), 0..=max_len)
        .prop_map(|v| GroupWord::reduce(v.into_iter().map(|(g, inv)| Letter::new(g, if inv { -1 } else { 1 }))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Inserting a conjugate of the relator changes nothing, for Dehn and for Magnus.
    #[test]
    fn relator_insertion_is_invisible(
        w1 in word_strategy(4, 8),
        w2 in word_strategy(4, 8),
        g in word_strategy(4, 4),
        inverse in prop::bool::ANY,
    ) {
        let group = SurfaceGroup::new(2).unwrap();
        let surface = Surface::new(2).unwrap();
        let r = if inverse { group.relator().inverse() } else { group.relator().clone() };
        let inserted = w1.mul(&g).mul(&r).mul(&g.inverse()).mul(&w2);
        let plain = w1.mul(&w2);
        prop_assert!(group.dehn_is_trivial(&inserted.mul(&plain.inverse())));
        let env = surface.envelope(5).unwrap();
        prop_assert_eq!(env.expand(&inserted).unwrap(), env.expand(&plain).unwrap());
    }

    /// Dehn-trivial words have trivial normal form; words with nonzero
    /// abelianization are Dehn-nontrivial.
    #[test]
    fn dehn_and_magnus_agree(w in word_strategy(4, 12)) {
        let group = SurfaceGroup::new(2).unwrap();
        let surface = Surface::new(2).unwrap();
        if group.dehn_is_trivial(&w) {
            prop_assert!(surface.identity_mod_class(&w, 5).unwrap());
        }
        if w.exponent_sums(4).iter().any(|&e| e != 0) {
            prop_assert!(!group.dehn_is_trivial(&w));
            prop_assert!(!surface.identity_mod_class(&w, 2).unwrap());
        }
    }

    /// The Magnus expansion is multiplicative and sends inverses to inverses.
    #[test]
    fn magnus_is_a_homomorphism(x in word_strategy(4, 10), y in word_strategy(4, 10)) {
        let mx = magnus_expand::<i128>(&x, 4, 5).unwrap();
        let my = magnus_expand::<i128>(&y, 4, 5).unwrap();
        prop_assert_eq!(magnus_expand::<i128>(&x.mul(&y), 4, 5).unwrap(), mx.mul(&my));
        let inv = magnus_expand::<i128>(&x.inverse(), 4, 5).unwrap();
        prop_assert!(mx.mul(&inv).sub(&torelli_core::IntSeries::one(4, 5)).is_zero());
    }

    /// Nested commutators of weight `n` lie in `Γ_n` (lowest degree of `M(w) − 1` is at least `n`).
    #[test]
    fn commutators_land_in_the_right_term(x in word_strategy(4, 5), y in word_strategy(4, 5), z in word_strategy(4, 5)) {
        let surface = Surface::new(2).unwrap();
        let w = GroupWord::commutator(&GroupWord::commutator(&x, &y), &z);
        prop_assert!(surface.identity_mod_class(&w, 3).unwrap());
    }
}

#[test]
fn relator_collapses_at_every_class() {
    for genus in 2..=4 {
        let surface = Surface::new(genus).unwrap();
        let r = surface.group().relator().clone();
        for class in 1..=surface.class_cap() {
            assert!(surface.identity_mod_class(&r, class).unwrap(), "genus {genus} class {class}");
        }
        // The free expansion alone does not collapse.
        assert!(!magnus_expand::<i128>(&r, 2 * genus, 3).unwrap().sub(&torelli_core::IntSeries::one(2 * genus, 3)).is_zero());
    }
}

fn picard_lefschetz(registry: &TwistRegistry) {
    for t in registry.twists() {
        let w = t.boundary_word.pow(t.exponent());
        for c in t.conjugated_generators() {
            let x = GroupWord::generator(c);
            let lhs = t.automorphism().apply(&x).mul(&x.inverse());
            assert_eq!(lhs, GroupWord::commutator(&w, &x), "{} on generator {c}", t.name);
        }
    }
}

#[test]
fn picard_lefschetz_identity() {
    for genus in 2..=4 {
        picard_lefschetz(&builtin_separating_twist(genus).unwrap());
    }
    picard_lefschetz(&builtin_s4_scenario().unwrap());
}

#[test]
fn twist_fixes_the_relator_and_homology() {
    for genus in 2..=4 {
        let reg = builtin_separating_twist(genus).unwrap();
        let phi = reg.automorphism(&reg.parse("t").unwrap()).unwrap();
        let group = reg.group();
        assert!(phi.acts_trivially_on_homology());
        assert!(group.dehn_is_trivial(&phi.apply(group.relator()).mul(&group.relator().inverse())));
    }
}

#[test]
fn action_is_functorial() {
    let reg = builtin_s4_scenario().unwrap();
    let surface = Surface::new(4).unwrap();
    let malcev = MalcevAlgebra::build(&surface, 5).unwrap();
    let m1 = phi_matrix(&malcev, &reg, &reg.parse("t1").unwrap()).unwrap();
    let m2 = phi_matrix(&malcev, &reg, &reg.parse("t2").unwrap()).unwrap();
    assert!(!m1.is_identity() && !m2.is_identity());
    let m12 = phi_matrix(&malcev, &reg, &reg.parse("t1 t2").unwrap()).unwrap();
    assert_eq!(m12, m1.mul(&m2));
    let inv = phi_matrix(&malcev, &reg, &reg.parse("t1^-1").unwrap()).unwrap();
    assert_eq!(inv, inverse_unipotent(&m1).unwrap());
    assert!(inv.mul(&m1).is_identity());
    let br = phi_matrix(&malcev, &reg, &reg.parse("[t1,t2]").unwrap()).unwrap();
    let expected = m1.mul(&m2).mul(&inverse_unipotent(&m1).unwrap()).mul(&inverse_unipotent(&m2).unwrap());
    assert_eq!(br, expected);
}
