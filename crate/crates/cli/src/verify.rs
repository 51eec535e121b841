//! Self-checks of the engine against independent oracles.

use serde::Serialize;
use torelli_core::linalg::SparseVec;
use torelli_core::mcg::{depth_report, Depth, TwistRegistry};
use torelli_core::sullivan::{massey_fixture, mapping_torus_model, pair_with, surface_model, wedge11};
use torelli_core::tensor::{envelope_counts, labute_graded_dims};
use torelli_core::torus::{log_unipotent, mapping_torus, MalcevAlgebra};
use torelli_core::words::generator_name;
use torelli_core::{Error, GroupWord, LeadingTerm, Rational, Ring, Surface};

use crate::scenario::default_registry;
use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub genus: usize,
    pub class: usize,
    pub corrupted: bool,
    pub passed: bool,
    pub checks: Vec<Check>,
}

type Outcome = Result<(bool, String, Option<String>), Error>;

fn record(checks: &mut Vec<Check>, name: &str, outcome: Outcome) {
    let (passed, detail, counterexample) = match outcome {
        Ok(x) => x,
        Err(e) => (false, format!("error: {e}"), None),
    };
    checks.push(Check {
        name: name.into(),
        passed,
        detail,
        counterexample,
    });
}

/// Number of words of length `d` over `2g` letters avoiding the factor `Bg·Ag`,
/// counted by a two-state automaton.
fn normal_monomial_counts(genus: usize, n: usize) -> Vec<u128> {
    let k = 2 * genus as u128;
    // (ending in Bg, not ending in Bg)
    let (mut ends_b, mut other) = (0u128, 1u128);
    let mut out = vec![1];
    for _ in 1..=n {
        let total = ends_b + other;
        let next_b = total;
        let next_other = total * (k - 1) - ends_b;
        ends_b = next_b;
        other = next_other;
        out.push(ends_b + other);
    }
    out
}

/// Coefficients of `Π_i (1 − t^i)^{−d_i}` up to `t^n`.
fn pbw_series(dims: &[usize], n: usize) -> Vec<u128> {
    let mut prod = vec![0u128; n + 1];
    prod[0] = 1;
    for (m, &d) in dims.iter().enumerate().map(|(i, d)| (i + 1, d)) {
        // Multiply by 1/(1 − t^m) d times.
        for _ in 0..d {
            for e in m..=n {
                prod[e] += prod[e - m];
            }
        }
    }
    prod
}

fn hilbert_pbw(surface: &Surface, class: usize) -> Outcome {
    let genus = surface.genus();
    let n = class - 1;
    let basis: Vec<usize> = (1..=n).map(|d| surface.labute_basis(d).map(|b| b.len())).collect::<Result<_, _>>()?;
    let formula: Vec<usize> = labute_graded_dims(genus, n)?.iter().map(|&d| d as usize).collect();
    if basis != formula {
        return Ok((false, format!("basis sizes {basis:?}"), Some(format!("dimension formula gives {formula:?}"))));
    }
    let counted = normal_monomial_counts(genus, n);
    let recurrence: Vec<u128> = envelope_counts(genus, n).iter().map(|c| c.to_string().parse().unwrap_or(0)).collect();
    if counted != recurrence {
        return Ok((false, "normal monomial counts".into(), Some(format!("{counted:?} vs {recurrence:?}"))));
    }
    let pbw = pbw_series(&basis, n);
    if pbw != counted {
        return Ok((false, "PBW series of the basis".into(), Some(format!("{pbw:?} vs {counted:?}"))));
    }
    let d2 = 2 * genus * (2 * genus - 1) / 2 - 1;
    if basis[0] != 2 * genus || (n >= 2 && basis[1] != d2) {
        return Ok((false, format!("low degrees {basis:?}"), None));
    }
    Ok((true, format!("dims {basis:?}, envelope {counted:?}"), None))
}

fn relator_triviality(surface: &Surface, class: usize) -> Outcome {
    let r = surface.group().relator().clone();
    for l in 1..=class {
        if !surface.identity_mod_class(&r, l)? {
            return Ok((false, format!("relator survives mod Γ_{l}"), Some(r.to_string())));
        }
    }
    for c in 0..surface.generators() {
        if surface.identity_mod_class(&GroupWord::generator(c), 2)? {
            return Ok((false, "generator dies in H_1".into(), Some(generator_name(c))));
        }
    }
    Ok((true, format!("trivial through class {class}; generators survive"), None))
}

fn picard_lefschetz(registry: &TwistRegistry) -> Outcome {
    let mut count = 0;
    for t in registry.twists() {
        let w = t.boundary_word.pow(t.exponent());
        for c in t.conjugated_generators() {
            let x = GroupWord::generator(c);
            let lhs = t.automorphism().apply(&x).mul(&x.inverse());
            if lhs != GroupWord::commutator(&w, &x) {
                return Ok((false, format!("{} on {}", t.name, generator_name(c)), Some(lhs.to_string())));
            }
            count += 1;
        }
        if !registry.group().dehn_is_trivial(&t.automorphism().apply(registry.group().relator()).mul(&registry.group().relator().inverse())) {
            return Ok((false, format!("{} moves the relator", t.name), None));
        }
    }
    Ok((true, format!("φ(x)x⁻¹ = [w, x] on {count} generators"), None))
}

fn twist_depth(surface: &Surface, registry: &TwistRegistry, class: usize) -> Outcome {
    let report = depth_report(surface, registry, &registry.parse("t")?, class)?;
    let expected = if class > 3 { Depth::Exact(3) } else { Depth::AtLeast(class) };
    let witness = report.witnesses().next().map(|g| format!("{}: {}", g.generator, g.leading));
    Ok((report.depth == expected, format!("depth of t: {}", report.depth), witness.filter(|_| report.depth != expected)))
}

fn jacobi(malcev: &MalcevAlgebra, corrupt: bool) -> Outcome {
    let mut algebra = malcev.algebra().clone();
    let mut note = String::new();
    if corrupt {
        // [a1, b1] picks up a spurious copy of [a1, a2].
        if malcev.class() < 4 {
            return Ok((false, "corruption needs class ≥ 4".into(), None));
        }
        let mut v = algebra.bracket(0, 1);
        torelli_core::linalg::axpy(&mut v, &Rational::from_int(1), &algebra.bracket(0, 2));
        algebra.set_bracket(0, 1, v);
        note = " (corrupted [a1,b1])".into();
    }
    Ok(match algebra.jacobi_violation() {
        None => (true, format!("{} basis elements, {} constants{note}", algebra.dim(), algebra.nonzero_constants()), None),
        Some((i, j, k)) => (
            false,
            format!("Jacobi identity fails{note}"),
            Some(format!("({}, {}, {})", algebra.label(i), algebra.label(j), algebra.label(k))),
        ),
    })
}

fn d_squared(genus: usize, malcev: &MalcevAlgebra, torus: &torelli_core::torus::MappingTorus) -> Outcome {
    let surface = surface_model(genus, malcev.algebra())?;
    let twisted = mapping_torus_model(genus, &torus.torus)?;
    for (what, m) in [("surface", &surface), ("mapping torus", &twisted)] {
        if let Some(&k) = m.d_squared_defects().first() {
            return Ok((false, format!("d² ≠ 0 in the {what} model"), Some(m.generators()[k].name.clone())));
        }
    }
    Ok((true, format!("{} and {} generators", surface.len(), twisted.len()), None))
}

fn exp_log(surface: &Surface, class: usize, torus: &torelli_core::torus::MappingTorus) -> Outcome {
    let env = surface.envelope(class)?;
    let g = surface.generators();
    let mut words: Vec<GroupWord> = (0..g).map(GroupWord::generator).collect();
    words.push(GroupWord::commutator(&GroupWord::generator(0), &GroupWord::generator(1)));
    words.push(GroupWord::generator(0).mul(&GroupWord::generator(g - 1).pow(-2)));
    for w in &words {
        let s = env.expand_rational(w)?;
        if env.exp(&env.log(&s)?)? != s {
            return Ok((false, "exp(log M(w)) ≠ M(w)".into(), Some(w.to_string())));
        }
    }
    let d = log_unipotent(&torus.phi)?;
    if d.exp_nilpotent()? != torus.phi {
        return Ok((false, "exp(log φ) ≠ φ".into(), None));
    }
    Ok((true, format!("{} series and φ ({} nonzero entries of log φ)", words.len(), d.nnz()), None))
}

fn leibniz(malcev: &MalcevAlgebra, torus: &torelli_core::torus::MappingTorus) -> Outcome {
    let algebra = malcev.algebra();
    if !algebra.is_derivation(torus.torus.derivation.columns()) {
        return Ok((false, "log φ is not a derivation".into(), None));
    }
    if malcev.class() >= 4 {
        // a1 ↦ [a1, a2], everything else ↦ 0, is not a derivation.
        let mut cols = vec![SparseVec::new(); algebra.dim()];
        cols[0] = algebra.bracket(0, 2);
        if algebra.is_derivation(&cols) {
            return Ok((false, "negative control accepted as a derivation".into(), None));
        }
    }
    Ok((true, "log φ satisfies the Leibniz rule".into(), None))
}

fn round_trips(surface: &Surface, registry: &TwistRegistry, class: usize) -> Outcome {
    let group = surface.group();
    let mut words = vec![group.relator().clone()];
    for t in registry.twists() {
        words.extend(t.automorphism().images().iter().cloned());
    }
    for w in &words {
        let back = group.parse_word(&w.to_string())?;
        if &back != w {
            return Ok((false, "word display/parse".into(), Some(w.to_string())));
        }
    }
    let mut exprs = vec!["t", "t^-1", "[t,t^-1]", "t^2 t^-1"];
    if registry.get("t1").is_ok() {
        exprs.extend(["[t1,t2]", "[t1,[t1,t2]]", "t1 t2^-1"]);
    }
    for e in &exprs {
        let m = registry.parse(e)?;
        if registry.parse(&m.to_string())? != m {
            return Ok((false, "expression display/parse".into(), Some(e.to_string())));
        }
    }
    let x = GroupWord::generator(torelli_core::words::a(2));
    let w = registry.evaluate(&registry.parse("t")?, &x)?.mul(&x.inverse());
    let leading = surface.leading_term(&w, class)?;
    let json = serde_json::to_string(&leading).map_err(|e| Error::Invariant(e.to_string()))?;
    let back: LeadingTerm = serde_json::from_str(&json).map_err(|e| Error::Invariant(e.to_string()))?;
    if back != leading {
        return Ok((false, "leading term JSON".into(), Some(json)));
    }
    Ok((true, format!("{} words, {} expressions, leading-term JSON", words.len(), exprs.len()), None))
}

fn fixture() -> Outcome {
    let m = massey_fixture();
    let e = |i: usize| SparseVec::from([(i, Rational::from_int(1))]);
    let r = m.triple_massey(&e(0), &e(0), &e(1))?;
    let xz = wedge11(&e(0), &e(2));
    let Some(f) = &r.certificate else {
        return Ok((false, "⟨x, x, y⟩ vanishes".into(), None));
    };
    let ok = !r.vanishes && pair_with(f, &xz) != Rational::from_int(0) && pair_with(f, &r.representative) == Rational::from_int(1);
    Ok((ok, "⟨x, x, y⟩ = [x∧z] ≠ 0".into(), None))
}

/// Runs every check at `(genus, class)`. With `corrupt`, one structure
/// constant is perturbed before the Jacobi check, which must then fail.
pub fn verify_suite(genus: usize, class: usize, corrupt: bool, hard_cap: usize) -> Result<VerifyReport, CliError> {
    if class < 3 {
        return Err(Error::ClassTooSmall { min: 3, got: class }.into());
    }
    let surface = Surface::with_class_cap(genus, hard_cap)?;
    surface.check_class(class)?;
    let registry = default_registry(genus)?;
    let mut checks = Vec::new();
    record(&mut checks, "hilbert_pbw", hilbert_pbw(&surface, class));
    record(&mut checks, "relator_triviality", relator_triviality(&surface, class));
    record(&mut checks, "picard_lefschetz", picard_lefschetz(&registry));
    record(&mut checks, "twist_depth", twist_depth(&surface, &registry, class));
    let malcev = MalcevAlgebra::build(&surface, class)?;
    record(&mut checks, "malcev_jacobi", jacobi(&malcev, corrupt));
    match registry.parse("t").and_then(|t| mapping_torus(&malcev, &registry, &t, true)) {
        Ok(torus) => {
            record(&mut checks, "model_d_squared", d_squared(genus, &malcev, &torus));
            record(&mut checks, "exp_log", exp_log(&surface, class, &torus));
            record(&mut checks, "leibniz", leibniz(&malcev, &torus));
        }
        Err(e) => {
            for name in ["model_d_squared", "exp_log", "leibniz"] {
                record(&mut checks, name, Err(e.clone()));
            }
        }
    }
    record(&mut checks, "round_trips", round_trips(&surface, &registry, class));
    record(&mut checks, "massey_fixture", fixture());
    Ok(VerifyReport {
        genus,
        class,
        corrupted: corrupt,
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn automaton_matches_brute_force() {
        // Genus 1 alphabet {A, B}: words avoiding "BA" are A^i B^j.
        assert_eq!(normal_monomial_counts(1, 4), vec![1, 2, 3, 4, 5]);
        assert_eq!(normal_monomial_counts(2, 3), vec![1, 4, 15, 56]);
    }

    #[test]
    fn pbw_of_free_abelian() {
        // Two generators in degree 1: the symmetric algebra has d + 1 monomials in degree d.
        assert_eq!(pbw_series(&[2], 4), vec![1, 2, 3, 4, 5]);
    }
}
