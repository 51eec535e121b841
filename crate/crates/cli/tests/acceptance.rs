//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criterion 7 is expected to fail; see `EXPECTED`. The process exits nonzero
//! only when an outcome differs from its expectation.

use std::process::Command;
use std::time::{Duration, Instant};

use torelli_cli::verify::{verify_suite, VerifyReport};
use torelli_core::linalg::SparseVec;
use torelli_core::mcg::{builtin_s4_scenario, builtin_separating_twist, depth_report, Depth, McgWord};
use torelli_core::sullivan::{
    formality_verdict, mapping_torus_model, massey_fixture, massey_survey, pair_with, wedge11, ObstructionStatus,
};
use torelli_core::tensor::{labute_graded_dims, magnus_expand};
use torelli_core::torus::{algebra_invariants, mapping_torus, MalcevAlgebra};
use torelli_core::{GroupWord, IntSeries, Rational, Ring, Surface};

type Verdict = Result<String, String>;

const EXPECTED: [bool; 10] = [true, true, true, true, true, true, false, true, true, true];

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn separating_twist_depth() -> Verdict {
    let mut parts = Vec::new();
    for genus in 2..=4 {
        let start = Instant::now();
        let surface = Surface::new(genus).map_err(err)?;
        let reg = builtin_separating_twist(genus).map_err(err)?;
        let r = depth_report(&surface, &reg, &reg.parse("t").map_err(err)?, 5).map_err(err)?;
        let elapsed = start.elapsed();
        ensure(r.depth == Depth::Exact(3), format!("genus {genus}: depth {}", r.depth))?;
        ensure(elapsed < Duration::from_secs(10), format!("genus {genus}: {elapsed:?}"))?;
        parts.push(format!("g{genus} {}ms", elapsed.as_millis()));
    }
    Ok(format!("depth 3 ({})", parts.join(", ")))
}

fn picard_lefschetz() -> Verdict {
    let mut regs = (2..=4).map(builtin_separating_twist).collect::<Result<Vec<_>, _>>().map_err(err)?;
    regs.push(builtin_s4_scenario().map_err(err)?);
    let mut n = 0;
    for reg in &regs {
        for t in reg.twists() {
            let w = t.boundary_word.pow(t.exponent());
            for c in t.conjugated_generators() {
                let x = GroupWord::generator(c);
                ensure(t.automorphism().apply(&x).mul(&x.inverse()) == GroupWord::commutator(&w, &x), format!("{} on {c}", t.name))?;
                n += 1;
            }
            let inv = t.inverted();
            let wi = inv.boundary_word.pow(inv.exponent());
            for c in inv.conjugated_generators() {
                let x = GroupWord::generator(c);
                ensure(inv.automorphism().apply(&x).mul(&x.inverse()) == GroupWord::commutator(&wi, &x), format!("{}⁻¹ on {c}", t.name))?;
            }
        }
    }
    Ok(format!("φ(x)x⁻¹ = [w, x] on {n} conjugated generators, twists and inverses"))
}

fn bracket_depths() -> Verdict {
    let reg = builtin_s4_scenario().map_err(err)?;
    let surface = Surface::with_class_cap(4, 8).map_err(err)?;
    let c = reg.parse("[t1,t2]").map_err(err)?;
    let r6 = depth_report(&surface, &reg, &c, 6).map_err(err)?;
    ensure(r6.depth == Depth::Exact(5), format!("[t1,t2]: {}", r6.depth))?;
    let r7 = depth_report(&surface, &reg, &c, 7).map_err(err)?;
    ensure(r7.depth == Depth::Exact(5), "class 7 disagrees")?;
    // The degree-5 coordinates do not depend on the truncation.
    for (a, b) in r6.generators.iter().zip(&r7.generators) {
        ensure(a.leading.degree().is_none() || a.leading == b.leading, format!("{}: leading term moves with the class", a.generator))?;
    }
    let probe = r6.generators.iter().filter(|g| g.leading.degree() == Some(5)).count();
    let cc = reg.parse("[t1,[t1,t2]]").map_err(err)?;
    let r8 = depth_report(&surface, &reg, &cc, 8).map_err(err)?;
    ensure(r8.depth.lower_bound() >= 7, format!("[t1,[t1,t2]]: {}", r8.depth))?;
    Ok(format!("[t1,t2] depth {} ({probe} generators with degree-5 terms), [t1,[t1,t2]] depth {}", r6.depth, r8.depth))
}

/// `d_n = (1/n) Σ_{d|n} μ(n/d) p_d` with `p_d = α^d + β^d`, `α, β` the roots of `t² − 2g·t + 1`.
fn necklace_dims(genus: i128, n: usize) -> Vec<i128> {
    let mut p = vec![2i128, 2 * genus];
    for d in 2..=n {
        p.push(2 * genus * p[d - 1] - p[d - 2]);
    }
    let mu = |mut m: usize| -> i128 {
        let mut r = 1;
        let mut q = 2;
        while q * q <= m {
            if m % q == 0 {
                m /= q;
                if m % q == 0 {
                    return 0;
                }
                r = -r;
            }
            q += 1;
        }
        if m > 1 {
            -r
        } else {
            r
        }
    };
    (1..=n)
        .map(|k| {
            let s: i128 = (1..=k).filter(|d| k % d == 0).map(|d| mu(k / d) * p[d]).sum();
            s / k as i128
        })
        .collect()
}

fn labute_dimensions() -> Verdict {
    for genus in 2..=4usize {
        let n = 7 - genus;
        let surface = Surface::new(genus).map_err(err)?;
        let dims: Vec<i128> = labute_graded_dims(genus, n).map_err(err)?.into_iter().map(i128::from).collect();
        let oracle = necklace_dims(genus as i128, n);
        ensure(dims == oracle, format!("genus {genus}: {dims:?} vs {oracle:?}"))?;
        for d in 1..=n {
            let b = surface.labute_basis(d).map_err(err)?.len() as i128;
            ensure(b == dims[d - 1], format!("genus {genus} degree {d}: basis has {b}"))?;
        }
        ensure(dims[0] == 2 * genus as i128, "d1 ≠ 2g")?;
        let g = genus as i128;
        ensure(dims[1] == g * (2 * g - 1) - 1, "d2 ≠ C(2g,2) − 1")?;
    }
    let d = labute_graded_dims(2, 3).map_err(err)?;
    ensure(d[1] == 5, "genus 2: d2 ≠ 5")?;
    Ok(format!("genus 2 dims {d:?}; basis sizes agree with the necklace formula for genus 2-4"))
}

fn relator_collapse() -> Verdict {
    for genus in 2..=4 {
        let surface = Surface::new(genus).map_err(err)?;
        let r = surface.group().relator().clone();
        for class in 1..=surface.class_cap() {
            ensure(surface.identity_mod_class(&r, class).map_err(err)?, format!("genus {genus} class {class}"))?;
        }
        let free = magnus_expand::<i128>(&r, 2 * genus, 3).map_err(err)?;
        ensure(!free.sub(&IntSeries::one(2 * genus, 3)).is_zero(), "free expansion of the relator is trivial")?;
    }
    Ok("relator is 1 in every quotient envelope through class 7, not in the free one".into())
}

fn structural_identities() -> Verdict {
    let mut details = Vec::new();
    for (genus, class) in [(2, 6), (3, 5)] {
        let v = verify_suite(genus, class, false, 7).map_err(err)?;
        for name in ["malcev_jacobi", "model_d_squared", "exp_log", "leibniz"] {
            let c = v.checks.iter().find(|c| c.name == name).ok_or(format!("missing check {name}"))?;
            ensure(c.passed, format!("genus {genus} class {class} {name}: {}", c.detail))?;
        }
        details.push(format!("g{genus} c{class}"));
    }
    Ok(format!("d² = 0, exp∘log = id, Leibniz and Jacobi at {}", details.join(", ")))
}

/// Every defined triple product vanishes in the model of the claimed partial
/// formality, and the obstruction sits in order 3.
fn partial_formality_of_tau() -> Verdict {
    let surface = Surface::new(2).map_err(err)?;
    let reg = builtin_separating_twist(2).map_err(err)?;
    let t = reg.parse("t").map_err(err)?;
    let v = formality_verdict(&surface, &reg, &t, 5, 4).map_err(err)?;
    let o = v.obstruction.found().ok_or("no obstruction")?;
    ensure(o.n == 3, format!("obstruction at N = {}", o.n))?;
    ensure(v.one_formal == Some(false), "not certified non-1-formal")?;
    let depth = v.depth.exact().ok_or("depth not exact")?;
    ensure(
        v.massey.nonvanishing == 0,
        format!(
            "{} of {} defined triples are nonzero in the class-{} model, which the depth-{depth} claim requires to be formal; verdict is {}",
            v.massey.nonvanishing,
            v.massey.defined,
            v.massey.model_class,
            v.verdict_line()
        ),
    )?;
    Ok(format!("(1,{depth})-formal with obstruction N = 3"))
}

fn product_baseline() -> Verdict {
    for genus in [2, 3] {
        let surface = Surface::new(genus).map_err(err)?;
        let reg = builtin_separating_twist(genus).map_err(err)?;
        let malcev = MalcevAlgebra::build(&surface, 4).map_err(err)?;
        let id = mapping_torus(&malcev, &reg, &McgWord::Identity, true).map_err(err)?;
        ensure(id.torus.derivation.is_zero(), "derivation of Id ≠ 0")?;
        let inv = algebra_invariants(&id.torus);
        ensure(inv.s_central && inv.t_central == Some(true), "s or t not central")?;
        let model = mapping_torus_model(genus, &id.torus).map_err(err)?;
        let cup = model.h1_and_cup();
        ensure(cup.b1() == 2 * genus + 2, format!("b1 = {}", cup.b1()))?;
        ensure(cup.cup_rank == 4 * genus + 2, format!("cup rank {}", cup.cup_rank))?;
        let s = massey_survey(&model).map_err(err)?;
        ensure(s.defined > 0 && s.nonvanishing == 0, format!("{} nonzero products", s.nonvanishing))?;
        let v = formality_verdict(&surface, &reg, &McgWord::Identity, 5, 4).map_err(err)?;
        ensure(v.obstruction == ObstructionStatus::NoneWithin { max_class: 5 }, "obstruction for Id")?;
    }
    Ok("X_Id: zero derivation, central s and t, b1 = 2g+2, cup rank 4g+2, all surveyed products vanish".into())
}

fn fixture() -> Verdict {
    let m = massey_fixture();
    ensure(
        m.export() == "genus 0, class 3, dims 2 1\nx 1\ny 1\nz 2\nd x = 0\nd y = 0\nd z = 1 · x^y\n",
        "fixture export",
    )?;
    let e = |i: usize| SparseVec::from([(i, Rational::from_int(1))]);
    let r = m.triple_massey(&e(0), &e(0), &e(1)).map_err(err)?;
    ensure(!r.vanishes, "⟨x, x, y⟩ vanishes")?;
    let f = r.certificate.as_ref().ok_or("no certificate")?;
    ensure(pair_with(f, &r.representative) == Rational::from_int(1), "certificate not normalized")?;
    ensure(pair_with(f, &wedge11(&e(0), &e(2))) != Rational::from_int(0), "class is not [x∧z]")?;
    ensure(m.triple_massey(&e(0), &e(1), &e(2)).is_err(), "product defined on the non-closed z")?;
    Ok("⟨x, x, y⟩ = [x∧z] ≠ 0 with a dual certificate".into())
}

fn verify_genus_four() -> Verdict {
    let start = Instant::now();
    let report: VerifyReport = verify_suite(4, 6, false, 7).map_err(err)?;
    let failed: Vec<&str> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    ensure(failed.is_empty(), format!("failed checks {failed:?}"))?;
    let run = |workers: &str| {
        Command::new(env!("CARGO_BIN_EXE_torelli"))
            .args(["--no-timing", "verify", "--genus", "4", "--class", "6"])
            .env("TORELLI_WORKERS", workers)
            .output()
            .map_err(err)
    };
    let (a, b) = (run("1")?, run("2")?);
    ensure(a.status.success() && b.status.success(), "binary verify failed")?;
    ensure(a.stdout == b.stdout, "reports differ between worker counts")?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30 * 60), format!("{elapsed:?}"))?;
    Ok(format!("{} checks pass, byte-identical reports, {} s", report.checks.len(), elapsed.as_secs()))
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 10] = [
        ("separating twist has depth 3", separating_twist_depth),
        ("Picard-Lefschetz", picard_lefschetz),
        ("bracket depths", bracket_depths),
        ("graded dimensions", labute_dimensions),
        ("relator collapse", relator_collapse),
        ("structural identities", structural_identities),
        ("partial formality of the separating twist", partial_formality_of_tau),
        ("identity baseline", product_baseline),
        ("Massey fixture", fixture),
        ("verification suite at genus 4, class 6", verify_genus_four),
    ];
    let mut unexpected = 0;
    for (i, ((name, f), expected)) in criteria.iter().zip(EXPECTED).enumerate() {
        let outcome = f();
        let passed = outcome.is_ok();
        let detail = outcome.unwrap_or_else(|e| e);
        let mark = if passed { "PASS" } else { "FAIL" };
        let note = if passed == expected { "" } else { " (unexpected)" };
        println!("criterion {:>2} {mark}{note}: {name}: {detail}", i + 1);
        unexpected += usize::from(passed != expected);
    }
    if unexpected > 0 {
        eprintln!("{unexpected} criteria differ from their expected outcome");
        std::process::exit(1);
    }
}
