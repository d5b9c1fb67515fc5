//! End-to-end acceptance criteria. Each criterion prints one line:
//! `[PASS] n title: detail` or `[FAIL] n title: reason`.
//!
//! Counts must match exactly; the only tolerances are wall-clock limits.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use bimorph::adjlift::lift_adjunction;
use bimorph::algebras::{
    count_algebra_morphisms, enumerate_algebra_morphisms, enumerate_algebra_morphisms_brute, enumerate_algebras, is_algebra_morphism, iso_classes, Algebra,
};
use bimorph::bimorph::{
    bilinearity, coproduct_law, dst_law, dst_prime_law, em_axioms_as_bimorphisms, em_axioms_direct, is_bilinear, is_kleisli_law, test_tuples, AxiomVerdicts,
    FunctorHandle, NatFamily,
};
use bimorph::classify::{coproduct_lift, free_iso, free_iso_naturality, tensor_with, verify_coproduct, ClassifyRoute};
use bimorph::finset::{all_maps, compose};
use bimorph::monads::{
    check_monad_laws, check_product_monad_laws, identity_monad, maybe_monad, product_monad, semimodule_monad, test_sets, writer_monad, FiniteMonoid,
    FiniteSemiring, MonadInstance, MonadMorphism,
};
use bimorph::strength::{canonical_strength, is_commutative};
use bimorph::{Arrow, Budget, Elem, FinMap, FinSet, LawReport, Verdict};

const MONAD_SUITE_LIMIT: Duration = Duration::from_secs(60);
const UNIVERSAL_LIMIT: Duration = Duration::from_secs(300);
/// Exhaustive algebra tables are used up to this many candidates per
/// carrier; above it the fixtures are the genuine algebras and all their
/// one-entry mutants.
const EXHAUSTIVE_TABLES: u128 = 4096;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn b() -> Budget {
    Budget::default()
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn sm(s: FiniteSemiring) -> MonadInstance {
    semimodule_monad(s)
}

fn free(t: &MonadInstance, n: Elem) -> Algebra {
    Algebra::free_on(t, &FinSet::new(n)).unwrap()
}

fn all_algebras(t: &MonadInstance, sizes: std::ops::RangeInclusive<Elem>) -> Vec<Algebra> {
    sizes.flat_map(|c| enumerate_algebras(t, &FinSet::new(c), b()).unwrap()).collect()
}

fn classes(t: &MonadInstance, sizes: std::ops::RangeInclusive<Elem>) -> Vec<Algebra> {
    sizes
        .flat_map(|c| iso_classes(&enumerate_algebras(t, &FinSet::new(c), b()).unwrap(), b()).unwrap())
        .collect()
}

/// Bilinear maps `A × B → C`, by brute force over every map and the
/// double-strength diagram.
fn bilinear_count(alpha: &Algebra, beta: &Algebra, gamma: &Algebra) -> usize {
    let ab = FinSet::new(alpha.size() * beta.size());
    all_maps(&ab, gamma.carrier(), b())
        .unwrap()
        .filter(|h| is_bilinear(h, alpha, beta, gamma, b()).unwrap().is_pass())
        .count()
}

fn law_failure_has_witness(report: &LawReport) -> bool {
    report.first_failure().is_some_and(|c| c.verdict.witness().is_some())
}

fn monad_suite() -> Outcome {
    let start = Instant::now();
    let monads = [
        identity_monad(),
        maybe_monad(),
        writer_monad(FiniteMonoid::symmetric3()),
        sm(FiniteSemiring::boolean()),
        sm(FiniteSemiring::f2()),
        sm(FiniteSemiring::integers_mod(4)),
    ];
    let (mut checks, mut skipped) = (0, 0);
    for t in &monads {
        let r = check_monad_laws(t, &test_sets(2), b());
        if let Some(c) = r.first_failure() {
            return Err(format!("{}: {c}", t.name()));
        }
        checks += r.checks.len();
        skipped += r.skipped().count();
    }
    let f2 = sm(FiniteSemiring::f2());
    let p = ok(product_monad(vec![f2.clone(), f2]))?;
    let r = check_product_monad_laws(&p, &test_tuples(2, 2), b());
    if let Some(c) = r.first_failure() {
        return Err(format!("{}: {c}", p.name()));
    }
    checks += r.checks.len();
    skipped += r.skipped().count();
    let elapsed = start.elapsed();
    ensure!(elapsed < MONAD_SUITE_LIMIT, "took {elapsed:?}, limit {MONAD_SUITE_LIMIT:?}");
    Ok(format!(
        "7 monads, {checks} checks, 0 failed, {skipped} skipped over budget, {:.1}s",
        elapsed.as_secs_f64()
    ))
}

fn commutativity() -> Outcome {
    let cases = [
        (sm(FiniteSemiring::boolean()), true),
        (sm(FiniteSemiring::f2()), true),
        (sm(FiniteSemiring::integers_mod(4)), true),
        (writer_monad(FiniteMonoid::symmetric3()), false),
        (sm(FiniteSemiring::upper_triangular()), false),
    ];
    // the algebraic side of the equivalence, computed from the tables
    ensure!(!FiniteSemiring::upper_triangular().is_commutative(), "upper triangular matrices commute");
    ensure!(!FiniteMonoid::symmetric3().is_commutative(), "S3 is abelian");
    for (t, expected) in &cases {
        let c = is_commutative(&canonical_strength(t), &test_sets(2), b());
        ensure!(c.commutative == *expected, "{}: got {}", t.name(), c.commutative);
        ensure!(expected | c.witness.is_some(), "{}: no witness", t.name());
    }
    Ok("Bool, F2, Z4 commutative; writer(S3) and upper-triangular witnessed".into())
}

fn bilinearity_equivalence() -> Outcome {
    let t = sm(FiniteSemiring::f2());
    let algs = all_algebras(&t, 0..=2);
    let (mut maps, mut bilinear, mut discrepancies) = (0usize, 0usize, 0usize);
    for a in &algs {
        for c in &algs {
            let ab = FinSet::new(a.size() * c.size());
            for gamma in &algs {
                for h in ok(all_maps(&ab, gamma.carrier(), b()))? {
                    let v = ok(bilinearity(&h, a, c, gamma, b()))?;
                    let both = v.left.is_pass() && v.right.is_pass();
                    maps += 1;
                    bilinear += usize::from(v.bilinear.is_pass());
                    discrepancies += usize::from(v.bilinear.is_pass() != both);
                }
            }
        }
    }
    ensure!(discrepancies == 0, "{discrepancies} discrepancies among {maps} maps");
    Ok(format!("{} algebras, {maps} maps, {bilinear} bilinear, 0 discrepancies", algs.len()))
}

fn universal_bijection() -> Outcome {
    let start = Instant::now();
    let mut pairs = 0;
    for t in [sm(FiniteSemiring::f2()), sm(FiniteSemiring::boolean())] {
        let sources = all_algebras(&t, 1..=2);
        let targets = classes(&t, 1..=4);
        for a in &sources {
            for c in &sources {
                let co = ok(tensor_with(a, c, ClassifyRoute::Auto, b()))?;
                for gamma in &targets {
                    let oracle = bilinear_count(a, c, gamma);
                    let u = ok(co.verify_universal(gamma, b()))?;
                    ensure!(u.bimorphisms == oracle, "{}: {} bimorphisms, brute force {oracle}", t.name(), u.bimorphisms);
                    ensure!(
                        u.morphisms == oracle,
                        "{}: |A|={} |B|={} |C|={}: {} morphisms out of the tensor, {oracle} bimorphisms",
                        t.name(),
                        a.size(),
                        c.size(),
                        gamma.size(),
                        u.morphisms
                    );
                    ensure!(u.round_trip && u.unique, "{}: hat/unhat do not round-trip", t.name());
                    pairs += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < UNIVERSAL_LIMIT, "took {elapsed:?}, limit {UNIVERSAL_LIMIT:?}");
    Ok(format!("{pairs} (pair, target) cases agree, {:.1}s", elapsed.as_secs_f64()))
}

fn free_isomorphism() -> Outcome {
    let h = FunctorHandle::product();
    let mut squares = 0;
    for t in [sm(FiniteSemiring::f2()), sm(FiniteSemiring::boolean())] {
        let s = ok(product_monad(vec![t.clone(), t.clone()]))?;
        let law = ok(dst_law(&t))?;
        let mut isos = Vec::new();
        for (m, n) in [(0, 1), (1, 1), (1, 2), (2, 1), (2, 2)] {
            let bases = [FinSet::new(m), FinSet::new(n)];
            let iso = ok(free_iso(&h, &law, &s, &t, &bases, b()))?;
            let w = iso.classifying.result();
            ensure!(w.size() == ok(t.obj_size(m * n))?, "{}: |W| = {} at ({m}, {n})", t.name(), w.size());
            ensure!(ok(is_algebra_morphism(&iso.forward, w, &iso.free, b()))?, "forward is not a morphism");
            ensure!(ok(is_algebra_morphism(&iso.backward, &iso.free, w, b()))?, "backward is not a morphism");
            ensure!(
                ok(compose(&iso.backward, &iso.forward))? == FinMap::identity(w.carrier()),
                "backward after forward"
            );
            ensure!(
                ok(compose(&iso.forward, &iso.backward))? == FinMap::identity(iso.free.carrier()),
                "forward after backward"
            );
            isos.push(iso);
        }
        // base maps from (1, 1) into (1, 2), (2, 1) and (2, 2)
        for to in &isos[2..] {
            let maps = |i: usize| all_maps(&FinSet::new(1), &to.bases[i], b()).unwrap().collect::<Vec<_>>();
            for f in maps(0) {
                for g in maps(1) {
                    let v = ok(free_iso_naturality(&isos[1], to, &[f.clone(), g], b()))?;
                    ensure!(v.is_pass(), "{}: naturality fails: {v:?}", t.name());
                    squares += 1;
                }
            }
        }
    }
    ensure!(squares >= 5, "only {squares} naturality squares");
    Ok(format!("10 free pairs isomorphic, {squares} naturality squares"))
}

fn coproducts() -> Outcome {
    let t = sm(FiniteSemiring::boolean());
    let algs = classes(&t, 1..=4);
    let mut cases = 0;
    for a in &algs {
        for c in &algs {
            let co = ok(coproduct_lift(a, c, b()))?;
            for gamma in &algs {
                let v = ok(verify_coproduct(&co, gamma, b()))?;
                let oracle = ok(enumerate_algebra_morphisms_brute(a, gamma, b()))?.len() * ok(enumerate_algebra_morphisms_brute(c, gamma, b()))?.len();
                ensure!(v.pairs == oracle, "pair count {} vs brute force {oracle}", v.pairs);
                ensure!(
                    v.morphisms == oracle,
                    "|A|={} |B|={} |C|={}: {} morphisms, {oracle} pairs",
                    a.size(),
                    c.size(),
                    gamma.size(),
                    v.morphisms
                );
                ensure!(v.unique, "mediating morphism not unique");
                cases += 1;
            }
        }
    }
    Ok(format!("{} semilattices, {cases} cases", algs.len()))
}

fn tensor_dimension() -> Outcome {
    let t = sm(FiniteSemiring::f2());
    let targets = classes(&t, 1..=4);
    for (r, s, size) in [(1, 1, 2), (1, 2, 4)] {
        let (x, y) = (free(&t, r), free(&t, s));
        let direct = ok(tensor_with(&x, &y, ClassifyRoute::Coequalizer, b()))?;
        ensure!(direct.result().size() == size, "ranks ({r}, {s}): congruence gives {}", direct.result().size());
        for gamma in &targets {
            // a bilinear map out of free modules is free on r·s generators
            let oracle = gamma.size().pow((r * s) as u32) as usize;
            ensure!(bilinear_count(&x, &y, gamma) == oracle, "bilinear count at |C|={}", gamma.size());
            ensure!(
                ok(count_algebra_morphisms(direct.result(), gamma, b()))? == oracle,
                "hom count at |C|={}",
                gamma.size()
            );
        }
        ensure!(size == 1 << (r * s), "|W| != 2^(r·s)");
    }
    Ok("ranks (1,1) -> 2, (1,2) -> 4 by congruence and hom counts".into())
}

fn adjoint_lifting() -> Outcome {
    let sigma = MonadMorphism::maybe_to_semimodule(FiniteSemiring::boolean());
    let adj = ok(lift_adjunction(&sigma, 2, b()))?;
    let pointed = classes(&maybe_monad(), 1..=3);
    let lattices = classes(&sm(FiniteSemiring::boolean()), 1..=4);
    let (mut pairs, mut squares) = (0, 0);
    for alpha in &pointed {
        let co = ok(adj.left(alpha, b()))?;
        for beta in &lattices {
            let hb = ok(adj.hom_bijection_with(&co, beta, b()))?;
            // basepoint-preserving maps into (B, bottom)
            let oracle = beta.size().pow(alpha.size() as u32 - 1) as usize;
            ensure!(
                hb.holds() && hb.left == oracle && hb.right == oracle,
                "|A|={} |B|={}: {hb:?}, expected {oracle}",
                alpha.size(),
                beta.size()
            );
            pairs += 1;
        }
        for beta in lattices.iter().filter(|l| l.size() <= 3) {
            for beta2 in lattices.iter().filter(|l| l.size() <= 3) {
                for g in ok(enumerate_algebra_morphisms(beta, beta2, b()))? {
                    ensure!(ok(adj.naturality_in_beta(&co, &g, beta, beta2, b()))?.is_pass(), "naturality fails");
                    squares += 1;
                }
            }
        }
    }
    Ok(format!("{pairs} hom-count pairs, {squares} naturality squares"))
}

fn corrupt_last_entry(law: &NatFamily) -> NatFamily {
    law.patched("one entry changed", |objs, a| {
        if objs.iter().all(|o| o.size() == 1) {
            let last = a.dom().size() - 1;
            let n = a.cod().size();
            Ok(Arrow::new(a.dom().clone(), a.cod().clone(), move |x| {
                if x == last {
                    (a.apply(x) + 1) % n
                } else {
                    a.apply(x)
                }
            }))
        } else {
            Ok(a)
        }
    })
}

fn constant_component(law: &NatFamily) -> NatFamily {
    law.patched("dead component", |objs, a| {
        if objs.iter().map(FinSet::size).sum::<Elem>() == 2 {
            Ok(Arrow::new(a.dom().clone(), a.cod().clone(), |_| 0))
        } else {
            Ok(a)
        }
    })
}

fn permuted_output(law: &NatFamily) -> NatFamily {
    // swaps the first two elements of T(H(A)) at one size
    law.patched("permuted output", |objs, a| {
        if objs.iter().map(FinSet::size).collect::<Vec<_>>() == [1, 2] {
            Ok(Arrow::new(a.dom().clone(), a.cod().clone(), move |x| match a.apply(x) {
                0 => 1,
                1 => 0,
                y => y,
            }))
        } else {
            Ok(a)
        }
    })
}

fn kleisli_fixtures() -> Outcome {
    let tuples = test_tuples(2, 2);
    let (mut laws, mut mutants) = (0, 0);
    for t in [sm(FiniteSemiring::f2()), sm(FiniteSemiring::boolean())] {
        let s = ok(product_monad(vec![t.clone(), t.clone()]))?;
        let fixtures = [
            (ok(dst_law(&t))?, FunctorHandle::product()),
            (ok(dst_prime_law(&t))?, FunctorHandle::product()),
            (ok(coproduct_law(&t))?, FunctorHandle::coproduct()),
        ];
        for (law, h) in &fixtures {
            let r = is_kleisli_law(law, h, &s, &t, &tuples, b());
            if let Some(c) = r.first_failure() {
                return Err(format!("{} over {}: {c}", law.name(), t.name()));
            }
            ensure!(r.skipped().count() == 0, "{} over {}: checks skipped", law.name(), t.name());
            laws += 1;
            for bad in [corrupt_last_entry(law), constant_component(law), permuted_output(law)] {
                let r = is_kleisli_law(&bad, h, &s, &t, &tuples, b());
                ensure!(
                    law_failure_has_witness(&r),
                    "{} mutant '{}' over {}: not caught",
                    law.name(),
                    bad.name(),
                    t.name()
                );
                mutants += 1;
            }
        }
    }
    Ok(format!("{laws} laws pass, {mutants} mutants fail with witnesses"))
}

fn builtin_monads() -> Vec<MonadInstance> {
    let mut out = vec![identity_monad(), maybe_monad()];
    out.extend(FiniteMonoid::BUILTIN_NAMES.iter().map(|n| writer_monad(FiniteMonoid::builtin(n).unwrap())));
    out.extend(FiniteSemiring::BUILTIN_NAMES.iter().map(|n| sm(FiniteSemiring::builtin(n).unwrap())));
    out
}

/// Genuine algebras on `carrier` plus non-algebras: every table when there
/// are few, otherwise every one-entry change of a genuine table.
fn axiom_fixtures(t: &MonadInstance, carrier: &FinSet) -> Vec<Algebra> {
    let tc = t.obj(carrier).unwrap();
    let c = carrier.size();
    if c == 0 {
        return vec![];
    }
    let tables = c.checked_pow(tc.size() as u32).unwrap_or(u128::MAX);
    if tables <= EXHAUSTIVE_TABLES {
        return all_maps(&tc, carrier, b())
            .unwrap()
            .map(|m| Algebra::unchecked(t, carrier, m).unwrap())
            .collect();
    }
    let mut out = Vec::new();
    for alg in enumerate_algebras(t, carrier, b()).unwrap() {
        let table = alg.structure_table(b()).unwrap();
        for x in 0..tc.size() {
            for v in 0..c {
                let mut entries = table.table().to_vec();
                entries[x as usize] = v;
                out.push(Algebra::unchecked(t, carrier, FinMap::new(tc.clone(), carrier.clone(), entries).unwrap()).unwrap());
            }
        }
    }
    out
}

fn decided(v: &Verdict) -> bool {
    !v.is_skipped()
}

/// A budget overrun in either route counts as undecided, not as a verdict.
fn verdicts(r: bimorph::Result<AxiomVerdicts>) -> Result<AxiomVerdicts, String> {
    match r {
        Err(e) if e.is_budget() => {
            let skip = Verdict::Skipped { reason: e.to_string() };
            Ok(AxiomVerdicts {
                unit: skip.clone(),
                multiplication: skip,
            })
        }
        other => ok(other),
    }
}

fn axioms_as_bimorphisms() -> Outcome {
    let (mut compared, mut genuine, mut undecided) = (0usize, 0usize, 0usize);
    let mut disagreements = Vec::new();
    for t in builtin_monads() {
        for c in 1..=2 {
            let carrier = FinSet::new(c);
            let t2 = t.obj(&carrier).and_then(|tc| t.obj(&tc)).map_or(Elem::MAX, |s| s.size());
            for alg in axiom_fixtures(&t, &carrier) {
                let via = verdicts(em_axioms_as_bimorphisms(&alg, b()))?;
                let direct = verdicts(em_axioms_direct(&alg, b()))?;
                genuine += usize::from(direct.unit.is_pass() && direct.multiplication.is_pass());
                for (name, x, y) in [
                    ("unit", &via.unit, &direct.unit),
                    ("multiplication", &via.multiplication, &direct.multiplication),
                ] {
                    if !decided(x) || !decided(y) {
                        // only a diagram over T(T(A)) larger than the budget may decline
                        ensure!(!b().admits(t2), "{} on {c}: {name} skipped with |T²(A)| = {t2}", t.name());
                        undecided += 1;
                        continue;
                    }
                    compared += 1;
                    if x.is_pass() != y.is_pass() {
                        disagreements.push(format!("{} on {c}: {name} {x:?} vs {y:?}", t.name()));
                    }
                }
            }
        }
    }
    ensure!(disagreements.is_empty(), "{} disagreements, first {}", disagreements.len(), disagreements[0]);
    Ok(format!(
        "{compared} axiom verdicts compared ({genuine} genuine algebras), 0 disagreements, {undecided} over budget"
    ))
}

/// Written to the stderr handle directly so the lines survive output capture.
fn report(line: &str) {
    use std::io::Write;
    let _ = writeln!(std::io::stderr(), "{line}");
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 10] = [
        ("monad-law suite", monad_suite),
        ("commutativity dichotomy", commutativity),
        ("bilinearity equivalence", bilinearity_equivalence),
        ("universal bimorphism bijection", universal_bijection),
        ("free-construction isomorphism", free_isomorphism),
        ("coproduct lifting", coproducts),
        ("F2 tensor dimension", tensor_dimension),
        ("adjoint lifting", adjoint_lifting),
        ("Kleisli-law fixtures", kleisli_fixtures),
        ("axioms as bimorphisms", axioms_as_bimorphisms),
    ];
    let mut failed = Vec::new();
    for (i, (title, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        match outcome {
            Ok(detail) => report(&format!("[PASS] {:>2} {title}: {detail}", i + 1)),
            Err(reason) => {
                report(&format!("[FAIL] {:>2} {title}: {reason}", i + 1));
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "criteria failed: {failed:?}");
}
