//! One function per subcommand, each producing a [`Report`].

use std::path::Path;

use super::args::{ClassifyArgs, Command, PairArgs};
use super::report::Report;
use super::workspace::{LawValue, MonadValue, Workspace};
use crate::adjlift::{lift_adjunction, transpose_check};
use crate::algebras::{enumerate_algebra_morphisms, enumerate_algebras, iso_classes, Algebra};
use crate::bimorph::{bilinearity, check_kleisli_functoriality, is_em_law, is_kleisli_law, is_left_lambda_morphism, kleisli_lift, test_tuples, FunctorHandle};
use crate::classify::{classifying_object, coproduct_lift, tensor, verify_coproduct, ClassifyingObject};
use crate::error::{Error, Result};
use crate::finset::{Budget, Elem, FinSet};
use crate::monads::{check_monad_laws, check_monad_morphism, check_product_monad_laws, test_sets, MonadInstance, MonadMorphism, ProductMonad};
use crate::report::{Check, Verdict, Witness};
use crate::strength::{canonical_strength, check_strength_axioms, is_commutative};

/// Settings shared by every subcommand.
#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub budget: Budget,
    pub max_size: u64,
}

pub fn run_command(ws: &Workspace, command: &Command, settings: Settings) -> Result<Report> {
    let budget = settings.budget;
    let max = settings.max_size as Elem;
    let mut r = Report::new(command.name());
    r.input("budget", budget.limit());
    r.input("max_size", max);
    match command {
        Command::CheckMonad { monad } => {
            r.input("monad", monad);
            match ws.monad(monad)? {
                MonadValue::Single(t) => r.law_report(&check_monad_laws(&t, &test_sets(max), budget)),
                MonadValue::Product(p) => r.law_report(&check_product_monad_laws(&p, &test_tuples(p.arity(), max), budget)),
            }
        }
        Command::CheckMorphism { sigma } => {
            r.input("sigma", sigma);
            let s = morphism(ws, sigma)?;
            r.law_report(&check_monad_morphism(&s, &test_sets(max), budget));
        }
        Command::CheckStrength { monad } => {
            r.input("monad", monad);
            let t = ws.single_monad(monad)?;
            r.law_report(&check_strength_axioms(&canonical_strength(&t), &test_sets(max), budget));
        }
        Command::CheckCommutative { monad } => {
            r.input("monad", monad);
            let t = ws.single_monad(monad)?;
            let c = is_commutative(&canonical_strength(&t), &test_sets(max), budget);
            r.law_report(&c.report);
            r.artifact("commutative", c.commutative);
        }
        Command::CheckBimorphism {
            pair,
            law,
            algebras,
            target,
            map,
        } => {
            r.input("target", target);
            r.input("map", map);
            let h = ws.map(map)?;
            match law {
                Some(law) => {
                    r.input("law", law);
                    r.input("algebras", algebras.join(","));
                    let lv = ws.family(law)?;
                    let alphas = source_algebras(ws, &lv, algebras)?;
                    let beta = ws.algebra(target, Some(&lv.target))?;
                    let carriers: Vec<FinSet> = alphas.iter().map(|a| a.carrier().clone()).collect();
                    let lambda = lv.family.component(&carriers)?;
                    let v = is_left_lambda_morphism(&h, &lambda, &lv.functor, &alphas, &beta, budget)?;
                    r.check(&Check::new("bimorphism", "bimorphism.left", vec![scope_of(&alphas)], v));
                }
                None => {
                    let (t, alpha, beta) = pair_inputs(ws, pair, &mut r)?;
                    let gamma = ws.algebra(target, Some(&t))?;
                    let b = bilinearity(&h, &alpha, &beta, &gamma, budget)?;
                    let scope = vec![format!("|A|={}, |B|={}, |C|={}", alpha.size(), beta.size(), gamma.size())];
                    r.check(&Check::new("bilinear", "bimorphism.bilinear", scope.clone(), b.bilinear.clone()));
                    r.check(&Check::new(
                        "linear in the first argument",
                        "bimorphism.left_component",
                        scope.clone(),
                        b.left.clone(),
                    ));
                    r.check(&Check::new(
                        "linear in the second argument",
                        "bimorphism.right_component",
                        scope.clone(),
                        b.right.clone(),
                    ));
                    let consistent = if b.consistent() {
                        Verdict::Pass
                    } else {
                        Verdict::Fail {
                            witness: Witness::note("the single diagram disagrees with the pair of component diagrams"),
                        }
                    };
                    r.check(&Check::new("bilinear iff both components", "bimorphism.equivalence", scope, consistent));
                    if let Some(w) = b.warning {
                        r.artifact("warning", w);
                    }
                }
            }
        }
        Command::CheckKleisliLaw { law } => {
            r.input("law", law);
            let lv = ws.family(law)?;
            let tuples = test_tuples(lv.functor.arity(), max);
            r.law_report(&is_kleisli_law(&lv.family, &lv.functor, &lv.source, &lv.target, &tuples, budget));
        }
        Command::CheckEmLaw { law } => {
            r.input("law", law);
            let lv = ws.family(law)?;
            let s = along_identity(&lv, "check-em-law")?;
            let tuples = test_tuples(1, max);
            r.law_report(&is_em_law(
                &lv.family,
                &FunctorHandle::identity(1),
                &s,
                &ProductMonad::single(lv.target.clone()),
                &tuples,
                budget,
            ));
        }
        Command::Lift { law } => {
            r.input("law", law);
            let lv = ws.family(law)?;
            let lifting = kleisli_lift(&lv.functor, &lv.family, &lv.source, &lv.target)?;
            r.law_report(&check_kleisli_functoriality(&lifting, &test_tuples(lv.functor.arity(), max), budget));
        }
        Command::Classify(c) => {
            let co = classify_input(ws, c, &mut r)?;
            describe_classifying(&co, &mut r, budget)?;
            verify_targets(ws, &co, &c.targets, target_max(c.target_max_size, max), &mut r, budget)?;
        }
        Command::Tensor {
            pair,
            targets,
            target_max_size,
        } => {
            let (_, alpha, beta) = pair_inputs(ws, pair, &mut r)?;
            let co = tensor(&alpha, &beta, budget)?;
            describe_classifying(&co, &mut r, budget)?;
            verify_targets(ws, &co, targets, target_max(*target_max_size, max), &mut r, budget)?;
        }
        Command::CoproductLift {
            pair,
            targets,
            target_max_size,
        } => {
            let (t, alpha, beta) = pair_inputs(ws, pair, &mut r)?;
            let co = coproduct_lift(&alpha, &beta, budget)?;
            describe_classifying(&co, &mut r, budget)?;
            for (label, gamma) in targets_for(ws, &t, targets, target_max(*target_max_size, max), budget)? {
                let v = verify_coproduct(&co, &gamma, budget)?;
                let verdict = if v.holds() {
                    Verdict::Pass
                } else {
                    Verdict::Fail {
                        witness: Witness::note(format!(
                            "{} pairs of morphisms, {} morphisms out of the coproduct, unique: {}",
                            v.pairs, v.morphisms, v.unique
                        )),
                    }
                };
                r.check(&Check::new("coproduct property", "classify.coproduct", vec![label], verdict));
            }
        }
        Command::VerifyUniversal(c) => {
            let co = classify_input(ws, c, &mut r)?;
            r.size_artifact("carrier size", co.result().size());
            verify_targets(ws, &co, &c.targets, target_max(c.target_max_size, max), &mut r, budget)?;
        }
        Command::AdjointLift { sigma, target_max_size } => {
            r.input("sigma", sigma);
            let s = morphism(ws, sigma)?;
            adjoint_lift(&s, max, target_max(*target_max_size, max), &mut r, budget)?;
        }
    }
    Ok(r)
}

fn target_max(given: Option<u64>, max: Elem) -> Elem {
    given.map_or(2 * max, |n| n as Elem)
}

fn scope_of(alphas: &[Algebra]) -> String {
    let sizes: Vec<String> = alphas.iter().map(|a| a.size().to_string()).collect();
    format!("carriers ({})", sizes.join(", "))
}

/// A family name, a file holding exactly one monad morphism, or one of
/// `identity(T)`, `unit(T)`, `maybe_to(S)`.
fn morphism(ws: &Workspace, name: &str) -> Result<MonadMorphism> {
    if let Ok(lv) = ws.family(name) {
        return lv.morphism.ok_or_else(|| Error::Usage(format!("family `{name}` is not a monad morphism")));
    }
    if Path::new(name).is_file() {
        let file = Workspace::load(&[name], ws.budget)?;
        let found: Vec<MonadMorphism> = file.morphisms();
        return match found.as_slice() {
            [one] => Ok(one.clone()),
            _ => Err(Error::Usage(format!("{name} defines {} monad morphisms, expected one", found.len()))),
        };
    }
    let (head, arg) = name.strip_suffix(')').and_then(|s| s.split_once('(')).ok_or_else(|| Error::Unknown {
        kind: "monad morphism".into(),
        name: name.into(),
    })?;
    match head {
        "identity" => Ok(MonadMorphism::identity(&ws.single_monad(arg)?)),
        "unit" => Ok(MonadMorphism::unit_of(&ws.single_monad(arg)?)),
        "maybe_to" => Ok(MonadMorphism::maybe_to_semimodule(ws.semiring(arg)?)),
        other => Err(Error::Unknown {
            kind: "monad morphism".into(),
            name: other.into(),
        }),
    }
}

fn along_identity(lv: &LawValue, command: &str) -> Result<MonadInstance> {
    if lv.functor.name() != FunctorHandle::identity(1).name() || lv.source.arity() != 1 {
        return Err(Error::Usage(format!(
            "{command} needs a law along the identity functor, found one along {}",
            lv.functor.name()
        )));
    }
    Ok(lv.source.component(0).clone())
}

fn pair_inputs(ws: &Workspace, pair: &PairArgs, r: &mut Report) -> Result<(MonadInstance, Algebra, Algebra)> {
    let (monad, left, right) = match (&pair.monad, &pair.left, &pair.right) {
        (Some(m), Some(l), Some(rt)) => (m, l, rt),
        _ => return Err(Error::Usage("give --monad, --left and --right".into())),
    };
    r.input("monad", monad);
    r.input("left", left);
    r.input("right", right);
    let t = ws.single_monad(monad)?;
    let alpha = ws.algebra(left, Some(&t))?;
    let beta = ws.algebra(right, Some(&t))?;
    Ok((t, alpha, beta))
}

fn source_algebras(ws: &Workspace, lv: &LawValue, names: &[String]) -> Result<Vec<Algebra>> {
    if names.len() != lv.source.arity() {
        return Err(Error::ArityMismatch {
            expected: lv.source.arity(),
            found: names.len(),
        });
    }
    names.iter().zip(lv.source.components()).map(|(n, s)| ws.algebra(n, Some(s))).collect()
}

fn classify_input(ws: &Workspace, c: &ClassifyArgs, r: &mut Report) -> Result<ClassifyingObject> {
    let budget = ws.budget;
    match &c.law {
        Some(law) => {
            r.input("law", law);
            r.input("algebras", c.algebras.join(","));
            let lv = ws.family(law)?;
            let alphas = source_algebras(ws, &lv, &c.algebras)?;
            classifying_object(&lv.functor, &lv.family, &alphas, &lv.target, budget)
        }
        None => {
            let (_, alpha, beta) = pair_inputs(ws, &c.pair, r)?;
            tensor(&alpha, &beta, budget)
        }
    }
}

fn describe_classifying(co: &ClassifyingObject, r: &mut Report, budget: Budget) -> Result<()> {
    r.size_artifact("carrier size", co.result().size());
    r.artifact("split", co.is_split());
    r.map_artifact("universal bimorphism", co.universal());
    if let Ok(s) = co.result().structure_table(Budget::new(budget.limit().min(4096))) {
        r.map_artifact("structure", &s);
    }
    for w in co.warnings() {
        r.artifact("warning", w.clone());
    }
    Ok(())
}

fn fixture_algebras(t: &MonadInstance, max: Elem, budget: Budget) -> Result<Vec<Algebra>> {
    let mut out = Vec::new();
    for n in 1..=max {
        out.extend(iso_classes(&enumerate_algebras(t, &FinSet::new(n), budget)?, budget)?);
    }
    Ok(out)
}

fn targets_for(ws: &Workspace, t: &MonadInstance, names: &[String], max: Elem, budget: Budget) -> Result<Vec<(String, Algebra)>> {
    if !names.is_empty() {
        return names.iter().map(|n| Ok((format!("target {n}"), ws.algebra(n, Some(t))?))).collect();
    }
    let mut per_size = std::collections::BTreeMap::<Elem, usize>::new();
    Ok(fixture_algebras(t, max, budget)?
        .into_iter()
        .map(|a| {
            let k = per_size.entry(a.size()).or_default();
            *k += 1;
            (format!("target |C|={} #{}", a.size(), *k), a)
        })
        .collect())
}

fn verify_targets(ws: &Workspace, co: &ClassifyingObject, names: &[String], max: Elem, r: &mut Report, budget: Budget) -> Result<()> {
    for (label, gamma) in targets_for(ws, co.result().monad(), names, max, budget)? {
        let v = co.verify_universal(&gamma, budget)?;
        let verdict = if v.holds() {
            Verdict::Pass
        } else {
            Verdict::Fail {
                witness: Witness::note(format!(
                    "{} bimorphisms, {} morphisms, round trip: {}, unique: {}",
                    v.bimorphisms, v.morphisms, v.round_trip, v.unique
                )),
            }
        };
        r.check(&Check::new("universal property", "classify.universal", vec![label], verdict));
    }
    Ok(())
}

fn adjoint_lift(sigma: &MonadMorphism, max: Elem, target_max: Elem, r: &mut Report, budget: Budget) -> Result<()> {
    let transpose = transpose_check(sigma, &test_tuples(1, max), budget);
    r.law_report(&transpose);
    if !transpose.passed() {
        return Ok(());
    }
    let adj = lift_adjunction(sigma, max as u32, budget)?;
    let sources = fixture_algebras(sigma.source(), max + 1, budget)?;
    let targets = fixture_algebras(sigma.target(), target_max, budget)?;
    let mut left_sizes = Vec::new();
    for (i, alpha) in sources.iter().enumerate() {
        let co = adj.left(alpha, budget)?;
        left_sizes.push(serde_json::json!({ "source": format!("|A|={} #{i}", alpha.size()), "left": co.result().size() as u64 }));
        for (j, beta) in targets.iter().enumerate() {
            let hb = adj.hom_bijection_with(&co, beta, budget)?;
            let verdict = if hb.holds() {
                Verdict::Pass
            } else {
                Verdict::Fail {
                    witness: Witness::note(format!(
                        "{} S-morphisms, {} T-morphisms, all bimorphisms: {}, injective: {}",
                        hb.right, hb.left, hb.all_bimorphisms, hb.injective
                    )),
                }
            };
            let scope = vec![format!("|A|={} #{i}", alpha.size()), format!("|B|={} #{j}", beta.size())];
            r.check(&Check::new("hom bijection", "adjunction.hom_bijection", scope, verdict));
        }
        // naturality in β against every morphism between the smaller targets
        let small: Vec<&Algebra> = targets.iter().filter(|b| b.size() <= 3).collect();
        let mut verdict = Verdict::Pass;
        'outer: for beta in &small {
            for beta2 in &small {
                for g in enumerate_algebra_morphisms(beta, beta2, budget)? {
                    let v = adj.naturality_in_beta(&co, &g, beta, beta2, budget)?;
                    if !v.is_pass() {
                        verdict = v;
                        break 'outer;
                    }
                }
            }
        }
        r.check(&Check::new(
            "natural in the target",
            "adjunction.naturality",
            vec![format!("|A|={} #{i}", alpha.size())],
            verdict,
        ));
        if let Some(beta) = targets.get(i % targets.len().max(1)) {
            r.law_report(&adj.triangle_identities(alpha, beta, budget));
        }
    }
    r.artifact("left adjoint sizes", left_sizes);
    Ok(())
}
