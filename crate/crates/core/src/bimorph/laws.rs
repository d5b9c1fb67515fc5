//! Kleisli and Eilenberg-Moore laws, checked on explicit test objects.

use super::family::{sizes, NatFamily};
use super::functor::FunctorHandle;
use crate::error::{Error, Result};
use crate::finset::{all_maps, Arrow, Budget, FinSet};
use crate::monads::{product_monad, MonadInstance, ProductMonad};
use crate::report::{diagram_check, Check, LawReport, Verdict};

/// Calls `f` on every tuple of maps `A_i → B_i` until it returns false.
pub(crate) fn for_each_tuple_map(a: &[FinSet], b: &[FinSet], budget: Budget, mut f: impl FnMut(&[Arrow]) -> Result<bool>) -> Result<()> {
    let choices: Vec<Vec<Arrow>> = a
        .iter()
        .zip(b)
        .map(|(x, y)| Ok(all_maps(x, y, budget)?.map(|m| m.to_arrow()).collect()))
        .collect::<Result<_>>()?;
    if choices.iter().any(Vec::is_empty) {
        return Ok(());
    }
    let total = choices.iter().try_fold(1u128, |acc, c| acc.checked_mul(c.len() as u128));
    budget.admit("tuples of maps", total.unwrap_or(u128::MAX))?;
    let mut idx = vec![0usize; choices.len()];
    loop {
        let tuple: Vec<Arrow> = idx.iter().zip(&choices).map(|(&i, c)| c[i].clone()).collect();
        if !f(&tuple)? {
            return Ok(());
        }
        let mut k = idx.len();
        loop {
            if k == 0 {
                return Ok(());
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Naturality of `family` along every tuple of maps between every ordered
/// pair of test tuples; one entry per pair.
pub fn check_naturality(family: &NatFamily, name: &str, tuples: &[Vec<FinSet>], budget: Budget) -> Vec<Check> {
    let mut out = Vec::new();
    for a in tuples {
        for b in tuples {
            let scope = vec![format!("A={}", sizes(a)), format!("B={}", sizes(b))];
            let mut verdict = Verdict::Pass;
            let outcome = for_each_tuple_map(a, b, budget, |fs| {
                let v = family.naturality_at(fs, budget)?;
                if let Verdict::Fail { mut witness } = v {
                    let maps: Vec<String> = fs
                        .iter()
                        .map(|f| format!("{:?}", f.tabulate(budget).map(|m| m.table().to_vec()).unwrap_or_default()))
                        .collect();
                    witness.element = format!("{} along f = {}", witness.element, maps.join(" × "));
                    verdict = Verdict::Fail { witness };
                    return Ok(false);
                }
                Ok(true)
            });
            out.push(match outcome {
                Ok(()) => Check::new(name, name, scope, verdict),
                Err(e) => Check::from_error(name, name, scope, e),
            });
        }
    }
    out
}

/// Naturality, unit and multiplication diagrams of a Kleisli law
/// `λ : H∘S ⇒ T∘H`.
pub fn is_kleisli_law(lambda: &NatFamily, h: &FunctorHandle, s: &ProductMonad, t: &MonadInstance, tuples: &[Vec<FinSet>], budget: Budget) -> LawReport {
    let mut report = LawReport::new(format!("Kleisli law {} : {}∘{} ⇒ {}∘{}", lambda.name(), h.name(), s.name(), t.name(), h.name()));
    if let Err(e) = check_arities(lambda, h, s) {
        report.push(Check::from_error("kleisli.arity", "kleisli_law", vec![], e));
        return report;
    }
    for c in check_naturality(lambda, "kleisli.naturality", tuples, budget) {
        report.push(c);
    }
    for a in tuples {
        let scope = vec![format!("A={}", sizes(a))];
        report.push(diagram_check("kleisli.unit", "kleisli_law.unit", scope.clone(), budget, || {
            let lhs = h.map(&s.unit_arrows(a)?)?.then(&lambda.component(a)?)?;
            Ok((lhs, t.unit_arrow(&h.obj(a)?)?))
        }));
        report.push(diagram_check("kleisli.multiplication", "kleisli_law.multiplication", scope, budget, || {
            let lam = lambda.component(a)?;
            let lhs = h.map(&s.mult_arrows(a)?)?.then(&lam)?;
            let rhs = lambda.component(&s.obj(a)?)?.then(&t.fmap(&lam)?)?.then(&t.mult_arrow(&h.obj(a)?)?)?;
            Ok((lhs, rhs))
        }));
    }
    report
}

fn check_arities(lambda: &NatFamily, h: &FunctorHandle, s: &ProductMonad) -> Result<()> {
    s.check_arity(h.arity())?;
    if lambda.arity() != h.arity() || h.outputs() != 1 {
        return Err(Error::ArityMismatch {
            expected: h.arity(),
            found: lambda.arity(),
        });
    }
    Ok(())
}

/// Naturality, unit and multiplication diagrams of an Eilenberg-Moore law
/// `ρ : S∘G ⇒ G∘T`, where `T` lives on the source of `G`.
pub fn is_em_law(rho: &NatFamily, g: &FunctorHandle, s: &MonadInstance, t: &ProductMonad, tuples: &[Vec<FinSet>], budget: Budget) -> LawReport {
    let mut report = LawReport::new(format!(
        "Eilenberg-Moore law {} : {}∘{} ⇒ {}∘{}",
        rho.name(),
        s.name(),
        g.name(),
        g.name(),
        t.name()
    ));
    if let Err(e) = check_arities(rho, g, t) {
        report.push(Check::from_error("em.arity", "em_law", vec![], e));
        return report;
    }
    for c in check_naturality(rho, "em.naturality", tuples, budget) {
        report.push(c);
    }
    for b in tuples {
        let scope = vec![format!("B={}", sizes(b))];
        report.push(diagram_check("em.unit", "em_law.unit", scope.clone(), budget, || {
            let gb = g.obj(b)?;
            let lhs = s.unit_arrow(&gb)?.then(&rho.component(b)?)?;
            Ok((lhs, g.map(&t.unit_arrows(b)?)?))
        }));
        report.push(diagram_check("em.multiplication", "em_law.multiplication", scope, budget, || {
            let gb = g.obj(b)?;
            let r = rho.component(b)?;
            let lhs = s.mult_arrow(&gb)?.then(&r)?;
            let rhs = s.fmap(&r)?.then(&rho.component(&t.obj(b)?)?)?.then(&g.map(&t.mult_arrows(b)?)?)?;
            Ok((lhs, rhs))
        }));
    }
    report
}

/// Inverts an Eilenberg-Moore law componentwise and checks the inverse as a
/// Kleisli law `G∘T ⇒ S∘G`. Refuses when a component on the test tuples is
/// not a bijection.
pub fn em_law_inverse_is_kleisli(
    rho: &NatFamily,
    g: &FunctorHandle,
    s: &MonadInstance,
    t: &ProductMonad,
    tuples: &[Vec<FinSet>],
    budget: Budget,
) -> Result<LawReport> {
    let inverse = rho.inverse(budget);
    for b in tuples {
        inverse.component(b)?;
        inverse.component(&t.obj(b)?)?;
    }
    Ok(is_kleisli_law(&inverse, g, t, s, tuples, budget))
}

/// An `n`-ary Kleisli law `λ : H∘(S1..Sn) ⇒ T∘H`, checked through the
/// product monad and again through the direct n-ary diagrams; the two
/// routes must agree entry by entry.
pub fn nary_kleisli_law_check(
    lambda: &NatFamily,
    h: &FunctorHandle,
    monads: &[MonadInstance],
    t: &MonadInstance,
    tuples: &[Vec<FinSet>],
    budget: Budget,
) -> Result<LawReport> {
    if monads.len() != h.arity() {
        return Err(Error::ArityMismatch {
            expected: h.arity(),
            found: monads.len(),
        });
    }
    let s = product_monad(monads.to_vec())?;
    let via_product = is_kleisli_law(lambda, h, &s, t, tuples, budget);
    let direct = nary_direct(lambda, h, monads, t, tuples, budget);
    let mut report = LawReport::new(format!("{}-ary Kleisli law {}", monads.len(), lambda.name()));
    let mismatch = via_product
        .checks
        .iter()
        .filter(|c| c.name != "kleisli.naturality")
        .zip(&direct.checks)
        .find(|(p, d)| p.verdict.is_pass() != d.verdict.is_pass() || p.scope != d.scope);
    let agree = match mismatch {
        None => Verdict::Pass,
        Some((p, d)) => Verdict::Fail {
            witness: crate::report::Witness::note(format!("{} at {:?}: product route {} but direct route {}", p.name, p.scope, p, d)),
        },
    };
    report.extend(via_product);
    for c in direct.checks {
        report.push(c.prefixed("direct."));
    }
    report.push(Check::new(
        "nary.routes_agree",
        "nary_kleisli_law",
        vec![format!("{} tuples", tuples.len())],
        agree,
    ));
    Ok(report)
}

fn nary_direct(lambda: &NatFamily, h: &FunctorHandle, monads: &[MonadInstance], t: &MonadInstance, tuples: &[Vec<FinSet>], budget: Budget) -> LawReport {
    let mut report = LawReport::new("direct");
    for a in tuples {
        let scope = vec![format!("A={}", sizes(a))];
        report.push(diagram_check("kleisli.unit", "nary_kleisli.unit", scope.clone(), budget, || {
            // H(η, …, η)
            let etas = monads.iter().zip(a).map(|(m, x)| m.unit_arrow(x)).collect::<Result<Vec<_>>>()?;
            Ok((h.map(&etas)?.then(&lambda.component(a)?)?, t.unit_arrow(&h.obj(a)?)?))
        }));
        report.push(diagram_check("kleisli.multiplication", "nary_kleisli.multiplication", scope, budget, || {
            // H(μ, …, μ)
            let mus = monads.iter().zip(a).map(|(m, x)| m.mult_arrow(x)).collect::<Result<Vec<_>>>()?;
            let sa = monads.iter().zip(a).map(|(m, x)| m.obj(x)).collect::<Result<Vec<_>>>()?;
            let lam = lambda.component(a)?;
            let lhs = h.map(&mus)?.then(&lam)?;
            let rhs = lambda.component(&sa)?.then(&t.fmap(&lam)?)?.then(&t.mult_arrow(&h.obj(a)?)?)?;
            Ok((lhs, rhs))
        }));
    }
    report
}
