//! Liftings induced by laws, composition of bimorphisms, and the monad and
//! algebra axioms read as bimorphism conditions.

use std::fmt;
use std::sync::Arc;

use super::family::{after_monad, before_monad, sizes, NatFamily};
use super::functor::FunctorHandle;
use super::laws::for_each_tuple_map;
use super::predicates::{em_lift, em_lift_morphism, is_left_lambda_morphism};
use crate::algebras::{check_algebra_morphism, check_multiplication_axiom, check_unit_axiom, enumerate_algebra_morphisms, Algebra};
use crate::error::{Error, Result};
use crate::finset::{compose, Arrow, Budget, FinMap, FinSet};
use crate::monads::{identity_monad, MonadInstance, ProductMonad};
use crate::report::{compare_arrows, Check, LawReport, Verdict};

type LiftFn = dyn Fn(&[Arrow], &[FinSet]) -> Result<Arrow> + Send + Sync;

/// A lifting of `H` to Kleisli categories: Kleisli maps `f_i : A_i → S_i(B_i)`
/// go to Kleisli maps `H(A) → T(H(B))`.
#[derive(Clone)]
pub struct KleisliLifting {
    name: String,
    functor: FunctorHandle,
    s: ProductMonad,
    t: MonadInstance,
    action: Arc<LiftFn>,
}

impl KleisliLifting {
    pub fn new(
        name: impl Into<String>,
        functor: FunctorHandle,
        s: ProductMonad,
        t: MonadInstance,
        action: impl Fn(&[Arrow], &[FinSet]) -> Result<Arrow> + Send + Sync + 'static,
    ) -> Result<Self> {
        s.check_arity(functor.arity())?;
        Ok(KleisliLifting {
            name: name.into(),
            functor,
            s,
            t,
            action: Arc::new(action),
        })
    }

    pub fn functor(&self) -> &FunctorHandle {
        &self.functor
    }

    /// The lift of `fs`, where `fs[i] : A_i → S_i(targets[i])`.
    pub fn apply(&self, fs: &[Arrow], targets: &[FinSet]) -> Result<Arrow> {
        let sb = self.s.obj(targets)?;
        for (i, (f, x)) in fs.iter().zip(&sb).enumerate() {
            if f.cod() != x {
                return Err(Error::type_mismatch(
                    format!("Kleisli map {i} codomain"),
                    format!("expected S(B) = {}, found {}", x.size(), f.cod().size()),
                ));
            }
        }
        let a: Vec<FinSet> = fs.iter().map(|f| f.dom().clone()).collect();
        let out = (self.action)(fs, targets)?;
        let (ha, thb) = (self.functor.obj(&a)?, self.t.obj(&self.functor.obj(targets)?)?);
        if out.dom() != &ha || out.cod() != &thb {
            return Err(Error::type_mismatch(
                format!("lift by {}", self.name),
                format!("expected {} -> {}, found {} -> {}", ha.size(), thb.size(), out.dom().size(), out.cod().size()),
            ));
        }
        Ok(out)
    }
}

impl fmt::Debug for KleisliLifting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KleisliLifting({})", self.name)
    }
}

/// `f ↦ λ_B ∘ H(f)`.
pub fn kleisli_lift(functor: &FunctorHandle, lambda: &NatFamily, s: &ProductMonad, t: &MonadInstance) -> Result<KleisliLifting> {
    let (h, lam) = (functor.clone(), lambda.clone());
    KleisliLifting::new(
        format!("lift of {}", lambda.name()),
        functor.clone(),
        s.clone(),
        t.clone(),
        move |fs, targets| h.map(fs)?.then(&lam.component(targets)?),
    )
}

/// The law of a lifting: its value on the Kleisli identity `S(A) → S(A)`.
pub fn extract_law(lifting: &KleisliLifting) -> Result<NatFamily> {
    let l = lifting.clone();
    let source = after_monad(&lifting.functor, &lifting.s)?;
    let target = before_monad(&lifting.t, &lifting.functor)?;
    NatFamily::new(format!("law of {}", lifting.name), source, target, move |a| {
        let ids = l.s.obj(a)?.iter().map(Arrow::identity).collect::<Vec<_>>();
        l.apply(&ids, a)
    })
}

/// `μ ∘ S(g) ∘ f` componentwise.
pub fn kleisli_compose_product(s: &ProductMonad, fs: &[Arrow], gs: &[Arrow], c: &[FinSet]) -> Result<Vec<Arrow>> {
    s.check_arity(fs.len())?;
    (0..fs.len()).map(|i| fs[i].then(&s.component(i).extend(&gs[i], &c[i])?)).collect()
}

/// Identities and composites of Kleisli maps between the test tuples are
/// preserved by the lifting.
pub fn check_kleisli_functoriality(lifting: &KleisliLifting, tuples: &[Vec<FinSet>], budget: Budget) -> LawReport {
    let mut report = LawReport::new(format!("functoriality of {}", lifting.name));
    let (s, t, h) = (&lifting.s, &lifting.t, &lifting.functor);
    for a in tuples {
        let scope = vec![format!("A={}", sizes(a))];
        report.push(crate::report::diagram_check("lift.identity", "kleisli_lift.identity", scope, budget, || {
            Ok((lifting.apply(&s.unit_arrows(a)?, a)?, t.unit_arrow(&h.obj(a)?)?))
        }));
    }
    for a in tuples {
        for b in tuples {
            for c in tuples {
                let scope = vec![format!("A={}", sizes(a)), format!("B={}", sizes(b)), format!("C={}", sizes(c))];
                let mut verdict = Verdict::Pass;
                let outcome = (|| {
                    let sb = s.obj(b)?;
                    let sc = s.obj(c)?;
                    let hc = h.obj(c)?;
                    for_each_tuple_map(a, &sb, budget, |fs| {
                        let lf = lifting.apply(fs, b)?;
                        for_each_tuple_map(b, &sc, budget, |gs| {
                            let lhs = lifting.apply(&kleisli_compose_product(s, fs, gs, c)?, c)?;
                            let rhs = lf.then(&t.extend(&lifting.apply(gs, c)?, &hc)?)?;
                            verdict = compare_arrows(&lhs, &rhs, budget)?;
                            Ok(verdict.is_pass())
                        })?;
                        Ok(verdict.is_pass())
                    })
                })();
                report.push(match outcome {
                    Ok(()) => Check::new("lift.composition", "kleisli_lift.composition", scope, verdict),
                    Err(e) => Check::from_error("lift.composition", "kleisli_lift.composition", scope, e),
                });
            }
        }
    }
    report
}

/// The lift `(G(B), G(β) ∘ ρ_B)` of a tuple of `T`-algebras along an
/// Eilenberg-Moore law.
pub fn em_lift_law(functor: &FunctorHandle, rho: &NatFamily, s: &MonadInstance, betas: &[Algebra], budget: Budget) -> Result<Algebra> {
    let b: Vec<FinSet> = betas.iter().map(|x| x.carrier().clone()).collect();
    em_lift(functor, &rho.component(&b)?, s, betas, budget)
}

/// Every tuple of algebra morphisms between the given algebra tuples lifts
/// to an algebra morphism; identities and composites are preserved.
pub fn check_em_lift_functoriality(
    functor: &FunctorHandle,
    rho: &NatFamily,
    s: &MonadInstance,
    fixtures: &[Vec<Algebra>],
    budget: Budget,
) -> Result<LawReport> {
    let mut report = LawReport::new(format!("functoriality of the lift along {}", rho.name()));
    let lifted: Vec<Algebra> = fixtures.iter().map(|b| em_lift_law(functor, rho, s, b, budget)).collect::<Result<_>>()?;
    let homs = |x: &[Algebra], y: &[Algebra]| -> Result<Vec<Vec<FinMap>>> {
        let per: Vec<Vec<FinMap>> = x.iter().zip(y).map(|(p, q)| enumerate_algebra_morphisms(p, q, budget)).collect::<Result<_>>()?;
        Ok(cartesian(&per))
    };
    for (i, x) in fixtures.iter().enumerate() {
        let scope = vec![format!("β#{i}")];
        let ids: Vec<FinMap> = x.iter().map(|a| FinMap::identity(a.carrier())).collect();
        let g_id = em_lift_morphism(functor, &ids, budget)?;
        let v = if g_id == FinMap::identity(lifted[i].carrier()) {
            Verdict::Pass
        } else {
            Verdict::Fail {
                witness: crate::report::Witness::note("G(id) is not the identity"),
            }
        };
        report.push(Check::new("em_lift.identity", "em_lift.identity", scope, v));
        for (j, y) in fixtures.iter().enumerate() {
            let scope = vec![format!("β#{i}"), format!("β#{j}")];
            let mut verdict = Verdict::Pass;
            for hs in homs(x, y)? {
                let gh = em_lift_morphism(functor, &hs, budget)?;
                verdict = check_algebra_morphism(&gh, &lifted[i], &lifted[j], budget)?;
                if !verdict.is_pass() {
                    break;
                }
                for (k, z) in fixtures.iter().enumerate() {
                    for ks in homs(y, z)? {
                        let composite: Vec<FinMap> = hs.iter().zip(&ks).map(|(h, k)| compose(k, h)).collect::<Result<_>>()?;
                        let lhs = em_lift_morphism(functor, &composite, budget)?;
                        let rhs = compose(&em_lift_morphism(functor, &ks, budget)?, &gh)?;
                        if lhs != rhs {
                            verdict = Verdict::Fail {
                                witness: crate::report::Witness::note(format!("composite through β#{k}")),
                            };
                        }
                    }
                }
                if !verdict.is_pass() {
                    break;
                }
            }
            report.push(Check::new("em_lift.morphisms", "em_lift.morphisms", scope, verdict));
        }
    }
    Ok(report)
}

fn cartesian(per: &[Vec<FinMap>]) -> Vec<Vec<FinMap>> {
    per.iter().fold(vec![Vec::new()], |acc, options| {
        acc.iter()
            .flat_map(|prefix| {
                options.iter().map(move |o| {
                    let mut v = prefix.clone();
                    v.push(o.clone());
                    v
                })
            })
            .collect()
    })
}

/// A map `h : H(A) → B` together with the data it is a left λ-morphism for.
#[derive(Clone, Debug)]
pub struct LeftMorphism {
    pub map: FinMap,
    pub lambda: Arrow,
    pub functor: FunctorHandle,
    pub source: Vec<Algebra>,
    pub target: Algebra,
}

impl LeftMorphism {
    /// Checks the condition; fails with [`Error::NotABimorphism`].
    pub fn new(map: FinMap, lambda: Arrow, functor: FunctorHandle, source: Vec<Algebra>, target: Algebra, budget: Budget) -> Result<Self> {
        let m = LeftMorphism {
            map,
            lambda,
            functor,
            source,
            target,
        };
        match m.check(budget)? {
            Verdict::Pass => Ok(m),
            Verdict::Fail { witness } => Err(Error::NotABimorphism(witness.to_string())),
            Verdict::Skipped { reason } => Err(Error::budget(reason, "unknown", budget.limit())),
        }
    }

    /// An algebra morphism `α → β`, read as a bimorphism along the
    /// identity law.
    pub fn from_algebra_morphism(h: FinMap, alpha: &Algebra, beta: &Algebra, budget: Budget) -> Result<Self> {
        let lambda = Arrow::identity(&alpha.monad().obj(alpha.carrier())?);
        LeftMorphism::new(h, lambda, FunctorHandle::identity(1), vec![alpha.clone()], beta.clone(), budget)
    }

    pub fn check(&self, budget: Budget) -> Result<Verdict> {
        is_left_lambda_morphism(&self.map, &self.lambda, &self.functor, &self.source, &self.target, budget)
    }
}

/// `g ∘ G(h)` for a λ-morphism `h : H(A) → B` and a λ′-morphism
/// `g : G(B) → C`, mediated by `λ′_{H(A)} ∘ G(λ_A)`. The composite is
/// checked before it is returned.
pub fn compose_bimorphisms(first: &LeftMorphism, second: &LeftMorphism, lambda2: &NatFamily, budget: Budget) -> Result<LeftMorphism> {
    let g = &second.functor;
    if g.arity() != 1 || second.source.len() != 1 {
        return Err(Error::ArityMismatch { expected: 1, found: g.arity() });
    }
    first.target.ensure_same_monad(&second.source[0])?;
    if first.target.carrier() != second.source[0].carrier() {
        return Err(Error::CarrierMismatch {
            left: first.target.size(),
            right: second.source[0].size(),
        });
    }
    let a: Vec<FinSet> = first.source.iter().map(|x| x.carrier().clone()).collect();
    let ha = first.functor.obj(&a)?;
    let lambda = g.map(std::slice::from_ref(&first.lambda))?.then(&lambda2.component(&[ha])?)?;
    let map = g.map(&[first.map.to_arrow()])?.then(&second.map.to_arrow())?.tabulate(budget)?;
    let functor = FunctorHandle::compose(g, &first.functor)?;
    LeftMorphism::new(map, lambda, functor, first.source.clone(), second.target.clone(), budget)
}

/// `α^S` is a left λ-morphism from `α^T` to itself, for a distributive
/// law `λ : S∘T ⇒ T∘S` at the shared carrier.
pub fn check_distributive_law_algebra(lambda: &Arrow, alpha_s: &Algebra, alpha_t: &Algebra, budget: Budget) -> Result<Verdict> {
    if alpha_s.carrier() != alpha_t.carrier() {
        return Err(Error::CarrierMismatch {
            left: alpha_s.size(),
            right: alpha_t.size(),
        });
    }
    let h = alpha_s.structure_table(budget)?;
    is_left_lambda_morphism(
        &h,
        lambda,
        &FunctorHandle::monad(alpha_s.monad()),
        std::slice::from_ref(alpha_t),
        alpha_t,
        budget,
    )
}

/// The monad axioms at `A` stated as bimorphisms:
/// `id` is an `η_{T(A)}`-morphism and a `T(η_A)`-morphism from
/// `(T(A), id)` to `(T(A), μ)`, and `μ_A` is a morphism from
/// `(T²(A), μ_{T(A)})` to `(T(A), μ_A)`.
pub fn monad_axiom_bimorphisms(t: &MonadInstance, a: &FinSet, budget: Budget) -> LawReport {
    let mut report = LawReport::new(format!("monad axioms of {} as bimorphisms", t.name()));
    let scope = vec![format!("A={}", a.size())];
    let id = FunctorHandle::identity(1);
    let run = |name: &str, f: &dyn Fn() -> Result<Verdict>| match f() {
        Ok(v) => Check::new(name, name, scope.clone(), v),
        Err(e) => Check::from_error(name, name, scope.clone(), e),
    };
    report.push(run("axioms.unit_outer", &|| {
        let ta = t.obj(a)?;
        let source = Algebra::free_on(&identity_monad(), &ta)?;
        let target = Algebra::free_on(t, a)?;
        is_left_lambda_morphism(&FinMap::identity(&ta), &t.unit_arrow(&ta)?, &id, &[source], &target, budget)
    }));
    report.push(run("axioms.unit_inner", &|| {
        let ta = t.obj(a)?;
        let source = Algebra::free_on(&identity_monad(), &ta)?;
        let target = Algebra::free_on(t, a)?;
        is_left_lambda_morphism(&FinMap::identity(&ta), &t.fmap(&t.unit_arrow(a)?)?, &id, &[source], &target, budget)
    }));
    report.push(run("axioms.multiplication", &|| {
        let ta = t.obj(a)?;
        let source = Algebra::free_on(t, &ta)?;
        let target = Algebra::free_on(t, a)?;
        let mu = t.mult_at(a, budget)?;
        let lambda = Arrow::identity(&t.obj(&t.obj(&ta)?)?);
        is_left_lambda_morphism(&mu, &lambda, &id, &[source], &target, budget)
    }));
    report
}

/// The two algebra axioms of `α` as bimorphism conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomVerdicts {
    pub unit: Verdict,
    pub multiplication: Verdict,
}

fn skipped_on_budget(r: Result<Verdict>) -> Result<Verdict> {
    match r {
        Err(e) if e.is_budget() => Ok(Verdict::Skipped { reason: e.to_string() }),
        other => other,
    }
}

/// Unit axiom: `id_A` is an `η_A`-morphism from `(A, id)` over the
/// identity monad to `α`. Multiplication axiom: `α` is an
/// `id`-morphism from the free algebra `(T(A), μ_A)` to `α`.
pub fn em_axioms_as_bimorphisms(alpha: &Algebra, budget: Budget) -> Result<AxiomVerdicts> {
    let t = alpha.monad();
    let a = alpha.carrier();
    let id = FunctorHandle::identity(1);
    let unit = skipped_on_budget((|| {
        let source = Algebra::free_on(&identity_monad(), a)?;
        is_left_lambda_morphism(&FinMap::identity(a), &t.unit_arrow(a)?, &id, &[source], alpha, budget)
    })())?;
    let multiplication = skipped_on_budget((|| {
        let ta = t.obj(a)?;
        let source = Algebra::free_on(t, a)?;
        let h = alpha.structure_table(budget)?;
        let lambda = Arrow::identity(&t.obj(&ta)?);
        is_left_lambda_morphism(&h, &lambda, &id, &[source], alpha, budget)
    })())?;
    Ok(AxiomVerdicts { unit, multiplication })
}

/// The same two axioms checked directly.
pub fn em_axioms_direct(alpha: &Algebra, budget: Budget) -> Result<AxiomVerdicts> {
    let t = alpha.monad();
    let table = alpha.structure_table(budget)?;
    Ok(AxiomVerdicts {
        unit: check_unit_axiom(t, alpha.carrier(), &table, budget)?.unwrap_or(Verdict::Pass),
        multiplication: check_multiplication_axiom(t, alpha.carrier(), &table, budget)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::{enumerate_algebras, free_algebra};
    use crate::bimorph::family::{dst_law, identity_law, monad_morphism_law};
    use crate::bimorph::functor::test_tuples;
    use crate::bimorph::laws::is_kleisli_law;
    use crate::finset::{all_maps, Elem};
    use crate::monads::{maybe_monad, product_monad, semimodule_monad, writer_monad, FiniteMonoid, FiniteSemiring, Monad, MonadMorphism};

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn kleisli_identity_lifts_to_the_unit() {
        let t = semimodule_monad(FiniteSemiring::f2());
        let s = product_monad(vec![t.clone(), t.clone()]).unwrap();
        let lift = kleisli_lift(&FunctorHandle::product(), &dst_law(&t).unwrap(), &s, &t).unwrap();
        let r = check_kleisli_functoriality(&lift, &test_tuples(2, 1), b());
        assert!(r.passed(), "{r}");
        assert_eq!(r.skipped().count(), 0);
    }

    #[test]
    fn monad_morphism_lift_is_postcomposition() {
        let sigma = MonadMorphism::maybe_to_semimodule(FiniteSemiring::boolean());
        let law = monad_morphism_law(&sigma).unwrap();
        let s = ProductMonad::single(sigma.source().clone());
        let lift = kleisli_lift(&FunctorHandle::identity(1), &law, &s, sigma.target()).unwrap();
        for a in 0..=2 {
            for c in 0..=2 {
                let (a, c) = (FinSet::new(a), FinSet::new(c));
                for f in all_maps(&a, &maybe_monad().obj(&c).unwrap(), b()).unwrap() {
                    let lifted = lift.apply(&[f.to_arrow()], std::slice::from_ref(&c)).unwrap();
                    let post = f.to_arrow().then(&sigma.component_arrow(&c).unwrap()).unwrap();
                    assert!(compare_arrows(&lifted, &post, b()).unwrap().is_pass());
                }
            }
        }
        let r = check_kleisli_functoriality(&lift, &test_tuples(1, 2), b());
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn extracted_law_inverts_the_lift() {
        let t = semimodule_monad(FiniteSemiring::boolean());
        let s = product_monad(vec![t.clone(), t.clone()]).unwrap();
        let law = dst_law(&t).unwrap();
        let back = extract_law(&kleisli_lift(&FunctorHandle::product(), &law, &s, &t).unwrap()).unwrap();
        for a in test_tuples(2, 2) {
            assert_eq!(law.component_at(&a, b()).unwrap(), back.component_at(&a, b()).unwrap());
        }
        let r = is_kleisli_law(&back, &FunctorHandle::product(), &s, &t, &test_tuples(2, 1), b());
        assert!(r.passed());
    }

    #[test]
    fn em_lift_along_a_monad_morphism() {
        // a semilattice becomes the pointed set whose point is the bottom α(∅)
        let sigma = MonadMorphism::maybe_to_semimodule(FiniteSemiring::boolean());
        let law = monad_morphism_law(&sigma).unwrap();
        let id = FunctorHandle::identity(1);
        let t = sigma.target();
        for c in 1..=3 {
            for beta in enumerate_algebras(t, &FinSet::new(c), b()).unwrap() {
                let lifted = em_lift_law(&id, &law, sigma.source(), std::slice::from_ref(&beta), b()).unwrap();
                assert_eq!(lifted.apply(c), beta.apply(0));
                for x in 0..c {
                    assert_eq!(lifted.apply(x), x);
                }
            }
        }
        let fixtures: Vec<Vec<Algebra>> = (1..=3)
            .flat_map(|c| enumerate_algebras(t, &FinSet::new(c), b()).unwrap())
            .take(6)
            .map(|a| vec![a])
            .collect();
        let r = check_em_lift_functoriality(&id, &law, sigma.source(), &fixtures, b()).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn identity_law_lift_is_the_identity() {
        let t = writer_monad(FiniteMonoid::cyclic(2));
        let law = identity_law(&t).unwrap();
        for beta in enumerate_algebras(&t, &FinSet::new(2), b()).unwrap() {
            let lifted = em_lift_law(&FunctorHandle::identity(1), &law, &t, std::slice::from_ref(&beta), b()).unwrap();
            assert_eq!(lifted.structure_table(b()).unwrap(), beta.structure_table(b()).unwrap());
        }
    }

    #[test]
    fn composing_with_algebra_morphisms() {
        let t = semimodule_monad(FiniteSemiring::f2());
        let line = free_algebra(&t, &FinSet::new(1), b()).unwrap();
        let plane = free_algebra(&t, &FinSet::new(2), b()).unwrap();
        let lambda = dst_law(&t).unwrap();
        let mul = FinMap::new(FinSet::new(4), FinSet::new(2), vec![0, 0, 0, 1]).unwrap();
        let m = LeftMorphism::new(
            mul,
            lambda.component(&[FinSet::new(2), FinSet::new(2)]).unwrap(),
            FunctorHandle::product(),
            vec![line.clone(), line.clone()],
            line.clone(),
            b(),
        )
        .unwrap();
        // post-compose with the linear maps F2 → F2²
        let id_law = identity_law(&t).unwrap();
        for k in all_maps(line.carrier(), plane.carrier(), b()).unwrap() {
            let Ok(km) = LeftMorphism::from_algebra_morphism(k, &line, &plane, b()) else {
                continue;
            };
            let c = compose_bimorphisms(&m, &km, &id_law, b()).unwrap();
            assert_eq!(c.map.table(), compose(&km.map, &m.map).unwrap().table());
        }
        // identities compose to the identity
        let idm = LeftMorphism::from_algebra_morphism(FinMap::identity(line.carrier()), &line, &line, b()).unwrap();
        let c = compose_bimorphisms(&idm, &idm, &id_law, b()).unwrap();
        assert_eq!(c.map, FinMap::identity(line.carrier()));
        let bad = FinMap::new(FinSet::new(2), FinSet::new(2), vec![1, 1]).unwrap();
        assert!(matches!(
            LeftMorphism::from_algebra_morphism(bad, &line, &line, b()),
            Err(Error::NotABimorphism(_))
        ));
    }

    #[test]
    fn distributive_compatibility() {
        let id_monad = identity_monad();
        let bool_t = semimodule_monad(FiniteSemiring::boolean());
        for c in 1..=3 {
            let carrier = FinSet::new(c);
            let trivial = Algebra::free_on(&id_monad, &carrier).unwrap();
            // S = T = identity, λ = id
            assert!(check_distributive_law_algebra(&Arrow::identity(&carrier), &trivial, &trivial, b())
                .unwrap()
                .is_pass());
            for alpha_t in enumerate_algebras(&bool_t, &carrier, b()).unwrap() {
                let lambda = Arrow::identity(&bool_t.obj(&carrier).unwrap());
                assert!(check_distributive_law_algebra(&lambda, &trivial, &alpha_t, b()).unwrap().is_pass());
                // a constant away from the bottom breaks the square
                let bottom = alpha_t.apply(0);
                let other = (bottom + 1) % c;
                if c > 1 {
                    let corrupted = Algebra::unchecked(&id_monad, &carrier, FinMap::constant(&carrier, &carrier, other).unwrap()).unwrap();
                    let v = check_distributive_law_algebra(&lambda, &corrupted, &alpha_t, b()).unwrap();
                    assert!(v.is_fail() && v.witness().is_some());
                }
            }
        }
        let a = Algebra::free_on(&id_monad, &FinSet::new(1)).unwrap();
        let c2 = Algebra::free_on(&id_monad, &FinSet::new(2)).unwrap();
        assert!(matches!(
            check_distributive_law_algebra(&Arrow::identity(&FinSet::new(1)), &a, &c2, b()),
            Err(Error::CarrierMismatch { .. })
        ));
    }

    #[derive(Debug)]
    struct Corrupted {
        inner: MonadInstance,
        level: Elem,
        at: Elem,
        to: Elem,
    }

    impl Monad for Corrupted {
        fn name(&self) -> String {
            format!("corrupted {}", self.inner.name())
        }
        fn size_of(&self, n: Elem) -> Option<Elem> {
            self.inner.raw().size_of(n)
        }
        fn fmap(&self, n: Elem, m: Elem, f: &dyn Fn(Elem) -> Elem, t: Elem) -> Elem {
            self.inner.raw().fmap(n, m, f, t)
        }
        fn unit(&self, n: Elem, x: Elem) -> Elem {
            self.inner.raw().unit(n, x)
        }
        fn join(&self, n: Elem, tt: Elem) -> Elem {
            if n == self.level && tt == self.at {
                self.to
            } else {
                self.inner.raw().join(n, tt)
            }
        }
        fn describe(&self, n: Elem, t: Elem, inner: &dyn Fn(Elem) -> String) -> String {
            self.inner.raw().describe(n, t, inner)
        }
    }

    #[test]
    fn monad_axioms_hold_and_break_under_corruption() {
        for t in [maybe_monad(), writer_monad(FiniteMonoid::symmetric3()), semimodule_monad(FiniteSemiring::f2())] {
            for a in 0..=2 {
                let r = monad_axiom_bimorphisms(&t, &FinSet::new(a), b());
                assert!(r.passed(), "{r}");
                assert_eq!(r.skipped().count(), 0);
            }
        }
        // maybe on one point: T(A) = {a, ⊥}, T²(A) = {a, ⊥, ⊥'}
        let corrupt = |level, at, to| {
            MonadInstance::new(Corrupted {
                inner: maybe_monad(),
                level,
                at,
                to,
            })
        };
        let one = FinSet::new(1);
        let r = monad_axiom_bimorphisms(&corrupt(1, 0, 1), &one, b());
        assert!(r.find("axioms.unit_outer").unwrap().fails());
        assert!(r.find("axioms.unit_inner").unwrap().fails());
        let r = monad_axiom_bimorphisms(&corrupt(2, 0, 2), &one, b());
        assert!(r.find("axioms.multiplication").unwrap().fails());
        assert!(r.find("axioms.unit_outer").unwrap().holds());
    }

    #[test]
    fn em_axioms_agree_with_direct_checks() {
        for t in [
            maybe_monad(),
            writer_monad(FiniteMonoid::cyclic(2)),
            semimodule_monad(FiniteSemiring::boolean()),
        ] {
            for c in 1..=2 {
                let carrier = FinSet::new(c);
                let tc = t.obj(&carrier).unwrap();
                for table in all_maps(&tc, &carrier, b()).unwrap() {
                    let a = Algebra::unchecked(&t, &carrier, table).unwrap();
                    let via = em_axioms_as_bimorphisms(&a, b()).unwrap();
                    let direct = em_axioms_direct(&a, b()).unwrap();
                    assert_eq!(via.unit.is_pass(), direct.unit.is_pass());
                    assert_eq!(via.multiplication.is_pass(), direct.multiplication.is_pass());
                }
            }
        }
    }
}
