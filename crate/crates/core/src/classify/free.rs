//! Classifying objects of free algebras are free: `W ≅ T(H(A))`.

use super::{classifying_object_with, ClassifyRoute, ClassifyingObject};
use crate::algebras::{check_algebra_morphism, Algebra};
use crate::bimorph::{FunctorHandle, NatFamily};
use crate::error::{Error, Result};
use crate::finset::{compose, Arrow, Budget, Elem, FinMap, FinSet};
use crate::monads::{MonadInstance, ProductMonad};
use crate::report::{compare_arrows, Verdict};

/// The two mutually inverse algebra morphisms between the classifying
/// object of the free algebra on `A` and the free algebra on `H(A)`.
#[derive(Debug, Clone)]
pub struct FreeIso {
    pub bases: Vec<FinSet>,
    pub classifying: ClassifyingObject,
    /// `(T(H(A)), μ)`
    pub free: Algebra,
    /// `W → T(H(A))`
    pub forward: FinMap,
    /// `T(H(A)) → W`
    pub backward: FinMap,
}

fn axiom_fails(axiom: &str, v: Verdict) -> Result<()> {
    match v {
        Verdict::Fail { witness } => Err(Error::KleisliAxiomFails {
            axiom: axiom.into(),
            witness: witness.to_string(),
        }),
        _ => Ok(()),
    }
}

/// Checks the Kleisli axioms of `λ` at `A` and its naturality along `η_A`,
/// then builds both sides and the isomorphism between them.
pub fn free_iso(functor: &FunctorHandle, law: &NatFamily, s: &ProductMonad, t: &MonadInstance, bases: &[FinSet], budget: Budget) -> Result<FreeIso> {
    free_iso_with(functor, law, s, t, bases, ClassifyRoute::Auto, budget)
}

/// As [`free_iso`]; `ClassifyRoute::Coequalizer` builds `W` by congruence
/// closure on `T(H(S(A)))` instead of the split quotient.
pub fn free_iso_with(
    functor: &FunctorHandle,
    law: &NatFamily,
    s: &ProductMonad,
    t: &MonadInstance,
    bases: &[FinSet],
    route: ClassifyRoute,
    budget: Budget,
) -> Result<FreeIso> {
    s.check_arity(bases.len())?;
    let sa = s.obj(bases)?;
    let ha = functor.obj(bases)?;
    let lam = law.component(bases)?;
    // unit: λ ∘ H(η) = η
    let lhs = functor.map(&s.unit_arrows(bases)?)?.then(&lam)?;
    axiom_fails("unit", compare_arrows(&lhs, &t.unit_arrow(&ha)?, budget)?)?;
    // multiplication: λ ∘ H(μ) = μ ∘ T(λ) ∘ λ_{S(A)}
    let lhs = functor.map(&s.mult_arrows(bases)?)?.then(&lam)?;
    let rhs = law.component(&sa)?.then(&t.fmap(&lam)?)?.then(&t.mult_arrow(&ha)?)?;
    axiom_fails("multiplication", compare_arrows(&lhs, &rhs, budget)?)?;
    // naturality along η : A → S(A)
    axiom_fails("naturality at η", law.naturality_at(&s.unit_arrows(bases)?, budget)?)?;

    let alphas: Vec<Algebra> = s.components().iter().zip(bases).map(|(m, b)| Algebra::free_on(m, b)).collect::<Result<_>>()?;
    let co = classifying_object_with(functor, law, &alphas, t, route, budget)?;
    let free = Algebra::free_on(t, &ha)?;
    let forward = co.hat(&lam.tabulate(budget)?, &free, budget)?;
    // generators of T(H(A)) go to u(H(η)(a))
    let h_eta = functor.map(&s.unit_arrows(bases)?)?;
    let u = co.universal().clone();
    let gens: Vec<Elem> = (0..budget.admit("H(A)", ha.size())? as Elem).map(|x| u.apply(h_eta.apply(x))).collect();
    let backward = Arrow::new(free.carrier().clone(), co.result().carrier().clone(), {
        let w = co.result().clone();
        let k = ha.size();
        move |t| w.eval(k, t, &|x| gens[x as usize])
    })
    .tabulate(budget)?;
    for (name, m, from, to) in [("forward", &forward, co.result(), &free), ("backward", &backward, &free, co.result())] {
        if let Verdict::Fail { witness } = check_algebra_morphism(m, from, to, budget)? {
            return Err(Error::NotAMorphism(format!("{name} map: {witness}")));
        }
    }
    if compose(&backward, &forward)? != FinMap::identity(co.result().carrier()) || compose(&forward, &backward)? != FinMap::identity(free.carrier()) {
        return Err(Error::NotInvertible {
            component: "free isomorphism".into(),
            detail: "forward and backward maps are not mutually inverse".into(),
        });
    }
    Ok(FreeIso {
        bases: bases.to_vec(),
        classifying: co,
        free,
        forward,
        backward,
    })
}

/// `φ_B ∘ Ĥ(S(h)) = T(H(h)) ∘ φ_A` for base maps `h_i : A_i → B_i`.
pub fn free_iso_naturality(from: &FreeIso, to: &FreeIso, hs: &[FinMap], budget: Budget) -> Result<Verdict> {
    let co = &from.classifying;
    let s_h: Vec<FinMap> = hs
        .iter()
        .zip(co.base_algebras())
        .map(|(h, a)| a.monad().on_morphism(h, budget))
        .collect::<Result<_>>()?;
    let lifted = co.lift_on_morphisms(&s_h, &to.classifying, budget)?;
    let t = from.free.monad();
    let arrows: Vec<Arrow> = hs.iter().map(FinMap::to_arrow).collect();
    let th = t.fmap(&co.functor().map(&arrows)?)?;
    let lhs = lifted.to_arrow().then(&to.forward.to_arrow())?;
    let rhs = from.forward.to_arrow().then(&th)?;
    compare_arrows(&lhs, &rhs, budget)
}
