//! Classifying objects for left λ-morphisms: the algebra through which
//! every bimorphism out of a tuple of algebras factors, built as a
//! quotient of a free algebra.

use crate::algebras::{check_algebra_morphism, coequalize_with_seeds, enumerate_algebra_morphisms, Algebra};
use crate::bimorph::{coproduct_law, dst_law, em_axioms_direct, is_left_lambda_morphism, FunctorHandle, NatFamily};
use crate::error::{Error, Result};
use crate::finset::{all_maps, compose, Arrow, Budget, Elem, FinMap, FinSet};
use crate::monads::{MonadInstance, ProductMonad};
use crate::report::{compare_arrows, first_disagreement, Verdict};
use crate::strength::canonical_strength;

mod free;

pub use free::{free_iso, free_iso_naturality, free_iso_with, FreeIso};

/// How the quotient is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ClassifyRoute {
    /// Free sources use the split quotient `μ ∘ T(λ)` directly; everything
    /// else goes through the congruence.
    #[default]
    Auto,
    /// Always compute the congruence.
    Coequalizer,
}

/// `(W, ω)` with `q : T(H(A)) → W` and `u = q ∘ η : H(A) → W`.
#[derive(Debug, Clone)]
pub struct ClassifyingObject {
    functor: FunctorHandle,
    law: NatFamily,
    base: Vec<Algebra>,
    lambda: Arrow,
    result: Algebra,
    quotient: FinMap,
    universal: FinMap,
    section: Vec<Elem>,
    split: bool,
    warnings: Vec<String>,
}

impl ClassifyingObject {
    pub fn functor(&self) -> &FunctorHandle {
        &self.functor
    }

    pub fn law(&self) -> &NatFamily {
        &self.law
    }

    pub fn base_algebras(&self) -> &[Algebra] {
        &self.base
    }

    /// `λ_A : H(S(A)) → T(H(A))`.
    pub fn lambda(&self) -> &Arrow {
        &self.lambda
    }

    pub fn result(&self) -> &Algebra {
        &self.result
    }

    /// `q : T(H(A)) → W`.
    pub fn quotient(&self) -> &FinMap {
        &self.quotient
    }

    /// `u : H(A) → W`.
    pub fn universal(&self) -> &FinMap {
        &self.universal
    }

    /// Whether the split quotient of a free source was used.
    pub fn is_split(&self) -> bool {
        self.split
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// `H(A)`.
    pub fn h_of_a(&self) -> &FinSet {
        self.universal.dom()
    }

    /// Whether `h : H(A) → B` is a λ-morphism into `β`.
    pub fn is_bimorphism(&self, h: &FinMap, beta: &Algebra, budget: Budget) -> Result<Verdict> {
        is_left_lambda_morphism(h, &self.lambda, &self.functor, &self.base, beta, budget)
    }

    /// Every λ-morphism `H(A) → B` into `β`, by filtering all maps.
    pub fn bimorphisms(&self, beta: &Algebra, budget: Budget) -> Result<Vec<FinMap>> {
        let mut out = Vec::new();
        for h in all_maps(self.h_of_a(), beta.carrier(), budget)? {
            if self.is_bimorphism(&h, beta, budget)?.is_pass() {
                out.push(h);
            }
        }
        Ok(out)
    }

    /// The algebra morphism `ĥ : W → B` with `ĥ ∘ u = h`, read off a
    /// representative of each class.
    pub fn hat(&self, h: &FinMap, beta: &Algebra, budget: Budget) -> Result<FinMap> {
        if let Verdict::Fail { witness } = self.is_bimorphism(h, beta, budget)? {
            return Err(Error::NotABimorphism(witness.to_string()));
        }
        let k = self.h_of_a().size();
        let table: Vec<Elem> = self.section.iter().map(|&t| beta.eval(k, t, &|x| h.apply(x))).collect();
        let hat = FinMap::new(self.result.carrier().clone(), beta.carrier().clone(), table)?;
        if compose(&hat, &self.universal)? != *h {
            return Err(Error::NotABimorphism("the fill-in does not restrict to h along u".into()));
        }
        if let Verdict::Fail { witness } = check_algebra_morphism(&hat, &self.result, beta, budget)? {
            return Err(Error::NotAMorphism(format!("fill-in: {witness}")));
        }
        Ok(hat)
    }

    /// `k ∘ u` for an algebra morphism `k : W → B`.
    pub fn unhat(&self, k: &FinMap, beta: &Algebra, budget: Budget) -> Result<FinMap> {
        if let Verdict::Fail { witness } = check_algebra_morphism(k, &self.result, beta, budget)? {
            return Err(Error::NotAMorphism(witness.to_string()));
        }
        let h = compose(k, &self.universal)?;
        if let Verdict::Fail { witness } = self.is_bimorphism(&h, beta, budget)? {
            return Err(Error::NotABimorphism(format!("k ∘ u: {witness}")));
        }
        Ok(h)
    }

    /// Exhaustive check of the universal property against one target.
    pub fn verify_universal(&self, gamma: &Algebra, budget: Budget) -> Result<UniversalCheck> {
        let bims = self.bimorphisms(gamma, budget)?;
        let homs = enumerate_algebra_morphisms(&self.result, gamma, budget)?;
        let mut round_trip = true;
        for h in &bims {
            round_trip &= self.unhat(&self.hat(h, gamma, budget)?, gamma, budget)? == *h;
        }
        let mut restricted: Vec<FinMap> = Vec::with_capacity(homs.len());
        for k in &homs {
            let h = self.unhat(k, gamma, budget)?;
            round_trip &= self.hat(&h, gamma, budget)? == *k;
            restricted.push(h);
        }
        let unique = {
            let mut tables: Vec<&[Elem]> = restricted.iter().map(FinMap::table).collect();
            tables.sort();
            tables.windows(2).all(|w| w[0] != w[1])
        };
        Ok(UniversalCheck {
            bimorphisms: bims.len(),
            morphisms: homs.len(),
            round_trip,
            unique,
        })
    }

    /// `Ĥ(f) : W → W′` for algebra morphisms `f_i : α_i → α′_i`, after
    /// checking the naturality square of `λ` at `f`.
    pub fn lift_on_morphisms(&self, fs: &[FinMap], target: &ClassifyingObject, budget: Budget) -> Result<FinMap> {
        if fs.len() != self.base.len() || target.base.len() != self.base.len() {
            return Err(Error::ArityMismatch {
                expected: self.base.len(),
                found: fs.len(),
            });
        }
        for ((f, a), b) in fs.iter().zip(&self.base).zip(&target.base) {
            if let Verdict::Fail { witness } = check_algebra_morphism(f, a, b, budget)? {
                return Err(Error::NotAMorphism(witness.to_string()));
            }
        }
        let arrows: Vec<Arrow> = fs.iter().map(FinMap::to_arrow).collect();
        let s_f: Vec<Arrow> = fs.iter().zip(&self.base).map(|(f, a)| a.monad().fmap(&f.to_arrow())).collect::<Result<_>>()?;
        let t = self.result.monad();
        let lhs = self.functor.map(&s_f)?.then(&target.lambda)?;
        let rhs = self.lambda.then(&t.fmap(&self.functor.map(&arrows)?)?)?;
        if let Verdict::Fail { witness } = compare_arrows(&lhs, &rhs, budget)? {
            return Err(Error::NaturalitySquareFails { witness: witness.to_string() });
        }
        let m = self.functor.map(&arrows)?.then(&target.universal.to_arrow())?.tabulate(budget)?;
        self.hat(&m, &target.result, budget)
    }
}

/// Outcome of [`ClassifyingObject::verify_universal`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UniversalCheck {
    pub bimorphisms: usize,
    pub morphisms: usize,
    /// `hat` and `unhat` invert each other on both sides.
    pub round_trip: bool,
    /// Distinct morphisms out of `W` restrict to distinct bimorphisms.
    pub unique: bool,
}

impl UniversalCheck {
    pub fn holds(&self) -> bool {
        self.bimorphisms == self.morphisms && self.round_trip && self.unique
    }
}

fn check_source(alphas: &[Algebra], budget: Budget) -> Result<()> {
    for a in alphas.iter().filter(|a| a.table().is_some()) {
        let v = em_axioms_direct(a, budget)?;
        for verdict in [v.unit, v.multiplication] {
            if let Verdict::Fail { witness } = verdict {
                return Err(Error::NotAnAlgebra(witness.to_string()));
            }
        }
    }
    Ok(())
}

/// The classifying object of `α` for `λ : H∘S ⇒ T∘H`.
pub fn classifying_object(functor: &FunctorHandle, law: &NatFamily, alphas: &[Algebra], t: &MonadInstance, budget: Budget) -> Result<ClassifyingObject> {
    classifying_object_with(functor, law, alphas, t, ClassifyRoute::Auto, budget)
}

pub fn classifying_object_with(
    functor: &FunctorHandle,
    law: &NatFamily,
    alphas: &[Algebra],
    t: &MonadInstance,
    route: ClassifyRoute,
    budget: Budget,
) -> Result<ClassifyingObject> {
    if alphas.len() != functor.arity() {
        return Err(Error::ArityMismatch {
            expected: functor.arity(),
            found: alphas.len(),
        });
    }
    check_source(alphas, budget)?;
    let a: Vec<FinSet> = alphas.iter().map(|x| x.carrier().clone()).collect();
    let ha = functor.obj(&a)?;
    let lambda = law.component(&a)?;
    if lambda.cod() != &t.obj(&ha)? {
        return Err(Error::type_mismatch(
            "λ codomain (T(H(A)))",
            format!("{} vs {}", lambda.cod().size(), t.obj(&ha)?.size()),
        ));
    }
    let bases: Option<Vec<FinSet>> = alphas.iter().map(|x| x.free_base().cloned()).collect();
    if let (ClassifyRoute::Auto, Some(bases)) = (route, bases) {
        if let Some(co) = split_quotient(functor, law, alphas, t, &bases, &lambda, budget)? {
            return Ok(co);
        }
    }
    let structures: Vec<Arrow> = alphas.iter().map(Algebra::structure).collect::<Result<_>>()?;
    let h_alpha = functor.map(&structures)?;
    let eta = t.unit_arrow(&ha)?;
    let n = budget.admit("H(S(A))", lambda.dom().size())?;
    let seeds: Vec<(Elem, Elem)> = (0..n as Elem).map(|y| (lambda.apply(y), eta.apply(h_alpha.apply(y)))).collect();
    let free = Algebra::free_on(t, &ha)?;
    let (result, quotient) = coequalize_with_seeds(&free, &seeds, budget)?;
    let mut section: Vec<Option<Elem>> = vec![None; budget.admit("W", result.size())?];
    for (x, &c) in quotient.table().iter().enumerate() {
        section[c as usize].get_or_insert(x as Elem);
    }
    let universal = eta.then(&quotient.to_arrow())?.tabulate(budget)?;
    let co = ClassifyingObject {
        functor: functor.clone(),
        law: law.clone(),
        base: alphas.to_vec(),
        lambda,
        result,
        quotient,
        universal,
        section: section.into_iter().map(|s| s.expect("quotient maps are surjective")).collect(),
        split: false,
        warnings: Vec::new(),
    };
    assert_invariants(&co, &free, budget)?;
    Ok(co)
}

fn assert_invariants(co: &ClassifyingObject, free: &Algebra, budget: Budget) -> Result<()> {
    if let Verdict::Fail { witness } = check_algebra_morphism(&co.quotient, free, &co.result, budget)? {
        return Err(Error::NotAMorphism(format!("quotient map: {witness}")));
    }
    if let Verdict::Fail { witness } = co.is_bimorphism(&co.universal, &co.result, budget)? {
        return Err(Error::NotABimorphism(format!("universal map: {witness}")));
    }
    Ok(())
}

/// For free sources `α = (S(A′), μ)`, the quotient is `T(H(A′))` with
/// `q = μ ∘ T(λ_{A′})` split by `T(H(η))`. Returns `None` when `λ` fails
/// the checks that make this valid, so the caller computes the congruence.
fn split_quotient(
    functor: &FunctorHandle,
    law: &NatFamily,
    alphas: &[Algebra],
    t: &MonadInstance,
    bases: &[FinSet],
    lambda: &Arrow,
    budget: Budget,
) -> Result<Option<ClassifyingObject>> {
    let h_base = functor.obj(bases)?;
    let lam_base = law.component(bases)?;
    let q = t.extend(&lam_base, &h_base)?;
    let etas: Vec<Arrow> = alphas.iter().zip(bases).map(|(x, b)| x.monad().unit_arrow(b)).collect::<Result<_>>()?;
    let section = t.fmap(&functor.map(&etas)?)?;
    let result = Algebra::free_on(t, &h_base)?;
    let w = budget.admit("W", result.size())?;
    // q ∘ s = id
    if (0..w as Elem).any(|x| q.apply(section.apply(x)) != x) {
        return Ok(None);
    }
    // q coequalizes the seeds
    let structures: Vec<Arrow> = alphas.iter().map(Algebra::structure).collect::<Result<_>>()?;
    let h_alpha = functor.map(&structures)?;
    let ha = functor.obj(&alphas.iter().map(|x| x.carrier().clone()).collect::<Vec<_>>())?;
    let eta = t.unit_arrow(&ha)?;
    let n = budget.admit("H(S(A))", lambda.dom().size())?;
    if (0..n as Elem).any(|y| q.apply(lambda.apply(y)) != q.apply(eta.apply(h_alpha.apply(y)))) {
        return Ok(None);
    }
    let quotient = q.tabulate(budget)?;
    let universal = eta.then(&q)?.tabulate(budget)?;
    let co = ClassifyingObject {
        functor: functor.clone(),
        law: law.clone(),
        base: alphas.to_vec(),
        lambda: lambda.clone(),
        result,
        quotient,
        universal,
        section: (0..w as Elem).map(|x| section.apply(x)).collect(),
        split: true,
        warnings: Vec::new(),
    };
    let free = Algebra::free_on(t, &ha)?;
    assert_invariants(&co, &free, budget)?;
    Ok(Some(co))
}

/// `α ⊗ β`: the classifying object of bilinear maps out of `A × B`.
pub fn tensor(alpha: &Algebra, beta: &Algebra, budget: Budget) -> Result<ClassifyingObject> {
    tensor_with(alpha, beta, ClassifyRoute::Auto, budget)
}

pub fn tensor_with(alpha: &Algebra, beta: &Algebra, route: ClassifyRoute, budget: Budget) -> Result<ClassifyingObject> {
    alpha.ensure_same_monad(beta)?;
    let t = alpha.monad();
    let law = dst_law(t)?;
    let mut co = classifying_object_with(&FunctorHandle::product(), &law, &[alpha.clone(), beta.clone()], t, route, budget)?;
    let sd = canonical_strength(t);
    let (a, b) = (alpha.carrier(), beta.carrier());
    if let Ok(Some(x)) = sd.dst_arrow(a, b).and_then(|d| first_disagreement(&d, &sd.dst_prime_arrow(a, b)?, budget)) {
        co.warnings
            .push(format!("{} is not commutative at ({}, {}): dst ≠ dst' at #{x}", t.name(), a.size(), b.size()));
    }
    Ok(co)
}

/// `α +̂ β`: the classifying object of `[T(κ1), T(κ2)]`, which is the
/// coproduct of algebras.
pub fn coproduct_lift(alpha: &Algebra, beta: &Algebra, budget: Budget) -> Result<ClassifyingObject> {
    alpha.ensure_same_monad(beta)?;
    let t = alpha.monad();
    classifying_object(&FunctorHandle::coproduct(), &coproduct_law(t)?, &[alpha.clone(), beta.clone()], t, budget)
}

/// Outcome of [`verify_coproduct`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoproductCheck {
    /// `#Hom(α, γ) · #Hom(β, γ)`
    pub pairs: usize,
    /// `#Hom(α +̂ β, γ)`
    pub morphisms: usize,
    /// Each pair has exactly one mediating morphism, and it restricts back
    /// to the pair.
    pub unique: bool,
}

impl CoproductCheck {
    pub fn holds(&self) -> bool {
        self.pairs == self.morphisms && self.unique
    }
}

/// Pairs of morphisms out of the summands against morphisms out of the
/// lifted coproduct.
pub fn verify_coproduct(co: &ClassifyingObject, gamma: &Algebra, budget: Budget) -> Result<CoproductCheck> {
    let [alpha, beta] = co.base_algebras() else {
        return Err(Error::ArityMismatch {
            expected: 2,
            found: co.base_algebras().len(),
        });
    };
    let fs = enumerate_algebra_morphisms(alpha, gamma, budget)?;
    let gs = enumerate_algebra_morphisms(beta, gamma, budget)?;
    let ks = enumerate_algebra_morphisms(co.result(), gamma, budget)?;
    let split = alpha.size();
    let mut mediators = Vec::with_capacity(fs.len() * gs.len());
    let mut unique = true;
    for f in &fs {
        for g in &gs {
            let table: Vec<Elem> = f.table().iter().chain(g.table()).copied().collect();
            let copair = FinMap::new(co.h_of_a().clone(), gamma.carrier().clone(), table)?;
            let k = co.hat(&copair, gamma, budget)?;
            let restricted = compose(&k, co.universal())?;
            unique &= restricted.table()[..split as usize] == *f.table() && restricted.table()[split as usize..] == *g.table();
            unique &= ks
                .iter()
                .filter(|other| compose(other, co.universal()).map(|r| r == copair).unwrap_or(false))
                .count()
                == 1;
            mediators.push(k);
        }
    }
    mediators.sort_by(|x, y| x.table().cmp(y.table()));
    unique &= mediators.windows(2).all(|w| w[0] != w[1]);
    Ok(CoproductCheck {
        pairs: fs.len() * gs.len(),
        morphisms: ks.len(),
        unique,
    })
}

/// The product monad whose algebras are tuples of the given algebras.
pub fn source_monad(alphas: &[Algebra]) -> Result<ProductMonad> {
    crate::monads::product_monad(alphas.iter().map(|a| a.monad().clone()).collect())
}

#[cfg(test)]
mod tests;
