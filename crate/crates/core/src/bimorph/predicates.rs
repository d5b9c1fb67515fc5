//! Left λ-morphisms, right ρ-morphisms and bilinearity.

use super::functor::FunctorHandle;
use crate::algebras::Algebra;
use crate::error::{Error, Result};
use crate::finset::{product, product_map, Arrow, Budget, Elem, FinMap, FinSet};
use crate::monads::MonadInstance;
use crate::report::{first_disagreement, Verdict, Witness};
use crate::strength::canonical_strength;

fn expect_set(leg: &str, expected: &FinSet, found: &FinSet) -> Result<()> {
    if expected != found {
        return Err(Error::type_mismatch(
            leg,
            format!("expected a set of size {}, found {}", expected.size(), found.size()),
        ));
    }
    Ok(())
}

fn carriers(algebras: &[Algebra]) -> Vec<FinSet> {
    algebras.iter().map(|a| a.carrier().clone()).collect()
}

fn structures(algebras: &[Algebra]) -> Result<Vec<Arrow>> {
    algebras.iter().map(Algebra::structure).collect()
}

/// Pointwise comparison of two legs given as closures over `dom`.
fn legs_agree(dom: &FinSet, cod: &FinSet, budget: Budget, lhs: impl Fn(Elem) -> Elem, rhs: impl Fn(Elem) -> Elem) -> Result<Verdict> {
    let n = budget.admit("diagram domain", dom.size())?;
    for y in 0..n as Elem {
        let (l, r) = (lhs(y), rhs(y));
        if l != r {
            return Ok(Verdict::Fail {
                witness: Witness::new(y, dom.label(y), cod.label(l), cod.label(r)),
            });
        }
    }
    Ok(Verdict::Pass)
}

/// `β ∘ T(h) ∘ λ = h ∘ H(α)` on `H(S(A))`, where `α` lists the algebras
/// of the (product) monad `S`, `h : H(A) → B` and `λ : H(S(A)) → T(H(A))`.
pub fn is_left_lambda_morphism(h: &FinMap, lambda: &Arrow, functor: &FunctorHandle, alphas: &[Algebra], beta: &Algebra, budget: Budget) -> Result<Verdict> {
    if alphas.len() != functor.arity() {
        return Err(Error::ArityMismatch {
            expected: functor.arity(),
            found: alphas.len(),
        });
    }
    let a = carriers(alphas);
    let ha = functor.obj(&a)?;
    let sa: Vec<FinSet> = alphas.iter().map(|x| x.monad().obj(x.carrier())).collect::<Result<_>>()?;
    let hsa = functor.obj(&sa)?;
    expect_set("h domain (H(A))", &ha, h.dom())?;
    expect_set("h codomain (B)", beta.carrier(), h.cod())?;
    expect_set("λ domain (H(S(A)))", &hsa, lambda.dom())?;
    expect_set("λ codomain (T(H(A)))", &beta.monad().obj(&ha)?, lambda.cod())?;
    let h_alpha = functor.map(&structures(alphas)?)?;
    let k = ha.size();
    legs_agree(
        lambda.dom(),
        beta.carrier(),
        budget,
        |y| beta.eval(k, lambda.apply(y), &|x| h.apply(x)),
        |y| h.apply(h_alpha.apply(y)),
    )
}

/// `G(β) ∘ ρ ∘ S(h) = h ∘ α` on `S(A)`, where `h : A → G(B)` and
/// `ρ : S(G(B)) → G(T(B))`.
pub fn is_right_rho_morphism(h: &FinMap, rho: &Arrow, functor: &FunctorHandle, alpha: &Algebra, betas: &[Algebra], budget: Budget) -> Result<Verdict> {
    if betas.len() != functor.arity() {
        return Err(Error::ArityMismatch {
            expected: functor.arity(),
            found: betas.len(),
        });
    }
    let s = alpha.monad();
    let gb = functor.obj(&carriers(betas))?;
    let tb: Vec<FinSet> = betas.iter().map(|x| x.monad().obj(x.carrier())).collect::<Result<_>>()?;
    expect_set("h domain (A)", alpha.carrier(), h.dom())?;
    expect_set("h codomain (G(B))", &gb, h.cod())?;
    expect_set("ρ domain (S(G(B)))", &s.obj(&gb)?, rho.dom())?;
    expect_set("ρ codomain (G(T(B)))", &functor.obj(&tb)?, rho.cod())?;
    let g_beta = functor.map(&structures(betas)?)?;
    let sh = s.fmap(&h.to_arrow())?;
    legs_agree(
        &s.obj(alpha.carrier())?,
        &gb,
        budget,
        |u| g_beta.apply(rho.apply(sh.apply(u))),
        |u| h.apply(alpha.apply(u)),
    )
}

/// The algebra `(G(B), G(β) ∘ ρ)` for `ρ : S∘G ⇒ G∘T` at `B`.
pub fn em_lift(functor: &FunctorHandle, rho: &Arrow, s: &MonadInstance, betas: &[Algebra], budget: Budget) -> Result<Algebra> {
    let gb = functor.obj(&carriers(betas))?;
    let tb: Vec<FinSet> = betas.iter().map(|x| x.monad().obj(x.carrier())).collect::<Result<_>>()?;
    expect_set("ρ domain (S(G(B)))", &s.obj(&gb)?, rho.dom())?;
    expect_set("ρ codomain (G(T(B)))", &functor.obj(&tb)?, rho.cod())?;
    let structure = rho.then(&functor.map(&structures(betas)?)?)?.tabulate(budget)?;
    Algebra::new(s, &gb, structure, budget)
}

/// `G` applied to a tuple of algebra morphisms.
pub fn em_lift_morphism(functor: &FunctorHandle, hs: &[FinMap], budget: Budget) -> Result<FinMap> {
    let arrows: Vec<Arrow> = hs.iter().map(FinMap::to_arrow).collect();
    functor.map(&arrows)?.tabulate(budget)
}

/// The three bilinearity diagrams for `h : A × B → C` over a strong monad.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bilinearity {
    /// `γ ∘ T(h) ∘ dst = h ∘ (α × β)` on `T(A) × T(B)`.
    pub bilinear: Verdict,
    /// `γ ∘ T(h) ∘ st′ = h ∘ (α × B)` on `T(A) × B`: linear in the first argument.
    pub left: Verdict,
    /// `γ ∘ T(h) ∘ st = h ∘ (A × β)` on `A × T(B)`: linear in the second argument.
    pub right: Verdict,
    /// Set when `dst ≠ dst′` at `(A, B)`; the bilinear verdict still uses `dst`.
    pub warning: Option<String>,
}

impl Bilinearity {
    /// Whether the single diagram agrees with the pair of component diagrams.
    pub fn consistent(&self) -> bool {
        self.bilinear.is_pass() == (self.left.is_pass() && self.right.is_pass())
    }
}

struct BilinearData {
    t: MonadInstance,
    a: FinSet,
    b: FinSet,
}

fn bilinear_data(h: &FinMap, alpha: &Algebra, beta: &Algebra, gamma: &Algebra) -> Result<BilinearData> {
    alpha.ensure_same_monad(beta)?;
    alpha.ensure_same_monad(gamma)?;
    let ab = product(alpha.carrier(), beta.carrier())?.carrier;
    expect_set("h domain (A × B)", &ab, h.dom())?;
    expect_set("h codomain (C)", gamma.carrier(), h.cod())?;
    Ok(BilinearData {
        t: alpha.monad().clone(),
        a: alpha.carrier().clone(),
        b: beta.carrier().clone(),
    })
}

fn component_check(h: &FinMap, gamma: &Algebra, strength: &Arrow, other: &Arrow, k: Elem, budget: Budget) -> Result<Verdict> {
    legs_agree(
        strength.dom(),
        gamma.carrier(),
        budget,
        |y| gamma.eval(k, strength.apply(y), &|x| h.apply(x)),
        |y| h.apply(other.apply(y)),
    )
}

/// Diagram with `dst`.
pub fn is_bilinear(h: &FinMap, alpha: &Algebra, beta: &Algebra, gamma: &Algebra, budget: Budget) -> Result<Verdict> {
    let d = bilinear_data(h, alpha, beta, gamma)?;
    let dst = canonical_strength(&d.t).dst_arrow(&d.a, &d.b)?;
    let side = product_map(&alpha.structure()?, &beta.structure()?)?;
    component_check(h, gamma, &dst, &side, d.a.size() * d.b.size(), budget)
}

/// Diagram with `st′`: `h` is an algebra morphism in its first argument.
pub fn left_component(h: &FinMap, alpha: &Algebra, beta: &Algebra, gamma: &Algebra, budget: Budget) -> Result<Verdict> {
    let d = bilinear_data(h, alpha, beta, gamma)?;
    let st = canonical_strength(&d.t).st_co_arrow(&d.a, &d.b)?;
    let side = product_map(&alpha.structure()?, &Arrow::identity(&d.b))?;
    component_check(h, gamma, &st, &side, d.a.size() * d.b.size(), budget)
}

/// Diagram with `st`: `h` is an algebra morphism in its second argument.
pub fn right_component(h: &FinMap, alpha: &Algebra, beta: &Algebra, gamma: &Algebra, budget: Budget) -> Result<Verdict> {
    let d = bilinear_data(h, alpha, beta, gamma)?;
    let st = canonical_strength(&d.t).st_arrow(&d.a, &d.b)?;
    let side = product_map(&Arrow::identity(&d.a), &beta.structure()?)?;
    component_check(h, gamma, &st, &side, d.a.size() * d.b.size(), budget)
}

/// All three diagrams, plus a warning when the monad is not commutative
/// at `(A, B)`.
pub fn bilinearity(h: &FinMap, alpha: &Algebra, beta: &Algebra, gamma: &Algebra, budget: Budget) -> Result<Bilinearity> {
    let d = bilinear_data(h, alpha, beta, gamma)?;
    let sd = canonical_strength(&d.t);
    let warning = first_disagreement(&sd.dst_arrow(&d.a, &d.b)?, &sd.dst_prime_arrow(&d.a, &d.b)?, budget)?
        .map(|x| format!("{} is not commutative at ({}, {}): dst ≠ dst' at #{x}", d.t.name(), d.a.size(), d.b.size()));
    Ok(Bilinearity {
        bilinear: is_bilinear(h, alpha, beta, gamma, budget)?,
        left: left_component(h, alpha, beta, gamma, budget)?,
        right: right_component(h, alpha, beta, gamma, budget)?,
        warning,
    })
}
