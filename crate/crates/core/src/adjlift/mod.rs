//! Lifting the identity adjunction along a monad morphism `σ : S ⇒ T`.
//!
//! The right functor restricts a `T`-algebra `β` to the `S`-algebra
//! `β ∘ σ_B`; its left adjoint sends an `S`-algebra to the classifying
//! object of the law `σ` along the identity functor. Everything is checked
//! by enumeration on finite fixtures.

use crate::algebras::{check_algebra_morphism, count_algebra_morphisms, enumerate_algebra_morphisms, Algebra};
use crate::bimorph::{em_lift, is_em_law, is_kleisli_law, monad_morphism_law, FunctorHandle, NatFamily};
use crate::classify::{classifying_object, ClassifyingObject};
use crate::error::{Error, Result};
use crate::finset::{compose, Budget, FinMap, FinSet};
use crate::monads::{MonadInstance, MonadMorphism, ProductMonad};
use crate::report::{Check, LawReport, Verdict, Witness};


/// `σ` read both as an Eilenberg-Moore law `S∘Id ⇒ Id∘T` and as a Kleisli
/// law `Id∘S ⇒ T∘Id`. Along the identity the transpose of one is the other.
pub fn transpose_check(sigma: &MonadMorphism, tuples: &[Vec<FinSet>], budget: Budget) -> LawReport {
    let mut report = LawReport::new(format!("transpose of {}", sigma.name()));
    let law = match monad_morphism_law(sigma) {
        Ok(l) => l,
        Err(e) => {
            report.push(Check::from_error("transpose.law", "transpose", vec![], e));
            return report;
        }
    };
    let id = FunctorHandle::identity(1);
    report.extend(is_em_law(
        &law,
        &id,
        sigma.source(),
        &ProductMonad::single(sigma.target().clone()),
        tuples,
        budget,
    ));
    report.extend(is_kleisli_law(
        &law,
        &id,
        &ProductMonad::single(sigma.source().clone()),
        sigma.target(),
        tuples,
        budget,
    ));
    report
}

/// `L̂ ⊣ R̂` between `S`- and `T`-algebras.
#[derive(Debug, Clone)]
pub struct LiftedAdjunction {
    sigma: MonadMorphism,
    law: NatFamily,
}

/// Hom-set counts on both sides of the adjunction at one `(α, β)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomBijection {
    /// `#Hom_S(α, R̂(β))`
    pub right: usize,
    /// `#Hom_T(L̂(α), β)`
    pub left: usize,
    /// every `S`-morphism `α → R̂(β)` was a bimorphism along `σ`
    pub all_bimorphisms: bool,
    /// `h ↦ hat(h)` is injective
    pub injective: bool,
}

impl HomBijection {
    pub fn holds(&self) -> bool {
        self.right == self.left && self.all_bimorphisms && self.injective
    }
}

/// Checks `σ` on sets of size `≤ max_size` and builds the adjunction.
pub fn lift_adjunction(sigma: &MonadMorphism, max_size: u32, budget: Budget) -> Result<LiftedAdjunction> {
    let tuples: Vec<Vec<FinSet>> = (0..=max_size as u128).map(|n| vec![FinSet::new(n)]).collect();
    let report = transpose_check(sigma, &tuples, budget);
    if let Some(c) = report.first_failure() {
        return Err(Error::KleisliAxiomFails {
            axiom: c.name.clone(),
            witness: c.verdict.witness().map(ToString::to_string).unwrap_or_default(),
        });
    }
    Ok(LiftedAdjunction {
        sigma: sigma.clone(),
        law: monad_morphism_law(sigma)?,
    })
}

impl LiftedAdjunction {
    pub fn sigma(&self) -> &MonadMorphism {
        &self.sigma
    }

    pub fn source(&self) -> &MonadInstance {
        self.sigma.source()
    }

    pub fn target(&self) -> &MonadInstance {
        self.sigma.target()
    }

    /// `R̂(β) = (B, β ∘ σ_B)`.
    pub fn right(&self, beta: &Algebra, budget: Budget) -> Result<Algebra> {
        beta.monad().ensure_same(self.target())?;
        let rho = self.sigma.component_arrow(beta.carrier())?;
        em_lift(&FunctorHandle::identity(1), &rho, self.source(), std::slice::from_ref(beta), budget)
    }

    /// `L̂(α)` with its universal bimorphism `α → L̂(α)`.
    pub fn left(&self, alpha: &Algebra, budget: Budget) -> Result<ClassifyingObject> {
        alpha.monad().ensure_same(self.source())?;
        classifying_object(&FunctorHandle::identity(1), &self.law, std::slice::from_ref(alpha), self.target(), budget)
    }

    /// `R̂(f)` is `f` itself.
    pub fn right_on_morphism(&self, f: &FinMap, beta: &Algebra, beta2: &Algebra, budget: Budget) -> Result<FinMap> {
        ensure_morphism("T-algebra morphism", f, beta, beta2, budget)?;
        Ok(f.clone())
    }

    /// `L̂(f) : L̂(α) → L̂(α′)`.
    pub fn left_on_morphism(&self, f: &FinMap, from: &ClassifyingObject, to: &ClassifyingObject, budget: Budget) -> Result<FinMap> {
        from.lift_on_morphisms(std::slice::from_ref(f), to, budget)
    }

    /// `η_α : α → R̂(L̂(α))`, the universal bimorphism.
    pub fn unit(&self, alpha: &Algebra, budget: Budget) -> Result<FinMap> {
        Ok(self.left(alpha, budget)?.universal().clone())
    }

    /// `ε_β : L̂(R̂(β)) → β`, the mediating morphism of `id_B`.
    pub fn counit(&self, beta: &Algebra, budget: Budget) -> Result<FinMap> {
        let rb = self.right(beta, budget)?;
        let co = self.left(&rb, budget)?;
        co.hat(&FinMap::identity(beta.carrier()), beta, budget)
    }

    /// Both sides of `Hom_S(α, R̂(β)) ≅ Hom_T(L̂(α), β)` by enumeration,
    /// with the comparison map `h ↦ hat(h)` checked injective.
    pub fn hom_bijection(&self, alpha: &Algebra, beta: &Algebra, budget: Budget) -> Result<HomBijection> {
        let co = self.left(alpha, budget)?;
        self.hom_bijection_with(&co, beta, budget)
    }

    /// As [`Self::hom_bijection`] with `L̂(α)` already built.
    pub fn hom_bijection_with(&self, co: &ClassifyingObject, beta: &Algebra, budget: Budget) -> Result<HomBijection> {
        let rb = self.right(beta, budget)?;
        let alpha = &co.base_algebras()[0];
        let homs = enumerate_algebra_morphisms(alpha, &rb, budget)?;
        let mut all_bimorphisms = true;
        let mut hats = Vec::with_capacity(homs.len());
        for h in &homs {
            if !co.is_bimorphism(h, beta, budget)?.is_pass() {
                all_bimorphisms = false;
                continue;
            }
            hats.push(co.hat(h, beta, budget)?);
        }
        let distinct = hats.len();
        let mut tables: Vec<&[u128]> = hats.iter().map(FinMap::table).collect();
        tables.sort();
        tables.dedup();
        Ok(HomBijection {
            right: homs.len(),
            left: count_algebra_morphisms(co.result(), beta, budget)?,
            all_bimorphisms,
            injective: tables.len() == distinct,
        })
    }

    /// `hat(g ∘ h) = g ∘ hat(h)` for every `S`-morphism `h : α → R̂(β)` and a
    /// `T`-morphism `g : β → β′`.
    pub fn naturality_in_beta(&self, co: &ClassifyingObject, g: &FinMap, beta: &Algebra, beta2: &Algebra, budget: Budget) -> Result<Verdict> {
        ensure_morphism("T-algebra morphism", g, beta, beta2, budget)?;
        let rb = self.right(beta, budget)?;
        for (i, h) in enumerate_algebra_morphisms(&co.base_algebras()[0], &rb, budget)?.iter().enumerate() {
            let lhs = co.hat(&compose(g, h)?, beta2, budget)?;
            let rhs = compose(g, &co.hat(h, beta, budget)?)?;
            if lhs != rhs {
                return Ok(Verdict::Fail {
                    witness: Witness::new(
                        i as u128,
                        format!("h = {:?}", h.table()),
                        format!("{:?}", lhs.table()),
                        format!("{:?}", rhs.table()),
                    ),
                });
            }
        }
        Ok(Verdict::Pass)
    }

    /// `ε_{L̂α} ∘ L̂(η_α) = id` and `R̂(ε_β) ∘ η_{R̂β} = id`.
    pub fn triangle_identities(&self, alpha: &Algebra, beta: &Algebra, budget: Budget) -> LawReport {
        let mut report = LawReport::new(format!("triangle identities of the lift along {}", self.sigma.name()));
        let left = (|| -> Result<Verdict> {
            let la = self.left(alpha, budget)?;
            let eta = la.universal().clone();
            let rla = self.right(la.result(), budget)?;
            let target = self.left(&rla, budget)?;
            let l_eta = self.left_on_morphism(&eta, &la, &target, budget)?;
            let eps = target.hat(&FinMap::identity(la.result().carrier()), la.result(), budget)?;
            Ok(identity_verdict(&compose(&eps, &l_eta)?))
        })();
        report.push(outcome("triangle.left", format!("|A|={}", alpha.size()), left));
        let right = (|| -> Result<Verdict> {
            let rb = self.right(beta, budget)?;
            let eta = self.unit(&rb, budget)?;
            let eps = self.counit(beta, budget)?;
            Ok(identity_verdict(&compose(&eps, &eta)?))
        })();
        report.push(outcome("triangle.right", format!("|B|={}", beta.size()), right));
        report
    }
}

fn identity_verdict(m: &FinMap) -> Verdict {
    match (0..m.dom().size()).find(|&x| m.apply(x) != x) {
        None => Verdict::Pass,
        Some(x) => Verdict::Fail {
            witness: Witness::new(x, m.dom().label(x), m.cod().label(m.apply(x)), m.dom().label(x)),
        },
    }
}

fn outcome(name: &str, scope: String, r: Result<Verdict>) -> Check {
    match r {
        Ok(v) => Check::new(name, "adjunction.triangle", vec![scope], v),
        Err(e) => Check::from_error(name, "adjunction.triangle", vec![scope], e),
    }
}

fn ensure_morphism(what: &str, f: &FinMap, from: &Algebra, to: &Algebra, budget: Budget) -> Result<()> {
    match check_algebra_morphism(f, from, to, budget)? {
        Verdict::Fail { witness } => Err(Error::NotAMorphism(format!("{what}: {witness}"))),
        _ => Ok(()),
    }
}
