use std::fmt;
use std::sync::Arc;

use super::laws::{for_all_maps, quantified_check};
use super::{FiniteSemiring, MonadInstance, SemimoduleMonad};
use crate::error::{Error, Result};
use crate::finset::{Arrow, Budget, FinMap, FinSet};
use crate::report::{compare_arrows, diagram_check, LawReport};

type Component = dyn Fn(&FinSet) -> Result<Arrow> + Send + Sync;

/// A family `σ_A : S(A) → T(A)`. Being a monad morphism is a property
/// checked by [`check_monad_morphism`], not a precondition.
#[derive(Clone)]
pub struct MonadMorphism {
    name: String,
    source: MonadInstance,
    target: MonadInstance,
    component: Arc<Component>,
}

impl MonadMorphism {
    pub fn new(
        name: impl Into<String>,
        source: MonadInstance,
        target: MonadInstance,
        component: impl Fn(&FinSet) -> Result<Arrow> + Send + Sync + 'static,
    ) -> Self {
        MonadMorphism {
            name: name.into(),
            source,
            target,
            component: Arc::new(component),
        }
    }

    pub fn identity(t: &MonadInstance) -> Self {
        let t2 = t.clone();
        MonadMorphism::new(format!("id({})", t.name()), t.clone(), t.clone(), move |a| Ok(Arrow::identity(&t2.obj(a)?)))
    }

    /// `η : Id ⇒ T`.
    pub fn unit_of(t: &MonadInstance) -> Self {
        let t2 = t.clone();
        MonadMorphism::new(format!("unit({})", t.name()), super::identity_monad(), t.clone(), move |a| t2.unit_arrow(a))
    }

    /// `maybe ⇒ semimodule(S)`: `a ↦ 1·a`, `⊥ ↦ 0`.
    pub fn maybe_to_semimodule(s: FiniteSemiring) -> Self {
        let name = format!("maybe_to({})", s.name());
        let sm = Arc::new(SemimoduleMonad::from_semiring(s.clone()));
        let target = super::semimodule_monad(s);
        let target2 = target.clone();
        MonadMorphism::new(name, super::maybe_monad(), target, move |a| {
            let n = a.size();
            let sm = sm.clone();
            let one = sm.semiring().one();
            Ok(Arrow::new(FinSet::new(n + 1), target2.obj(a)?, move |x| {
                if x < n {
                    sm.scaled_generator(one, x)
                } else {
                    0
                }
            }))
        })
    }

    /// Components given as explicit tables, one per carrier size
    /// `0..tables.len()`.
    pub fn from_tables(name: impl Into<String>, source: MonadInstance, target: MonadInstance, tables: Vec<FinMap>) -> Result<Self> {
        for (n, t) in tables.iter().enumerate() {
            let a = FinSet::new(n as u128);
            if t.dom() != &source.obj(&a)? || t.cod() != &target.obj(&a)? {
                return Err(Error::type_mismatch(
                    format!("component at {n}"),
                    format!("table is {} -> {}", t.dom().size(), t.cod().size()),
                ));
            }
        }
        let tables = Arc::new(tables);
        Ok(MonadMorphism::new(name, source, target, move |a| {
            tables
                .get(a.size() as usize)
                .map(FinMap::to_arrow)
                .ok_or_else(|| Error::Usage(format!("no component given at size {}", a.size())))
        }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &MonadInstance {
        &self.source
    }

    pub fn target(&self) -> &MonadInstance {
        &self.target
    }

    pub fn component_arrow(&self, a: &FinSet) -> Result<Arrow> {
        let c = (self.component)(a)?;
        let (sa, ta) = (self.source.obj(a)?, self.target.obj(a)?);
        if c.dom() != &sa || c.cod() != &ta {
            return Err(Error::type_mismatch(
                format!("{} at {}", self.name, a.size()),
                format!("component is {} -> {}, expected {} -> {}", c.dom().size(), c.cod().size(), sa.size(), ta.size()),
            ));
        }
        Ok(c)
    }

    pub fn component_at(&self, a: &FinSet, budget: Budget) -> Result<FinMap> {
        self.component_arrow(a)?.tabulate(budget)
    }

    /// The same family with every component passed through `f`.
    pub fn map_components(&self, name: impl Into<String>, f: impl Fn(&FinSet, Arrow) -> Result<Arrow> + Send + Sync + 'static) -> Self {
        let inner = self.component.clone();
        MonadMorphism::new(name, self.source.clone(), self.target.clone(), move |a| f(a, inner(a)?))
    }
}

impl fmt::Debug for MonadMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MonadMorphism({}: {} => {})", self.name, self.source.name(), self.target.name())
    }
}

/// Naturality of σ plus compatibility with both units and both
/// multiplications.
pub fn check_monad_morphism(sigma: &MonadMorphism, sets: &[FinSet], budget: Budget) -> LawReport {
    let (s, t) = (sigma.source(), sigma.target());
    let mut report = LawReport::new(format!("monad morphism {}", sigma.name()));
    for a in sets {
        let scope = vec![format!("A={}", a.size())];
        report.push(diagram_check("unit", "morphism.unit", scope.clone(), budget, || {
            Ok((s.unit_arrow(a)?.then(&sigma.component_arrow(a)?)?, t.unit_arrow(a)?))
        }));
        report.push(diagram_check("multiplication", "morphism.multiplication", scope, budget, || {
            let sig = sigma.component_arrow(a)?;
            let lhs = s.mult_arrow(a)?.then(&sig)?;
            let rhs = s.fmap(&sig)?.then(&sigma.component_arrow(&t.obj(a)?)?)?.then(&t.mult_arrow(a)?)?;
            Ok((lhs, rhs))
        }));
    }
    for a in sets {
        for b in sets {
            let scope = vec![format!("A={}", a.size()), format!("B={}", b.size()), "all maps A->B".into()];
            report.push(quantified_check("naturality", "morphism.naturality", scope, || {
                let (sa, sb) = (sigma.component_arrow(a)?, sigma.component_arrow(b)?);
                for_all_maps(a, b, budget, |f| {
                    let f = f.to_arrow();
                    compare_arrows(&sa.then(&t.fmap(&f)?)?, &s.fmap(&f)?.then(&sb)?, budget)
                })
            }));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monads::{semimodule_monad, test_sets};

    #[test]
    fn identity_morphism_passes() {
        let t = semimodule_monad(FiniteSemiring::f2());
        assert!(check_monad_morphism(&MonadMorphism::identity(&t), &test_sets(2), Budget::default()).passed());
        assert!(check_monad_morphism(&MonadMorphism::unit_of(&t), &test_sets(2), Budget::default()).passed());
    }

    #[test]
    fn maybe_into_powerset_passes() {
        let sigma = MonadMorphism::maybe_to_semimodule(FiniteSemiring::boolean());
        let r = check_monad_morphism(&sigma, &test_sets(3), Budget::default());
        assert!(r.passed(), "{r}");
        let table = sigma.component_at(&FinSet::new(2), Budget::default()).unwrap();
        assert_eq!(table.table(), &[1, 2, 0]);
    }

    #[test]
    fn bottom_to_a_singleton_is_caught() {
        let sigma = MonadMorphism::maybe_to_semimodule(FiniteSemiring::boolean());
        let bad = sigma.map_components("corrupted", |a, c| {
            let n = a.size();
            Ok(Arrow::new(
                c.dom().clone(),
                c.cod().clone(),
                move |x| if x == n && n > 0 { 1 } else { c.apply(x) },
            ))
        });
        let r = check_monad_morphism(&bad, &test_sets(2), Budget::default());
        assert!(!r.passed());
        let failing: std::collections::BTreeSet<&str> = r.failures().map(|c| c.name.as_str()).collect();
        assert_eq!(failing, ["multiplication", "naturality"].into_iter().collect());
    }
}
