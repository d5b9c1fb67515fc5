use super::laws::check_monad_laws;
use super::MonadInstance;
use crate::error::{Error, Result};
use crate::finset::{Arrow, Budget, FinSet};
use crate::report::LawReport;

/// The pointwise monad `(T1, .., Tn)` on tuples of finite sets.
#[derive(Clone, Debug)]
pub struct ProductMonad {
    components: Vec<MonadInstance>,
}

pub fn product_monad(components: Vec<MonadInstance>) -> Result<ProductMonad> {
    if components.is_empty() {
        return Err(Error::ArityMismatch { expected: 1, found: 0 });
    }
    Ok(ProductMonad { components })
}

impl ProductMonad {
    pub fn single(t: MonadInstance) -> Self {
        ProductMonad { components: vec![t] }
    }

    pub fn arity(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[MonadInstance] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &MonadInstance {
        &self.components[i]
    }

    pub fn name(&self) -> String {
        if self.arity() == 1 {
            return self.components[0].name();
        }
        let names: Vec<String> = self.components.iter().map(MonadInstance::name).collect();
        format!("product({})", names.join(","))
    }

    pub fn check_arity(&self, n: usize) -> Result<()> {
        if n == self.arity() {
            Ok(())
        } else {
            Err(Error::ArityMismatch {
                expected: self.arity(),
                found: n,
            })
        }
    }

    pub fn obj(&self, objs: &[FinSet]) -> Result<Vec<FinSet>> {
        self.check_arity(objs.len())?;
        self.components.iter().zip(objs).map(|(t, a)| t.obj(a)).collect()
    }

    pub fn fmap(&self, fs: &[Arrow]) -> Result<Vec<Arrow>> {
        self.check_arity(fs.len())?;
        self.components.iter().zip(fs).map(|(t, f)| t.fmap(f)).collect()
    }

    pub fn unit_arrows(&self, objs: &[FinSet]) -> Result<Vec<Arrow>> {
        self.check_arity(objs.len())?;
        self.components.iter().zip(objs).map(|(t, a)| t.unit_arrow(a)).collect()
    }

    pub fn mult_arrows(&self, objs: &[FinSet]) -> Result<Vec<Arrow>> {
        self.check_arity(objs.len())?;
        self.components.iter().zip(objs).map(|(t, a)| t.mult_arrow(a)).collect()
    }

    pub fn same_as(&self, other: &ProductMonad) -> bool {
        self.arity() == other.arity() && self.components.iter().zip(&other.components).all(|(a, b)| a.same_as(b))
    }
}

/// The product monad's laws are the component laws; each check carries
/// the component index in its name.
pub fn check_product_monad_laws(p: &ProductMonad, tuples: &[Vec<FinSet>], budget: Budget) -> LawReport {
    let mut report = LawReport::new(format!("monad laws for {}", p.name()));
    for (i, t) in p.components().iter().enumerate() {
        let mut sets: Vec<FinSet> = Vec::new();
        for tuple in tuples {
            if tuple.len() != p.arity() {
                continue;
            }
            if !sets.contains(&tuple[i]) {
                sets.push(tuple[i].clone());
            }
        }
        for check in check_monad_laws(t, &sets, budget).checks {
            report.push(check.prefixed(&format!("component{i}.")));
        }
    }
    report
}
