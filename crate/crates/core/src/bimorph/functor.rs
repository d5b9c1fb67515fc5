//! Functor expressions over finite powers of the category of finite sets.

use std::fmt;

use crate::error::{Error, Result};
use crate::finset::{coproduct, coproduct_map, product, product_map, Arrow, FinSet};
use crate::monads::{MonadInstance, ProductMonad};

#[derive(Clone)]
enum Expr {
    Identity,
    Projection(usize),
    Product,
    Coproduct,
    Monad(MonadInstance),
    /// `outer ∘ inner`
    Compose(Box<FunctorHandle>, Box<FunctorHandle>),
    Tuple(Vec<FunctorHandle>),
}

/// A functor `C^arity → C^outputs`, built from a closed grammar so that it
/// can be applied to any finite set, including freshly built quotients.
#[derive(Clone)]
pub struct FunctorHandle {
    arity: usize,
    outputs: usize,
    expr: Expr,
}

impl FunctorHandle {
    pub fn identity(n: usize) -> Self {
        FunctorHandle {
            arity: n,
            outputs: n,
            expr: Expr::Identity,
        }
    }

    pub fn projection(index: usize, arity: usize) -> Result<Self> {
        if index >= arity {
            return Err(Error::ArityMismatch {
                expected: arity,
                found: index + 1,
            });
        }
        Ok(FunctorHandle {
            arity,
            outputs: 1,
            expr: Expr::Projection(index),
        })
    }

    pub fn product() -> Self {
        FunctorHandle {
            arity: 2,
            outputs: 1,
            expr: Expr::Product,
        }
    }

    pub fn coproduct() -> Self {
        FunctorHandle {
            arity: 2,
            outputs: 1,
            expr: Expr::Coproduct,
        }
    }

    pub fn monad(t: &MonadInstance) -> Self {
        FunctorHandle {
            arity: 1,
            outputs: 1,
            expr: Expr::Monad(t.clone()),
        }
    }

    /// `outer ∘ inner`
    pub fn compose(outer: &FunctorHandle, inner: &FunctorHandle) -> Result<Self> {
        if outer.arity != inner.outputs {
            return Err(Error::ArityMismatch {
                expected: outer.arity,
                found: inner.outputs,
            });
        }
        Ok(FunctorHandle {
            arity: inner.arity,
            outputs: outer.outputs,
            expr: Expr::Compose(Box::new(outer.clone()), Box::new(inner.clone())),
        })
    }

    pub fn tuple(parts: Vec<FunctorHandle>) -> Result<Self> {
        let arity = parts.first().map(|p| p.arity).ok_or(Error::ArityMismatch { expected: 1, found: 0 })?;
        if let Some(p) = parts.iter().find(|p| p.arity != arity) {
            return Err(Error::ArityMismatch {
                expected: arity,
                found: p.arity,
            });
        }
        Ok(FunctorHandle {
            arity,
            outputs: parts.iter().map(|p| p.outputs).sum(),
            expr: Expr::Tuple(parts),
        })
    }

    /// The functor part of a product monad, `(A1..An) ↦ (T1 A1..Tn An)`.
    pub fn of_product_monad(s: &ProductMonad) -> Result<Self> {
        if s.arity() == 1 {
            return Ok(FunctorHandle::monad(s.component(0)));
        }
        let parts = (0..s.arity())
            .map(|i| FunctorHandle::compose(&FunctorHandle::monad(s.component(i)), &FunctorHandle::projection(i, s.arity())?))
            .collect::<Result<Vec<_>>>()?;
        FunctorHandle::tuple(parts)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn outputs(&self) -> usize {
        self.outputs
    }

    pub fn name(&self) -> String {
        match &self.expr {
            Expr::Identity => "Id".into(),
            Expr::Projection(i) => format!("π{i}"),
            Expr::Product => "×".into(),
            Expr::Coproduct => "+".into(),
            Expr::Monad(t) => t.name(),
            Expr::Compose(o, i) => format!("{}∘{}", o.name(), i.name()),
            Expr::Tuple(ps) => {
                let names: Vec<String> = ps.iter().map(FunctorHandle::name).collect();
                format!("⟨{}⟩", names.join(", "))
            }
        }
    }

    fn check(&self, n: usize) -> Result<()> {
        if n == self.arity {
            Ok(())
        } else {
            Err(Error::ArityMismatch {
                expected: self.arity,
                found: n,
            })
        }
    }

    pub fn on_objects(&self, objs: &[FinSet]) -> Result<Vec<FinSet>> {
        self.check(objs.len())?;
        match &self.expr {
            Expr::Identity => Ok(objs.to_vec()),
            Expr::Projection(i) => Ok(vec![objs[*i].clone()]),
            Expr::Product => Ok(vec![product(&objs[0], &objs[1])?.carrier]),
            Expr::Coproduct => Ok(vec![coproduct(&objs[0], &objs[1])?.carrier]),
            Expr::Monad(t) => Ok(vec![t.obj(&objs[0])?]),
            Expr::Compose(o, i) => o.on_objects(&i.on_objects(objs)?),
            Expr::Tuple(ps) => {
                let mut out = Vec::new();
                for p in ps {
                    out.extend(p.on_objects(objs)?);
                }
                Ok(out)
            }
        }
    }

    pub fn on_arrows(&self, fs: &[Arrow]) -> Result<Vec<Arrow>> {
        self.check(fs.len())?;
        match &self.expr {
            Expr::Identity => Ok(fs.to_vec()),
            Expr::Projection(i) => Ok(vec![fs[*i].clone()]),
            Expr::Product => Ok(vec![product_map(&fs[0], &fs[1])?]),
            Expr::Coproduct => Ok(vec![coproduct_map(&fs[0], &fs[1])?]),
            Expr::Monad(t) => Ok(vec![t.fmap(&fs[0])?]),
            Expr::Compose(o, i) => o.on_arrows(&i.on_arrows(fs)?),
            Expr::Tuple(ps) => {
                let mut out = Vec::new();
                for p in ps {
                    out.extend(p.on_arrows(fs)?);
                }
                Ok(out)
            }
        }
    }

    fn single<T>(&self, mut v: Vec<T>) -> Result<T> {
        if v.len() != 1 {
            return Err(Error::ArityMismatch { expected: 1, found: v.len() });
        }
        Ok(v.remove(0))
    }

    /// Object action of a functor with one output.
    pub fn obj(&self, objs: &[FinSet]) -> Result<FinSet> {
        self.single(self.on_objects(objs)?)
    }

    /// Morphism action of a functor with one output.
    pub fn map(&self, fs: &[Arrow]) -> Result<Arrow> {
        self.single(self.on_arrows(fs)?)
    }
}

impl fmt::Debug for FunctorHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} : C^{} → C^{}", self.name(), self.arity, self.outputs)
    }
}

/// All tuples of `arity` sets with sizes `0..=max`, in lexicographic order.
pub fn test_tuples(arity: usize, max: u128) -> Vec<Vec<FinSet>> {
    let mut out = Vec::new();
    crate::finset::for_each_tuple(arity, max + 1, |sizes| {
        out.push(sizes.iter().map(|&n| FinSet::new(n)).collect());
        true
    });
    out
}
