//! Families of maps indexed by tuples of objects, with naturality checked
//! on demand rather than assumed.

use std::fmt;
use std::sync::Arc;

use super::functor::FunctorHandle;
use crate::error::{Error, Result};
use crate::finset::{coproduct, Arrow, Budget, FinMap, FinSet};
use crate::monads::{FiniteMonoid, MonadInstance, MonadMorphism};
use crate::report::{compare_arrows, Verdict};
use crate::strength::canonical_strength;

type ComponentFn = dyn Fn(&[FinSet]) -> Result<Arrow> + Send + Sync;

/// Components `source(A) → target(A)`, one per tuple of objects `A`.
#[derive(Clone)]
pub struct NatFamily {
    name: String,
    source: FunctorHandle,
    target: FunctorHandle,
    component: Arc<ComponentFn>,
}

impl NatFamily {
    pub fn new(
        name: impl Into<String>,
        source: FunctorHandle,
        target: FunctorHandle,
        component: impl Fn(&[FinSet]) -> Result<Arrow> + Send + Sync + 'static,
    ) -> Result<Self> {
        if source.arity() != target.arity() || source.outputs() != 1 || target.outputs() != 1 {
            return Err(Error::type_mismatch(
                "family",
                format!("source {:?} and target {:?} must share an arity and have one output", source, target),
            ));
        }
        Ok(NatFamily {
            name: name.into(),
            source,
            target,
            component: Arc::new(component),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &FunctorHandle {
        &self.source
    }

    pub fn target(&self) -> &FunctorHandle {
        &self.target
    }

    pub fn arity(&self) -> usize {
        self.source.arity()
    }

    /// The component at `objs`, with its type checked against the functors.
    pub fn component(&self, objs: &[FinSet]) -> Result<Arrow> {
        let c = (self.component)(objs)?;
        let dom = self.source.obj(objs)?;
        let cod = self.target.obj(objs)?;
        if c.dom() != &dom {
            return Err(Error::type_mismatch(
                format!("{} domain", self.name),
                format!("expected {} = {}, found {}", self.source.name(), dom.size(), c.dom().size()),
            ));
        }
        if c.cod() != &cod {
            return Err(Error::type_mismatch(
                format!("{} codomain", self.name),
                format!("expected {} = {}, found {}", self.target.name(), cod.size(), c.cod().size()),
            ));
        }
        Ok(c)
    }

    pub fn component_at(&self, objs: &[FinSet], budget: Budget) -> Result<FinMap> {
        self.component(objs)?.tabulate(budget)
    }

    /// A family that agrees with this one except where `patch` changes it.
    pub fn patched(&self, name: impl Into<String>, patch: impl Fn(&[FinSet], Arrow) -> Result<Arrow> + Send + Sync + 'static) -> Self {
        let inner = self.component.clone();
        NatFamily {
            name: name.into(),
            source: self.source.clone(),
            target: self.target.clone(),
            component: Arc::new(move |objs| patch(objs, inner(objs)?)),
        }
    }

    /// `target(f) ∘ λ_A = λ_B ∘ source(f)` for one tuple of maps `f : A → B`.
    pub fn naturality_at(&self, fs: &[Arrow], budget: Budget) -> Result<Verdict> {
        let a: Vec<FinSet> = fs.iter().map(|f| f.dom().clone()).collect();
        let b: Vec<FinSet> = fs.iter().map(|f| f.cod().clone()).collect();
        let lhs = self.component(&a)?.then(&self.target.map(fs)?)?;
        let rhs = self.source.map(fs)?.then(&self.component(&b)?)?;
        compare_arrows(&lhs, &rhs, budget)
    }

    /// Componentwise inverse; components that are not bijections raise
    /// [`Error::NotInvertible`] when requested.
    pub fn inverse(&self, budget: Budget) -> Self {
        let inner = self.clone();
        NatFamily {
            name: format!("{}⁻¹", self.name),
            source: self.target.clone(),
            target: self.source.clone(),
            component: Arc::new(move |objs| {
                let table = inner.component_at(objs, budget)?;
                let inv = table.inverse().ok_or_else(|| Error::NotInvertible {
                    component: format!("{} at {}", inner.name, sizes(objs)),
                    detail: not_bijective_detail(&table),
                })?;
                Ok(inv.to_arrow())
            }),
        }
    }
}

pub(crate) fn sizes(objs: &[FinSet]) -> String {
    let s: Vec<String> = objs.iter().map(|o| o.size().to_string()).collect();
    format!("({})", s.join(", "))
}

fn not_bijective_detail(m: &FinMap) -> String {
    let t = m.table();
    for (i, &x) in t.iter().enumerate() {
        if let Some(j) = t[..i].iter().position(|&y| y == x) {
            return format!("#{j} and #{i} both map to #{x}");
        }
    }
    match (0..m.cod().size()).find(|y| !t.contains(y)) {
        Some(y) => format!("#{y} is not hit"),
        None => "sizes differ".into(),
    }
}

impl fmt::Debug for NatFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} : {} ⇒ {}", self.name, self.source.name(), self.target.name())
    }
}

/// `H∘S` for a monad on a power of the base category.
pub fn after_monad(h: &FunctorHandle, s: &crate::monads::ProductMonad) -> Result<FunctorHandle> {
    FunctorHandle::compose(h, &FunctorHandle::of_product_monad(s)?)
}

/// `T∘H`
pub fn before_monad(t: &MonadInstance, h: &FunctorHandle) -> Result<FunctorHandle> {
    FunctorHandle::compose(&FunctorHandle::monad(t), h)
}

fn binary_law(name: &str, t: &MonadInstance, h: FunctorHandle, component: impl Fn(&[FinSet]) -> Result<Arrow> + Send + Sync + 'static) -> Result<NatFamily> {
    let s = crate::monads::product_monad(vec![t.clone(), t.clone()])?;
    NatFamily::new(name, after_monad(&h, &s)?, before_monad(t, &h)?, component)
}

/// `dst : T(A) × T(B) → T(A × B)` as a law for the binary product.
pub fn dst_law(t: &MonadInstance) -> Result<NatFamily> {
    let sd = canonical_strength(t);
    binary_law("dst", t, FunctorHandle::product(), move |o| sd.dst_arrow(&o[0], &o[1]))
}

/// `dst′ : T(A) × T(B) → T(A × B)` as a law for the binary product.
pub fn dst_prime_law(t: &MonadInstance) -> Result<NatFamily> {
    let sd = canonical_strength(t);
    binary_law("dst'", t, FunctorHandle::product(), move |o| sd.dst_prime_arrow(&o[0], &o[1]))
}

/// `[T(κ1), T(κ2)] : T(A) + T(B) → T(A + B)`
pub fn coproduct_law(t: &MonadInstance) -> Result<NatFamily> {
    let m = t.clone();
    binary_law("[T(κ1), T(κ2)]", t, FunctorHandle::coproduct(), move |o| {
        let sum = coproduct(&o[0], &o[1])?;
        let inl = m.fmap(&sum.inl())?;
        let inr = m.fmap(&sum.inr())?;
        let dom = coproduct(inl.dom(), inr.dom())?.carrier;
        let split = inl.dom().size();
        Ok(Arrow::new(
            dom,
            inl.cod().clone(),
            move |x| if x < split { inl.apply(x) } else { inr.apply(x - split) },
        ))
    })
}

/// `id : T ⇒ T` along the identity functor.
pub fn identity_law(t: &MonadInstance) -> Result<NatFamily> {
    let m = t.clone();
    NatFamily::new("id", FunctorHandle::monad(t), FunctorHandle::monad(t), move |o| {
        Ok(Arrow::identity(&m.obj(&o[0])?))
    })
}

/// A monad morphism `σ : S ⇒ T` read as a law along the identity functor.
pub fn monad_morphism_law(sigma: &MonadMorphism) -> Result<NatFamily> {
    let s = sigma.clone();
    NatFamily::new(
        sigma.name().to_string(),
        FunctorHandle::monad(sigma.source()),
        FunctorHandle::monad(sigma.target()),
        move |o| s.component_arrow(&o[0]),
    )
}

/// `(m, a) ↦ (m⁻¹, a)` on the writer monad of a commutative group: an
/// invertible law along the identity functor.
pub fn writer_inversion_law(group: &FiniteMonoid) -> Result<NatFamily> {
    if !group.is_commutative() {
        return Err(Error::Usage(format!("{} is not commutative", group.name())));
    }
    let k = group.size();
    let e = group.unit();
    let inverses: Vec<u128> = (0..k)
        .map(|m| {
            (0..k)
                .find(|&n| group.mul(m, n) == e)
                .map(|n| n as u128)
                .ok_or_else(|| Error::Usage(format!("{} has no inverse for element {m}", group.name())))
        })
        .collect::<Result<_>>()?;
    let t = crate::monads::writer_monad(group.clone());
    let m = t.clone();
    NatFamily::new("inverse", FunctorHandle::monad(&t), FunctorHandle::monad(&t), move |o| {
        let n = o[0].size();
        let inv = inverses.clone();
        let ta = m.obj(&o[0])?;
        Ok(Arrow::new(ta.clone(), ta, move |x| inv[(x / n.max(1)) as usize] * n + x % n.max(1)))
    })
}
