//! Finitary monads on finite sets, given by their action on element
//! indices.

mod algebraic;
mod instances;
mod laws;
mod morphism;
mod product;

use std::fmt;
use std::sync::Arc;

pub use algebraic::{all_monoids, FiniteMonoid, FiniteSemiring};
pub use instances::{identity_monad, maybe_monad, semimodule_monad, writer_monad, IdentityMonad, MaybeMonad, SemimoduleMonad, WriterMonad};
pub use laws::{check_monad_laws, test_sets};
pub use morphism::{check_monad_morphism, MonadMorphism};
pub use product::{check_product_monad_laws, product_monad, ProductMonad};

use crate::error::{Error, Result};
use crate::finset::{Arrow, Budget, Elem, FinMap, FinSet};

/// A monad on finite sets. Objects are sizes, elements of `T(n)` are
/// indices `0..size_of(n)`.
///
/// `bind` is the fused form of `μ ∘ T(k)`; implementations override it so
/// that Kleisli extension never has to materialise `T(T(m))`.
pub trait Monad: Send + Sync + fmt::Debug {
    fn name(&self) -> String;

    /// `|T(n)|`, or `None` when it does not fit an index.
    fn size_of(&self, n: Elem) -> Option<Elem>;

    /// `T(f)(t)` for `f : n → m`.
    fn fmap(&self, n: Elem, m: Elem, f: &dyn Fn(Elem) -> Elem, t: Elem) -> Elem;

    /// `η_n(x)`.
    fn unit(&self, n: Elem, x: Elem) -> Elem;

    /// `μ_n(tt)` for `tt ∈ T(T(n))`.
    fn join(&self, n: Elem, tt: Elem) -> Elem;

    /// `μ_m(T(k)(t))` for `t ∈ T(n)` and `k : n → T(m)`.
    fn bind(&self, n: Elem, m: Elem, t: Elem, k: &dyn Fn(Elem) -> Elem) -> Elem {
        let tm = self.size_of(m).expect("bind through an unrepresentable object");
        self.join(m, self.fmap(n, tm, k, t))
    }

    /// Display form of `t ∈ T(n)` given display forms of elements of `n`.
    fn describe(&self, n: Elem, t: Elem, inner: &dyn Fn(Elem) -> String) -> String;

    /// Basic operations of a presentation: every element of `T(n)` is a
    /// composite of these applied to variables. Algebra morphism checks use
    /// them to avoid enumerating `T(carrier)`.
    fn operations(&self) -> Option<Vec<Operation>> {
        None
    }

    /// Basic translations: every unary polynomial of every algebra is a
    /// composite of these, with constants drawn from any generating set.
    /// Congruence closure on large carriers relies on this.
    fn translations(&self) -> Option<Vec<Translation>> {
        None
    }

    /// Checks the algebra axioms through the monad's presentation, given
    /// `α` on `T(c)`. `None` when the monad has no presentation.
    fn presented_algebra_check(&self, _c: Elem, _alpha: &dyn Fn(Elem) -> Elem) -> Option<std::result::Result<(), String>> {
        None
    }

    /// Structure tables of all algebras on `c`, when the monad knows a
    /// faster route than filtering every map `T(c) → c`.
    fn enumerate_algebras(&self, _c: Elem, _budget: Budget) -> Option<Result<Vec<Vec<Elem>>>> {
        None
    }
}

/// An operation of arity `arity`, given as the term `term ∈ T(arity)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Operation {
    pub name: String,
    pub arity: Elem,
    pub term: Elem,
}

/// A unary polynomial `x ↦ term(x, c)` with `term ∈ T(2)`. Variable 0 is
/// the argument; variable 1 is a constant, ranging over generators when
/// `uses_constant` and absent otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Translation {
    pub name: String,
    pub term: Elem,
    pub uses_constant: bool,
}

/// Shared handle to a monad.
#[derive(Clone)]
pub struct MonadInstance(Arc<dyn Monad>);

impl MonadInstance {
    pub fn new(m: impl Monad + 'static) -> Self {
        MonadInstance(Arc::new(m))
    }

    pub fn name(&self) -> String {
        self.0.name()
    }

    pub fn raw(&self) -> &dyn Monad {
        &*self.0
    }

    /// Monads are identified by their canonical names.
    pub fn same_as(&self, other: &MonadInstance) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.name() == other.name()
    }

    pub fn ensure_same(&self, other: &MonadInstance) -> Result<()> {
        if self.same_as(other) {
            Ok(())
        } else {
            Err(Error::MonadMismatch {
                left: self.name(),
                right: other.name(),
            })
        }
    }

    pub fn obj_size(&self, n: Elem) -> Result<Elem> {
        self.0
            .size_of(n)
            .ok_or_else(|| Error::unrepresentable(format!("{}({n})", self.name()), Elem::MAX))
    }

    /// `T(A)` with structured labels when small.
    pub fn on_object(&self, a: &FinSet) -> Result<FinSet> {
        let size = self.obj_size(a.size())?;
        let m = self.0.clone();
        let n = a.size();
        let a = a.clone();
        Ok(FinSet::labelled_by(size, |t| m.describe(n, t, &|x| a.label(x))))
    }

    /// `T(A)` without labels.
    pub fn obj(&self, a: &FinSet) -> Result<FinSet> {
        Ok(FinSet::new(self.obj_size(a.size())?))
    }

    /// `T^k(A)`.
    pub fn power(&self, a: &FinSet, k: usize) -> Result<FinSet> {
        let mut x = a.clone();
        for _ in 0..k {
            x = self.obj(&x)?;
        }
        Ok(x)
    }

    pub fn fmap(&self, f: &Arrow) -> Result<Arrow> {
        let dom = self.obj(f.dom())?;
        let cod = self.obj(f.cod())?;
        let (n, m) = (f.dom().size(), f.cod().size());
        let (monad, f) = (self.0.clone(), f.clone());
        Ok(Arrow::new(dom, cod, move |t| monad.fmap(n, m, f.func(), t)))
    }

    pub fn on_morphism(&self, f: &FinMap, budget: Budget) -> Result<FinMap> {
        self.fmap(&f.to_arrow())?.tabulate(budget)
    }

    pub fn unit_arrow(&self, a: &FinSet) -> Result<Arrow> {
        let cod = self.obj(a)?;
        let (n, monad) = (a.size(), self.0.clone());
        Ok(Arrow::new(a.clone(), cod, move |x| monad.unit(n, x)))
    }

    pub fn unit_at(&self, a: &FinSet, budget: Budget) -> Result<FinMap> {
        self.unit_arrow(a)?.tabulate(budget)
    }

    pub fn mult_arrow(&self, a: &FinSet) -> Result<Arrow> {
        let cod = self.obj(a)?;
        let dom = self.obj(&cod)?;
        let (n, monad) = (a.size(), self.0.clone());
        Ok(Arrow::new(dom, cod, move |tt| monad.join(n, tt)))
    }

    pub fn mult_at(&self, a: &FinSet, budget: Budget) -> Result<FinMap> {
        self.mult_arrow(a)?.tabulate(budget)
    }

    /// Kleisli extension `μ_B ∘ T(k)` of `k : A → T(B)`, evaluated
    /// through `bind`. `b` is the object `B`.
    pub fn extend(&self, k: &Arrow, b: &FinSet) -> Result<Arrow> {
        let tb = self.obj(b)?;
        if k.cod() != &tb {
            return Err(Error::mismatch("Kleisli extension", tb.size(), k.cod().size()));
        }
        let dom = self.obj(k.dom())?;
        let (n, m) = (k.dom().size(), b.size());
        let (monad, k) = (self.0.clone(), k.clone());
        Ok(Arrow::new(dom, tb, move |t| monad.bind(n, m, t, k.func())))
    }

    pub fn describe(&self, a: &FinSet, t: Elem) -> String {
        self.0.describe(a.size(), t, &|x| a.label(x))
    }

    pub fn operations(&self) -> Option<Vec<Operation>> {
        self.0.operations()
    }

    pub fn translations(&self) -> Option<Vec<Translation>> {
        self.0.translations()
    }
}

impl fmt::Debug for MonadInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl fmt::Display for MonadInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}
