//! Finite sets, total maps between them, products, coproducts and
//! exhaustive enumeration of maps.
//!
//! Elements are the indices `0..size`. Labels ride along for display only;
//! two sets of the same size are equal whatever their labels say.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Element index. 128 bits so that intermediate objects such as
/// `T(T(A) × B)` for a four-element semiring stay addressable even when
/// they are far too large to enumerate.
pub type Elem = u128;

/// Sets larger than this never get generated labels.
pub const LABEL_LIMIT: Elem = 1 << 12;

/// Upper bound on the number of elements or maps any single enumeration
/// may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Budget(Elem);

impl Budget {
    pub const DEFAULT: Elem = 1_000_000;

    pub fn new(limit: Elem) -> Self {
        Budget(limit)
    }

    pub fn limit(self) -> Elem {
        self.0
    }

    /// Ok with the size as `usize` when `size` may be enumerated.
    pub fn admit(self, what: &str, size: Elem) -> Result<usize> {
        if size > self.0 || size > usize::MAX as Elem {
            Err(Error::budget(what, size, self.0))
        } else {
            Ok(size as usize)
        }
    }

    pub fn admits(self, size: Elem) -> bool {
        size <= self.0
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget(Self::DEFAULT)
    }
}

#[derive(Clone)]
pub struct FinSet {
    size: Elem,
    labels: Option<Arc<[String]>>,
}

impl FinSet {
    pub fn new(size: Elem) -> Self {
        FinSet { size, labels: None }
    }

    pub fn empty() -> Self {
        FinSet::new(0)
    }

    pub fn unit() -> Self {
        FinSet::new(1)
    }

    pub fn with_labels<S: Into<String>>(labels: Vec<S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::Validation {
                    definition: "set".into(),
                    axiom: "distinct labels".into(),
                    witness: l.clone(),
                });
            }
        }
        Ok(FinSet {
            size: labels.len() as Elem,
            labels: Some(labels.into()),
        })
    }

    /// Attaches labels produced by `f` when the set is small enough.
    pub(crate) fn labelled_by(size: Elem, f: impl Fn(Elem) -> String) -> Self {
        if size > LABEL_LIMIT {
            return FinSet::new(size);
        }
        let labels: Vec<String> = (0..size).map(f).collect();
        FinSet {
            size,
            labels: Some(labels.into()),
        }
    }

    pub fn size(&self) -> Elem {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, x: Elem) -> String {
        match &self.labels {
            Some(l) if (x as usize) < l.len() => l[x as usize].clone(),
            _ => format!("#{x}"),
        }
    }

    pub fn index_of(&self, label: &str) -> Option<Elem> {
        self.labels.as_ref()?.iter().position(|l| l == label).map(|i| i as Elem)
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size
    }
}

impl PartialEq for FinSet {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size
    }
}

impl Eq for FinSet {}

impl Hash for FinSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.size.hash(state);
    }
}

impl fmt::Debug for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinSet({})", self.size)
    }
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.size)
    }
}

/// A total map stored as a table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinMap {
    dom: FinSet,
    cod: FinSet,
    table: Arc<[Elem]>,
}

impl FinMap {
    pub fn new(dom: FinSet, cod: FinSet, table: Vec<Elem>) -> Result<Self> {
        if table.len() as Elem != dom.size() {
            return Err(Error::mismatch("map table", dom.size(), table.len() as Elem));
        }
        if let Some(bad) = table.iter().position(|&y| y >= cod.size()) {
            return Err(Error::Validation {
                definition: "map".into(),
                axiom: "entries below codomain size".into(),
                witness: format!("entry {bad} = {}", table[bad]),
            });
        }
        Ok(FinMap { dom, cod, table: table.into() })
    }

    pub fn identity(a: &FinSet) -> Self {
        FinMap {
            dom: a.clone(),
            cod: a.clone(),
            table: (0..a.size()).collect(),
        }
    }

    pub fn constant(dom: &FinSet, cod: &FinSet, y: Elem) -> Result<Self> {
        FinMap::new(dom.clone(), cod.clone(), vec![y; dom.size() as usize])
    }

    pub fn dom(&self) -> &FinSet {
        &self.dom
    }

    pub fn cod(&self) -> &FinSet {
        &self.cod
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.table[x as usize]
    }

    pub fn to_arrow(&self) -> Arrow {
        let table = self.table.clone();
        Arrow::new(self.dom.clone(), self.cod.clone(), move |x| table[x as usize])
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod.size() as usize];
        self.table.iter().all(|&y| !std::mem::replace(&mut seen[y as usize], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.cod.size() as usize];
        for &y in self.table.iter() {
            seen[y as usize] = true;
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_bijective(&self) -> bool {
        self.dom.size() == self.cod.size() && self.is_injective()
    }

    pub fn inverse(&self) -> Option<FinMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.table.len()];
        for (x, &y) in self.table.iter().enumerate() {
            inv[y as usize] = x as Elem;
        }
        Some(FinMap {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            table: inv.into(),
        })
    }
}

impl fmt::Debug for FinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinMap({} -> {}, {:?})", self.dom.size(), self.cod.size(), &self.table[..])
    }
}

/// g ∘ f
pub fn compose(g: &FinMap, f: &FinMap) -> Result<FinMap> {
    if f.cod != g.dom {
        return Err(Error::mismatch("compose", g.dom.size(), f.cod.size()));
    }
    Ok(FinMap {
        dom: f.dom.clone(),
        cod: g.cod.clone(),
        table: f.table.iter().map(|&x| g.apply(x)).collect(),
    })
}

type Func = dyn Fn(Elem) -> Elem + Send + Sync;

/// A map given by a function rather than a table. Composites of functor
/// actions are built from these and only tabulated when they fit the
/// budget.
#[derive(Clone)]
pub struct Arrow {
    dom: FinSet,
    cod: FinSet,
    func: Arc<Func>,
}

impl Arrow {
    pub fn new(dom: FinSet, cod: FinSet, f: impl Fn(Elem) -> Elem + Send + Sync + 'static) -> Self {
        Arrow { dom, cod, func: Arc::new(f) }
    }

    pub fn identity(a: &FinSet) -> Self {
        Arrow::new(a.clone(), a.clone(), |x| x)
    }

    pub fn dom(&self) -> &FinSet {
        &self.dom
    }

    pub fn cod(&self) -> &FinSet {
        &self.cod
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        (self.func)(x)
    }

    pub fn func(&self) -> &Func {
        &*self.func
    }

    /// `next ∘ self`
    pub fn then(&self, next: &Arrow) -> Result<Arrow> {
        if self.cod != next.dom {
            return Err(Error::mismatch("compose", next.dom.size(), self.cod.size()));
        }
        let (f, g) = (self.func.clone(), next.func.clone());
        Ok(Arrow::new(self.dom.clone(), next.cod.clone(), move |x| g(f(x))))
    }

    pub fn tabulate(&self, budget: Budget) -> Result<FinMap> {
        let n = budget.admit("tabulated map", self.dom.size())?;
        let table: Vec<Elem> = (0..n as Elem).map(|x| self.apply(x)).collect();
        Ok(FinMap {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            table: table.into(),
        })
    }

    pub fn with_cod(&self, cod: FinSet) -> Arrow {
        Arrow {
            dom: self.dom.clone(),
            cod,
            func: self.func.clone(),
        }
    }
}

impl From<&FinMap> for Arrow {
    fn from(m: &FinMap) -> Self {
        m.to_arrow()
    }
}

impl fmt::Debug for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Arrow({} -> {})", self.dom.size(), self.cod.size())
    }
}

pub(crate) fn checked_mul(a: Elem, b: Elem) -> Option<Elem> {
    a.checked_mul(b)
}

pub(crate) fn checked_pow(base: Elem, exp: Elem) -> Option<Elem> {
    if exp > u32::MAX as Elem {
        return match base {
            0 => Some(0),
            1 => Some(1),
            _ => None,
        };
    }
    base.checked_pow(exp as u32)
}

/// A × B with a-major order: `(a, b)` sits at `a·|B| + b`.
#[derive(Clone, Debug)]
pub struct Product {
    pub carrier: FinSet,
    left: FinSet,
    right: FinSet,
}

pub fn product(a: &FinSet, b: &FinSet) -> Result<Product> {
    let size = checked_mul(a.size(), b.size()).ok_or_else(|| Error::unrepresentable(format!("{} x {}", a.size(), b.size()), Elem::MAX))?;
    let carrier = if a.labels().is_some() || b.labels().is_some() {
        let nb = b.size();
        FinSet::labelled_by(size, |x| format!("({},{})", a.label(x / nb), b.label(x % nb)))
    } else {
        FinSet::new(size)
    };
    Ok(Product {
        carrier,
        left: a.clone(),
        right: b.clone(),
    })
}

impl Product {
    #[inline]
    pub fn pair_index(&self, a: Elem, b: Elem) -> Elem {
        a * self.right.size() + b
    }

    #[inline]
    pub fn split(&self, x: Elem) -> (Elem, Elem) {
        let nb = self.right.size();
        (x / nb, x % nb)
    }

    pub fn left(&self) -> &FinSet {
        &self.left
    }

    pub fn right(&self) -> &FinSet {
        &self.right
    }

    pub fn proj1(&self) -> Arrow {
        let nb = self.right.size();
        Arrow::new(self.carrier.clone(), self.left.clone(), move |x| x / nb)
    }

    pub fn proj2(&self) -> Arrow {
        let nb = self.right.size();
        Arrow::new(self.carrier.clone(), self.right.clone(), move |x| x % nb)
    }

    /// ⟨f, g⟩ : C → A × B
    pub fn pair(&self, f: &FinMap, g: &FinMap) -> Result<FinMap> {
        if f.dom() != g.dom() {
            return Err(Error::mismatch("pairing", f.dom().size(), g.dom().size()));
        }
        if f.cod() != &self.left || g.cod() != &self.right {
            return Err(Error::type_mismatch("pairing", "components do not land in the factors"));
        }
        let table = f.table().iter().zip(g.table()).map(|(&a, &b)| self.pair_index(a, b)).collect();
        FinMap::new(f.dom().clone(), self.carrier.clone(), table)
    }
}

/// f × g between two products.
pub fn product_map(f: &Arrow, g: &Arrow) -> Result<Arrow> {
    let src = product(f.dom(), g.dom())?;
    let dst = product(f.cod(), g.cod())?;
    let (f, g) = (f.clone(), g.clone());
    let nb = src.right.size();
    let nd = dst.right.size();
    Ok(Arrow::new(src.carrier.clone(), dst.carrier.clone(), move |x| {
        f.apply(x / nb) * nd + g.apply(x % nb)
    }))
}

/// A + B with the A block first.
#[derive(Clone, Debug)]
pub struct Coproduct {
    pub carrier: FinSet,
    left: FinSet,
    right: FinSet,
}

pub fn coproduct(a: &FinSet, b: &FinSet) -> Result<Coproduct> {
    let size = a.size().checked_add(b.size()).ok_or_else(|| Error::unrepresentable("coproduct", Elem::MAX))?;
    let carrier = if a.labels().is_some() || b.labels().is_some() {
        let na = a.size();
        FinSet::labelled_by(size, |x| {
            if x < na {
                format!("inl {}", a.label(x))
            } else {
                format!("inr {}", b.label(x - na))
            }
        })
    } else {
        FinSet::new(size)
    };
    Ok(Coproduct {
        carrier,
        left: a.clone(),
        right: b.clone(),
    })
}

impl Coproduct {
    pub fn left(&self) -> &FinSet {
        &self.left
    }

    pub fn right(&self) -> &FinSet {
        &self.right
    }

    pub fn inl(&self) -> Arrow {
        Arrow::new(self.left.clone(), self.carrier.clone(), |x| x)
    }

    pub fn inr(&self) -> Arrow {
        let na = self.left.size();
        Arrow::new(self.right.clone(), self.carrier.clone(), move |x| na + x)
    }

    /// Which summand `x` lives in, and its index there.
    pub fn split(&self, x: Elem) -> (usize, Elem) {
        if x < self.left.size() {
            (0, x)
        } else {
            (1, x - self.left.size())
        }
    }

    /// [f, g] : A + B → C
    pub fn copair(&self, f: &FinMap, g: &FinMap) -> Result<FinMap> {
        if f.cod() != g.cod() {
            return Err(Error::mismatch("copairing", f.cod().size(), g.cod().size()));
        }
        if f.dom() != &self.left || g.dom() != &self.right {
            return Err(Error::type_mismatch("copairing", "components do not start at the summands"));
        }
        let table = f.table().iter().chain(g.table()).copied().collect();
        FinMap::new(self.carrier.clone(), f.cod().clone(), table)
    }
}

/// f + g between two coproducts.
pub fn coproduct_map(f: &Arrow, g: &Arrow) -> Result<Arrow> {
    let na = f.dom().size();
    let nc = f.cod().size();
    let src = coproduct(f.dom(), g.dom())?;
    let dst = coproduct(f.cod(), g.cod())?;
    let (f, g) = (f.clone(), g.clone());
    Ok(Arrow::new(
        src.carrier,
        dst.carrier,
        move |x| {
            if x < na {
                f.apply(x)
            } else {
                nc + g.apply(x - na)
            }
        },
    ))
}

/// Number of maps A → B, if it fits in an index.
pub fn maps_count(a: &FinSet, b: &FinSet) -> Option<Elem> {
    checked_pow(b.size(), a.size())
}

/// All maps A → B in lexicographic table order.
pub fn all_maps(a: &FinSet, b: &FinSet, budget: Budget) -> Result<AllMaps> {
    let count = maps_count(a, b).ok_or_else(|| Error::unrepresentable("map enumeration", budget.limit()))?;
    budget.admit(&format!("maps {} -> {}", a.size(), b.size()), count)?;
    let next = if b.size() == 0 && a.size() > 0 {
        None
    } else {
        Some(vec![0; a.size() as usize])
    };
    Ok(AllMaps {
        dom: a.clone(),
        cod: b.clone(),
        next,
    })
}

#[derive(Debug)]
pub struct AllMaps {
    dom: FinSet,
    cod: FinSet,
    next: Option<Vec<Elem>>,
}

impl Iterator for AllMaps {
    type Item = FinMap;

    fn next(&mut self) -> Option<FinMap> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let nb = self.cod.size();
        let mut i = succ.len();
        let mut carried = true;
        while i > 0 && carried {
            i -= 1;
            succ[i] += 1;
            if succ[i] == nb {
                succ[i] = 0;
            } else {
                carried = false;
            }
        }
        if !carried {
            self.next = Some(succ);
        }
        Some(FinMap {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            table: current.into(),
        })
    }
}

/// Odometer over `Vec<Elem>` with per-position radix `base`, used wherever
/// an enumeration is not naturally a set of maps.
pub(crate) fn for_each_tuple(len: usize, base: Elem, mut f: impl FnMut(&[Elem]) -> bool) {
    if base == 0 && len > 0 {
        return;
    }
    let mut t = vec![0; len];
    loop {
        if !f(&t) {
            return;
        }
        let mut i = len;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            t[i] += 1;
            if t[i] < base {
                break;
            }
            t[i] = 0;
        }
    }
}
