//! Resolved, validated definitions and name lookup.

use std::collections::BTreeMap;
use std::path::Path;

use super::spec::{parse_json, parse_text, AlgebraDef, ComponentDef, FamilyDef, WorkspaceSpec};
use crate::algebras::Algebra;
use crate::bimorph::{coproduct_law, dst_law, dst_prime_law, identity_law, monad_morphism_law, FunctorHandle, NatFamily};
use crate::error::{Error, Result};
use crate::finset::{Budget, Elem, FinMap, FinSet};
use crate::monads::{
    identity_monad, maybe_monad, product_monad, semimodule_monad, writer_monad, FiniteMonoid, FiniteSemiring, MonadInstance, MonadMorphism, ProductMonad,
};

/// A monad expression: a single monad or a product of several.
#[derive(Debug, Clone)]
pub enum MonadValue {
    Single(MonadInstance),
    Product(ProductMonad),
}

impl MonadValue {
    pub fn name(&self) -> String {
        match self {
            MonadValue::Single(t) => t.name(),
            MonadValue::Product(p) => p.name(),
        }
    }

    pub fn single(&self, context: &str) -> Result<&MonadInstance> {
        match self {
            MonadValue::Single(t) => Ok(t),
            MonadValue::Product(p) => Err(Error::Usage(format!("{context} needs a single monad, not the product {}", p.name()))),
        }
    }
}

/// A law `λ : H∘S ⇒ T∘H` together with the functor and monads it is over.
#[derive(Debug, Clone)]
pub struct LawValue {
    pub family: NatFamily,
    pub functor: FunctorHandle,
    pub source: ProductMonad,
    pub target: MonadInstance,
    /// Set when the law comes from a monad morphism.
    pub morphism: Option<MonadMorphism>,
}

#[derive(Debug, Clone, Default)]
pub struct Workspace {
    pub budget: Budget,
    semirings: BTreeMap<String, FiniteSemiring>,
    monoids: BTreeMap<String, FiniteMonoid>,
    sets: BTreeMap<String, FinSet>,
    monads: BTreeMap<String, MonadValue>,
    maps: BTreeMap<String, FinMap>,
    algebras: BTreeMap<String, Algebra>,
    families: BTreeMap<String, LawValue>,
}

fn validation(definition: &str, axiom: impl Into<String>, witness: impl Into<String>) -> Error {
    Error::Validation {
        definition: definition.into(),
        axiom: axiom.into(),
        witness: witness.into(),
    }
}

fn carrier_of(definition: &str, elements: &Option<Vec<String>>, size: Option<usize>) -> Result<FinSet> {
    match (elements, size) {
        (Some(e), Some(n)) if e.len() != n => Err(validation(
            definition,
            "size matches the element list",
            format!("{} elements, size {n}", e.len()),
        )),
        (Some(e), _) => FinSet::with_labels(e.clone()).map_err(|_| validation(definition, "distinct element labels", format!("{e:?}"))),
        (None, Some(n)) => Ok(FinSet::new(n as Elem)),
        (None, None) => Err(validation(definition, "has elements or a size", "neither given")),
    }
}

/// Splits `name(arg, arg(..), ..)` at top-level commas.
fn call(expr: &str) -> Result<(&str, Vec<&str>)> {
    let expr = expr.trim();
    let Some(open) = expr.find('(') else {
        return Ok((expr, vec![]));
    };
    let inner = expr[open + 1..]
        .strip_suffix(')')
        .ok_or_else(|| Error::Usage(format!("unbalanced parentheses in `{expr}`")))?;
    let mut args = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                args.push(inner[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(Error::Usage(format!("unbalanced parentheses in `{expr}`")));
        }
    }
    if depth != 0 {
        return Err(Error::Usage(format!("unbalanced parentheses in `{expr}`")));
    }
    if !inner.trim().is_empty() {
        args.push(inner[start..].trim());
    }
    Ok((expr[..open].trim(), args))
}

fn unknown(kind: &str, name: &str) -> Error {
    Error::Unknown {
        kind: kind.into(),
        name: name.into(),
    }
}

impl Workspace {
    pub fn empty(budget: Budget) -> Self {
        Workspace {
            budget,
            ..Workspace::default()
        }
    }

    /// Reads `.json` files as JSON and anything else as the text format,
    /// then validates the merged definitions in dependency order.
    pub fn load(paths: &[impl AsRef<Path>], budget: Budget) -> Result<Self> {
        let mut spec = WorkspaceSpec::default();
        for path in paths {
            let path = path.as_ref();
            let shown = path.display().to_string();
            let text = std::fs::read_to_string(path).map_err(|e| Error::Usage(format!("cannot read {shown}: {e}")))?;
            let part = if path.extension().is_some_and(|e| e == "json") {
                parse_json(&shown, &text)?
            } else {
                parse_text(&shown, &text)?
            };
            spec.merge(part);
        }
        Workspace::from_spec(&spec, budget)
    }

    pub fn from_spec(spec: &WorkspaceSpec, budget: Budget) -> Result<Self> {
        let mut ws = Workspace::empty(budget);
        for d in &spec.semirings {
            let carrier = carrier_of(&d.name, &d.elements, d.size)?;
            let s = FiniteSemiring::new(d.name.clone(), carrier, d.add.clone(), d.mul.clone(), d.zero, d.one)?;
            ws.insert_unique("semiring", &d.name, |w| &mut w.semirings, s)?;
        }
        for d in &spec.monoids {
            let carrier = carrier_of(&d.name, &d.elements, d.size)?;
            let m = FiniteMonoid::new(d.name.clone(), carrier, d.op.clone(), d.unit)?;
            ws.insert_unique("monoid", &d.name, |w| &mut w.monoids, m)?;
        }
        for d in &spec.sets {
            let set = carrier_of(&d.name, &d.elements, d.size.map(|n| n as usize))?;
            ws.insert_unique("set", &d.name, |w| &mut w.sets, set)?;
        }
        for d in &spec.monads {
            let m = ws.monad(&d.expr).map_err(|e| validation(&d.name, "monad expression resolves", e.to_string()))?;
            ws.insert_unique("monad", &d.name, |w| &mut w.monads, m)?;
        }
        for d in &spec.maps {
            let from = ws.set(&d.from)?;
            let to = ws.set(&d.to)?;
            let table = d
                .table
                .iter()
                .map(|w| {
                    w.parse::<Elem>()
                        .ok()
                        .or_else(|| to.index_of(w))
                        .ok_or_else(|| validation(&d.name, "entries are codomain elements", w.clone()))
                })
                .collect::<Result<Vec<_>>>()?;
            let f = FinMap::new(from, to, table).map_err(|e| validation(&d.name, "table is a function", e.to_string()))?;
            ws.insert_unique("map", &d.name, |w| &mut w.maps, f)?;
        }
        for d in &spec.algebras {
            let a = ws.algebra_def(d)?;
            ws.insert_unique("algebra", &d.name, |w| &mut w.algebras, a)?;
        }
        for d in &spec.families {
            let f = ws.family_def(d)?;
            ws.insert_unique("family", &d.name, |w| &mut w.families, f)?;
        }
        Ok(ws)
    }

    fn insert_unique<T>(&mut self, kind: &str, name: &str, table: impl Fn(&mut Self) -> &mut BTreeMap<String, T>, value: T) -> Result<()> {
        if table(self).insert(name.to_string(), value).is_some() {
            return Err(validation(name, format!("{kind} names are unique"), name));
        }
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.semirings.is_empty()
            && self.monoids.is_empty()
            && self.sets.is_empty()
            && self.monads.is_empty()
            && self.maps.is_empty()
            && self.algebras.is_empty()
            && self.families.is_empty()
    }

    /// Counts per definition kind, in a fixed order.
    pub fn summary(&self) -> Vec<(&'static str, usize)> {
        vec![
            ("semirings", self.semirings.len()),
            ("monoids", self.monoids.len()),
            ("sets", self.sets.len()),
            ("monads", self.monads.len()),
            ("maps", self.maps.len()),
            ("algebras", self.algebras.len()),
            ("families", self.families.len()),
        ]
    }

    pub fn semiring(&self, name: &str) -> Result<FiniteSemiring> {
        self.semirings
            .get(name)
            .cloned()
            .or_else(|| FiniteSemiring::builtin(name))
            .ok_or_else(|| unknown("semiring", name))
    }

    pub fn monoid(&self, name: &str) -> Result<FiniteMonoid> {
        self.monoids
            .get(name)
            .cloned()
            .or_else(|| FiniteMonoid::builtin(name))
            .ok_or_else(|| unknown("monoid", name))
    }

    /// A set name or a size.
    pub fn set(&self, name: &str) -> Result<FinSet> {
        if let Ok(n) = name.parse::<Elem>() {
            return Ok(FinSet::new(n));
        }
        self.sets.get(name).cloned().ok_or_else(|| unknown("set", name))
    }

    /// `identity`, `maybe`, `writer(M)`, `semimodule(S)`,
    /// `product(E, ..)` or a named monad.
    pub fn monad(&self, expr: &str) -> Result<MonadValue> {
        let (head, args) = call(expr)?;
        let arity = |n: usize| {
            if args.len() == n {
                Ok(())
            } else {
                Err(Error::Usage(format!("`{head}` takes {n} argument(s), found {}", args.len())))
            }
        };
        Ok(match head {
            "identity" | "id" => {
                arity(0)?;
                MonadValue::Single(identity_monad())
            }
            "maybe" => {
                arity(0)?;
                MonadValue::Single(maybe_monad())
            }
            "writer" => {
                arity(1)?;
                MonadValue::Single(writer_monad(self.monoid(args[0])?))
            }
            "semimodule" => {
                arity(1)?;
                MonadValue::Single(semimodule_monad(self.semiring(args[0])?))
            }
            "product" => {
                if args.is_empty() {
                    return Err(Error::Usage("`product` needs at least one factor".into()));
                }
                let parts = args
                    .iter()
                    .map(|a| self.monad(a)?.single("a product factor").cloned())
                    .collect::<Result<Vec<_>>>()?;
                MonadValue::Product(product_monad(parts)?)
            }
            name if args.is_empty() => self.monads.get(name).cloned().ok_or_else(|| unknown("monad", name))?,
            other => return Err(unknown("monad constructor", other)),
        })
    }

    pub fn single_monad(&self, expr: &str) -> Result<MonadInstance> {
        self.monad(expr)?.single(expr).cloned()
    }

    pub fn map(&self, name: &str) -> Result<FinMap> {
        self.maps.get(name).cloned().ok_or_else(|| unknown("map", name))
    }

    /// A named algebra, or `free(<set>)` over `t`.
    pub fn algebra(&self, name: &str, t: Option<&MonadInstance>) -> Result<Algebra> {
        if let (Some(t), Ok(("free", args))) = (t, call(name)) {
            if args.len() != 1 {
                return Err(Error::Usage("`free` takes one set".into()));
            }
            return Algebra::free_on(t, &self.set(args[0])?);
        }
        let a = self.algebras.get(name).cloned().ok_or_else(|| unknown("algebra", name))?;
        if let Some(t) = t {
            a.monad().ensure_same(t)?;
        }
        Ok(a)
    }

    /// Every monad morphism defined in the workspace, by name.
    pub fn morphisms(&self) -> Vec<MonadMorphism> {
        self.families.values().filter_map(|f| f.morphism.clone()).collect()
    }

    pub fn family(&self, name: &str) -> Result<LawValue> {
        self.families.get(name).cloned().ok_or_else(|| unknown("family", name))
    }

    fn algebra_def(&self, d: &AlgebraDef) -> Result<Algebra> {
        let t = self.single_monad(&d.monad).map_err(|e| validation(&d.name, "monad resolves", e.to_string()))?;
        match (&d.free, &d.carrier, &d.structure) {
            (Some(base), None, None) => Algebra::free_on(&t, &self.set(base)?),
            (None, Some(carrier), Some(table)) => {
                let carrier = self.set(carrier)?;
                let tc = t.obj(&carrier)?;
                let table: Vec<Elem> = table.iter().map(|&x| x as Elem).collect();
                if table.len() as Elem != tc.size() {
                    return Err(validation(
                        &d.name,
                        format!("structure has one entry per element of T(carrier) = {}", tc.size()),
                        format!("{} entries", table.len()),
                    ));
                }
                let alpha = FinMap::new(tc, carrier.clone(), table).map_err(|e| validation(&d.name, "structure lands in the carrier", e.to_string()))?;
                Algebra::new(&t, &carrier, alpha, self.budget).map_err(|e| match e {
                    Error::NotAnAlgebra(w) => validation(&d.name, "algebra axioms", w),
                    other => other,
                })
            }
            _ => Err(validation(&d.name, "either `free` or `carrier` with `structure`", "both or neither given")),
        }
    }

    fn family_def(&self, d: &FamilyDef) -> Result<LawValue> {
        let name = &d.name;
        let mut law = match (&d.law, &d.source, &d.target) {
            (Some(kind), None, None) => {
                let monad = d.monad.as_deref().ok_or_else(|| validation(name, "a law names its `monad`", "missing"))?;
                let t = self.single_monad(monad)?;
                builtin_law(name, kind, &t)?
            }
            (None, Some(source), Some(target)) => {
                let (s, t) = (self.single_monad(source)?, self.single_monad(target)?);
                let sigma = match (&d.builtin, d.components.is_empty()) {
                    (Some(b), true) => self.builtin_morphism(name, b, &s, &t, target)?,
                    (None, false) => morphism_from_tables(name, &s, &t, &d.components)?,
                    _ => {
                        return Err(validation(
                            name,
                            "a morphism has either `builtin` or `component` tables",
                            "both or neither given",
                        ))
                    }
                };
                LawValue {
                    family: monad_morphism_law(&sigma)?,
                    functor: FunctorHandle::identity(1),
                    source: ProductMonad::single(s),
                    target: t,
                    morphism: Some(sigma),
                }
            }
            _ => return Err(validation(name, "a family is a `law` or a `morphism`", "neither or both given")),
        };
        if !d.overrides.is_empty() {
            law = apply_overrides(name, law, &d.overrides, self.budget)?;
        }
        Ok(law)
    }
}

fn builtin_law(name: &str, kind: &str, t: &MonadInstance) -> Result<LawValue> {
    let pair = || product_monad(vec![t.clone(), t.clone()]);
    let (family, functor, source) = match kind {
        "dst" => (dst_law(t)?, FunctorHandle::product(), pair()?),
        "dst'" | "dst_prime" => (dst_prime_law(t)?, FunctorHandle::product(), pair()?),
        "coproduct" => (coproduct_law(t)?, FunctorHandle::coproduct(), pair()?),
        "identity" => (identity_law(t)?, FunctorHandle::identity(1), ProductMonad::single(t.clone())),
        other => return Err(validation(name, "known law (dst, dst', coproduct, identity)", other)),
    };
    Ok(LawValue {
        family,
        functor,
        source,
        target: t.clone(),
        morphism: None,
    })
}

impl Workspace {
    fn builtin_morphism(&self, name: &str, kind: &str, s: &MonadInstance, t: &MonadInstance, target: &str) -> Result<MonadMorphism> {
        let sigma = match kind {
            "identity" => {
                s.ensure_same(t)?;
                MonadMorphism::identity(t)
            }
            "unit" => MonadMorphism::unit_of(t),
            "maybe_to" => match call(target)? {
                ("semimodule", args) if args.len() == 1 => MonadMorphism::maybe_to_semimodule(self.semiring(args[0])?),
                _ => return Err(validation(name, "`maybe_to` targets `semimodule(S)`", target)),
            },
            other => return Err(validation(name, "known morphism (identity, unit, maybe_to)", other)),
        };
        if !sigma.source().same_as(s) || !sigma.target().same_as(t) {
            return Err(validation(
                name,
                "builtin matches the declared source and target",
                format!("{} => {}", sigma.source().name(), sigma.target().name()),
            ));
        }
        Ok(sigma)
    }
}

fn morphism_from_tables(name: &str, s: &MonadInstance, t: &MonadInstance, components: &[ComponentDef]) -> Result<MonadMorphism> {
    let mut tables = Vec::new();
    for (n, c) in components.iter().enumerate() {
        if c.sizes != [n as u64] {
            return Err(validation(
                name,
                "components are listed for sizes 0, 1, .. in order",
                format!("{:?} at position {n}", c.sizes),
            ));
        }
        let a = FinSet::new(n as Elem);
        let table = c.table.iter().map(|&x| x as Elem).collect();
        let f =
            FinMap::new(s.obj(&a)?, t.obj(&a)?, table).map_err(|e| validation(name, format!("component at {n} is a map S({n}) -> T({n})"), e.to_string()))?;
        tables.push(f);
    }
    MonadMorphism::from_tables(name, s.clone(), t.clone(), tables)
}

fn apply_overrides(name: &str, law: LawValue, overrides: &[ComponentDef], budget: Budget) -> Result<LawValue> {
    let mut patches: Vec<(Vec<Elem>, FinMap)> = Vec::new();
    for o in overrides {
        let objs: Vec<FinSet> = o.sizes.iter().map(|&n| FinSet::new(n as Elem)).collect();
        let original = law.family.component(&objs)?;
        let table = o.table.iter().map(|&x| x as Elem).collect();
        budget.admit("override component", original.dom().size())?;
        let f = FinMap::new(original.dom().clone(), original.cod().clone(), table)
            .map_err(|e| validation(name, format!("override at {:?} has the component's type", o.sizes), e.to_string()))?;
        patches.push((objs.iter().map(FinSet::size).collect(), f));
    }
    let family = law.family.patched(name, move |objs, arrow| {
        let sizes: Vec<Elem> = objs.iter().map(FinSet::size).collect();
        Ok(match patches.iter().find(|(s, _)| *s == sizes) {
            Some((_, f)) => f.to_arrow(),
            None => arrow,
        })
    });
    Ok(LawValue { family, morphism: None, ..law })
}
