//! Eilenberg-Moore algebras over a [`MonadInstance`], their morphisms,
//! free algebras and coequalizers.
//!
//! An algebra is stored as a structure table when `T(carrier)` is small, as
//! `(T(A), μ_A)` when free, or as a quotient of another algebra. All three
//! evaluate terms the same way through [`Algebra::eval`].

mod congruence;
mod enumerate;

use std::fmt;
use std::sync::{Arc, OnceLock};

pub use congruence::{coequalize, coequalize_with_seeds, congruence, quotient, Coequalizer, CongruenceRoute, Partition};
pub use enumerate::{enumerate_algebras, find_isomorphism, iso_classes};

use crate::error::{Error, Result};
use crate::finset::{for_each_tuple, Arrow, Budget, Elem, FinMap, FinSet};
use crate::monads::MonadInstance;
use crate::report::{Verdict, Witness};

#[derive(Clone)]
pub struct Algebra(Arc<Inner>);

struct Inner {
    monad: MonadInstance,
    carrier: FinSet,
    structure: Structure,
    generators: OnceLock<Generators>,
}

enum Structure {
    Table(FinMap),
    Free { base: FinSet },
    Quotient { parent: Algebra, q: Arc<[Elem]>, section: Arc<[Elem]> },
}

/// A generating set together with, for every carrier element `x`, a term
/// `t ∈ T(|G|)` evaluating to `x` at the generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generators {
    pub elements: Vec<Elem>,
    pub terms: Vec<Elem>,
}

impl Algebra {
    /// `(carrier, α)` after checking both axioms.
    pub fn new(t: &MonadInstance, carrier: &FinSet, alpha: FinMap, budget: Budget) -> Result<Algebra> {
        let a = Algebra::unchecked(t, carrier, alpha)?;
        match is_algebra(t, carrier, a.table().expect("table algebra"), budget)? {
            Verdict::Pass => Ok(a),
            Verdict::Fail { witness } => Err(Error::NotAnAlgebra(witness.to_string())),
            Verdict::Skipped { reason } => Err(Error::budget(format!("algebra axioms ({reason})"), "unknown", budget.limit())),
        }
    }

    /// `(carrier, α)` with only the types checked. Used for structure maps
    /// that are algebras by construction and for mutation fixtures.
    pub fn unchecked(t: &MonadInstance, carrier: &FinSet, alpha: FinMap) -> Result<Algebra> {
        let tc = t.obj(carrier)?;
        if alpha.dom() != &tc || alpha.cod() != carrier {
            return Err(Error::type_mismatch(
                "structure map",
                format!(
                    "expected T({}) = {} -> {}, found {} -> {}",
                    carrier.size(),
                    tc.size(),
                    carrier.size(),
                    alpha.dom().size(),
                    alpha.cod().size()
                ),
            ));
        }
        Ok(Algebra::wrap(t.clone(), carrier.clone(), Structure::Table(alpha)))
    }

    /// `(T(A), μ_A)` without the budget check on `T²(A)`.
    pub fn free_on(t: &MonadInstance, base: &FinSet) -> Result<Algebra> {
        let carrier = t.obj(base)?;
        Ok(Algebra::wrap(t.clone(), carrier, Structure::Free { base: base.clone() }))
    }

    fn wrap(monad: MonadInstance, carrier: FinSet, structure: Structure) -> Algebra {
        Algebra(Arc::new(Inner {
            monad,
            carrier,
            structure,
            generators: OnceLock::new(),
        }))
    }

    pub fn monad(&self) -> &MonadInstance {
        &self.0.monad
    }

    pub fn carrier(&self) -> &FinSet {
        &self.0.carrier
    }

    pub fn size(&self) -> Elem {
        self.0.carrier.size()
    }

    /// The structure table, when the algebra was given by one.
    pub fn table(&self) -> Option<&FinMap> {
        match &self.0.structure {
            Structure::Table(m) => Some(m),
            _ => None,
        }
    }

    /// `A` when this is the free algebra `(T(A), μ_A)`.
    pub fn free_base(&self) -> Option<&FinSet> {
        match &self.0.structure {
            Structure::Free { base } => Some(base),
            _ => None,
        }
    }

    /// Value of the term `t ∈ T(k)` with variable `i` set to `args(i)`,
    /// that is `α(T(args)(t))`.
    pub fn eval(&self, k: Elem, t: Elem, args: &dyn Fn(Elem) -> Elem) -> Elem {
        let c = self.size();
        let m = self.0.monad.raw();
        match &self.0.structure {
            Structure::Table(alpha) => alpha.apply(m.fmap(k, c, args, t)),
            Structure::Free { base } => m.bind(k, base.size(), t, args),
            Structure::Quotient { parent, q, section } => q[parent.eval(k, t, &|i| section[args(i) as usize]) as usize],
        }
    }

    /// `α(t)` for `t ∈ T(carrier)`.
    pub fn apply(&self, t: Elem) -> Elem {
        match &self.0.structure {
            Structure::Table(alpha) => alpha.apply(t),
            _ => self.eval(self.size(), t, &|x| x),
        }
    }

    /// `α : T(carrier) → carrier` as a lazy arrow.
    pub fn structure(&self) -> Result<Arrow> {
        let dom = self.0.monad.obj(self.carrier())?;
        let me = self.clone();
        Ok(Arrow::new(dom, self.carrier().clone(), move |t| me.apply(t)))
    }

    pub fn structure_table(&self, budget: Budget) -> Result<FinMap> {
        match &self.0.structure {
            Structure::Table(alpha) => Ok(alpha.clone()),
            _ => self.structure()?.tabulate(budget),
        }
    }

    /// A generating set, greedily chosen in index order, with a term for
    /// every element.
    pub fn generators(&self, budget: Budget) -> Result<&Generators> {
        if let Some(g) = self.0.generators.get() {
            return Ok(g);
        }
        let g = self.compute_generators(budget)?;
        Ok(self.0.generators.get_or_init(|| g))
    }

    fn compute_generators(&self, budget: Budget) -> Result<Generators> {
        let t = &self.0.monad;
        match &self.0.structure {
            Structure::Free { base } => {
                let n = base.size();
                budget.admit("free algebra carrier", self.size())?;
                Ok(Generators {
                    elements: (0..n).map(|x| t.raw().unit(n, x)).collect(),
                    terms: (0..self.size()).collect(),
                })
            }
            Structure::Quotient { parent, q, section } => {
                let pg = parent.generators(budget)?;
                Ok(Generators {
                    elements: pg.elements.iter().map(|&g| q[g as usize]).collect(),
                    terms: section.iter().map(|&s| pg.terms[s as usize]).collect(),
                })
            }
            Structure::Table(_) => {
                let c = budget.admit("carrier", self.size())?;
                let mut elements: Vec<Elem> = Vec::new();
                loop {
                    let k = elements.len() as Elem;
                    let tk = budget.admit("terms over the generators", t.obj_size(k)?)?;
                    let mut terms: Vec<Option<Elem>> = vec![None; c];
                    for u in 0..tk as Elem {
                        let x = self.eval(k, u, &|i| elements[i as usize]) as usize;
                        terms[x].get_or_insert(u);
                    }
                    match terms.iter().position(Option::is_none) {
                        None => {
                            return Ok(Generators {
                                elements,
                                terms: terms.into_iter().map(Option::unwrap).collect(),
                            })
                        }
                        Some(x) => elements.push(x as Elem),
                    }
                }
            }
        }
    }

    /// Checks that `other` is an algebra for the same monad.
    pub fn ensure_same_monad(&self, other: &Algebra) -> Result<()> {
        self.0.monad.ensure_same(&other.0.monad)
    }

    pub fn describe_kind(&self) -> &'static str {
        match &self.0.structure {
            Structure::Table(_) => "table",
            Structure::Free { .. } => "free",
            Structure::Quotient { .. } => "quotient",
        }
    }
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra({}, carrier {}, {})", self.monad().name(), self.size(), self.describe_kind())
    }
}

/// The free algebra `(T(A), μ_A)`. Refuses when `T²(A)` is over budget, so
/// that its axioms stay checkable.
pub fn free_algebra(t: &MonadInstance, a: &FinSet, budget: Budget) -> Result<Algebra> {
    let tt = t.power(a, 2)?;
    budget.admit("T²(A) for a free algebra", tt.size())?;
    Algebra::free_on(t, a)
}

/// Both axioms for `α : T(c) → c`. The multiplication axiom runs on
/// `T²(c)` when the budget admits it and through the monad's presentation
/// otherwise.
pub fn is_algebra(t: &MonadInstance, carrier: &FinSet, alpha: &FinMap, budget: Budget) -> Result<Verdict> {
    let tc = t.obj(carrier)?;
    if alpha.dom() != &tc || alpha.cod() != carrier {
        return Err(Error::type_mismatch(
            "structure map",
            format!("{} -> {}", alpha.dom().size(), alpha.cod().size()),
        ));
    }
    if let Some(v) = check_unit_axiom(t, carrier, alpha, budget)? {
        return Ok(v);
    }
    check_multiplication_axiom(t, carrier, alpha, budget)
}

/// `α ∘ η = id`; `Some(failure)` or `None` when it holds.
pub fn check_unit_axiom(t: &MonadInstance, carrier: &FinSet, alpha: &FinMap, budget: Budget) -> Result<Option<Verdict>> {
    let c = carrier.size();
    budget.admit("carrier", c)?;
    for x in 0..c {
        let ex = t.raw().unit(c, x);
        let y = alpha.apply(ex);
        if y != x {
            return Ok(Some(Verdict::Fail {
                witness: Witness::new(x, format!("unit axiom at {}", carrier.label(x)), carrier.label(y), carrier.label(x)),
            }));
        }
    }
    Ok(None)
}

/// `α ∘ μ = α ∘ T(α)`.
pub fn check_multiplication_axiom(t: &MonadInstance, carrier: &FinSet, alpha: &FinMap, budget: Budget) -> Result<Verdict> {
    let c = carrier.size();
    let tc = t.obj_size(c)?;
    let direct = t.obj_size(tc).ok().filter(|&n| budget.admits(n));
    if let Some(ttc) = direct {
        let m = t.raw();
        for tt in 0..ttc {
            let lhs = alpha.apply(m.join(c, tt));
            let rhs = alpha.apply(m.fmap(tc, c, &|u| alpha.apply(u), tt));
            if lhs != rhs {
                return Ok(Verdict::Fail {
                    witness: Witness::new(tt, "multiplication axiom", carrier.label(lhs), carrier.label(rhs)),
                });
            }
        }
        return Ok(Verdict::Pass);
    }
    match t.raw().presented_algebra_check(c, &|u| alpha.apply(u)) {
        Some(Ok(())) => Ok(Verdict::Pass),
        Some(Err(msg)) => Ok(Verdict::Fail {
            witness: Witness::note(format!("multiplication axiom: {msg}")),
        }),
        None => Ok(Verdict::Skipped {
            reason: format!("T²({c}) is over budget"),
        }),
    }
}

/// `h ∘ α = β ∘ T(h)`, with a witness on failure.
pub fn check_algebra_morphism(h: &FinMap, alpha: &Algebra, beta: &Algebra, budget: Budget) -> Result<Verdict> {
    alpha.ensure_same_monad(beta)?;
    if h.dom() != alpha.carrier() || h.cod() != beta.carrier() {
        return Err(Error::type_mismatch(
            "algebra morphism",
            format!("{} -> {} between carriers {} and {}", h.dom().size(), h.cod().size(), alpha.size(), beta.size()),
        ));
    }
    let t = alpha.monad();
    let a = alpha.size();
    if let Some(base) = alpha.free_base() {
        // h is a morphism out of T(X) iff it extends h ∘ η
        budget.admit("free carrier", a)?;
        let k = base.size();
        let eta = t.unit_arrow(base)?;
        for u in 0..a {
            let lhs = h.apply(u);
            let rhs = beta.eval(k, u, &|x| h.apply(eta.apply(x)));
            if lhs != rhs {
                return Ok(Verdict::Fail {
                    witness: Witness::new(u, t.describe(base, u), beta.carrier().label(lhs), beta.carrier().label(rhs)),
                });
            }
        }
        return Ok(Verdict::Pass);
    }
    let literal = t.obj_size(a).ok();
    let ops = t.operations();
    let ops_cost = ops.as_ref().and_then(|ops| {
        ops.iter()
            .try_fold(0 as Elem, |acc, op| crate::finset::checked_pow(a, op.arity).and_then(|n| acc.checked_add(n)))
    });
    let use_ops = match (literal, ops_cost) {
        (_, None) => false,
        (None, Some(_)) => true,
        (Some(l), Some(o)) => o < l,
    };
    if use_ops {
        budget.admit("operation instances", ops_cost.unwrap_or(Elem::MAX))?;
        let mut failure = None;
        for op in ops.unwrap_or_default() {
            for_each_tuple(op.arity as usize, a, |args| {
                let lhs = h.apply(alpha.eval(op.arity, op.term, &|i| args[i as usize]));
                let rhs = beta.eval(op.arity, op.term, &|i| h.apply(args[i as usize]));
                if lhs != rhs {
                    let shown: Vec<String> = args.iter().map(|&x| alpha.carrier().label(x)).collect();
                    failure = Some(Witness {
                        element: format!("operation {}", op.name),
                        index: format!("({})", shown.join(", ")),
                        lhs: beta.carrier().label(lhs),
                        rhs: beta.carrier().label(rhs),
                    });
                    return false;
                }
                true
            });
            if let Some(w) = failure {
                return Ok(Verdict::Fail { witness: w });
            }
        }
        return Ok(Verdict::Pass);
    }
    let n = literal.ok_or_else(|| Error::unrepresentable("T(carrier)", budget.limit()))?;
    budget.admit("T(carrier) for a morphism check", n)?;
    for u in 0..n {
        let lhs = h.apply(alpha.apply(u));
        let rhs = beta.eval(a, u, &|x| h.apply(x));
        if lhs != rhs {
            return Ok(Verdict::Fail {
                witness: Witness::new(u, t.describe(alpha.carrier(), u), beta.carrier().label(lhs), beta.carrier().label(rhs)),
            });
        }
    }
    Ok(Verdict::Pass)
}

pub fn is_algebra_morphism(h: &FinMap, alpha: &Algebra, beta: &Algebra, budget: Budget) -> Result<bool> {
    Ok(check_algebra_morphism(h, alpha, beta, budget)?.is_pass())
}

/// All algebra morphisms `α → β` in lexicographic table order.
///
/// Each morphism is determined by its values on generators of `α`; an
/// assignment extends exactly when `β`'s evaluation of every term over the
/// generators is constant on the fibres of `α`'s evaluation.
pub fn enumerate_algebra_morphisms(alpha: &Algebra, beta: &Algebra, budget: Budget) -> Result<Vec<FinMap>> {
    alpha.ensure_same_monad(beta)?;
    let t = alpha.monad();
    let gens = alpha.generators(budget)?;
    let g = gens.elements.len();
    let b = beta.size();
    let a = budget.admit("source carrier", alpha.size())?;
    let candidates = crate::finset::checked_pow(b, g as Elem).ok_or_else(|| Error::unrepresentable("generator assignments", budget.limit()))?;
    budget.admit("generator assignments", candidates)?;
    let kernel = t
        .obj_size(g as Elem)
        .ok()
        .filter(|&n| budget.admits(n) && n.saturating_mul(candidates) <= budget.limit().saturating_mul(64));
    let mut out = Vec::new();
    match kernel {
        Some(tg) => {
            let values: Vec<Elem> = (0..tg).map(|u| alpha.eval(g as Elem, u, &|i| gens.elements[i as usize])).collect();
            for_each_tuple(g, b, |phi| {
                let mut table: Vec<Option<Elem>> = vec![None; a];
                let ok = (0..tg).all(|u| {
                    let v = beta.eval(g as Elem, u, &|i| phi[i as usize]);
                    *table[values[u as usize] as usize].get_or_insert(v) == v
                });
                if ok {
                    out.push(table.into_iter().map(|x| x.expect("generators cover the carrier")).collect::<Vec<_>>());
                }
                true
            });
        }
        None => {
            let mut err = None;
            for_each_tuple(g, b, |phi| {
                let table: Vec<Elem> = gens.terms.iter().map(|&u| beta.eval(g as Elem, u, &|i| phi[i as usize])).collect();
                let h = FinMap::new(alpha.carrier().clone(), beta.carrier().clone(), table.clone()).expect("values lie in the carrier");
                match check_algebra_morphism(&h, alpha, beta, budget) {
                    Ok(v) if v.is_pass() => out.push(table),
                    Ok(_) => {}
                    Err(e) => {
                        err = Some(e);
                        return false;
                    }
                }
                true
            });
            if let Some(e) = err {
                return Err(e);
            }
        }
    }
    out.sort();
    out.into_iter()
        .map(|table| FinMap::new(alpha.carrier().clone(), beta.carrier().clone(), table))
        .collect()
}

/// `|Hom(α, β)|`.
pub fn count_algebra_morphisms(alpha: &Algebra, beta: &Algebra, budget: Budget) -> Result<usize> {
    Ok(enumerate_algebra_morphisms(alpha, beta, budget)?.len())
}

/// Every map `carrier(α) → carrier(β)` filtered by the morphism check. The
/// reference the generator route is tested against.
pub fn enumerate_algebra_morphisms_brute(alpha: &Algebra, beta: &Algebra, budget: Budget) -> Result<Vec<FinMap>> {
    let mut out = Vec::new();
    for h in crate::finset::all_maps(alpha.carrier(), beta.carrier(), budget)? {
        if is_algebra_morphism(&h, alpha, beta, budget)? {
            out.push(h);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monads::{identity_monad, maybe_monad, semimodule_monad, writer_monad, FiniteMonoid, FiniteSemiring, SemimoduleMonad};

    fn b() -> Budget {
        Budget::default()
    }

    fn f2() -> MonadInstance {
        semimodule_monad(FiniteSemiring::f2())
    }

    /// F2 as a module over itself: the structure sums the coefficients.
    fn f2_line() -> Algebra {
        let sm = SemimoduleMonad::from_semiring(FiniteSemiring::f2());
        let table = (0..4)
            .map(|t| sm.decode(t, 2).iter().enumerate().map(|(i, &c)| i * c).sum::<usize>() as Elem % 2)
            .collect();
        Algebra::new(&f2(), &FinSet::new(2), FinMap::new(FinSet::new(4), FinSet::new(2), table).unwrap(), b()).unwrap()
    }

    #[test]
    fn f2_over_itself_is_an_algebra() {
        let a = f2_line();
        assert_eq!(a.table().unwrap().table(), &[0, 0, 1, 1]);
    }

    #[test]
    fn constant_structure_fails_the_unit_axiom() {
        let c = FinSet::new(2);
        let alpha = FinMap::constant(&FinSet::new(4), &c, 0).unwrap();
        let v = is_algebra(&f2(), &c, &alpha, b()).unwrap();
        let w = v.witness().expect("unit axiom must fail");
        assert!(w.element.contains("unit axiom"));
        assert!(matches!(Algebra::new(&f2(), &c, alpha, b()), Err(Error::NotAnAlgebra(_))));
    }

    #[test]
    fn free_algebras_have_the_expected_carriers() {
        let id = free_algebra(&identity_monad(), &FinSet::new(3), b()).unwrap();
        assert_eq!(id.size(), 3);
        assert_eq!(id.structure_table(b()).unwrap(), FinMap::identity(&FinSet::new(3)));
        assert_eq!(free_algebra(&f2(), &FinSet::new(1), b()).unwrap().size(), 2);
        let bool_free = free_algebra(&semimodule_monad(FiniteSemiring::boolean()), &FinSet::new(2), b()).unwrap();
        assert_eq!(bool_free.size(), 4);
        // a set of subsets flattens to its union
        let union = bool_free.apply((1 << 1) | (1 << 2));
        assert_eq!(union, 3);
        for a in [id, bool_free] {
            let v = is_algebra(a.monad(), a.carrier(), &a.structure_table(b()).unwrap(), b()).unwrap();
            assert!(v.is_pass());
        }
    }

    #[test]
    fn swap_is_not_linear() {
        let a = f2_line();
        let swap = FinMap::new(FinSet::new(2), FinSet::new(2), vec![1, 0]).unwrap();
        assert!(!is_algebra_morphism(&swap, &a, &a, b()).unwrap());
        assert!(is_algebra_morphism(&FinMap::identity(&FinSet::new(2)), &a, &a, b()).unwrap());
    }

    #[test]
    fn freeness_counts_morphisms() {
        let free1 = free_algebra(&f2(), &FinSet::new(1), b()).unwrap();
        let line = f2_line();
        let homs = enumerate_algebra_morphisms(&free1, &line, b()).unwrap();
        assert_eq!(homs.len(), 2);
        let free2 = free_algebra(&f2(), &FinSet::new(2), b()).unwrap();
        assert_eq!(count_algebra_morphisms(&free2, &free2, b()).unwrap(), 16);
    }

    #[test]
    fn identity_monad_morphisms_are_all_maps() {
        let t = identity_monad();
        let a = free_algebra(&t, &FinSet::new(2), b()).unwrap();
        let c = free_algebra(&t, &FinSet::new(3), b()).unwrap();
        assert_eq!(count_algebra_morphisms(&a, &c, b()).unwrap(), 9);
    }

    #[test]
    fn generator_route_matches_brute_force() {
        for t in [
            f2(),
            semimodule_monad(FiniteSemiring::boolean()),
            maybe_monad(),
            writer_monad(FiniteMonoid::cyclic(2)),
        ] {
            let mut algebras = Vec::new();
            for c in 1..=3 {
                algebras.extend(enumerate_algebras(&t, &FinSet::new(c), b()).unwrap());
            }
            for x in &algebras {
                for y in &algebras {
                    let fast = enumerate_algebra_morphisms(x, y, b()).unwrap();
                    let slow = enumerate_algebra_morphisms_brute(x, y, b()).unwrap();
                    assert_eq!(fast, slow, "{x:?} -> {y:?}");
                }
            }
        }
    }

    #[test]
    fn operation_route_matches_literal_route() {
        let t = semimodule_monad(FiniteSemiring::boolean());
        let algebras = enumerate_algebras(&t, &FinSet::new(3), b()).unwrap();
        let source = &algebras[0];
        for target in &algebras {
            for h in crate::finset::all_maps(source.carrier(), target.carrier(), b()).unwrap() {
                let ops = check_algebra_morphism(&h, source, target, b()).unwrap().is_pass();
                let literal = (0..8).all(|u| h.apply(source.apply(u)) == target.eval(3, u, &|x| h.apply(x)));
                assert_eq!(ops, literal);
            }
        }
    }

    #[test]
    fn table_generators_regenerate_the_carrier() {
        let mut algebras = enumerate_algebras(&writer_monad(FiniteMonoid::symmetric3()), &FinSet::new(2), b()).unwrap();
        algebras.extend(enumerate_algebras(&writer_monad(FiniteMonoid::cyclic(3)), &FinSet::new(3), b()).unwrap());
        for a in algebras {
            let g = a.generators(b()).unwrap();
            for x in 0..a.size() {
                assert_eq!(a.eval(g.elements.len() as Elem, g.terms[x as usize], &|i| g.elements[i as usize]), x);
            }
        }
    }
}
