//! Least congruences and quotient algebras.

use std::collections::HashMap;
use std::sync::Arc;

use super::{check_algebra_morphism, enumerate_algebra_morphisms, Algebra, Structure};
use crate::error::{Error, Result};
use crate::finset::{checked_mul, for_each_tuple, Budget, Elem, FinMap, FinSet};
use crate::report::Verdict;

/// Union-find over `0..n` whose roots are the least index of each class.
#[derive(Debug, Clone)]
pub struct Partition {
    parent: Vec<usize>,
}

impl Partition {
    pub fn discrete(n: usize) -> Self {
        Partition { parent: (0..n).collect() }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Representative without path compression.
    pub fn root(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `x` and `y`; false when already merged.
    pub fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
        self.parent[hi] = lo;
        true
    }

    pub fn same(&mut self, x: usize, y: usize) -> bool {
        self.find(x) == self.find(y)
    }

    /// `(q, representatives)`: `q[x]` is the class number of `x`, classes
    /// numbered by increasing least element.
    pub fn quotient_map(&self) -> (Vec<Elem>, Vec<Elem>) {
        let mut class = vec![usize::MAX; self.len()];
        let mut reps = Vec::new();
        let mut q = Vec::with_capacity(self.len());
        for x in 0..self.len() {
            let r = self.root(x);
            if class[r] == usize::MAX {
                class[r] = reps.len();
                reps.push(r as Elem);
            }
            q.push(class[r] as Elem);
        }
        (q, reps)
    }

    pub fn class_count(&self) -> usize {
        (0..self.len()).filter(|&x| self.parent[x] == x).count()
    }

    /// Classes as sorted element lists, ordered by least element.
    pub fn classes(&self) -> Vec<Vec<Elem>> {
        let (q, reps) = self.quotient_map();
        let mut out = vec![Vec::new(); reps.len()];
        for (x, &c) in q.iter().enumerate() {
            out[c as usize].push(x as Elem);
        }
        out
    }
}

impl PartialEq for Partition {
    fn eq(&self, other: &Self) -> bool {
        self.quotient_map().0 == other.quotient_map().0
    }
}

impl Eq for Partition {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CongruenceRoute {
    /// Cheaper of the two below.
    Auto,
    /// Group `T(carrier)` by the image under `T(q)` and merge structure
    /// values within each group, until stable.
    Grouping,
    /// Close the seeds under the monad's basic translations.
    Translations,
}

/// The least congruence on `β` containing `seeds`.
pub fn congruence(beta: &Algebra, seeds: &[(Elem, Elem)], route: CongruenceRoute, budget: Budget) -> Result<Partition> {
    let n = budget.admit("carrier", beta.size())?;
    let t = beta.monad();
    let translations = t.translations();
    let grouping_cost = t.obj_size(beta.size()).ok().filter(|&c| budget.admits(c));
    let route = match route {
        CongruenceRoute::Auto => match (&translations, grouping_cost) {
            (None, _) => CongruenceRoute::Grouping,
            (Some(_), None) => CongruenceRoute::Translations,
            (Some(tr), Some(g)) => {
                let instances = translation_instances(beta, tr, budget).map(|v| v.len() as Elem).unwrap_or(Elem::MAX);
                if checked_mul(n as Elem, instances).is_some_and(|c| c < g) {
                    CongruenceRoute::Translations
                } else {
                    CongruenceRoute::Grouping
                }
            }
        },
        r => r,
    };
    let mut p = Partition::discrete(n);
    match route {
        CongruenceRoute::Translations => {
            let tr = translations.ok_or_else(|| Error::Usage(format!("{} has no translation presentation", t.name())))?;
            let instances = translation_instances(beta, &tr, budget)?;
            let mut work: Vec<(Elem, Elem)> = seeds.to_vec();
            while let Some((x, y)) = work.pop() {
                if p.union(x as usize, y as usize) {
                    for tau in &instances {
                        work.push((tau(x), tau(y)));
                    }
                }
            }
        }
        _ => {
            for &(x, y) in seeds {
                p.union(x as usize, y as usize);
            }
            let tb = budget.admit("T(carrier) for congruence grouping", t.obj_size(beta.size())?)?;
            let values: Vec<Elem> = (0..tb as Elem).map(|u| beta.apply(u)).collect();
            let c = beta.size();
            loop {
                let (q, reps) = p.quotient_map();
                let k = reps.len() as Elem;
                let mut first: HashMap<Elem, Elem> = HashMap::new();
                let mut changed = false;
                for u in 0..tb as Elem {
                    let key = t.raw().fmap(c, k, &|x| q[x as usize], u);
                    let v = values[u as usize];
                    let w = *first.entry(key).or_insert(v);
                    changed |= p.union(w as usize, v as usize);
                }
                if !changed {
                    break;
                }
            }
        }
    }
    Ok(p)
}

type Tau = Box<dyn Fn(Elem) -> Elem>;

fn translation_instances(beta: &Algebra, tr: &[crate::monads::Translation], budget: Budget) -> Result<Vec<Tau>> {
    let gens = if tr.iter().any(|t| t.uses_constant) {
        beta.generators(budget)?.elements.clone()
    } else {
        Vec::new()
    };
    let mut out: Vec<Tau> = Vec::new();
    for t in tr {
        if t.uses_constant {
            for &g in &gens {
                let (a, term) = (beta.clone(), t.term);
                out.push(Box::new(move |x| a.eval(2, term, &|i| if i == 0 { x } else { g })));
            }
        } else {
            let (a, term) = (beta.clone(), t.term);
            out.push(Box::new(move |x| a.eval(2, term, &|_| x)));
        }
    }
    Ok(out)
}

/// `β / E` with the quotient map. The structure reads
/// `ω([t]) = q(β(T(s)(t)))` for the least-index section `s`; agreement
/// with the greatest-index section is asserted.
pub fn quotient(beta: &Algebra, partition: &Partition, budget: Budget) -> Result<(Algebra, FinMap)> {
    if partition.len() as Elem != beta.size() {
        return Err(Error::mismatch("quotient", beta.size(), partition.len() as Elem));
    }
    let (q, reps) = partition.quotient_map();
    let k = reps.len();
    let parent_labels = beta.carrier().labels().is_some();
    let carrier = if parent_labels {
        FinSet::labelled_by(k as Elem, |c| format!("[{}]", beta.carrier().label(reps[c as usize])))
    } else {
        FinSet::new(k as Elem)
    };
    let mut alt = vec![0; k];
    for (x, &c) in q.iter().enumerate() {
        alt[c as usize] = x as Elem;
    }
    let q: Arc<[Elem]> = q.into();
    let w = Algebra::wrap(
        beta.monad().clone(),
        carrier.clone(),
        Structure::Quotient {
            parent: beta.clone(),
            q: q.clone(),
            section: reps.into(),
        },
    );
    let other = Algebra::wrap(
        beta.monad().clone(),
        carrier.clone(),
        Structure::Quotient {
            parent: beta.clone(),
            q: q.clone(),
            section: alt.into(),
        },
    );
    assert_section_independent(&w, &other, budget)?;
    let qmap = FinMap::new(beta.carrier().clone(), carrier, q.to_vec())?;
    Ok((w, qmap))
}

fn assert_section_independent(w: &Algebra, other: &Algebra, budget: Budget) -> Result<()> {
    let t = w.monad();
    let k = w.size();
    let ops_cost = t.operations().and_then(|ops| {
        ops.iter()
            .try_fold(0 as Elem, |acc, op| crate::finset::checked_pow(k, op.arity).and_then(|n| acc.checked_add(n)))
            .map(|c| (ops, c))
    });
    if let Some((ops, _)) = ops_cost.filter(|(_, c)| budget.admits(*c)) {
        let mut bad = None;
        for op in ops {
            for_each_tuple(op.arity as usize, k, |args| {
                let a = w.eval(op.arity, op.term, &|i| args[i as usize]);
                let b = other.eval(op.arity, op.term, &|i| args[i as usize]);
                if a != b {
                    bad = Some(format!("operation {} at {:?}", op.name, args));
                    return false;
                }
                true
            });
            if bad.is_some() {
                break;
            }
        }
        return match bad {
            None => Ok(()),
            Some(at) => Err(Error::NotAnAlgebra(format!("quotient structure depends on the section: {at}"))),
        };
    }
    if let Some(tk) = t.obj_size(k).ok().filter(|&n| budget.admits(n)) {
        if let Some(u) = (0..tk).find(|&u| w.apply(u) != other.apply(u)) {
            return Err(Error::NotAnAlgebra(format!("quotient structure depends on the section at #{u}")));
        }
    }
    Ok(())
}

/// A coequalizer in the algebra category.
#[derive(Debug, Clone)]
pub struct Coequalizer {
    pub algebra: Algebra,
    pub q: FinMap,
    /// Whether the pair has a common section among algebra morphisms;
    /// `None` when that search was over budget.
    pub reflexive: Option<bool>,
}

/// Coequalizer of algebra morphisms `f, g : α → β`. Seeds are the images
/// of a generating set of `α`, which generate the same congruence as all
/// of `{(f(x), g(x))}`.
pub fn coequalize(f: &FinMap, g: &FinMap, alpha: &Algebra, beta: &Algebra, budget: Budget) -> Result<Coequalizer> {
    for (name, m) in [("f", f), ("g", g)] {
        if let Verdict::Fail { witness } = check_algebra_morphism(m, alpha, beta, budget)? {
            return Err(Error::NotAMorphism(format!("{name}: {witness}")));
        }
    }
    let points: Vec<Elem> = match alpha.generators(budget) {
        Ok(gens) => gens.elements.clone(),
        Err(_) => alpha.carrier().elements().collect(),
    };
    let seeds: Vec<(Elem, Elem)> = points.iter().map(|&x| (f.apply(x), g.apply(x))).collect();
    let (algebra, q) = coequalize_with_seeds(beta, &seeds, budget)?;
    let reflexive = enumerate_algebra_morphisms(beta, alpha, budget).ok().map(|sections| {
        sections
            .iter()
            .any(|s| beta.carrier().elements().all(|y| f.apply(s.apply(y)) == y && g.apply(s.apply(y)) == y))
    });
    Ok(Coequalizer { algebra, q, reflexive })
}

/// Quotient of `β` by the least congruence containing `seeds`.
pub fn coequalize_with_seeds(beta: &Algebra, seeds: &[(Elem, Elem)], budget: Budget) -> Result<(Algebra, FinMap)> {
    let p = congruence(beta, seeds, CongruenceRoute::Auto, budget)?;
    quotient(beta, &p, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::{enumerate_algebras, free_algebra, is_algebra, is_algebra_morphism};
    use crate::monads::{maybe_monad, semimodule_monad, writer_monad, FiniteMonoid, FiniteSemiring, MonadInstance, SemimoduleMonad};

    fn b() -> Budget {
        Budget::default()
    }

    fn f2() -> MonadInstance {
        semimodule_monad(FiniteSemiring::f2())
    }

    #[test]
    fn partition_roots_are_least() {
        let mut p = Partition::discrete(6);
        p.union(4, 2);
        p.union(5, 4);
        p.union(3, 1);
        assert_eq!(p.find(5), 2);
        assert_eq!(p.quotient_map(), (vec![0, 1, 2, 1, 2, 2], vec![0, 1, 2]));
        assert_eq!(p.class_count(), 3);
        assert!(!p.union(2, 5));
    }

    /// Free on {p} into free on {x, y}, by p ↦ x and p ↦ y.
    fn x_and_y() -> (FinMap, FinMap, Algebra, Algebra) {
        let t = f2();
        let one = free_algebra(&t, &FinSet::new(1), b()).unwrap();
        let two = free_algebra(&t, &FinSet::new(2), b()).unwrap();
        let sm = SemimoduleMonad::from_semiring(FiniteSemiring::f2());
        let extend = |gen: Elem| {
            let table = (0..2).map(|u| if u == 0 { 0 } else { sm.scaled_generator(1, gen) }).collect();
            FinMap::new(FinSet::new(2), FinSet::new(4), table).unwrap()
        };
        (extend(0), extend(1), one, two)
    }

    #[test]
    fn f2_plane_mod_the_diagonal_is_a_line() {
        let (f, g, one, two) = x_and_y();
        let co = coequalize(&f, &g, &one, &two, b()).unwrap();
        assert_eq!(co.algebra.size(), 2);
        // 0 ~ x + y and x ~ y
        assert_eq!(co.q.table(), &[0, 1, 1, 0]);
        assert_eq!(co.reflexive, Some(false));
        let table = co.algebra.structure_table(b()).unwrap();
        assert!(is_algebra(&f2(), co.algebra.carrier(), &table, b()).unwrap().is_pass());
        assert!(is_algebra_morphism(&co.q, &two, &co.algebra, b()).unwrap());
    }

    #[test]
    fn diagonal_quotient_matches_brute_force_oracle() {
        // the largest quotient algebra of the plane through which f and g agree
        let (f, g, _, two) = x_and_y();
        let mut best = 0;
        for c in 1..=4 {
            for target in enumerate_algebras(&f2(), &FinSet::new(c), b()).unwrap() {
                for k in crate::algebras::enumerate_algebra_morphisms(&two, &target, b()).unwrap() {
                    if k.is_surjective() && (0..2).all(|x| k.apply(f.apply(x)) == k.apply(g.apply(x))) {
                        best = best.max(c);
                    }
                }
            }
        }
        assert_eq!(best, 2);
    }

    #[test]
    fn equal_maps_give_the_identity_quotient() {
        let (f, _, one, two) = x_and_y();
        let co = coequalize(&f, &f, &one, &two, b()).unwrap();
        assert_eq!(co.algebra.size(), 4);
        assert_eq!(co.q, FinMap::identity(&FinSet::new(4)));
    }

    #[test]
    fn routes_agree() {
        for (t, base) in [
            (f2(), 2),
            (semimodule_monad(FiniteSemiring::boolean()), 2),
            (semimodule_monad(FiniteSemiring::integers_mod(4)), 1),
            (writer_monad(FiniteMonoid::symmetric3()), 2),
            (maybe_monad(), 2),
        ] {
            let free = Algebra::free_on(&t, &FinSet::new(base)).unwrap();
            let n = free.size();
            for x in 0..n {
                for y in 0..n {
                    let seeds = [(x, y)];
                    let g = congruence(&free, &seeds, CongruenceRoute::Grouping, b()).unwrap();
                    let tr = congruence(&free, &seeds, CongruenceRoute::Translations, b()).unwrap();
                    assert_eq!(g, tr, "{t:?} seeds {seeds:?}");
                }
            }
        }
    }

    #[test]
    fn generator_seeds_give_the_same_congruence_as_all_pairs() {
        let (f, g, one, two) = x_and_y();
        let all: Vec<_> = (0..one.size()).map(|x| (f.apply(x), g.apply(x))).collect();
        let gens: Vec<_> = one.generators(b()).unwrap().elements.iter().map(|&x| (f.apply(x), g.apply(x))).collect();
        assert!(gens.len() < all.len());
        assert_eq!(
            congruence(&two, &all, CongruenceRoute::Grouping, b()).unwrap(),
            congruence(&two, &gens, CongruenceRoute::Grouping, b()).unwrap()
        );
    }

    #[test]
    fn non_morphisms_are_rejected() {
        let (f, _, one, two) = x_and_y();
        let bad = FinMap::new(FinSet::new(2), FinSet::new(4), vec![1, 1]).unwrap();
        assert!(matches!(coequalize(&f, &bad, &one, &two, b()), Err(Error::NotAMorphism(_))));
    }

    #[test]
    fn quotient_satisfies_the_universal_property() {
        let (f, g, _, two) = x_and_y();
        let co = coequalize(&f, &g, &free_algebra(&f2(), &FinSet::new(1), b()).unwrap(), &two, b()).unwrap();
        for c in 1..=3 {
            for gamma in enumerate_algebras(&f2(), &FinSet::new(c), b()).unwrap() {
                for k in crate::algebras::enumerate_algebra_morphisms(&two, &gamma, b()).unwrap() {
                    if (0..2).any(|x| k.apply(f.apply(x)) != k.apply(g.apply(x))) {
                        continue;
                    }
                    let fills = crate::algebras::enumerate_algebra_morphisms(&co.algebra, &gamma, b())
                        .unwrap()
                        .into_iter()
                        .filter(|m| (0..4).all(|y| m.apply(co.q.apply(y)) == k.apply(y)))
                        .count();
                    assert_eq!(fills, 1);
                }
            }
        }
    }
}
