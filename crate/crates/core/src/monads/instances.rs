//! Built-in monads: identity, maybe, writer over a finite monoid, and
//! finite formal sums over a finite semiring.

use std::sync::Arc;

use super::{FiniteMonoid, FiniteSemiring, Monad, MonadInstance, Operation, Translation};
use crate::error::{Error, Result};
use crate::finset::{checked_mul, checked_pow, Budget, Elem};

#[derive(Debug, Clone, Copy, Default)]
pub struct IdentityMonad;

impl Monad for IdentityMonad {
    fn name(&self) -> String {
        "identity".into()
    }

    fn size_of(&self, n: Elem) -> Option<Elem> {
        Some(n)
    }

    fn fmap(&self, _n: Elem, _m: Elem, f: &dyn Fn(Elem) -> Elem, t: Elem) -> Elem {
        f(t)
    }

    fn unit(&self, _n: Elem, x: Elem) -> Elem {
        x
    }

    fn join(&self, _n: Elem, tt: Elem) -> Elem {
        tt
    }

    fn bind(&self, _n: Elem, _m: Elem, t: Elem, k: &dyn Fn(Elem) -> Elem) -> Elem {
        k(t)
    }

    fn describe(&self, _n: Elem, t: Elem, inner: &dyn Fn(Elem) -> String) -> String {
        inner(t)
    }

    fn operations(&self) -> Option<Vec<Operation>> {
        Some(Vec::new())
    }

    fn translations(&self) -> Option<Vec<Translation>> {
        Some(Vec::new())
    }

    fn presented_algebra_check(&self, c: Elem, alpha: &dyn Fn(Elem) -> Elem) -> Option<std::result::Result<(), String>> {
        Some(match (0..c).find(|&x| alpha(x) != x) {
            None => Ok(()),
            Some(x) => Err(format!("unit axiom at {x}")),
        })
    }
}

/// `T(A) = A + {⊥}`; elements of `A` keep their indices and `⊥` is `|A|`.
#[derive(Debug, Clone, Copy, Default)]
pub struct MaybeMonad;

impl Monad for MaybeMonad {
    fn name(&self) -> String {
        "maybe".into()
    }

    fn size_of(&self, n: Elem) -> Option<Elem> {
        n.checked_add(1)
    }

    fn fmap(&self, n: Elem, m: Elem, f: &dyn Fn(Elem) -> Elem, t: Elem) -> Elem {
        if t < n {
            f(t)
        } else {
            m
        }
    }

    fn unit(&self, _n: Elem, x: Elem) -> Elem {
        x
    }

    fn join(&self, n: Elem, tt: Elem) -> Elem {
        tt.min(n)
    }

    fn bind(&self, n: Elem, m: Elem, t: Elem, k: &dyn Fn(Elem) -> Elem) -> Elem {
        if t < n {
            k(t)
        } else {
            m
        }
    }

    fn describe(&self, n: Elem, t: Elem, inner: &dyn Fn(Elem) -> String) -> String {
        if t < n {
            inner(t)
        } else {
            "⊥".into()
        }
    }

    fn operations(&self) -> Option<Vec<Operation>> {
        Some(vec![Operation {
            name: "⊥".into(),
            arity: 0,
            term: 0,
        }])
    }

    // the only polynomials are the identity and constants
    fn translations(&self) -> Option<Vec<Translation>> {
        Some(Vec::new())
    }

    fn presented_algebra_check(&self, c: Elem, alpha: &dyn Fn(Elem) -> Elem) -> Option<std::result::Result<(), String>> {
        Some(match (0..c).find(|&x| alpha(x) != x) {
            None => Ok(()),
            Some(x) => Err(format!("unit axiom at {x}")),
        })
    }
}

/// `T(A) = M × A` with `(m, a)` at `m·|A| + a`.
#[derive(Debug, Clone)]
pub struct WriterMonad {
    monoid: Arc<FiniteMonoid>,
}

impl WriterMonad {
    pub fn monoid(&self) -> &FiniteMonoid {
        &self.monoid
    }
}

impl Monad for WriterMonad {
    fn name(&self) -> String {
        format!("writer({})", self.monoid.name())
    }

    fn size_of(&self, n: Elem) -> Option<Elem> {
        checked_mul(self.monoid.size() as Elem, n)
    }

    fn fmap(&self, n: Elem, m: Elem, f: &dyn Fn(Elem) -> Elem, t: Elem) -> Elem {
        (t / n) * m + f(t % n)
    }

    fn unit(&self, n: Elem, x: Elem) -> Elem {
        self.monoid.unit() as Elem * n + x
    }

    fn join(&self, n: Elem, tt: Elem) -> Elem {
        let inner = self.monoid.size() as Elem * n;
        let (m, rest) = (tt / inner, tt % inner);
        let (k, a) = (rest / n, rest % n);
        self.monoid.mul(m as usize, k as usize) as Elem * n + a
    }

    fn bind(&self, n: Elem, m: Elem, t: Elem, k: &dyn Fn(Elem) -> Elem) -> Elem {
        let (w, a) = (t / n, t % n);
        let u = k(a);
        let (w2, b) = (u / m, u % m);
        self.monoid.mul(w as usize, w2 as usize) as Elem * m + b
    }

    fn describe(&self, n: Elem, t: Elem, inner: &dyn Fn(Elem) -> String) -> String {
        format!("({}, {})", self.monoid.carrier().label(t / n), inner(t % n))
    }

    fn operations(&self) -> Option<Vec<Operation>> {
        let mo = &self.monoid;
        Some(
            (0..mo.size())
                .map(|m| Operation {
                    name: format!("{}·x", mo.carrier().label(m as Elem)),
                    arity: 1,
                    term: m as Elem,
                })
                .collect(),
        )
    }

    fn translations(&self) -> Option<Vec<Translation>> {
        let mo = &self.monoid;
        Some(
            (0..mo.size())
                .map(|m| Translation {
                    name: format!("{}·x", mo.carrier().label(m as Elem)),
                    term: m as Elem * 2,
                    uses_constant: false,
                })
                .collect(),
        )
    }

    fn presented_algebra_check(&self, c: Elem, alpha: &dyn Fn(Elem) -> Elem) -> Option<std::result::Result<(), String>> {
        let mo = &self.monoid;
        let e = mo.unit() as Elem;
        if let Some(x) = (0..c).find(|&x| alpha(e * c + x) != x) {
            return Some(Err(format!("unit axiom at {x}")));
        }
        let k = mo.size();
        for a in 0..k {
            for b in 0..k {
                for x in 0..c {
                    let lhs = alpha(mo.mul(a, b) as Elem * c + x);
                    let rhs = alpha(a as Elem * c + alpha(b as Elem * c + x));
                    if lhs != rhs {
                        return Some(Err(format!("action law at ({a}, {b}, {x})")));
                    }
                }
            }
        }
        Some(Ok(()))
    }
}

/// `T(A) = S^A`, finite formal sums. The coefficient of element `i` is
/// digit `i` of the index in base `|S|`, least significant first.
#[derive(Debug, Clone)]
pub struct SemimoduleMonad {
    semiring: Arc<FiniteSemiring>,
    base: Elem,
    shift: Option<u32>,
    fast: Fast,
}

/// Two-element semirings with `0`, `1` at indices 0, 1 are handled on
/// bitmasks directly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Fast {
    Xor,
    Or,
    Off,
}

impl SemimoduleMonad {
    pub fn from_semiring(semiring: FiniteSemiring) -> Self {
        let base = semiring.size() as Elem;
        let shift = base.is_power_of_two().then(|| base.trailing_zeros());
        let fast = if base == 2 && semiring.zero() == 0 && semiring.one() == 1 {
            if semiring.add(1, 1) == 0 {
                Fast::Xor
            } else {
                Fast::Or
            }
        } else {
            Fast::Off
        };
        SemimoduleMonad {
            semiring: Arc::new(semiring),
            base,
            shift,
            fast,
        }
    }

    pub fn semiring(&self) -> &FiniteSemiring {
        &self.semiring
    }

    /// Coefficient vector of `t ∈ T(n)`.
    pub fn decode(&self, t: Elem, n: Elem) -> Vec<usize> {
        let mut out = Vec::with_capacity(n as usize);
        match self.shift {
            Some(s) => {
                let mask = self.base - 1;
                for i in 0..n as u32 {
                    out.push(((t >> (s * i)) & mask) as usize);
                }
            }
            None => {
                let mut t = t;
                for _ in 0..n {
                    out.push((t % self.base) as usize);
                    t /= self.base;
                }
            }
        }
        out
    }

    pub fn encode(&self, v: &[usize]) -> Elem {
        match self.shift {
            Some(s) => v.iter().enumerate().fold(0, |acc, (i, &d)| acc | (d as Elem) << (s * i as u32)),
            None => v.iter().rev().fold(0, |acc, &d| acc * self.base + d as Elem),
        }
    }

    /// `s·x` as an element of `T(n)`.
    pub fn scaled_generator(&self, s: usize, x: Elem) -> Elem {
        match self.shift {
            Some(sh) => (s as Elem) << (sh * x as u32),
            None => s as Elem * self.base.pow(x as u32),
        }
    }

    fn bits(mut t: Elem) -> impl Iterator<Item = Elem> {
        std::iter::from_fn(move || {
            if t == 0 {
                None
            } else {
                let i = t.trailing_zeros();
                t &= t - 1;
                Some(i as Elem)
            }
        })
    }
}

impl Monad for SemimoduleMonad {
    fn name(&self) -> String {
        format!("semimodule({})", self.semiring.name())
    }

    fn size_of(&self, n: Elem) -> Option<Elem> {
        checked_pow(self.base, n)
    }

    fn fmap(&self, n: Elem, m: Elem, f: &dyn Fn(Elem) -> Elem, t: Elem) -> Elem {
        match self.fast {
            Fast::Xor => Self::bits(t).fold(0, |acc, i| acc ^ (1 << f(i))),
            Fast::Or => Self::bits(t).fold(0, |acc, i| acc | (1 << f(i))),
            Fast::Off => {
                let s = &*self.semiring;
                let mut out = vec![s.zero(); m as usize];
                for (i, d) in self.decode(t, n).into_iter().enumerate() {
                    if d != s.zero() {
                        let j = f(i as Elem) as usize;
                        out[j] = s.add(out[j], d);
                    }
                }
                self.encode(&out)
            }
        }
    }

    fn unit(&self, _n: Elem, x: Elem) -> Elem {
        self.scaled_generator(self.semiring.one(), x)
    }

    fn join(&self, n: Elem, tt: Elem) -> Elem {
        let tn = self.size_of(n).expect("join through an unrepresentable object");
        self.bind(tn, n, tt, &|t| t)
    }

    fn bind(&self, n: Elem, m: Elem, t: Elem, k: &dyn Fn(Elem) -> Elem) -> Elem {
        match self.fast {
            Fast::Xor => Self::bits(t).fold(0, |acc, i| acc ^ k(i)),
            Fast::Or => Self::bits(t).fold(0, |acc, i| acc | k(i)),
            Fast::Off => {
                let s = &*self.semiring;
                let mut out = vec![s.zero(); m as usize];
                for (i, c) in self.decode(t, n).into_iter().enumerate() {
                    if c == s.zero() {
                        continue;
                    }
                    for (j, v) in self.decode(k(i as Elem), m).into_iter().enumerate() {
                        if v != s.zero() {
                            out[j] = s.add(out[j], s.mul(c, v));
                        }
                    }
                }
                self.encode(&out)
            }
        }
    }

    fn describe(&self, n: Elem, t: Elem, inner: &dyn Fn(Elem) -> String) -> String {
        let s = &*self.semiring;
        let terms: Vec<String> = self
            .decode(t, n)
            .into_iter()
            .enumerate()
            .filter(|&(_, d)| d != s.zero())
            .map(|(i, d)| {
                if d == s.one() {
                    inner(i as Elem)
                } else {
                    format!("{}·{}", s.label(d), inner(i as Elem))
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    fn operations(&self) -> Option<Vec<Operation>> {
        let s = &*self.semiring;
        let mut ops = vec![
            Operation {
                name: "0".into(),
                arity: 0,
                term: 0,
            },
            Operation {
                name: "x + y".into(),
                arity: 2,
                term: self.encode(&[s.one(), s.one()]),
            },
        ];
        ops.extend((0..s.size()).map(|k| Operation {
            name: format!("{}·x", s.label(k)),
            arity: 1,
            term: self.scaled_generator(k, 0),
        }));
        Some(ops)
    }

    // A unary polynomial is x ↦ r·x + c, and c is a sum of scaled generators.
    fn translations(&self) -> Option<Vec<Translation>> {
        let s = &*self.semiring;
        let mut out: Vec<Translation> = (0..s.size())
            .filter(|&k| k != s.zero())
            .map(|k| Translation {
                name: format!("x + {}·c", s.label(k)),
                term: self.encode(&[s.one(), k]),
                uses_constant: true,
            })
            .collect();
        out.extend((0..s.size()).filter(|&k| k != s.one()).map(|k| Translation {
            name: format!("{}·x", s.label(k)),
            term: self.scaled_generator(k, 0),
            uses_constant: false,
        }));
        Some(out)
    }

    fn presented_algebra_check(&self, c: Elem, alpha: &dyn Fn(Elem) -> Elem) -> Option<std::result::Result<(), String>> {
        Some(self.check_module(c, alpha))
    }

    fn enumerate_algebras(&self, c: Elem, budget: Budget) -> Option<Result<Vec<Vec<Elem>>>> {
        Some(self.enumerate_modules(c, budget))
    }
}

impl SemimoduleMonad {
    fn check_module(&self, c: Elem, alpha: &dyn Fn(Elem) -> Elem) -> std::result::Result<(), String> {
        let s = &*self.semiring;
        if let Some(x) = (0..c).find(|&x| alpha(self.unit(c, x)) != x) {
            return Err(format!("unit axiom at {x}"));
        }
        let one = s.one();
        let plus = |x: Elem, y: Elem| {
            let mut v = vec![s.zero(); c as usize];
            v[x as usize] = one;
            v[y as usize] = s.add(v[y as usize], one);
            alpha(self.encode(&v))
        };
        let zero = alpha(0);
        let act = |k: usize, x: Elem| alpha(self.scaled_generator(k, x));
        let tc = self.size_of(c).ok_or("carrier too large")?;
        for t in 0..tc {
            let folded = self.decode(t, c).into_iter().enumerate().fold(zero, |acc, (i, d)| plus(acc, act(d, i as Elem)));
            if alpha(t) != folded {
                return Err(format!("structure is not the sum of its terms at #{t}"));
            }
        }
        let k = s.size();
        for x in 0..c {
            if plus(zero, x) != x {
                return Err(format!("zero is not neutral at {x}"));
            }
            if act(s.one(), x) != x || act(s.zero(), x) != zero {
                return Err(format!("scalar unit or zero at {x}"));
            }
            for y in 0..c {
                if plus(x, y) != plus(y, x) {
                    return Err(format!("addition does not commute at ({x}, {y})"));
                }
                for z in 0..c {
                    if plus(plus(x, y), z) != plus(x, plus(y, z)) {
                        return Err(format!("addition is not associative at ({x}, {y}, {z})"));
                    }
                }
                for a in 0..k {
                    if act(a, plus(x, y)) != plus(act(a, x), act(a, y)) {
                        return Err(format!("scalar {a} is not additive at ({x}, {y})"));
                    }
                }
            }
            for a in 0..k {
                for b in 0..k {
                    if act(s.mul(a, b), x) != act(a, act(b, x)) {
                        return Err(format!("action is not multiplicative at ({a}, {b}, {x})"));
                    }
                    if act(s.add(a, b), x) != plus(act(a, x), act(b, x)) {
                        return Err(format!("action is not additive in scalars at ({a}, {b}, {x})"));
                    }
                }
            }
        }
        Ok(())
    }

    /// All module structures on `c`: a commutative monoid together with an
    /// action of the semiring by monoid endomorphisms.
    fn enumerate_modules(&self, c: Elem, budget: Budget) -> Result<Vec<Vec<Elem>>> {
        let s = &*self.semiring;
        let n = c as usize;
        let tc = self.size_of(c).ok_or_else(|| Error::unrepresentable("algebra tables", budget.limit()))?;
        budget.admit("algebra structure table", tc)?;
        let off_unit_cells = n.saturating_sub(1) * n / 2;
        let work = checked_pow(c.max(1), off_unit_cells as Elem).and_then(|w| checked_mul(w, c));
        budget.admit("commutative monoid tables", work.unwrap_or(Elem::MAX))?;

        let mut out = Vec::new();
        for monoid in commutative_monoids(n) {
            let add = |x: usize, y: usize| monoid.table[x * n + y];
            let endos = endomorphisms(n, monoid.zero, &add);
            let mut acts: Vec<Option<usize>> = vec![None; s.size()];
            let mut found = Vec::new();
            assign_actions(s, n, monoid.zero, &add, &endos, 0, &mut acts, &mut found);
            for assignment in found {
                let table = (0..tc)
                    .map(|t| {
                        self.decode(t, c)
                            .into_iter()
                            .enumerate()
                            .fold(monoid.zero, |acc, (i, d)| add(acc, endos[assignment[d]][i])) as Elem
                    })
                    .collect();
                out.push(table);
            }
        }
        Ok(out)
    }
}

struct CommutativeMonoid {
    zero: usize,
    table: Vec<usize>,
}

fn commutative_monoids(n: usize) -> Vec<CommutativeMonoid> {
    let mut out = Vec::new();
    for zero in 0..n {
        let others: Vec<usize> = (0..n).filter(|&x| x != zero).collect();
        let cells: Vec<(usize, usize)> = others.iter().enumerate().flat_map(|(i, &a)| others[i..].iter().map(move |&b| (a, b))).collect();
        crate::finset::for_each_tuple(cells.len(), n as Elem, |vals| {
            let mut table = vec![0; n * n];
            for x in 0..n {
                table[zero * n + x] = x;
                table[x * n + zero] = x;
            }
            for (&(a, b), &v) in cells.iter().zip(vals) {
                table[a * n + b] = v as usize;
                table[b * n + a] = v as usize;
            }
            let assoc = (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| table[table[x * n + y] * n + z] == table[x * n + table[y * n + z]])));
            if assoc {
                out.push(CommutativeMonoid { zero, table });
            }
            true
        });
    }
    out
}

fn endomorphisms(n: usize, zero: usize, add: &dyn Fn(usize, usize) -> usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    crate::finset::for_each_tuple(n, n as Elem, |f| {
        let f: Vec<usize> = f.iter().map(|&v| v as usize).collect();
        let hom = f[zero] == zero && (0..n).all(|x| (0..n).all(|y| f[add(x, y)] == add(f[x], f[y])));
        if hom {
            out.push(f);
        }
        true
    });
    out
}

#[allow(clippy::too_many_arguments)]
fn assign_actions(
    s: &FiniteSemiring,
    n: usize,
    zero: usize,
    add: &dyn Fn(usize, usize) -> usize,
    endos: &[Vec<usize>],
    next: usize,
    acts: &mut Vec<Option<usize>>,
    found: &mut Vec<Vec<usize>>,
) {
    if next == s.size() {
        found.push(acts.iter().map(|a| a.unwrap()).collect());
        return;
    }
    for (e, f) in endos.iter().enumerate() {
        if next == s.zero() && f.iter().any(|&v| v != zero) {
            continue;
        }
        if next == s.one() && f.iter().enumerate().any(|(i, &v)| v != i) {
            continue;
        }
        acts[next] = Some(e);
        if consistent(s, n, add, endos, acts) {
            assign_actions(s, n, zero, add, endos, next + 1, acts, found);
        }
    }
    acts[next] = None;
}

fn consistent(s: &FiniteSemiring, n: usize, add: &dyn Fn(usize, usize) -> usize, endos: &[Vec<usize>], acts: &[Option<usize>]) -> bool {
    for a in 0..s.size() {
        for b in 0..s.size() {
            let (Some(fa), Some(fb)) = (acts[a], acts[b]) else { continue };
            let (fa, fb) = (&endos[fa], &endos[fb]);
            if let Some(fs) = acts[s.add(a, b)] {
                if (0..n).any(|x| endos[fs][x] != add(fa[x], fb[x])) {
                    return false;
                }
            }
            if let Some(fm) = acts[s.mul(a, b)] {
                if (0..n).any(|x| endos[fm][x] != fa[fb[x]]) {
                    return false;
                }
            }
        }
    }
    true
}

pub fn identity_monad() -> MonadInstance {
    MonadInstance::new(IdentityMonad)
}

pub fn maybe_monad() -> MonadInstance {
    MonadInstance::new(MaybeMonad)
}

pub fn writer_monad(monoid: FiniteMonoid) -> MonadInstance {
    MonadInstance::new(WriterMonad { monoid: Arc::new(monoid) })
}

pub fn semimodule_monad(semiring: FiniteSemiring) -> MonadInstance {
    MonadInstance::new(SemimoduleMonad::from_semiring(semiring))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::{all_maps, FinSet};

    fn f2() -> SemimoduleMonad {
        SemimoduleMonad::from_semiring(FiniteSemiring::f2())
    }

    #[test]
    fn unit_is_indicator() {
        let m = f2();
        assert_eq!(m.decode(m.unit(2, 0), 2), vec![1, 0]);
        let z4 = SemimoduleMonad::from_semiring(FiniteSemiring::integers_mod(4));
        assert_eq!(z4.decode(z4.unit(3, 2), 3), vec![0, 0, 1]);
    }

    #[test]
    fn f2_join_cancels() {
        // (x + y) + (y) over generators x, y flattens to x
        let m = f2();
        let x_plus_y = m.encode(&[1, 1]);
        let y = m.encode(&[0, 1]);
        let mut outer = vec![0; 4];
        outer[x_plus_y as usize] = 1;
        outer[y as usize] = 1;
        let tt = m.encode(&outer);
        assert_eq!(m.decode(m.join(2, tt), 2), vec![1, 0]);
    }

    #[test]
    fn boolean_sums_are_subsets() {
        let b = semimodule_monad(FiniteSemiring::boolean());
        for n in 0..=3u128 {
            assert_eq!(b.obj_size(n).unwrap(), 1 << n);
            let a = FinSet::new(n);
            for f in all_maps(&a, &FinSet::new(3), Budget::default()).unwrap() {
                let tf = b.on_morphism(&f, Budget::default()).unwrap();
                for subset in 0..(1u128 << n) {
                    let image = (0..n).filter(|i| subset >> i & 1 == 1).fold(0, |acc, i| acc | 1 << f.apply(i));
                    assert_eq!(tf.apply(subset), image);
                }
            }
        }
    }

    #[test]
    fn generic_and_fast_paths_agree() {
        // a relabelled copy of F2 with zero at index 1 takes the slow path
        let slow = SemimoduleMonad::from_semiring(
            FiniteSemiring::new("f2swap", FinSet::new(2), vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 1]], 1, 0).unwrap(),
        );
        assert_eq!(slow.fast, Fast::Off);
        let fast = f2();
        let swap = |t: Elem, n: Elem| t ^ ((1 << n) - 1);
        for tt in 0..(1u128 << 8) {
            let expect = fast.join(3, tt);
            // translate every coefficient: slow index = fast index with bits flipped
            let slow_tt = {
                let v: Vec<usize> = (0..8).map(|i| (tt >> i & 1) as usize).collect();
                let mut w = vec![1usize; 8];
                for (i, &d) in v.iter().enumerate() {
                    w[swap(i as Elem, 3) as usize] = 1 - d;
                }
                slow.encode(&w)
            };
            assert_eq!(slow.join(3, slow_tt), swap(expect, 3));
        }
    }

    #[test]
    fn writer_follows_the_monoid() {
        let s3 = FiniteMonoid::symmetric3();
        let w = WriterMonad { monoid: Arc::new(s3.clone()) };
        let (p, q) = (1usize, 2usize);
        let n = 2;
        let inner = q as Elem * n + 1;
        let tt = p as Elem * (6 * n) + inner;
        assert_eq!(w.join(n, tt), s3.mul(p, q) as Elem * n + 1);
        let trivial = writer_monad(FiniteMonoid::trivial());
        assert_eq!(trivial.obj_size(5).unwrap(), 5);
    }

    #[test]
    fn maybe_collapses_bottom() {
        let m = MaybeMonad;
        assert_eq!(m.size_of(3), Some(4));
        assert_eq!(m.join(3, 4), 3);
        assert_eq!(m.join(3, 3), 3);
        assert_eq!(m.join(3, 1), 1);
    }

    #[test]
    fn module_enumeration_counts() {
        // F2-vector spaces on 1, 2, 4 points; Boolean algebras are
        // join-semilattices with bottom
        let f2 = f2();
        let counts: Vec<usize> = (1..=4).map(|c| f2.enumerate_modules(c, Budget::default()).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 0, 4]);
        let b = SemimoduleMonad::from_semiring(FiniteSemiring::boolean());
        let counts: Vec<usize> = (1..=4).map(|c| b.enumerate_modules(c, Budget::default()).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 6, 36]);
    }

    #[test]
    fn enumerated_modules_pass_the_presentation_check() {
        for m in [f2(), SemimoduleMonad::from_semiring(FiniteSemiring::integers_mod(4))] {
            for c in 1..=3 {
                for table in m.enumerate_modules(c, Budget::default()).unwrap() {
                    assert_eq!(m.check_module(c, &|t| table[t as usize]), Ok(()));
                }
            }
        }
    }
}
