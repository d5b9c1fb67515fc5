//! Finite monoids and semirings given by operation tables.

use std::fmt;

use crate::error::{Error, Result};
use crate::finset::FinSet;

fn check_table(definition: &str, table_name: &str, n: usize, rows: &[Vec<usize>]) -> Result<Vec<usize>> {
    let bad_shape = rows.len() != n || rows.iter().any(|r| r.len() != n);
    if bad_shape {
        return Err(Error::Validation {
            definition: definition.into(),
            axiom: format!("{table_name} is a {n}x{n} table"),
            witness: format!("{} rows", rows.len()),
        });
    }
    let flat: Vec<usize> = rows.iter().flatten().copied().collect();
    if let Some(p) = flat.iter().position(|&v| v >= n) {
        return Err(Error::Validation {
            definition: definition.into(),
            axiom: format!("{table_name} entries are elements"),
            witness: format!("({}, {}) = {}", p / n, p % n, flat[p]),
        });
    }
    Ok(flat)
}

fn invalid(definition: &str, axiom: &str, witness: String) -> Error {
    Error::Validation {
        definition: definition.into(),
        axiom: axiom.into(),
        witness,
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteMonoid {
    name: String,
    carrier: FinSet,
    op: Vec<usize>,
    unit: usize,
}

impl FiniteMonoid {
    pub fn new(name: impl Into<String>, carrier: FinSet, op: Vec<Vec<usize>>, unit: usize) -> Result<Self> {
        let name = name.into();
        let n = carrier.size() as usize;
        let op = check_table(&name, "op", n, &op)?;
        if unit >= n {
            return Err(invalid(&name, "unit is an element", unit.to_string()));
        }
        let m = FiniteMonoid { name, carrier, op, unit };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<()> {
        let n = self.size();
        for a in 0..n {
            if self.mul(self.unit, a) != a || self.mul(a, self.unit) != a {
                return Err(invalid(&self.name, "unit law", format!("a = {a}")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(invalid(&self.name, "associativity", format!("({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn carrier(&self) -> &FinSet {
        &self.carrier
    }

    pub fn size(&self) -> usize {
        self.carrier.size() as usize
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.op[a * self.size() + b]
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.op.chunks(self.size().max(1)).map(<[usize]>::to_vec).take(self.size()).collect()
    }

    /// A pair that does not commute, if any.
    pub fn non_commuting_pair(&self) -> Option<(usize, usize)> {
        let n = self.size();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find(|&(a, b)| self.mul(a, b) != self.mul(b, a))
    }

    pub fn is_commutative(&self) -> bool {
        self.non_commuting_pair().is_none()
    }

    pub fn trivial() -> Self {
        FiniteMonoid::new("trivial", FinSet::with_labels(vec!["e"]).unwrap(), vec![vec![0]], 0).unwrap()
    }

    /// Z/n under addition.
    pub fn cyclic(n: usize) -> Self {
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let op = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteMonoid::new(format!("z{n}"), FinSet::with_labels(labels).unwrap(), op, 0).unwrap()
    }

    /// Z/2 × Z/2.
    pub fn klein() -> Self {
        let op = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
        let labels = vec!["e", "a", "b", "ab"];
        FiniteMonoid::new("klein", FinSet::with_labels(labels).unwrap(), op, 0).unwrap()
    }

    /// The symmetric group on three letters, composing right to left:
    /// `mul(p, q)` is "first q, then p".
    pub fn symmetric3() -> Self {
        let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]];
        let labels = vec!["e", "(12)", "(13)", "(23)", "(123)", "(132)"];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let op = perms
            .iter()
            .map(|p| perms.iter().map(|q| index([p[q[0]], p[q[1]], p[q[2]]])).collect())
            .collect();
        FiniteMonoid::new("s3", FinSet::with_labels(labels).unwrap(), op, 0).unwrap()
    }

    /// A unit adjoined to a left-zero semigroup on `k` elements
    /// (`x·y = x` for non-units). Non-commutative once `k ≥ 2`.
    pub fn left_zero(k: usize) -> Self {
        let n = k + 1;
        let mut labels = vec!["e".to_string()];
        labels.extend((0..k).map(|i| format!("z{i}")));
        let op = (0..n).map(|a| (0..n).map(|b| if a == 0 { b } else { a }).collect()).collect();
        FiniteMonoid::new(format!("leftzero{k}"), FinSet::with_labels(labels).unwrap(), op, 0).unwrap()
    }

    pub fn builtin(name: &str) -> Option<Self> {
        Some(match name {
            "trivial" | "z1" => FiniteMonoid::trivial(),
            "klein" => FiniteMonoid::klein(),
            "s3" => FiniteMonoid::symmetric3(),
            _ => {
                if let Some(n) = name.strip_prefix('z').and_then(|s| s.parse().ok()) {
                    if (1..=64).contains(&n) {
                        return Some(FiniteMonoid::cyclic(n));
                    }
                }
                let k = name.strip_prefix("leftzero")?.parse().ok()?;
                if !(1..=16).contains(&k) {
                    return None;
                }
                FiniteMonoid::left_zero(k)
            }
        })
    }

    pub const BUILTIN_NAMES: &'static [&'static str] = &["trivial", "z2", "z3", "z4", "klein", "s3", "leftzero2", "leftzero3"];
}

impl fmt::Debug for FiniteMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteMonoid({}, order {})", self.name, self.size())
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteSemiring {
    name: String,
    carrier: FinSet,
    add: Vec<usize>,
    mul: Vec<usize>,
    zero: usize,
    one: usize,
}

impl FiniteSemiring {
    pub fn new(name: impl Into<String>, carrier: FinSet, add: Vec<Vec<usize>>, mul: Vec<Vec<usize>>, zero: usize, one: usize) -> Result<Self> {
        let name = name.into();
        let n = carrier.size() as usize;
        let add = check_table(&name, "add", n, &add)?;
        let mul = check_table(&name, "mul", n, &mul)?;
        if zero >= n || one >= n {
            return Err(invalid(&name, "zero and one are elements", format!("zero = {zero}, one = {one}")));
        }
        let s = FiniteSemiring {
            name,
            carrier,
            add,
            mul,
            zero,
            one,
        };
        s.validate()?;
        Ok(s)
    }

    fn validate(&self) -> Result<()> {
        let n = self.size();
        let name = &self.name;
        for a in 0..n {
            if self.add(self.zero, a) != a {
                return Err(invalid(name, "additive unit", format!("a = {a}")));
            }
            if self.mul(self.one, a) != a || self.mul(a, self.one) != a {
                return Err(invalid(name, "multiplicative unit", format!("a = {a}")));
            }
            if self.mul(self.zero, a) != self.zero || self.mul(a, self.zero) != self.zero {
                return Err(invalid(name, "zero annihilates", format!("a = {a}")));
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    return Err(invalid(name, "commutativity of add", format!("({a}, {b})")));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let w = format!("({a}, {b}, {c})");
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return Err(invalid(name, "associativity of add", w));
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(invalid(name, "associativity of mul", w));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return Err(invalid(name, "left distributivity", w));
                    }
                    if self.mul(self.add(a, b), c) != self.add(self.mul(a, c), self.mul(b, c)) {
                        return Err(invalid(name, "right distributivity", w));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn carrier(&self) -> &FinSet {
        &self.carrier
    }

    pub fn size(&self) -> usize {
        self.carrier.size() as usize
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size() + b]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size() + b]
    }

    pub fn label(&self, a: usize) -> String {
        self.carrier.label(a as u128)
    }

    pub fn non_commuting_pair(&self) -> Option<(usize, usize)> {
        let n = self.size();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find(|&(a, b)| self.mul(a, b) != self.mul(b, a))
    }

    pub fn is_commutative(&self) -> bool {
        self.non_commuting_pair().is_none()
    }

    fn tables(n: usize, add: impl Fn(usize, usize) -> usize, mul: impl Fn(usize, usize) -> usize) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
        let a = (0..n).map(|x| (0..n).map(|y| add(x, y)).collect()).collect();
        let m = (0..n).map(|x| (0..n).map(|y| mul(x, y)).collect()).collect();
        (a, m)
    }

    pub fn boolean() -> Self {
        let (add, mul) = Self::tables(2, |a, b| a | b, |a, b| a & b);
        FiniteSemiring::new("bool", FinSet::with_labels(vec!["0", "1"]).unwrap(), add, mul, 0, 1).unwrap()
    }

    pub fn f2() -> Self {
        let (add, mul) = Self::tables(2, |a, b| a ^ b, |a, b| a & b);
        FiniteSemiring::new("f2", FinSet::with_labels(vec!["0", "1"]).unwrap(), add, mul, 0, 1).unwrap()
    }

    /// Z/n.
    pub fn integers_mod(n: usize) -> Self {
        let (add, mul) = Self::tables(n, |a, b| (a + b) % n, |a, b| (a * b) % n);
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        FiniteSemiring::new(format!("z{n}"), FinSet::with_labels(labels).unwrap(), add, mul, 0, 1 % n).unwrap()
    }

    /// Upper-triangular 2×2 Boolean matrices `[[a, b], [0, c]]`, indexed
    /// as `4a + 2b + c`. Multiplication does not commute.
    pub fn upper_triangular() -> Self {
        let bits = |x: usize| (x >> 2 & 1, x >> 1 & 1, x & 1);
        let enc = |a: usize, b: usize, c: usize| 4 * a + 2 * b + c;
        let add = |x: usize, y: usize| x | y;
        let mul = |x: usize, y: usize| {
            let (a, b, c) = bits(x);
            let (a2, b2, c2) = bits(y);
            enc(a & a2, (a & b2) | (b & c2), c & c2)
        };
        let (add, mul) = Self::tables(8, add, mul);
        let labels: Vec<String> = (0..8)
            .map(|x| {
                let (a, b, c) = bits(x);
                format!("[{a}{b};0{c}]")
            })
            .collect();
        FiniteSemiring::new("tri", FinSet::with_labels(labels).unwrap(), add, mul, 0, enc(1, 0, 1)).unwrap()
    }

    pub fn builtin(name: &str) -> Option<Self> {
        Some(match name {
            "bool" => FiniteSemiring::boolean(),
            "f2" => FiniteSemiring::f2(),
            "tri" => FiniteSemiring::upper_triangular(),
            _ => {
                let n: usize = name.strip_prefix('z')?.parse().ok()?;
                if !(1..=64).contains(&n) {
                    return None;
                }
                FiniteSemiring::integers_mod(n)
            }
        })
    }

    pub const BUILTIN_NAMES: &'static [&'static str] = &["bool", "f2", "z4", "tri"];
}

impl fmt::Debug for FiniteSemiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteSemiring({}, order {})", self.name, self.size())
    }
}

/// Every monoid structure on `{0, .., n-1}` (labelled, not up to
/// isomorphism). Practical for `n ≤ 3`.
pub fn all_monoids(n: usize) -> Vec<FiniteMonoid> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let cells = n * n;
    let mut table = vec![0usize; cells];
    let total = n.checked_pow(cells as u32).expect("order too large");
    for code in 0..total {
        let mut c = code;
        for cell in table.iter_mut() {
            *cell = c % n;
            c /= n;
        }
        let rows: Vec<Vec<usize>> = table.chunks(n).map(<[usize]>::to_vec).collect();
        for unit in 0..n {
            let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
            if let Ok(m) = FiniteMonoid::new(format!("m{n}_{code}"), FinSet::with_labels(labels).unwrap(), rows.clone(), unit) {
                out.push(m);
                break;
            }
        }
    }
    out
}
