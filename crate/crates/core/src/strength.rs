//! Strength, costrength and the two double strengths of a monad on
//! finite sets, with exhaustive checks of the strength axioms and of
//! commutativity.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::finset::{product, product_map, Arrow, Budget, Elem, FinMap, FinSet};
use crate::monads::MonadInstance;
use crate::report::{diagram_check, first_disagreement, Check, LawReport, Verdict, Witness};

type StFn = dyn Fn(&FinSet, &FinSet) -> Result<Arrow> + Send + Sync;

/// `st : A × T(B) → T(A × B)` for a monad. The costrength is always
/// derived from `st` through the symmetry.
#[derive(Clone)]
pub struct StrengthData {
    monad: MonadInstance,
    st: Arc<StFn>,
    canonical: bool,
}

/// `A × B → B × A`
pub fn swap(a: &FinSet, b: &FinSet) -> Result<Arrow> {
    let src = product(a, b)?;
    let dst = product(b, a)?;
    let (na, nb) = (a.size(), b.size());
    Ok(Arrow::new(src.carrier, dst.carrier, move |x| (x % nb) * na + x / nb))
}

/// The strength every monad on sets carries: `st(a, t) = T(b ↦ (a, b))(t)`.
pub fn canonical_strength(t: &MonadInstance) -> StrengthData {
    let monad = t.clone();
    StrengthData {
        monad: t.clone(),
        st: Arc::new(move |a: &FinSet, b: &FinSet| {
            let tb = monad.obj(b)?;
            let dom = product(a, &tb)?.carrier;
            let ab = product(a, b)?.carrier;
            let cod = monad.obj(&ab)?;
            let (ntb, nb, nab) = (tb.size(), b.size(), ab.size());
            let m = monad.clone();
            Ok(Arrow::new(dom, cod, move |x| {
                let (ai, t) = (x / ntb, x % ntb);
                m.raw().fmap(nb, nab, &|bi| ai * nb + bi, t)
            }))
        }),
        canonical: true,
    }
}

impl StrengthData {
    /// A strength given by an arbitrary family, e.g. a corrupted one.
    pub fn custom(t: &MonadInstance, st: impl Fn(&FinSet, &FinSet) -> Result<Arrow> + Send + Sync + 'static) -> Self {
        StrengthData {
            monad: t.clone(),
            st: Arc::new(st),
            canonical: false,
        }
    }

    pub fn monad(&self) -> &MonadInstance {
        &self.monad
    }

    pub fn st_arrow(&self, a: &FinSet, b: &FinSet) -> Result<Arrow> {
        let st = (self.st)(a, b)?;
        let dom = product(a, &self.monad.obj(b)?)?.carrier;
        let cod = self.monad.obj(&product(a, b)?.carrier)?;
        if st.dom() != &dom || st.cod() != &cod {
            return Err(Error::type_mismatch(
                "st",
                format!("component at ({}, {}) has the wrong type", a.size(), b.size()),
            ));
        }
        Ok(st)
    }

    pub fn st_at(&self, a: &FinSet, b: &FinSet, budget: Budget) -> Result<FinMap> {
        self.st_arrow(a, b)?.tabulate(budget)
    }

    /// `st′ : T(A) × B → B × T(A) → T(B × A) → T(A × B)`
    pub fn st_co_arrow(&self, a: &FinSet, b: &FinSet) -> Result<Arrow> {
        let ta = self.monad.obj(a)?;
        swap(&ta, b)?.then(&self.st_arrow(b, a)?)?.then(&self.monad.fmap(&swap(b, a)?)?)
    }

    pub fn st_co_at(&self, a: &FinSet, b: &FinSet, budget: Budget) -> Result<FinMap> {
        self.st_co_arrow(a, b)?.tabulate(budget)
    }

    /// `dst = μ ∘ T(st′) ∘ st : T(A) × T(B) → T(A × B)`
    pub fn dst_arrow(&self, a: &FinSet, b: &FinSet) -> Result<Arrow> {
        if self.canonical {
            return self.fused_double(a, b, false);
        }
        self.dst_composite(a, b)
    }

    /// `dst′ = μ ∘ T(st) ∘ st′ : T(A) × T(B) → T(A × B)`
    pub fn dst_prime_arrow(&self, a: &FinSet, b: &FinSet) -> Result<Arrow> {
        if self.canonical {
            return self.fused_double(a, b, true);
        }
        self.dst_prime_composite(a, b)
    }

    /// `dst` as the literal composite. Needs `T(T(A) × B)` to be
    /// representable even though no element of it is stored.
    pub fn dst_composite(&self, a: &FinSet, b: &FinSet) -> Result<Arrow> {
        let ta = self.monad.obj(a)?;
        let ab = product(a, b)?.carrier;
        self.st_arrow(&ta, b)?.then(&self.monad.extend(&self.st_co_arrow(a, b)?, &ab)?)
    }

    pub fn dst_prime_composite(&self, a: &FinSet, b: &FinSet) -> Result<Arrow> {
        let tb = self.monad.obj(b)?;
        let ab = product(a, b)?.carrier;
        self.st_co_arrow(a, &tb)?.then(&self.monad.extend(&self.st_arrow(a, b)?, &ab)?)
    }

    // For the canonical strength, dst(s, t) runs t outside and s inside;
    // dst′ nests the other way round.
    fn fused_double(&self, a: &FinSet, b: &FinSet, prime: bool) -> Result<Arrow> {
        let (ta, tb) = (self.monad.obj(a)?, self.monad.obj(b)?);
        let dom = product(&ta, &tb)?.carrier;
        let cod = self.monad.obj(&product(a, b)?.carrier)?;
        let (na, nb, ntb) = (a.size(), b.size(), tb.size());
        let nab = na * nb;
        let m = self.monad.clone();
        Ok(Arrow::new(dom, cod, move |x| {
            let (s, u) = (x / ntb, x % ntb);
            let t = m.raw();
            if prime {
                t.bind(na, nab, s, &|ai| t.bind(nb, nab, u, &|bi| t.unit(nab, ai * nb + bi)))
            } else {
                t.bind(nb, nab, u, &|bi| t.bind(na, nab, s, &|ai| t.unit(nab, ai * nb + bi)))
            }
        }))
    }

    pub fn dst_at(&self, a: &FinSet, b: &FinSet, budget: Budget) -> Result<FinMap> {
        self.dst_arrow(a, b)?.tabulate(budget)
    }

    pub fn dst_prime_at(&self, a: &FinSet, b: &FinSet, budget: Budget) -> Result<FinMap> {
        self.dst_prime_arrow(a, b)?.tabulate(budget)
    }
}

impl fmt::Debug for StrengthData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StrengthData({})", self.monad.name())
    }
}

pub fn dst(t: &MonadInstance, a: &FinSet, b: &FinSet, budget: Budget) -> Result<FinMap> {
    canonical_strength(t).dst_at(a, b, budget)
}

pub fn dst_prime(t: &MonadInstance, a: &FinSet, b: &FinSet, budget: Budget) -> Result<FinMap> {
    canonical_strength(t).dst_prime_at(a, b, budget)
}

/// The unit-object and associativity coherence of `st`, and its
/// compatibility with `η` and `μ`.
pub fn check_strength_axioms(sd: &StrengthData, sets: &[FinSet], budget: Budget) -> LawReport {
    let t = sd.monad();
    let mut report = LawReport::new(format!("strength axioms for {}", t.name()));
    let one = FinSet::unit();
    for a in sets {
        let scope = vec![format!("A={}", a.size())];
        report.push(diagram_check("strength.unit_object", "strength.unit_object", scope, budget, || {
            let ta = t.obj(a)?;
            let l_ta = Arrow::new(product(&one, &ta)?.carrier, ta.clone(), |x| x);
            let l_a = Arrow::new(product(&one, a)?.carrier, a.clone(), |x| x);
            Ok((sd.st_arrow(&one, a)?.then(&t.fmap(&l_a)?)?, l_ta))
        }));
    }
    for a in sets {
        for b in sets {
            let scope = vec![format!("A={}", a.size()), format!("B={}", b.size())];
            report.push(diagram_check("strength.unit", "strength.unit", scope.clone(), budget, || {
                let lhs = product_map(&Arrow::identity(a), &t.unit_arrow(b)?)?.then(&sd.st_arrow(a, b)?)?;
                Ok((lhs, t.unit_arrow(&product(a, b)?.carrier)?))
            }));
            report.push(diagram_check("strength.multiplication", "strength.multiplication", scope, budget, || {
                let tb = t.obj(b)?;
                let ab = product(a, b)?.carrier;
                let st = sd.st_arrow(a, b)?;
                let lhs = product_map(&Arrow::identity(a), &t.mult_arrow(b)?)?.then(&st)?;
                let rhs = sd.st_arrow(a, &tb)?.then(&t.fmap(&st)?)?.then(&t.mult_arrow(&ab)?)?;
                Ok((lhs, rhs))
            }));
        }
    }
    for a in sets {
        for b in sets {
            for c in sets {
                let scope = vec![format!("A={}", a.size()), format!("B={}", b.size()), format!("C={}", c.size())];
                report.push(diagram_check("strength.associativity", "strength.associativity", scope, budget, || {
                    let tc = t.obj(c)?;
                    let ab = product(a, b)?.carrier;
                    let bc = product(b, c)?.carrier;
                    let ab_tc = product(&ab, &tc)?.carrier;
                    let a_btc = product(a, &product(b, &tc)?.carrier)?.carrier;
                    let abc_left = product(&ab, c)?.carrier;
                    let abc_right = product(a, &bc)?.carrier;
                    let assoc_tc = Arrow::new(ab_tc, a_btc, |x| x);
                    let assoc = Arrow::new(abc_left, abc_right, |x| x);
                    let lhs = sd.st_arrow(&ab, c)?.then(&t.fmap(&assoc)?)?;
                    let rhs = assoc_tc
                        .then(&product_map(&Arrow::identity(a), &sd.st_arrow(b, c)?)?)?
                        .then(&sd.st_arrow(a, &bc)?)?;
                    Ok((lhs, rhs))
                }));
            }
        }
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Commutativity {
    pub commutative: bool,
    /// First pair `(s, t) ∈ T(A) × T(B)` with `dst ≠ dst′`.
    pub witness: Option<Witness>,
    /// Pairs of test sets actually decided.
    pub scope: Vec<String>,
    pub report: LawReport,
}

/// `dst = dst′` on every pair of test sets within budget. The verdict
/// covers exactly the pairs listed in `scope`.
pub fn is_commutative(sd: &StrengthData, sets: &[FinSet], budget: Budget) -> Commutativity {
    let t = sd.monad();
    let mut report = LawReport::new(format!("commutativity of {}", t.name()));
    let mut scope = Vec::new();
    let mut witness = None;
    for a in sets {
        for b in sets {
            let pair = format!("A={},B={}", a.size(), b.size());
            let outcome = (|| {
                let d = sd.dst_arrow(a, b)?;
                let d2 = sd.dst_prime_arrow(a, b)?;
                Ok(first_disagreement(&d, &d2, budget)?.map(|x| describe_pair(t, a, b, x, d.apply(x), d2.apply(x))))
            })();
            let check = match outcome {
                Ok(Some(w)) => {
                    if witness.is_none() {
                        witness = Some(w.clone());
                    }
                    scope.push(pair.clone());
                    Check::new("dst = dst'", "strength.commutative", vec![pair], Verdict::Fail { witness: w })
                }
                Ok(None) => {
                    scope.push(pair.clone());
                    Check::new("dst = dst'", "strength.commutative", vec![pair], Verdict::Pass)
                }
                Err(e) => Check::from_error("dst = dst'", "strength.commutative", vec![pair], e),
            };
            report.push(check);
        }
    }
    Commutativity {
        commutative: witness.is_none(),
        witness,
        scope,
        report,
    }
}

fn describe_pair(t: &MonadInstance, a: &FinSet, b: &FinSet, x: Elem, lhs: Elem, rhs: Elem) -> Witness {
    let ntb = t.obj_size(b.size()).unwrap_or(1);
    let (s, u) = (x / ntb, x % ntb);
    let nb = b.size();
    let pair_label = |z: Elem| format!("({},{})", a.label(z / nb), b.label(z % nb));
    let nab = a.size() * nb;
    Witness::new(
        x,
        format!("({}, {})", t.describe(a, s), t.describe(b, u)),
        t.raw().describe(nab, lhs, &pair_label),
        t.raw().describe(nab, rhs, &pair_label),
    )
}
