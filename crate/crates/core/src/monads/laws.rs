use super::MonadInstance;
use crate::error::Result;
use crate::finset::{all_maps, Arrow, Budget, FinMap, FinSet};
use crate::report::{compare_arrows, diagram_check, Check, LawReport, Verdict};

/// Sets of sizes `0..=max`.
pub fn test_sets(max: u128) -> Vec<FinSet> {
    (0..=max).map(FinSet::new).collect()
}

fn map_note(f: &FinMap) -> String {
    format!("{:?}", f.table())
}

/// Runs `check` on every map `a → b`, stopping at the first failure.
pub(crate) fn for_all_maps(a: &FinSet, b: &FinSet, budget: Budget, mut check: impl FnMut(&FinMap) -> Result<Verdict>) -> Result<Verdict> {
    for f in all_maps(a, b, budget)? {
        if let Verdict::Fail { mut witness } = check(&f)? {
            witness.element = format!("f = {}, {}", map_note(&f), witness.element);
            return Ok(Verdict::Fail { witness });
        }
    }
    Ok(Verdict::Pass)
}

pub(crate) fn quantified_check(name: &str, anchor: &str, scope: Vec<String>, run: impl FnOnce() -> Result<Verdict>) -> Check {
    match run() {
        Ok(v) => Check::new(name, anchor, scope, v),
        Err(e) => Check::from_error(name, anchor, scope, e),
    }
}

/// Functoriality, naturality of η and μ, both unit laws and associativity
/// on every test set, plus agreement of the fused `bind` with `μ ∘ T(-)`.
pub fn check_monad_laws(t: &MonadInstance, sets: &[FinSet], budget: Budget) -> LawReport {
    let mut report = LawReport::new(format!("monad laws for {}", t.name()));
    for a in sets {
        let scope = vec![format!("A={}", a.size())];
        report.push(diagram_check("functor.identity", "monad.functor", scope.clone(), budget, || {
            Ok((t.fmap(&Arrow::identity(a))?, Arrow::identity(&t.obj(a)?)))
        }));
        report.push(diagram_check("unit.left", "monad.unit", scope.clone(), budget, || {
            let ta = t.obj(a)?;
            Ok((t.unit_arrow(&ta)?.then(&t.mult_arrow(a)?)?, Arrow::identity(&ta)))
        }));
        report.push(diagram_check("unit.right", "monad.unit", scope.clone(), budget, || {
            let ta = t.obj(a)?;
            Ok((t.fmap(&t.unit_arrow(a)?)?.then(&t.mult_arrow(a)?)?, Arrow::identity(&ta)))
        }));
        report.push(diagram_check("associativity", "monad.associativity", scope.clone(), budget, || {
            let mu = t.mult_arrow(a)?;
            let ta = t.obj(a)?;
            let lhs = t.fmap(&mu)?.then(&mu)?;
            let rhs = t.mult_arrow(&ta)?.then(&mu)?;
            Ok((lhs, rhs))
        }));
        report.push(diagram_check("bind.join", "monad.bind", scope.clone(), budget, || {
            let ta = t.obj(a)?;
            Ok((t.extend(&Arrow::identity(&ta), a)?, t.mult_arrow(a)?))
        }));
    }
    for a in sets {
        for b in sets {
            let scope = vec![format!("A={}", a.size()), format!("B={}", b.size()), "all maps A->B".into()];
            report.push(quantified_check("unit.naturality", "monad.unit", scope.clone(), || {
                let eta_a = t.unit_arrow(a)?;
                let eta_b = t.unit_arrow(b)?;
                for_all_maps(a, b, budget, |f| {
                    let f = f.to_arrow();
                    compare_arrows(&eta_a.then(&t.fmap(&f)?)?, &f.then(&eta_b)?, budget)
                })
            }));
            report.push(quantified_check("mult.naturality", "monad.multiplication", scope.clone(), || {
                let mu_a = t.mult_arrow(a)?;
                let mu_b = t.mult_arrow(b)?;
                budget.admit("T^2(A)", mu_a.dom().size())?;
                for_all_maps(a, b, budget, |f| {
                    let tf = t.fmap(&f.to_arrow())?;
                    compare_arrows(&mu_a.then(&tf)?, &t.fmap(&tf)?.then(&mu_b)?, budget)
                })
            }));
            report.push(quantified_check("bind.fmap", "monad.bind", scope.clone(), || {
                let eta_b = t.unit_arrow(b)?;
                for_all_maps(a, b, budget, |f| {
                    let f = f.to_arrow();
                    compare_arrows(&t.extend(&f.then(&eta_b)?, b)?, &t.fmap(&f)?, budget)
                })
            }));
        }
    }
    for a in sets {
        for b in sets {
            for c in sets {
                let scope = vec![
                    format!("A={}", a.size()),
                    format!("B={}", b.size()),
                    format!("C={}", c.size()),
                    "all maps".into(),
                ];
                report.push(quantified_check("functor.composition", "monad.functor", scope, || {
                    for_all_maps(a, b, budget, |f| {
                        for_all_maps(b, c, budget, |g| {
                            let (f, g) = (f.to_arrow(), g.to_arrow());
                            let lhs = t.fmap(&f.then(&g)?)?;
                            let rhs = t.fmap(&f)?.then(&t.fmap(&g)?)?;
                            compare_arrows(&lhs, &rhs, budget)
                        })
                    })
                }));
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::Elem;
    use crate::monads::{identity_monad, maybe_monad, semimodule_monad, writer_monad, FiniteMonoid, FiniteSemiring, Monad, SemimoduleMonad};

    #[test]
    fn identity_passes_up_to_three() {
        let r = check_monad_laws(&identity_monad(), &test_sets(3), Budget::default());
        assert!(r.passed(), "{r}");
        assert_eq!(r.skipped().count(), 0);
    }

    #[test]
    fn maybe_and_writer_pass() {
        for t in [
            maybe_monad(),
            writer_monad(FiniteMonoid::symmetric3()),
            writer_monad(FiniteMonoid::left_zero(2)),
        ] {
            let r = check_monad_laws(&t, &test_sets(2), Budget::default());
            assert!(r.passed(), "{r}");
            assert_eq!(r.skipped().count(), 0);
        }
    }

    #[test]
    fn f2_passes_with_full_associativity() {
        let t = semimodule_monad(FiniteSemiring::f2());
        assert_eq!(t.power(&FinSet::new(2), 3).unwrap().size(), 1 << 16);
        let r = check_monad_laws(&t, &test_sets(2), Budget::default());
        assert!(r.passed(), "{r}");
        assert_eq!(r.skipped().count(), 0);
    }

    /// `M_F2` with one entry of `μ_1` changed.
    #[derive(Debug)]
    struct Corrupted(SemimoduleMonad);

    impl Monad for Corrupted {
        fn name(&self) -> String {
            "corrupted".into()
        }
        fn size_of(&self, n: Elem) -> Option<Elem> {
            self.0.size_of(n)
        }
        fn fmap(&self, n: Elem, m: Elem, f: &dyn Fn(Elem) -> Elem, t: Elem) -> Elem {
            self.0.fmap(n, m, f, t)
        }
        fn unit(&self, n: Elem, x: Elem) -> Elem {
            self.0.unit(n, x)
        }
        fn join(&self, n: Elem, tt: Elem) -> Elem {
            // 0 + a over T(1) = {0, a} flattens to a; send it to 0 instead
            if n == 1 && tt == 3 {
                0
            } else {
                self.0.join(n, tt)
            }
        }
        fn bind(&self, n: Elem, m: Elem, t: Elem, k: &dyn Fn(Elem) -> Elem) -> Elem {
            self.0.bind(n, m, t, k)
        }
        fn describe(&self, n: Elem, t: Elem, inner: &dyn Fn(Elem) -> String) -> String {
            self.0.describe(n, t, inner)
        }
    }

    #[test]
    fn corrupted_join_fails_associativity_with_witness() {
        let t = crate::monads::MonadInstance::new(Corrupted(SemimoduleMonad::from_semiring(FiniteSemiring::f2())));
        let r = check_monad_laws(&t, &test_sets(2), Budget::default());
        let assoc = r
            .checks
            .iter()
            .find(|c| c.name == "associativity" && c.fails())
            .expect("associativity should fail");
        assert_eq!(assoc.scope, vec!["A=1".to_string()]);
        let w = assoc.verdict.witness().unwrap();
        assert!(!w.index.is_empty());
        // the unit laws never look at the changed entry
        assert!(r.checks.iter().filter(|c| c.name.starts_with("unit.")).all(|c| !c.fails()));
    }
}
