use super::*;
use crate::algebras::{count_algebra_morphisms, enumerate_algebras, find_isomorphism, iso_classes};
use crate::bimorph::{dst_law, identity_law};
use crate::monads::{identity_monad, product_monad, semimodule_monad, FiniteSemiring};

fn b() -> Budget {
    Budget::default()
}

fn f2() -> MonadInstance {
    semimodule_monad(FiniteSemiring::f2())
}

fn boolean() -> MonadInstance {
    semimodule_monad(FiniteSemiring::boolean())
}

fn free(t: &MonadInstance, n: Elem) -> Algebra {
    Algebra::free_on(t, &FinSet::new(n)).unwrap()
}

fn targets(t: &MonadInstance, max: Elem) -> Vec<Algebra> {
    (1..=max)
        .flat_map(|c| iso_classes(&enumerate_algebras(t, &FinSet::new(c), b()).unwrap(), b()).unwrap())
        .collect()
}

#[test]
fn identity_law_classifies_the_algebra_itself() {
    let t = identity_monad();
    let law = identity_law(&t).unwrap();
    let a = free(&t, 3);
    for route in [ClassifyRoute::Auto, ClassifyRoute::Coequalizer] {
        let co = classifying_object_with(&FunctorHandle::identity(1), &law, std::slice::from_ref(&a), &t, route, b()).unwrap();
        assert_eq!(co.result().size(), 3);
        assert_eq!(co.universal(), &FinMap::identity(&FinSet::new(3)));
    }
}

#[test]
fn f2_tensor_dimensions() {
    // (ranks, |W|): dimensions multiply
    for (r, s, size) in [(1, 1, 2), (1, 2, 4), (0, 1, 1), (0, 0, 1)] {
        for route in [ClassifyRoute::Auto, ClassifyRoute::Coequalizer] {
            let co = tensor_with(&free(&f2(), r), &free(&f2(), s), route, b()).unwrap();
            assert_eq!(co.result().size(), size, "ranks ({r}, {s}) via {route:?}");
            assert_eq!(co.is_split(), route == ClassifyRoute::Auto);
            assert!(co.warnings().is_empty());
        }
    }
}

#[test]
fn hom_count_oracle_for_f2_line_tensor_line() {
    // independent of the quotient: every γ sees as many bilinear maps out
    // of F2 × F2 as linear maps out of the free module on one generator
    let line = free(&f2(), 1);
    let co = tensor_with(&line, &line, ClassifyRoute::Coequalizer, b()).unwrap();
    for gamma in targets(&f2(), 4) {
        let bilinear = co.bimorphisms(&gamma, b()).unwrap().len();
        assert_eq!(bilinear, count_algebra_morphisms(&line, &gamma, b()).unwrap());
        assert_eq!(bilinear, count_algebra_morphisms(co.result(), &gamma, b()).unwrap());
    }
}

#[test]
fn boolean_tensor_of_free_lines_is_a_free_line() {
    let line = free(&boolean(), 1);
    let co = tensor_with(&line, &line, ClassifyRoute::Coequalizer, b()).unwrap();
    assert_eq!(co.result().size(), 2);
    for gamma in targets(&boolean(), 4) {
        assert_eq!(co.bimorphisms(&gamma, b()).unwrap().len(), gamma.size() as usize);
    }
}

#[test]
fn universal_property_on_the_f2_tensor() {
    let line = free(&f2(), 1);
    for route in [ClassifyRoute::Auto, ClassifyRoute::Coequalizer] {
        let co = tensor_with(&line, &line, route, b()).unwrap();
        assert_eq!(co.hat(co.universal(), co.result(), b()).unwrap(), FinMap::identity(co.result().carrier()));
        for gamma in targets(&f2(), 4) {
            let v = co.verify_universal(&gamma, b()).unwrap();
            assert!(v.holds(), "{v:?}");
        }
    }
}

#[test]
fn universal_property_for_non_free_sources() {
    for t in [f2(), boolean()] {
        let algs = targets(&t, 2);
        for a in &algs {
            for c in &algs {
                let co = tensor(a, c, b()).unwrap();
                for gamma in targets(&t, 3) {
                    assert!(co.verify_universal(&gamma, b()).unwrap().holds());
                }
            }
        }
    }
}

#[test]
fn hat_rejects_non_bimorphisms() {
    let line = free(&f2(), 1);
    let co = tensor(&line, &line, b()).unwrap();
    let p1 = FinMap::new(FinSet::new(4), FinSet::new(2), vec![0, 0, 1, 1]).unwrap();
    assert!(matches!(co.hat(&p1, &line, b()), Err(Error::NotABimorphism(_))));
    let not_linear = FinMap::new(FinSet::new(2), FinSet::new(2), vec![1, 1]).unwrap();
    assert!(matches!(co.unhat(&not_linear, &line, b()), Err(Error::NotAMorphism(_))));
}

#[test]
fn lifting_morphisms_is_functorial() {
    let t = f2();
    let (line, plane) = (free(&t, 1), free(&t, 2));
    let x = tensor(&line, &line, b()).unwrap();
    let y = tensor(&plane, &line, b()).unwrap();
    let id = FinMap::identity(line.carrier());
    assert_eq!(
        x.lift_on_morphisms(&[id.clone(), id.clone()], &x, b()).unwrap(),
        FinMap::identity(x.result().carrier())
    );
    let into_plane = enumerate_algebra_morphisms(&line, &plane, b()).unwrap();
    let onto_line = enumerate_algebra_morphisms(&plane, &line, b()).unwrap();
    for f in &into_plane {
        let ff = x.lift_on_morphisms(&[f.clone(), id.clone()], &y, b()).unwrap();
        for g in &onto_line {
            let gg = y.lift_on_morphisms(&[g.clone(), id.clone()], &x, b()).unwrap();
            let gf = x.lift_on_morphisms(&[compose(g, f).unwrap(), id.clone()], &x, b()).unwrap();
            assert_eq!(gf, compose(&gg, &ff).unwrap());
        }
    }
}

#[test]
fn non_natural_law_is_caught() {
    let t = f2();
    let (line, plane) = (free(&t, 1), free(&t, 2));
    let law = dst_law(&t).unwrap().patched("dst with a dead component", |objs, a| {
        if objs[0].size() == 4 {
            Ok(Arrow::new(a.dom().clone(), a.cod().clone(), |_| 0))
        } else {
            Ok(a)
        }
    });
    let h = FunctorHandle::product();
    let x = classifying_object(&h, &law, &[line.clone(), line.clone()], &t, b()).unwrap();
    let y = classifying_object(&h, &law, &[plane.clone(), line.clone()], &t, b()).unwrap();
    let f = enumerate_algebra_morphisms(&line, &plane, b()).unwrap().pop().unwrap();
    let err = x.lift_on_morphisms(&[f, FinMap::identity(line.carrier())], &y, b()).unwrap_err();
    assert!(matches!(err, Error::NaturalitySquareFails { .. }), "{err}");
}

#[test]
fn free_isomorphisms() {
    let t = identity_monad();
    let iso = free_iso(
        &FunctorHandle::identity(1),
        &identity_law(&t).unwrap(),
        &ProductMonad::single(t.clone()),
        &t,
        &[FinSet::new(2)],
        b(),
    )
    .unwrap();
    assert_eq!(iso.forward, FinMap::identity(&FinSet::new(2)));

    let t = f2();
    let s = product_monad(vec![t.clone(), t.clone()]).unwrap();
    let law = dst_law(&t).unwrap();
    let pair = [FinSet::new(2), FinSet::new(2)];
    let iso = free_iso(&FunctorHandle::product(), &law, &s, &t, &pair, b()).unwrap();
    assert_eq!(iso.classifying.result().size(), 16);
    assert_eq!(iso.free.size(), 16);
    for (m, n) in [(1, 1), (0, 2)] {
        let iso = free_iso_with(
            &FunctorHandle::product(),
            &law,
            &s,
            &t,
            &[FinSet::new(m), FinSet::new(n)],
            ClassifyRoute::Coequalizer,
            b(),
        )
        .unwrap();
        assert!(!iso.classifying.is_split());
        assert_eq!(iso.classifying.result().size(), 1 << (m * n));
    }

    let t = boolean();
    let s = product_monad(vec![t.clone(), t.clone()]).unwrap();
    let law = crate::bimorph::coproduct_law(&t).unwrap();
    for (m, n) in [(0, 1), (1, 2), (2, 2)] {
        let iso = free_iso_with(
            &FunctorHandle::coproduct(),
            &law,
            &s,
            &t,
            &[FinSet::new(m), FinSet::new(n)],
            ClassifyRoute::Coequalizer,
            b(),
        )
        .unwrap();
        assert_eq!(iso.classifying.result().size(), 1 << (m + n));
    }
}

#[test]
fn free_iso_is_natural() {
    let t = f2();
    let s = product_monad(vec![t.clone(), t.clone()]).unwrap();
    let law = dst_law(&t).unwrap();
    let h = FunctorHandle::product();
    let small = free_iso(&h, &law, &s, &t, &[FinSet::new(1), FinSet::new(1)], b()).unwrap();
    let big = free_iso(&h, &law, &s, &t, &[FinSet::new(2), FinSet::new(1)], b()).unwrap();
    for f in all_maps(&FinSet::new(1), &FinSet::new(2), b()).unwrap() {
        let v = free_iso_naturality(&small, &big, &[f, FinMap::identity(&FinSet::new(1))], b()).unwrap();
        assert!(v.is_pass());
    }
}

#[test]
fn broken_unit_axiom_is_reported() {
    let t = f2();
    let s = product_monad(vec![t.clone(), t.clone()]).unwrap();
    let law = dst_law(&t)
        .unwrap()
        .patched("zero", |_, a| Ok(Arrow::new(a.dom().clone(), a.cod().clone(), |_| 0)));
    match free_iso(&FunctorHandle::product(), &law, &s, &t, &[FinSet::new(1), FinSet::new(1)], b()) {
        Err(Error::KleisliAxiomFails { axiom, .. }) => assert_eq!(axiom, "unit"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn coproducts_of_semilattices() {
    let t = boolean();
    let fixtures = targets(&t, 3);
    for a in &fixtures {
        for c in &fixtures {
            let co = coproduct_lift(a, c, b()).unwrap();
            for gamma in &fixtures {
                let v = verify_coproduct(&co, gamma, b()).unwrap();
                assert!(v.holds(), "{v:?}");
            }
        }
    }
    // free on A and B gives free on A + B
    let co = coproduct_lift(&free(&t, 1), &free(&t, 2), b()).unwrap();
    assert_eq!(co.result().size(), 8);
    // the initial algebra is a unit
    let initial = free(&t, 0);
    for a in &fixtures {
        let co = coproduct_lift(&initial, a, b()).unwrap();
        assert!(find_isomorphism(co.result(), a, b()).unwrap().is_some());
    }
}

#[test]
fn tensor_is_symmetric_up_to_isomorphism() {
    for t in [f2(), boolean()] {
        let algs = targets(&t, 2);
        for a in &algs {
            for c in &algs {
                let ac = tensor(a, c, b()).unwrap();
                let ca = tensor(c, a, b()).unwrap();
                assert!(find_isomorphism(ac.result(), ca.result(), b()).unwrap().is_some());
            }
        }
    }
}

#[test]
fn sources_must_be_algebras() {
    let t = f2();
    let one = FinSet::new(2);
    let bogus = Algebra::unchecked(&t, &one, FinMap::constant(&t.obj(&one).unwrap(), &one, 1).unwrap()).unwrap();
    assert!(matches!(tensor(&bogus, &bogus, b()), Err(Error::NotAnAlgebra(_))));
}
