use std::sync::Arc;

use twocat::category::{functor_category, precompose};
use twocat::comma::comma;
use twocat::fib::{
    cartesian_lift, chevalley_check, choose_cleavage, closure_suite, is_cartesian, is_discrete_fibration,
    is_discrete_fibration_span, is_discrete_opfibration, is_fibration, is_opfibration,
    representable_fibration_check, AdjointSearch,
};
use twocat::{corpus, probes, Budget, Error, FinCategory, FinFunctor, Verdict};

fn arc(c: FinCategory) -> Arc<FinCategory> {
    Arc::new(c)
}

/// Functors used across the tests: seeded maps, comma projections, identities.
fn functor_corpus() -> Vec<FinFunctor> {
    let mut out = corpus::random_functors(17, 40, 3);
    for (f, g) in corpus::random_cospans_bounded(23, 12, 3, 10) {
        let sq = comma(&f, &g).unwrap();
        out.push(sq.p.clone());
        out.push(sq.q.clone());
    }
    for (_, c) in corpus::named_categories() {
        out.push(FinFunctor::identity(arc(c)));
    }
    out
}

#[test]
fn isomorphisms_and_identities_are_cartesian() {
    for f in functor_corpus() {
        for m in 0..f.dom.num_morphisms() {
            if f.dom.is_iso(m) {
                assert!(is_cartesian(&f, m).is_some(), "{:?} {}", f, f.dom.morphism_id(m));
            }
        }
    }
}

#[test]
fn cartesian_two_of_three() {
    for f in functor_corpus() {
        let a = &f.dom;
        let cart: Vec<bool> = (0..a.num_morphisms()).map(|m| is_cartesian(&f, m).is_some()).collect();
        for a2 in 0..a.num_morphisms() {
            if !cart[a2] {
                continue;
            }
            for a1 in a.in_morphisms(a.src(a2)) {
                let c = a.compose(a2, a1);
                assert_eq!(cart[a1], cart[c]);
            }
        }
    }
}

#[test]
fn cartesian_over_an_iso_is_an_iso() {
    for f in functor_corpus() {
        for m in 0..f.dom.num_morphisms() {
            if f.cod.is_iso(f.mor(m)) && is_cartesian(&f, m).is_some() {
                assert!(f.dom.is_iso(m));
            }
        }
    }
}

/// In a poset the greatest lower bound of x and y, found by scanning.
fn meet(c: &FinCategory, x: usize, y: usize) -> Option<usize> {
    let le = |a: usize, b: usize| !c.hom(a, b).is_empty();
    let lower: Vec<usize> = (0..c.num_objects()).filter(|&z| le(z, x) && le(z, y)).collect();
    lower.iter().copied().find(|&z| lower.iter().all(|&w| le(w, z)))
}

#[test]
fn codomain_fibration_cartesian_arrows_are_pullbacks() {
    let b = Budget::default();
    let two = arc(FinCategory::chain(2));
    let one = arc(FinCategory::terminal());
    for c in [corpus::commutative_square(), FinCategory::chain(3), corpus::span_shape()] {
        let c = arc(c);
        let arrows = functor_category(&two, &c, &b).unwrap();
        let objs = functor_category(&one, &c, &b).unwrap();
        let cod = precompose(&arrows, &objs, &FinFunctor::point(two.clone(), 1)).unwrap();
        for t in 0..arrows.category.num_morphisms() {
            let nt = arrows.transformation(t);
            let (x, u) = (nt.dom.ob(0), nt.dom.ob(1));
            let y = nt.cod.ob(0);
            let expected = meet(&c, y, u) == Some(x);
            assert_eq!(is_cartesian(&cod, t).is_some(), expected, "{}", arrows.category.morphism_id(t));
        }
    }
}

#[test]
fn basic_fibration_examples() {
    for (_, c) in corpus::named_categories() {
        let id = FinFunctor::identity(arc(c));
        assert!(is_fibration(&id) && is_opfibration(&id));
    }
    let d2 = FinFunctor::to_terminal(arc(FinCategory::discrete_n(2)));
    assert!(is_fibration(&d2));
    let c2 = arc(FinCategory::chain(2));
    let top = FinFunctor::point(c2.clone(), 1);
    assert!(!is_fibration(&top));
    assert!(is_opfibration(&top));
    let arrow = c2.morphism("0->1").unwrap();
    assert_eq!(cartesian_lift(&top, arrow, 0), None);
    assert!(matches!(choose_cleavage(&top), Err(Error::NotAFibration { .. })));
    let bottom = FinFunctor::point(c2, 0);
    assert!(is_fibration(&bottom) && !is_opfibration(&bottom));
}

#[test]
fn cleavage_entries_are_cartesian_lifts() {
    for f in functor_corpus() {
        let Ok(cl) = choose_cleavage(&f) else {
            assert!(!is_fibration(&f));
            continue;
        };
        assert!(is_fibration(&f));
        for (&(beta, a), &m) in &cl.lifts {
            assert_eq!(f.mor(m), beta);
            assert_eq!(f.dom.tgt(m), a);
            assert!(is_cartesian(&f, m).is_some());
            let rivals = f.dom.in_morphisms(a).filter(|&x| f.mor(x) == beta && is_cartesian(&f, x).is_some());
            assert!(rivals.into_iter().all(|x| f.dom.morphism_id(m) <= f.dom.morphism_id(x)));
        }
    }
}

#[test]
fn chevalley_identity_and_point() {
    let b = Budget::default();
    let c2 = arc(FinCategory::chain(2));
    let id = FinFunctor::identity(c2.clone());
    let rep = chevalley_check(&id, &b).unwrap();
    assert!(rep.is_fibration && rep.adjoint_found() && rep.verdict == Verdict::Pass);
    if let AdjointSearch::Found { unit, .. } = &rep.search {
        assert!(unit.is_invertible());
    }
    let top = FinFunctor::point(c2, 1);
    let rep = chevalley_check(&top, &b).unwrap();
    assert!(!rep.is_fibration);
    assert!(matches!(rep.search, AdjointSearch::NotFound));
    assert_eq!(rep.verdict, Verdict::Pass);
}

#[test]
fn chevalley_agrees_on_the_corpus() {
    let b = Budget::default();
    let mut fibrations = 0;
    for f in functor_corpus() {
        if f.cod.num_objects() > 3 {
            continue;
        }
        let rep = chevalley_check(&f, &b).unwrap();
        assert_ne!(rep.verdict, Verdict::Fail, "{f:?}");
        if rep.is_fibration {
            fibrations += 1;
        }
    }
    assert!(fibrations >= 10);
}

#[test]
fn tight_budget_is_inconclusive_for_a_fibration() {
    let c3 = arc(FinCategory::chain(3));
    let rep = chevalley_check(&FinFunctor::identity(c3), &Budget::with_cap(2)).unwrap();
    assert_eq!(rep.verdict, Verdict::Inconclusive);
}

#[test]
fn identity_spans() {
    let one = arc(FinCategory::terminal());
    let id = FinFunctor::identity(one);
    assert!(is_discrete_fibration_span(&id, &id).is_some());
    for (name, c) in corpus::named_categories() {
        let c = arc(c);
        let id = FinFunctor::identity(c.clone());
        assert_eq!(is_discrete_fibration_span(&id, &id).is_some(), c.is_discrete(), "{name}");
    }
}

#[test]
fn comma_spans_are_discrete_fibrations() {
    for (f, g) in corpus::random_cospans(29, 40, 4) {
        let sq = comma(&f, &g).unwrap();
        let cert = is_discrete_fibration_span(&sq.p, &sq.q).expect("comma span");
        assert!(is_fibration(cert.d()));
        assert!(is_opfibration(cert.c()));
    }
}

#[test]
fn one_legged_discrete_fibrations() {
    // the slice of a ← c → b over a
    let span = arc(corpus::span_shape());
    let id = FinFunctor::identity(span.clone());
    let slice = comma(&id, &FinFunctor::point(span.clone(), 0)).unwrap();
    assert!(is_discrete_fibration(&slice.p));
    assert!(!is_discrete_opfibration(&slice.p));
    let c2 = arc(FinCategory::chain(2));
    let id = FinFunctor::identity(c2.clone());
    let coslice = comma(&FinFunctor::point(c2.clone(), 0), &id).unwrap();
    assert!(is_discrete_opfibration(&coslice.q));
    assert!(!is_discrete_fibration(&FinFunctor::to_terminal(c2)));
}

#[test]
fn closure_under_composition_and_pullback() {
    let report = closure_suite(&functor_corpus()).unwrap();
    assert!(report.all_pass(), "{:?}", report.failures().collect::<Vec<_>>());
    assert!(report.checks.iter().filter(|c| c.id.contains("/compose/")).count() >= 10);
    assert!(report.checks.iter().filter(|c| c.id.contains("/pullback/")).count() >= 30);
}

#[test]
fn representable_checks_on_tiny_probes() {
    let b = Budget::default();
    for (f, g) in corpus::random_cospans_bounded(31, 6, 3, 6) {
        let sq = comma(&f, &g).unwrap();
        let r = representable_fibration_check(&sq.p, &probes::tiny(), &b).unwrap();
        assert!(r.all_pass(), "{:?}", r.failures().collect::<Vec<_>>());
    }
    let top = FinFunctor::point(arc(FinCategory::chain(2)), 1);
    let r = representable_fibration_check(&top, &probes::tiny(), &b).unwrap();
    assert!(!r.all_pass());
}
