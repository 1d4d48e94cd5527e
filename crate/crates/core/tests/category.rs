use std::collections::BTreeMap;
use std::sync::Arc;

use proptest::prelude::*;
use twocat::category::{
    find_isomorphism, functor_category, validate_category, FunctorSearch, NatSearch, RawCategory, RawMorphism,
};
use twocat::{corpus, Budget, FinCategory, FinFunctor, Error};

fn arc(c: FinCategory) -> Arc<FinCategory> {
    Arc::new(c)
}

/// Every pair of maps (objects, morphisms), kept when functorial.
fn brute_force_functors(a: &FinCategory, b: &FinCategory) -> usize {
    let (na, ma, nb, mb) = (a.num_objects(), a.num_morphisms(), b.num_objects(), b.num_morphisms());
    let mut count = 0;
    let obj_total = nb.pow(na as u32);
    for oc in 0..obj_total {
        let obj: Vec<usize> = (0..na).map(|i| (oc / nb.pow(i as u32)) % nb).collect();
        let mor_total = mb.pow(ma as u32);
        for mc in 0..mor_total {
            let mor: Vec<usize> = (0..ma).map(|i| (mc / mb.pow(i as u32)) % mb).collect();
            let typed = (0..ma).all(|u| b.src(mor[u]) == obj[a.src(u)] && b.tgt(mor[u]) == obj[a.tgt(u)]);
            if !typed {
                continue;
            }
            let ids = (0..na).all(|x| mor[a.id(x)] == b.id(obj[x]));
            let comp = (0..ma).all(|f| {
                (0..ma).all(|g| match a.try_compose(g, f) {
                    Some(h) => b.compose(mor[g], mor[f]) == mor[h],
                    None => true,
                })
            });
            if ids && comp {
                count += 1;
            }
        }
    }
    count
}

fn raw(objects: &[&str], morphisms: &[(&str, &str, &str)], identity: &[(&str, &str)], compose: &[[&str; 3]]) -> RawCategory {
    RawCategory {
        objects: objects.iter().map(|s| s.to_string()).collect(),
        morphisms: morphisms
            .iter()
            .map(|(i, s, t)| RawMorphism { id: i.to_string(), src: s.to_string(), tgt: t.to_string() })
            .collect(),
        identity: identity.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect::<BTreeMap<_, _>>(),
        compose: compose.iter().map(|e| e.map(|s| s.to_string())).collect(),
    }
}

#[test]
fn terminal_validates() {
    assert!(validate_category(&FinCategory::terminal().to_raw()).is_empty());
}

#[test]
fn wrong_target_gives_one_typing_violation() {
    let r = raw(
        &["a", "b", "c"],
        &[("1a", "a", "a"), ("1b", "b", "b"), ("1c", "c", "c"), ("f", "a", "b"), ("g", "b", "c"), ("h", "a", "c")],
        &[("a", "1a"), ("b", "1b"), ("c", "1c")],
        &[
            ["1a", "1a", "1a"],
            ["1b", "1b", "1b"],
            ["1c", "1c", "1c"],
            ["f", "1a", "f"],
            ["1b", "f", "f"],
            ["g", "1b", "g"],
            ["1c", "g", "g"],
            ["h", "1a", "h"],
            ["1c", "h", "h"],
            ["g", "f", "f"],
        ],
    );
    let report = validate_category(&r);
    assert_eq!(report.len(), 1, "{:?}", report);
    assert_eq!(report.typing_violations(), 1);
    assert!(matches!(FinCategory::from_raw(&r), Err(Error::InvalidCategory(_))));
}

#[test]
fn parallel_pair_validates_with_four_morphisms() {
    let c = FinCategory::free_on_graph(&["0", "1"], &[("u", 0, 1), ("v", 0, 1)]).unwrap();
    assert_eq!(c.num_morphisms(), 4);
    assert!(validate_category(&c.to_raw()).is_empty());
}

#[test]
fn validation_finds_associativity_and_identity_failures() {
    // a monoid table that is not associative: {1, x, y} with x·y = x, y·x = y, x·x = y
    let r = raw(
        &["*"],
        &[("1", "*", "*"), ("x", "*", "*"), ("y", "*", "*")],
        &[("*", "1")],
        &[
            ["1", "1", "1"],
            ["1", "x", "x"],
            ["x", "1", "x"],
            ["1", "y", "y"],
            ["y", "1", "y"],
            ["x", "x", "y"],
            ["x", "y", "x"],
            ["y", "x", "y"],
            ["y", "y", "y"],
        ],
    );
    let report = validate_category(&r);
    assert!(report.violations.iter().any(|v| matches!(v, twocat::category::Violation::Associativity { .. })));
    let missing = raw(&["a"], &[("1a", "a", "a")], &[], &[]);
    assert!(validate_category(&missing).len() >= 2);
}

#[test]
fn opposite_examples() {
    let t = FinCategory::terminal();
    assert_eq!(t.opposite(), t);
    let c2 = FinCategory::chain(2);
    let op = c2.opposite();
    let arrow = op.morphism("0->1").unwrap();
    assert_eq!(op.object_id(op.src(arrow)), "1");
    assert_eq!(op.object_id(op.tgt(arrow)), "0");
    let flipped = FinCategory::preorder(&["0", "1"], &[(1, 0)]);
    assert!(find_isomorphism(&arc(op), &arc(flipped), &Budget::default()).unwrap().is_some());
}

#[test]
fn functor_category_examples() {
    let b = Budget::default();
    let c2 = arc(FinCategory::chain(2));
    let one = arc(FinCategory::terminal());
    let fc = functor_category(&c2, &c2, &b).unwrap();
    assert_eq!(fc.category.num_objects(), 3);
    assert!(fc.category.is_preorder());
    assert!(find_isomorphism(&fc.category, &arc(FinCategory::chain(3)), &b).unwrap().is_some());
    let fc1 = functor_category(&one, &c2, &b).unwrap();
    assert!(find_isomorphism(&fc1.category, &c2, &b).unwrap().is_some());
    let to1 = functor_category(&c2, &one, &b).unwrap();
    assert!(find_isomorphism(&to1.category, &one, &b).unwrap().is_some());
}

#[test]
fn functor_enumeration_matches_brute_force() {
    let b = Budget::default();
    let cats = vec![
        FinCategory::chain(2),
        FinCategory::chain(3),
        FinCategory::discrete_n(2),
        FinCategory::free_on_graph(&["0", "1"], &[("u", 0, 1), ("v", 0, 1)]).unwrap(),
        corpus::idempotent_monoid(),
        corpus::walking_iso(),
    ];
    for a in &cats {
        for c in &cats {
            if a.num_morphisms() > 4 || c.num_morphisms() > 6 {
                continue;
            }
            let fast = FunctorSearch::new(arc(a.clone()), arc(c.clone())).count(&b).unwrap();
            assert_eq!(fast, brute_force_functors(a, c), "{a:?} -> {c:?}");
        }
    }
}

#[test]
fn product_examples() {
    let b = Budget::default();
    let c2 = FinCategory::chain(2);
    let p = c2.product(&c2);
    assert_eq!((p.num_objects(), p.num_morphisms()), (4, 9));
    let one_b = FinCategory::terminal().product(&c2);
    assert!(find_isomorphism(&arc(one_b), &arc(c2.clone()), &b).unwrap().is_some());
    assert_eq!(c2.hom_set("0", "1").unwrap().len(), 1);
    assert_eq!(c2.hom_set("0", "7"), Err(Error::UnknownObject("7".into())));
}

#[test]
fn json_round_trip() {
    for c in corpus::named_categories() {
        let back = FinCategory::from_json(&c.1.to_json()).unwrap();
        assert_eq!(back, c.1);
    }
    let c2 = arc(FinCategory::chain(2));
    let f = FinFunctor::constant(c2.clone(), c2.clone(), 1);
    assert_eq!(FinFunctor::from_json(&f.to_json()).unwrap(), f);
}

#[test]
fn cap_and_cancel_stop_enumeration() {
    let c = arc(FinCategory::chain(4));
    let small = Budget::with_cap(10);
    assert!(matches!(functor_category(&c, &c, &small), Err(Error::CardinalityExceeded { .. })));
    let cancelled = Budget::default();
    cancelled.cancel.cancel();
    assert_eq!(FunctorSearch::new(c.clone(), c).count(&cancelled), Err(Error::Cancelled));
}

#[test]
fn corpus_categories_are_valid() {
    for (name, c) in corpus::named_categories() {
        assert!(validate_category(&c.to_raw()).is_empty(), "{name}");
        assert!(validate_category(&c.opposite().to_raw()).is_empty(), "{name}");
        assert_eq!(c.opposite().opposite(), c, "{name}");
    }
}

#[test]
fn nat_search_counts_on_chain() {
    let b = Budget::default();
    let c2 = arc(FinCategory::chain(2));
    let bot = FinFunctor::constant(c2.clone(), c2.clone(), 0);
    let top = FinFunctor::constant(c2.clone(), c2.clone(), 1);
    assert_eq!(NatSearch::new(&bot, &top).count(&b).unwrap(), 1);
    assert_eq!(NatSearch::new(&top, &bot).count(&b).unwrap(), 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_categories_are_valid(seed in 0u64..10_000) {
        let c = corpus::random_category(seed, 4);
        prop_assert!(validate_category(&c.to_raw()).is_empty());
        prop_assert!(validate_category(&c.opposite().to_raw()).is_empty());
    }

    #[test]
    fn product_hom_sizes_multiply(s1 in 0u64..1000, s2 in 0u64..1000) {
        let a = corpus::random_category(s1, 3);
        let b = corpus::random_category(s2, 3);
        let p = a.product(&b);
        for x in 0..a.num_objects() {
            for y in 0..a.num_objects() {
                for u in 0..b.num_objects() {
                    for v in 0..b.num_objects() {
                        let nb = b.num_objects();
                        prop_assert_eq!(p.hom(x * nb + u, y * nb + v).len(), a.hom(x, y).len() * b.hom(u, v).len());
                    }
                }
            }
        }
    }
}
