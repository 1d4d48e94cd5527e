use std::collections::HashSet;
use std::sync::Arc;

use twocat::category::find_isomorphism;
use twocat::comma::{
    comma, comma_over_base, pasting_check, pseudo_pullback, strict_pullback, verify_lax_pullback, CommaSquare,
    Flavor, PastingData,
};
use twocat::{corpus, probes, Budget, Error, FinCategory, FinFunctor};

fn arc(c: FinCategory) -> Arc<FinCategory> {
    Arc::new(c)
}

fn iso(a: &Arc<FinCategory>, b: &Arc<FinCategory>) -> bool {
    find_isomorphism(a, b, &Budget::default()).unwrap().is_some()
}

/// Independent count of comma objects: Σ_{a,c} |hom(fa, gc)|.
fn triple_count(f: &FinFunctor, g: &FinFunctor) -> usize {
    let mut n = 0;
    for a in 0..f.dom.num_objects() {
        for c in 0..g.dom.num_objects() {
            n += f.cod.hom(f.ob(a), g.ob(c)).len();
        }
    }
    n
}

#[test]
fn comma_of_identities_on_terminal_is_terminal() {
    let one = arc(FinCategory::terminal());
    let id = FinFunctor::identity(one.clone());
    let sq = comma(&id, &id).unwrap();
    assert!(iso(&sq.apex, &one));
}

#[test]
fn comma_of_points_counts_homs() {
    let c2 = arc(FinCategory::chain(2));
    let p0 = FinFunctor::point(c2.clone(), 0);
    let p1 = FinFunctor::point(c2.clone(), 1);
    assert_eq!(comma(&p0, &p1).unwrap().apex.num_objects(), 1);
    assert_eq!(comma(&p1, &p0).unwrap().apex.num_objects(), 0);
    let id = FinFunctor::identity(c2.clone());
    let aa = comma(&id, &id).unwrap();
    assert_eq!(aa.apex.num_objects(), 3);
}

#[test]
fn cospan_mismatch_is_reported() {
    let c2 = arc(FinCategory::chain(2));
    let c3 = arc(FinCategory::chain(3));
    let f = FinFunctor::identity(c2);
    let g = FinFunctor::identity(c3);
    assert_eq!(comma(&f, &g).unwrap_err(), Error::CospanMismatch);
}

#[test]
fn strict_and_pseudo_examples() {
    for (_, c) in corpus::named_categories() {
        let c = arc(c);
        let id = FinFunctor::identity(c.clone());
        let sq = strict_pullback(&id, &id).unwrap();
        assert!(iso(&sq.apex, &c));
    }
    let two = arc(FinCategory::discrete_n(2));
    let a = FinFunctor::point(two.clone(), 0);
    let b = FinFunctor::point(two, 1);
    assert_eq!(strict_pullback(&a, &b).unwrap().apex.num_objects(), 0);
}

#[test]
fn pseudo_equals_strict_over_posets() {
    for (i, (f, g)) in corpus::random_cospans(7, 40, 4).into_iter().enumerate() {
        let ps = pseudo_pullback(&f, &g).unwrap();
        let st = strict_pullback(&f, &g).unwrap();
        let skeletal_poset = f.cod.is_preorder()
            && (0..f.cod.num_morphisms()).all(|m| !f.cod.is_iso(m) || f.cod.is_identity(m));
        if skeletal_poset {
            assert_eq!(ps.object_ids(), st.object_ids(), "cospan {i}");
        }
    }
}

#[test]
fn strict_in_pseudo_in_lax() {
    for (f, g) in corpus::random_cospans(11, 40, 4) {
        let lax = comma(&f, &g).unwrap();
        let ps = pseudo_pullback(&f, &g).unwrap();
        let st = strict_pullback(&f, &g).unwrap();
        assert_eq!(lax.apex.num_objects(), triple_count(&f, &g));
        let lo: HashSet<_> = lax.object_ids().into_iter().collect();
        let po: HashSet<_> = ps.object_ids().into_iter().collect();
        let so: HashSet<_> = st.object_ids().into_iter().collect();
        assert!(so.is_subset(&po) && po.is_subset(&lo));
        let lm: HashSet<_> = lax.morphism_ids().into_iter().collect();
        let pm: HashSet<_> = ps.morphism_ids().into_iter().collect();
        let sm: HashSet<_> = st.morphism_ids().into_iter().collect();
        assert!(sm.is_subset(&pm) && pm.is_subset(&lm));
    }
}

#[test]
fn corpus_squares_pass_on_tiny_probes() {
    let b = Budget::default();
    for (f, g) in corpus::random_cospans(3, 25, 3) {
        for flavor in [Flavor::Lax, Flavor::Pseudo, Flavor::Strict] {
            let sq = twocat::comma::pullback_of_flavor(&f, &g, flavor).unwrap();
            let r = verify_lax_pullback(&sq, &probes::tiny(), &b).unwrap();
            assert!(r.all_pass(), "{:?}", r.failures().collect::<Vec<_>>());
        }
    }
}

#[test]
fn mutilated_apex_fails_existence() {
    let c2 = arc(FinCategory::chain(2));
    let id = FinFunctor::identity(c2.clone());
    let sq = comma(&id, &id).unwrap();
    let cut = sq.restrict(|x| x != 1, Flavor::Lax).unwrap();
    let r = verify_lax_pullback(&cut, &probes::tiny(), &Budget::default()).unwrap();
    let bad = r.failures().next().expect("a failure");
    assert!(bad.id.ends_with("1-dim"));
    assert!(bad.witness.as_ref().unwrap().contains("factors through 0"));
}

#[test]
fn comma_over_base_examples() {
    // base 1 recovers the comma
    for (f, g) in corpus::random_cospans(5, 10, 3) {
        let t = FinFunctor::to_terminal(f.cod.clone());
        let (sq, _) = comma_over_base(&f, &g, &t.after(&f).unwrap(), &t, &t.after(&g).unwrap()).unwrap();
        assert_eq!(sq.object_ids(), comma(&f, &g).unwrap().object_ids());
        let idb = FinFunctor::identity(f.cod.clone());
        let (sq, _) = comma_over_base(&f, &g, &f, &idb, &g).unwrap();
        assert_eq!(sq.object_ids(), strict_pullback(&f, &g).unwrap().object_ids());
    }
    // 3-chain over the 2-chain collapsing 0 and 1
    let c3 = arc(FinCategory::chain(3));
    let c2 = arc(FinCategory::chain(2));
    let beta = FinFunctor::from_ids(
        c3.clone(),
        c2.clone(),
        &[("0", "0"), ("1", "0"), ("2", "1")],
        &[("0->1", "id_0"), ("1->2", "0->1"), ("0->2", "0->1")],
    )
    .unwrap();
    let id = FinFunctor::identity(c3.clone());
    let (sq, to_base) = comma_over_base(&id, &id, &beta, &beta, &beta).unwrap();
    let strict = strict_pullback(&id, &id).unwrap().apex.num_objects();
    let lax = comma(&id, &id).unwrap().apex.num_objects();
    assert_eq!((strict, sq.apex.num_objects(), lax), (3, 4, 6));
    assert!(to_base.is_valid());
    let wrong = FinFunctor::constant(c3.clone(), c2, 1);
    assert!(matches!(comma_over_base(&id, &id, &wrong, &beta, &beta), Err(Error::TriangleMismatch(_))));
}

fn pasting_instance(f: &FinFunctor, g: &FinFunctor, h: &FinFunctor) -> PastingData {
    let back = comma(f, g).unwrap();
    let front = strict_pullback(h, &back.p).unwrap();
    PastingData { back, h: h.clone(), x: front.q.clone(), y: front.p.clone() }
}

#[test]
fn pasting_with_a_pullback_front() {
    let b = Budget::default();
    let c2 = arc(FinCategory::chain(2));
    let c3 = arc(FinCategory::chain(3));
    let f = FinFunctor::identity(c2.clone());
    let g = FinFunctor::point(c2.clone(), 1);
    let h = FinFunctor::from_ids(c3.clone(), c2.clone(), &[("0", "0"), ("1", "1"), ("2", "1")], &[("0->1", "0->1"), ("1->2", "id_1"), ("0->2", "0->1")]).unwrap();
    let data = pasting_instance(&f, &g, &h);
    let out = pasting_check(&data, &probes::tiny(), &b).unwrap();
    assert!(out.front_passes && out.composite_passes && out.holds());
    // h = id: f/g = f·id/g
    let data = pasting_instance(&f, &g, &FinFunctor::identity(c2));
    let out = pasting_check(&data, &probes::tiny(), &b).unwrap();
    assert!(out.front_passes && out.composite_passes);
}

#[test]
fn pasting_with_a_non_pullback_front() {
    let b = Budget::default();
    let c2 = arc(FinCategory::chain(2));
    let f = FinFunctor::identity(c2.clone());
    let g = FinFunctor::point(c2.clone(), 1);
    let h = FinFunctor::identity(c2.clone());
    let back = comma(&f, &g).unwrap();
    // X = two copies of the apex's first object
    let two = arc(FinCategory::discrete_n(2));
    let x = FinFunctor::constant(two.clone(), back.apex.clone(), 0);
    let y = back.p.after(&x).unwrap();
    let data = PastingData { back, h, x, y };
    let out = pasting_check(&data, &probes::tiny(), &b).unwrap();
    assert!(!out.front_passes && !out.composite_passes && out.holds());
}

#[test]
fn non_commuting_front_is_a_shape_error() {
    let c2 = arc(FinCategory::chain(2));
    let f = FinFunctor::identity(c2.clone());
    let back = comma(&f, &f).unwrap();
    let x = FinFunctor::point(back.apex.clone(), 0);
    let y = FinFunctor::point(c2.clone(), 1);
    let data = PastingData { back, h: f.clone(), x, y };
    assert!(matches!(data.front_square(), Err(Error::ShapeMismatch(_))));
}

#[test]
fn from_parts_rejects_wrong_flavor() {
    let c2 = arc(FinCategory::chain(2));
    let id = FinFunctor::identity(c2.clone());
    let sq = comma(&id, &id).unwrap();
    let r = CommaSquare::from_parts(sq.f.clone(), sq.g.clone(), sq.p.clone(), sq.q.clone(), sq.lambda.clone(), Flavor::Strict);
    assert!(matches!(r, Err(Error::ShapeMismatch(_))));
}
