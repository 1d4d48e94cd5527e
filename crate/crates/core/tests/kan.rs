use std::sync::Arc;

use twocat::category::{find_isomorphism, functor_category, FunctorCategory, FunctorSearch, NatSearch};
use twocat::kan::{
    colimit_finset, colimit_in, find_right_adjoint, is_colimiting, lan_objects, lan_pointwise, limit_in,
    paste_with_comma, ran_objects, ran_pointwise, res, restriction, verify_absolute, verify_adjunction,
    verify_col_rec, verify_left_extension, verify_left_lifting, verify_pointwise_left_extension, weighted_colimit,
    CellKind, ExtensionCell,
};
use twocat::omega::build_omega;
use twocat::presheaf::{Copresheaf, Presheaf};
use twocat::{corpus, probes, Budget, Error, FinCategory, FinFunctor, NatTrans};

fn arc(c: FinCategory) -> Arc<FinCategory> {
    Arc::new(c)
}

fn empty_diagram(d: &Arc<FinCategory>) -> FinFunctor {
    FinFunctor::new(arc(FinCategory::empty()), d.clone(), vec![], vec![]).unwrap()
}

/// The least upper bound in a poset, found by scanning objects.
fn join(l: &FinCategory, xs: &[usize]) -> Option<usize> {
    let above = |y: usize| xs.iter().all(|&x| !l.hom(x, y).is_empty());
    (0..l.num_objects()).find(|&y| above(y) && (0..l.num_objects()).all(|z| !above(z) || !l.hom(y, z).is_empty()))
}

fn psh(c: &FinCategory, omega: &Arc<FinCategory>, b: &Budget) -> FunctorCategory {
    functor_category(&arc(c.opposite()), omega, b).unwrap()
}

#[test]
fn set_colimits_are_components() {
    for (name, c) in corpus::named_categories() {
        let c = arc(c);
        for o in 0..c.num_objects() {
            assert_eq!(colimit_finset(&Copresheaf::representable(c.clone(), o)).size, 1, "{name}");
        }
        let mut comps = c.components();
        comps.sort_unstable();
        comps.dedup();
        let col = colimit_finset(&Copresheaf::constant(c.clone(), 1));
        assert_eq!(col.size, comps.len(), "{name}");
        assert!(col.representatives.windows(2).all(|w| w[0] < w[1]));
    }
    let pair = arc(corpus::parallel_pair());
    let identities = Copresheaf::constant(pair, 2);
    let col = colimit_finset(&identities);
    assert_eq!(col.size, 2);
    assert_eq!(col.representatives, vec![(0, 0), (0, 1)]);
}

#[test]
fn colimits_in_small_categories() {
    let b = Budget::default();
    let nonempty = arc(FinCategory::from_relation(&["{0}", "{1}", "{0,1}"], |x, y| x == y || y == 2));
    assert!(colimit_in(&empty_diagram(&nonempty), &b).unwrap().is_none());
    assert_eq!(limit_in(&empty_diagram(&nonempty), &b).unwrap().unwrap().apex, 2);
    let c2 = arc(FinCategory::chain(2));
    let bottom = colimit_in(&empty_diagram(&c2), &b).unwrap().unwrap();
    assert_eq!(bottom.nadir, 0);
    assert!(is_colimiting(&bottom, &b).unwrap());
    let pair = FinFunctor::new(arc(FinCategory::discrete_n(2)), nonempty.clone(), vec![0, 1], vec![
        nonempty.id(0),
        nonempty.id(1),
    ])
    .unwrap();
    assert_eq!(colimit_in(&pair, &b).unwrap().unwrap().nadir, 2);
    assert!(limit_in(&pair, &b).unwrap().is_none());
}

#[test]
fn presheaf_lattices_have_all_colimits() {
    let b = Budget::default();
    let ctx = build_omega(2).unwrap();
    let shapes = [FinCategory::empty(), FinCategory::discrete_n(2), corpus::span_shape(), FinCategory::chain(2)];
    let mut diagrams = 0;
    for c in corpus::posets_up_to_iso(2).into_iter().chain([corpus::span_shape()]) {
        let lattice = psh(&c, &ctx.omega, &b).category;
        for shape in &shapes {
            let shape = arc(shape.clone());
            for d in FunctorSearch::new(shape, lattice.clone()).collect(&b).unwrap() {
                let objects: Vec<usize> = d.obj_map.clone();
                let col = colimit_in(&d, &b).unwrap().expect("lattice colimit");
                assert_eq!(Some(col.nadir), join(&lattice, &objects));
                diagrams += 1;
            }
        }
    }
    assert!(diagrams > 100, "{diagrams}");
}

#[test]
fn identity_cells_along_isomorphisms() {
    let b = Budget::default();
    let y = arc(FinCategory::discrete_n(2));
    let swap = FinFunctor::new(y.clone(), y.clone(), vec![1, 0], vec![y.id(1), y.id(0)]).unwrap();
    let mut seen = (0, 0);
    for x in [arc(FinCategory::chain(2)), arc(corpus::walking_iso())] {
        let all = FunctorSearch::new(y.clone(), x.clone()).collect(&b).unwrap();
        for f in &all {
            for h in &all {
                let hg = h.after(&swap).unwrap();
                for phi in NatSearch::new(f, &hg).collect(&b).unwrap() {
                    let invertible = phi.is_invertible();
                    let cell = ExtensionCell::new(f.clone(), swap.clone(), h.clone(), phi).unwrap();
                    assert_eq!(verify_left_extension(&cell, &b).unwrap(), invertible);
                    if invertible {
                        seen.0 += 1;
                    } else {
                        seen.1 += 1;
                    }
                }
            }
        }
    }
    assert!(seen.0 > 0 && seen.1 > 0);
}

/// Adjunctions L ⊣ R found among corpus functors.
fn corpus_adjunctions() -> Vec<twocat::kan::Adjunction> {
    let b = Budget::default();
    corpus::random_functors(61, 40, 3)
        .into_iter()
        .filter_map(|l| find_right_adjoint(&l, &b).unwrap())
        .collect()
}

#[test]
fn adjunction_units_are_absolute_left_extensions() {
    let b = Budget::default();
    let adjunctions = corpus_adjunctions();
    assert!(adjunctions.len() >= 5, "{}", adjunctions.len());
    for adj in &adjunctions {
        assert!(verify_adjunction(&adj.left, &adj.right, &adj.unit, &adj.counit));
        let id = FinFunctor::identity(adj.left.dom.clone());
        let cell = ExtensionCell::new(id, adj.left.clone(), adj.right.clone(), adj.unit.clone()).unwrap();
        assert!(verify_left_extension(&cell, &b).unwrap());
        let report = verify_absolute(&cell, CellKind::Extension, &probes::tiny(), &b).unwrap();
        assert!(report.all_pass(), "{:?}", report.failures().collect::<Vec<_>>());
    }
}

#[test]
fn left_adjoints_preserve_left_extensions() {
    let b = Budget::default();
    let adjunctions = corpus_adjunctions();
    let mut checked = 0;
    for (g, f) in corpus::random_lan_pairs(67, 30, 3) {
        let cell = lan_pointwise(&g, &f, &b).unwrap();
        for adj in adjunctions.iter().filter(|a| a.left.dom == f.cod) {
            let moved = cell.postcompose(&adj.left).unwrap();
            assert!(verify_left_extension(&moved, &b).unwrap());
            checked += 1;
        }
    }
    let c2 = arc(FinCategory::chain(2));
    let collapse = FinFunctor::to_terminal(c2.clone());
    let top = FinFunctor::point(c2.clone(), 1);
    let adj = find_right_adjoint(&collapse, &b).unwrap().unwrap();
    assert_eq!(adj.right, top);
    for (g, f) in corpus::random_lan_pairs(71, 20, 3).into_iter().filter(|(_, f)| f.cod == c2) {
        let cell = lan_pointwise(&g, &f, &b).unwrap();
        assert!(verify_left_extension(&cell.postcompose(&collapse).unwrap(), &b).unwrap());
        checked += 1;
    }
    assert!(checked > 0);
}

#[test]
fn fully_faithful_maps_are_absolute_liftings() {
    let b = Budget::default();
    let mut faithful = 0;
    for f in corpus::random_functors(73, 40, 3) {
        let id = FinFunctor::identity(f.dom.clone());
        let cell = ExtensionCell::new(f.clone(), id, f.clone(), NatTrans::identity(&f)).unwrap();
        let lifting = verify_left_lifting(&cell, &b).unwrap();
        if f.is_fully_faithful() {
            assert!(lifting);
            let report = verify_absolute(&cell, CellKind::Lifting, &probes::tiny(), &b).unwrap();
            assert!(report.all_pass());
            faithful += 1;
        }
    }
    assert!(faithful > 0);
    let c2 = arc(FinCategory::chain(2));
    let collapse = FinFunctor::to_terminal(c2.clone());
    let id = FinFunctor::identity(c2);
    let cell = ExtensionCell::new(collapse.clone(), id, collapse.clone(), NatTrans::identity(&collapse)).unwrap();
    assert!(!verify_left_lifting(&cell, &b).unwrap());
}

#[test]
fn extension_along_the_identity_is_trivial() {
    let b = Budget::default();
    for (_, f) in corpus::random_lan_pairs(79, 15, 3) {
        let id = FinFunctor::identity(f.dom.clone());
        let cell = lan_pointwise(&id, &f, &b).unwrap();
        assert_eq!(cell.h, f);
        assert!(cell.phi.is_identity());
    }
}

#[test]
fn lawvere_formula_against_join_oracle() {
    let b = Budget::default();
    let pairs = corpus::random_lan_pairs(83, 40, 3);
    assert!(pairs.len() >= 30);
    for (g, f) in &pairs {
        let cell = lan_pointwise(g, f, &b).unwrap();
        let (a, c) = (&g.dom, &g.cod);
        for o in 0..c.num_objects() {
            let below: Vec<usize> =
                (0..a.num_objects()).filter(|&x| !c.hom(g.ob(x), o).is_empty()).map(|x| f.ob(x)).collect();
            assert_eq!(Some(cell.h.ob(o)), join(&f.cod, &below));
        }
        assert!(verify_left_extension(&cell, &b).unwrap());
        let verdict = verify_pointwise_left_extension(&cell, &b).unwrap();
        assert!(verdict.holds(), "{:?}", verdict);
        if g.is_fully_faithful() {
            assert!(cell.phi.is_invertible());
        }
    }
}

#[test]
fn lawvere_formula_in_finite_sets() {
    let b = Budget::default();
    let ctx = build_omega(4).unwrap();
    let c3 = arc(FinCategory::chain(3));
    let mut checked = 0;
    for incl in FunctorSearch::new(arc(FinCategory::chain(2)), c3.clone()).injective().collect(&b).unwrap() {
        for f in FunctorSearch::new(incl.dom.clone(), ctx.omega.clone()).collect(&b).unwrap() {
            if f.obj_map.iter().map(|&o| ctx.size(o)).sum::<usize>() >= 4 {
                continue;
            }
            let cell = lan_pointwise(&incl, &f, &b).unwrap();
            for o in 0..c3.num_objects() {
                let point = FinFunctor::point(c3.clone(), o);
                let sq = twocat::comma::comma(&incl, &point).unwrap();
                let diagram = ctx.functor_copresheaf(&f.after(&sq.p).unwrap());
                assert_eq!(ctx.size(cell.h.ob(o)), colimit_finset(&diagram).size);
            }
            checked += 1;
        }
    }
    assert!(checked > 10);
}

#[test]
fn missing_colimits_are_reported() {
    let b = Budget::default();
    let nonempty = arc(FinCategory::from_relation(&["{0}", "{1}", "{0,1}"], |x, y| x == y || y == 2));
    let c2 = arc(FinCategory::chain(2));
    let g = FinFunctor::point(c2.clone(), 1);
    let f = FinFunctor::point(nonempty.clone(), 0);
    match lan_pointwise(&g, &f, &b) {
        Err(Error::NoColimit(c)) => assert_eq!(c, c2.object_id(0)),
        other => panic!("{other:?}"),
    }
    let h = FinFunctor::point(c2.clone(), 0);
    let f2 = FinFunctor::point(arc(FinCategory::from_relation(&["a", "b", "m"], |x, y| x == y || x == 2)), 2);
    assert!(matches!(ran_pointwise(&h, &f2, &b), Err(Error::NoLimit(_))));
}

#[test]
fn right_extensions_by_meets() {
    let b = Budget::default();
    for (g, f) in corpus::random_lan_pairs(89, 25, 3) {
        let (r, eps) = ran_pointwise(&g, &f, &b).unwrap();
        let (a, c) = (&g.dom, &g.cod);
        let l = &f.cod;
        for o in 0..c.num_objects() {
            let above: Vec<usize> =
                (0..a.num_objects()).filter(|&x| !c.hom(o, g.ob(x)).is_empty()).map(|x| f.ob(x)).collect();
            let op = l.opposite();
            assert_eq!(Some(r.ob(o)), join(&op, &above));
        }
        assert_eq!(eps.dom, r.after(&g).unwrap());
        assert_eq!(eps.cod, f);
    }
}

#[test]
fn composite_extensions() {
    let b = Budget::default();
    let d = arc(FinCategory::chain(3));
    let fs = corpus::random_functors(97, 30, 3);
    let (mut checked, mut passing) = (0, 0);
    for g in &fs {
        let Some(f) = fs.iter().find(|f| f.dom == g.cod) else { continue };
        let Some(z) = corpus::random_functor(7, &g.dom, &d) else { continue };
        let first = lan_pointwise(g, &z, &b).unwrap();
        let y = &first.h;
        let fg = f.after(g).unwrap();
        for x in FunctorSearch::new(f.cod.clone(), d.clone()).collect(&b).unwrap() {
            let xf = x.after(f).unwrap();
            for phi in NatSearch::new(y, &xf).collect(&b).unwrap() {
                let second = ExtensionCell::new(y.clone(), f.clone(), x.clone(), phi.clone()).unwrap();
                let pasted = phi.whisker_right(g).unwrap().vcomp(&first.phi).unwrap();
                let composite = ExtensionCell::new(z.clone(), fg.clone(), x.clone(), pasted).unwrap();
                let ok = verify_left_extension(&second, &b).unwrap();
                assert_eq!(ok, verify_left_extension(&composite, &b).unwrap());
                checked += 1;
                passing += ok as usize;
            }
        }
    }
    assert!(checked >= 20 && passing > 0 && passing < checked, "{checked} {passing}");
}

#[test]
fn pasting_with_commas_keeps_pointwise_extensions() {
    let b = Budget::default();
    let mut checked = 0;
    for (g, f) in corpus::random_lan_pairs(103, 20, 3) {
        let cell = lan_pointwise(&g, &f, &b).unwrap();
        for probe in probes::tiny() {
            for c in FunctorSearch::new(probe.category.clone(), g.cod.clone()).collect(&b).unwrap() {
                let pasted = paste_with_comma(&cell, &c).unwrap();
                assert!(verify_left_extension(&pasted, &b).unwrap());
                assert!(verify_pointwise_left_extension(&pasted, &b).unwrap().holds());
                checked += 1;
            }
        }
    }
    assert!(checked >= 20);
}

#[test]
fn strict_fibres_along_opfibrations() {
    let b = Budget::default();
    let mut compared = 0;
    for (g, f) in corpus::random_lan_pairs(107, 40, 3) {
        let cell = lan_pointwise(&g, &f, &b).unwrap();
        let verdict = verify_pointwise_left_extension(&cell, &b).unwrap();
        if let Some(strict) = verdict.strict {
            assert_eq!(strict, verdict.lax);
            compared += 1;
        }
    }
    let c2 = arc(FinCategory::chain(2));
    for o in 0..2 {
        let sq = twocat::comma::comma(&FinFunctor::point(c2.clone(), o), &FinFunctor::identity(c2.clone())).unwrap();
        for f in FunctorSearch::new(sq.apex.clone(), c2.clone()).collect(&b).unwrap() {
            let cell = lan_pointwise(&sq.q, &f, &b).unwrap();
            assert_eq!(verify_pointwise_left_extension(&cell, &b).unwrap().strict, Some(true));
            compared += 1;
        }
    }
    assert!(compared > 5);
}

#[test]
fn restriction_along_the_identity() {
    let b = Budget::default();
    let ctx = build_omega(2).unwrap();
    for c in corpus::posets_up_to_iso(2) {
        let p = psh(&c, &ctx.omega, &b);
        let r = res(&FinFunctor::identity(arc(c)), &p, &p).unwrap();
        assert_eq!(r, FinFunctor::identity(p.category.clone()));
    }
}

#[test]
fn lan_res_ran_at_the_top_point() {
    let b = Budget::default();
    let ctx = build_omega(2).unwrap();
    let one = FinCategory::terminal();
    let c2 = FinCategory::chain(2);
    let (psh_1, psh_2) = (psh(&one, &ctx.omega, &b), psh(&c2, &ctx.omega, &b));
    let top = FinFunctor::point(arc(c2), 1);
    let r = restriction(&top, &psh_1, &psh_2, &b).unwrap();
    let lan = r.lan.expect("lan_f");
    let ran = r.ran.expect("ran_f");
    assert!(verify_adjunction(&lan.left, &lan.right, &lan.unit, &lan.counit));
    assert!(verify_adjunction(&ran.left, &ran.right, &ran.unit, &ran.counit));
    assert_eq!(lan.left.obj_map, lan_objects(&top, &psh_1, &psh_2, &b).unwrap());
    assert_eq!(ran.right.obj_map, ran_objects(&top, &psh_1, &psh_2, &b).unwrap());

    // the unit of res ⊣ ran exhibits ran as a left extension of 1 along res
    let id = FinFunctor::identity(psh_2.category.clone());
    let cell = ExtensionCell::new(id, ran.left.clone(), ran.right.clone(), ran.unit.clone()).unwrap();
    assert!(verify_left_extension(&cell, &b).unwrap());
    assert!(verify_left_extension(&cell.postcompose(&r.res).unwrap(), &b).unwrap());
}

#[test]
fn lan_res_ran_on_small_posets() {
    let b = Budget::default();
    let ctx = build_omega(2).unwrap();
    let mut checked = 0;
    let posets: Vec<FinCategory> = corpus::posets_up_to_iso(2);
    for a in &posets {
        for c in &posets {
            let (pa, pc) = (psh(a, &ctx.omega, &b), psh(c, &ctx.omega, &b));
            for f in FunctorSearch::new(arc(a.clone()), arc(c.clone())).collect(&b).unwrap() {
                let r = restriction(&f, &pa, &pc, &b).unwrap();
                let lan = r.lan.expect("lan_f");
                let ran = r.ran.expect("ran_f");
                assert_eq!(lan.left.obj_map, lan_objects(&f, &pa, &pc, &b).unwrap());
                assert_eq!(ran.right.obj_map, ran_objects(&f, &pa, &pc, &b).unwrap());
                checked += 1;
            }
        }
    }
    assert!(checked >= 10, "{checked}");
}

#[test]
fn weighted_colimits_of_representables_and_constants() {
    let b = Budget::default();
    let mut checked = 0;
    for (_, f) in corpus::random_lan_pairs(109, 25, 3) {
        let c = f.dom.clone();
        for o in 0..c.num_objects() {
            let i = Presheaf::representable(c.clone(), o);
            let wc = weighted_colimit(&i, &f, &b).unwrap();
            assert_eq!(wc.object(), f.ob(o));
            assert!(verify_col_rec(&i, &f, &wc, &b).unwrap());
            checked += 1;
        }
        let constant = Presheaf::constant(c.clone(), 1);
        let wc = weighted_colimit(&constant, &f, &b).unwrap();
        assert_eq!(Some(wc.object()), colimit_in(&f, &b).unwrap().map(|k| k.nadir));
        assert!(verify_col_rec(&constant, &f, &wc, &b).unwrap());
    }
    assert!(checked >= 20);
    let nonempty = arc(FinCategory::from_relation(&["{0}", "{1}", "{0,1}"], |x, y| x == y || y == 2));
    let f = FinFunctor::point(nonempty, 0);
    let nothing = Presheaf::constant(f.dom.clone(), 0);
    assert!(matches!(weighted_colimit(&nothing, &f, &b), Err(Error::NoColimit(_))));
}

#[test]
fn weighted_colimits_in_presheaf_lattices() {
    let b = Budget::default();
    let ctx = build_omega(2).unwrap();
    let mut checked = 0;
    for c in corpus::posets_up_to_iso(2) {
        let c = arc(c);
        let weights: Vec<Presheaf> = FunctorSearch::new(arc(c.opposite()), ctx.omega.clone())
            .collect(&b)
            .unwrap()
            .iter()
            .map(|w| ctx.functor_presheaf(w, &c))
            .collect();
        for d in corpus::posets_up_to_iso(2) {
            let lattice = psh(&d, &ctx.omega, &b).category;
            for f in FunctorSearch::new(c.clone(), lattice.clone()).collect(&b).unwrap() {
                for i in &weights {
                    let wc = weighted_colimit(i, &f, &b).unwrap();
                    assert!(verify_col_rec(i, &f, &wc, &b).unwrap());
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 50, "{checked}");
}

#[test]
fn isomorphic_targets_give_isomorphic_extensions() {
    let b = Budget::default();
    for (g, f) in corpus::random_lan_pairs(113, 10, 3) {
        let cell = lan_pointwise(&g, &f, &b).unwrap();
        let again = lan_pointwise(&g, &f, &b).unwrap();
        assert_eq!(cell, again);
        assert!(find_isomorphism(&cell.h.cod, &f.cod, &b).unwrap().is_some());
    }
}
