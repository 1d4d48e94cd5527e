use std::collections::HashMap;
use std::sync::Arc;

use twocat::glob::*;
use twocat::omega::build_omega;
use twocat::presheaf::Copresheaf;
use twocat::probes;
use twocat::span::pull_back;
use twocat::{Budget, Error, FinCategory, FinFunctor};

fn budget() -> Budget {
    Budget::default()
}

/// Words in σ, τ of length k, identified under στ = ττ and τσ = σσ applied
/// anywhere; returns the number of classes.
fn word_classes(k: usize) -> usize {
    let words: Vec<Vec<u8>> = (0..1usize << k).map(|bits| (0..k).map(|i| ((bits >> i) & 1) as u8).collect()).collect();
    let index: HashMap<Vec<u8>, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let mut parent: Vec<usize> = (0..words.len()).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    // a word lists generators outermost first: [g, f] is g∘f
    let rules: [([u8; 2], [u8; 2]); 2] = [([0, 1], [1, 1]), ([1, 0], [0, 0])];
    for w in &words {
        for i in 0..k.saturating_sub(1) {
            for (lhs, rhs) in rules {
                if w[i..i + 2] == lhs {
                    let mut v = w.clone();
                    v[i..i + 2].copy_from_slice(&rhs);
                    let (a, b) = (find(&mut parent, index[w]), find(&mut parent, index[&v]));
                    parent[a] = b;
                }
            }
        }
    }
    (0..words.len()).filter(|&x| find(&mut parent, x) == x).count()
}

#[test]
fn globe_hom_sizes_match_word_normal_forms() {
    let g = build_g(3);
    let c = &g.category;
    for j in 0..=3 {
        for m in 0..=3 {
            let expected = if m < j { 0 } else { word_classes(m - j) };
            assert_eq!(c.hom(j, m).len(), expected, "hom({j},{m})");
        }
    }
    assert_eq!(word_classes(2), 2);
    assert_eq!(word_classes(3), 2);
}

#[test]
fn globe_relations_hold_in_the_table() {
    let g = build_g(3);
    let c = &g.category;
    for m in 0..2 {
        let s1 = g.morphism(m, m + 1, Some(Gen::Sigma)).unwrap();
        let t1 = g.morphism(m, m + 1, Some(Gen::Tau)).unwrap();
        let s2 = g.morphism(m + 1, m + 2, Some(Gen::Sigma)).unwrap();
        let t2 = g.morphism(m + 1, m + 2, Some(Gen::Tau)).unwrap();
        assert_eq!(c.compose(s2, t1), c.compose(t2, t1));
        assert_eq!(c.compose(t2, s1), c.compose(s2, s1));
        assert_ne!(c.compose(s2, s1), c.compose(t2, t1));
    }
}

fn generating_arrows(c: &FinCategory) -> usize {
    (0..c.num_morphisms())
        .filter(|&u| !c.is_identity(u))
        .filter(|&u| {
            !(0..c.num_morphisms()).any(|f| {
                !c.is_identity(f)
                    && c.src(f) == c.src(u)
                    && c.out_morphisms(c.tgt(f)).any(|g| !c.is_identity(g) && c.compose(g, f) == u)
            })
        })
        .count()
}

#[test]
fn slice_posets_have_the_pictured_shapes() {
    let s1 = slice(3, 1).unwrap();
    assert_eq!(s1.num_objects(), 3);
    assert!(s1.is_preorder());
    let shape = span_shape(1);
    // • ← • → • with the top as the middle vertex
    assert_eq!(shape.hom(top(1), 0).len(), 1);
    assert_eq!(shape.hom(top(1), 1).len(), 1);
    assert!(shape.hom(0, 1).is_empty() && shape.hom(1, 0).is_empty());
    assert_eq!(generating_arrows(&shape), 2);
    for (m, arrows) in [(2, 6), (3, 10)] {
        let shape = span_shape(m);
        assert_eq!(shape.num_objects(), 2 * m + 1);
        assert_eq!(generating_arrows(&shape), arrows);
    }
    assert!(slice(1, 2).is_err());
}

fn monotone_count(shape: &FinCategory) -> usize {
    let n = shape.num_objects();
    (0..1usize << n)
        .filter(|bits| {
            (0..shape.num_morphisms()).all(|u| (bits >> shape.src(u)) & 1 <= (bits >> shape.tgt(u)) & 1)
        })
        .count()
}

#[test]
fn higher_spans_of_two_chain_are_counted_by_brute_force() {
    let two = Arc::new(FinCategory::chain(2));
    let spans = sp(&two, 2, &budget()).unwrap();
    let counts: Vec<usize> = spans.globular.levels.iter().map(|c| c.num_objects()).collect();
    assert_eq!(counts[1], monotone_count(&span_shape(1)));
    assert_eq!(counts[2], monotone_count(&span_shape(2)));
    assert_eq!(counts, vec![2, 5, 8]);
}

#[test]
fn higher_spans_of_terminal_are_terminal() {
    let spans = sp(&Arc::new(FinCategory::terminal()), 3, &budget()).unwrap();
    for c in &spans.globular.levels {
        assert_eq!((c.num_objects(), c.num_morphisms()), (1, 1));
    }
}

#[test]
fn globular_identities_hold_for_the_corpus() {
    let corpus = globular_corpus(2, &budget()).unwrap();
    assert!(corpus.len() >= 10);
    for (name, x) in &corpus {
        let rebuilt = TruncatedGlobularCategory::new(x.levels.clone(), x.s.clone(), x.t.clone());
        assert!(rebuilt.is_ok(), "{name}");
        assert!(x.as_presheaf(&build_g(x.truncation())).is_ok(), "{name}");
    }
}

#[test]
fn suspension_and_shift() {
    let corpus = globular_corpus(2, &budget()).unwrap();
    for (_, x) in &corpus {
        assert_eq!(d_shift(&sigma(x)).unwrap(), *x);
    }
    let point = TruncatedGlobularCategory::constant(Arc::new(FinCategory::terminal()), 0);
    assert_eq!(d_shift(&point), Err(Error::TruncationUnderflow));
    let report = verify_d_sigma(&corpus, &budget()).unwrap();
    assert!(report.all_pass(), "{:?}", report.failures().collect::<Vec<_>>());
}

#[test]
fn unit_is_invertible_exactly_over_a_terminal_base() {
    let b = budget();
    let one = TruncatedGlobularCategory::constant(Arc::new(FinCategory::terminal()), 2);
    assert!(unit(&one).unwrap().is_iso());
    assert!(!unit(&arrow_globe(2)).unwrap().is_iso());
    let two = TruncatedGlobularCategory::constant(Arc::new(FinCategory::chain(2)), 2);
    assert!(!unit(&two).unwrap().is_iso());
    assert!(unit(&sigma(&two)).unwrap().is_iso());
    assert!(hom_bijection(&arrow_globe(2), &d_shift(&two).unwrap(), &b).unwrap());
}

#[test]
fn padding_reproduces_the_two_four_picture() {
    let ctx = build_omega(3).unwrap();
    let one = ctx.object_of_size(1).unwrap();
    let (empty, pair) = (ctx.object_of_size(0).unwrap(), ctx.object_of_size(2).unwrap());
    let x = twocat::category::FunctorSearch::new(span_shape(2), ctx.omega.clone())
        .objects(|a, b| (a != top(2) || b == empty) && (a != 0 || b == pair) && (a != 1 || b == one))
        .first(&budget())
        .unwrap()
        .unwrap();
    let x = NSpan::new(2, x).unwrap();
    assert_eq!(i_k_pad(&x, 0, one).unwrap(), x);
    let padded = i_k_pad(&x, 2, one).unwrap();
    assert_eq!(padded.level, 4);
    assert_eq!(padded.at(4, None), x.at(2, None));
    for g in [Gen::Sigma, Gen::Tau] {
        assert_eq!(padded.at(3, Some(g)), x.at(1, Some(g)));
        assert_eq!(padded.at(2, Some(g)), x.at(0, Some(g)));
        assert_eq!(padded.at(1, Some(g)), one);
        assert_eq!(padded.at(0, Some(g)), one);
    }
    let shape = &padded.diagram.dom;
    for u in 0..shape.num_morphisms() {
        if shape.tgt(u) / 2 < 2 {
            let v = padded.diagram.mor(u);
            assert_eq!(ctx.omega.hom(ctx.omega.src(v), one), &[v]);
        }
    }
}

#[test]
fn counit_evaluates_at_the_top() {
    let ctx = build_omega(3).unwrap();
    let two = ctx.object_of_size(2).unwrap();
    let a = NSpan::new(2, FinFunctor::constant(span_shape(2), ctx.omega.clone(), two)).unwrap();
    assert_eq!(epsilon_component(&a), two);
}

fn discrete_opfibrations() -> Vec<FinFunctor> {
    let ctx = build_omega(2).unwrap();
    let mut out = vec![ctx.tau.clone()];
    for base in [FinCategory::chain(2), FinCategory::discrete_n(2), twocat::corpus::span_shape()] {
        let base = Arc::new(base);
        for f in twocat::category::FunctorSearch::new(base.clone(), ctx.omega.clone()).collect(&budget()).unwrap() {
            out.push(pull_back(&f, &ctx.tau).unwrap().p);
        }
    }
    let rep = Copresheaf::representable(Arc::new(FinCategory::chain(3)), 0);
    out.push(rep.elements().projection);
    out
}

#[test]
fn counit_squares_are_pullbacks_for_discrete_opfibrations() {
    let b = budget();
    let ctx = build_omega(2).unwrap();
    for n in 0..=2 {
        let sq = naturality_pullback_check(&ctx.tau, n, &probes::tiny(), &b).unwrap();
        assert!(sq.is_pullback(), "τ at n = {n}: {sq:?}");
    }
    for p in discrete_opfibrations() {
        let sq = naturality_pullback_check(&p, 2, &[], &b).unwrap();
        assert!(sq.is_pullback(), "{}", p.table_id());
    }
}

#[test]
fn counit_square_fails_off_discrete_opfibrations() {
    let chain = Arc::new(FinCategory::chain(2));
    let p = FinFunctor::to_terminal(chain);
    let sq = naturality_pullback_check(&p, 1, &probes::tiny(), &budget()).unwrap();
    assert!(sq.commutes);
    assert!(!sq.is_pullback());
}

#[test]
fn suspension_square_is_a_pullback() {
    let ctx = build_omega(2).unwrap();
    let one = ctx.object_of_size(1).unwrap();
    let dot = ctx.dot_object(one, 0).unwrap();
    for n in 1..=2 {
        let report = suspension_square_check(&ctx.tau, dot, one, n, &budget()).unwrap();
        assert!(report.all_pass(), "{:?}", report.failures().collect::<Vec<_>>());
    }
}

#[test]
fn higher_spans_of_tau_classify_globularly() {
    let b = budget();
    let ctx = build_omega(2).unwrap();
    let dot = sp(&ctx.omega_dot, 2, &b).unwrap();
    let omega = sp(&ctx.omega, 2, &b).unwrap();
    let tau = sp_map(&ctx.tau, &dot, &omega).unwrap();
    let mut probes = constant_probes(&probes::classifying(), 2);
    probes.push(("arrow-globe".into(), arrow_globe(2)));
    let report = check_classifying_globular(&tau, &dot.globular, &omega.globular, &probes, &b).unwrap();
    assert!(report.all_pass(), "{:?}", report.failures().collect::<Vec<_>>());
}

#[test]
fn identity_on_omega_does_not_classify() {
    let b = budget();
    let ctx = build_omega(2).unwrap();
    let omega = sp(&ctx.omega, 1, &b).unwrap();
    let id = GlobularMap::identity(&omega.globular);
    let probes = constant_probes(&probes::tiny(), 1);
    let report = check_classifying_globular(&id, &omega.globular, &omega.globular, &probes, &b).unwrap();
    assert!(!report.all_pass());
}
