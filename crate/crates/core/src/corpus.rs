//! Small categories and functors used as test material, hand-built or drawn
//! from a seeded generator.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::budget::Budget;
use crate::category::{FinCategory, FinFunctor, FunctorSearch};

pub fn idempotent_monoid() -> FinCategory {
    FinCategory::monoid(&["1", "e"], &[vec![0, 1], vec![1, 1]])
}

pub fn cyclic_group_2() -> FinCategory {
    FinCategory::monoid(&["1", "s"], &[vec![0, 1], vec![1, 0]])
}

/// Two objects and an isomorphism between them.
pub fn walking_iso() -> FinCategory {
    FinCategory::from_relation(&["a", "b"], |_, _| true)
}

pub fn parallel_pair() -> FinCategory {
    FinCategory::free_on_graph(&["0", "1"], &[("u", 0, 1), ("v", 0, 1)]).expect("acyclic")
}

/// a → b → c with a second, independent arrow a → c.
pub fn non_commuting_triangle() -> FinCategory {
    FinCategory::free_on_graph(&["a", "b", "c"], &[("f", 0, 1), ("g", 1, 2), ("h", 0, 2)]).expect("acyclic")
}

/// The span shape a ← c → b.
pub fn span_shape() -> FinCategory {
    FinCategory::preorder(&["a", "b", "c"], &[(2, 0), (2, 1)])
}

/// The cospan shape a → c ← b.
pub fn cospan_shape() -> FinCategory {
    FinCategory::preorder(&["a", "b", "c"], &[(0, 2), (1, 2)])
}

pub fn commutative_square() -> FinCategory {
    FinCategory::preorder(&["00", "01", "10", "11"], &[(0, 1), (0, 2), (1, 3), (2, 3)])
}

pub fn named_categories() -> Vec<(String, FinCategory)> {
    vec![
        ("empty".into(), FinCategory::empty()),
        ("1".into(), FinCategory::terminal()),
        ("2-discrete".into(), FinCategory::discrete_n(2)),
        ("3-discrete".into(), FinCategory::discrete_n(3)),
        ("2-chain".into(), FinCategory::chain(2)),
        ("3-chain".into(), FinCategory::chain(3)),
        ("4-chain".into(), FinCategory::chain(4)),
        ("span".into(), span_shape()),
        ("cospan".into(), cospan_shape()),
        ("square".into(), commutative_square()),
        ("parallel-pair".into(), parallel_pair()),
        ("walking-iso".into(), walking_iso()),
        ("idempotent".into(), idempotent_monoid()),
        ("z2".into(), cyclic_group_2()),
        ("free-triangle".into(), non_commuting_triangle()),
    ]
}

/// All preorders on at most `max` objects, one per isomorphism class.
pub fn preorders_up_to_iso(max: usize) -> Vec<FinCategory> {
    let budget = Budget::default();
    let mut out: Vec<Arc<FinCategory>> = Vec::new();
    for n in 0..=max {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|(a, b)| a != b).collect();
        for mask in 0u32..(1 << pairs.len()) {
            let le = |a: usize, b: usize| a == b || pairs.iter().position(|&p| p == (a, b)).is_some_and(|i| mask >> i & 1 == 1);
            let transitive = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(le(a, b) && le(b, c)) || le(a, c))));
            if !transitive {
                continue;
            }
            let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
            let c = Arc::new(FinCategory::from_relation(&names, le));
            let fresh = out.iter().all(|d| {
                crate::category::find_isomorphism(d, &c, &budget).expect("small search").is_none()
            });
            if fresh {
                out.push(c);
            }
        }
    }
    out.into_iter().map(|c| (*c).clone()).collect()
}

/// All partial orders on at most `max` objects, one per isomorphism class.
pub fn posets_up_to_iso(max: usize) -> Vec<FinCategory> {
    preorders_up_to_iso(max)
        .into_iter()
        .filter(|c| (0..c.num_objects()).all(|a| (0..a).all(|b| c.hom(a, b).is_empty() || c.hom(b, a).is_empty())))
        .collect()
}

/// A random small category: a poset or a free category on a small DAG.
pub fn random_category(seed: u64, max_objects: usize) -> FinCategory {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_objects.max(1));
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    if rng.gen_bool(0.6) {
        let mut pairs = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if rng.gen_bool(0.45) {
                    pairs.push((a, b));
                }
            }
        }
        FinCategory::preorder(&names, &pairs)
    } else {
        let labels = ["p", "q", "r", "s", "t"];
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if edges.len() < labels.len() && rng.gen_bool(0.35) {
                    edges.push((labels[edges.len()], a, b));
                }
            }
        }
        FinCategory::free_on_graph(&names, &edges).expect("edges go forward")
    }
}

/// A seeded choice among all functors a → b, or None when there are none.
pub fn random_functor(seed: u64, a: &Arc<FinCategory>, b: &Arc<FinCategory>) -> Option<FinFunctor> {
    let all = FunctorSearch::new(a.clone(), b.clone()).collect(&Budget::default()).ok()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    all.choose(&mut rng).cloned()
}

/// Seeded cospans f: A → B ← C: g over categories with at most `max_objects` objects.
pub fn random_cospans(seed: u64, count: usize, max_objects: usize) -> Vec<(FinFunctor, FinFunctor)> {
    random_cospans_bounded(seed, count, max_objects, usize::MAX)
}

/// As [`random_cospans`], keeping only cospans whose comma has at most `max_apex` objects.
pub fn random_cospans_bounded(
    seed: u64,
    count: usize,
    max_objects: usize,
    max_apex: usize,
) -> Vec<(FinFunctor, FinFunctor)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = category_pool(seed, max_objects);
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < count * 20 {
        attempts += 1;
        let b = pool.choose(&mut rng).unwrap().clone();
        let a = pool.choose(&mut rng).unwrap().clone();
        let c = pool.choose(&mut rng).unwrap().clone();
        if a.num_morphisms() * c.num_morphisms() * b.num_morphisms() > 400 {
            continue;
        }
        let (Some(f), Some(g)) = (random_functor(rng.gen(), &a, &b), random_functor(rng.gen(), &c, &b)) else {
            continue;
        };
        let apex: usize = (0..a.num_objects())
            .flat_map(|x| (0..c.num_objects()).map(move |y| (x, y)))
            .map(|(x, y)| b.hom(f.ob(x), g.ob(y)).len())
            .sum();
        if apex > max_apex {
            continue;
        }
        out.push((f, g));
    }
    out
}

/// Named categories with 1..=max_objects objects plus eight seeded random ones.
pub fn category_pool(seed: u64, max_objects: usize) -> Vec<Arc<FinCategory>> {
    let mut pool: Vec<Arc<FinCategory>> = named_categories()
        .into_iter()
        .map(|(_, c)| c)
        .filter(|c| c.num_objects() <= max_objects && c.num_objects() > 0)
        .map(Arc::new)
        .collect();
    for i in 0..8 {
        pool.push(Arc::new(random_category(seed.wrapping_mul(31).wrapping_add(i), max_objects)));
    }
    pool
}

/// Seeded functors between pool categories with at most `max_objects` objects.
/// Categories are shared, so functors with equal codomains compose.
pub fn random_functors(seed: u64, count: usize, max_objects: usize) -> Vec<FinFunctor> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = category_pool(seed, max_objects);
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < count * 20 {
        attempts += 1;
        let a = pool.choose(&mut rng).unwrap().clone();
        let b = pool.choose(&mut rng).unwrap().clone();
        if a.num_morphisms() * b.num_morphisms() > 150 {
            continue;
        }
        if let Some(f) = random_functor(rng.gen(), &a, &b) {
            out.push(f);
        }
    }
    out
}

/// Small complete lattices used as extension targets.
pub fn lattices() -> Vec<Arc<FinCategory>> {
    let c2 = FinCategory::chain(2);
    vec![Arc::new(c2.clone()), Arc::new(FinCategory::chain(3)), Arc::new(c2.product(&c2))]
}

/// Seeded pairs (g: A → C, f: A → L) with L one of [`lattices`], so that
/// every left extension of f along g exists.
pub fn random_lan_pairs(seed: u64, count: usize, max_objects: usize) -> Vec<(FinFunctor, FinFunctor)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let targets = lattices();
    random_functors(seed, count * 4, max_objects)
        .into_iter()
        .filter_map(|g| {
            let l = targets.choose(&mut rng).unwrap();
            random_functor(rng.gen(), &g.dom, l).map(|f| (g, f))
        })
        .take(count)
        .collect()
}
