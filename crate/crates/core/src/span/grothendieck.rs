use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::category::{FinCategory, FinFunctor, Morphism};
use crate::error::{Error, Result};
use crate::fib::Cleavage;
use crate::presheaf::Presheaf;

/// A strict functor base^op → categories: a fibre per object and, for each
/// β: C₁ → C₂, a reindexing functor X(C₂) → X(C₁).
#[derive(Clone, Debug)]
pub struct CatValuedPresheaf {
    pub base: Arc<FinCategory>,
    pub fibres: Vec<Arc<FinCategory>>,
    pub reindex: Vec<FinFunctor>,
}

impl CatValuedPresheaf {
    pub fn new(base: Arc<FinCategory>, fibres: Vec<Arc<FinCategory>>, reindex: Vec<FinFunctor>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidFunctor(m));
        if fibres.len() != base.num_objects() || reindex.len() != base.num_morphisms() {
            return bad("fibres or reindexing do not match the base".into());
        }
        for (u, r) in reindex.iter().enumerate() {
            if r.dom != fibres[base.tgt(u)] || r.cod != fibres[base.src(u)] {
                return bad(format!("reindexing along {} is mistyped", base.morphism_id(u)));
            }
        }
        for c in 0..base.num_objects() {
            if reindex[base.id(c)] != FinFunctor::identity(fibres[c].clone()) {
                return bad(format!("reindexing along the identity at {} is not the identity", base.object_id(c)));
            }
        }
        for f in 0..base.num_morphisms() {
            for g in base.out_morphisms(base.tgt(f)) {
                let gf = base.compose(g, f);
                if reindex[f].after(&reindex[g])? != reindex[gf] {
                    return bad(format!("reindexing is not strict at {}", base.morphism_id(gf)));
                }
            }
        }
        Ok(CatValuedPresheaf { base, fibres, reindex })
    }

    /// Every fibre is `x` and every reindexing is the identity.
    pub fn constant(base: Arc<FinCategory>, x: Arc<FinCategory>) -> Self {
        let fibres = vec![x.clone(); base.num_objects()];
        let reindex = vec![FinFunctor::identity(x); base.num_morphisms()];
        CatValuedPresheaf { base, fibres, reindex }
    }

    /// The presheaf with discrete fibres.
    pub fn from_presheaf(p: &Presheaf) -> Self {
        let base = p.base.clone();
        let fibres: Vec<Arc<FinCategory>> =
            p.sizes.iter().map(|&n| Arc::new(FinCategory::discrete_n(n))).collect();
        let reindex = (0..base.num_morphisms())
            .map(|u| {
                let (dom, cod) = (fibres[base.tgt(u)].clone(), fibres[base.src(u)].clone());
                let obj_map = p.action[u].clone();
                let mor_map = obj_map.iter().map(|&x| cod.id(x)).collect();
                FinFunctor::new_unchecked(dom, cod, obj_map, mor_map)
            })
            .collect();
        CatValuedPresheaf { base, fibres, reindex }
    }
}

/// A category of elements with its projection and canonical cleavage.
#[derive(Clone, Debug)]
pub struct Grothendieck {
    pub category: Arc<FinCategory>,
    pub projection: FinFunctor,
    pub cleavage: Cleavage,
    /// (C, x) behind each object.
    pub points: Vec<(usize, usize)>,
    /// The fibre component α of each morphism (α, β).
    pub alphas: Vec<usize>,
}

/// Objects (x, C); a morphism (x₁,C₁) → (x₂,C₂) is (α, β) with β: C₁ → C₂
/// and α: x₁ → Xβ(x₂). Composition is (Xβ₁(α₂)∘α₁, β₂∘β₁), and the
/// canonical lift of β at (x, C₂) is (1, β).
pub fn el(x: &CatValuedPresheaf) -> Grothendieck {
    let base = &x.base;
    let points: Vec<(usize, usize)> =
        (0..base.num_objects()).flat_map(|c| (0..x.fibres[c].num_objects()).map(move |i| (c, i))).collect();
    let index: HashMap<(usize, usize), usize> = points.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let objects: Vec<String> =
        points.iter().map(|&(c, i)| format!("({},{})", x.fibres[c].object_id(i), base.object_id(c))).collect();
    let mut morphisms = Vec::new();
    let mut parts: Vec<(usize, usize)> = Vec::new();
    let mut lookup = HashMap::new();
    let mut identity = vec![0; points.len()];
    for (s, &(c1, x1)) in points.iter().enumerate() {
        for beta in base.out_morphisms(c1) {
            let c2 = base.tgt(beta);
            for x2 in 0..x.fibres[c2].num_objects() {
                let t = index[&(c2, x2)];
                let fibre = &x.fibres[c1];
                for &alpha in fibre.hom(x1, x.reindex[beta].ob(x2)) {
                    if s == t && base.is_identity(beta) && fibre.is_identity(alpha) {
                        identity[s] = morphisms.len();
                    }
                    lookup.insert((alpha, beta, s, t), morphisms.len());
                    morphisms.push(Morphism {
                        id: format!("({},{})", fibre.morphism_id(alpha), base.morphism_id(beta)),
                        src: s,
                        tgt: t,
                    });
                    parts.push((alpha, beta));
                }
            }
        }
    }
    let ends: Vec<(usize, usize)> = morphisms.iter().map(|m| (m.src, m.tgt)).collect();
    let category = Arc::new(FinCategory::from_parts(objects, morphisms, identity, |g, f| {
        let ((a1, b1), (a2, b2)) = (parts[f], parts[g]);
        let c1 = base.src(b1);
        let alpha = x.fibres[c1].compose(x.reindex[b1].mor(a2), a1);
        lookup[&(alpha, base.compose(b2, b1), ends[f].0, ends[g].1)]
    }));
    let projection = FinFunctor::new_unchecked(
        category.clone(),
        base.clone(),
        points.iter().map(|p| p.0).collect(),
        parts.iter().map(|p| p.1).collect(),
    );
    let mut lifts = BTreeMap::new();
    for (t, &(c2, x2)) in points.iter().enumerate() {
        for beta in base.in_morphisms(c2) {
            let c1 = base.src(beta);
            let y = x.reindex[beta].ob(x2);
            let s = index[&(c1, y)];
            lifts.insert((beta, t), lookup[&(x.fibres[c1].id(y), beta, s, t)]);
        }
    }
    let cleavage = Cleavage { functor: projection.clone(), lifts };
    let alphas = parts.iter().map(|p| p.0).collect();
    Grothendieck { category, projection, cleavage, points, alphas }
}
