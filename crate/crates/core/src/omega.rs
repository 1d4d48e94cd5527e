//! The category Ω_λ of finite sets of cardinality below λ (one set per
//! cardinality), the pointed variant Ω•, the forgetful τ: Ω• → Ω, and the
//! λ = 2 subobject-classifier structure.

use std::collections::HashMap;
use std::sync::Arc;

use crate::budget::Budget;
use crate::category::{find_isomorphism, FinCategory, FinFunctor, FinSet, Morphism};
use crate::error::{Error, Result};
use crate::fib::is_discrete_opfibration;
use crate::kan::{find_adjunction, find_right_adjoint, Adjunction};
use crate::presheaf::{Copresheaf, Presheaf};
use crate::span::classify;

#[derive(Clone, Debug)]
pub struct OmegaContext {
    pub lambda: usize,
    /// Smallest cardinality present; 0 for the full context.
    pub min_card: usize,
    pub omega: Arc<FinCategory>,
    pub omega_dot: Arc<FinCategory>,
    pub tau: FinFunctor,
    sizes: Vec<usize>,
    tables: Vec<Vec<usize>>,
    fn_index: HashMap<(usize, usize, Vec<usize>), usize>,
    points: Vec<(usize, usize)>,
    dot_index: HashMap<(usize, usize, usize), usize>,
}

fn all_functions(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|t| (0..m).map(move |y| [t.clone(), vec![y]].concat())).collect();
    }
    out
}

fn show(t: &[usize]) -> String {
    let parts: Vec<String> = t.iter().map(|y| y.to_string()).collect();
    format!("[{}]", parts.join(","))
}

pub fn build_omega(lambda: usize) -> Result<OmegaContext> {
    build_omega_restricted(lambda, 0)
}

/// Ω on the cardinalities min_card..λ.
pub fn build_omega_restricted(lambda: usize, min_card: usize) -> Result<OmegaContext> {
    if lambda < 2 || min_card >= lambda {
        return Err(Error::BadConfig(format!("need 2 ≤ λ and min < λ, got λ={lambda}, min={min_card}")));
    }
    let sizes: Vec<usize> = (min_card..lambda).collect();
    let objects: Vec<String> = sizes.iter().map(|n| n.to_string()).collect();
    let mut morphisms = Vec::new();
    let mut tables = Vec::new();
    let mut fn_index = HashMap::new();
    let mut identity = vec![0; sizes.len()];
    for (a, &n) in sizes.iter().enumerate() {
        for (b, &m) in sizes.iter().enumerate() {
            for t in all_functions(n, m) {
                if a == b && t.iter().enumerate().all(|(i, &y)| i == y) {
                    identity[a] = morphisms.len();
                }
                fn_index.insert((a, b, t.clone()), morphisms.len());
                morphisms.push(Morphism { id: format!("{n}→{m}:{}", show(&t)), src: a, tgt: b });
                tables.push(t);
            }
        }
    }
    let ends: Vec<(usize, usize)> = morphisms.iter().map(|m| (m.src, m.tgt)).collect();
    let omega = Arc::new(FinCategory::from_parts(objects, morphisms, identity, |g, f| {
        let t: Vec<usize> = tables[f].iter().map(|&x| tables[g][x]).collect();
        fn_index[&(ends[f].0, ends[g].1, t)]
    }));

    let points: Vec<(usize, usize)> =
        sizes.iter().enumerate().flat_map(|(a, &n)| (0..n).map(move |i| (a, i))).collect();
    let dot_objects: Vec<String> = points.iter().map(|&(a, i)| format!("{}.{}", sizes[a], i)).collect();
    let mut dot_morphisms = Vec::new();
    let mut under = Vec::new();
    let mut dot_index = HashMap::new();
    let mut dot_identity = vec![0; points.len()];
    for (x, &(a, i)) in points.iter().enumerate() {
        for (y, &(b, j)) in points.iter().enumerate() {
            for &m in omega.hom(a, b) {
                if tables[m][i] != j {
                    continue;
                }
                if x == y && omega.is_identity(m) {
                    dot_identity[x] = dot_morphisms.len();
                }
                dot_index.insert((x, y, m), dot_morphisms.len());
                dot_morphisms.push(Morphism {
                    id: format!("{}→{}:{}", dot_objects[x], dot_objects[y], show(&tables[m])),
                    src: x,
                    tgt: y,
                });
                under.push(m);
            }
        }
    }
    let dot_ends: Vec<(usize, usize)> = dot_morphisms.iter().map(|m| (m.src, m.tgt)).collect();
    let omega_dot = Arc::new(FinCategory::from_parts(dot_objects, dot_morphisms, dot_identity, |g, f| {
        dot_index[&(dot_ends[f].0, dot_ends[g].1, omega.compose(under[g], under[f]))]
    }));
    let tau = FinFunctor::new(omega_dot.clone(), omega.clone(), points.iter().map(|p| p.0).collect(), under)?;
    if !is_discrete_opfibration(&tau) {
        return Err(Error::InvalidFunctor("τ is not a discrete opfibration".into()));
    }
    Ok(OmegaContext { lambda, min_card, omega, omega_dot, tau, sizes, tables, fn_index, points, dot_index })
}

impl OmegaContext {
    /// Cardinality of the set at an Ω object.
    pub fn size(&self, o: usize) -> usize {
        self.sizes[o]
    }

    pub fn object_of_size(&self, n: usize) -> Option<usize> {
        self.sizes.iter().position(|&s| s == n)
    }

    /// The function table of an Ω morphism.
    pub fn table(&self, m: usize) -> &[usize] {
        &self.tables[m]
    }

    /// The Ω morphism with the given table between the sets of the given sizes.
    pub fn function(&self, n: usize, m: usize, table: &[usize]) -> Option<usize> {
        let (a, b) = (self.object_of_size(n)?, self.object_of_size(m)?);
        self.fn_index.get(&(a, b, table.to_vec())).copied()
    }

    /// The Ω object and chosen point behind an Ω• object.
    pub fn point(&self, x: usize) -> (usize, usize) {
        self.points[x]
    }

    pub fn dot_object(&self, o: usize, i: usize) -> Option<usize> {
        self.points.iter().position(|&p| p == (o, i))
    }

    /// The Ω• morphism between two pointed sets lying over the Ω morphism m.
    pub fn dot_morphism(&self, x: usize, y: usize, m: usize) -> Option<usize> {
        self.dot_index.get(&(x, y, m)).copied()
    }

    /// The functor base^op → Ω with the presheaf's tables; `op` must be the opposite of the base.
    pub fn presheaf_functor(&self, p: &Presheaf, op: &Arc<FinCategory>) -> Result<FinFunctor> {
        let base = &p.base;
        let obj_map = (0..base.num_objects()).map(|a| self.fibre_object(base, a, p.sizes[a])).collect::<Result<_>>()?;
        let mor_map = (0..base.num_morphisms())
            .map(|u| {
                let (a, b) = (base.src(u), base.tgt(u));
                self.function(p.sizes[b], p.sizes[a], &p.action[u]).expect("sizes are in range")
            })
            .collect();
        FinFunctor::new(op.clone(), self.omega.clone(), obj_map, mor_map)
    }

    /// The presheaf on `base` read off a functor base^op → Ω.
    pub fn functor_presheaf(&self, f: &FinFunctor, base: &Arc<FinCategory>) -> Presheaf {
        Presheaf {
            base: base.clone(),
            sizes: f.obj_map.iter().map(|&o| self.sizes[o]).collect(),
            action: f.mor_map.iter().map(|&m| self.tables[m].clone()).collect(),
        }
    }

    /// The functor base → Ω with the copresheaf's tables.
    pub fn copresheaf_functor(&self, p: &Copresheaf) -> Result<FinFunctor> {
        let base = &p.base;
        let obj_map = (0..base.num_objects()).map(|a| self.fibre_object(base, a, p.sizes[a])).collect::<Result<_>>()?;
        let mor_map = (0..base.num_morphisms())
            .map(|u| {
                let (a, b) = (base.src(u), base.tgt(u));
                self.function(p.sizes[a], p.sizes[b], &p.action[u]).expect("sizes are in range")
            })
            .collect();
        FinFunctor::new(base.clone(), self.omega.clone(), obj_map, mor_map)
    }

    pub fn functor_copresheaf(&self, f: &FinFunctor) -> Copresheaf {
        Copresheaf {
            base: f.dom.clone(),
            sizes: f.obj_map.iter().map(|&o| self.sizes[o]).collect(),
            action: f.mor_map.iter().map(|&m| self.tables[m].clone()).collect(),
        }
    }

    fn fibre_object(&self, base: &FinCategory, a: usize, n: usize) -> Result<usize> {
        self.object_of_size(n).ok_or_else(|| Error::FibreTooLarge {
            object: base.object_id(a).to_string(),
            size: n,
            lambda: self.lambda,
        })
    }
}

/// Ω₀ as the subobjects of a one-element set, with top, meet and the order
/// cut out by the equaliser of π₁ and ∧.
#[derive(Clone, Debug)]
pub struct InternalPoset {
    pub carrier: FinSet,
    pub top: usize,
    pub meet: Vec<Vec<usize>>,
    pub le: Vec<(usize, usize)>,
    pub category: Arc<FinCategory>,
}

/// Subobjects of the one-element set {0}, as the images of injections.
fn subobjects_of_point() -> Vec<Vec<usize>> {
    (0..2usize).map(|mask| (0..1).filter(|&x| mask >> x & 1 == 1).collect()).collect()
}

/// The image of the pullback of two monos into {0}.
fn pullback_image(s1: &[usize], s2: &[usize]) -> Vec<usize> {
    let pairs: Vec<(usize, usize)> =
        s1.iter().flat_map(|&x| s2.iter().map(move |&y| (x, y))).filter(|(x, y)| x == y).collect();
    let mut image: Vec<usize> = pairs.iter().map(|p| p.0).collect();
    image.dedup();
    image
}

/// The internal poset of subobjects together with its comparison functor to
/// Ω for λ = 2, which is checked to be an isomorphism.
pub fn build_internal_poset_from_subobjects() -> Result<(InternalPoset, FinFunctor)> {
    let subs = subobjects_of_point();
    let names: Vec<String> = subs.iter().map(|s| if s.is_empty() { "⊥".into() } else { "⊤".into() }).collect();
    let index = |s: &[usize]| subs.iter().position(|t| t == s).expect("closed under meets");
    let top = index(&[0]);
    let meet: Vec<Vec<usize>> =
        subs.iter().map(|a| subs.iter().map(|b| index(&pullback_image(a, b))).collect()).collect();
    let n = subs.len();
    let le: Vec<(usize, usize)> =
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| meet[a][b] == a).collect();
    let category = Arc::new(FinCategory::from_relation(&names, |a, b| le.contains(&(a, b))));
    let carrier = FinSet::new(names)?;
    let ctx = build_omega(2)?;
    let obj_map: Vec<usize> = subs.iter().map(|s| ctx.object_of_size(s.len()).unwrap()).collect();
    let mor_map = (0..category.num_morphisms())
        .map(|u| {
            let (a, b) = (obj_map[category.src(u)], obj_map[category.tgt(u)]);
            ctx.omega.hom(a, b).first().copied().ok_or_else(|| Error::InvalidFunctor("order not preserved".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let comparison = FinFunctor::new(category.clone(), ctx.omega.clone(), obj_map, mor_map)?;
    let bijective = comparison.is_fully_faithful() && {
        let mut seen = comparison.obj_map.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len() == ctx.omega.num_objects()
    };
    if !bijective || find_isomorphism(&category, &ctx.omega, &Budget::default())?.is_none() {
        return Err(Error::InvalidFunctor("comparison is not an isomorphism".into()));
    }
    Ok((InternalPoset { carrier, top, meet, le, category }, comparison))
}

/// A discrete opfibration that is injective on objects.
pub fn is_cosieve(p: &FinFunctor) -> bool {
    let mut seen = p.obj_map.clone();
    seen.sort_unstable();
    seen.dedup();
    seen.len() == p.obj_map.len() && is_discrete_opfibration(p)
}

/// (Fp)₀: the classifying map X → Ω of a cosieve p: E → X, for λ = 2.
pub fn classify_cosieve(p: &FinFunctor, ctx: &OmegaContext) -> Result<FinFunctor> {
    if ctx.lambda != 2 || ctx.min_card != 0 {
        return Err(Error::BadConfig("cosieves are classified by the λ = 2 context".into()));
    }
    if !is_cosieve(p) {
        return Err(Error::NotACosieve(format!("{} is not a mono discrete opfibration", p.table_id())));
    }
    let x = &p.cod;
    let (bot, top) = (ctx.object_of_size(0).unwrap(), ctx.object_of_size(1).unwrap());
    let obj_map: Vec<usize> = (0..x.num_objects()).map(|o| if p.obj_map.contains(&o) { top } else { bot }).collect();
    let mor_map = (0..x.num_morphisms())
        .map(|u| {
            let (s, t) = (obj_map[x.src(u)], obj_map[x.tgt(u)]);
            ctx.omega.hom(s, t).first().copied().ok_or_else(|| {
                Error::NotACosieve(format!("{} leaves the cosieve", x.morphism_id(u)))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    FinFunctor::new(x.clone(), ctx.omega.clone(), obj_map, mor_map)
}

/// The inclusions of all upward-closed sets of objects of X.
pub fn all_cosieves(x: &Arc<FinCategory>) -> Vec<FinFunctor> {
    let n = x.num_objects();
    let mut out = Vec::new();
    for mask in 0u64..(1 << n) {
        let keep: Vec<bool> = (0..n).map(|o| mask >> o & 1 == 1).collect();
        let closed = (0..x.num_morphisms()).all(|u| !keep[x.src(u)] || keep[x.tgt(u)]);
        if closed {
            out.push(x.full_subcategory(&keep).1);
        }
    }
    out
}

/// t_Ω ⊣ y₁, with y₁ picking the one-element set.
pub fn terminal_adjoint_check(ctx: &OmegaContext, budget: &Budget) -> Result<Adjunction> {
    let t = FinFunctor::to_terminal(ctx.omega.clone());
    match find_right_adjoint(&t, budget)? {
        Some(adj) if Some(adj.right.ob(0)) == ctx.object_of_size(1) => Ok(adj),
        Some(adj) => Err(Error::NotAdmissible(format!(
            "right adjoint of t_Ω picks {}, not the one-element set",
            ctx.omega.object_id(adj.right.ob(0))
        ))),
        None => Err(Error::NotAdmissible("Ω has no terminal object, so 1 is not admissible".into())),
    }
}

/// m: Ω×Ω → Ω classifying τ×τ, with Δ ⊣ m.
#[derive(Clone, Debug)]
pub struct ProductClassifier {
    pub m: FinFunctor,
    pub diagonal: FinFunctor,
    pub adjunction: Adjunction,
}

pub fn product_classifier(ctx: &OmegaContext, budget: &Budget) -> Result<ProductClassifier> {
    for &n in &ctx.sizes {
        for &k in &ctx.sizes {
            if n * k >= ctx.lambda || n * k < ctx.min_card {
                return Err(Error::MissingProduct(n, k));
            }
        }
    }
    let tt = ctx.tau.times(&ctx.tau);
    let m = classify(&tt, ctx)?;
    let id = FinFunctor::identity(ctx.omega.clone());
    let diagonal = id.pair(&id)?.retype(ctx.omega.clone(), m.dom.clone())?;
    let adjunction = find_adjunction(&diagonal, &m, budget)?
        .ok_or_else(|| Error::NoAdjoint("Δ has no right adjoint at the classified product".into()))?;
    Ok(ProductClassifier { m, diagonal, adjunction })
}

/// A right adjoint to (−×x) = m∘⟨1, x⟩.
pub fn exponential_check(ctx: &OmegaContext, prod: &ProductClassifier, x: usize, budget: &Budget) -> Result<Adjunction> {
    let id = FinFunctor::identity(ctx.omega.clone());
    let cx = FinFunctor::constant(ctx.omega.clone(), ctx.omega.clone(), x);
    let times_x = prod.m.after(&id.pair(&cx)?.retype(ctx.omega.clone(), prod.m.dom.clone())?)?;
    find_right_adjoint(&times_x, budget)?.ok_or_else(|| {
        let o = &ctx.omega;
        let witness = (0..o.num_objects())
            .flat_map(|a| (0..o.num_objects()).map(move |c| (a, c)))
            .find(|&(a, c)| (0..o.num_objects()).all(|r| o.hom(times_x.ob(a), c).len() != o.hom(a, r).len()))
            .map(|(a, c)| format!("no object r has |Ω({a}, r)| = |Ω({a}×x, {c})|"))
            .unwrap_or_else(|| "no functor satisfies the triangle identities".into());
        Error::NoAdjoint(witness)
    })
}

/// The table (x ⇒ c) as object sizes, from the right adjoints of (−×x).
pub fn implication_table(ctx: &OmegaContext, prod: &ProductClassifier, budget: &Budget) -> Result<Vec<Vec<usize>>> {
    let o = &ctx.omega;
    (0..o.num_objects())
        .map(|x| {
            let adj = exponential_check(ctx, prod, x, budget)?;
            Ok((0..o.num_objects()).map(|c| ctx.size(adj.right.ob(c))).collect())
        })
        .collect()
}
