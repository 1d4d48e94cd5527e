//! Lax, pseudo and strict pullbacks of finite categories.
//!
//! The comma f/g has objects (a, h: fa → gc, c) and morphisms (α, γ) with
//! h′∘f(α) = g(γ)∘h. The pseudo and strict pullbacks are the full
//! subcategories on invertible and identity h.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::category::{FinCategory, FinFunctor, FunctorSearch, Morphism, NatSearch, NatTrans};
use crate::error::{Error, Result};
use crate::probes::Probe;
use crate::report::{Check, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Lax,
    Pseudo,
    Strict,
}

impl Flavor {
    /// Whether a 2-cell component is allowed for this flavor.
    pub fn admits(self, cat: &FinCategory, m: usize) -> bool {
        match self {
            Flavor::Lax => true,
            Flavor::Pseudo => cat.is_iso(m),
            Flavor::Strict => cat.is_identity(m),
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Lax => "lax",
            Flavor::Pseudo => "pseudo",
            Flavor::Strict => "strict",
        })
    }
}

impl std::str::FromStr for Flavor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Flavor> {
        match s {
            "lax" => Ok(Flavor::Lax),
            "pseudo" => Ok(Flavor::Pseudo),
            "strict" => Ok(Flavor::Strict),
            _ => Err(Error::BadConfig(format!("unknown flavor {s}"))),
        }
    }
}

/// A square p: P → A, q: P → C with λ: f∘p ⇒ g∘q over the cospan (f, g).
#[derive(Clone, Debug)]
pub struct CommaSquare {
    pub f: FinFunctor,
    pub g: FinFunctor,
    pub apex: Arc<FinCategory>,
    pub p: FinFunctor,
    pub q: FinFunctor,
    pub lambda: NatTrans,
    pub flavor: Flavor,
    objects: HashMap<(usize, usize, usize), usize>,
    morphisms: HashMap<(usize, usize, usize, usize), usize>,
}

fn same(a: &Arc<FinCategory>, b: &Arc<FinCategory>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl CommaSquare {
    /// Wraps arbitrary square data, checking its typing and flavor.
    pub fn from_parts(
        f: FinFunctor,
        g: FinFunctor,
        p: FinFunctor,
        q: FinFunctor,
        lambda: NatTrans,
        flavor: Flavor,
    ) -> Result<CommaSquare> {
        if !same(&f.cod, &g.cod) {
            return Err(Error::CospanMismatch);
        }
        if !same(&p.dom, &q.dom) || !same(&p.cod, &f.dom) || !same(&q.cod, &g.dom) {
            return Err(Error::ShapeMismatch("projections do not match the cospan".into()));
        }
        let fp = f.after(&p)?;
        let gq = g.after(&q)?;
        if lambda.dom != fp || lambda.cod != gq || !lambda.is_valid() {
            return Err(Error::ShapeMismatch("2-cell is not f∘p ⇒ g∘q".into()));
        }
        if !lambda.components.iter().all(|&m| flavor.admits(&f.cod, m)) {
            return Err(Error::ShapeMismatch(format!("2-cell is not {flavor}")));
        }
        let apex = p.dom.clone();
        let mut objects = HashMap::new();
        for x in 0..apex.num_objects() {
            objects.insert((p.ob(x), lambda.at(x), q.ob(x)), x);
        }
        let mut morphisms = HashMap::new();
        for m in 0..apex.num_morphisms() {
            morphisms.insert((apex.src(m), apex.tgt(m), p.mor(m), q.mor(m)), m);
        }
        Ok(CommaSquare { f, g, apex, p, q, lambda, flavor, objects, morphisms })
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        &self.f.cod
    }

    /// Apex object (a, h, c), if present.
    pub fn object_at(&self, a: usize, h: usize, c: usize) -> Option<usize> {
        self.objects.get(&(a, h, c)).copied()
    }

    /// Apex morphism with the given ends and components, if present.
    pub fn morphism_at(&self, src: usize, tgt: usize, alpha: usize, gamma: usize) -> Option<usize> {
        self.morphisms.get(&(src, tgt, alpha, gamma)).copied()
    }

    /// The functor δ: X → P determined by (h, k, φ), read off the apex encoding.
    pub fn induced(&self, h: &FinFunctor, k: &FinFunctor, phi: &NatTrans) -> Result<FinFunctor> {
        let x = &h.dom;
        let mut obj_map = Vec::with_capacity(x.num_objects());
        for o in 0..x.num_objects() {
            let d = self
                .object_at(h.ob(o), phi.at(o), k.ob(o))
                .ok_or_else(|| Error::NoLift(format!("no apex object over {}", x.object_id(o))))?;
            obj_map.push(d);
        }
        let mut mor_map = Vec::with_capacity(x.num_morphisms());
        for u in 0..x.num_morphisms() {
            let m = self
                .morphism_at(obj_map[x.src(u)], obj_map[x.tgt(u)], h.mor(u), k.mor(u))
                .ok_or_else(|| Error::NoLift(format!("no apex morphism over {}", x.morphism_id(u))))?;
            mor_map.push(m);
        }
        FinFunctor::new(x.clone(), self.apex.clone(), obj_map, mor_map)
    }

    /// Full subcategory of the apex on the objects with `keep`, as a square of the given flavor.
    pub fn restrict(&self, keep: impl Fn(usize) -> bool, flavor: Flavor) -> Result<CommaSquare> {
        let mask: Vec<bool> = (0..self.apex.num_objects()).map(keep).collect();
        let (sub, inc) = self.apex.full_subcategory(&mask);
        let p = self.p.after(&inc)?;
        let q = self.q.after(&inc)?;
        let lambda = NatTrans::new(
            self.f.after(&p)?,
            self.g.after(&q)?,
            inc.obj_map.iter().map(|&x| self.lambda.at(x)).collect(),
        )?;
        debug_assert!(Arc::ptr_eq(&sub, &p.dom));
        CommaSquare::from_parts(self.f.clone(), self.g.clone(), p, q, lambda, flavor)
    }

    pub fn object_ids(&self) -> Vec<String> {
        self.apex.objects().to_vec()
    }

    pub fn morphism_ids(&self) -> Vec<String> {
        self.apex.morphisms().iter().map(|m| m.id.clone()).collect()
    }
}

/// The comma category f/g with its projections and canonical 2-cell.
pub fn comma(f: &FinFunctor, g: &FinFunctor) -> Result<CommaSquare> {
    if !same(&f.cod, &g.cod) {
        return Err(Error::CospanMismatch);
    }
    let (a_cat, b_cat, c_cat) = (&f.dom, &f.cod, &g.dom);
    let mut triples = Vec::new();
    let mut index = HashMap::new();
    let mut objects = Vec::new();
    for a in 0..a_cat.num_objects() {
        for c in 0..c_cat.num_objects() {
            for &h in b_cat.hom(f.ob(a), g.ob(c)) {
                index.insert((a, h, c), triples.len());
                triples.push((a, h, c));
                objects.push(format!(
                    "({},{},{})",
                    a_cat.object_id(a),
                    b_cat.morphism_id(h),
                    c_cat.object_id(c)
                ));
            }
        }
    }
    let mut morphisms = Vec::new();
    let mut parts = Vec::new();
    let mut mindex = HashMap::new();
    let mut identity = vec![0; triples.len()];
    for (x, &(a, h, c)) in triples.iter().enumerate() {
        for alpha in a_cat.out_morphisms(a) {
            let a2 = a_cat.tgt(alpha);
            for gamma in c_cat.out_morphisms(c) {
                let c2 = c_cat.tgt(gamma);
                let rhs = b_cat.compose(g.mor(gamma), h);
                for &h2 in b_cat.hom(f.ob(a2), g.ob(c2)) {
                    if b_cat.compose(h2, f.mor(alpha)) != rhs {
                        continue;
                    }
                    let y = index[&(a2, h2, c2)];
                    if x == y && a_cat.is_identity(alpha) && c_cat.is_identity(gamma) {
                        identity[x] = morphisms.len();
                    }
                    mindex.insert((x, y, alpha, gamma), morphisms.len());
                    parts.push((alpha, gamma));
                    morphisms.push(Morphism {
                        id: format!(
                            "({},{}):{}→{}",
                            a_cat.morphism_id(alpha),
                            c_cat.morphism_id(gamma),
                            objects[x],
                            objects[y]
                        ),
                        src: x,
                        tgt: y,
                    });
                }
            }
        }
    }
    let ends: Vec<(usize, usize)> = morphisms.iter().map(|m| (m.src, m.tgt)).collect();
    let apex = Arc::new(FinCategory::from_parts(objects, morphisms, identity, |m2, m1| {
        let (a1, g1) = parts[m1];
        let (a2, g2) = parts[m2];
        mindex[&(ends[m1].0, ends[m2].1, a_cat.compose(a2, a1), c_cat.compose(g2, g1))]
    }));
    let p = FinFunctor::new_unchecked(
        apex.clone(),
        a_cat.clone(),
        triples.iter().map(|t| t.0).collect(),
        parts.iter().map(|t| t.0).collect(),
    );
    let q = FinFunctor::new_unchecked(
        apex.clone(),
        c_cat.clone(),
        triples.iter().map(|t| t.2).collect(),
        parts.iter().map(|t| t.1).collect(),
    );
    let lambda = NatTrans::new_unchecked(f.after(&p)?, g.after(&q)?, triples.iter().map(|t| t.1).collect());
    CommaSquare::from_parts(f.clone(), g.clone(), p, q, lambda, Flavor::Lax)
}

/// Full subcategory of f/g on invertible h.
pub fn pseudo_pullback(f: &FinFunctor, g: &FinFunctor) -> Result<CommaSquare> {
    let sq = comma(f, g)?;
    let b = sq.base().clone();
    let lam = sq.lambda.components.clone();
    sq.restrict(|x| b.is_iso(lam[x]), Flavor::Pseudo)
}

/// Full subcategory of f/g on identity h.
pub fn strict_pullback(f: &FinFunctor, g: &FinFunctor) -> Result<CommaSquare> {
    let sq = comma(f, g)?;
    let b = sq.base().clone();
    let lam = sq.lambda.components.clone();
    sq.restrict(|x| b.is_identity(lam[x]), Flavor::Strict)
}

/// The square of the given flavor over (f, g).
pub fn pullback_of_flavor(f: &FinFunctor, g: &FinFunctor, flavor: Flavor) -> Result<CommaSquare> {
    match flavor {
        Flavor::Lax => comma(f, g),
        Flavor::Pseudo => pseudo_pullback(f, g),
        Flavor::Strict => strict_pullback(f, g),
    }
}

/// The lax pullback in the slice over ℂ: objects of f/g with β(h) an identity,
/// together with the induced functor to ℂ.
pub fn comma_over_base(
    f: &FinFunctor,
    g: &FinFunctor,
    alpha: &FinFunctor,
    beta: &FinFunctor,
    gamma: &FinFunctor,
) -> Result<(CommaSquare, FinFunctor)> {
    if beta.after(f)? != *alpha {
        return Err(Error::TriangleMismatch("α ≠ β∘f".into()));
    }
    if beta.after(g)? != *gamma {
        return Err(Error::TriangleMismatch("γ ≠ β∘g".into()));
    }
    let full = comma(f, g)?;
    let base = beta.cod.clone();
    let lam = full.lambda.components.clone();
    let sq = full.restrict(|x| base.is_identity(beta.mor(lam[x])), Flavor::Lax)?;
    let to_base = alpha.after(&sq.p)?;
    Ok((sq, to_base))
}

fn describe_functor(f: &FinFunctor) -> String {
    f.table_id()
}

type FunctorKey = (Vec<usize>, Vec<usize>);

fn key(f: &FinFunctor) -> FunctorKey {
    (f.obj_map.clone(), f.mor_map.clone())
}

/// Checks the 1- and 2-dimensional universal property of `sq` against each probe.
/// One check per probe and dimension; failures carry a witness.
pub fn verify_lax_pullback(sq: &CommaSquare, probes: &[Probe], budget: &Budget) -> Result<Report> {
    let mut report = Report::new();
    for probe in probes {
        let x = &probe.category;
        let deltas = FunctorSearch::new(x.clone(), sq.apex.clone()).collect(budget)?;
        report.push(one_dimensional(sq, probe, &deltas, budget)?);
        report.push(two_dimensional(sq, probe, &deltas, budget)?);
    }
    Ok(report)
}

fn one_dimensional(sq: &CommaSquare, probe: &Probe, deltas: &[FinFunctor], budget: &Budget) -> Result<Check> {
    let id = format!("{}/{}/1-dim", sq.flavor, probe.name);
    let x = &probe.category;
    let mut hits: HashMap<(FunctorKey, FunctorKey, Vec<usize>), usize> = HashMap::new();
    for d in deltas {
        let h = sq.p.after_unchecked(d);
        let k = sq.q.after_unchecked(d);
        let phi: Vec<usize> = d.obj_map.iter().map(|&o| sq.lambda.at(o)).collect();
        *hits.entry((key(&h), key(&k), phi)).or_default() += 1;
    }
    let hs = FunctorSearch::new(x.clone(), sq.f.dom.clone()).collect(budget)?;
    let ks = FunctorSearch::new(x.clone(), sq.g.dom.clone()).collect(budget)?;
    let base = sq.base().clone();
    let flavor = sq.flavor;
    let mut witness = None;
    let mut triples = 0usize;
    'outer: for h in &hs {
        let fh = sq.f.after_unchecked(h);
        for k in &ks {
            let gk = sq.g.after_unchecked(k);
            let hk = (key(h), key(k));
            let mut bad = None;
            NatSearch::new(&fh, &gk)
                .components(|_, m| flavor.admits(&base, m))
                .for_each(budget, |phi| {
                    triples += 1;
                    let n = hits.get(&(hk.0.clone(), hk.1.clone(), phi.components.clone())).copied().unwrap_or(0);
                    if n != 1 {
                        bad = Some((phi.table_id(), n));
                        return false;
                    }
                    true
                })?;
            if let Some((phi, n)) = bad {
                witness = Some(format!(
                    "(h,k,φ) = ({}, {}, {}) factors through {} apex maps",
                    describe_functor(h),
                    describe_functor(k),
                    phi,
                    n
                ));
                break 'outer;
            }
        }
    }
    if witness.is_none() && triples != deltas.len() {
        witness = Some(format!("{} apex maps but {} cones", deltas.len(), triples));
    }
    Ok(match witness {
        None => Check::pass(id),
        Some(w) => Check::fail(id, w),
    })
}

fn two_dimensional(sq: &CommaSquare, probe: &Probe, deltas: &[FinFunctor], budget: &Budget) -> Result<Check> {
    let id = format!("{}/{}/2-dim", sq.flavor, probe.name);
    let base = sq.base();
    let apex = &sq.apex;
    let n = apex.num_objects();
    // pairs of apex objects with both projected homs inhabited; any π or (α,γ) needs these
    let reach: Vec<bool> = (0..n * n)
        .map(|i| {
            let (x, y) = (i / n, i % n);
            !sq.f.dom.hom(sq.p.ob(x), sq.p.ob(y)).is_empty() && !sq.g.dom.hom(sq.q.ob(x), sq.q.ob(y)).is_empty()
        })
        .collect();
    let budget_meter = budget.meter();
    for d1 in deltas {
        let (pd1, qd1) = (sq.p.after_unchecked(d1), sq.q.after_unchecked(d1));
        for d2 in deltas {
            budget_meter.tick()?;
            if !d1.obj_map.iter().zip(&d2.obj_map).all(|(&x, &y)| reach[x * n + y]) {
                continue;
            }
            let (pd2, qd2) = (sq.p.after_unchecked(d2), sq.q.after_unchecked(d2));
            let mut hits: HashMap<(Vec<usize>, Vec<usize>), usize> = HashMap::new();
            NatSearch::new(d1, d2).for_each(budget, |pi| {
                let a: Vec<usize> = pi.components.iter().map(|&m| sq.p.mor(m)).collect();
                let c: Vec<usize> = pi.components.iter().map(|&m| sq.q.mor(m)).collect();
                *hits.entry((a, c)).or_default() += 1;
                true
            })?;
            let alphas = NatSearch::new(&pd1, &pd2).collect(budget)?;
            if alphas.is_empty() {
                if !hits.is_empty() {
                    return Ok(Check::fail(id, "a 2-cell between apex maps projects to nothing"));
                }
                continue;
            }
            let gammas = NatSearch::new(&qd1, &qd2).collect(budget)?;
            let mut compatible = 0usize;
            for a in &alphas {
                for c in gammas.iter() {
                    let ok = (0..d1.obj_map.len()).all(|o| {
                        base.compose(sq.lambda.at(d2.ob(o)), sq.f.mor(a.at(o)))
                            == base.compose(sq.g.mor(c.at(o)), sq.lambda.at(d1.ob(o)))
                    });
                    if !ok {
                        continue;
                    }
                    compatible += 1;
                    let n = hits.get(&(a.components.clone(), c.components.clone())).copied().unwrap_or(0);
                    if n != 1 {
                        return Ok(Check::fail(
                            id,
                            format!(
                                "(α,γ) = ({}, {}) between {} and {} lifts to {} 2-cells",
                                a.table_id(),
                                c.table_id(),
                                d1.table_id(),
                                d2.table_id(),
                                n
                            ),
                        ));
                    }
                }
            }
            if compatible != hits.values().sum::<usize>() {
                return Ok(Check::fail(id, "a 2-cell between apex maps projects to an incompatible pair"));
            }
        }
    }
    Ok(Check::pass(id))
}

/// A back square exhibiting its apex A as a comma of (f: C → D, g: B → D),
/// and a front square X → A, X → Y over h: Y → C with u∘x = h∘y strictly.
#[derive(Clone, Debug)]
pub struct PastingData {
    pub back: CommaSquare,
    pub h: FinFunctor,
    pub x: FinFunctor,
    pub y: FinFunctor,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PastingOutcome {
    pub composite_passes: bool,
    pub front_passes: bool,
    pub composite: Report,
    pub front: Report,
}

impl PastingOutcome {
    /// The pasting law: the composite is universal iff the front is a pullback.
    pub fn holds(&self) -> bool {
        self.composite_passes == self.front_passes
    }
}

impl PastingData {
    /// The front square as a strict square over (h, u).
    pub fn front_square(&self) -> Result<CommaSquare> {
        let u = &self.back.p;
        let hy = self.h.after(&self.y)?;
        let ux = u.after(&self.x)?;
        if hy != ux {
            return Err(Error::ShapeMismatch("front square does not commute".into()));
        }
        CommaSquare::from_parts(self.h.clone(), u.clone(), self.y.clone(), self.x.clone(), NatTrans::identity(&hy), Flavor::Strict)
    }

    /// The pasted square over (f∘h, g) with 2-cell λx.
    pub fn composite_square(&self) -> Result<CommaSquare> {
        let back = &self.back;
        let fh = back.f.after(&self.h)?;
        let vx = back.q.after(&self.x)?;
        let lx = back.lambda.whisker_right(&self.x)?;
        let lambda = NatTrans::new(fh.after(&self.y)?, back.g.after(&vx)?, lx.components)?;
        CommaSquare::from_parts(fh, back.g.clone(), self.y.clone(), vx, lambda, back.flavor)
    }
}

/// Runs both verifiers and reports whether the pasting law's equivalence holds.
pub fn pasting_check(data: &PastingData, probes: &[Probe], budget: &Budget) -> Result<PastingOutcome> {
    let front = verify_lax_pullback(&data.front_square()?, probes, budget)?;
    let composite = verify_lax_pullback(&data.composite_square()?, probes, budget)?;
    Ok(PastingOutcome { composite_passes: composite.passed(), front_passes: front.passed(), composite, front })
}
