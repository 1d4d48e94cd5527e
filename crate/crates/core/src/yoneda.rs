//! Yoneda-structure data over Ω_λ. PSh A = [A^op, Ω]; objects of PSh A are
//! read as presheaf tables, so y_A lands on literal hom-tables.

use std::sync::Arc;

use crate::budget::Budget;
use crate::category::{functor_category, FinCategory, FinFunctor, FunctorCategory, FunctorSearch, NatSearch, NatTrans};
use crate::comma::comma;
use crate::error::{Error, Result};
use crate::fib::{is_discrete_fibration_span, DiscreteFibrationSpan};
use crate::kan::{
    res, verify_absolute, verify_left_extension, verify_left_lifting, verify_pointwise_left_extension, CellKind,
    ExtensionCell,
};
use crate::omega::{build_omega, OmegaContext};
use crate::presheaf::Presheaf;
use crate::probes::Probe;
use crate::report::{Check, Report, Verdict};
use crate::span::{dfib_to_profunctor, profunctor_to_dfib, Profunctor, Span};

pub struct YonedaContext {
    pub omega: OmegaContext,
    cache: Vec<(Arc<FinCategory>, Arc<FunctorCategory>)>,
}

impl YonedaContext {
    pub fn new(lambda: usize) -> Result<YonedaContext> {
        Ok(YonedaContext { omega: build_omega(lambda)?, cache: Vec::new() })
    }

    /// A context whose PSh cache holds every base in `bases`.
    pub fn with_bases(lambda: usize, bases: &[Arc<FinCategory>], budget: &Budget) -> Result<YonedaContext> {
        let mut ctx = YonedaContext::new(lambda)?;
        for a in bases {
            if ctx.cached(a).is_none() {
                let p = ctx.build_psh(a, budget)?;
                ctx.cache.push((a.clone(), p));
            }
        }
        Ok(ctx)
    }

    pub fn lambda(&self) -> usize {
        self.omega.lambda
    }

    fn cached(&self, a: &Arc<FinCategory>) -> Option<Arc<FunctorCategory>> {
        self.cache.iter().find(|(b, _)| Arc::ptr_eq(a, b) || **a == **b).map(|(_, p)| p.clone())
    }

    fn build_psh(&self, a: &FinCategory, budget: &Budget) -> Result<Arc<FunctorCategory>> {
        Ok(Arc::new(functor_category(&Arc::new(a.opposite()), &self.omega.omega, budget)?))
    }

    /// PSh A, from the cache when A was given up front.
    pub fn psh(&self, a: &Arc<FinCategory>, budget: &Budget) -> Result<Arc<FunctorCategory>> {
        match self.cached(a) {
            Some(p) => Ok(p),
            None => self.build_psh(a, budget),
        }
    }

    /// The object of PSh A holding the presheaf `p`.
    pub fn psh_object(&self, psh: &FunctorCategory, p: &Presheaf) -> Result<usize> {
        psh.object_of(&self.omega.presheaf_functor(p, &psh.dom)?)
    }

    /// The presheaf at an object of PSh A.
    pub fn presheaf_at(&self, psh: &FunctorCategory, base: &Arc<FinCategory>, o: usize) -> Presheaf {
        self.omega.functor_presheaf(psh.functor(o), base)
    }
}

/// |B(fa, b)| for every a, b, each below λ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibilityCertificate {
    pub f: FinFunctor,
    pub homs: Vec<Vec<usize>>,
}

pub fn is_admissible(f: &FinFunctor, ctx: &YonedaContext) -> Option<AdmissibilityCertificate> {
    let b = &f.cod;
    let homs: Vec<Vec<usize>> =
        (0..f.dom.num_objects()).map(|a| (0..b.num_objects()).map(|y| b.hom(f.ob(a), y).len()).collect()).collect();
    let fits = |n: usize| ctx.omega.object_of_size(n).is_some();
    homs.iter().flatten().all(|&n| fits(n)).then(|| AdmissibilityCertificate { f: f.clone(), homs })
}

pub fn is_admissible_object(a: &Arc<FinCategory>, ctx: &YonedaContext) -> bool {
    is_admissible(&FinFunctor::identity(a.clone()), ctx).is_some()
}

/// A and PSh A both admissible.
pub fn is_small(a: &Arc<FinCategory>, ctx: &YonedaContext, budget: &Budget) -> Result<bool> {
    if !is_admissible_object(a, ctx) {
        return Ok(false);
    }
    let psh = ctx.psh(a, budget)?;
    Ok(is_admissible_object(&psh.category, ctx))
}

fn position(hom: &[usize], m: usize) -> usize {
    hom.iter().position(|&k| k == m).expect("composite in hom")
}

fn require_admissible(f: &FinFunctor, ctx: &YonedaContext) -> Result<()> {
    match is_admissible(f, ctx) {
        Some(_) => Ok(()),
        None => Err(Error::NotAdmissible(f.table_id())),
    }
}

fn require_admissible_pair(f: &FinFunctor, ctx: &YonedaContext) -> Result<()> {
    if !is_admissible_object(&f.dom, ctx) {
        return Err(Error::NotAdmissible(format!("domain of {}", f.table_id())));
    }
    require_admissible(f, ctx)
}

/// B(f,1): B → PSh A for admissible f, b ↦ B(f−, b), with B(f,1)(v) given by postcomposition.
pub fn b_f1(f: &FinFunctor, ctx: &YonedaContext, budget: &Budget) -> Result<FinFunctor> {
    require_admissible(f, ctx)?;
    let psh = ctx.psh(&f.dom, budget)?;
    let (a, b) = (&f.dom, &f.cod);
    let columns: Vec<FinFunctor> = (0..b.num_objects())
        .map(|y| ctx.omega.presheaf_functor(&Presheaf::hom_into(f, y), &psh.dom))
        .collect::<Result<_>>()?;
    let obj_map = columns.iter().map(|c| psh.object_of(c)).collect::<Result<Vec<_>>>()?;
    let mor_map = (0..b.num_morphisms())
        .map(|v| {
            let (y1, y2) = (b.src(v), b.tgt(v));
            let components = (0..a.num_objects())
                .map(|x| {
                    let fx = f.ob(x);
                    let table: Vec<usize> =
                        b.hom(fx, y1).iter().map(|&h| position(b.hom(fx, y2), b.compose(v, h))).collect();
                    let (n, m) = (b.hom(fx, y1).len(), b.hom(fx, y2).len());
                    ctx.omega.function(n, m, &table).expect("hom sizes are below λ")
                })
                .collect();
            psh.morphism_of(&NatTrans::new(columns[y1].clone(), columns[y2].clone(), components)?)
        })
        .collect::<Result<Vec<_>>>()?;
    FinFunctor::new(b.clone(), psh.category.clone(), obj_map, mor_map)
}

/// y_A = A(1,1).
pub fn yoneda_map(a: &Arc<FinCategory>, ctx: &YonedaContext, budget: &Budget) -> Result<FinFunctor> {
    b_f1(&FinFunctor::identity(a.clone()), ctx, budget)
}

/// χ^f: y_A ⇒ B(f,1)∘f, with (χ^f_a)_x: A(x, a) → B(fx, fa) the arrow map of f.
pub fn chi(f: &FinFunctor, ctx: &YonedaContext, budget: &Budget) -> Result<NatTrans> {
    require_admissible_pair(f, ctx)?;
    let y = yoneda_map(&f.dom, ctx, budget)?;
    let bf = b_f1(f, ctx, budget)?.after(f)?;
    let psh = ctx.psh(&f.dom, budget)?;
    let (a, b) = (&f.dom, &f.cod);
    let components = (0..a.num_objects())
        .map(|t| {
            let comps = (0..a.num_objects())
                .map(|x| {
                    let table: Vec<usize> =
                        a.hom(x, t).iter().map(|&h| position(b.hom(f.ob(x), f.ob(t)), f.mor(h))).collect();
                    let (n, m) = (a.hom(x, t).len(), b.hom(f.ob(x), f.ob(t)).len());
                    ctx.omega.function(n, m, &table).expect("hom sizes are below λ")
                })
                .collect();
            let (src, tgt) = (psh.functor(y.ob(t)), psh.functor(bf.ob(t)));
            psh.morphism_of(&NatTrans::new(src.clone(), tgt.clone(), comps)?)
        })
        .collect::<Result<Vec<_>>>()?;
    NatTrans::new(y, bf, components)
}

/// χ^f as a cell y_A ⇒ B(f,1)∘f.
pub fn chi_cell(f: &FinFunctor, ctx: &YonedaContext, budget: &Budget) -> Result<ExtensionCell> {
    let c = chi(f, ctx, budget)?;
    ExtensionCell::new(c.dom.clone(), f.clone(), b_f1(f, ctx, budget)?, c)
}

/// res_g: PSh A → PSh C for g: C → A.
pub fn restriction_of(g: &FinFunctor, ctx: &YonedaContext, budget: &Budget) -> Result<FinFunctor> {
    res(g, &*ctx.psh(&g.dom, budget)?, &*ctx.psh(&g.cod, budget)?)
}

/// The profunctor P(a,b) = g(b)(a) of a functor g: B → PSh A.
fn profunctor_of(g: &FinFunctor, a: &Arc<FinCategory>, psh: &FunctorCategory, ctx: &YonedaContext) -> Result<Profunctor> {
    let b = &g.dom;
    let columns: Vec<Presheaf> = (0..b.num_objects()).map(|y| ctx.presheaf_at(psh, a, g.ob(y))).collect();
    let sizes = (0..a.num_objects()).map(|x| columns.iter().map(|c| c.sizes[x]).collect()).collect();
    let left = (0..a.num_morphisms()).map(|u| columns.iter().map(|c| c.action[u].clone()).collect()).collect();
    let right = (0..a.num_objects())
        .map(|x| {
            (0..b.num_morphisms())
                .map(|v| ctx.omega.table(psh.transformation(g.mor(v)).at(x)).to_vec())
                .collect()
        })
        .collect();
    Profunctor::new(a.clone(), b.clone(), sizes, left, right)
}

/// G_{A,B}(g): the discrete fibration span A ← E → B of g: B → PSh A.
pub fn attribute_of(g: &FinFunctor, a: &Arc<FinCategory>, ctx: &YonedaContext, budget: &Budget) -> Result<DiscreteFibrationSpan> {
    let psh = ctx.psh(a, budget)?;
    if *g.cod != *psh.category {
        return Err(Error::ShapeMismatch("map does not land in PSh A".into()));
    }
    profunctor_to_dfib(&profunctor_of(g, a, &psh, ctx)?)
}

/// A discrete fibration span whose fibres all have admissible cardinality.
pub fn attribute_check(s: &Span, ctx: &YonedaContext) -> bool {
    match is_discrete_fibration_span(&s.left, &s.right) {
        Some(d) => {
            dfib_to_profunctor(&d).sizes.iter().flatten().all(|&n| ctx.omega.object_of_size(n).is_some())
        }
        None => false,
    }
}

/// The map B → PSh A classifying an attribute from A to B.
pub fn classifying_map(s: &Span, ctx: &YonedaContext, budget: &Budget) -> Result<FinFunctor> {
    let d = is_discrete_fibration_span(&s.left, &s.right)
        .ok_or_else(|| Error::NotAFibration { beta: "span".into(), object: "apex".into() })?;
    let p = dfib_to_profunctor(&d);
    let (a, b) = (p.a.clone(), p.b.clone());
    let psh = ctx.psh(&a, budget)?;
    let columns: Vec<FinFunctor> = (0..b.num_objects())
        .map(|y| {
            let column = Presheaf::new(
                a.clone(),
                (0..a.num_objects()).map(|x| p.sizes[x][y]).collect(),
                (0..a.num_morphisms()).map(|u| p.left[u][y].clone()).collect(),
            )?;
            ctx.omega.presheaf_functor(&column, &psh.dom)
        })
        .collect::<Result<_>>()?;
    let obj_map = columns.iter().map(|c| psh.object_of(c)).collect::<Result<Vec<_>>>()?;
    let mor_map = (0..b.num_morphisms())
        .map(|v| {
            let (y1, y2) = (b.src(v), b.tgt(v));
            let components = (0..a.num_objects())
                .map(|x| ctx.omega.function(p.sizes[x][y1], p.sizes[x][y2], &p.right[x][v]).expect("sizes below λ"))
                .collect();
            psh.morphism_of(&NatTrans::new(columns[y1].clone(), columns[y2].clone(), components)?)
        })
        .collect::<Result<Vec<_>>>()?;
    FinFunctor::new(b, psh.category.clone(), obj_map, mor_map)
}

/// ε_A = G_{A,PSh A}(1).
pub fn epsilon(a: &Arc<FinCategory>, ctx: &YonedaContext, budget: &Budget) -> Result<DiscreteFibrationSpan> {
    let psh = ctx.psh(a, budget)?;
    attribute_of(&FinFunctor::identity(psh.category.clone()), a, ctx, budget)
}

/// Compares χ^f with the span-level construction: G(χ^f), read through the
/// canonical identifications G(y_A) = A/A and G(B(f,1)f) = f/f, must be the
/// map h_f: A/A → f/f, (x, t, h) ↦ (x, t, fh).
pub fn chi_matches_span_form(f: &FinFunctor, ctx: &YonedaContext, budget: &Budget) -> Result<bool> {
    let c = chi(f, ctx, budget)?;
    let psh = ctx.psh(&f.dom, budget)?;
    let (a, b) = (&f.dom, &f.cod);
    let id = FinFunctor::identity(a.clone());
    let aa = comma(&id, &id)?;
    let ff = comma(f, f)?;
    let h_f = ff.induced(&aa.p, &aa.q, &aa.lambda.whisker_left(f)?)?;
    for e in 0..aa.apex.num_objects() {
        let (x, t, h) = (aa.p.ob(e), aa.q.ob(e), aa.lambda.at(e));
        // G(χ^f) on the element h ∈ y_A(t)(x)
        let transformed = psh.transformation(c.at(t));
        let index = position(a.hom(x, t), h);
        let moved = ctx.omega.table(transformed.at(x))[index];
        let image = b.hom(f.ob(x), f.ob(t))[moved];
        let target = ff.object_at(x, image, t).expect("object of f/f");
        if h_f.ob(e) != target {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether B'(f,1), computed over Ω_λ′, lands in presheaves valued in the
/// image of Ω_λ → Ω_λ′; where it does, it must agree with [A^op, i]∘B(f,1).
pub fn admissible_via_enlargement(
    f: &FinFunctor,
    small: &YonedaContext,
    big: &YonedaContext,
    budget: &Budget,
) -> Result<bool> {
    if big.lambda() <= small.lambda() {
        return Err(Error::BadConfig("the enlarged bound must exceed the small one".into()));
    }
    let wide = b_f1(f, big, budget)?;
    let psh_big = big.psh(&f.dom, budget)?;
    let fits = (0..f.cod.num_objects()).all(|y| {
        let p = big.presheaf_at(&psh_big, &f.dom, wide.ob(y));
        p.sizes.iter().all(|&n| small.omega.object_of_size(n).is_some())
    });
    let direct = is_admissible(f, small).is_some();
    if fits != direct {
        return Err(Error::BadConfig(format!("enlargement and hom count disagree on {}", f.table_id())));
    }
    if fits {
        let narrow = b_f1(f, small, budget)?;
        let psh_small = small.psh(&f.dom, budget)?;
        for y in 0..f.cod.num_objects() {
            if small.presheaf_at(&psh_small, &f.dom, narrow.ob(y)) != big.presheaf_at(&psh_big, &f.dom, wide.ob(y)) {
                return Ok(false);
            }
        }
        for v in 0..f.cod.num_morphisms() {
            let (s, w) = (psh_small.transformation(narrow.mor(v)), psh_big.transformation(wide.mor(v)));
            let same = (0..f.dom.num_objects()).all(|x| small.omega.table(s.at(x)) == big.omega.table(w.at(x)));
            if !same {
                return Ok(false);
            }
        }
    }
    Ok(fits)
}

/// All 2-cells φ: y_A ⇒ g∘f, over all g: B → PSh A, that pass the probed
/// absolute left-lifting test.
fn absolute_liftings(f: &FinFunctor, ctx: &YonedaContext, probes: &[Probe], budget: &Budget) -> Result<Vec<ExtensionCell>> {
    let y = yoneda_map(&f.dom, ctx, budget)?;
    let psh = ctx.psh(&f.dom, budget)?;
    let mut found = Vec::new();
    for g in FunctorSearch::new(f.cod.clone(), psh.category.clone()).collect(budget)? {
        let gf = g.after(f)?;
        for phi in NatSearch::new(&y, &gf).collect(budget)? {
            let cell = ExtensionCell::new(y.clone(), f.clone(), g.clone(), phi)?;
            if verify_left_lifting(&cell, budget)? && verify_absolute(&cell, CellKind::Lifting, probes, budget)?.all_pass() {
                found.push(cell);
            }
        }
    }
    Ok(found)
}

/// Axiom 1 (χ^f is a probed absolute left lifting), axiom 3* (every probed
/// absolute left lifting of y_A is a pointwise left extension), density of
/// y_A, and fully faithfulness of y_A and of f against invertibility of χ^f.
pub fn verify_axioms(ctx: &YonedaContext, corpus: &[(String, FinFunctor)], probes: &[Probe], budget: &Budget) -> Result<Report> {
    let mut report = Report::new();
    for (name, f) in corpus {
        if require_admissible_pair(f, ctx).is_err() {
            report.push(Check::new(format!("admissible/{name}"), Verdict::Inconclusive).with_witness("not admissible"));
            continue;
        }
        let cell = chi_cell(f, ctx, budget)?;
        let axiom1 = verify_absolute(&cell, CellKind::Lifting, probes, budget)?;
        let lifting = verify_left_lifting(&cell, budget)?;
        report.push(Check::from_bool(format!("axiom-1/{name}"), lifting && axiom1.all_pass(), || {
            let failed: Vec<String> = axiom1.failures().map(|c| c.id.clone()).collect();
            format!("lifting {lifting}; failing probes {}", failed.join(", "))
        }));

        let cells = absolute_liftings(f, ctx, probes, budget)?;
        let mut bad = Vec::new();
        for c in &cells {
            if !verify_pointwise_left_extension(c, budget)?.holds() {
                bad.push(c.h.table_id());
            }
        }
        report.push(Check::from_bool(format!("axiom-3*/{name}"), bad.is_empty() && !cells.is_empty(), || {
            format!("{} of {} liftings not pointwise: {}", bad.len(), cells.len(), bad.join(", "))
        }));

        let invertible = cell.phi.is_invertible();
        let ff = f.is_fully_faithful();
        report.push(Check::from_bool(format!("ff-chi/{name}"), invertible == ff, || {
            format!("fully faithful {ff}, χ invertible {invertible}")
        }));
    }
    let mut bases: Vec<Arc<FinCategory>> = Vec::new();
    for (_, f) in corpus {
        if is_admissible_object(&f.dom, ctx) && !bases.iter().any(|b| **b == *f.dom) {
            bases.push(f.dom.clone());
        }
    }
    for (k, a) in bases.iter().enumerate() {
        let y = yoneda_map(a, ctx, budget)?;
        report.push(Check::from_bool(format!("yoneda-ff/{k}"), y.is_fully_faithful(), || "y_A not fully faithful".into()));
        let id = FinFunctor::identity(y.cod.clone());
        let dense = ExtensionCell::new(y.clone(), y.clone(), id, NatTrans::identity(&y))?;
        report.push(Check::from_bool(format!("density/{k}"), verify_left_extension(&dense, budget)?, || {
            "identity is not a left extension of y along y".into()
        }));
    }
    Ok(report)
}
