//! Spans of finite categories and the constructions built on them.
//!
//! A span (d, E, c) runs from the codomain of d to the codomain of c, and
//! `span_compose(s1, s2)` is s2∘s1, formed by the strict pullback of c₁
//! along d₂.

mod classify;
mod grothendieck;
mod profunctor;

use std::sync::Arc;

pub use classify::{check_classifying, classify, iso_over, lift_2cell, maps_over, pull_back, LiftedCell};
pub use grothendieck::{el, CatValuedPresheaf, Grothendieck};
pub use profunctor::{
    dfib_to_profunctor, dfib_transpose, dfib_untranspose, profunctor_to_dfib, Profunctor,
};

use crate::budget::Budget;
use crate::category::{FinCategory, FinFunctor, FunctorSearch, NatTrans};
use crate::comma::{strict_pullback, CommaSquare};
use crate::error::{Error, Result};

fn same(a: &Arc<FinCategory>, b: &Arc<FinCategory>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A span A ← E → B.
#[derive(Clone, Debug, PartialEq)]
pub struct Span {
    pub left: FinFunctor,
    pub right: FinFunctor,
}

impl Span {
    pub fn new(left: FinFunctor, right: FinFunctor) -> Result<Span> {
        if !same(&left.dom, &right.dom) {
            return Err(Error::ShapeMismatch("span legs need a shared apex".into()));
        }
        Ok(Span { left, right })
    }

    pub fn apex(&self) -> &Arc<FinCategory> {
        &self.left.dom
    }

    /// The category the span runs from.
    pub fn source(&self) -> &Arc<FinCategory> {
        &self.left.cod
    }

    pub fn target(&self) -> &Arc<FinCategory> {
        &self.right.cod
    }
}

/// The composite apex with its pullback square, kept for building maps into it.
fn composite(s1: &Span, s2: &Span) -> Result<(Span, CommaSquare)> {
    if !same(s1.target(), s2.source()) {
        return Err(Error::BoundaryMismatch);
    }
    let sq = strict_pullback(&s1.right, &s2.left)?;
    let span = Span { left: s1.left.after(&sq.p)?, right: s2.right.after(&sq.q)? };
    Ok((span, sq))
}

/// s2∘s1 for s1: A → B and s2: B → C.
pub fn span_compose(s1: &Span, s2: &Span) -> Result<Span> {
    Ok(composite(s1, s2)?.0)
}

pub fn span_reverse(s: &Span) -> Span {
    Span { left: s.right.clone(), right: s.left.clone() }
}

/// (1_A, A, f).
pub fn map_to_span(f: &FinFunctor) -> Span {
    Span { left: FinFunctor::identity(f.dom.clone()), right: f.clone() }
}

/// (f, A, 1_A).
pub fn map_to_rev(f: &FinFunctor) -> Span {
    span_reverse(&map_to_span(f))
}

pub fn identity_span(a: &Arc<FinCategory>) -> Span {
    map_to_span(&FinFunctor::identity(a.clone()))
}

/// A functor between apexes commuting with both legs.
#[derive(Clone, Debug, PartialEq)]
pub struct SpanMap {
    pub src: Span,
    pub tgt: Span,
    pub functor: FinFunctor,
}

impl SpanMap {
    pub fn new(src: Span, tgt: Span, functor: FinFunctor) -> Result<SpanMap> {
        if !same(&functor.dom, src.apex()) || !same(&functor.cod, tgt.apex()) {
            return Err(Error::ShapeMismatch("span map between the wrong apexes".into()));
        }
        if tgt.left.after(&functor)? != src.left || tgt.right.after(&functor)? != src.right {
            return Err(Error::TriangleMismatch("span map does not commute with the legs".into()));
        }
        Ok(SpanMap { src, tgt, functor })
    }

    pub fn identity(s: &Span) -> SpanMap {
        SpanMap { src: s.clone(), tgt: s.clone(), functor: FinFunctor::identity(s.apex().clone()) }
    }

    /// self after first.
    pub fn vcomp(&self, first: &SpanMap) -> Result<SpanMap> {
        SpanMap::new(first.src.clone(), self.tgt.clone(), self.functor.after(&first.functor)?)
    }

    pub fn is_identity(&self) -> bool {
        self.functor == FinFunctor::identity(self.src.apex().clone())
    }
}

/// All span maps s → t.
pub fn span_maps(s: &Span, t: &Span, budget: &Budget) -> Result<Vec<FinFunctor>> {
    FunctorSearch::new(s.apex().clone(), t.apex().clone())
        .objects(|x, y| t.left.ob(y) == s.left.ob(x) && t.right.ob(y) == s.right.ob(x))
        .morphisms(|u, v| t.left.mor(v) == s.left.mor(u) && t.right.mor(v) == s.right.mor(u))
        .collect(budget)
}

/// An invertible span map s → t, if one exists.
pub fn span_iso(s: &Span, t: &Span, budget: &Budget) -> Result<Option<SpanMap>> {
    if !same(s.source(), t.source()) || !same(s.target(), t.target()) {
        return Ok(None);
    }
    let (e, f) = (s.apex(), t.apex());
    if e.num_objects() != f.num_objects() || e.num_morphisms() != f.num_morphisms() {
        return Ok(None);
    }
    let found = FunctorSearch::new(e.clone(), f.clone())
        .objects(|x, y| t.left.ob(y) == s.left.ob(x) && t.right.ob(y) == s.right.ob(x))
        .morphisms(|u, v| t.left.mor(v) == s.left.mor(u) && t.right.mor(v) == s.right.mor(u))
        .injective()
        .first(budget)?;
    found.map(|h| SpanMap::new(s.clone(), t.clone(), h)).transpose()
}

/// β * α: s2∘s1 ⇒ t2∘t1 for α: s1 ⇒ t1 and β: s2 ⇒ t2.
pub fn hcomp(alpha: &SpanMap, beta: &SpanMap) -> Result<SpanMap> {
    let (src, sq_src) = composite(&alpha.src, &beta.src)?;
    let (tgt, sq_tgt) = composite(&alpha.tgt, &beta.tgt)?;
    let h = alpha.functor.after(&sq_src.p)?;
    let k = beta.functor.after(&sq_src.q)?;
    let phi = NatTrans::identity(&alpha.tgt.right.after(&h)?);
    let functor = sq_tgt.induced(&h, &k, &phi)?;
    SpanMap::new(src, tgt, functor)
}

/// (s3∘s2)∘s1 ⇒ s3∘(s2∘s1), sending ((e1,e2),e3) to (e1,(e2,e3)).
pub fn associator(s1: &Span, s2: &Span, s3: &Span) -> Result<SpanMap> {
    let (s21, sq21) = composite(s1, s2)?;
    let (src, sq_src) = composite(&s21, s3)?;
    let (s32, sq32) = composite(s2, s3)?;
    let (tgt, sq_tgt) = composite(s1, &s32)?;
    let e1 = sq21.p.after(&sq_src.p)?;
    let e2 = sq21.q.after(&sq_src.p)?;
    let e3 = sq_src.q.clone();
    let inner = sq32.induced(&e2, &e3, &NatTrans::identity(&s3.left.after(&e3)?))?;
    let functor = sq_tgt.induced(&e1, &inner, &NatTrans::identity(&s1.right.after(&e1)?))?;
    SpanMap::new(src, tgt, functor)
}

/// s3∘(s2∘s1) ⇒ (s3∘s2)∘s1.
pub fn associator_inverse(s1: &Span, s2: &Span, s3: &Span) -> Result<SpanMap> {
    let (s32, sq32) = composite(s2, s3)?;
    let (src, sq_src) = composite(s1, &s32)?;
    let (s21, sq21) = composite(s1, s2)?;
    let (tgt, sq_tgt) = composite(&s21, s3)?;
    let e1 = sq_src.p.clone();
    let e2 = sq32.p.after(&sq_src.q)?;
    let e3 = sq32.q.after(&sq_src.q)?;
    let inner = sq21.induced(&e1, &e2, &NatTrans::identity(&s1.right.after(&e1)?))?;
    let functor = sq_tgt.induced(&inner, &e3, &NatTrans::identity(&s3.left.after(&e3)?))?;
    SpanMap::new(src, tgt, functor)
}

/// 1_B∘s ⇒ s for s: A → B.
pub fn left_unitor(s: &Span) -> Result<SpanMap> {
    let (src, sq) = composite(s, &identity_span(s.target()))?;
    SpanMap::new(src, s.clone(), sq.p)
}

/// s∘1_A ⇒ s for s: A → B.
pub fn right_unitor(s: &Span) -> Result<SpanMap> {
    let (src, sq) = composite(&identity_span(s.source()), s)?;
    SpanMap::new(src, s.clone(), sq.q)
}

pub fn left_unitor_inverse(s: &Span) -> Result<SpanMap> {
    let (tgt, sq) = composite(s, &identity_span(s.target()))?;
    let id = FinFunctor::identity(s.apex().clone());
    let functor = sq.induced(&id, &s.right, &NatTrans::identity(&s.right))?;
    SpanMap::new(s.clone(), tgt, functor)
}

pub fn right_unitor_inverse(s: &Span) -> Result<SpanMap> {
    let (tgt, sq) = composite(&identity_span(s.source()), s)?;
    let id = FinFunctor::identity(s.apex().clone());
    let functor = sq.induced(&s.left, &id, &NatTrans::identity(&s.left))?;
    SpanMap::new(s.clone(), tgt, functor)
}

/// The adjunction f ⊣ rev f in spans, with both triangle composites.
#[derive(Clone, Debug)]
pub struct MapAdjunction {
    pub unit: SpanMap,
    pub counit: SpanMap,
    /// f ⇒ f∘1 ⇒ f∘(rev f∘f) ⇒ (f∘rev f)∘f ⇒ 1∘f ⇒ f.
    pub left_triangle: SpanMap,
    /// rev f ⇒ 1∘rev f ⇒ (rev f∘f)∘rev f ⇒ rev f∘(f∘rev f) ⇒ rev f∘1 ⇒ rev f.
    pub right_triangle: SpanMap,
}

impl MapAdjunction {
    pub fn holds(&self) -> bool {
        self.left_triangle.is_identity() && self.right_triangle.is_identity()
    }
}

/// Unit A → A ×_B A the diagonal, counit f: A → B out of the apex of f∘rev f.
pub fn map_adjunction(f: &FinFunctor) -> Result<MapAdjunction> {
    let fs = map_to_span(f);
    let rf = map_to_rev(f);
    let ida = identity_span(&f.dom);
    let (rf_f, sq_unit) = composite(&fs, &rf)?;
    let id = FinFunctor::identity(f.dom.clone());
    let unit = SpanMap::new(ida, rf_f, sq_unit.induced(&id, &id, &NatTrans::identity(f))?)?;
    let (f_rf, sq_counit) = composite(&rf, &fs)?;
    let counit = SpanMap::new(f_rf, identity_span(&f.cod), f.after(&sq_counit.p)?)?;
    let idf = SpanMap::identity(&fs);
    let idr = SpanMap::identity(&rf);

    let left_triangle = left_unitor(&fs)?
        .vcomp(&hcomp(&idf, &counit)?)?
        .vcomp(&associator(&fs, &rf, &fs)?)?
        .vcomp(&hcomp(&unit, &idf)?)?
        .vcomp(&right_unitor_inverse(&fs)?)?;
    let right_triangle = right_unitor(&rf)?
        .vcomp(&hcomp(&counit, &idr)?)?
        .vcomp(&associator_inverse(&rf, &fs, &rf)?)?
        .vcomp(&hcomp(&idr, &unit)?)?
        .vcomp(&left_unitor_inverse(&rf)?)?;
    Ok(MapAdjunction { unit, counit, left_triangle, right_triangle })
}
