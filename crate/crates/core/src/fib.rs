//! Cartesian morphisms, fibrations, cleavages, the Chevalley criterion and
//! two-sided discrete fibrations.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::budget::Budget;
use crate::category::{postcompose, FinCategory, FinFunctor, FunctorCategory, FunctorSearch, NatSearch, NatTrans};
use crate::comma::{comma, strict_pullback, CommaSquare};
use crate::error::{Error, Result};
use crate::probes::Probe;
use crate::report::{Check, Report, Verdict};
use crate::span::Span;

/// One test pair (β, α₁) of the cartesian condition and its unique γ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartesianWitness {
    pub beta: usize,
    pub alpha1: usize,
    pub gamma: usize,
}

/// Evidence that α: a₁ → a₂ is f-cartesian: for every α₁: a₃ → a₂ and
/// β: fa₃ → fa₁ with fα∘β = fα₁, the unique γ with fγ = β and αγ = α₁.
#[derive(Clone, Debug)]
pub struct CartesianCertificate {
    pub functor: FinFunctor,
    pub morphism: usize,
    pub witnesses: Vec<CartesianWitness>,
}

fn same(a: &Arc<FinCategory>, b: &Arc<FinCategory>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

pub fn is_cartesian(f: &FinFunctor, alpha: usize) -> Option<CartesianCertificate> {
    let (a, b) = (&f.dom, &f.cod);
    let (a1, a2) = (a.src(alpha), a.tgt(alpha));
    let f_alpha = f.mor(alpha);
    let mut witnesses = Vec::new();
    for a3 in 0..a.num_objects() {
        for &alpha1 in a.hom(a3, a2) {
            for &beta in b.hom(f.ob(a3), f.ob(a1)) {
                if b.compose(f_alpha, beta) != f.mor(alpha1) {
                    continue;
                }
                let mut found = a.hom(a3, a1).iter().filter(|&&g| f.mor(g) == beta && a.compose(alpha, g) == alpha1);
                let gamma = *found.next()?;
                if found.next().is_some() {
                    return None;
                }
                witnesses.push(CartesianWitness { beta, alpha1, gamma });
            }
        }
    }
    Some(CartesianCertificate { functor: f.clone(), morphism: alpha, witnesses })
}

/// Cartesian for f viewed between the opposite categories.
pub fn is_opcartesian(f: &FinFunctor, alpha: usize) -> bool {
    is_cartesian(&f.opposite(), alpha).is_some()
}

fn cartesian_mask(f: &FinFunctor) -> Vec<bool> {
    (0..f.dom.num_morphisms()).map(|m| is_cartesian(f, m).is_some()).collect()
}

fn least_lift(f: &FinFunctor, mask: &[bool], beta: usize, a: usize) -> Option<usize> {
    if f.cod.tgt(beta) != f.ob(a) {
        return None;
    }
    f.dom
        .in_morphisms(a)
        .filter(|&m| mask[m] && f.mor(m) == beta)
        .min_by(|&x, &y| f.dom.morphism_id(x).cmp(f.dom.morphism_id(y)))
}

/// The cartesian lift of β: b → fa with codomain a whose id is least, if any.
/// None also when β does not end at fa.
pub fn cartesian_lift(f: &FinFunctor, beta: usize, a: usize) -> Option<usize> {
    if f.cod.tgt(beta) != f.ob(a) {
        return None;
    }
    f.dom
        .in_morphisms(a)
        .filter(|&m| f.mor(m) == beta && is_cartesian(f, m).is_some())
        .min_by(|&x, &y| f.dom.morphism_id(x).cmp(f.dom.morphism_id(y)))
}

/// The first (a, β) without a cartesian lift.
fn missing_lift(f: &FinFunctor) -> Option<(usize, usize)> {
    let mask = cartesian_mask(f);
    for a in 0..f.dom.num_objects() {
        for beta in f.cod.in_morphisms(f.ob(a)) {
            if least_lift(f, &mask, beta, a).is_none() {
                return Some((a, beta));
            }
        }
    }
    None
}

pub fn is_fibration(f: &FinFunctor) -> bool {
    missing_lift(f).is_none()
}

pub fn is_opfibration(f: &FinFunctor) -> bool {
    is_fibration(&f.opposite())
}

/// A fibration with a chosen cartesian lift for every (β, a).
#[derive(Clone, Debug)]
pub struct Cleavage {
    pub functor: FinFunctor,
    pub lifts: BTreeMap<(usize, usize), usize>,
}

impl Cleavage {
    pub fn lift(&self, beta: usize, a: usize) -> Option<usize> {
        self.lifts.get(&(beta, a)).copied()
    }
}

/// Picks the least cartesian lift by morphism id for every pair.
pub fn choose_cleavage(f: &FinFunctor) -> Result<Cleavage> {
    let mask = cartesian_mask(f);
    let mut lifts = BTreeMap::new();
    for a in 0..f.dom.num_objects() {
        for beta in f.cod.in_morphisms(f.ob(a)) {
            let m = least_lift(f, &mask, beta, a).ok_or_else(|| Error::NotAFibration {
                beta: f.cod.morphism_id(beta).to_string(),
                object: f.dom.object_id(a).to_string(),
            })?;
            lifts.insert((beta, a), m);
        }
    }
    Ok(Cleavage { functor: f.clone(), lifts })
}

/// Checks f as a fibration representably on the probes: each [Y,f] is a
/// fibration, and cartesian 2-cells stay cartesian after whiskering by any
/// Z → Y between probes.
pub fn representable_fibration_check(f: &FinFunctor, probes: &[Probe], budget: &Budget) -> Result<Report> {
    let mut report = Report::new();
    let mut built = Vec::new();
    for y in probes {
        let fa = FunctorCategory::build(y.category.clone(), f.dom.clone(), budget)?;
        let fb = FunctorCategory::build(y.category.clone(), f.cod.clone(), budget)?;
        let fy = postcompose(&fa, &fb, f)?;
        let fib = missing_lift(&fy);
        report.push(Check::from_bool(format!("representable/{}/fibration", y.name), fib.is_none(), || {
            let (a, beta) = fib.unwrap();
            format!("no cartesian lift of {} at {}", fy.cod.morphism_id(beta), fy.dom.object_id(a))
        }));
        let mask = cartesian_mask(&fy);
        built.push((y, fa, fy, mask));
    }
    for (y, fa_y, _, mask_y) in &built {
        for (z, fa_z, fz, _) in &built {
            let mut bad = None;
            FunctorSearch::new(z.category.clone(), y.category.clone()).for_each(budget, |h| {
                for (t, &cart) in mask_y.iter().enumerate() {
                    if !cart {
                        continue;
                    }
                    let th = match fa_y.transformation(t).whisker_right(h) {
                        Ok(th) => th,
                        Err(_) => continue,
                    };
                    let m = fa_z.morphism_of(&th).expect("whiskered 2-cell lies in [Z,A]");
                    if is_cartesian(fz, m).is_none() {
                        bad = Some(format!("{} whiskered by {}", fa_y.category.morphism_id(t), h.table_id()));
                        return false;
                    }
                }
                true
            })?;
            report.push(Check::from_bool(
                format!("representable/{}<-{}/whiskering", y.name, z.name),
                bad.is_none(),
                || bad.clone().unwrap_or_default(),
            ));
        }
    }
    Ok(report)
}

/// Result of the bounded search for a right adjoint to i: A → B/f over B.
#[derive(Clone, Debug)]
pub enum AdjointSearch {
    Found { r: FinFunctor, unit: NatTrans, counit: NatTrans },
    NotFound,
    Exhausted,
}

#[derive(Clone, Debug)]
pub struct ChevalleyReport {
    pub is_fibration: bool,
    pub search: AdjointSearch,
    pub verdict: Verdict,
    /// B/f = 1_B/f with its projections.
    pub comma: CommaSquare,
    /// a ↦ (fa, 1, a).
    pub i: FinFunctor,
}

impl ChevalleyReport {
    pub fn adjoint_found(&self) -> bool {
        matches!(self.search, AdjointSearch::Found { .. })
    }
}

/// Compares `is_fibration(f)` with the existence of a right adjoint to
/// i: A → B/f in the slice over B with invertible unit.
pub fn chevalley_check(f: &FinFunctor, budget: &Budget) -> Result<ChevalleyReport> {
    let is_fib = is_fibration(f);
    let idb = FinFunctor::identity(f.cod.clone());
    let sq = comma(&idb, f)?;
    let ida = FinFunctor::identity(f.dom.clone());
    let i = sq.induced(f, &ida, &NatTrans::identity(f))?;
    let search = match adjoint_search(f, &sq, &i, budget) {
        Ok(s) => s,
        Err(Error::CardinalityExceeded { .. }) => AdjointSearch::Exhausted,
        Err(e) => return Err(e),
    };
    let verdict = match (&search, is_fib) {
        (AdjointSearch::Found { .. }, true) | (AdjointSearch::NotFound, false) => Verdict::Pass,
        (AdjointSearch::Found { .. }, false) | (AdjointSearch::NotFound, true) => Verdict::Fail,
        (AdjointSearch::Exhausted, false) => Verdict::Pass,
        (AdjointSearch::Exhausted, true) => Verdict::Inconclusive,
    };
    Ok(ChevalleyReport { is_fibration: is_fib, search, verdict, comma: sq, i })
}

fn adjoint_search(f: &FinFunctor, sq: &CommaSquare, i: &FinFunctor, budget: &Budget) -> Result<AdjointSearch> {
    let (a, b, apex) = (&f.dom, &f.cod, &sq.apex);
    let (p, q, lam) = (&sq.p, &sq.q, &sq.lambda);
    let id_apex = FinFunctor::identity(apex.clone());
    let id_a = FinFunctor::identity(a.clone());
    let mut found = None;
    let mut failure = None;
    FunctorSearch::new(apex.clone(), a.clone())
        .objects(|x, a1| {
            f.ob(a1) == p.ob(x) && a.hom(a1, q.ob(x)).iter().any(|&al| f.mor(al) == lam.at(x))
        })
        .morphisms(|m, u| f.mor(u) == p.mor(m))
        .for_each(budget, |r| {
            let ir = i.after_unchecked(r);
            let ri = r.after_unchecked(i);
            let counits = NatSearch::new(&ir, &id_apex).components(|_, m| b.is_identity(p.mor(m)));
            let units = NatSearch::new(&id_a, &ri).components(|_, u| b.is_identity(f.mor(u)) && a.is_iso(u));
            let step = counits.for_each(budget, |eps| {
                let inner = units.for_each(budget, |eta| {
                    let t1 = eps.whisker_right(i).and_then(|e| e.vcomp(&eta.whisker_left(i)?));
                    let t2 = eps.whisker_left(r).and_then(|e| e.vcomp(&eta.whisker_right(r)?));
                    let ok = matches!((t1, t2), (Ok(x), Ok(y)) if x.is_identity() && y.is_identity());
                    if ok {
                        found = Some(AdjointSearch::Found { r: r.clone(), unit: eta.clone(), counit: eps.clone() });
                    }
                    !ok
                });
                match inner {
                    Ok(cont) => cont,
                    Err(e) => {
                        failure = Some(e);
                        false
                    }
                }
            });
            match step {
                Ok(cont) => cont && failure.is_none(),
                Err(e) => {
                    failure = Some(e);
                    false
                }
            }
        })?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(found.unwrap_or(AdjointSearch::NotFound))
}

/// A span (d, E, c) from A to B with its lifting tables.
#[derive(Clone, Debug)]
pub struct DiscreteFibrationSpan {
    pub span: Span,
    /// (e, f: a → de) ↦ the unique lift with codomain e and c-image an identity.
    pub left_lifts: BTreeMap<(usize, usize), usize>,
    /// (e, g: ce → b) ↦ the unique lift with domain e and d-image an identity.
    pub right_lifts: BTreeMap<(usize, usize), usize>,
}

impl DiscreteFibrationSpan {
    pub fn d(&self) -> &FinFunctor {
        &self.span.left
    }

    pub fn c(&self) -> &FinFunctor {
        &self.span.right
    }
}

/// Certificate for the three unique-lifting conditions, or None.
pub fn is_discrete_fibration_span(d: &FinFunctor, c: &FinFunctor) -> Option<DiscreteFibrationSpan> {
    if !same(&d.dom, &c.dom) {
        return None;
    }
    let e_cat = &d.dom;
    let (a, b) = (&d.cod, &c.cod);
    let mut left_lifts = BTreeMap::new();
    let mut right_lifts = BTreeMap::new();
    for e in 0..e_cat.num_objects() {
        for f in a.in_morphisms(d.ob(e)) {
            let mut it = e_cat.in_morphisms(e).filter(|&h| d.mor(h) == f && b.is_identity(c.mor(h)));
            let h = it.next()?;
            if it.next().is_some() {
                return None;
            }
            left_lifts.insert((e, f), h);
        }
        for g in b.out_morphisms(c.ob(e)) {
            let mut it = e_cat.out_morphisms(e).filter(|&h| c.mor(h) == g && a.is_identity(d.mor(h)));
            let h = it.next()?;
            if it.next().is_some() {
                return None;
            }
            right_lifts.insert((e, g), h);
        }
    }
    for h in 0..e_cat.num_morphisms() {
        let (e1, e2) = (e_cat.src(h), e_cat.tgt(h));
        let gbar = right_lifts[&(e1, c.mor(h))];
        let fbar = left_lifts[&(e2, d.mor(h))];
        if e_cat.try_compose(fbar, gbar) != Some(h) {
            return None;
        }
    }
    let span = Span::new(d.clone(), c.clone()).ok()?;
    Some(DiscreteFibrationSpan { span, left_lifts, right_lifts })
}

/// p: E → B with the span (p, E, !) a discrete fibration from B to 1.
pub fn is_discrete_fibration(p: &FinFunctor) -> bool {
    is_discrete_fibration_span(p, &FinFunctor::to_terminal(p.dom.clone())).is_some()
}

/// p: E → B with the span (!, E, p) a discrete fibration from 1 to B.
pub fn is_discrete_opfibration(p: &FinFunctor) -> bool {
    is_discrete_fibration_span(&FinFunctor::to_terminal(p.dom.clone()), p).is_some()
}

/// Closure of fibrations and opfibrations under composition, identities and
/// pullback, over every matching pair drawn from `functors`.
pub fn closure_suite(functors: &[FinFunctor]) -> Result<Report> {
    let mut report = Report::new();
    let kinds: [(&str, fn(&FinFunctor) -> bool); 2] = [("fib", is_fibration), ("opfib", is_opfibration)];
    for (kind, test) in kinds {
        let good: Vec<bool> = functors.iter().map(test).collect();
        for (i, p) in functors.iter().enumerate() {
            if !good[i] {
                continue;
            }
            let left = p.after(&FinFunctor::identity(p.dom.clone()))?;
            let right = FinFunctor::identity(p.cod.clone()).after(p)?;
            report.push(Check::from_bool(format!("{kind}/identity/{i}"), left == *p && right == *p && test(&left), || {
                "composite with an identity changed the functor".into()
            }));
            for (j, q) in functors.iter().enumerate() {
                if good[j] && same(&p.cod, &q.dom) {
                    let qp = q.after(p)?;
                    report.push(Check::from_bool(format!("{kind}/compose/{i}.{j}"), test(&qp), || qp.table_id()));
                }
                if same(&q.cod, &p.cod) {
                    let pb = strict_pullback(q, p)?;
                    report.push(Check::from_bool(format!("{kind}/pullback/{i}.{j}"), test(&pb.p), || {
                        format!("pullback along {} leaves the class", q.table_id())
                    }));
                }
            }
        }
    }
    Ok(report)
}
