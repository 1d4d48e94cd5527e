use crate::budget::Budget;
use crate::category::{FinFunctor, FunctorSearch, NatSearch, NatTrans};
use crate::comma::{comma, strict_pullback, CommaSquare};
use crate::error::{Error, Result};
use crate::fib::is_opfibration;
use crate::probes::Probe;
use crate::report::{Check, Report};

use super::colimit::{colimit_in, Cocone};

/// φ: f ⇒ h∘g for f: A → X, g: A → Y, h: Y → X. Read as an extension,
/// h extends f along g; read as a lifting, g lifts f through h.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtensionCell {
    pub f: FinFunctor,
    pub g: FinFunctor,
    pub h: FinFunctor,
    pub phi: NatTrans,
}

impl ExtensionCell {
    pub fn new(f: FinFunctor, g: FinFunctor, h: FinFunctor, phi: NatTrans) -> Result<ExtensionCell> {
        let hg = h.after(&g)?;
        if phi.dom != f || phi.cod != hg || !phi.is_valid() {
            return Err(Error::ShapeMismatch("2-cell is not f ⇒ h∘g".into()));
        }
        Ok(ExtensionCell { f, g, h, phi })
    }

    /// jφ: jf ⇒ jhg.
    pub fn postcompose(&self, j: &FinFunctor) -> Result<ExtensionCell> {
        ExtensionCell::new(j.after(&self.f)?, self.g.clone(), j.after(&self.h)?, self.phi.whisker_left(j)?)
    }

    /// φj: fj ⇒ hgj.
    pub fn precompose(&self, j: &FinFunctor) -> Result<ExtensionCell> {
        ExtensionCell::new(self.f.after(j)?, self.g.after(j)?, self.h.clone(), self.phi.whisker_right(j)?)
    }
}

/// Whether `images` are distinct and as many as `targets`.
fn bijective(images: &mut [NatTrans], targets: usize) -> bool {
    images.sort_by(|a, b| a.components.cmp(&b.components));
    images.windows(2).all(|w| w[0].components != w[1].components) && images.len() == targets
}

/// κ ↦ (κg)·φ is a bijection Nat(h, k) → Nat(f, kg) for every k: Y → X.
pub fn verify_left_extension(cell: &ExtensionCell, budget: &Budget) -> Result<bool> {
    let mut ok = true;
    let mut failure = None;
    FunctorSearch::new(cell.h.dom.clone(), cell.h.cod.clone()).for_each(budget, |k| {
        let step = || -> Result<bool> {
            let kg = k.after(&cell.g)?;
            let targets = NatSearch::new(&cell.f, &kg).count(budget)?;
            let mut images = Vec::new();
            for kappa in NatSearch::new(&cell.h, k).collect(budget)? {
                images.push(kappa.whisker_right(&cell.g)?.vcomp(&cell.phi)?);
            }
            Ok(bijective(&mut images, targets))
        };
        match step() {
            Ok(true) => true,
            Ok(false) => {
                ok = false;
                false
            }
            Err(e) => {
                failure = Some(e);
                false
            }
        }
    })?;
    failure.map_or(Ok(ok), Err)
}

/// κ ↦ (hκ)·φ is a bijection Nat(g, k) → Nat(f, hk) for every k: A → Y.
pub fn verify_left_lifting(cell: &ExtensionCell, budget: &Budget) -> Result<bool> {
    let mut ok = true;
    let mut failure = None;
    FunctorSearch::new(cell.g.dom.clone(), cell.g.cod.clone()).for_each(budget, |k| {
        let step = || -> Result<bool> {
            let hk = cell.h.after(k)?;
            let targets = NatSearch::new(&cell.f, &hk).count(budget)?;
            let mut images = Vec::new();
            for kappa in NatSearch::new(&cell.g, k).collect(budget)? {
                images.push(kappa.whisker_left(&cell.h)?.vcomp(&cell.phi)?);
            }
            Ok(bijective(&mut images, targets))
        };
        match step() {
            Ok(true) => true,
            Ok(false) => {
                ok = false;
                false
            }
            Err(e) => {
                failure = Some(e);
                false
            }
        }
    })?;
    failure.map_or(Ok(ok), Err)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CellKind {
    Extension,
    Lifting,
}

/// Absoluteness against the probe family: an extension must be preserved by
/// every j: X → D, a lifting respected by every j: D → A, for D a probe.
pub fn verify_absolute(cell: &ExtensionCell, kind: CellKind, probes: &[Probe], budget: &Budget) -> Result<Report> {
    let mut report = Report::new();
    for probe in probes {
        let d = probe.category.clone();
        let mut failures = Vec::new();
        let mut error = None;
        let (search, label) = match kind {
            CellKind::Extension => (FunctorSearch::new(cell.f.cod.clone(), d), "extension"),
            CellKind::Lifting => (FunctorSearch::new(d, cell.f.dom.clone()), "lifting"),
        };
        search.for_each(budget, |j| {
            let verdict = match kind {
                CellKind::Extension => cell.postcompose(j).and_then(|c| verify_left_extension(&c, budget)),
                CellKind::Lifting => cell.precompose(j).and_then(|c| verify_left_lifting(&c, budget)),
            };
            match verdict {
                Ok(true) => true,
                Ok(false) => {
                    failures.push(j.table_id());
                    false
                }
                Err(e) => {
                    error = Some(e);
                    false
                }
            }
        })?;
        if let Some(e) = error {
            return Err(e);
        }
        let id = format!("absolute-{label}/{}", probe.name);
        report.push(Check::from_bool(id, failures.is_empty(), || format!("fails at j = {}", failures.join(", "))));
    }
    Ok(report)
}

/// Lawvere's formula: L(c) = colim(g/c → A → B), with φ_a the leg at (a, 1_{ga}).
pub fn lan_pointwise(g: &FinFunctor, f: &FinFunctor, budget: &Budget) -> Result<ExtensionCell> {
    if g.dom != f.dom {
        return Err(Error::ShapeMismatch("g and f need a shared domain".into()));
    }
    let (c, b) = (&g.cod, &f.cod);
    let mut squares: Vec<CommaSquare> = Vec::with_capacity(c.num_objects());
    let mut cocones: Vec<Cocone> = Vec::with_capacity(c.num_objects());
    for o in 0..c.num_objects() {
        let sq = comma(g, &FinFunctor::point(c.clone(), o))?;
        let diagram = f.after(&sq.p)?;
        let cocone = colimit_in(&diagram, budget)?.ok_or_else(|| Error::NoColimit(c.object_id(o).to_string()))?;
        squares.push(sq);
        cocones.push(cocone);
    }
    let obj_map: Vec<usize> = cocones.iter().map(|k| k.nadir).collect();
    let mut mor_map = Vec::with_capacity(c.num_morphisms());
    for u in 0..c.num_morphisms() {
        let (s, t) = (c.src(u), c.tgt(u));
        let (sq, sq2) = (&squares[s], &squares[t]);
        let moved: Vec<usize> = (0..sq.apex.num_objects())
            .map(|x| {
                let y = sq2.object_at(sq.p.ob(x), c.compose(u, sq.lambda.at(x)), 0).expect("comma object");
                cocones[t].legs[y]
            })
            .collect();
        let m = b
            .hom(obj_map[s], obj_map[t])
            .iter()
            .copied()
            .find(|&m| cocones[s].legs.iter().zip(&moved).all(|(&l, &k)| b.compose(m, l) == k))
            .expect("colimiting cocone factors");
        mor_map.push(m);
    }
    let h = FinFunctor::new(c.clone(), b.clone(), obj_map, mor_map)?;
    let a = &g.dom;
    let components = (0..a.num_objects())
        .map(|x| {
            let ga = g.ob(x);
            let y = squares[ga].object_at(x, c.id(ga), 0).expect("comma object");
            cocones[ga].legs[y]
        })
        .collect();
    let phi = NatTrans::new(f.clone(), h.after(g)?, components)?;
    ExtensionCell::new(f.clone(), g.clone(), h, phi)
}

/// The right extension R of f along g by the limit formula, with ε: R∘g ⇒ f.
pub fn ran_pointwise(g: &FinFunctor, f: &FinFunctor, budget: &Budget) -> Result<(FinFunctor, NatTrans)> {
    let cell = lan_pointwise(&g.opposite(), &f.opposite(), budget).map_err(|e| match e {
        Error::NoColimit(c) => Error::NoLimit(c),
        other => other,
    })?;
    let r = cell.h.opposite().retype(g.cod.clone(), f.cod.clone())?;
    let eps = NatTrans::new(r.after(g)?, f.clone(), cell.phi.components)?;
    Ok((r, eps))
}

/// The outcome of Lawvere's condition at every object c, and, when g is an
/// opfibration, of the same condition over the strict fibre g⁻¹(c).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointwiseVerdict {
    pub lax: bool,
    pub strict: Option<bool>,
    /// Objects c at which the lax condition fails.
    pub failing: Vec<String>,
}

impl PointwiseVerdict {
    pub fn holds(&self) -> bool {
        self.lax && self.strict.unwrap_or(true)
    }
}

/// The pasted cell f∘p ⇒ hc∘q for the square over (g, c).
fn pasted(cell: &ExtensionCell, sq: &CommaSquare, hc: &FinFunctor) -> Result<ExtensionCell> {
    let x = &cell.h.cod;
    let components = (0..sq.apex.num_objects())
        .map(|e| x.compose(cell.h.mor(sq.lambda.at(e)), cell.phi.at(sq.p.ob(e))))
        .collect();
    let fp = cell.f.after(&sq.p)?;
    let phi = NatTrans::new(fp.clone(), hc.after(&sq.q)?, components)?;
    ExtensionCell::new(fp, sq.q.clone(), hc.clone(), phi)
}

/// Pastes the cell with comma(g, c): the result is f∘p ⇒ (h∘c)∘q along q.
pub fn paste_with_comma(cell: &ExtensionCell, c: &FinFunctor) -> Result<ExtensionCell> {
    let sq = comma(&cell.g, c)?;
    pasted(cell, &sq, &cell.h.after(c)?)
}

pub fn verify_pointwise_left_extension(cell: &ExtensionCell, budget: &Budget) -> Result<PointwiseVerdict> {
    let c = &cell.g.cod;
    let opfib = is_opfibration(&cell.g);
    let mut failing = Vec::new();
    let mut strict_ok = true;
    for o in 0..c.num_objects() {
        let point = FinFunctor::point(c.clone(), o);
        let hc = cell.h.after(&point)?;
        let lax = comma(&cell.g, &point)?;
        if !verify_left_extension(&pasted(cell, &lax, &hc)?, budget)? {
            failing.push(c.object_id(o).to_string());
        }
        if opfib {
            let strict = strict_pullback(&cell.g, &point)?;
            strict_ok &= verify_left_extension(&pasted(cell, &strict, &hc)?, budget)?;
        }
    }
    Ok(PointwiseVerdict { lax: failing.is_empty(), strict: opfib.then_some(strict_ok), failing })
}
