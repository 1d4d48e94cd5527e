//! Truncated globular data: the globe category 𝔾≤n, its slice posets 𝔾/m,
//! higher spans Sp(Z), globular categories with the shift D and the
//! suspension Σ, and the counit ε of E ⊣ Sp.
//!
//! Slice objects are indexed so that (j, σ) = 2j, (j, τ) = 2j + 1 and the
//! top object 1_m = 2m. The level of index i is i / 2.

use std::collections::HashMap;
use std::sync::Arc;

use crate::budget::Budget;
use crate::category::{
    functor_category, postcompose, precompose, FinCategory, FinFunctor, FunctorCategory, FunctorSearch, Morphism,
    NatSearch, NatTrans,
};
use crate::comma::{strict_pullback, verify_lax_pullback, CommaSquare, Flavor};
use crate::error::{Error, Result};
use crate::fib::is_discrete_opfibration;
use crate::probes::Probe;
use crate::report::{Check, Report};
use crate::span::{el, lift_2cell, CatValuedPresheaf, Grothendieck};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gen {
    Sigma,
    Tau,
}

impl Gen {
    fn offset(self) -> usize {
        match self {
            Gen::Sigma => 0,
            Gen::Tau => 1,
        }
    }
}

/// 𝔾≤n. `labels[u]` is None for identities; a non-identity arrow is named by
/// its first generator, since στ = ττ and τσ = σσ collapse every word onto it.
#[derive(Clone, Debug)]
pub struct TruncatedG {
    pub n: usize,
    pub category: Arc<FinCategory>,
    labels: Vec<Option<Gen>>,
    index: HashMap<(usize, usize, Option<Gen>), usize>,
}

impl TruncatedG {
    pub fn label(&self, u: usize) -> Option<Gen> {
        self.labels[u]
    }

    /// The arrow j → m with the given first generator (None for j = m).
    pub fn morphism(&self, j: usize, m: usize, label: Option<Gen>) -> Option<usize> {
        self.index.get(&(j, m, label)).copied()
    }
}

pub fn build_g(n: usize) -> TruncatedG {
    let objects: Vec<String> = (0..=n).map(|m| m.to_string()).collect();
    let mut morphisms = Vec::new();
    let mut labels = Vec::new();
    let mut index = HashMap::new();
    let mut identity = vec![0; n + 1];
    for j in 0..=n {
        for m in j..=n {
            let choices: &[Option<Gen>] = if j == m { &[None] } else { &[Some(Gen::Sigma), Some(Gen::Tau)] };
            for &label in choices {
                let id = match label {
                    None => {
                        identity[j] = morphisms.len();
                        format!("id_{j}")
                    }
                    Some(Gen::Sigma) => format!("σ{j}→{m}"),
                    Some(Gen::Tau) => format!("τ{j}→{m}"),
                };
                index.insert((j, m, label), morphisms.len());
                morphisms.push(Morphism { id, src: j, tgt: m });
                labels.push(label);
            }
        }
    }
    let ends: Vec<(usize, usize)> = morphisms.iter().map(|m| (m.src, m.tgt)).collect();
    let category = Arc::new(FinCategory::from_parts(objects, morphisms, identity, |g, f| {
        let label = labels[f].or(labels[g]);
        index[&(ends[f].0, ends[g].1, label)]
    }));
    TruncatedG { n, category, labels, index }
}

fn slice_names(m: usize) -> Vec<String> {
    let mut names = Vec::with_capacity(2 * m + 1);
    for j in 0..m {
        names.push(format!("σ{j}"));
        names.push(format!("τ{j}"));
    }
    names.push(format!("1_{m}"));
    names
}

/// The poset 𝔾/m: every object of level j lies below every object of a higher level.
pub fn slice(n: usize, m: usize) -> Result<FinCategory> {
    if m > n {
        return Err(Error::BadConfig(format!("slice level {m} exceeds truncation {n}")));
    }
    Ok(FinCategory::from_relation(&slice_names(m), |a, b| a == b || a / 2 < b / 2))
}

/// (𝔾/m)^op, the shape of an m-span. The top object is initial.
pub fn span_shape(m: usize) -> Arc<FinCategory> {
    Arc::new(FinCategory::from_relation(&slice_names(m), |a, b| a == b || b / 2 < a / 2))
}

pub fn top(m: usize) -> usize {
    2 * m
}

fn poset_functor(dom: &Arc<FinCategory>, cod: &Arc<FinCategory>, obj_map: Vec<usize>) -> Result<FinFunctor> {
    let mor_map = (0..dom.num_morphisms())
        .map(|u| {
            cod.hom(obj_map[dom.src(u)], obj_map[dom.tgt(u)])
                .first()
                .copied()
                .ok_or_else(|| Error::InvalidFunctor(format!("{} has no image", dom.morphism_id(u))))
        })
        .collect::<Result<Vec<_>>>()?;
    FinFunctor::new(dom.clone(), cod.clone(), obj_map, mor_map)
}

/// (u^!)^op: (𝔾/j)^op → (𝔾/m)^op for u: j → m, postcomposition with u.
pub fn reindex_shape(j: usize, m: usize, label: Option<Gen>) -> Result<FinFunctor> {
    if (j == m) != label.is_none() || j > m {
        return Err(Error::BadConfig(format!("no arrow {j} → {m} with label {label:?}")));
    }
    let obj_map = (0..=2 * j).map(|i| if i == top(j) { 2 * j + label.map_or(0, Gen::offset) } else { i }).collect();
    poset_functor(&span_shape(j), &span_shape(m), obj_map)
}

/// X₀ ⇇ X₁ ⇇ ... ⇇ X_n with s[m], t[m]: X_{m+1} → X_m.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedGlobularCategory {
    pub levels: Vec<Arc<FinCategory>>,
    pub s: Vec<FinFunctor>,
    pub t: Vec<FinFunctor>,
}

impl TruncatedGlobularCategory {
    /// Checks typing and the globular identities ss = st, ts = tt.
    pub fn new(levels: Vec<Arc<FinCategory>>, s: Vec<FinFunctor>, t: Vec<FinFunctor>) -> Result<Self> {
        if levels.is_empty() || s.len() + 1 != levels.len() || t.len() != s.len() {
            return Err(Error::ShapeMismatch("need n+1 levels and n source and target maps".into()));
        }
        for m in 0..s.len() {
            for f in [&s[m], &t[m]] {
                if f.dom != levels[m + 1] || f.cod != levels[m] {
                    return Err(Error::ShapeMismatch(format!("boundary map at level {} is mistyped", m + 1)));
                }
            }
        }
        for m in 0..s.len().saturating_sub(1) {
            if s[m].after(&s[m + 1])? != s[m].after(&t[m + 1])? {
                return Err(Error::InvalidFunctor(format!("ss ≠ st at level {}", m + 2)));
            }
            if t[m].after(&s[m + 1])? != t[m].after(&t[m + 1])? {
                return Err(Error::InvalidFunctor(format!("ts ≠ tt at level {}", m + 2)));
            }
        }
        Ok(TruncatedGlobularCategory { levels, s, t })
    }

    /// c at every level with identity boundaries.
    pub fn constant(c: Arc<FinCategory>, n: usize) -> Self {
        let id = FinFunctor::identity(c.clone());
        TruncatedGlobularCategory { levels: vec![c; n + 1], s: vec![id.clone(); n], t: vec![id; n] }
    }

    pub fn truncation(&self) -> usize {
        self.levels.len() - 1
    }

    /// X(u): X_m → X_j for u: j → m.
    pub fn act(&self, j: usize, m: usize, label: Option<Gen>) -> FinFunctor {
        let mut out = FinFunctor::identity(self.levels[m].clone());
        let maps = match label {
            Some(Gen::Tau) => &self.t,
            _ => &self.s,
        };
        for l in (j..m).rev() {
            out = maps[l].after_unchecked(&out);
        }
        out
    }

    /// The same data as a category-valued presheaf on 𝔾≤n.
    pub fn as_presheaf(&self, g: &TruncatedG) -> Result<CatValuedPresheaf> {
        if g.n != self.truncation() {
            return Err(Error::ShapeMismatch("truncation levels differ".into()));
        }
        let c = &g.category;
        let reindex = (0..c.num_morphisms()).map(|u| self.act(c.src(u), c.tgt(u), g.label(u))).collect();
        CatValuedPresheaf::new(c.clone(), self.levels.clone(), reindex)
    }

    pub fn opposite(&self) -> Self {
        let levels: Vec<Arc<FinCategory>> = self.levels.iter().map(|c| Arc::new(c.opposite())).collect();
        let flip = |fs: &[FinFunctor]| -> Vec<FinFunctor> {
            fs.iter()
                .enumerate()
                .map(|(m, f)| {
                    FinFunctor::new_unchecked(levels[m + 1].clone(), levels[m].clone(), f.obj_map.clone(), f.mor_map.clone())
                })
                .collect()
        };
        let (s, t) = (flip(&self.s), flip(&self.t));
        TruncatedGlobularCategory { levels, s, t }
    }
}

/// A levelwise family of functors.
#[derive(Clone, Debug, PartialEq)]
pub struct GlobularMap {
    pub levels: Vec<FinFunctor>,
}

impl GlobularMap {
    pub fn identity(x: &TruncatedGlobularCategory) -> Self {
        GlobularMap { levels: x.levels.iter().map(|c| FinFunctor::identity(c.clone())).collect() }
    }

    pub fn after(&self, first: &GlobularMap) -> Result<GlobularMap> {
        if self.levels.len() != first.levels.len() {
            return Err(Error::ShapeMismatch("truncation levels differ".into()));
        }
        let levels = self.levels.iter().zip(&first.levels).map(|(g, f)| g.after(f)).collect::<Result<_>>()?;
        Ok(GlobularMap { levels })
    }

    pub fn is_iso(&self) -> bool {
        self.levels.iter().all(|f| {
            let (a, b) = (&f.dom, &f.cod);
            a.num_objects() == b.num_objects()
                && a.num_morphisms() == b.num_morphisms()
                && is_bijection(&f.obj_map, b.num_objects())
                && is_bijection(&f.mor_map, b.num_morphisms())
        })
    }
}

fn is_bijection(map: &[usize], size: usize) -> bool {
    let mut seen = vec![false; size];
    map.len() == size && map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
}

/// Whether f commutes with the boundary maps of x and y.
pub fn is_globular_map(f: &GlobularMap, x: &TruncatedGlobularCategory, y: &TruncatedGlobularCategory) -> bool {
    f.levels.len() == x.levels.len()
        && x.levels.len() == y.levels.len()
        && f.levels.iter().enumerate().all(|(m, fm)| fm.dom == x.levels[m] && fm.cod == y.levels[m])
        && (0..x.s.len()).all(|m| {
            let (lo, hi) = (&f.levels[m], &f.levels[m + 1]);
            lo.after_unchecked(&x.s[m]) == y.s[m].after_unchecked(hi)
                && lo.after_unchecked(&x.t[m]) == y.t[m].after_unchecked(hi)
        })
}

type Keep<'a> = &'a dyn Fn(usize, usize, usize) -> bool;

/// Globular maps x → y whose level-m object and morphism assignments pass
/// `keep_obj(m, a, b)` and `keep_mor(m, u, v)`.
pub fn globular_maps_where(
    x: &TruncatedGlobularCategory,
    y: &TruncatedGlobularCategory,
    keep_obj: Keep<'_>,
    keep_mor: Keep<'_>,
    budget: &Budget,
) -> Result<Vec<GlobularMap>> {
    if x.levels.len() != y.levels.len() {
        return Err(Error::ShapeMismatch("truncation levels differ".into()));
    }
    let mut partial: Vec<Vec<FinFunctor>> = vec![vec![]];
    for m in 0..x.levels.len() {
        let mut next = Vec::new();
        for prefix in partial {
            let below = prefix.last();
            let search = FunctorSearch::new(x.levels[m].clone(), y.levels[m].clone())
                .objects(|a, b| {
                    keep_obj(m, a, b)
                        && below.map_or(true, |f| {
                            y.s[m - 1].ob(b) == f.ob(x.s[m - 1].ob(a)) && y.t[m - 1].ob(b) == f.ob(x.t[m - 1].ob(a))
                        })
                })
                .morphisms(|u, v| {
                    keep_mor(m, u, v)
                        && below.map_or(true, |f| {
                            y.s[m - 1].mor(v) == f.mor(x.s[m - 1].mor(u))
                                && y.t[m - 1].mor(v) == f.mor(x.t[m - 1].mor(u))
                        })
                });
            for f in search.collect(budget)? {
                let mut longer = prefix.clone();
                longer.push(f);
                next.push(longer);
            }
        }
        partial = next;
    }
    Ok(partial.into_iter().map(|levels| GlobularMap { levels }).collect())
}

pub fn globular_maps(x: &TruncatedGlobularCategory, y: &TruncatedGlobularCategory, budget: &Budget) -> Result<Vec<GlobularMap>> {
    globular_maps_where(x, y, &|_, _, _| true, &|_, _, _| true, budget)
}

/// Levelwise transformations f ⇒ g compatible with the boundary maps.
pub fn globular_cells(
    f: &GlobularMap,
    g: &GlobularMap,
    x: &TruncatedGlobularCategory,
    y: &TruncatedGlobularCategory,
    budget: &Budget,
) -> Result<Vec<Vec<NatTrans>>> {
    let mut partial: Vec<Vec<NatTrans>> = vec![vec![]];
    for m in 0..f.levels.len() {
        let mut next = Vec::new();
        for prefix in partial {
            let below = prefix.last();
            let search = NatSearch::new(&f.levels[m], &g.levels[m]).components(|a, c| {
                below.map_or(true, |th| {
                    y.s[m - 1].mor(c) == th.at(x.s[m - 1].ob(a)) && y.t[m - 1].mor(c) == th.at(x.t[m - 1].ob(a))
                })
            });
            for theta in search.collect(budget)? {
                let mut longer = prefix.clone();
                longer.push(theta);
                next.push(longer);
            }
        }
        partial = next;
    }
    Ok(partial)
}

/// The levelwise strict pullback of p along f, with induced boundary maps.
pub fn pullback(
    f: &GlobularMap,
    p: &GlobularMap,
    x: &TruncatedGlobularCategory,
    e: &TruncatedGlobularCategory,
) -> Result<(TruncatedGlobularCategory, Vec<CommaSquare>)> {
    let squares: Vec<CommaSquare> =
        f.levels.iter().zip(&p.levels).map(|(fm, pm)| strict_pullback(fm, pm)).collect::<Result<_>>()?;
    let boundary = |xs: &[FinFunctor], es: &[FinFunctor]| -> Result<Vec<FinFunctor>> {
        (0..xs.len())
            .map(|m| {
                let (hi, lo) = (&squares[m + 1], &squares[m]);
                let h = xs[m].after(&hi.p)?;
                lo.induced(&h, &es[m].after(&hi.q)?, &NatTrans::identity(&lo.f.after(&h)?))
            })
            .collect()
    };
    let s = boundary(&x.s, &e.s)?;
    let t = boundary(&x.t, &e.t)?;
    let levels = squares.iter().map(|sq| sq.apex.clone()).collect();
    Ok((TruncatedGlobularCategory::new(levels, s, t)?, squares))
}

/// Sp(Z) truncated at n, with the functor categories behind each level.
#[derive(Clone, Debug)]
pub struct Sp {
    pub target: Arc<FinCategory>,
    pub cats: Vec<FunctorCategory>,
    pub globular: TruncatedGlobularCategory,
}

pub fn sp(z: &Arc<FinCategory>, n: usize, budget: &Budget) -> Result<Sp> {
    let cats: Vec<FunctorCategory> =
        (0..=n).map(|m| functor_category(&span_shape(m), z, budget)).collect::<Result<_>>()?;
    let boundary = |label: Gen| -> Result<Vec<FinFunctor>> {
        (0..n).map(|m| precompose(&cats[m + 1], &cats[m], &reindex_shape(m, m + 1, Some(label))?)).collect()
    };
    let s = boundary(Gen::Sigma)?;
    let t = boundary(Gen::Tau)?;
    let levels = cats.iter().map(|c| c.category.clone()).collect();
    let globular = TruncatedGlobularCategory::new(levels, s, t)?;
    Ok(Sp { target: z.clone(), cats, globular })
}

/// Sp(p): Sp(A) → Sp(B), postcomposition at every level.
pub fn sp_map(p: &FinFunctor, a: &Sp, b: &Sp) -> Result<GlobularMap> {
    let levels = a.cats.iter().zip(&b.cats).map(|(s, t)| postcompose(s, t, p)).collect::<Result<_>>()?;
    Ok(GlobularMap { levels })
}

/// ΣX: a terminal level below X.
pub fn sigma(x: &TruncatedGlobularCategory) -> TruncatedGlobularCategory {
    let one = Arc::new(FinCategory::terminal());
    let bang = FinFunctor::to_terminal(x.levels[0].clone()).retype(x.levels[0].clone(), one.clone());
    let bang = bang.expect("terminal category");
    let mut levels = vec![one];
    levels.extend(x.levels.iter().cloned());
    let mut s = vec![bang.clone()];
    s.extend(x.s.iter().cloned());
    let mut t = vec![bang];
    t.extend(x.t.iter().cloned());
    TruncatedGlobularCategory { levels, s, t }
}

/// DX: X without level 0.
pub fn d_shift(x: &TruncatedGlobularCategory) -> Result<TruncatedGlobularCategory> {
    if x.truncation() == 0 {
        return Err(Error::TruncationUnderflow);
    }
    Ok(TruncatedGlobularCategory { levels: x.levels[1..].to_vec(), s: x.s[1..].to_vec(), t: x.t[1..].to_vec() })
}

pub fn sigma_map(f: &GlobularMap) -> GlobularMap {
    let mut levels = vec![FinFunctor::identity(Arc::new(FinCategory::terminal()))];
    levels.extend(f.levels.iter().cloned());
    GlobularMap { levels }
}

pub fn d_map(f: &GlobularMap) -> Result<GlobularMap> {
    if f.levels.len() < 2 {
        return Err(Error::TruncationUnderflow);
    }
    Ok(GlobularMap { levels: f.levels[1..].to_vec() })
}

/// η_X: X → ΣDX.
pub fn unit(x: &TruncatedGlobularCategory) -> Result<GlobularMap> {
    let target = sigma(&d_shift(x)?);
    let mut levels = vec![FinFunctor::to_terminal(x.levels[0].clone()).retype(x.levels[0].clone(), target.levels[0].clone())?];
    levels.extend(x.levels[1..].iter().map(|c| FinFunctor::identity(c.clone())));
    Ok(GlobularMap { levels })
}

/// ε_Y: DΣY → Y, the identity on the nose.
pub fn counit(y: &TruncatedGlobularCategory) -> Result<GlobularMap> {
    let back = d_shift(&sigma(y))?;
    if back != *y {
        return Err(Error::ShapeMismatch("DΣY differs from Y".into()));
    }
    Ok(GlobularMap::identity(y))
}

/// Triangle identities, invertible counits and the hom bijection
/// Glob(DX, Y) ≅ Glob(X, ΣY) on the given objects.
pub fn verify_d_sigma(corpus: &[(String, TruncatedGlobularCategory)], budget: &Budget) -> Result<Report> {
    let mut report = Report::new();
    for (name, x) in corpus {
        let back = d_shift(&sigma(x))?;
        report.push(Check::from_bool(format!("d-sigma/{name}/counit-iso"), back == *x && counit(x)?.is_iso(), || {
            "DΣX differs from X".into()
        }));
        if x.truncation() == 0 {
            continue;
        }
        let dx = d_shift(x)?;
        let eta = unit(x)?;
        let first = counit(&dx)?.after(&d_map(&eta)?)?;
        report.push(Check::from_bool(format!("d-sigma/{name}/triangle-D"), first == GlobularMap::identity(&dx), || {
            "εD∘Dη is not the identity".into()
        }));
        let sx = sigma(x);
        let second = sigma_map(&counit(x)?).after(&unit(&sx)?)?;
        report.push(Check::from_bool(format!("d-sigma/{name}/triangle-Sigma"), second == GlobularMap::identity(&sx), || {
            "Σε∘ηΣ is not the identity".into()
        }));
        let terminal_base = x.levels[0].num_objects() == 1 && x.levels[0].num_morphisms() == 1;
        report.push(Check::from_bool(format!("d-sigma/{name}/unit-iso"), eta.is_iso() == terminal_base, || {
            format!("unit iso = {}, X₀ terminal = {terminal_base}", eta.is_iso())
        }));
        report.push(Check::from_bool(format!("d-sigma/{name}/globular"), is_globular_map(&eta, x, &sigma(&dx)), || {
            "unit is not globular".into()
        }));
        report.push(Check::from_bool(format!("d-sigma/{name}/hom-bijection"), hom_bijection(x, &dx, budget)?, || {
            "Glob(DX, DX) → Glob(X, ΣDX) is not a bijection".into()
        }));
    }
    Ok(report)
}

/// φ ↦ Σφ∘η_X is a bijection Glob(DX, Y) → Glob(X, ΣY).
pub fn hom_bijection(x: &TruncatedGlobularCategory, y: &TruncatedGlobularCategory, budget: &Budget) -> Result<bool> {
    let dx = d_shift(x)?;
    let sy = sigma(y);
    let eta = unit(x)?;
    let left = globular_maps(&dx, y, budget)?;
    let right = globular_maps(x, &sy, budget)?;
    let mut images = left.iter().map(|phi| sigma_map(phi).after(&eta)).collect::<Result<Vec<_>>>()?;
    let count = images.len();
    images.sort_by(|a, b| key(a).cmp(&key(b)));
    images.dedup();
    Ok(images.len() == count && count == right.len() && images.iter().all(|h| right.contains(h)))
}

fn key(f: &GlobularMap) -> Vec<(Vec<usize>, Vec<usize>)> {
    f.levels.iter().map(|l| (l.obj_map.clone(), l.mor_map.clone())).collect()
}

/// A functor (𝔾/m)^op → Z.
#[derive(Clone, Debug, PartialEq)]
pub struct NSpan {
    pub level: usize,
    pub diagram: FinFunctor,
}

impl NSpan {
    pub fn new(level: usize, diagram: FinFunctor) -> Result<NSpan> {
        if *diagram.dom != *span_shape(level) {
            return Err(Error::ShapeMismatch(format!("diagram is not on the {level}-span shape")));
        }
        Ok(NSpan { level, diagram })
    }

    /// The value at (j, γ), or at the top for `None`.
    pub fn at(&self, j: usize, label: Option<Gen>) -> usize {
        self.diagram.ob(label.map_or(top(self.level), |g| 2 * j + g.offset()))
    }
}

/// ε(C, a) = a(1_C).
pub fn epsilon_component(a: &NSpan) -> usize {
    a.diagram.ob(top(a.level))
}

/// The (m+k)-span with `terminal` on the bottom k levels and x above.
pub fn i_k_pad(x: &NSpan, k: usize, terminal: usize) -> Result<NSpan> {
    let z = x.diagram.cod.clone();
    if (0..z.num_objects()).any(|o| z.hom(o, terminal).len() != 1) {
        return Err(Error::BadConfig(format!("{} is not terminal", z.object_id(terminal))));
    }
    let n = x.level + k;
    let (small, big) = (span_shape(x.level), span_shape(n));
    let shifted = |i: usize| (i >= 2 * k).then(|| i - 2 * k);
    let obj_map: Vec<usize> = (0..big.num_objects()).map(|i| shifted(i).map_or(terminal, |j| x.diagram.ob(j))).collect();
    let mor_map = (0..big.num_morphisms())
        .map(|u| match (shifted(big.src(u)), shifted(big.tgt(u))) {
            (Some(a), Some(b)) => x.diagram.mor(small.hom(a, b)[0]),
            _ => z.hom(obj_map[big.src(u)], terminal)[0],
        })
        .collect();
    NSpan::new(n, FinFunctor::new(big, z, obj_map, mor_map)?)
}

/// Padding by one level as a globular map i₁: ΣSp(Z) → Sp(Z). Level 0 picks
/// the terminal object; level m pads (m−1)-spans and their transformations.
pub fn suspension_map(small: &Sp, big: &Sp, terminal: usize) -> Result<GlobularMap> {
    let z = &big.target;
    let n = big.cats.len() - 1;
    if small.cats.len() != n {
        return Err(Error::ShapeMismatch("ΣSp(Z) and Sp(Z) need the same truncation".into()));
    }
    let source = sigma(&small.globular);
    let point = FinFunctor::constant(span_shape(0), z.clone(), terminal);
    let mut levels = vec![FinFunctor::new(
        source.levels[0].clone(),
        big.cats[0].category.clone(),
        vec![big.cats[0].object_of(&point)?],
        vec![big.cats[0].morphism_of(&NatTrans::identity(&point))?],
    )?];
    for m in 1..=n {
        let (from, to) = (&small.cats[m - 1], &big.cats[m]);
        let padded: Vec<NSpan> = from
            .functors
            .iter()
            .map(|f| i_k_pad(&NSpan::new(m - 1, f.clone())?, 1, terminal))
            .collect::<Result<_>>()?;
        let obj_map = padded.iter().map(|a| to.object_of(&a.diagram)).collect::<Result<Vec<_>>>()?;
        let mor_map = from
            .transformations
            .iter()
            .map(|th| {
                let (a, b) = (&padded[from.object_of(&th.dom)?], &padded[from.object_of(&th.cod)?]);
                let components = (0..2 * m + 1)
                    .map(|i| if i >= 2 { th.at(i - 2) } else { z.id(terminal) })
                    .collect();
                to.morphism_of(&NatTrans::new(a.diagram.clone(), b.diagram.clone(), components)?)
            })
            .collect::<Result<Vec<_>>>()?;
        levels.push(FinFunctor::new(from.category.clone(), to.category.clone(), obj_map, mor_map)?);
    }
    Ok(GlobularMap { levels })
}

/// E(X) = el(X^op)^op together with the element data behind it.
pub struct Total {
    pub category: Arc<FinCategory>,
    pub elements: Grothendieck,
    lookup: HashMap<(usize, usize, usize, usize), usize>,
}

impl Total {
    pub fn of(x: &TruncatedGlobularCategory, g: &TruncatedG) -> Result<Total> {
        let elements = el(&x.opposite().as_presheaf(g)?);
        let category = Arc::new(elements.category.opposite());
        let lookup = (0..category.num_morphisms())
            .map(|mu| {
                let c = &elements.category;
                ((c.src(mu), c.tgt(mu), elements.alphas[mu], elements.projection.mor(mu)), mu)
            })
            .collect();
        Ok(Total { category, elements, lookup })
    }

    pub fn object(&self, level: usize, x: usize) -> Option<usize> {
        self.elements.points.iter().position(|&p| p == (level, x))
    }
}

/// ε_A: E Sp(A) → A, (C, a) ↦ a(1_C).
pub fn epsilon(total: &Total, sp_a: &Sp, g: &TruncatedG) -> Result<FinFunctor> {
    let e = &total.elements;
    let obj_map = e.points.iter().map(|&(c, a)| sp_a.cats[c].functor(a).ob(top(c))).collect();
    let grid = &e.category;
    let mor_map = (0..grid.num_morphisms())
        .map(|mu| {
            let beta = e.projection.mor(mu);
            let (c1, c2) = (g.category.src(beta), g.category.tgt(beta));
            let x2 = sp_a.cats[c2].functor(e.points[grid.tgt(mu)].1);
            let alpha = sp_a.cats[c1].transformation(e.alphas[mu]);
            let landing = 2 * c1 + g.label(beta).map_or(0, Gen::offset);
            let shape = &x2.dom;
            let into = x2.mor(shape.hom(top(c2), landing)[0]);
            Ok(sp_a.target.compose(alpha.at(top(c1)), into))
        })
        .collect::<Result<Vec<_>>>()?;
    FinFunctor::new(total.category.clone(), sp_a.target.clone(), obj_map, mor_map)
}

/// E Sp(p): E Sp(A) → E Sp(B).
pub fn total_map(p: &FinFunctor, ta: &Total, tb: &Total, sp_a: &Sp, sp_b: &Sp) -> Result<FinFunctor> {
    let lifted = sp_map(p, sp_a, sp_b)?;
    let ea = &ta.elements;
    let obj_map: Vec<usize> = ea
        .points
        .iter()
        .map(|&(c, a)| tb.object(c, lifted.levels[c].ob(a)).ok_or_else(|| Error::NoLift("no image object".into())))
        .collect::<Result<_>>()?;
    let grid = &ea.category;
    let mor_map = (0..grid.num_morphisms())
        .map(|mu| {
            let beta = ea.projection.mor(mu);
            let c1 = ea.points[grid.src(mu)].0;
            let alpha = lifted.levels[c1].mor(ea.alphas[mu]);
            tb.lookup
                .get(&(obj_map[grid.src(mu)], obj_map[grid.tgt(mu)], alpha, beta))
                .copied()
                .ok_or_else(|| Error::NoLift("no image morphism".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    FinFunctor::new(ta.category.clone(), tb.category.clone(), obj_map, mor_map)
}

/// The outcome of the ε naturality check for p.
#[derive(Clone, Debug)]
pub struct NaturalitySquare {
    pub commutes: bool,
    /// The comparison E Sp(A) → ε_B ×_B A is bijective.
    pub comparison_iso: bool,
    /// The square passes the strict-pullback verifier on the probes.
    pub probed: Option<Report>,
}

impl NaturalitySquare {
    pub fn is_pullback(&self) -> bool {
        self.commutes && self.comparison_iso && self.probed.as_ref().map_or(true, Report::all_pass)
    }
}

/// Builds ε_B∘E Sp(p) = p∘ε_A at truncation n and tests that it is a pullback,
/// directly and, when probes are given, through the comma verifier.
pub fn naturality_pullback_check(p: &FinFunctor, n: usize, probes: &[Probe], budget: &Budget) -> Result<NaturalitySquare> {
    let g = build_g(n);
    let sp_a = sp(&p.dom, n, budget)?;
    let sp_b = sp(&p.cod, n, budget)?;
    let ta = Total::of(&sp_a.globular, &g)?;
    let tb = Total::of(&sp_b.globular, &g)?;
    let eps_a = epsilon(&ta, &sp_a, &g)?;
    let eps_b = epsilon(&tb, &sp_b, &g)?;
    let esp = total_map(p, &ta, &tb, &sp_a, &sp_b)?;
    let left = p.after(&eps_a)?;
    let right = eps_b.after(&esp)?;
    if left != right {
        return Ok(NaturalitySquare { commutes: false, comparison_iso: false, probed: None });
    }
    let pb = strict_pullback(p, &eps_b)?;
    let comparison = pb.induced(&eps_a, &esp, &NatTrans::identity(&left))?;
    let comparison_iso = GlobularMap { levels: vec![comparison] }.is_iso();
    let probed = if probes.is_empty() {
        None
    } else {
        let sq = CommaSquare::from_parts(p.clone(), eps_b, eps_a, esp, NatTrans::identity(&left), Flavor::Strict)?;
        Some(verify_lax_pullback(&sq, probes, budget)?)
    };
    Ok(NaturalitySquare { commutes: true, comparison_iso, probed })
}

/// The square relating Σ Sp(τ) and Sp(τ) through the padding maps commutes
/// and is a levelwise pullback.
pub fn suspension_square_check(tau: &FinFunctor, terminal_dot: usize, terminal: usize, n: usize, budget: &Budget) -> Result<Report> {
    let mut report = Report::new();
    if n == 0 {
        return Err(Error::TruncationUnderflow);
    }
    let (dot_small, dot_big) = (sp(&tau.dom, n - 1, budget)?, sp(&tau.dom, n, budget)?);
    let (om_small, om_big) = (sp(&tau.cod, n - 1, budget)?, sp(&tau.cod, n, budget)?);
    let i1_dot = suspension_map(&dot_small, &dot_big, terminal_dot)?;
    let i1 = suspension_map(&om_small, &om_big, terminal)?;
    let sigma_tau = sigma_map(&sp_map(tau, &dot_small, &om_small)?);
    let sp_tau = sp_map(tau, &dot_big, &om_big)?;
    let globular = is_globular_map(&i1, &sigma(&om_small.globular), &om_big.globular)
        && is_globular_map(&i1_dot, &sigma(&dot_small.globular), &dot_big.globular);
    report.push(Check::from_bool("suspension/globular", globular, || "a padding map is not globular".into()));
    let top_path = sp_tau.after(&i1_dot)?;
    let bottom_path = i1.after(&sigma_tau)?;
    report.push(Check::from_bool("suspension/commutes", top_path == bottom_path, || "square does not commute".into()));
    if top_path != bottom_path {
        return Ok(report);
    }
    let mut failing = Vec::new();
    for m in 0..=n {
        let pb = strict_pullback(&i1.levels[m], &sp_tau.levels[m])?;
        let h = &sigma_tau.levels[m];
        let comparison =
            pb.induced(h, &i1_dot.levels[m], &NatTrans::identity(&i1.levels[m].after(h)?))?;
        if !(GlobularMap { levels: vec![comparison] }).is_iso() {
            failing.push(m.to_string());
        }
    }
    report.push(Check::from_bool("suspension/pullback", failing.is_empty(), || {
        format!("comparison not invertible at levels {}", failing.join(", "))
    }));
    Ok(report)
}

/// For each globular probe X, φ ↦ G(φ) is a bijection from globular
/// 2-cells f ⇒ g onto globular maps G(f) → G(g) over X, for all f, g: X → Ω.
pub fn check_classifying_globular(
    tau: &GlobularMap,
    dot: &TruncatedGlobularCategory,
    omega: &TruncatedGlobularCategory,
    probes: &[(String, TruncatedGlobularCategory)],
    budget: &Budget,
) -> Result<Report> {
    let mut report = Report::new();
    let levelwise = tau.levels.iter().all(is_discrete_opfibration);
    report.push(Check::from_bool("globular-classifying/discrete-opfibration", levelwise, || {
        "some level is not a discrete opfibration".into()
    }));
    for (name, x) in probes {
        let maps = globular_maps(x, omega, budget)?;
        let pulled = maps.iter().map(|f| pullback(f, tau, x, dot)).collect::<Result<Vec<_>>>()?;
        let mut failures = Vec::new();
        for (i, f) in maps.iter().enumerate() {
            for (j, g) in maps.iter().enumerate() {
                let (pi, sqi) = &pulled[i];
                let (pj, sqj) = &pulled[j];
                let mut images = Vec::new();
                for cell in globular_cells(f, g, x, omega, budget)? {
                    let levels = (0..cell.len())
                        .map(|m| Ok(lift_2cell(&tau.levels[m], &cell[m], &sqi[m], &sqj[m])?.map))
                        .collect::<Result<Vec<_>>>()?;
                    images.push(GlobularMap { levels });
                }
                let over = globular_maps_where(
                    pi,
                    pj,
                    &|m, a, b| sqj[m].p.ob(b) == sqi[m].p.ob(a),
                    &|m, u, v| sqj[m].p.mor(v) == sqi[m].p.mor(u),
                    budget,
                )?;
                let count = images.len();
                images.sort_by(|a, b| key(a).cmp(&key(b)));
                images.dedup();
                if images.len() != count {
                    failures.push(format!("not faithful at maps {i} ⇒ {j}"));
                } else if count != over.len() || !over.iter().all(|h| images.contains(h)) {
                    failures.push(format!("not full at maps {i} ⇒ {j}: {count} cells, {} maps over", over.len()));
                }
            }
        }
        report.push(Check::from_bool(format!("globular-classifying/{name}"), failures.is_empty(), || failures.join("; ")));
    }
    Ok(report)
}

/// Constant globular objects on the given probes, truncated at n.
pub fn constant_probes(probes: &[Probe], n: usize) -> Vec<(String, TruncatedGlobularCategory)> {
    probes.iter().map(|p| (format!("const-{}", p.name), TruncatedGlobularCategory::constant(p.category.clone(), n))).collect()
}

/// Two objects joined by one arrow-cell: X₀ = {a, b}, X₁ = {e}, higher levels empty.
pub fn arrow_globe(n: usize) -> TruncatedGlobularCategory {
    let two = Arc::new(FinCategory::discrete_n(2));
    let one = Arc::new(FinCategory::terminal());
    let empty = Arc::new(FinCategory::empty());
    let mut levels = vec![two.clone()];
    let mut s = Vec::new();
    let mut t = Vec::new();
    if n >= 1 {
        levels.push(one.clone());
        s.push(FinFunctor::point(two.clone(), 0).retype(one.clone(), two.clone()).expect("typed"));
        t.push(FinFunctor::point(two.clone(), 1).retype(one.clone(), two).expect("typed"));
    }
    for m in 2..=n {
        let below = levels[m - 1].clone();
        levels.push(empty.clone());
        let nothing = FinFunctor::new_unchecked(empty.clone(), below, vec![], vec![]);
        s.push(nothing.clone());
        t.push(nothing);
    }
    TruncatedGlobularCategory { levels, s, t }
}

/// A corpus of small globular objects at truncation n ≥ 1.
pub fn globular_corpus(n: usize, budget: &Budget) -> Result<Vec<(String, TruncatedGlobularCategory)>> {
    let mut out = Vec::new();
    let bases: Vec<(&str, FinCategory)> = vec![
        ("1", FinCategory::terminal()),
        ("2-chain", FinCategory::chain(2)),
        ("2-discrete", FinCategory::discrete_n(2)),
        ("parallel-pair", crate::corpus::parallel_pair()),
    ];
    for (name, c) in &bases {
        out.push((format!("const-{name}"), TruncatedGlobularCategory::constant(Arc::new(c.clone()), n)));
    }
    out.push(("arrow-globe".into(), arrow_globe(n)));
    for (name, c) in &bases[..3] {
        out.push((format!("sp-{name}"), sp(&Arc::new(c.clone()), n, budget)?.globular));
    }
    let lower: Vec<(String, TruncatedGlobularCategory)> = vec![
        ("const-2-chain".into(), TruncatedGlobularCategory::constant(Arc::new(FinCategory::chain(2)), n - 1)),
        ("arrow-globe".into(), arrow_globe(n - 1)),
        ("sp-2-chain".into(), sp(&Arc::new(FinCategory::chain(2)), n - 1, budget)?.globular),
    ];
    for (name, x) in lower {
        out.push((format!("sigma-{name}"), sigma(&x)));
    }
    Ok(out)
}
