//! Named check suites run by the command-line front end and the acceptance test.
//!
//! Every suite returns a [`Report`] whose checks are sorted by id. Corpus
//! generation is seeded by [`SuiteConfig::seed`], so a report is a function
//! of its configuration.

use std::sync::Arc;
use std::time::Instant;

use crate::budget::DEFAULT_CAP;
use crate::category::validate_category;
use crate::category::{functor_category, FunctorCategory, FunctorSearch, NatSearch};
use crate::comma::{comma, pasting_check, pullback_of_flavor, strict_pullback, verify_lax_pullback, Flavor, PastingData};
use crate::fib::{chevalley_check, closure_suite, is_discrete_fibration, is_discrete_fibration_span, is_fibration, is_opfibration};
use crate::glob;
use crate::kan::{
    colimit_in, lan_pointwise, restriction, verify_adjunction, verify_col_rec, verify_pointwise_left_extension,
    weighted_colimit,
};
use crate::omega::{
    all_cosieves, build_internal_poset_from_subobjects, build_omega, build_omega_restricted, classify_cosieve,
    exponential_check, implication_table, product_classifier, terminal_adjoint_check,
};
use crate::presheaf::{Copresheaf, Presheaf};
use crate::probes::{self, Probe};
use crate::span::{check_classifying, classify, el, iso_over, pull_back, CatValuedPresheaf};
use crate::yoneda::{verify_axioms, yoneda_map, YonedaContext};
use crate::{corpus, Budget, Check, Error, FinCategory, FinFunctor, Report, Result, Verdict};

pub const SUITES: [&str; 8] = ["core-laws", "comma", "fib", "span", "kan", "yoneda-axioms", "omega", "glob"];

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub lambda: usize,
    pub truncation: usize,
    pub probes: String,
    pub cap: usize,
    pub seed: u64,
    /// Extra categories, loaded from corpus files.
    pub corpus: Vec<Arc<FinCategory>>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { lambda: 2, truncation: 2, probes: "standard".into(), cap: DEFAULT_CAP, seed: 1, corpus: Vec::new() }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.lambda < 2 {
            return Err(Error::BadConfig(format!("lambda must be at least 2, got {}", self.lambda)));
        }
        if self.cap == 0 {
            return Err(Error::BadConfig("cap must be positive".into()));
        }
        if self.truncation > 3 {
            return Err(Error::BadConfig(format!("truncation {} is above the supported 3", self.truncation)));
        }
        probes::by_name(&self.probes).map(|_| ())
    }

    fn budget(&self) -> Budget {
        Budget::with_cap(self.cap)
    }

    fn probe_family(&self) -> Vec<Probe> {
        probes::by_name(&self.probes).unwrap_or_else(|_| probes::tiny())
    }
}

/// Runs one suite, or every suite for `"all"` with ids prefixed by suite name.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<Report> {
    cfg.validate()?;
    let mut report = match name {
        "core-laws" => core_laws(cfg)?,
        "comma" => comma_suite(cfg)?,
        "fib" => fib_suite(cfg)?,
        "span" => span_suite(cfg)?,
        "kan" => kan_suite(cfg)?,
        "yoneda-axioms" => yoneda_suite(cfg)?,
        "omega" => omega_suite(cfg)?,
        "glob" => glob_suite(cfg)?,
        "all" => {
            let mut all = Report::new();
            for s in SUITES {
                all.extend_prefixed(s, run_suite(s, cfg)?);
            }
            all
        }
        other => return Err(Error::BadConfig(format!("unknown suite {other}"))),
    };
    report.sort();
    Ok(report)
}

/// Runs `f`, stamps its checks with the elapsed time, and turns a blown
/// budget into an inconclusive check and any other error into a failure.
fn section(id: impl Into<String>, f: impl FnOnce() -> Result<Report>) -> Report {
    let id = id.into();
    let start = Instant::now();
    let mut out = match f() {
        Ok(r) => r,
        Err(e @ (Error::CardinalityExceeded { .. } | Error::Cancelled)) => {
            let mut r = Report::new();
            r.push(Check::new(id.clone(), Verdict::Inconclusive).with_witness(e.to_string()));
            r
        }
        Err(e) => {
            let mut r = Report::new();
            r.push(Check::fail(id.clone(), e.to_string()));
            r
        }
    };
    let ms = start.elapsed().as_millis() as u64;
    for c in &mut out.checks {
        c.timing_ms.get_or_insert(ms);
    }
    out
}

fn single(c: Check) -> Report {
    Report { checks: vec![c] }
}

fn at_least(id: &str, got: usize, want: usize) -> Check {
    Check::from_bool(id, got >= want, || format!("{got} instances, need {want}"))
}

fn arc(c: FinCategory) -> Arc<FinCategory> {
    Arc::new(c)
}

fn core_laws(cfg: &SuiteConfig) -> Result<Report> {
    let mut report = Report::new();
    let mut cats: Vec<(String, Arc<FinCategory>)> =
        corpus::named_categories().into_iter().map(|(n, c)| (n, arc(c))).collect();
    for (i, c) in corpus::category_pool(cfg.seed, 4).into_iter().enumerate() {
        cats.push((format!("pool{i}"), c));
    }
    for (i, c) in cfg.corpus.iter().enumerate() {
        cats.push((format!("file{i}"), c.clone()));
    }
    for (name, c) in &cats {
        report.extend(section(format!("category/{name}"), || {
            let problems = validate_category(&c.to_raw());
            let mut r = Report::new();
            r.push(Check::from_bool(format!("category/{name}/axioms"), problems.is_empty(), || {
                format!("{} violations", problems.len())
            }));
            r.push(Check::from_bool(format!("category/{name}/op-op"), c.opposite().opposite() == **c, || {
                "opposite is not an involution".into()
            }));
            let back = FinCategory::from_json(&c.to_json())?;
            r.push(Check::from_bool(format!("category/{name}/json"), back == **c, || "json round trip differs".into()));
            Ok(r)
        }));
    }
    let functors = corpus::random_functors(cfg.seed, 40, 3);
    let mut triples = 0;
    for (i, f) in functors.iter().enumerate() {
        let idd = FinFunctor::identity(f.dom.clone());
        let idc = FinFunctor::identity(f.cod.clone());
        report.push(Check::from_bool(format!("functor/{i}/unit"), f.after(&idd)? == *f && idc.after(f)? == *f, || {
            f.table_id()
        }));
        for g in functors.iter().filter(|g| Arc::ptr_eq(&g.dom, &f.cod)) {
            for h in functors.iter().filter(|h| Arc::ptr_eq(&h.dom, &g.cod)).take(2) {
                let ok = h.after(&g.after(f)?)? == h.after(g)?.after(f)?;
                report.push(Check::from_bool(format!("functor/assoc/{triples:03}"), ok, || f.table_id()));
                triples += 1;
            }
        }
    }
    report.push(at_least("functor/assoc-count", triples, 10));
    let b = cfg.budget();
    let parallel = functors.iter().flat_map(|f| {
        functors.iter().filter(move |g| Arc::ptr_eq(&f.dom, &g.dom) && Arc::ptr_eq(&f.cod, &g.cod)).map(move |g| (f, g))
    });
    for (i, (f, g)) in parallel.enumerate().take(30) {
        report.extend(section(format!("nat/{i}"), || {
            let cells = NatSearch::new(f, g).collect(&b)?;
            let ok = cells.iter().all(|t| {
                t.vcomp(&crate::NatTrans::identity(f)).ok().as_ref() == Some(t)
                    && crate::NatTrans::identity(g).vcomp(t).ok().as_ref() == Some(t)
            });
            Ok(single(Check::from_bool(format!("nat/{i}/unit"), ok, || "identity law fails".into())))
        }));
    }
    Ok(report)
}

fn comma_suite(cfg: &SuiteConfig) -> Result<Report> {
    let mut report = Report::new();
    let family = cfg.probe_family();
    let cospans = corpus::random_cospans_bounded(cfg.seed, 50, 4, 12);
    report.push(at_least("corpus-size", cospans.len(), 50));
    for (i, (f, g)) in cospans.iter().enumerate() {
        for flavor in [Flavor::Lax, Flavor::Pseudo, Flavor::Strict] {
            let id = format!("{}/{i:02}", format!("{flavor:?}").to_lowercase());
            report.extend(section(id.clone(), || {
                let sq = pullback_of_flavor(f, g, flavor)?;
                let r = verify_lax_pullback(&sq, &family, &cfg.budget())?;
                let mut out = Report::new();
                out.extend_prefixed(&id, r);
                Ok(out)
            }));
        }
    }
    let mut pairs = 0;
    for (i, (f, g)) in corpus::random_cospans_bounded(cfg.seed + 1, 40, 3, 8).iter().enumerate() {
        let Some(h) = corpus::category_pool(cfg.seed + i as u64, 3)
            .iter()
            .find_map(|x| corpus::random_functor(cfg.seed + i as u64, x, &f.dom).filter(|h| h.dom.num_objects() > 0))
        else {
            continue;
        };
        pairs += 1;
        report.extend(section(format!("pasting/{i:02}"), || {
            let back = comma(f, g)?;
            let front = strict_pullback(&h, &back.p)?;
            let data = PastingData { back, h: h.clone(), x: front.q.clone(), y: front.p.clone() };
            let out = pasting_check(&data, &family, &cfg.budget())?;
            Ok(single(Check::from_bool(format!("pasting/{i:02}"), out.holds() && out.front_passes, || {
                format!("front {} composite {}", out.front_passes, out.composite_passes)
            })))
        }));
    }
    report.push(at_least("pasting-count", pairs, 20));
    Ok(report)
}

/// Seeded functors, comma projections and identities.
fn functor_corpus(seed: u64) -> Vec<FinFunctor> {
    let mut out = corpus::random_functors(seed, 40, 3);
    for (f, g) in corpus::random_cospans_bounded(seed + 1, 12, 3, 10) {
        if let Ok(sq) = comma(&f, &g) {
            out.push(sq.p.clone());
            out.push(sq.q.clone());
        }
    }
    for (_, c) in corpus::named_categories() {
        out.push(FinFunctor::identity(arc(c)));
    }
    out
}

fn fib_suite(cfg: &SuiteConfig) -> Result<Report> {
    let mut report = Report::new();
    let functors = functor_corpus(cfg.seed);
    let (mut total, mut inconclusive) = (0, 0);
    for (i, f) in functors.iter().enumerate().filter(|(_, f)| f.cod.num_objects() <= 3) {
        total += 1;
        let c = match chevalley_check(f, &cfg.budget()) {
            Ok(rep) => {
                if rep.verdict == Verdict::Inconclusive {
                    inconclusive += 1;
                }
                let c = Check::new(format!("chevalley/{i:03}"), rep.verdict);
                if rep.verdict == Verdict::Pass {
                    c
                } else {
                    c.with_witness(format!("fibration {}: {}", rep.is_fibration, f.table_id()))
                }
            }
            Err(e @ Error::CardinalityExceeded { .. }) => {
                inconclusive += 1;
                Check::new(format!("chevalley/{i:03}"), Verdict::Inconclusive).with_witness(e.to_string())
            }
            Err(e) => return Err(e),
        };
        report.push(c);
    }
    report.push(at_least("chevalley-count", total, 30));
    report.push(Check::from_bool("chevalley-inconclusive-rate", inconclusive * 10 < total.max(1), || {
        format!("{inconclusive} of {total} inconclusive")
    }));
    let cospans = corpus::random_cospans(cfg.seed + 2, 40, 4);
    for (i, (f, g)) in cospans.iter().enumerate() {
        let sq = comma(f, g)?;
        let c = match is_discrete_fibration_span(&sq.p, &sq.q) {
            Some(cert) => Check::from_bool(format!("two-sided/{i:02}"), is_fibration(cert.d()) && is_opfibration(cert.c()), || {
                "certificate legs are not a fibration/opfibration pair".into()
            }),
            None => Check::fail(format!("two-sided/{i:02}"), "comma span fails the certificate"),
        };
        report.push(c);
    }
    let closure = closure_suite(&functors)?;
    let instances = closure.checks.len();
    report.extend_prefixed("closure", closure);
    report.push(at_least("closure-count", instances, 30));
    Ok(report)
}

/// Discrete opfibrations: identities, coslices, representable and constant
/// copresheaves over the named categories.
fn discrete_opfibrations() -> Vec<FinFunctor> {
    let mut out = Vec::new();
    for (_, c) in corpus::named_categories() {
        let c = arc(c);
        out.push(FinFunctor::identity(c.clone()));
        for o in 0..c.num_objects() {
            out.push(Copresheaf::representable(c.clone(), o).elements().projection);
            if let Ok(sq) = comma(&FinFunctor::point(c.clone(), o), &FinFunctor::identity(c.clone())) {
                out.push(sq.q);
            }
        }
        out.push(Copresheaf::constant(c.clone(), 2).elements().projection);
    }
    out
}

fn span_suite(cfg: &SuiteConfig) -> Result<Report> {
    let mut report = Report::new();
    let b = cfg.budget();
    let dopfibs = discrete_opfibrations();
    for lambda in [2, 3] {
        let ctx = build_omega(lambda)?;
        let mut checked = 0;
        for (i, p) in dopfibs.iter().enumerate() {
            let f = match classify(p, &ctx) {
                Ok(f) => f,
                Err(Error::FibreTooLarge { .. }) => continue,
                Err(e) => return Err(e),
            };
            checked += 1;
            report.extend(section(format!("round-trip/{lambda}/{i:03}"), || {
                let g = pull_back(&f, &ctx.tau)?;
                let ok = classify(&g.p, &ctx)? == f && iso_over(&g.p, p, &b)?.is_some();
                Ok(single(Check::from_bool(format!("round-trip/{lambda}/{i:03}"), ok, || p.table_id())))
            }));
        }
        report.push(at_least(&format!("round-trip/{lambda}/count"), checked, 10));
        for probe in probes::classifying() {
            report.extend(section(format!("classify-maps/{lambda}/{}", probe.name), || {
                let maps = FunctorSearch::new(probe.category.clone(), ctx.omega.clone()).collect(&b)?;
                let mut bad = 0;
                for f in &maps {
                    if classify(&pull_back(f, &ctx.tau)?.p, &ctx)? != *f {
                        bad += 1;
                    }
                }
                Ok(single(Check::from_bool(format!("classify-maps/{lambda}/{}", probe.name), bad == 0, || {
                    format!("{bad} of {} maps not recovered", maps.len())
                })))
            }));
        }
        report.extend(section(format!("classifying/{lambda}"), || {
            let mut out = Report::new();
            out.extend_prefixed(&format!("classifying/{lambda}"), check_classifying(&ctx.tau, &probes::classifying(), &b)?);
            Ok(out)
        }));
    }
    let mut bases = 0;
    for (name, c) in corpus::named_categories() {
        let c = arc(c);
        for o in 0..c.num_objects() {
            bases += 1;
            report.extend(section(format!("el-representable/{name}/{o}"), || {
                let rep = Presheaf::representable(c.clone(), o);
                let g = el(&CatValuedPresheaf::from_presheaf(&rep));
                let slice = comma(&FinFunctor::identity(c.clone()), &FinFunctor::point(c.clone(), o))?;
                let ok = iso_over(&g.projection, &slice.p, &b)?.is_some() && is_discrete_fibration(&g.projection);
                Ok(single(Check::from_bool(format!("el-representable/{name}/{o}"), ok, || "not the slice".into())))
            }));
        }
    }
    report.push(at_least("el-representable-count", bases, 10));
    Ok(report)
}

/// The least upper bound in a poset.
fn join(l: &FinCategory, xs: &[usize]) -> Option<usize> {
    let above = |y: usize| xs.iter().all(|&x| !l.hom(x, y).is_empty());
    (0..l.num_objects()).find(|&y| above(y) && (0..l.num_objects()).all(|z| !above(z) || !l.hom(y, z).is_empty()))
}

fn kan_suite(cfg: &SuiteConfig) -> Result<Report> {
    let mut report = Report::new();
    let b = cfg.budget();
    let pairs = corpus::random_lan_pairs(cfg.seed, 40, 3);
    report.push(at_least("lawvere-count", pairs.len(), 30));
    let mut ff = 0;
    for (i, (g, f)) in pairs.iter().enumerate() {
        if g.is_fully_faithful() {
            ff += 1;
        }
        report.extend(section(format!("lawvere/{i:02}"), || {
            let cell = lan_pointwise(g, f, &b)?;
            let mut out = Report::new();
            let mut bad = Vec::new();
            for o in 0..g.cod.num_objects() {
                let sq = comma(g, &FinFunctor::point(g.cod.clone(), o))?;
                let col = colimit_in(&f.after(&sq.p)?, &b)?.map(|k| k.nadir);
                let below: Vec<usize> =
                    (0..g.dom.num_objects()).filter(|&x| !g.cod.hom(g.ob(x), o).is_empty()).map(|x| f.ob(x)).collect();
                if col != Some(cell.h.ob(o)) || join(&f.cod, &below) != col {
                    bad.push(g.cod.object_id(o).to_string());
                }
            }
            out.push(Check::from_bool(format!("lawvere/{i:02}/formula"), bad.is_empty(), || bad.join(", ")));
            let pointwise = verify_pointwise_left_extension(&cell, &b)?;
            out.push(Check::from_bool(format!("lawvere/{i:02}/pointwise"), pointwise.holds(), || format!("{pointwise:?}")));
            if g.is_fully_faithful() {
                out.push(Check::from_bool(format!("lawvere/{i:02}/ff-invertible"), cell.phi.is_invertible(), || {
                    "cell along a fully faithful map is not invertible".into()
                }));
            }
            Ok(out)
        }));
    }
    report.push(at_least("lawvere-ff-count", ff, 1));
    report.extend(section("negative/no-initial", || {
        let ctx = build_omega_restricted(3, 1)?;
        let empty = FinFunctor::new(arc(FinCategory::empty()), ctx.omega.clone(), vec![], vec![])?;
        let none = colimit_in(&empty, &b)?.is_none();
        Ok(single(Check::from_bool("negative/no-initial", none, || "non-empty sets have an initial object".into())))
    }));
    Ok(report)
}

fn preorder_maps(cats: &[Arc<FinCategory>], max: usize) -> Vec<(String, FinFunctor)> {
    let cats: Vec<&Arc<FinCategory>> = cats.iter().filter(|c| c.num_objects() <= max).collect();
    let mut out = Vec::new();
    for (i, a) in cats.iter().enumerate() {
        out.push((format!("id{i}"), FinFunctor::identity((*a).clone())));
        for (j, b) in cats.iter().enumerate() {
            if let Some(f) = corpus::random_functor((i * 31 + j) as u64, a, b) {
                out.push((format!("f{i}.{j}"), f));
            }
        }
    }
    out
}

fn psh_of(c: &Arc<FinCategory>, omega: &Arc<FinCategory>, b: &Budget) -> Result<FunctorCategory> {
    functor_category(&arc(c.opposite()), omega, b)
}

fn yoneda_suite(cfg: &SuiteConfig) -> Result<Report> {
    let mut report = Report::new();
    let b = cfg.budget();
    let preorders: Vec<Arc<FinCategory>> = corpus::preorders_up_to_iso(3).into_iter().map(Arc::new).collect();
    let ctx = YonedaContext::with_bases(cfg.lambda, &preorders, &b)?;
    for (name, f) in preorder_maps(&preorders, 3) {
        let id = format!("axioms/{name}");
        report.extend(section(id.clone(), || {
            let mut out = Report::new();
            out.extend_prefixed(&id, verify_axioms(&ctx, &[(name.clone(), f.clone())], &probes::tiny(), &b)?);
            Ok(out)
        }));
    }
    let omega = build_omega(cfg.lambda)?;
    let mut triangles = 0;
    for (i, a) in preorders.iter().enumerate() {
        for (j, c) in preorders.iter().enumerate() {
            let (pa, pc) = (psh_of(a, &omega.omega, &b)?, psh_of(c, &omega.omega, &b)?);
            for (k, f) in FunctorSearch::new(a.clone(), c.clone()).collect(&b)?.iter().enumerate() {
                triangles += 1;
                let id = format!("lan-res-ran/{i}.{j}.{k}");
                report.extend(section(id.clone(), || {
                    let r = restriction(f, &pa, &pc, &b)?;
                    let ok = |adj: &Option<crate::kan::Adjunction>| {
                        adj.as_ref().is_some_and(|a| verify_adjunction(&a.left, &a.right, &a.unit, &a.counit))
                    };
                    let (lan, ran) = (ok(&r.lan), ok(&r.ran));
                    Ok(single(Check::from_bool(id.clone(), lan && ran, || format!("lan {lan}, ran {ran}"))))
                }));
            }
        }
    }
    report.push(at_least("lan-res-ran-count", triangles, 10));
    for (i, a) in preorders.iter().enumerate() {
        let id = format!("yoneda-wcolim/{i}");
        report.extend(section(id.clone(), || {
            let y = yoneda_map(a, &ctx, &b)?;
            let psh = ctx.psh(a, &b)?;
            let mut bad = 0;
            for o in 0..psh.category.num_objects() {
                let w = ctx.presheaf_at(&psh, a, o);
                let wc = weighted_colimit(&w, &y, &b)?;
                if wc.object() != o || !verify_col_rec(&w, &y, &wc, &b)? {
                    bad += 1;
                }
            }
            Ok(single(Check::from_bool(id.clone(), bad == 0, || format!("{bad} weights fail"))))
        }));
    }
    if cfg.lambda == 2 {
        report.extend(cocomplete_lattices(cfg)?);
    }
    Ok(report)
}

/// Weighted colimits of every f: C → [Dᵒᵖ, 2] for every 2-valued weight.
fn cocomplete_lattices(cfg: &SuiteConfig) -> Result<Report> {
    let mut report = Report::new();
    let b = cfg.budget();
    let ctx = build_omega(2)?;
    let posets: Vec<Arc<FinCategory>> = corpus::posets_up_to_iso(2).into_iter().map(Arc::new).collect();
    let mut checked = 0;
    for (ci, c) in posets.iter().enumerate() {
        let weights: Vec<Presheaf> = FunctorSearch::new(arc(c.opposite()), ctx.omega.clone())
            .collect(&b)?
            .iter()
            .map(|w| ctx.functor_presheaf(w, c))
            .collect();
        for (di, d) in posets.iter().enumerate() {
            let lattice = psh_of(d, &ctx.omega, &b)?.category;
            let id = format!("cocomplete/{ci}.{di}");
            let maps = FunctorSearch::new(c.clone(), lattice.clone()).collect(&b)?;
            checked += maps.len() * weights.len();
            report.extend(section(id.clone(), || {
                let mut bad = 0;
                for f in &maps {
                    for w in &weights {
                        let wc = weighted_colimit(w, f, &b)?;
                        if !verify_col_rec(w, f, &wc, &b)? {
                            bad += 1;
                        }
                    }
                }
                Ok(single(Check::from_bool(id.clone(), bad == 0, || format!("{bad} col-rec failures"))))
            }));
        }
    }
    report.push(at_least("cocomplete-count", checked, 50));
    Ok(report)
}

fn omega_suite(cfg: &SuiteConfig) -> Result<Report> {
    let mut report = Report::new();
    let b = cfg.budget();
    let two = build_omega(2)?;
    report.extend(section("internal-poset", || {
        let (poset, comparison) = build_internal_poset_from_subobjects()?;
        let mut objs = comparison.obj_map.clone();
        objs.sort_unstable();
        objs.dedup();
        let ok = poset.carrier.len() == two.omega.num_objects()
            && comparison.is_fully_faithful()
            && objs.len() == comparison.dom.num_objects()
            && objs.len() == comparison.cod.num_objects();
        Ok(single(Check::from_bool("internal-poset", ok, || "comparison is not an isomorphism".into())))
    }));
    let mut bases: Vec<(String, Arc<FinCategory>)> = corpus::named_categories()
        .into_iter()
        .filter(|(_, c)| c.num_objects() <= 4)
        .map(|(n, c)| (n, arc(c)))
        .collect();
    for (i, c) in cfg.corpus.iter().enumerate().filter(|(_, c)| c.num_objects() <= 4) {
        bases.push((format!("file{i}"), c.clone()));
    }
    for (name, x) in &bases {
        report.extend(section(format!("cosieve/{name}"), || cosieve_checks(name, x, &two, &b)));
    }
    let ctx = build_omega(cfg.lambda)?;
    let lambda = cfg.lambda;
    report.extend(section(format!("terminal-adjoint/{lambda}"), || {
        let adj = terminal_adjoint_check(&ctx, &b)?;
        let ok = ctx.size(adj.right.ob(0)) == 1 && verify_adjunction(&adj.left, &adj.right, &adj.unit, &adj.counit);
        Ok(single(Check::from_bool(format!("terminal-adjoint/{lambda}"), ok, || "Δ ⊣ ⊤ fails".into())))
    }));
    report.extend(section(format!("classifying/{lambda}"), || {
        let mut out = Report::new();
        out.extend_prefixed(&format!("classifying/{lambda}"), check_classifying(&ctx.tau, &probes::classifying(), &b)?);
        Ok(out)
    }));
    match product_classifier(&ctx, &b) {
        Ok(prod) => {
            report.push(Check::pass("product-classifier"));
            let top = ctx.object_of_size(1).unwrap();
            let bot = ctx.object_of_size(0).unwrap();
            for (label, x) in [("top", top), ("bot", bot)] {
                report.extend(section(format!("exponential/{label}"), || {
                    let adj = exponential_check(&ctx, &prod, x, &b)?;
                    let ok = verify_adjunction(&adj.left, &adj.right, &adj.unit, &adj.counit);
                    Ok(single(Check::from_bool(format!("exponential/{label}"), ok, || "triangles fail".into())))
                }));
            }
            report.extend(section("implication-table", || {
                let table = implication_table(&ctx, &prod, &b)?;
                let ok = lambda != 2
                    || (table[bot][bot] == 1 && table[bot][top] == 1 && table[top][bot] == 0 && table[top][top] == 1);
                Ok(single(Check::from_bool("implication-table", ok, || format!("{table:?}"))))
            }));
        }
        Err(Error::MissingProduct(x, y)) => {
            report.push(Check::fail("product-classifier", format!("({x},{y})")));
            report.push(Check::new("exponential", Verdict::Inconclusive).with_witness("no product classifier"));
        }
        Err(e) => return Err(e),
    }
    report.extend(section("negative/terminal-not-admissible", || {
        let restricted = build_omega_restricted(4, 2)?;
        let refused = matches!(terminal_adjoint_check(&restricted, &b), Err(Error::NotAdmissible(_)));
        Ok(single(Check::from_bool("negative/terminal-not-admissible", refused, || {
            "terminal adjoint found without the singleton".into()
        })))
    }));
    Ok(report)
}

fn cosieve_checks(name: &str, x: &Arc<FinCategory>, ctx: &crate::omega::OmegaContext, b: &Budget) -> Result<Report> {
    let mut out = Report::new();
    let sieves = all_cosieves(x);
    let maps = FunctorSearch::new(x.clone(), ctx.omega.clone()).collect(b)?;
    let classified = sieves.iter().map(|p| classify_cosieve(p, ctx)).collect::<Result<Vec<_>>>()?;
    let mut distinct = classified.clone();
    distinct.sort_by_key(|f| f.obj_map.clone());
    distinct.dedup();
    let bijective = distinct.len() == sieves.len() && sieves.len() == maps.len() && distinct.iter().all(|f| maps.contains(f));
    out.push(Check::from_bool(format!("cosieve/{name}/bijection"), bijective, || {
        format!("{} cosieves, {} maps, {} distinct", sieves.len(), maps.len(), distinct.len())
    }));
    let mut pulled = true;
    for (p, f) in sieves.iter().zip(&classified) {
        pulled &= iso_over(&pull_back(f, &ctx.tau)?.p, p, b)?.is_some();
    }
    out.push(Check::from_bool(format!("cosieve/{name}/pullback"), pulled, || "pullback of τ differs".into()));
    let mut monotone = true;
    for (p, f) in sieves.iter().zip(&classified) {
        for (q, g) in sieves.iter().zip(&classified) {
            if p.obj_map.iter().all(|o| q.obj_map.contains(o)) {
                monotone &= (0..x.num_objects()).all(|o| !ctx.omega.hom(f.ob(o), g.ob(o)).is_empty());
            }
        }
    }
    out.push(Check::from_bool(format!("cosieve/{name}/monotone"), monotone, || "inclusion not preserved".into()));
    Ok(out)
}

fn glob_suite(cfg: &SuiteConfig) -> Result<Report> {
    let mut report = Report::new();
    let b = cfg.budget();
    let n = cfg.truncation;
    report.extend(section("hom-table", || {
        let g = glob::build_g(3);
        let mut bad = Vec::new();
        for j in 0..=3 {
            for m in 0..=3 {
                let want = match m.cmp(&j) {
                    std::cmp::Ordering::Less => 0,
                    std::cmp::Ordering::Equal => 1,
                    std::cmp::Ordering::Greater => 2,
                };
                if g.category.hom(j, m).len() != want {
                    bad.push(format!("({j},{m})"));
                }
            }
        }
        Ok(single(Check::from_bool("hom-table", bad.is_empty(), || bad.join(" "))))
    }));
    report.extend(section("d-sigma", || {
        let corpus = glob::globular_corpus(n, &b)?;
        let mut out = Report::new();
        out.push(at_least("d-sigma/corpus-size", corpus.len(), 10));
        out.extend_prefixed("d-sigma", glob::verify_d_sigma(&corpus, &b)?);
        Ok(out)
    }));
    report.extend(section("i-k-figure", || Ok(single(padding_figure(&b)?))));
    let ctx = build_omega(cfg.lambda)?;
    report.extend(section("sp-tau", || {
        let dot = glob::sp(&ctx.omega_dot, n, &b)?;
        let omega = glob::sp(&ctx.omega, n, &b)?;
        let tau = glob::sp_map(&ctx.tau, &dot, &omega)?;
        let mut family = glob::constant_probes(&probes::classifying(), n);
        family.push(("arrow-globe".into(), glob::arrow_globe(n)));
        let mut out = Report::new();
        out.extend_prefixed("sp-tau", glob::check_classifying_globular(&tau, &dot.globular, &omega.globular, &family, &b)?);
        Ok(out)
    }));
    for m in 0..=n {
        let id = format!("epsilon-tau/{m}");
        report.extend(section(id.clone(), || {
            let sq = glob::naturality_pullback_check(&ctx.tau, m, &probes::tiny(), &b)?;
            Ok(single(Check::from_bool(id.clone(), sq.is_pullback(), || format!("{sq:?}"))))
        }));
    }
    let two = build_omega(2)?;
    let mut dopfibs = vec![two.tau.clone()];
    for base in [FinCategory::chain(2), FinCategory::discrete_n(2), corpus::span_shape()] {
        for f in FunctorSearch::new(arc(base), two.omega.clone()).collect(&b)? {
            dopfibs.push(pull_back(&f, &two.tau)?.p);
        }
    }
    // Sp of a base with non-identity endomorphisms is too large to tabulate at truncation 2
    let loop_free = |c: &FinCategory| (0..c.num_morphisms()).all(|u| c.is_identity(u) || c.src(u) != c.tgt(u));
    dopfibs.extend(
        discrete_opfibrations()
            .into_iter()
            .filter(|p| loop_free(&p.cod) && p.dom.num_morphisms() <= 12 && p.cod.num_morphisms() <= 10),
    );
    for (i, p) in dopfibs.iter().enumerate() {
        let id = format!("epsilon/{i:03}");
        report.extend(section(id.clone(), || {
            let sq = glob::naturality_pullback_check(p, n, &[], &b)?;
            Ok(single(Check::from_bool(id.clone(), sq.is_pullback(), || p.table_id())))
        }));
    }
    if n >= 1 {
        let one = ctx.object_of_size(1).unwrap();
        let dot = ctx.dot_object(one, 0).unwrap();
        report.extend(section("suspension", || glob::suspension_square_check(&ctx.tau, dot, one, n, &b)));
    }
    Ok(report)
}

/// The k = 2 padding of a 2-span X₀ = 2, X₁ = 1, top ∅ in Ω_3 to a 4-span.
fn padding_figure(b: &Budget) -> Result<Check> {
    let ctx = build_omega(3)?;
    let one = ctx.object_of_size(1).unwrap();
    let (empty, pair) = (ctx.object_of_size(0).unwrap(), ctx.object_of_size(2).unwrap());
    let top = glob::top(2);
    let x = FunctorSearch::new(glob::span_shape(2), ctx.omega.clone())
        .objects(|a, o| (a != top || o == empty) && (a != 0 || o == pair) && (a != 1 || o == one))
        .first(b)?
        .ok_or_else(|| Error::BadConfig("no 2-span of the pictured shape".into()))?;
    let x = glob::NSpan::new(2, x)?;
    let padded = glob::i_k_pad(&x, 2, one)?;
    let mut ok = padded.level == 4 && padded.at(4, None) == x.at(2, None);
    for g in [glob::Gen::Sigma, glob::Gen::Tau] {
        ok &= padded.at(3, Some(g)) == x.at(1, Some(g))
            && padded.at(2, Some(g)) == x.at(0, Some(g))
            && padded.at(1, Some(g)) == one
            && padded.at(0, Some(g)) == one;
    }
    let shape = &padded.diagram.dom;
    for u in 0..shape.num_morphisms() {
        if shape.tgt(u) / 2 < 2 {
            let v = padded.diagram.mor(u);
            ok &= ctx.omega.hom(ctx.omega.src(v), one) == [v];
        }
    }
    Ok(Check::from_bool("i-k-figure", ok, || "padded span differs from the figure".into()))
}
