use std::sync::Arc;

use crate::budget::Budget;
use crate::category::{FinCategory, FinFunctor, FunctorSearch, NatSearch, NatTrans};
use crate::comma::{strict_pullback, CommaSquare};
use crate::error::{Error, Result};
use crate::fib::is_discrete_opfibration;
use crate::omega::OmegaContext;
use crate::probes::Probe;
use crate::report::{Check, Report};

/// The functor A → Ω sending a to its fibre, with elements of the fibre
/// numbered in object order and arrows acting through the unique lifts.
pub fn classify(p: &FinFunctor, ctx: &OmegaContext) -> Result<FinFunctor> {
    if !is_discrete_opfibration(p) {
        let (beta, object) = first_bad_lift(p);
        return Err(Error::NotAFibration { beta, object });
    }
    let (e, a) = (&p.dom, &p.cod);
    let fibres: Vec<Vec<usize>> =
        (0..a.num_objects()).map(|o| (0..e.num_objects()).filter(|&x| p.ob(x) == o).collect()).collect();
    let mut obj_map = Vec::with_capacity(a.num_objects());
    for (o, fibre) in fibres.iter().enumerate() {
        let n = fibre.len();
        let target = ctx.object_of_size(n).ok_or_else(|| {
            if n >= ctx.lambda {
                Error::FibreTooLarge { object: a.object_id(o).to_string(), size: n, lambda: ctx.lambda }
            } else {
                Error::BadConfig(format!("fibre over {} has {n} elements, below the context minimum", a.object_id(o)))
            }
        })?;
        obj_map.push(target);
    }
    let mut mor_map = Vec::with_capacity(a.num_morphisms());
    for u in 0..a.num_morphisms() {
        let (s, t) = (a.src(u), a.tgt(u));
        let table: Vec<usize> = fibres[s]
            .iter()
            .map(|&x| {
                let lift = e.out_morphisms(x).find(|&m| p.mor(m) == u).expect("discrete opfibration");
                fibres[t].iter().position(|&y| y == e.tgt(lift)).expect("lift lies over the target")
            })
            .collect();
        mor_map.push(ctx.function(fibres[s].len(), fibres[t].len(), &table).expect("sizes are in range"));
    }
    FinFunctor::new(a.clone(), ctx.omega.clone(), obj_map, mor_map)
}

fn first_bad_lift(p: &FinFunctor) -> (String, String) {
    let (e, a) = (&p.dom, &p.cod);
    for x in 0..e.num_objects() {
        for u in a.out_morphisms(p.ob(x)) {
            if e.out_morphisms(x).filter(|&m| p.mor(m) == u).count() != 1 {
                return (a.morphism_id(u).to_string(), e.object_id(x).to_string());
            }
        }
    }
    (String::new(), String::new())
}

/// G(f): the strict pullback of τ along f. Its `p` leg is the discrete
/// opfibration over the domain of f.
pub fn pull_back(f: &FinFunctor, tau: &FinFunctor) -> Result<CommaSquare> {
    strict_pullback(f, tau)
}

/// The lifted 2-cell φ̄: q_f ⇒ k and the induced map G(φ): P_f → P_g over A.
#[derive(Clone, Debug)]
pub struct LiftedCell {
    pub phi_bar: NatTrans,
    pub map: FinFunctor,
}

/// Lifts φ: f ⇒ g through τ, with p_g∘G(φ) = p_f and τ φ̄ = φ p_f.
pub fn lift_2cell(tau: &FinFunctor, phi: &NatTrans, gf: &CommaSquare, gg: &CommaSquare) -> Result<LiftedCell> {
    let (e, b) = (&tau.dom, &tau.cod);
    let pf = &gf.apex;
    let unique_out = |x: usize, beta: usize| -> Result<usize> {
        let mut it = e.out_morphisms(x).filter(|&m| tau.mor(m) == beta);
        let m = it.next().ok_or_else(|| Error::NoLift(format!("no lift of {} at {}", b.morphism_id(beta), e.object_id(x))))?;
        if it.next().is_some() {
            return Err(Error::NoLift(format!("two lifts of {} at {}", b.morphism_id(beta), e.object_id(x))));
        }
        Ok(m)
    };
    let components: Vec<usize> =
        (0..pf.num_objects()).map(|x| unique_out(gf.q.ob(x), phi.at(gf.p.ob(x)))).collect::<Result<_>>()?;
    let obj_map: Vec<usize> = components.iter().map(|&m| e.tgt(m)).collect();
    let mor_map: Vec<usize> = (0..pf.num_morphisms())
        .map(|u| unique_out(obj_map[pf.src(u)], phi.cod.mor(gf.p.mor(u))))
        .collect::<Result<_>>()?;
    let k = FinFunctor::new(pf.clone(), e.clone(), obj_map, mor_map)?;
    let phi_bar = NatTrans::new(gf.q.clone(), k.clone(), components)?;
    let id = NatTrans::identity(&phi.cod.after(&gf.p)?);
    let map = gg.induced(&gf.p, &k, &id)?;
    Ok(LiftedCell { phi_bar, map })
}

/// Functors P → Q with q∘h = p.
pub fn maps_over(p: &FinFunctor, q: &FinFunctor, budget: &Budget) -> Result<Vec<FinFunctor>> {
    FunctorSearch::new(p.dom.clone(), q.dom.clone())
        .objects(|x, y| q.ob(y) == p.ob(x))
        .morphisms(|u, v| q.mor(v) == p.mor(u))
        .collect(budget)
}

/// An isomorphism P → Q with q∘h = p, if one exists.
pub fn iso_over(p: &FinFunctor, q: &FinFunctor, budget: &Budget) -> Result<Option<FinFunctor>> {
    if p.dom.num_objects() != q.dom.num_objects() || p.dom.num_morphisms() != q.dom.num_morphisms() {
        return Ok(None);
    }
    FunctorSearch::new(p.dom.clone(), q.dom.clone())
        .objects(|x, y| q.ob(y) == p.ob(x))
        .morphisms(|u, v| q.mor(v) == p.mor(u))
        .injective()
        .first(budget)
}

/// For each probe A, checks that φ ↦ G(φ) is a bijection from 2-cells f ⇒ g
/// onto maps G(f) → G(g) over A, for all f, g: A → Ω.
pub fn check_classifying(tau: &FinFunctor, probes: &[Probe], budget: &Budget) -> Result<Report> {
    let mut report = Report::new();
    if !is_discrete_opfibration(tau) {
        report.push(Check::fail("classifying/discrete-opfibration", "τ is not a discrete opfibration"));
        return Ok(report);
    }
    for probe in probes {
        let a: &Arc<FinCategory> = &probe.category;
        let maps = FunctorSearch::new(a.clone(), tau.cod.clone()).collect(budget)?;
        let pulled: Vec<CommaSquare> = maps.iter().map(|f| pull_back(f, tau)).collect::<Result<_>>()?;
        let mut failures = Vec::new();
        for (i, f) in maps.iter().enumerate() {
            for (j, g) in maps.iter().enumerate() {
                let cells = NatSearch::new(f, g).collect(budget)?;
                let mut images = Vec::with_capacity(cells.len());
                for phi in &cells {
                    let lifted = lift_2cell(tau, phi, &pulled[i], &pulled[j])?;
                    images.push(lifted.map);
                }
                let targets = maps_over(&pulled[i].p, &pulled[j].p, budget)?;
                let mut distinct = images.clone();
                distinct.sort_by_key(|h| (h.obj_map.clone(), h.mor_map.clone()));
                distinct.dedup();
                if distinct.len() != images.len() {
                    failures.push(format!("not faithful at {} ⇒ {}", f.table_id(), g.table_id()));
                } else if images.len() != targets.len() || !targets.iter().all(|t| images.contains(t)) {
                    failures.push(format!(
                        "not full at {} ⇒ {}: {} 2-cells, {} maps over {}",
                        f.table_id(),
                        g.table_id(),
                        images.len(),
                        targets.len(),
                        probe.name
                    ));
                }
            }
        }
        let id = format!("classifying/{}", probe.name);
        report.push(Check::from_bool(&id, failures.is_empty(), || failures.join("; ")));
    }
    Ok(report)
}
