//! Backtracking enumeration of functors and natural transformations.

use std::sync::Arc;

use super::{FinCategory, FinFunctor, NatTrans};
use crate::budget::{Budget, Meter};
use crate::error::Result;

type Filter<'a> = Box<dyn Fn(usize, usize) -> bool + 'a>;

#[derive(Clone, Copy)]
enum Slot {
    Obj(usize),
    Mor(usize),
}

/// All functors dom → cod, optionally restricted per object and per morphism.
pub struct FunctorSearch<'a> {
    dom: Arc<FinCategory>,
    cod: Arc<FinCategory>,
    obj_filter: Option<Filter<'a>>,
    mor_filter: Option<Filter<'a>>,
    injective: bool,
}

struct Plan {
    slots: Vec<Slot>,
    checks: Vec<Vec<(usize, usize, usize)>>,
}

impl<'a> FunctorSearch<'a> {
    pub fn new(dom: Arc<FinCategory>, cod: Arc<FinCategory>) -> Self {
        FunctorSearch { dom, cod, obj_filter: None, mor_filter: None, injective: false }
    }

    /// Keep only assignments with `keep(dom_object, cod_object)`.
    pub fn objects(mut self, keep: impl Fn(usize, usize) -> bool + 'a) -> Self {
        self.obj_filter = Some(Box::new(keep));
        self
    }

    /// Keep only assignments with `keep(dom_morphism, cod_morphism)`.
    pub fn morphisms(mut self, keep: impl Fn(usize, usize) -> bool + 'a) -> Self {
        self.mor_filter = Some(Box::new(keep));
        self
    }

    /// Injective on objects and on morphisms.
    pub fn injective(mut self) -> Self {
        self.injective = true;
        self
    }

    fn plan(&self) -> Plan {
        let d = &self.dom;
        let n = d.num_objects();
        // connectivity-first order keeps the pruning early
        let mut order = Vec::with_capacity(n);
        let mut placed = vec![false; n];
        let mut weight = vec![0usize; n];
        for _ in 0..n {
            let next = (0..n)
                .filter(|&a| !placed[a])
                .max_by_key(|&a| (weight[a], std::cmp::Reverse(a)))
                .unwrap();
            placed[next] = true;
            order.push(next);
            for u in 0..d.num_morphisms() {
                let (s, t) = (d.src(u), d.tgt(u));
                if s == next && !placed[t] {
                    weight[t] += 1;
                }
                if t == next && !placed[s] {
                    weight[s] += 1;
                }
            }
        }
        let mut slots = Vec::new();
        let mut pos = vec![0usize; d.num_morphisms()];
        let mut done = vec![false; n];
        for &o in &order {
            pos[d.id(o)] = slots.len();
            slots.push(Slot::Obj(o));
            done[o] = true;
            for u in 0..d.num_morphisms() {
                if d.is_identity(u) {
                    continue;
                }
                let (s, t) = (d.src(u), d.tgt(u));
                if (s == o || t == o) && done[s] && done[t] {
                    pos[u] = slots.len();
                    slots.push(Slot::Mor(u));
                }
            }
        }
        let mut checks = vec![Vec::new(); slots.len()];
        for f in 0..d.num_morphisms() {
            if d.is_identity(f) {
                continue;
            }
            for g in d.out_morphisms(d.tgt(f)) {
                if d.is_identity(g) {
                    continue;
                }
                let h = d.compose(g, f);
                let last = pos[g].max(pos[f]).max(pos[h]);
                checks[last].push((g, f, h));
            }
        }
        Plan { slots, checks }
    }

    /// Calls `visit` on every functor until it returns false.
    /// Returns Ok(true) when the enumeration ran to completion.
    pub fn for_each(&self, budget: &Budget, mut visit: impl FnMut(&FinFunctor) -> bool) -> Result<bool> {
        let plan = self.plan();
        let meter = budget.meter();
        let mut state = State {
            search: self,
            plan: &plan,
            meter: &meter,
            obj: vec![usize::MAX; self.dom.num_objects()],
            mor: vec![usize::MAX; self.dom.num_morphisms()],
            used_obj: vec![false; self.cod.num_objects()],
            used_mor: vec![false; self.cod.num_morphisms()],
        };
        state.go(0, &mut visit)
    }

    pub fn collect(&self, budget: &Budget) -> Result<Vec<FinFunctor>> {
        let mut out = Vec::new();
        self.for_each(budget, |f| {
            out.push(f.clone());
            true
        })?;
        Ok(out)
    }

    pub fn count(&self, budget: &Budget) -> Result<usize> {
        let mut n = 0;
        self.for_each(budget, |_| {
            n += 1;
            true
        })?;
        Ok(n)
    }

    pub fn first(&self, budget: &Budget) -> Result<Option<FinFunctor>> {
        let mut out = None;
        self.for_each(budget, |f| {
            out = Some(f.clone());
            false
        })?;
        Ok(out)
    }
}

struct State<'s, 'a> {
    search: &'s FunctorSearch<'a>,
    plan: &'s Plan,
    meter: &'s Meter<'s>,
    obj: Vec<usize>,
    mor: Vec<usize>,
    used_obj: Vec<bool>,
    used_mor: Vec<bool>,
}

impl State<'_, '_> {
    fn checks_pass(&self, k: usize) -> bool {
        let c = &self.search.cod;
        self.plan.checks[k].iter().all(|&(g, f, h)| c.compose(self.mor[g], self.mor[f]) == self.mor[h])
    }

    fn go(&mut self, k: usize, visit: &mut dyn FnMut(&FinFunctor) -> bool) -> Result<bool> {
        let s = self.search;
        if k == self.plan.slots.len() {
            let f = FinFunctor::new_unchecked(s.dom.clone(), s.cod.clone(), self.obj.clone(), self.mor.clone());
            return Ok(visit(&f));
        }
        match self.plan.slots[k] {
            Slot::Obj(o) => {
                let idm = s.dom.id(o);
                for b in 0..s.cod.num_objects() {
                    self.meter.tick()?;
                    if s.injective && self.used_obj[b] {
                        continue;
                    }
                    if let Some(keep) = &s.obj_filter {
                        if !keep(o, b) {
                            continue;
                        }
                    }
                    let ib = s.cod.id(b);
                    if let Some(keep) = &s.mor_filter {
                        if !keep(idm, ib) {
                            continue;
                        }
                    }
                    self.obj[o] = b;
                    self.mor[idm] = ib;
                    if !self.checks_pass(k) {
                        continue;
                    }
                    if s.injective {
                        self.used_obj[b] = true;
                        self.used_mor[ib] = true;
                    }
                    let cont = self.go(k + 1, visit)?;
                    if s.injective {
                        self.used_obj[b] = false;
                        self.used_mor[ib] = false;
                    }
                    if !cont {
                        return Ok(false);
                    }
                }
                self.obj[o] = usize::MAX;
                Ok(true)
            }
            Slot::Mor(u) => {
                let (a, b) = (self.obj[s.dom.src(u)], self.obj[s.dom.tgt(u)]);
                let cod = s.cod.clone();
                for &v in cod.hom(a, b) {
                    self.meter.tick()?;
                    if s.injective && self.used_mor[v] {
                        continue;
                    }
                    if let Some(keep) = &s.mor_filter {
                        if !keep(u, v) {
                            continue;
                        }
                    }
                    self.mor[u] = v;
                    if !self.checks_pass(k) {
                        continue;
                    }
                    if s.injective {
                        self.used_mor[v] = true;
                    }
                    let cont = self.go(k + 1, visit)?;
                    if s.injective {
                        self.used_mor[v] = false;
                    }
                    if !cont {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }
}

/// All natural transformations between two parallel functors.
pub struct NatSearch<'a> {
    dom: FinFunctor,
    cod: FinFunctor,
    filter: Option<Filter<'a>>,
}

impl<'a> NatSearch<'a> {
    pub fn new(dom: &FinFunctor, cod: &FinFunctor) -> Self {
        NatSearch { dom: dom.clone(), cod: cod.clone(), filter: None }
    }

    /// Keep only components with `keep(object, morphism)`.
    pub fn components(mut self, keep: impl Fn(usize, usize) -> bool + 'a) -> Self {
        self.filter = Some(Box::new(keep));
        self
    }

    pub fn for_each(&self, budget: &Budget, mut visit: impl FnMut(&NatTrans) -> bool) -> Result<bool> {
        let a = &self.dom.dom;
        let n = a.num_objects();
        // morphisms to check once both ends are set, keyed by the later end
        let mut checks = vec![Vec::new(); n];
        for u in 0..a.num_morphisms() {
            if a.is_identity(u) {
                continue;
            }
            checks[a.src(u).max(a.tgt(u))].push(u);
        }
        let meter = budget.meter();
        let mut comps = vec![usize::MAX; n];
        self.go(0, &checks, &meter, &mut comps, &mut visit)
    }

    fn go(
        &self,
        x: usize,
        checks: &[Vec<usize>],
        meter: &Meter<'_>,
        comps: &mut Vec<usize>,
        visit: &mut dyn FnMut(&NatTrans) -> bool,
    ) -> Result<bool> {
        let b = &self.dom.cod;
        if x == comps.len() {
            let t = NatTrans::new_unchecked(self.dom.clone(), self.cod.clone(), comps.clone());
            return Ok(visit(&t));
        }
        for &c in b.hom(self.dom.ob(x), self.cod.ob(x)) {
            meter.tick()?;
            if let Some(keep) = &self.filter {
                if !keep(x, c) {
                    continue;
                }
            }
            comps[x] = c;
            let a = &self.dom.dom;
            let ok = checks[x].iter().all(|&u| {
                b.compose(comps[a.tgt(u)], self.dom.mor(u)) == b.compose(self.cod.mor(u), comps[a.src(u)])
            });
            if ok && !self.go(x + 1, checks, meter, comps, visit)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn collect(&self, budget: &Budget) -> Result<Vec<NatTrans>> {
        let mut out = Vec::new();
        self.for_each(budget, |t| {
            out.push(t.clone());
            true
        })?;
        Ok(out)
    }

    pub fn count(&self, budget: &Budget) -> Result<usize> {
        let mut n = 0;
        self.for_each(budget, |_| {
            n += 1;
            true
        })?;
        Ok(n)
    }

    pub fn first(&self, budget: &Budget) -> Result<Option<NatTrans>> {
        let mut out = None;
        self.for_each(budget, |t| {
            out = Some(t.clone());
            false
        })?;
        Ok(out)
    }
}
