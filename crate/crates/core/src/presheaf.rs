//! Finite-set-valued functors with explicit element tables. The elements of
//! F(a) are 0..sizes[a].

use std::sync::Arc;

use crate::budget::{Budget, Meter};
use crate::category::{FinCategory, FinFunctor, Morphism};
use crate::error::{Error, Result};

/// A contravariant functor base → finite sets. `action[u]` for u: a → b is
/// the function F(b) → F(a).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presheaf {
    pub base: Arc<FinCategory>,
    pub sizes: Vec<usize>,
    pub action: Vec<Vec<usize>>,
}

/// A covariant functor base → finite sets. `action[u]` for u: a → b is the
/// function F(a) → F(b).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Copresheaf {
    pub base: Arc<FinCategory>,
    pub sizes: Vec<usize>,
    pub action: Vec<Vec<usize>>,
}

/// A category of elements with its projection and the (object, element) behind each object.
#[derive(Clone, Debug)]
pub struct Elements {
    pub category: Arc<FinCategory>,
    pub projection: FinFunctor,
    pub points: Vec<(usize, usize)>,
}

impl Elements {
    pub fn object_at(&self, a: usize, x: usize) -> Option<usize> {
        self.points.iter().position(|&p| p == (a, x))
    }
}

fn check_tables(
    base: &FinCategory,
    sizes: &[usize],
    action: &[Vec<usize>],
    covariant: bool,
) -> Result<()> {
    let bad = |msg: String| Err(Error::InvalidFunctor(msg));
    if sizes.len() != base.num_objects() || action.len() != base.num_morphisms() {
        return bad("table sizes do not match the base".into());
    }
    for (u, t) in action.iter().enumerate() {
        let (from, to) = if covariant { (base.src(u), base.tgt(u)) } else { (base.tgt(u), base.src(u)) };
        if t.len() != sizes[from] || t.iter().any(|&y| y >= sizes[to]) {
            return bad(format!("action of {} is mistyped", base.morphism_id(u)));
        }
    }
    for a in 0..base.num_objects() {
        if action[base.id(a)].iter().enumerate().any(|(i, &y)| i != y) {
            return bad(format!("identity at {} acts non-trivially", base.object_id(a)));
        }
    }
    for f in 0..base.num_morphisms() {
        for g in base.out_morphisms(base.tgt(f)) {
            let gf = base.compose(g, f);
            let (first, second) = if covariant { (f, g) } else { (g, f) };
            let ok = action[gf].iter().enumerate().all(|(x, &y)| action[second][action[first][x]] == y);
            if !ok {
                return bad(format!("composite {} is not preserved", base.morphism_id(gf)));
            }
        }
    }
    Ok(())
}

impl Presheaf {
    pub fn new(base: Arc<FinCategory>, sizes: Vec<usize>, action: Vec<Vec<usize>>) -> Result<Presheaf> {
        check_tables(&base, &sizes, &action, false)?;
        Ok(Presheaf { base, sizes, action })
    }

    /// base(−, c), with the elements of base(a, c) in hom order.
    pub fn representable(base: Arc<FinCategory>, c: usize) -> Presheaf {
        let sizes = (0..base.num_objects()).map(|a| base.hom(a, c).len()).collect();
        let action = (0..base.num_morphisms())
            .map(|u| {
                let (a, b) = (base.src(u), base.tgt(u));
                base.hom(b, c)
                    .iter()
                    .map(|&h| {
                        let hu = base.compose(h, u);
                        base.hom(a, c).iter().position(|&k| k == hu).expect("composite in hom")
                    })
                    .collect()
            })
            .collect();
        Presheaf { base, sizes, action }
    }

    /// The constant presheaf at an n-element set.
    pub fn constant(base: Arc<FinCategory>, n: usize) -> Presheaf {
        let sizes = vec![n; base.num_objects()];
        let action = vec![(0..n).collect(); base.num_morphisms()];
        Presheaf { base, sizes, action }
    }

    pub fn act(&self, u: usize, x: usize) -> usize {
        self.action[u][x]
    }

    /// Objects (x, a) with x ∈ F(a); a morphism (x₁,a₁) → (x₂,a₂) is u: a₁ → a₂
    /// with F(u)(x₂) = x₁. The projection is a discrete fibration.
    pub fn elements(&self) -> Elements {
        let base = &self.base;
        let points: Vec<(usize, usize)> =
            (0..base.num_objects()).flat_map(|a| (0..self.sizes[a]).map(move |x| (a, x))).collect();
        let index = |a: usize, x: usize| points.iter().position(|&p| p == (a, x)).unwrap();
        let objects: Vec<String> =
            points.iter().map(|&(a, x)| format!("({},{})", x, base.object_id(a))).collect();
        let mut morphisms = Vec::new();
        let mut under = Vec::new();
        let mut identity = vec![0; points.len()];
        for (j, &(b, x2)) in points.iter().enumerate() {
            for u in base.in_morphisms(b) {
                let a = base.src(u);
                let x1 = self.act(u, x2);
                let i = index(a, x1);
                if base.is_identity(u) {
                    identity[j] = morphisms.len();
                }
                morphisms.push(Morphism {
                    id: format!("{}:{}→{}", base.morphism_id(u), objects[i], objects[j]),
                    src: i,
                    tgt: j,
                });
                under.push(u);
            }
        }
        finish_elements(base, points, objects, morphisms, under, identity)
    }

    /// base(f−, a) on the domain of f, with elements in hom order.
    pub fn hom_into(f: &FinFunctor, a: usize) -> Presheaf {
        let (c, x) = (&f.dom, &f.cod);
        let sizes = (0..c.num_objects()).map(|o| x.hom(f.ob(o), a).len()).collect();
        let action = (0..c.num_morphisms())
            .map(|u| {
                let (s, t) = (f.ob(c.src(u)), f.ob(c.tgt(u)));
                x.hom(t, a)
                    .iter()
                    .map(|&h| {
                        let hu = x.compose(h, f.mor(u));
                        x.hom(s, a).iter().position(|&k| k == hu).expect("composite in hom")
                    })
                    .collect()
            })
            .collect();
        Presheaf { base: c.clone(), sizes, action }
    }

    /// Whether per-object functions `components[a]: F(a) → G(a)` are natural.
    pub fn is_morphism_to(&self, other: &Presheaf, components: &[Vec<usize>]) -> bool {
        let base = &self.base;
        components.len() == base.num_objects()
            && (0..base.num_objects())
                .all(|a| components[a].len() == self.sizes[a] && components[a].iter().all(|&y| y < other.sizes[a]))
            && (0..base.num_morphisms()).all(|u| {
                let b = base.tgt(u);
                (0..self.sizes[b]).all(|x| components[base.src(u)][self.act(u, x)] == other.act(u, components[b][x]))
            })
    }

    /// Every natural transformation self ⇒ other, as component tables.
    pub fn morphisms_to(&self, other: &Presheaf, budget: &Budget) -> Result<Vec<Vec<Vec<usize>>>> {
        let n = self.base.num_objects();
        let mut out = Vec::new();
        if (0..n).any(|a| self.sizes[a] > 0 && other.sizes[a] == 0) {
            return Ok(out);
        }
        let meter = budget.meter();
        let mut current = Vec::with_capacity(n);
        self.extend_morphisms(other, &mut current, &mut out, &meter)?;
        Ok(out)
    }

    fn extend_morphisms(
        &self,
        other: &Presheaf,
        current: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
        meter: &Meter<'_>,
    ) -> Result<()> {
        let base = &self.base;
        let k = current.len();
        if k == base.num_objects() {
            out.push(current.clone());
            return Ok(());
        }
        let (m, q) = (self.sizes[k], other.sizes[k]);
        let mut table = vec![0; m];
        loop {
            meter.tick()?;
            current.push(table.clone());
            // morphisms whose later end is k are now fully determined
            let natural = (0..base.num_morphisms()).all(|u| {
                let (s, t) = (base.src(u), base.tgt(u));
                s.max(t) != k || (0..self.sizes[t]).all(|x| current[s][self.act(u, x)] == other.act(u, current[t][x]))
            });
            if natural {
                self.extend_morphisms(other, current, out, meter)?;
            }
            current.pop();
            let Some(i) = (0..m).find(|&i| table[i] + 1 < q) else {
                return Ok(());
            };
            table[i] += 1;
            table[..i].iter_mut().for_each(|y| *y = 0);
        }
    }
}

impl Copresheaf {
    pub fn new(base: Arc<FinCategory>, sizes: Vec<usize>, action: Vec<Vec<usize>>) -> Result<Copresheaf> {
        check_tables(&base, &sizes, &action, true)?;
        Ok(Copresheaf { base, sizes, action })
    }

    /// base(c, −), with the elements of base(c, a) in hom order.
    pub fn representable(base: Arc<FinCategory>, c: usize) -> Copresheaf {
        let sizes = (0..base.num_objects()).map(|a| base.hom(c, a).len()).collect();
        let action = (0..base.num_morphisms())
            .map(|u| {
                let (a, b) = (base.src(u), base.tgt(u));
                base.hom(c, a)
                    .iter()
                    .map(|&h| {
                        let uh = base.compose(u, h);
                        base.hom(c, b).iter().position(|&k| k == uh).expect("composite in hom")
                    })
                    .collect()
            })
            .collect();
        Copresheaf { base, sizes, action }
    }

    pub fn constant(base: Arc<FinCategory>, n: usize) -> Copresheaf {
        let sizes = vec![n; base.num_objects()];
        let action = vec![(0..n).collect(); base.num_morphisms()];
        Copresheaf { base, sizes, action }
    }

    pub fn act(&self, u: usize, x: usize) -> usize {
        self.action[u][x]
    }

    /// Objects (x, a) with x ∈ F(a); a morphism (x₁,a₁) → (x₂,a₂) is u: a₁ → a₂
    /// with F(u)(x₁) = x₂. The projection is a discrete opfibration.
    pub fn elements(&self) -> Elements {
        let base = &self.base;
        let points: Vec<(usize, usize)> =
            (0..base.num_objects()).flat_map(|a| (0..self.sizes[a]).map(move |x| (a, x))).collect();
        let index = |a: usize, x: usize| points.iter().position(|&p| p == (a, x)).unwrap();
        let objects: Vec<String> =
            points.iter().map(|&(a, x)| format!("({},{})", x, base.object_id(a))).collect();
        let mut morphisms = Vec::new();
        let mut under = Vec::new();
        let mut identity = vec![0; points.len()];
        for (i, &(a, x1)) in points.iter().enumerate() {
            for u in base.out_morphisms(a) {
                let j = index(base.tgt(u), self.act(u, x1));
                if base.is_identity(u) {
                    identity[i] = morphisms.len();
                }
                morphisms.push(Morphism {
                    id: format!("{}:{}→{}", base.morphism_id(u), objects[i], objects[j]),
                    src: i,
                    tgt: j,
                });
                under.push(u);
            }
        }
        finish_elements(base, points, objects, morphisms, under, identity)
    }
}

/// Element categories are faithful over the base, so composites are found
/// by matching ends and the composite base morphism.
fn finish_elements(
    base: &Arc<FinCategory>,
    points: Vec<(usize, usize)>,
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    under: Vec<usize>,
    identity: Vec<usize>,
) -> Elements {
    let ends: Vec<(usize, usize)> = morphisms.iter().map(|m| (m.src, m.tgt)).collect();
    let lookup: std::collections::HashMap<(usize, usize, usize), usize> =
        ends.iter().zip(&under).enumerate().map(|(m, (&(s, t), &u))| ((s, t, u), m)).collect();
    let category = Arc::new(FinCategory::from_parts(objects, morphisms, identity, |g, f| {
        lookup[&(ends[f].0, ends[g].1, base.compose(under[g], under[f]))]
    }));
    let projection = FinFunctor::new_unchecked(
        category.clone(),
        base.clone(),
        points.iter().map(|p| p.0).collect(),
        under,
    );
    Elements { category, projection, points }
}
