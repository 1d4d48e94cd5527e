use crate::budget::Budget;
use crate::category::{FinFunctor, NatSearch};
use crate::error::Result;
use crate::presheaf::Copresheaf;

/// Legs F(j) → nadir commuting with the diagram.
#[derive(Clone, Debug, PartialEq)]
pub struct Cocone {
    pub diagram: FinFunctor,
    pub nadir: usize,
    pub legs: Vec<usize>,
}

/// Legs apex → F(j) commuting with the diagram.
#[derive(Clone, Debug, PartialEq)]
pub struct Cone {
    pub diagram: FinFunctor,
    pub apex: usize,
    pub legs: Vec<usize>,
}

impl Cocone {
    pub fn is_valid(&self) -> bool {
        let (j, d) = (&self.diagram.dom, &self.diagram.cod);
        self.legs.len() == j.num_objects()
            && (0..j.num_objects()).all(|x| {
                let l = self.legs[x];
                d.src(l) == self.diagram.ob(x) && d.tgt(l) == self.nadir
            })
            && (0..j.num_morphisms())
                .all(|u| d.compose(self.legs[j.tgt(u)], self.diagram.mor(u)) == self.legs[j.src(u)])
    }

    /// The morphisms m: nadir → other.nadir with m∘legs = other.legs.
    pub fn factorisations(&self, other: &Cocone) -> Vec<usize> {
        let d = &self.diagram.cod;
        d.hom(self.nadir, other.nadir)
            .iter()
            .copied()
            .filter(|&m| self.legs.iter().zip(&other.legs).all(|(&l, &k)| d.compose(m, l) == k))
            .collect()
    }
}

/// All cocones over `f` with the given nadir.
pub fn cocones_at(f: &FinFunctor, nadir: usize, budget: &Budget) -> Result<Vec<Cocone>> {
    let constant = FinFunctor::constant(f.dom.clone(), f.cod.clone(), nadir);
    Ok(NatSearch::new(f, &constant)
        .collect(budget)?
        .into_iter()
        .map(|t| Cocone { diagram: f.clone(), nadir, legs: t.components })
        .collect())
}

/// Whether every cocone over the diagram factors uniquely through `cocone`.
pub fn is_colimiting(cocone: &Cocone, budget: &Budget) -> Result<bool> {
    let d = &cocone.diagram.cod;
    for other in 0..d.num_objects() {
        for c in cocones_at(&cocone.diagram, other, budget)? {
            if cocone.factorisations(&c).len() != 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The first colimiting cocone over f in its codomain, scanning nadirs and
/// cocones in order.
pub fn colimit_in(f: &FinFunctor, budget: &Budget) -> Result<Option<Cocone>> {
    for nadir in 0..f.cod.num_objects() {
        for c in cocones_at(f, nadir, budget)? {
            if is_colimiting(&c, budget)? {
                return Ok(Some(c));
            }
        }
    }
    Ok(None)
}

/// Limits as colimits in the opposite category.
pub fn limit_in(f: &FinFunctor, budget: &Budget) -> Result<Option<Cone>> {
    let op = f.opposite();
    Ok(colimit_in(&op, budget)?.map(|c| Cone { diagram: f.clone(), apex: c.nadir, legs: c.legs }))
}

/// A colimit in finite sets: the components of the category of elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetColimit {
    pub size: usize,
    /// legs[a][x] is the class of x ∈ F(a).
    pub legs: Vec<Vec<usize>>,
    /// The least element (a, x), in element order, of each class.
    pub representatives: Vec<(usize, usize)>,
}

pub fn colimit_finset(f: &Copresheaf) -> SetColimit {
    let elements = f.elements();
    let comp = elements.category.components();
    let mut classes: Vec<usize> = Vec::new();
    let mut representatives = Vec::new();
    let mut class_of = vec![usize::MAX; elements.points.len()];
    for (e, &c) in comp.iter().enumerate() {
        let k = match classes.iter().position(|&x| x == c) {
            Some(k) => k,
            None => {
                classes.push(c);
                representatives.push(elements.points[e]);
                classes.len() - 1
            }
        };
        class_of[e] = k;
    }
    let legs = (0..f.base.num_objects())
        .map(|a| (0..f.sizes[a]).map(|x| class_of[elements.object_at(a, x).unwrap()]).collect())
        .collect();
    SetColimit { size: classes.len(), legs, representatives }
}

