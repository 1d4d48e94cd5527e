use std::collections::HashMap;
use std::sync::Arc;

use super::{FinCategory, FinFunctor, FunctorSearch, Morphism, NatSearch, NatTrans};
use crate::budget::Budget;
use crate::error::{Error, Result};

/// The functor category [A,B] with its objects indexed as functors and its
/// morphisms as natural transformations.
#[derive(Clone, Debug)]
pub struct FunctorCategory {
    pub dom: Arc<FinCategory>,
    pub cod: Arc<FinCategory>,
    pub category: Arc<FinCategory>,
    pub functors: Vec<FinFunctor>,
    pub transformations: Vec<NatTrans>,
    functor_index: HashMap<(Vec<usize>, Vec<usize>), usize>,
    trans_index: HashMap<(usize, usize, Vec<usize>), usize>,
}

impl FunctorCategory {
    pub fn build(a: Arc<FinCategory>, b: Arc<FinCategory>, budget: &Budget) -> Result<FunctorCategory> {
        let functors = FunctorSearch::new(a.clone(), b.clone()).collect(budget)?;
        let functor_index: HashMap<_, _> = functors
            .iter()
            .enumerate()
            .map(|(i, f)| ((f.obj_map.clone(), f.mor_map.clone()), i))
            .collect();
        let mut transformations = Vec::new();
        let mut ends = Vec::new();
        let mut identity = vec![0; functors.len()];
        let mut trans_index = HashMap::new();
        let meter = budget.meter();
        for (i, f) in functors.iter().enumerate() {
            for (j, g) in functors.iter().enumerate() {
                meter.tick()?;
                let found = NatSearch::new(f, g).collect(budget)?;
                for t in found {
                    if i == j && t.is_identity() {
                        identity[i] = transformations.len();
                    }
                    trans_index.insert((i, j, t.components.clone()), transformations.len());
                    ends.push((i, j));
                    transformations.push(t);
                }
            }
        }
        let objects = functors.iter().map(|f| f.table_id()).collect();
        let morphisms = transformations
            .iter()
            .zip(&ends)
            .map(|(t, &(i, j))| Morphism {
                id: format!("{}=>{}:{}", functors[i].table_id(), functors[j].table_id(), t.table_id()),
                src: i,
                tgt: j,
            })
            .collect();
        let category = Arc::new(FinCategory::from_parts(objects, morphisms, identity, |g, f| {
            let (s, _) = ends[f];
            let (_, t) = ends[g];
            let comps: Vec<usize> = transformations[g]
                .components
                .iter()
                .zip(&transformations[f].components)
                .map(|(&x, &y)| b.compose(x, y))
                .collect();
            trans_index[&(s, t, comps)]
        }));
        Ok(FunctorCategory { dom: a, cod: b, category, functors, transformations, functor_index, trans_index })
    }

    /// Index of a functor as an object.
    pub fn object_of(&self, f: &FinFunctor) -> Result<usize> {
        self.functor_index
            .get(&(f.obj_map.clone(), f.mor_map.clone()))
            .copied()
            .ok_or_else(|| Error::UnknownObject(f.table_id()))
    }

    /// Index of a transformation as a morphism.
    pub fn morphism_of(&self, t: &NatTrans) -> Result<usize> {
        let i = self.object_of(&t.dom)?;
        let j = self.object_of(&t.cod)?;
        self.trans_index
            .get(&(i, j, t.components.clone()))
            .copied()
            .ok_or_else(|| Error::UnknownMorphism(t.table_id()))
    }

    pub fn morphism_between(&self, i: usize, j: usize, components: &[usize]) -> Option<usize> {
        self.trans_index.get(&(i, j, components.to_vec())).copied()
    }

    /// The functor at object index `i`, typed against the given categories.
    pub fn functor(&self, i: usize) -> &FinFunctor {
        &self.functors[i]
    }

    pub fn transformation(&self, m: usize) -> &NatTrans {
        &self.transformations[m]
    }
}

/// [A,B] as a bare category.
pub fn functor_category(a: &Arc<FinCategory>, b: &Arc<FinCategory>, budget: &Budget) -> Result<FunctorCategory> {
    FunctorCategory::build(a.clone(), b.clone(), budget)
}

/// The functor [X,A] → [X,B], F ↦ f∘F, between prebuilt functor categories.
pub fn postcompose(source: &FunctorCategory, target: &FunctorCategory, f: &FinFunctor) -> Result<FinFunctor> {
    let obj_map = source
        .functors
        .iter()
        .map(|g| target.object_of(&f.after(g)?))
        .collect::<Result<Vec<_>>>()?;
    let mor_map = source
        .transformations
        .iter()
        .map(|t| target.morphism_of(&t.whisker_left(f)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(FinFunctor::new_unchecked(source.category.clone(), target.category.clone(), obj_map, mor_map))
}

/// The functor [B,Z] → [A,Z], F ↦ F∘g, between prebuilt functor categories.
pub fn precompose(source: &FunctorCategory, target: &FunctorCategory, g: &FinFunctor) -> Result<FinFunctor> {
    let obj_map = source
        .functors
        .iter()
        .map(|h| target.object_of(&h.after(g)?))
        .collect::<Result<Vec<_>>>()?;
    let mor_map = source
        .transformations
        .iter()
        .map(|t| target.morphism_of(&t.whisker_right(g)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(FinFunctor::new_unchecked(source.category.clone(), target.category.clone(), obj_map, mor_map))
}
