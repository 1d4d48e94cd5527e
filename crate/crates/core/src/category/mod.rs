//! Finite categories, functors and natural transformations.
//!
//! A [`FinCategory`] stores its composition as a dense table indexed by
//! morphism positions. Ids are opaque strings kept for display and JSON.

mod builders;
mod enumerate;
mod functor;
mod functor_category;
mod iso;
mod json;
mod nat;
mod validate;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub use enumerate::{FunctorSearch, NatSearch};
pub use functor::FinFunctor;
pub use functor_category::{functor_category, postcompose, precompose, FunctorCategory};
pub use iso::find_isomorphism;
pub use json::{RawCategory, RawFunctor, RawMorphism, RawNatTrans};
pub use nat::NatTrans;
pub use validate::{validate_category, ValidationReport, Violation};

const UNDEF: u32 = u32::MAX;

/// A finite set of distinct atoms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FinSet {
    pub elements: Vec<String>,
}

impl FinSet {
    pub fn new(elements: Vec<String>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for e in &elements {
            if !seen.insert(e) {
                return Err(Error::InvalidCategory(format!("duplicate atom {e}")));
            }
        }
        Ok(FinSet { elements })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

#[derive(Clone)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identity: Vec<usize>,
    compose: Vec<u32>,
    hom: Vec<Vec<usize>>,
    obj_index: HashMap<String, usize>,
    mor_index: HashMap<String, usize>,
}

impl PartialEq for FinCategory {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.morphisms == other.morphisms
            && self.identity == other.identity
            && self.compose == other.compose
    }
}

impl Eq for FinCategory {}

impl fmt::Debug for FinCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FinCategory({} objects, {} morphisms)",
            self.objects.len(),
            self.morphisms.len()
        )
    }
}

impl FinCategory {
    /// Builds a category from trusted data. `compose(g, f)` is called for every
    /// composable pair and must return the index of g∘f.
    pub(crate) fn from_parts(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identity: Vec<usize>,
        mut compose: impl FnMut(usize, usize) -> usize,
    ) -> Self {
        let n = objects.len();
        let m = morphisms.len();
        let mut hom = vec![Vec::new(); n * n];
        for (i, mo) in morphisms.iter().enumerate() {
            hom[mo.src * n + mo.tgt].push(i);
        }
        let mut table = vec![UNDEF; m * m];
        for f in 0..m {
            let t = morphisms[f].tgt;
            for b in 0..n {
                for &g in &hom[t * n + b] {
                    table[g * m + f] = compose(g, f) as u32;
                }
            }
        }
        let obj_index = objects.iter().enumerate().map(|(i, o)| (o.clone(), i)).collect();
        let mor_index =
            morphisms.iter().enumerate().map(|(i, mo)| (mo.id.clone(), i)).collect();
        FinCategory { objects, morphisms, identity, compose: table, hom, obj_index, mor_index }
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn object_id(&self, a: usize) -> &str {
        &self.objects[a]
    }

    pub fn morphism_id(&self, f: usize) -> &str {
        &self.morphisms[f].id
    }

    pub fn object(&self, id: &str) -> Result<usize> {
        self.obj_index.get(id).copied().ok_or_else(|| Error::UnknownObject(id.to_string()))
    }

    pub fn morphism(&self, id: &str) -> Result<usize> {
        self.mor_index.get(id).copied().ok_or_else(|| Error::UnknownMorphism(id.to_string()))
    }

    #[inline]
    pub fn src(&self, f: usize) -> usize {
        self.morphisms[f].src
    }

    #[inline]
    pub fn tgt(&self, f: usize) -> usize {
        self.morphisms[f].tgt
    }

    #[inline]
    pub fn id(&self, a: usize) -> usize {
        self.identity[a]
    }

    #[inline]
    pub fn is_identity(&self, f: usize) -> bool {
        self.identity[self.src(f)] == f
    }

    /// g∘f, or None when tgt(f) ≠ src(g).
    #[inline]
    pub fn try_compose(&self, g: usize, f: usize) -> Option<usize> {
        let v = self.compose[g * self.morphisms.len() + f];
        (v != UNDEF).then_some(v as usize)
    }

    /// g∘f. Panics when the pair is not composable.
    #[inline]
    pub fn compose(&self, g: usize, f: usize) -> usize {
        self.try_compose(g, f).unwrap_or_else(|| {
            panic!("morphisms {} and {} are not composable", self.morphisms[g].id, self.morphisms[f].id)
        })
    }

    /// Morphism indices a → b.
    #[inline]
    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        &self.hom[a * self.objects.len() + b]
    }

    pub fn hom_set(&self, a: &str, b: &str) -> Result<FinSet> {
        let (a, b) = (self.object(a)?, self.object(b)?);
        Ok(FinSet { elements: self.hom(a, b).iter().map(|&f| self.morphisms[f].id.clone()).collect() })
    }

    pub fn out_morphisms(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.objects.len()).flat_map(move |b| self.hom(a, b).iter().copied())
    }

    pub fn in_morphisms(&self, b: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.objects.len()).flat_map(move |a| self.hom(a, b).iter().copied())
    }

    /// Two-sided inverse of f, if any.
    pub fn inverse(&self, f: usize) -> Option<usize> {
        let (a, b) = (self.src(f), self.tgt(f));
        self.hom(b, a)
            .iter()
            .copied()
            .find(|&g| self.compose(g, f) == self.id(a) && self.compose(f, g) == self.id(b))
    }

    pub fn is_iso(&self, f: usize) -> bool {
        self.inverse(f).is_some()
    }

    /// Every hom-set has at most one element.
    pub fn is_preorder(&self) -> bool {
        self.hom.iter().all(|h| h.len() <= 1)
    }

    /// Every morphism is an identity.
    pub fn is_discrete(&self) -> bool {
        self.morphisms.len() == self.objects.len()
    }

    /// Same ids, sources and targets swapped, composition transposed.
    pub fn opposite(&self) -> FinCategory {
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| Morphism { id: m.id.clone(), src: m.tgt, tgt: m.src })
            .collect();
        FinCategory::from_parts(self.objects.clone(), morphisms, self.identity.clone(), |g, f| {
            self.compose(f, g)
        })
    }

    /// Objects (a,b) at index a·|B|+b, morphisms (u,v) at index u·|mor B|+v.
    pub fn product(&self, other: &FinCategory) -> FinCategory {
        let nb = other.num_objects();
        let mb = other.num_morphisms();
        let mut objects = Vec::with_capacity(self.num_objects() * nb);
        for a in &self.objects {
            for b in &other.objects {
                objects.push(format!("({a},{b})"));
            }
        }
        let mut morphisms = Vec::with_capacity(self.num_morphisms() * mb);
        for u in &self.morphisms {
            for v in &other.morphisms {
                morphisms.push(Morphism {
                    id: format!("({},{})", u.id, v.id),
                    src: u.src * nb + v.src,
                    tgt: u.tgt * nb + v.tgt,
                });
            }
        }
        let identity = (0..self.num_objects())
            .flat_map(|a| (0..nb).map(move |b| (a, b)))
            .map(|(a, b)| self.id(a) * mb + other.id(b))
            .collect();
        FinCategory::from_parts(objects, morphisms, identity, |g, f| {
            self.compose(g / mb, f / mb) * mb + other.compose(g % mb, f % mb)
        })
    }

    /// The full subcategory on the objects with `keep[a]`, with its inclusion.
    pub fn full_subcategory(self: &Arc<Self>, keep: &[bool]) -> (Arc<FinCategory>, FinFunctor) {
        let mut new_obj = vec![usize::MAX; self.num_objects()];
        let mut objects = Vec::new();
        let mut obj_map = Vec::new();
        for (a, &k) in keep.iter().enumerate() {
            if k {
                new_obj[a] = objects.len();
                objects.push(self.objects[a].clone());
                obj_map.push(a);
            }
        }
        let mut new_mor = vec![usize::MAX; self.num_morphisms()];
        let mut morphisms = Vec::new();
        let mut mor_map = Vec::new();
        for (f, mo) in self.morphisms.iter().enumerate() {
            if keep[mo.src] && keep[mo.tgt] {
                new_mor[f] = morphisms.len();
                morphisms.push(Morphism { id: mo.id.clone(), src: new_obj[mo.src], tgt: new_obj[mo.tgt] });
                mor_map.push(f);
            }
        }
        let identity = obj_map.iter().map(|&a| new_mor[self.id(a)]).collect();
        let sub = Arc::new(FinCategory::from_parts(objects, morphisms, identity, |g, f| {
            new_mor[self.compose(mor_map[g], mor_map[f])]
        }));
        let inc = FinFunctor::new_unchecked(sub.clone(), self.clone(), obj_map, mor_map);
        (sub, inc)
    }

    /// Connected components, as a component index per object.
    pub fn components(&self) -> Vec<usize> {
        let n = self.num_objects();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for mo in &self.morphisms {
            let (a, b) = (find(&mut parent, mo.src), find(&mut parent, mo.tgt));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        let mut out = vec![0; n];
        for a in 0..n {
            let r = find(&mut parent, a);
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            out[a] = label[r];
        }
        out
    }
}
