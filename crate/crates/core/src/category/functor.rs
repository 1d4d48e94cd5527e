use std::fmt;
use std::sync::Arc;

use super::FinCategory;
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct FinFunctor {
    pub dom: Arc<FinCategory>,
    pub cod: Arc<FinCategory>,
    pub obj_map: Vec<usize>,
    pub mor_map: Vec<usize>,
}

impl PartialEq for FinFunctor {
    fn eq(&self, other: &Self) -> bool {
        self.obj_map == other.obj_map
            && self.mor_map == other.mor_map
            && (Arc::ptr_eq(&self.dom, &other.dom) || self.dom == other.dom)
            && (Arc::ptr_eq(&self.cod, &other.cod) || self.cod == other.cod)
    }
}

impl Eq for FinFunctor {}

impl fmt::Debug for FinFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinFunctor(")?;
        for (a, &b) in self.obj_map.iter().enumerate() {
            if a > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}↦{}", self.dom.object_id(a), self.cod.object_id(b))?;
        }
        write!(f, ")")
    }
}

fn same(a: &Arc<FinCategory>, b: &Arc<FinCategory>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl FinFunctor {
    pub(crate) fn new_unchecked(
        dom: Arc<FinCategory>,
        cod: Arc<FinCategory>,
        obj_map: Vec<usize>,
        mor_map: Vec<usize>,
    ) -> FinFunctor {
        FinFunctor { dom, cod, obj_map, mor_map }
    }

    /// Checks sizes, typing, identities and composition.
    pub fn new(
        dom: Arc<FinCategory>,
        cod: Arc<FinCategory>,
        obj_map: Vec<usize>,
        mor_map: Vec<usize>,
    ) -> Result<FinFunctor> {
        let f = FinFunctor { dom, cod, obj_map, mor_map };
        if let Some(problem) = f.violation() {
            return Err(Error::InvalidFunctor(problem));
        }
        Ok(f)
    }

    /// Builds a functor from id-level maps.
    pub fn from_ids(
        dom: Arc<FinCategory>,
        cod: Arc<FinCategory>,
        objects: &[(&str, &str)],
        morphisms: &[(&str, &str)],
    ) -> Result<FinFunctor> {
        let mut obj_map = vec![usize::MAX; dom.num_objects()];
        for (a, b) in objects {
            obj_map[dom.object(a)?] = cod.object(b)?;
        }
        let mut mor_map = vec![usize::MAX; dom.num_morphisms()];
        for (u, v) in morphisms {
            mor_map[dom.morphism(u)?] = cod.morphism(v)?;
        }
        // identities may be omitted
        for a in 0..dom.num_objects() {
            let i = dom.id(a);
            if mor_map[i] == usize::MAX && obj_map[a] != usize::MAX {
                mor_map[i] = cod.id(obj_map[a]);
            }
        }
        if obj_map.contains(&usize::MAX) || mor_map.contains(&usize::MAX) {
            return Err(Error::InvalidFunctor("incomplete map".into()));
        }
        FinFunctor::new(dom, cod, obj_map, mor_map)
    }

    fn violation(&self) -> Option<String> {
        let (d, c) = (&self.dom, &self.cod);
        if self.obj_map.len() != d.num_objects() || self.mor_map.len() != d.num_morphisms() {
            return Some("map sizes do not match the domain".into());
        }
        if self.obj_map.iter().any(|&b| b >= c.num_objects())
            || self.mor_map.iter().any(|&v| v >= c.num_morphisms())
        {
            return Some("map lands outside the codomain".into());
        }
        for u in 0..d.num_morphisms() {
            let v = self.mor_map[u];
            if c.src(v) != self.obj_map[d.src(u)] || c.tgt(v) != self.obj_map[d.tgt(u)] {
                return Some(format!("{} is sent to an arrow of the wrong type", d.morphism_id(u)));
            }
        }
        for a in 0..d.num_objects() {
            if self.mor_map[d.id(a)] != c.id(self.obj_map[a]) {
                return Some(format!("identity at {} is not preserved", d.object_id(a)));
            }
        }
        for f in 0..d.num_morphisms() {
            for g in d.out_morphisms(d.tgt(f)) {
                if self.mor_map[d.compose(g, f)] != c.compose(self.mor_map[g], self.mor_map[f]) {
                    return Some(format!(
                        "composite {}∘{} is not preserved",
                        d.morphism_id(g),
                        d.morphism_id(f)
                    ));
                }
            }
        }
        None
    }

    pub fn is_valid(&self) -> bool {
        self.violation().is_none()
    }

    #[inline]
    pub fn ob(&self, a: usize) -> usize {
        self.obj_map[a]
    }

    #[inline]
    pub fn mor(&self, f: usize) -> usize {
        self.mor_map[f]
    }

    pub fn identity(c: Arc<FinCategory>) -> FinFunctor {
        let obj_map = (0..c.num_objects()).collect();
        let mor_map = (0..c.num_morphisms()).collect();
        FinFunctor { dom: c.clone(), cod: c, obj_map, mor_map }
    }

    /// Constant functor at object `b` of `cod`.
    pub fn constant(dom: Arc<FinCategory>, cod: Arc<FinCategory>, b: usize) -> FinFunctor {
        let obj_map = vec![b; dom.num_objects()];
        let mor_map = vec![cod.id(b); dom.num_morphisms()];
        FinFunctor { dom, cod, obj_map, mor_map }
    }

    /// The unique functor to the terminal category.
    pub fn to_terminal(dom: Arc<FinCategory>) -> FinFunctor {
        FinFunctor::constant(dom, Arc::new(FinCategory::terminal()), 0)
    }

    /// The object `b` of `cod` as a functor from the terminal category.
    pub fn point(cod: Arc<FinCategory>, b: usize) -> FinFunctor {
        FinFunctor::constant(Arc::new(FinCategory::terminal()), cod, b)
    }

    /// self ∘ first. Errors when the middle categories differ.
    pub fn after(&self, first: &FinFunctor) -> Result<FinFunctor> {
        if !same(&first.cod, &self.dom) {
            return Err(Error::ShapeMismatch("functors are not composable".into()));
        }
        Ok(self.after_unchecked(first))
    }

    pub(crate) fn after_unchecked(&self, first: &FinFunctor) -> FinFunctor {
        FinFunctor {
            dom: first.dom.clone(),
            cod: self.cod.clone(),
            obj_map: first.obj_map.iter().map(|&a| self.obj_map[a]).collect(),
            mor_map: first.mor_map.iter().map(|&f| self.mor_map[f]).collect(),
        }
    }

    pub fn opposite(&self) -> FinFunctor {
        FinFunctor {
            dom: Arc::new(self.dom.opposite()),
            cod: Arc::new(self.cod.opposite()),
            obj_map: self.obj_map.clone(),
            mor_map: self.mor_map.clone(),
        }
    }

    /// Same tables, reinterpreted between the given (structurally equal) categories.
    pub fn retype(&self, dom: Arc<FinCategory>, cod: Arc<FinCategory>) -> Result<FinFunctor> {
        if !same(&dom, &self.dom) || !same(&cod, &self.cod) {
            return Err(Error::ShapeMismatch("retype needs equal categories".into()));
        }
        Ok(FinFunctor { dom, cod, obj_map: self.obj_map.clone(), mor_map: self.mor_map.clone() })
    }

    pub fn pair(&self, other: &FinFunctor) -> Result<FinFunctor> {
        if !same(&self.dom, &other.dom) {
            return Err(Error::ShapeMismatch("pairing needs a shared domain".into()));
        }
        let prod = Arc::new(self.cod.product(&other.cod));
        let nb = other.cod.num_objects();
        let mb = other.cod.num_morphisms();
        Ok(FinFunctor {
            dom: self.dom.clone(),
            cod: prod,
            obj_map: self.obj_map.iter().zip(&other.obj_map).map(|(&a, &b)| a * nb + b).collect(),
            mor_map: self.mor_map.iter().zip(&other.mor_map).map(|(&u, &v)| u * mb + v).collect(),
        })
    }

    /// self × other between product categories.
    pub fn times(&self, other: &FinFunctor) -> FinFunctor {
        let dom = Arc::new(self.dom.product(&other.dom));
        let cod = Arc::new(self.cod.product(&other.cod));
        let (nd, md) = (other.cod.num_objects(), other.cod.num_morphisms());
        let obj_map = self.obj_map.iter().flat_map(|&a| other.obj_map.iter().map(move |&b| a * nd + b)).collect();
        let mor_map = self.mor_map.iter().flat_map(|&u| other.mor_map.iter().map(move |&v| u * md + v)).collect();
        FinFunctor { dom, cod, obj_map, mor_map }
    }

    pub fn is_faithful(&self) -> bool {
        let d = &self.dom;
        (0..d.num_objects()).all(|a| {
            (0..d.num_objects()).all(|b| {
                let mut seen: Vec<usize> = d.hom(a, b).iter().map(|&f| self.mor_map[f]).collect();
                seen.sort_unstable();
                seen.windows(2).all(|w| w[0] != w[1])
            })
        })
    }

    pub fn is_full(&self) -> bool {
        let d = &self.dom;
        (0..d.num_objects()).all(|a| {
            (0..d.num_objects()).all(|b| {
                self.cod.hom(self.obj_map[a], self.obj_map[b]).len()
                    <= {
                        let mut img: Vec<usize> = d.hom(a, b).iter().map(|&f| self.mor_map[f]).collect();
                        img.sort_unstable();
                        img.dedup();
                        img.len()
                    }
            })
        })
    }

    pub fn is_fully_faithful(&self) -> bool {
        self.is_full() && self.is_faithful()
    }

    /// Preimage of each codomain object.
    pub fn fibres(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.cod.num_objects()];
        for (a, &b) in self.obj_map.iter().enumerate() {
            out[b].push(a);
        }
        out
    }

    /// Canonical id encoding the object and morphism maps.
    pub fn table_id(&self) -> String {
        let o: Vec<&str> = self.obj_map.iter().map(|&b| self.cod.object_id(b)).collect();
        let m: Vec<&str> = self.mor_map.iter().map(|&v| self.cod.morphism_id(v)).collect();
        format!("⟨{}|{}⟩", o.join(","), m.join(","))
    }
}
