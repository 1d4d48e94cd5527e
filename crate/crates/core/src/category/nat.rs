use std::fmt;
use std::sync::Arc;

use super::{FinCategory, FinFunctor};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct NatTrans {
    pub dom: FinFunctor,
    pub cod: FinFunctor,
    pub components: Vec<usize>,
}

impl fmt::Debug for NatTrans {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.dom.cod;
        let parts: Vec<&str> = self.components.iter().map(|&m| c.morphism_id(m)).collect();
        write!(f, "NatTrans[{}]", parts.join(", "))
    }
}

fn parallel(a: &FinFunctor, b: &FinFunctor) -> bool {
    (Arc::ptr_eq(&a.dom, &b.dom) || a.dom == b.dom) && (Arc::ptr_eq(&a.cod, &b.cod) || a.cod == b.cod)
}

impl NatTrans {
    pub(crate) fn new_unchecked(dom: FinFunctor, cod: FinFunctor, components: Vec<usize>) -> NatTrans {
        NatTrans { dom, cod, components }
    }

    pub fn new(dom: FinFunctor, cod: FinFunctor, components: Vec<usize>) -> Result<NatTrans> {
        if !parallel(&dom, &cod) {
            return Err(Error::InvalidNatTrans("functors are not parallel".into()));
        }
        let t = NatTrans { dom, cod, components };
        if let Some(problem) = t.violation() {
            return Err(Error::InvalidNatTrans(problem));
        }
        Ok(t)
    }

    fn violation(&self) -> Option<String> {
        let a = &self.dom.dom;
        let b = &self.dom.cod;
        if self.components.len() != a.num_objects() {
            return Some("wrong number of components".into());
        }
        for x in 0..a.num_objects() {
            let c = self.components[x];
            if c >= b.num_morphisms() || b.src(c) != self.dom.ob(x) || b.tgt(c) != self.cod.ob(x) {
                return Some(format!("component at {} has the wrong type", a.object_id(x)));
            }
        }
        for u in 0..a.num_morphisms() {
            let (s, t) = (a.src(u), a.tgt(u));
            if b.compose(self.components[t], self.dom.mor(u)) != b.compose(self.cod.mor(u), self.components[s]) {
                return Some(format!("naturality fails at {}", a.morphism_id(u)));
            }
        }
        None
    }

    pub fn is_valid(&self) -> bool {
        self.violation().is_none()
    }

    #[inline]
    pub fn at(&self, x: usize) -> usize {
        self.components[x]
    }

    pub fn identity(f: &FinFunctor) -> NatTrans {
        let components = f.obj_map.iter().map(|&b| f.cod.id(b)).collect();
        NatTrans { dom: f.clone(), cod: f.clone(), components }
    }

    pub fn is_identity(&self) -> bool {
        self.components.iter().all(|&c| self.dom.cod.is_identity(c))
    }

    pub fn is_invertible(&self) -> bool {
        self.components.iter().all(|&c| self.dom.cod.is_iso(c))
    }

    pub fn inverse(&self) -> Option<NatTrans> {
        let b = &self.dom.cod;
        let components = self.components.iter().map(|&c| b.inverse(c)).collect::<Option<Vec<_>>>()?;
        Some(NatTrans { dom: self.cod.clone(), cod: self.dom.clone(), components })
    }

    /// Vertical composite self · first.
    pub fn vcomp(&self, first: &NatTrans) -> Result<NatTrans> {
        if first.cod.obj_map != self.dom.obj_map || first.cod.mor_map != self.dom.mor_map {
            return Err(Error::ShapeMismatch("2-cells are not vertically composable".into()));
        }
        let b = &self.dom.cod;
        let components =
            self.components.iter().zip(&first.components).map(|(&s, &f)| b.compose(s, f)).collect();
        Ok(NatTrans { dom: first.dom.clone(), cod: self.cod.clone(), components })
    }

    /// self ∘ h : dom∘h ⇒ cod∘h.
    pub fn whisker_right(&self, h: &FinFunctor) -> Result<NatTrans> {
        let dom = self.dom.after(h)?;
        let cod = self.cod.after(h)?;
        let components = h.obj_map.iter().map(|&x| self.components[x]).collect();
        Ok(NatTrans { dom, cod, components })
    }

    /// k ∘ self : k∘dom ⇒ k∘cod.
    pub fn whisker_left(&self, k: &FinFunctor) -> Result<NatTrans> {
        let dom = k.after(&self.dom)?;
        let cod = k.after(&self.cod)?;
        let components = self.components.iter().map(|&c| k.mor(c)).collect();
        Ok(NatTrans { dom, cod, components })
    }

    /// The same components between the opposite functors, reversed.
    pub fn opposite(&self) -> NatTrans {
        NatTrans { dom: self.cod.opposite(), cod: self.dom.opposite(), components: self.components.clone() }
    }

    pub fn table_id(&self) -> String {
        let b: &FinCategory = &self.dom.cod;
        let parts: Vec<&str> = self.components.iter().map(|&c| b.morphism_id(c)).collect();
        format!("[{}]", parts.join(","))
    }
}
