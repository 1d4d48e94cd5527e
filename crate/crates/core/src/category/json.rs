//! JSON interchange. Keys follow the fixed external schema.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{validate_category, FinCategory, FinFunctor, Morphism, NatTrans};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawMorphism {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<RawMorphism>,
    pub identity: BTreeMap<String, String>,
    pub compose: Vec<[String; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawFunctor {
    pub dom: RawCategory,
    pub cod: RawCategory,
    pub obj_map: BTreeMap<String, String>,
    pub mor_map: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawNatTrans {
    pub dom: RawFunctor,
    pub cod: RawFunctor,
    pub components: BTreeMap<String, String>,
}

impl FinCategory {
    pub fn to_raw(&self) -> RawCategory {
        let morphisms = self
            .morphisms()
            .iter()
            .map(|m| RawMorphism {
                id: m.id.clone(),
                src: self.object_id(m.src).to_string(),
                tgt: self.object_id(m.tgt).to_string(),
            })
            .collect();
        let identity = (0..self.num_objects())
            .map(|a| (self.object_id(a).to_string(), self.morphism_id(self.id(a)).to_string()))
            .collect();
        let mut compose = Vec::new();
        for f in 0..self.num_morphisms() {
            for g in self.out_morphisms(self.tgt(f)) {
                compose.push([
                    self.morphism_id(g).to_string(),
                    self.morphism_id(f).to_string(),
                    self.morphism_id(self.compose(g, f)).to_string(),
                ]);
            }
        }
        RawCategory { objects: self.objects().to_vec(), morphisms, identity, compose }
    }

    /// Validates and converts. Any violated law is reported as `InvalidCategory`.
    pub fn from_raw(raw: &RawCategory) -> Result<FinCategory> {
        let report = validate_category(raw);
        if !report.is_empty() {
            let first: Vec<String> = report.violations.iter().take(3).map(|v| v.to_string()).collect();
            return Err(Error::InvalidCategory(first.join("; ")));
        }
        let obj: BTreeMap<&str, usize> = raw.objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
        let mor: BTreeMap<&str, usize> =
            raw.morphisms.iter().enumerate().map(|(i, m)| (m.id.as_str(), i)).collect();
        let morphisms = raw
            .morphisms
            .iter()
            .map(|m| Morphism { id: m.id.clone(), src: obj[m.src.as_str()], tgt: obj[m.tgt.as_str()] })
            .collect();
        let identity = raw.objects.iter().map(|o| mor[raw.identity[o].as_str()]).collect();
        let table: BTreeMap<(usize, usize), usize> = raw
            .compose
            .iter()
            .map(|[g, f, h]| ((mor[g.as_str()], mor[f.as_str()]), mor[h.as_str()]))
            .collect();
        Ok(FinCategory::from_parts(raw.objects.clone(), morphisms, identity, |g, f| table[&(g, f)]))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_raw()).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<FinCategory> {
        FinCategory::from_raw(&serde_json::from_str(text)?)
    }
}

impl FinFunctor {
    pub fn to_raw(&self) -> RawFunctor {
        RawFunctor {
            dom: self.dom.to_raw(),
            cod: self.cod.to_raw(),
            obj_map: (0..self.dom.num_objects())
                .map(|a| (self.dom.object_id(a).to_string(), self.cod.object_id(self.ob(a)).to_string()))
                .collect(),
            mor_map: (0..self.dom.num_morphisms())
                .map(|u| (self.dom.morphism_id(u).to_string(), self.cod.morphism_id(self.mor(u)).to_string()))
                .collect(),
        }
    }

    pub fn from_raw(raw: &RawFunctor) -> Result<FinFunctor> {
        let dom = Arc::new(FinCategory::from_raw(&raw.dom)?);
        let cod = Arc::new(FinCategory::from_raw(&raw.cod)?);
        FinFunctor::from_raw_in(raw, dom, cod)
    }

    /// Reads the maps against already-built categories.
    pub fn from_raw_in(raw: &RawFunctor, dom: Arc<FinCategory>, cod: Arc<FinCategory>) -> Result<FinFunctor> {
        let objects: Vec<(&str, &str)> = raw.obj_map.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let morphisms: Vec<(&str, &str)> = raw.mor_map.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        FinFunctor::from_ids(dom, cod, &objects, &morphisms)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_raw()).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<FinFunctor> {
        FinFunctor::from_raw(&serde_json::from_str(text)?)
    }
}

impl NatTrans {
    pub fn to_raw(&self) -> RawNatTrans {
        let (a, b) = (&self.dom.dom, &self.dom.cod);
        RawNatTrans {
            dom: self.dom.to_raw(),
            cod: self.cod.to_raw(),
            components: (0..a.num_objects())
                .map(|x| (a.object_id(x).to_string(), b.morphism_id(self.at(x)).to_string()))
                .collect(),
        }
    }

    pub fn from_raw(raw: &RawNatTrans) -> Result<NatTrans> {
        let dom = FinFunctor::from_raw(&raw.dom)?;
        let cod = FinFunctor::from_raw_in(&raw.cod, dom.dom.clone(), dom.cod.clone())?;
        let mut components = vec![usize::MAX; dom.dom.num_objects()];
        for (x, c) in &raw.components {
            components[dom.dom.object(x)?] = dom.cod.morphism(c)?;
        }
        if components.contains(&usize::MAX) {
            return Err(Error::InvalidNatTrans("missing component".into()));
        }
        NatTrans::new(dom, cod, components)
    }
}
