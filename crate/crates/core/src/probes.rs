//! Probe families standing in for "all test objects X".

use std::sync::Arc;

use crate::category::FinCategory;
use crate::corpus;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Probe {
    pub name: String,
    pub category: Arc<FinCategory>,
}

impl Probe {
    pub fn new(name: impl Into<String>, category: FinCategory) -> Probe {
        Probe { name: name.into(), category: Arc::new(category) }
    }
}

/// The terminal category and the 2-chain.
pub fn tiny() -> Vec<Probe> {
    vec![Probe::new("1", FinCategory::terminal()), Probe::new("2-chain", FinCategory::chain(2))]
}

/// The empty category, every poset with at most 3 objects up to isomorphism,
/// and the parallel pair.
pub fn standard() -> Vec<Probe> {
    let mut out = vec![];
    for (i, c) in corpus::posets_up_to_iso(3).into_iter().enumerate() {
        out.push(Probe::new(format!("poset{}-{}", c.num_objects(), i), c));
    }
    out.push(Probe::new("parallel-pair", corpus::parallel_pair()));
    out
}

/// 1, the 2-chain and the 2-object discrete category.
pub fn classifying() -> Vec<Probe> {
    let mut out = tiny();
    out.push(Probe::new("2-discrete", FinCategory::discrete_n(2)));
    out
}

/// `standard` plus the legs' own categories.
pub fn standard_with(extra: &[(&str, &Arc<FinCategory>)]) -> Vec<Probe> {
    let mut out = standard();
    for (name, c) in extra {
        if c.num_objects() <= 4 && c.num_morphisms() <= 12 {
            out.push(Probe { name: name.to_string(), category: (*c).clone() });
        }
    }
    out
}

pub fn by_name(name: &str) -> Result<Vec<Probe>> {
    match name {
        "tiny" => Ok(tiny()),
        "standard" => Ok(standard()),
        _ => Err(Error::BadConfig(format!("unknown probe family {name}"))),
    }
}
