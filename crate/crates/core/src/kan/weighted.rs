use std::sync::Arc;

use crate::budget::Budget;
use crate::category::{FinCategory, FinFunctor, NatTrans};
use crate::error::Result;
use crate::presheaf::{Elements, Presheaf};

use super::extension::lan_pointwise;

/// col(i, f) as a point of A, with η: f∘p ⇒ col∘q over the elements of i.
#[derive(Clone, Debug)]
pub struct WeightedColimit {
    pub col: FinFunctor,
    pub eta: NatTrans,
    pub elements: Elements,
}

impl WeightedColimit {
    pub fn object(&self) -> usize {
        self.col.ob(0)
    }
}

/// The pointwise left extension of f∘p along el(i) → 1.
pub fn weighted_colimit(i: &Presheaf, f: &FinFunctor, budget: &Budget) -> Result<WeightedColimit> {
    let elements = i.elements();
    let fp = f.after(&elements.projection)?;
    let q = FinFunctor::to_terminal(elements.category.clone());
    let cell = lan_pointwise(&q, &fp, budget)?;
    Ok(WeightedColimit { col: cell.h, eta: cell.phi, elements })
}

/// For every object a, m ↦ (m∘η) is a bijection A(col, a) → PSh C(i, A(f−, a)).
/// The target is enumerated independently of the colimit.
pub fn verify_col_rec(i: &Presheaf, f: &FinFunctor, wc: &WeightedColimit, budget: &Budget) -> Result<bool> {
    let a: &Arc<FinCategory> = &f.cod;
    let col = wc.object();
    for o in 0..a.num_objects() {
        let target = Presheaf::hom_into(f, o);
        let expected = i.morphisms_to(&target, budget)?;
        let mut families = Vec::new();
        for &m in a.hom(col, o) {
            let family: Vec<Vec<usize>> = (0..i.base.num_objects())
                .map(|c| {
                    (0..i.sizes[c])
                        .map(|x| {
                            let leg = wc.eta.at(wc.elements.object_at(c, x).expect("element"));
                            let mh = a.compose(m, leg);
                            a.hom(f.ob(c), o).iter().position(|&k| k == mh).expect("composite in hom")
                        })
                        .collect()
                })
                .collect();
            if !i.is_morphism_to(&target, &family) {
                return Ok(false);
            }
            families.push(family);
        }
        families.sort();
        families.dedup();
        if families.len() != a.hom(col, o).len() || families.len() != expected.len() {
            return Ok(false);
        }
    }
    Ok(true)
}
