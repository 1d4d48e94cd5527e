use std::sync::Arc;

use super::{FinCategory, FinFunctor, FunctorSearch};
use crate::budget::Budget;
use crate::error::Result;

/// An isomorphism a → b, found by bounded bijection search.
pub fn find_isomorphism(
    a: &Arc<FinCategory>,
    b: &Arc<FinCategory>,
    budget: &Budget,
) -> Result<Option<FinFunctor>> {
    if a.num_objects() != b.num_objects() || a.num_morphisms() != b.num_morphisms() {
        return Ok(None);
    }
    let mut profile_a: Vec<usize> = (0..a.num_objects()).map(|x| a.hom(x, x).len()).collect();
    let mut profile_b: Vec<usize> = (0..b.num_objects()).map(|x| b.hom(x, x).len()).collect();
    profile_a.sort_unstable();
    profile_b.sort_unstable();
    if profile_a != profile_b {
        return Ok(None);
    }
    let (aa, bb) = (a.clone(), b.clone());
    FunctorSearch::new(a.clone(), b.clone())
        .objects(move |x, y| {
            aa.hom(x, x).len() == bb.hom(y, y).len()
                && aa.out_morphisms(x).count() == bb.out_morphisms(y).count()
                && aa.in_morphisms(x).count() == bb.in_morphisms(y).count()
        })
        .injective()
        .first(budget)
}
