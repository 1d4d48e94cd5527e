use crate::budget::Budget;
use crate::category::{FinFunctor, FunctorSearch, NatSearch, NatTrans};
use crate::error::Result;

/// L ⊣ R with unit 1 ⇒ RL and counit LR ⇒ 1.
#[derive(Clone, Debug)]
pub struct Adjunction {
    pub left: FinFunctor,
    pub right: FinFunctor,
    pub unit: NatTrans,
    pub counit: NatTrans,
}

/// Both triangle identities, plus the typing of unit and counit.
pub fn verify_adjunction(left: &FinFunctor, right: &FinFunctor, unit: &NatTrans, counit: &NatTrans) -> bool {
    let (Ok(rl), Ok(lr)) = (right.after(left), left.after(right)) else {
        return false;
    };
    let id_x = FinFunctor::identity(left.dom.clone());
    let id_y = FinFunctor::identity(left.cod.clone());
    if unit.dom != id_x || unit.cod != rl || counit.dom != lr || counit.cod != id_y {
        return false;
    }
    if !unit.is_valid() || !counit.is_valid() {
        return false;
    }
    let first = counit.whisker_right(left).and_then(|e| e.vcomp(&unit.whisker_left(left)?));
    let second = counit.whisker_left(right).and_then(|e| e.vcomp(&unit.whisker_right(right)?));
    matches!((first, second), (Ok(a), Ok(b)) if a.is_identity() && b.is_identity())
}

/// Searches unit and counit making L ⊣ R.
pub fn find_adjunction(left: &FinFunctor, right: &FinFunctor, budget: &Budget) -> Result<Option<Adjunction>> {
    let id_x = FinFunctor::identity(left.dom.clone());
    let id_y = FinFunctor::identity(left.cod.clone());
    let rl = right.after(left)?;
    let lr = left.after(right)?;
    let counits = NatSearch::new(&lr, &id_y).collect(budget)?;
    let mut found = None;
    NatSearch::new(&id_x, &rl).for_each(budget, |eta| {
        for eps in &counits {
            if verify_adjunction(left, right, eta, eps) {
                found = Some(Adjunction {
                    left: left.clone(),
                    right: right.clone(),
                    unit: eta.clone(),
                    counit: eps.clone(),
                });
                return false;
            }
        }
        true
    })?;
    Ok(found)
}

/// The first right adjoint found, searching functors Y → X whose object
/// values match hom-set sizes.
pub fn find_right_adjoint(left: &FinFunctor, budget: &Budget) -> Result<Option<Adjunction>> {
    let (x, y) = (left.dom.clone(), left.cod.clone());
    let mut found = None;
    let mut failure = None;
    FunctorSearch::new(y.clone(), x.clone())
        .objects(|b, a| (0..x.num_objects()).all(|s| y.hom(left.ob(s), b).len() == x.hom(s, a).len()))
        .for_each(budget, |r| match find_adjunction(left, r, budget) {
            Ok(Some(adj)) => {
                found = Some(adj);
                false
            }
            Ok(None) => true,
            Err(e) => {
                failure = Some(e);
                false
            }
        })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(found),
    }
}

/// The first left adjoint found, dual to [`find_right_adjoint`].
pub fn find_left_adjoint(right: &FinFunctor, budget: &Budget) -> Result<Option<Adjunction>> {
    let (y, x) = (right.dom.clone(), right.cod.clone());
    let mut found = None;
    let mut failure = None;
    FunctorSearch::new(x.clone(), y.clone())
        .objects(|a, b| (0..y.num_objects()).all(|t| y.hom(b, t).len() == x.hom(a, right.ob(t)).len()))
        .for_each(budget, |l| match find_adjunction(l, right, budget) {
            Ok(Some(adj)) => {
                found = Some(adj);
                false
            }
            Ok(None) => true,
            Err(e) => {
                failure = Some(e);
                false
            }
        })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(found),
    }
}
