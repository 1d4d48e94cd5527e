use crate::budget::Budget;
use crate::category::{precompose, FinFunctor, FunctorCategory};
use crate::error::{Error, Result};

use super::adjunction::{find_left_adjoint, find_right_adjoint, Adjunction};
use super::extension::{lan_pointwise, ran_pointwise};

/// f^op retyped against the domains of the two presheaf categories.
fn opposite_between(f: &FinFunctor, psh_a: &FunctorCategory, psh_b: &FunctorCategory) -> Result<FinFunctor> {
    f.opposite().retype(psh_a.dom.clone(), psh_b.dom.clone())
}

/// res_f: PSh B → PSh A, P ↦ P∘f^op.
pub fn res(f: &FinFunctor, psh_a: &FunctorCategory, psh_b: &FunctorCategory) -> Result<FinFunctor> {
    if psh_a.cod != psh_b.cod {
        return Err(Error::ShapeMismatch("presheaf categories over different value categories".into()));
    }
    precompose(psh_b, psh_a, &opposite_between(f, psh_a, psh_b)?)
}

/// res_f with whichever adjoints exist, found by search over functors.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub res: FinFunctor,
    pub lan: Option<Adjunction>,
    pub ran: Option<Adjunction>,
}

pub fn restriction(f: &FinFunctor, psh_a: &FunctorCategory, psh_b: &FunctorCategory, budget: &Budget) -> Result<Restriction> {
    let r = res(f, psh_a, psh_b)?;
    let lan = find_left_adjoint(&r, budget)?;
    let ran = find_right_adjoint(&r, budget)?;
    Ok(Restriction { res: r, lan, ran })
}

/// The objects lan_f(P) of PSh B by Lawvere's formula, one per object P of PSh A.
pub fn lan_objects(f: &FinFunctor, psh_a: &FunctorCategory, psh_b: &FunctorCategory, budget: &Budget) -> Result<Vec<usize>> {
    let g = opposite_between(f, psh_a, psh_b)?;
    psh_a
        .functors
        .iter()
        .map(|p| psh_b.object_of(&lan_pointwise(&g, p, budget)?.h))
        .collect()
}

/// The objects ran_f(P) of PSh B by the limit formula.
pub fn ran_objects(f: &FinFunctor, psh_a: &FunctorCategory, psh_b: &FunctorCategory, budget: &Budget) -> Result<Vec<usize>> {
    let g = opposite_between(f, psh_a, psh_b)?;
    psh_a
        .functors
        .iter()
        .map(|p| psh_b.object_of(&ran_pointwise(&g, p, budget)?.0))
        .collect()
}
