//! Colimits and limits in finite categories, left extensions and liftings,
//! Lawvere's pointwise formula, restriction along functors between presheaf
//! categories, adjunctions and weighted colimits.

mod adjunction;
mod colimit;
mod extension;
mod restriction;
mod weighted;

pub use adjunction::{find_adjunction, find_left_adjoint, find_right_adjoint, verify_adjunction, Adjunction};
pub use colimit::{cocones_at, colimit_finset, colimit_in, is_colimiting, limit_in, Cocone, Cone, SetColimit};
pub use extension::{
    lan_pointwise, paste_with_comma, ran_pointwise, verify_absolute, verify_left_extension, verify_left_lifting,
    verify_pointwise_left_extension, CellKind, ExtensionCell, PointwiseVerdict,
};
pub use restriction::{lan_objects, ran_objects, res, restriction, Restriction};
pub use weighted::{verify_col_rec, weighted_colimit, WeightedColimit};
