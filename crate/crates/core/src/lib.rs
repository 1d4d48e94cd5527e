//! Finite 2-categorical machinery.
//!
//! Categories are stored with total composition tables, so every universal
//! property in this crate is decided by exhaustive enumeration over finite
//! data. Statements about arbitrary test objects are checked against a
//! configurable probe family (see [`probes`]).

pub mod budget;
pub mod category;
pub mod comma;
pub mod corpus;
pub mod error;
pub mod fib;
pub mod glob;
pub mod kan;
pub mod omega;
pub mod presheaf;
pub mod probes;
pub mod report;
pub mod span;
pub mod suite;
pub mod yoneda;

pub use budget::{Budget, CancelToken};
pub use category::{FinCategory, FinFunctor, FinSet, FunctorCategory, NatTrans};
pub use error::{Error, Result};
pub use report::{Check, Report, Verdict};
