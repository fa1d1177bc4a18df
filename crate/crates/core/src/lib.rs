//! Finite quandles: tables, inner groups, isomorphism, congruences,
//! extensions and binary cocycles, and exhaustive enumeration of the
//! connected ones of small order.
//!
//! Elements are `0..n` internally; text formats and error messages use `1..=n`.

pub mod analysis;
pub mod catalog;
pub mod cocycle2;
pub mod construct;
pub mod enumerate;
pub mod error;
pub mod f2;
pub mod group;
pub mod io;
pub mod iso;
pub mod perm;
pub mod quandle;

pub use error::{Error, Result};
pub use group::GroupHandle;
pub use perm::Permutation;
pub use quandle::{AxiomViolation, QuandleTable};
