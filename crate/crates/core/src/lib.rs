//! Exact ribbon crossed group-categories, invariants of colored links and
//! surgery-presented 3-manifolds with group structure, crossed algebras and
//! Hopf group-coalgebras, all over cyclotomic fields.

pub mod categories;
pub mod cocycles;
pub mod constructions;
pub mod cyclo;
pub mod error;
pub mod fixtures;
pub mod group;
pub mod hopf;
pub mod hqft2d;
pub mod io;
pub mod linalg;
pub mod report;
pub mod surgery;
pub mod tangles;

pub use cyclo::CycloNum;
pub use error::{Error, Result};
pub use group::{FiniteGroup, GroupHom};
pub use report::Report;
