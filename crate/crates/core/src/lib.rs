//! Finite categories with proof-relevant hom-setoids.
//!
//! Every structure here is finite and explicit, so each law is decided by
//! exhaustive checking rather than assumed. Morphism equality is always the
//! hom-setoid relation `≈`, never identity of arrow indices.

pub mod adjoint;
pub mod category;
pub mod catlang;
pub mod error;
pub mod fixtures;
pub mod limits;
pub mod monoidal;
pub mod report;
pub mod setoidcat;
pub mod transfor;

pub use category::{Arrow, FinCategory};
pub use error::{Error, Result};
pub use fixtures::{standard_category, StandardKind};
pub use report::{LawReport, Violation};
