//! Finite, decidable models of simplicial sets, strict 2-categories, operadic
//! categories and their algebras.

mod error;
pub mod report;
pub mod category;
pub mod fibration;
pub mod fixtures;
pub mod freemon;
pub mod grothendieck;
pub mod io;
pub mod nerve;
pub mod operad;
pub mod operadic;
pub mod simplicial;
pub mod twocat;

pub use error::{Error, Result};
pub use report::{ValidationReport, Violation};
