//! Right abelian envelopes of finite linear exact categories.

pub mod algebra;
pub mod category;
pub mod checks;
pub mod envelope;
pub mod error;
pub mod exact;
pub mod field;
pub mod homological;
pub mod linalg;
pub mod module;
pub mod quotient;
pub mod workbench;

pub use error::{Error, Result};
