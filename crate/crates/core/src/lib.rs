//! Exact computer algebra for polynomial identities of nonassociative
//! varieties: free algebras, T-ideal consequence spans, sparse exact linear
//! algebra, operadic generating series and the 27-dimensional exceptional
//! Jordan algebra as a numeric oracle.

pub mod albert;
pub mod engine;
pub mod error;
pub mod lang;
pub mod linalg;
pub mod series;
pub mod term;
pub mod tideal;

pub use error::{Error, Result};
