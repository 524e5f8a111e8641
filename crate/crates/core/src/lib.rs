//! Invariants of virtual knots and links from group biquandles built on
//! Wada's braid representations.

pub mod algebra;
pub mod biquandle;
pub mod cocycle;
pub mod coloring;
pub mod corpus;
pub mod diagram;
pub mod error;
pub mod numbering;
pub mod wadagroup;

pub use error::{Error, Result};
