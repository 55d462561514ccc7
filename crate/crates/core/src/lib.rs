//! Exact computations on jet spaces of affine schemes over prime fields.

pub mod corpus;
pub mod dvr;
pub mod error;
pub mod jets;
pub mod lifting;
pub mod report;
pub mod rings;
pub mod strata;
pub mod verify;
pub mod zeta;

pub use error::{Error, Result};
