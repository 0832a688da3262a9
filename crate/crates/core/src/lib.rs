//! Exact arithmetic for monomial valuations, truncated series completions
//! and local uniformization certificates.

pub mod completion;
pub mod error;
pub mod polyfield;
pub mod uniformize;
pub mod valuation;
pub mod valuegroup;

pub use error::{Error, Result};
