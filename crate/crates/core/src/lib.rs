//! Scattered representations of complex classical groups of types B, C
//! and D: chain combinatorics, enumeration, spin-lowest K-types, and exact
//! verification oracles.

pub mod catalog;
pub mod chains;
pub mod enumerate;
pub mod error;
pub mod oracle;
pub mod partitions;
pub mod record;
pub mod spin_lkt;
pub mod weights;

pub use error::{Error, Result};
