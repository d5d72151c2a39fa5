//! Exact restriction of symmetric-group characters to Sylow subgroups.
//!
//! The engine decomposes `χ^λ↓P_n` over the irreducible characters of the
//! Sylow `p`-subgroup `P_n ≤ S_n`, with closed-form predictions for the
//! linear constituents and a brute-force oracle for cross-checks.

pub mod cache;
pub mod closed_forms;
pub mod cyclotomic;
pub mod error;
pub mod oracle;
pub mod partition;
pub mod restriction;
pub mod symfunc;
pub mod tower;
pub mod verify;

pub use error::{Error, Result};
pub use partition::{Partition, Shape};
