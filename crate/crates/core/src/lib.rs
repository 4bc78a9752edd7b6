//! Circular pattern matching: find every position of a text where some
//! rotation of a pattern occurs exactly, within `k` mismatches, or within `k`
//! edits.

pub mod bench;
pub mod edit;
pub mod error;
pub mod exact;
pub mod geometry;
pub mod lpam;
pub mod mismatch;
pub mod monge;
pub mod oracles;
pub mod pillar;
pub mod reductions;
pub mod selftest;

pub use error::{Error, Result};
