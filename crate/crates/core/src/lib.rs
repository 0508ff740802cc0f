//! Stability of Cayley graphs on finite abelian groups.
//!
//! The crate decides whether `Cay(H, S)` is stable, meaning that the
//! automorphism group of its canonical double cover is exactly
//! `Aut(Cay(H, S)) x Z2`, both by brute force and through Schur-ring
//! machinery, and audits the structural statements that connect the two.

pub mod cayley;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod groups;
pub mod isotest;
pub mod keys;
pub mod par;
pub mod permgroup;
pub mod poschel;
pub mod sring;
pub mod stability;

pub use error::{Error, Result};
