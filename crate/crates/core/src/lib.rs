//! Exact computations for symplectic nilmanifolds and their blow-ups.
//!
//! The crate builds cohomology rings of nilmanifolds from Lie-algebra
//! structure constants, decides the Lefschetz property level by level,
//! computes triple Massey products with their indeterminacy, and assembles
//! the cohomology ring of a symplectic blow-up from the ambient ring, the
//! submanifold ring, the restriction map and the normal Chern classes. The
//! blow-up parameter ε is kept as a formal variable, so "for ε small enough"
//! becomes a statement about ranks over ℚ(ε).

pub mod blowup;
pub mod cemodel;
pub mod cli;
pub mod cohomring;
pub mod config;
pub mod error;
pub mod exactla;
pub mod lefschetz;
pub mod massey;
pub mod verify;

pub use error::{Error, Result};
