//! Grid designs: decompositions of complete graphs `K_N` into edge-disjoint
//! copies of `P_n x P_n` (path grids) or `C_n x C_n` (torus grids).
//!
//! The crate provides finite-field constructions of such designs, a
//! verifier that checks a design exactly, an exhaustive searcher that can
//! certify nonexistence, and a simulator for random 4x4 scrambles.

pub mod cli;
pub mod constructions;
pub mod error;
pub mod field;
pub mod graph;
pub mod search;

pub use error::{Error, Result};
