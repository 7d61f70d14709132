//! Exact lattice geometry for Helly-type problems.
//!
//! Scalars are exact (rationals or elements of a real quadratic field), so
//! every predicate in the crate is decided without rounding.

pub mod arith;
pub mod geometry;
pub mod lattice;
pub mod analysis;
pub mod search;
pub mod constructions;
