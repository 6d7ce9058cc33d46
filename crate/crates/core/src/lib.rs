//! Exact verification of left-invariant para-Kähler structures on
//! four-dimensional real Lie algebras, their curvature, and the
//! para-Sasakian structures on one-dimensional central extensions.

pub mod arith;
pub mod lie;
pub mod parakahler;
pub mod curvature;
pub mod extension;
pub mod catalog;
pub mod cli;
