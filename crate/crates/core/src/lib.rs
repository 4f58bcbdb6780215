//! Exact polyhedral toolkit for toric schemes over rank-one valuation rings.

pub mod admissible;
pub mod classify;
pub mod cli;
pub mod fans;
pub mod ordfield;
pub mod polyhedra;
pub mod projtoric;
