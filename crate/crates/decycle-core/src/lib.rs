//! Exact decycling (feedback vertex set) and forest numbers for Cartesian
//! products of trees and small graphs.
//!
//! Everything lives on a 64-vertex universe so a vertex set is one machine
//! word. The crate provides:
//!
//! - [`graph`]: bitset graphs, standard families, acyclicity and
//!   connectivity predicates, induced subgraphs;
//! - [`trees`]: enumeration of non-isomorphic trees with canonical codes;
//! - [`product`]: Cartesian products and their layers;
//! - [`matching`]: maximum matching and tree vertex covers;
//! - [`fvs`]: an exact subset oracle and a branch-and-reduce solver for the
//!   decycling number, both returning verifiable certificates;
//! - [`construct`]: explicit decycling sets (star layers, prism covers,
//!   disjoint 4-cycle families) emitted as certificates;
//! - [`checks`]: executable checks for the theorems and formulas this
//!   laboratory verifies, producing self-auditing records.
//!
//! The crate is `no_std` + `alloc`; the default `std` feature adds a
//! wall-clock stopwatch for solver time budgets.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod checks;
pub mod construct;
mod error;
pub mod fvs;
pub mod graph;
pub mod matching;
pub mod product;
pub mod time;
pub mod trees;

pub use error::Error;
pub use graph::{Graph, VertexSet, MAX_VERTICES};
