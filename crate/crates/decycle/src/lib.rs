//! IO, file formats, caching, and sweep orchestration around `decycle-core`.

pub mod cache;
pub mod edgelist;
pub mod graph6;
pub mod randgen;
pub mod report;
pub mod suites;

pub use decycle_core as core;
