//! Configuration, λ-sweeps and self-check reports behind the `jost` binary.

pub mod config;
pub mod report;
pub mod sweep;
