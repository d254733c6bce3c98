//! IO companion for `kerndet-core`: JSON instance files, identity-suite
//! execution with timing, and the benchmark harness. The `kerndet` binary
//! is a thin wrapper over these modules.

pub mod bench;
pub mod cli;
pub mod instance;
pub mod suite;
