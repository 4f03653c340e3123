//! Command-line verification scenarios on top of `chowline-core`: JSON
//! configs and formats, a parallel Monte Carlo runner, the named checks,
//! and report writers.

pub mod checks;
pub mod cli;
pub mod commands;
pub mod config;
pub mod describe;
pub mod formats;
pub mod report;
pub mod runner;
