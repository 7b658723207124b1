//! Verification harness for `stonemeasure`: model configs, brute-force
//! oracles, the named suites and the JSON report.

pub mod config;
pub mod models;
pub mod oracle;
pub mod report;
pub mod runner;
pub mod suites;
