//! Command-line front end for monostab: argument parsing, report documents,
//! and the reproduction suite.

pub mod args;
pub mod report;
pub mod run;
pub mod suite;
