//! Library half of the `gyro` binary.
//!
//! Everything the command line does is reachable from here so tests can
//! drive campaigns, reports and SVG rendering in-process: [`campaign`]
//! generates and evaluates random configurations, [`report`] holds the
//! serializable result types (JSON schema 1), [`svg`] draws scenes, and
//! [`run`] wires those into the four subcommands with their exit-code
//! contract (0 pass, 1 assertion failure, 2 input error, 3 generator
//! exhaustion).

pub mod campaign;
pub mod report;
pub mod run;
pub mod svg;
