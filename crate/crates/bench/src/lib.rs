//! Instance loading, experiment orchestration and reporting for the `wvcp`
//! command-line tool.

pub mod config;
pub mod experiment;
pub mod instance;
pub mod sweep;
pub mod validate;
