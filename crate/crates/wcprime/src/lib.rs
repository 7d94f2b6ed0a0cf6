//! Front end for `wcprime-core`: the instance grammar, JSON and markdown
//! reports, a parallel sweep runner and the `wcprime` command.

pub mod cli;
pub mod parse;
pub mod report;
pub mod runner;

pub use parse::{load_instance, parse_instance, ParseError, SpecError};
pub use runner::run_suite_parallel;
