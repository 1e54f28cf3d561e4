//! Definition language, object registry and command front-end for
//! `jjconf`.

pub mod commands;
pub mod dsl;
pub mod verdict;

pub use commands::{builtin_document, check, construct, fixture_sources, product, replay, run, CliError};
pub use verdict::{Condition, JsonCounterexample, Verdict};
