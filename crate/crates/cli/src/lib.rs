//! Command-line front end: input parsing, analysis reports, plot samples and
//! seeded searches.

pub mod app;
pub mod parse;
pub mod report;
pub mod sample;
pub mod search;

pub use app::run;
pub use parse::{parse_system, render, ParseError, SystemSpec};
pub use report::{cmd_analyze, AnalysisReport};
pub use sample::cmd_sample;
pub use search::cmd_search;
