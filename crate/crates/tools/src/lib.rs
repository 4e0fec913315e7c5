//! Parsing, table files, seeded sampling, verification suites and the
//! command-line front end for the `endw` crate.

pub mod cli;
pub mod error;
pub mod parse;
pub mod sample;
pub mod suites;
pub mod table;

pub use error::{ParseError, ToolError};
