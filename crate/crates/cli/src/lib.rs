//! Front-end pieces of the `bezout` binary: expression parsing, subcommands
//! and SVG output.

pub mod commands;
pub mod parse;
pub mod plot;
