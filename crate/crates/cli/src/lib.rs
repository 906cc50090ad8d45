//! Report format and certification run for the `volcert` command-line tool.

pub mod report;
pub mod verify;
