//! Library side of the `toric-hj` command-line tool: the subcommands, the
//! JSON output document and the SVG renderer. The binary in `main.rs` only
//! parses flags and prints.

pub mod commands;
pub mod doc;
pub mod svg;

pub use commands::{cmd_cone, cmd_hj, cmd_sweep, cmd_wps, CliError, Options, Outcome};
pub use doc::{JsonInt, OutputDocument};
