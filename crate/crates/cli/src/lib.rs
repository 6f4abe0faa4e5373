//! Text formats and formula syntax for the command-line front end; the
//! binary in `main.rs` wires these to the engine.

pub mod formats;
pub mod formula;
