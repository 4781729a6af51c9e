//! File formats, benchmark harness and command line for cable tree wiring
//! instances. The model and solvers live in `ctw_core`.

pub mod bench;
pub mod cli;
pub mod engine;
pub mod io;
pub mod suite;

pub use ctw_core as core;
