//! Command-line front end for `kravchuk-core`.

mod app;
pub mod parse;

pub use app::{run, EXIT_OK, EXIT_REFUTED, EXIT_USAGE};
