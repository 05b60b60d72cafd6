//! Document formats and command implementations for the `circblock` binary.
//!
//! Every command is a pure function from input documents to an [`Outcome`]:
//! exactly one output document, an exit code and optional diagnostics.

pub mod commands;
pub mod format;

pub use commands::{CliError, Options, Outcome};
pub use format::{Document, Payload};
