//! JSON documents, the `grassmann` command-line tool and its bundled worked
//! examples, on top of `grassmann-core`.

pub mod commands;
pub mod document;
pub mod error;
pub mod examples;

pub use document::{Entry, InputDocument};
pub use error::{exit, CliError, Result};
