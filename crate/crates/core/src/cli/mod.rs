//! The `gbcat` command-line tool and its text document formats.

mod dispatch;
pub mod format;

pub use dispatch::{run, EXIT_OK, EXIT_USAGE, EXIT_VERIFICATION_FAILED};
