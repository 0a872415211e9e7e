//! Text formats and subcommands for certifying shifted minimal approximant
//! bases, built on `appbascert-core`.

pub mod commands;
pub mod error;
pub mod format;

pub use error::{Error, Result};
