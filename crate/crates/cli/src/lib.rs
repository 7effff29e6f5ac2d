//! Standard-library companion to `quditbell-core`: strategy and phase file
//! formats, the embedded table of expected values, parallel drivers built on
//! rayon, the reproduction report and the command-line front end.
//!
//! Worker pools are set up by the caller (see [`commands::with_workers`]);
//! every driver returns the same result for any number of workers.

pub mod bounds;
pub mod commands;
pub mod error;
pub mod fixtures;
pub mod formats;
pub mod quantum;
pub mod report;
pub mod tightness;

pub use error::{Error, Result};
