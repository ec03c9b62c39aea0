//! Library backing the `dflex` command-line tool: model-file parsing,
//! report rendering, SVG plotting, and oracle-backed verification.
//!
//! Everything here is deterministic: identical inputs produce byte-identical
//! reports and plots.

pub mod error;
pub mod model_file;
pub mod report;
pub mod svg;
pub mod verify;
