//! IO companion to `gmcr-core`: the `.gmcr` model file format, report
//! rendering, and the `gmcr` command line.

pub mod cli;
pub mod format;
pub mod render;

pub use cli::run;
pub use format::{parse_model, parse_model_with_policy, serialize_model, ParseError, PolicyKind};
pub use render::{render_comparison, render_report, OutputFormat};
