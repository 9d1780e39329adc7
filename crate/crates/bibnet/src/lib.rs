//! File formats, persistence and the pipeline behind the `bibnet` command.

pub mod config;
pub mod convert;
pub mod export;
pub mod parse;
pub mod pipeline;
pub mod store;

pub use config::RunConfig;
pub use pipeline::Outcome;
