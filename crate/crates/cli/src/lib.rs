//! Experiment registry and command line front end.
//!
//! Each experiment is a pure function of its configuration: identical
//! configs produce byte-identical outputs. Randomness comes from a ChaCha
//! stream derived from the config seed and the sample index, so samples can
//! run in parallel while aggregation stays deterministic.

pub mod config;
pub mod experiments;
pub mod report;
pub mod sampling;

#[derive(Debug, thiserror::Error)]
pub enum AppError {
    /// Invalid configuration or arguments; maps to exit code 2.
    #[error("config error: {0}")]
    Config(String),
    /// Failure while running; maps to exit code 1.
    #[error("{0}")]
    Runtime(String),
}

impl AppError {
    pub fn config(msg: impl Into<String>) -> Self {
        AppError::Config(msg.into())
    }

    pub fn runtime(msg: impl Into<String>) -> Self {
        AppError::Runtime(msg.into())
    }
}
