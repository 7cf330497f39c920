//! Command implementations behind the `slicckit` binary. Each command returns
//! its stdout text and an exit code; `main` only parses flags and prints.

pub mod commands;
pub mod document;
pub mod report;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable or malformed input.
    #[error("{0}")]
    Input(String),
    /// Well-formed input outside the domain, such as an all-zero state.
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => exit::INPUT,
            CliError::Domain(_) => exit::DOMAIN,
        }
    }
}

pub mod exit {
    pub const OK: u8 = 0;
    pub const CHECK_FAILED: u8 = 1;
    pub const INPUT: u8 = 2;
    pub const DOMAIN: u8 = 3;
}

/// Text for stdout, an exit code, and an optional line for stderr.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub stdout: String,
    pub stderr: Option<String>,
    pub code: u8,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output {
            stdout,
            stderr: None,
            code: exit::OK,
        }
    }
}

pub(crate) fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}
