use std::path::Path;
use std::process::ExitCode;

use serde_json::json;

/// A domain error, reported as `{"error": code, "detail": message}` with
/// exit status 1.
#[derive(Debug)]
pub struct CliError {
    pub code: String,
    pub detail: String,
}

impl CliError {
    pub fn new(code: impl Into<String>, detail: impl ToString) -> Self {
        CliError {
            code: code.into(),
            detail: detail.to_string(),
        }
    }

    pub fn file(path: &Path, e: std::io::Error) -> Self {
        CliError::new("FileError", format!("{}: {e}", path.display()))
    }

    pub fn report(&self) -> ExitCode {
        let body = json!({ "error": self.code, "detail": self.detail });
        println!(
            "{}",
            serde_json::to_string_pretty(&body).expect("plain JSON object")
        );
        ExitCode::from(1)
    }
}

macro_rules! from_core {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::new(e.code(), &e)
            }
        })*
    };
}

from_core!(
    logcy_core::IoError,
    logcy_core::FanError,
    logcy_core::PairError,
    logcy_core::ArrangementError,
    logcy_core::FibrationError,
    logcy_core::BottError
);
