use serde::Serialize;
use serde_json::Value;

use hyperhom::Error;

pub const TOOL: &str = "hyperhom";

/// One JSON document per invocation; keys are emitted in field order.
#[derive(Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: Vec<String>,
    pub status: &'static str,
    pub payload: Value,
    pub timing_ms: f64,
}

/// Failure of a command, split by exit code.
#[derive(Debug)]
pub enum Failure {
    /// Exit 1: bad input, unmet precondition, guard refusal.
    Input(String),
    /// Exit 2: a broken internal invariant.
    Internal(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Internal(_) => 2,
        }
    }

    pub fn payload(&self) -> Value {
        let (kind, message) = match self {
            Failure::Input(m) => ("input", m),
            Failure::Internal(m) => ("internal", m),
        };
        serde_json::json!({ "kind": kind, "message": message })
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::InvalidArgument(_) | Error::Precondition(_) | Error::CapExceeded { .. } => {
                Failure::Input(e.to_string())
            }
            Error::Singular | Error::Inconsistent(_) | Error::Internal(_) => Failure::Internal(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

/// What a successful command hands back: status, payload, and a line for stderr.
pub struct Outcome {
    pub status: &'static str,
    pub payload: Value,
    pub summary: String,
}
