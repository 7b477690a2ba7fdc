use serde::Serialize;
use serde_json::Value;

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Refuted,
    Unknown,
    Error,
}

/// Machine-readable outcome of one CLI invocation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    /// Only present with `--timing`, so default output stays reproducible.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl Verdict {
    pub fn verified(witness: Value) -> Verdict {
        Verdict { status: Status::Verified, witness: Some(witness), counterexample: None, message: None, timing_ms: None }
    }

    pub fn refuted(counterexample: Value) -> Verdict {
        Verdict {
            status: Status::Refuted,
            witness: None,
            counterexample: Some(counterexample),
            message: None,
            timing_ms: None,
        }
    }

    pub fn unknown(message: impl Into<String>) -> Verdict {
        Verdict { status: Status::Unknown, witness: None, counterexample: None, message: Some(message.into()), timing_ms: None }
    }

    pub fn error(message: impl Into<String>) -> Verdict {
        Verdict { status: Status::Error, witness: None, counterexample: None, message: Some(message.into()), timing_ms: None }
    }

    pub fn from_error(e: &Error) -> Verdict {
        Verdict::error(e.to_string())
    }

    /// `Verified(w)` when `ok`, otherwise `Refuted(w)`.
    pub fn decide(ok: bool, payload: Value) -> Verdict {
        if ok {
            Verdict::verified(payload)
        } else {
            Verdict::refuted(payload)
        }
    }

    pub fn with_message(mut self, m: impl Into<String>) -> Verdict {
        self.message = Some(m.into());
        self
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Verified => 0,
            Status::Refuted => 1,
            Status::Unknown | Status::Error => 2,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("verdicts serialize")
    }
}
