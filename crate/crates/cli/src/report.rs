//! JSON report envelope and exit codes.

use std::collections::BTreeMap;

use dgolod::Error;
use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FALSE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_UNSUPPORTED: u8 = 3;
pub const EXIT_RESOURCE: u8 = 4;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub details: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, details: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            details: details.into(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorInfo {
    pub kind: String,
    pub message: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub checks: Vec<Check>,
    pub timings: BTreeMap<String, f64>,
    pub seed: u64,
    pub exit_code: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
}

/// What a command hands back to the dispatcher.
#[derive(Debug, Default)]
pub struct Outcome {
    pub inputs: Value,
    pub results: Value,
    pub checks: Vec<Check>,
    pub text: String,
    /// Exit code when nothing failed; checks that fail force `EXIT_FALSE`.
    pub exit: u8,
}

impl Outcome {
    pub fn exit_code(&self) -> u8 {
        if self.exit != EXIT_OK {
            self.exit
        } else if self.checks.iter().any(|c| !c.passed) {
            EXIT_FALSE
        } else {
            EXIT_OK
        }
    }
}

/// Failures that mean "a check evaluated to false" rather than bad input.
pub fn is_check_failure(e: &Error) -> bool {
    matches!(
        e,
        Error::IdentityViolation(_)
            | Error::MembershipFailure(_)
            | Error::NonMinimalResolution { .. }
            | Error::InvalidComplex(_)
            | Error::CrossCheckMismatch(_)
    )
}

pub fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Unsupported(_) => EXIT_UNSUPPORTED,
        Error::ResourceLimit(_) | Error::BoundTooSmall(_) => EXIT_RESOURCE,
        e if is_check_failure(e) => EXIT_FALSE,
        _ => EXIT_USAGE,
    }
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidField(_) => "invalid_field",
        Error::InvalidRing(_) => "invalid_ring",
        Error::RingMismatch => "ring_mismatch",
        Error::NotDivisible { .. } => "not_divisible",
        Error::NonProperElement(_) => "non_proper_element",
        Error::Precondition(_) => "precondition",
        Error::ResourceLimit(_) => "resource_limit",
        Error::NonMinimalResolution { .. } => "non_minimal_resolution",
        Error::CrossCheckMismatch(_) => "cross_check_mismatch",
        Error::IdentityViolation(_) => "identity_violation",
        Error::MembershipFailure(_) => "membership_failure",
        Error::InvalidComplex(_) => "invalid_complex",
        Error::BoundTooSmall(_) => "bound_too_small",
        Error::Unsupported(_) => "unsupported",
        Error::Parse { .. } => "parse",
    }
}
