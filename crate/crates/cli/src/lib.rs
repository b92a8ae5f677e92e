//! Library side of the `conekit` command-line tool.
//!
//! Every command returns a [`Report`]: the JSON document to print and the
//! process exit code. Exit codes are part of the interface:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success, certificate found, criterion holds |
//! | 1 | input error (I/O, JSON, schema, dimensions, face limit) |
//! | 2 | point is not a member of the set |
//! | 3 | not stationary, no certificate, certificate rejected, self-test failure |
//! | 4 | the multiplier constancy condition is violated |
//! | 5 | internal error |

pub mod commands;
pub mod format;
pub mod selftest;

use serde::Serialize;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NOT_MEMBER: i32 = 2;
pub const EXIT_REJECTED: i32 = 3;
pub const EXIT_CONDITION: i32 = 4;
pub const EXIT_INTERNAL: i32 = 5;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error(transparent)]
    Core(#[from] conekit::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use conekit::Error as E;
        match self {
            CliError::Io { .. } | CliError::Json(_) | CliError::Schema(_) => EXIT_INPUT,
            CliError::Core(e) => match e {
                E::NotMember | E::NotTangent | E::NotCriticalDirection | E::NotRegularNormal => EXIT_NOT_MEMBER,
                E::NotBStationary | E::NotCritical | E::NotNormal => EXIT_REJECTED,
                E::ConstancyViolated => EXIT_CONDITION,
                E::Internal(_) | E::InternalNonTermination { .. } | E::UnboundedMultiplierLp => EXIT_INTERNAL,
                E::DimensionMismatch { .. } | E::Invalid(_) | E::NonpositiveParameter | E::TooManyFaces { .. } => {
                    EXIT_INPUT
                }
            },
        }
    }

    /// Stable machine-readable tag.
    pub fn code(&self) -> &'static str {
        use conekit::Error as E;
        match self {
            CliError::Io { .. } => "io",
            CliError::Json(_) => "json",
            CliError::Schema(_) => "schema",
            CliError::Core(e) => match e {
                E::DimensionMismatch { .. } => "dimension_mismatch",
                E::NotMember => "not_member",
                E::NotRegularNormal => "not_regular_normal",
                E::NotBStationary => "not_b_stationary",
                E::NotCritical => "not_critical",
                E::InternalNonTermination { .. } => "internal_non_termination",
                E::Internal(_) => "internal",
                E::NotNormal => "not_normal",
                E::NotCriticalDirection => "not_critical_direction",
                E::UnboundedMultiplierLp => "unbounded_multiplier_lp",
                E::ConstancyViolated => "constancy_violated",
                E::NotTangent => "not_tangent",
                E::NonpositiveParameter => "nonpositive_parameter",
                E::TooManyFaces { .. } => "too_many_faces",
                E::Invalid(_) => "invalid",
            },
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "error": self.code(),
            "message": self.to_string(),
            "exit_code": self.exit_code(),
        })
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Json(e.to_string())
    }
}

/// Output of a command: a JSON document for stdout (or `--output`), an
/// optional JSON error object for stderr, and the exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub body: serde_json::Value,
    pub error: Option<serde_json::Value>,
    pub exit_code: i32,
}

impl Report {
    pub fn ok(body: impl Serialize) -> Result<Self, CliError> {
        Ok(Report {
            body: serde_json::to_value(body)?,
            error: None,
            exit_code: EXIT_OK,
        })
    }

    pub fn with_code(body: impl Serialize, exit_code: i32, error: Option<serde_json::Value>) -> Result<Self, CliError> {
        Ok(Report {
            body: serde_json::to_value(body)?,
            error,
            exit_code,
        })
    }

    pub fn from_error(e: &CliError) -> Self {
        Report {
            body: serde_json::Value::Null,
            error: Some(e.to_json()),
            exit_code: e.exit_code(),
        }
    }

    /// Pretty-printed body with a trailing newline; empty for a null body.
    pub fn render(&self) -> String {
        if self.body.is_null() {
            return String::new();
        }
        let mut s = serde_json::to_string_pretty(&self.body).expect("values always serialize");
        s.push('\n');
        s
    }
}
