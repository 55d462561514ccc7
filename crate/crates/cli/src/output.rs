//! Report emission, error rendering and exit codes.

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use serde_json::{json, Value};

use jetspace::Error;

/// Exit statuses. Each failure path has its own code.
pub mod code {
    pub const SUCCESS: u8 = 0;
    /// The computation finished and a verification failed.
    pub const VERIFICATION_FAILED: u8 = 1;
    /// Unreadable or malformed input, including bad flags.
    pub const INPUT: u8 = 2;
    pub const BUDGET: u8 = 3;
    /// The input is well formed but violates a hypothesis of the operation.
    pub const HYPOTHESIS: u8 = 4;
    /// An exact computation could not be completed, for example a fit
    /// that does not interpolate to integers.
    pub const COMPUTATION: u8 = 5;
    /// The report could not be written.
    pub const OUTPUT: u8 = 6;
}

pub struct Outcome {
    value: Value,
    passed: bool,
}

impl Outcome {
    pub fn ok(value: Value) -> Self {
        Outcome { value, passed: true }
    }

    pub fn verdict(value: Value, passed: bool) -> Self {
        Outcome { value, passed }
    }
}

#[derive(Debug)]
pub struct Failure {
    code: u8,
    body: Value,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure {
            code: code::INPUT,
            body: json!({ "kind": "invalid-input", "message": message.into() }),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let message = e.to_string();
        let (code, kind, extra) = match &e {
            Error::Parse { line, column, .. } => (code::INPUT, "parse", json!({ "line": line, "column": column })),
            Error::InvalidInput(_)
            | Error::ArityMismatch { .. }
            | Error::FieldMismatch { .. }
            | Error::ModulusMismatch { .. }
            | Error::MissingClasses => (code::INPUT, "invalid-input", Value::Null),
            Error::BudgetExceeded { budget } => (code::BUDGET, "budget-exceeded", json!({ "budget": budget })),
            Error::HypothesisViolated(h) => (code::HYPOTHESIS, "hypothesis-violated", json!({ "hypothesis": h })),
            Error::NotAUnit
            | Error::DivisionByZero
            | Error::ConsistencyCheck(_)
            | Error::NonIntegral(_)
            | Error::InconsistentFit { .. }
            | Error::InterpolationFailure(_)
            | Error::IndeterminateForm(_)
            | Error::NonLinearDenominator => (code::COMPUTATION, "computation-failed", Value::Null),
        };
        let mut body = json!({ "kind": kind, "message": message });
        if let Value::Object(fields) = extra {
            body.as_object_mut().expect("object").extend(fields);
        }
        Failure { code, body }
    }
}

/// A decimal integer as a JSON number when it fits in 64 bits, otherwise
/// as a string so that no precision is lost.
pub fn integer(digits: &str) -> Value {
    if let Ok(v) = digits.parse::<i64>() {
        json!(v)
    } else if let Ok(v) = digits.parse::<u64>() {
        json!(v)
    } else {
        json!(digits)
    }
}

fn render(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values serialize");
    s.push('\n');
    s
}

/// Writes through a temporary file in the destination directory, so the
/// destination either holds the full report or is untouched.
fn write_atomically(path: &Path, text: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(text.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

pub fn finish(result: Result<Outcome, Failure>, output: Option<&Path>) -> ExitCode {
    let outcome = match result {
        Ok(o) => o,
        Err(f) => {
            eprint!("{}", render(&json!({ "error": f.body })));
            return ExitCode::from(f.code);
        }
    };
    let text = render(&outcome.value);
    match output {
        None => print!("{text}"),
        Some(path) => {
            if let Err(e) = write_atomically(path, &text) {
                let body = json!({ "kind": "output", "message": format!("cannot write {}: {e}", path.display()) });
                eprint!("{}", render(&json!({ "error": body })));
                return ExitCode::from(code::OUTPUT);
            }
        }
    }
    ExitCode::from(if outcome.passed {
        code::SUCCESS
    } else {
        code::VERIFICATION_FAILED
    })
}
