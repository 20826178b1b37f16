//! Machine-readable run reports.
//!
//! Every subcommand (except CSV-mode sweeps) emits one JSON [`RunReport`] on
//! stdout. Exact integers and rationals are serialized as decimal strings so
//! they never pass through floating point; real-valued summaries are plain
//! JSON numbers.

use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// One complete, reproducible record of a run: re-invoking the echoed
/// command with the same build reproduces every field except `wall_time_s`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    /// Subcommand name.
    pub command: String,
    /// Full command line as invoked.
    pub argv: Vec<String>,
    /// Echo of every parameter that influences the result, after defaulting.
    pub parameters: BTreeMap<String, Value>,
    /// Computed quantities. Exact integers appear as decimal strings,
    /// rationals as `"p/q"` strings, reals as JSON numbers.
    pub results: BTreeMap<String, Value>,
    /// Known reference values the results should be compared against.
    pub references: BTreeMap<String, Value>,
    /// Elapsed wall time of the computation, in seconds.
    pub wall_time_s: f64,
    /// Number of worker threads used.
    pub workers: u64,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            argv: std::env::args().collect(),
            parameters: BTreeMap::new(),
            results: BTreeMap::new(),
            references: BTreeMap::new(),
            wall_time_s: 0.0,
            workers: rayon::current_num_threads() as u64,
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serialization");
        text.push('\n');
        text
    }
}

/// An exact integer as a JSON value: always a decimal string.
pub fn int_value<T: ToString>(value: T) -> Value {
    Value::String(value.to_string())
}

/// An exact rational as a JSON value: `"p/q"`, or `"n"` when the
/// denominator is one.
pub fn rational_value(value: Ratio<i128>) -> Value {
    Value::String(value.to_string())
}

/// A real-valued summary as a JSON number.
pub fn real_value(value: f64) -> Value {
    serde_json::Number::from_f64(value)
        .map(Value::Number)
        .unwrap_or(Value::Null)
}
