//! Text formats: the line-based knowledge-base format, job configuration,
//! the expression surface syntax and result reports.

mod config;
mod kb_format;
mod report;
mod syntax;

use thiserror::Error;

use crate::kb::KbError;

pub use config::{parse_config, ConfigError, JobConfig};
pub use kb_format::{parse_kb, serialize_kb};
pub use report::{parse_report, ReportRow, ResultReport, Timings, REPORT_HEADER};
pub use syntax::{parse_expression, render_solution};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Semantic {
        line: usize,
        #[source]
        source: KbError,
    },
}

impl ParseError {
    pub(crate) fn syntax(line: usize, message: impl Into<String>) -> Self {
        ParseError::Syntax {
            line,
            message: message.into(),
        }
    }

    /// Semantic errors (undeclared or duplicate entities, unsupported
    /// axioms) as opposed to malformed text.
    pub fn is_semantic(&self) -> bool {
        matches!(self, ParseError::Semantic { .. })
    }
}

/// Strips a `#` comment and surrounding whitespace.
pub(crate) fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => line[..i].trim(),
        None => line.trim(),
    }
}
