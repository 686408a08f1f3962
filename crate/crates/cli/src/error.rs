use std::fmt;

use serde_json::{json, Value};

use crate::ast::Span;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub span: Span,
    pub message: String,
    /// Sorted, deduplicated descriptions of acceptable tokens.
    pub expected: Vec<String>,
}

impl ParseError {
    pub fn new(span: Span, message: &str, mut expected: Vec<String>) -> Self {
        expected.sort();
        expected.dedup();
        ParseError {
            span,
            message: message.to_string(),
            expected,
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.span, self.message)?;
        if !self.expected.is_empty() {
            write!(f, "; expected {}", self.expected.join(" or "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    NameError,
    TypeError,
    FileError,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckError {
    pub kind: CheckKind,
    pub span: Span,
    pub message: String,
}

impl CheckError {
    pub fn name(span: Span, message: impl Into<String>) -> Self {
        CheckError {
            kind: CheckKind::NameError,
            span,
            message: message.into(),
        }
    }

    pub fn ty(span: Span, message: impl Into<String>) -> Self {
        CheckError {
            kind: CheckKind::TypeError,
            span,
            message: message.into(),
        }
    }
}

impl fmt::Display for CheckError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} at {}: {}", self.kind, self.span, self.message)
    }
}

/// Everything that stops a run, with its exit code.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Failure {
    #[error("usage: {0}")]
    Usage(String),
    #[error("parse error at {0}")]
    Parse(ParseError),
    #[error("{0}")]
    Check(CheckError),
    #[error("engine error at {span}: {message}")]
    Engine { span: Span, message: String },
    #[error("size limit at {span}: {message}")]
    SizeLimit { span: Span, message: String },
}

impl Failure {
    pub fn engine(span: Span, e: lhott_core::Error) -> Self {
        match e {
            lhott_core::Error::SizeLimit { .. } => Failure::SizeLimit {
                span,
                message: e.to_string(),
            },
            _ => Failure::Engine {
                span,
                message: e.to_string(),
            },
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Parse(_) => 2,
            Failure::Check(_) => 3,
            Failure::Engine { .. } => 4,
            Failure::SizeLimit { .. } => 5,
        }
    }

    pub fn to_json(&self) -> Value {
        let pos = |s: &Span| json!({"line": s.line, "column": s.column});
        match self {
            Failure::Usage(m) => json!({"error": "usage", "message": m}),
            Failure::Parse(p) => json!({
                "error": "parse",
                "position": pos(&p.span),
                "message": p.message,
                "expected": p.expected,
            }),
            Failure::Check(c) => json!({
                "error": format!("{:?}", c.kind),
                "position": pos(&c.span),
                "message": c.message,
            }),
            Failure::Engine { span, message } => json!({"error": "engine", "position": pos(span), "message": message}),
            Failure::SizeLimit { span, message } => {
                json!({"error": "size-limit", "position": pos(span), "message": message})
            }
        }
    }
}
