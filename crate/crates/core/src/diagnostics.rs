//! Diagnostic codes, source positions and rendering.
//!
//! Codes are part of the public contract: tools match on them, so a code is
//! never renumbered once released. `diagnostics.registry` at the crate root
//! lists every code and is checked by the test suite.

use std::fmt;

use serde_json::{json, Value};

/// A 1-based line/column position. Columns count characters, not bytes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Position {
    pub line: u32,
    pub col: u32,
}

impl Position {
    pub const fn new(line: u32, col: u32) -> Self {
        Position { line, col }
    }
}

/// Half-open region of the input text.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Span {
    pub start: Position,
    pub end: Position,
}

impl Span {
    pub const fn new(start: Position, end: Position) -> Self {
        Span { start, end }
    }

    pub fn point(pos: Position) -> Self {
        Span {
            start: pos,
            end: pos,
        }
    }

    /// Smallest span covering both.
    pub fn to(self, other: Span) -> Span {
        Span {
            start: self.start.min(other.start),
            end: self.end.max(other.end),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Error,
    Warning,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        })
    }
}

macro_rules! codes {
    ($($variant:ident = $text:literal, $sev:ident;)*) => {
        /// Stable diagnostic codes.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum Code {
            $($variant,)*
        }

        impl Code {
            pub const ALL: &'static [Code] = &[$(Code::$variant,)*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(Code::$variant => $text,)*
                }
            }

            pub fn name(self) -> &'static str {
                match self {
                    $(Code::$variant => stringify!($variant),)*
                }
            }

            pub fn severity(self) -> Severity {
                match self {
                    $(Code::$variant => Severity::$sev,)*
                }
            }
        }
    };
}

codes! {
    UnknownReference = "E001", Error;
    TypeMismatch = "E002", Error;
    LayeringViolation = "E003", Error;
    CycleDetected = "E004", Error;
    DuplicateName = "E005", Error;
    EmptyDevice = "E006", Error;
    EmptyActionInterface = "E007", Error;
    DuplicateContractEntry = "E008", Error;
    EmissionArity = "E009", Error;
    SyntaxError = "E010", Error;
    UnterminatedBlock = "E011", Error;
    ControllerDataRequirement = "E012", Error;
    HeterogeneousActivation = "E013", Error;
    InvalidEnum = "E014", Error;
    SignatureDrift = "W020", Warning;
    UnreachableElement = "W030", Warning;
    UnusedSource = "W031", Warning;
    IoError = "E040", Error;
    GenerationConflict = "E041", Error;
    StateLimitExceeded = "E050", Error;
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub code: Code,
    pub severity: Severity,
    pub message: String,
    pub span: Span,
    pub file: Option<String>,
}

impl Diagnostic {
    pub fn new(code: Code, span: Span, message: impl Into<String>) -> Self {
        Diagnostic {
            code,
            severity: code.severity(),
            message: message.into(),
            span,
            file: None,
        }
    }

    pub fn in_file(mut self, file: impl Into<String>) -> Self {
        self.file = Some(file.into());
        self
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }

    pub fn to_json(&self) -> Value {
        json!({
            "code": self.code.as_str(),
            "severity": self.severity.to_string(),
            "message": self.message,
            "file": self.file.as_deref().unwrap_or("<input>"),
            "line": self.span.start.line,
            "col": self.span.start.col,
            "endLine": self.span.end.line,
            "endCol": self.span.end.col,
        })
    }
}

/// `CODE severity file:line:col message`
impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {}:{}:{} {}",
            self.code,
            self.severity,
            self.file.as_deref().unwrap_or("<input>"),
            self.span.start.line,
            self.span.start.col,
            self.message
        )
    }
}

pub fn has_errors(diags: &[Diagnostic]) -> bool {
    diags.iter().any(Diagnostic::is_error)
}

/// Sorts by position, then code, so reports are stable regardless of which
/// pass produced a diagnostic first.
pub fn sort_diagnostics(diags: &mut [Diagnostic]) {
    diags.sort_by(|a, b| {
        (a.span.start, a.code, &a.message).cmp(&(b.span.start, b.code, &b.message))
    });
}
