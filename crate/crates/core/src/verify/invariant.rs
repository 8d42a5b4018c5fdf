//! Interaction invariants.
//!
//! ```text
//! never EV
//! EV precedes EV
//! EV leadsto EV
//! EV := publish(NAME) | publish(Device.source)
//!     | activate(NAME) | activate(*)
//!     | invoke(NAME, Interface.method) | invoke(*, Interface.method)
//! ```
//!
//! One invariant per line, `#` starts a comment. Patterns are evaluated over
//! the finite trace of a single stimulus, from `PublishSource` to `Quiesce`.

use std::fmt;

use super::ts::Event;
use crate::diagnostics::{Code, Diagnostic, Position, Span};
use crate::model::{ArchitectureModel, ControllerId, MethodRef, OperatorId, Publisher};
use crate::syntax::{tokenize, Token, TokenKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EventPattern {
    /// A source publication or a context `Publish`.
    Publish(Publisher),
    /// `None` matches any operator.
    Activate(Option<OperatorId>),
    Invoke(Option<ControllerId>, MethodRef),
}

impl EventPattern {
    pub fn matches(self, event: Event) -> bool {
        match (self, event) {
            (EventPattern::Publish(Publisher::Source(s)), Event::PublishSource(t)) => s == t,
            (EventPattern::Publish(Publisher::Context(c)), Event::Publish(d)) => c == d,
            (EventPattern::Activate(None), Event::Activate(_)) => true,
            (EventPattern::Activate(Some(op)), Event::Activate(o)) => op == o,
            (EventPattern::Invoke(c, m), Event::InvokeAction(d, n)) => {
                m == n && c.is_none_or(|c| c == d)
            }
            _ => false,
        }
    }

    pub fn display(self, model: &ArchitectureModel) -> String {
        match self {
            EventPattern::Publish(p) => format!("publish({})", model.publisher_name(p)),
            EventPattern::Activate(None) => "activate(*)".into(),
            EventPattern::Activate(Some(op)) => format!("activate({})", model.operator_name(op)),
            EventPattern::Invoke(c, m) => format!(
                "invoke({}, {})",
                c.map_or("*", |c| model.controller(c).name.as_str()),
                model.method_name(m)
            ),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pattern {
    /// G ¬e
    Never(EventPattern),
    /// ¬b W a
    Precedes(EventPattern, EventPattern),
    /// G(a → F b), with F bounded by `Quiesce`
    LeadsTo(EventPattern, EventPattern),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantSpec {
    pub pattern: Pattern,
    /// The invariant as written, without comment or surrounding blanks.
    pub text: String,
    pub span: Span,
}

impl fmt::Display for InvariantSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

struct LineParser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    model: &'a ArchitectureModel,
}

type PResult<T> = Result<T, Diagnostic>;

impl LineParser<'_> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.kind != TokenKind::Eof {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> Diagnostic {
        let t = self.peek();
        Diagnostic::new(
            Code::SyntaxError,
            t.span,
            format!("expected {expected}, found {}", t.kind.describe()),
        )
    }

    fn expect(&mut self, kind: TokenKind, what: &str) -> PResult<Token> {
        if self.peek().kind == kind {
            Ok(self.bump())
        } else {
            Err(self.error(what))
        }
    }

    fn ident(&mut self, what: &str) -> PResult<(String, Span)> {
        match &self.peek().kind {
            TokenKind::Ident(name) => {
                let name = name.clone();
                Ok((name, self.bump().span))
            }
            _ => Err(self.error(what)),
        }
    }

    fn keyword(&self) -> Option<&str> {
        match &self.peek().kind {
            TokenKind::Ident(s) => Some(s),
            _ => None,
        }
    }

    /// `NAME` or `NAME.NAME`
    fn dotted(&mut self, what: &str) -> PResult<(String, Option<String>, Span)> {
        let (head, span) = self.ident(what)?;
        if self.peek().kind == TokenKind::Dot {
            self.bump();
            let (member, end) = self.ident("a member name after `.`")?;
            Ok((head, Some(member), span.to(end)))
        } else {
            Ok((head, None, span))
        }
    }

    fn unknown(span: Span, message: String) -> Diagnostic {
        Diagnostic::new(Code::UnknownReference, span, message)
    }

    fn event(&mut self) -> PResult<EventPattern> {
        let (kw, kw_span) = self.ident("`publish`, `activate` or `invoke`")?;
        self.expect(TokenKind::LParen, "`(`")?;
        let pattern = match kw.as_str() {
            "publish" => {
                let (head, member, span) = self.dotted("a source or context name")?;
                let found = match &member {
                    Some(m) => self.model.find_source(&head, m).map(Publisher::Source),
                    None => self
                        .model
                        .find_context(&head)
                        .map(Publisher::Context)
                        .or_else(|| {
                            self.model
                                .find_unqualified_source(&head)
                                .map(Publisher::Source)
                        }),
                };
                let name = member.map_or(head.clone(), |m| format!("{head}.{m}"));
                EventPattern::Publish(found.ok_or_else(|| {
                    Self::unknown(span, format!("`{name}` is not a source or context"))
                })?)
            }
            "activate" => {
                if self.peek().kind == TokenKind::Star {
                    self.bump();
                    EventPattern::Activate(None)
                } else {
                    let (name, span) = self.ident("an operator name or `*`")?;
                    EventPattern::Activate(Some(self.model.find_operator(&name).ok_or_else(
                        || Self::unknown(span, format!("`{name}` is not an operator")),
                    )?))
                }
            }
            "invoke" => {
                let controller = if self.peek().kind == TokenKind::Star {
                    self.bump();
                    None
                } else {
                    let (name, span) = self.ident("a controller name or `*`")?;
                    Some(self.model.find_controller(&name).ok_or_else(|| {
                        Self::unknown(span, format!("`{name}` is not a controller"))
                    })?)
                };
                self.expect(TokenKind::Comma, "`,`")?;
                let (iface, member, span) = self.dotted("`Interface.method`")?;
                let Some(method) = member else {
                    return Err(Diagnostic::new(
                        Code::SyntaxError,
                        span,
                        "expected `Interface.method`",
                    ));
                };
                let m = self.model.find_method(&iface, &method).ok_or_else(|| {
                    Self::unknown(span, format!("`{iface}.{method}` is not an action method"))
                })?;
                EventPattern::Invoke(controller, m)
            }
            _ => {
                return Err(Diagnostic::new(
                    Code::SyntaxError,
                    kw_span,
                    format!("expected `publish`, `activate` or `invoke`, found `{kw}`"),
                ))
            }
        };
        self.expect(TokenKind::RParen, "`)`")?;
        Ok(pattern)
    }

    fn invariant(&mut self) -> PResult<Pattern> {
        let pattern = if self.keyword() == Some("never") {
            self.bump();
            Pattern::Never(self.event()?)
        } else {
            let a = self.event()?;
            match self.keyword() {
                Some("precedes") => {
                    self.bump();
                    Pattern::Precedes(a, self.event()?)
                }
                Some("leadsto") => {
                    self.bump();
                    Pattern::LeadsTo(a, self.event()?)
                }
                _ => return Err(self.error("`precedes` or `leadsto`")),
            }
        };
        if self.peek().kind != TokenKind::Eof {
            return Err(self.error("end of line"));
        }
        Ok(pattern)
    }
}

fn shift(mut span: Span, line: u32) -> Span {
    span.start.line = line;
    span.end.line = line;
    span
}

/// Parses an invariant file against `model`. Every line is parsed, and all
/// errors are returned together.
pub fn parse_invariants(
    text: &str,
    model: &ArchitectureModel,
) -> Result<Vec<InvariantSpec>, Vec<Diagnostic>> {
    let mut specs = Vec::new();
    let mut errors = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i as u32 + 1;
        let content = line.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let (tokens, mut lex_errors) = tokenize(content, "#");
        if !lex_errors.is_empty() {
            errors.extend(lex_errors.drain(..).map(|mut d| {
                d.span = shift(d.span, lineno);
                d
            }));
            continue;
        }
        let mut p = LineParser {
            tokens,
            pos: 0,
            model,
        };
        match p.invariant() {
            Ok(pattern) => {
                let lead = content.len() - content.trim_start().len();
                let text = content.trim().to_string();
                let start = Position::new(lineno, content[..lead].chars().count() as u32 + 1);
                let end = Position::new(lineno, start.col + text.chars().count() as u32);
                specs.push(InvariantSpec {
                    pattern,
                    text,
                    span: Span::new(start, end),
                });
            }
            Err(mut d) => {
                d.span = shift(d.span, lineno);
                errors.push(d);
            }
        }
    }
    if errors.is_empty() {
        Ok(specs)
    } else {
        Err(errors)
    }
}
