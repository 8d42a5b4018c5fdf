//! Recursive-descent parser for architecture descriptions.
//!
//! Recovery works at two levels. Inside a block, a malformed clause is
//! skipped up to the next clause keyword (or `;` for device and interface
//! members). At the top level, anything that does not start a declaration
//! is skipped up to the next declaration keyword. Both strategies keep the
//! parser going so one run reports every independent error.

use super::ast::*;
use super::lexer::{tokenize, Token, TokenKind};
use crate::diagnostics::{sort_diagnostics, Code, Diagnostic, Span};
use crate::model::DataType;

pub const KEYWORDS: &[&str] = &[
    "device",
    "source",
    "as",
    "provides",
    "actioninterface",
    "method",
    "context",
    "when",
    "provided",
    "or",
    "get",
    "always",
    "maybe",
    "publish",
    "controller",
    "do",
    "on",
];

const TOP_LEVEL: &[&str] = &["device", "actioninterface", "context", "controller"];
const CLAUSES: &[&str] = &["when", "get", "always", "maybe", "do"];

pub fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s)
}

/// Parses `text` into a raw model. The model is complete when no
/// error-severity diagnostic is returned.
pub fn parse(text: &str) -> (RawModel, Vec<Diagnostic>) {
    let (tokens, mut diags) = tokenize(text, "//");
    let mut parser = Parser {
        tokens,
        pos: 0,
        diags: Vec::new(),
    };
    let model = parser.model();
    diags.append(&mut parser.diags);
    sort_diagnostics(&mut diags);
    (model, diags)
}

/// Marker for "a diagnostic was recorded, resynchronise".
struct Fail;

type PResult<T> = Result<T, Fail>;

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    diags: Vec<Diagnostic>,
}

enum BlockEnd {
    Closed,
    Open,
    Unterminated,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let tok = self.tokens[self.pos].clone();
        if tok.kind != TokenKind::Eof {
            self.pos += 1;
        }
        tok
    }

    fn at_word(&self, word: &str) -> bool {
        matches!(&self.peek().kind, TokenKind::Ident(s) if s == word)
    }

    fn at_any_word(&self, words: &[&str]) -> bool {
        matches!(&self.peek().kind, TokenKind::Ident(s) if words.contains(&s.as_str()))
    }

    fn expected(&mut self, expected: &[&str]) -> Fail {
        let tok = self.peek().clone();
        let list = expected
            .iter()
            .map(|e| format!("`{e}`"))
            .collect::<Vec<_>>();
        let what = if list.len() == 1 {
            list[0].clone()
        } else {
            format!("one of {}", list.join(", "))
        };
        self.diags.push(Diagnostic::new(
            Code::SyntaxError,
            tok.span,
            format!("expected {what}, found {}", tok.kind.describe()),
        ));
        Fail
    }

    fn word(&mut self, word: &str) -> PResult<Span> {
        if self.at_word(word) {
            Ok(self.bump().span)
        } else {
            Err(self.expected(&[word]))
        }
    }

    fn punct(&mut self, kind: TokenKind, text: &str) -> PResult<Span> {
        if self.peek().kind == kind {
            Ok(self.bump().span)
        } else {
            Err(self.expected(&[text]))
        }
    }

    fn ident(&mut self) -> PResult<Ident> {
        let tok = self.peek().clone();
        match tok.kind {
            TokenKind::Ident(name) if !is_keyword(&name) => {
                self.bump();
                Ok(Ident::new(name, tok.span))
            }
            TokenKind::Ident(name) => {
                self.diags.push(Diagnostic::new(
                    Code::SyntaxError,
                    tok.span,
                    format!("expected identifier, found keyword `{name}`"),
                ));
                Err(Fail)
            }
            other => {
                self.diags.push(Diagnostic::new(
                    Code::SyntaxError,
                    tok.span,
                    format!("expected identifier, found {}", other.describe()),
                ));
                Err(Fail)
            }
        }
    }

    fn type_ref(&mut self) -> PResult<TypeRef> {
        let id = self.ident()?;
        let ty = match id.name.as_str() {
            "Bool" => DataType::Bool,
            "Int" => DataType::Int,
            _ => DataType::Opaque(id.name),
        };
        Ok(TypeRef { ty, span: id.span })
    }

    fn reference(&mut self) -> PResult<Ref> {
        let head = self.ident()?;
        let member = if self.peek().kind == TokenKind::Dot {
            self.bump();
            Some(self.ident()?)
        } else {
            None
        };
        Ok(Ref { head, member })
    }

    fn skip_to_top_level(&mut self) {
        while self.peek().kind != TokenKind::Eof && !self.at_any_word(TOP_LEVEL) {
            self.bump();
        }
    }

    /// Skips a broken member up to and including `;`, stopping early at a
    /// block or declaration boundary.
    fn skip_member(&mut self) {
        loop {
            match &self.peek().kind {
                TokenKind::Semi => {
                    self.bump();
                    return;
                }
                TokenKind::RBrace | TokenKind::Eof => return,
                _ if self.at_any_word(TOP_LEVEL) => return,
                _ => {
                    self.bump();
                }
            }
        }
    }

    fn skip_clause(&mut self) {
        while !matches!(self.peek().kind, TokenKind::RBrace | TokenKind::Eof)
            && !self.at_any_word(TOP_LEVEL)
            && !self.at_any_word(CLAUSES)
        {
            self.bump();
        }
    }

    /// Checks for the end of a block. Reports E011 if the block runs into
    /// end of input or into the next declaration.
    fn block_end(&mut self, what: &str, name: &Ident) -> BlockEnd {
        match &self.peek().kind {
            TokenKind::RBrace => {
                self.bump();
                BlockEnd::Closed
            }
            TokenKind::Eof => {
                let span = self.peek().span;
                self.diags.push(Diagnostic::new(
                    Code::UnterminatedBlock,
                    span,
                    format!(
                        "unterminated block: `{what} {}` opened at {}:{} is missing `}}`",
                        name.name, name.span.start.line, name.span.start.col
                    ),
                ));
                BlockEnd::Unterminated
            }
            _ if self.at_any_word(TOP_LEVEL) => {
                let tok = self.peek().clone();
                self.diags.push(Diagnostic::new(
                    Code::UnterminatedBlock,
                    tok.span,
                    format!(
                        "unterminated block: expected `}}` to close `{what} {}` before {}",
                        name.name,
                        tok.kind.describe()
                    ),
                ));
                BlockEnd::Unterminated
            }
            _ => BlockEnd::Open,
        }
    }

    fn model(&mut self) -> RawModel {
        let mut decls = Vec::new();
        while self.peek().kind != TokenKind::Eof {
            let decl = if self.at_word("device") {
                self.device()
            } else if self.at_word("actioninterface") {
                self.interface()
            } else if self.at_word("context") || self.at_word("controller") {
                self.operator()
            } else {
                self.expected(TOP_LEVEL);
                self.bump();
                self.skip_to_top_level();
                None
            };
            decls.extend(decl);
        }
        RawModel { decls }
    }

    fn header(&mut self) -> PResult<Ident> {
        self.bump();
        let name = self.ident()?;
        Ok(name)
    }

    fn device(&mut self) -> Option<Decl> {
        let Ok(name) = self.header().and_then(|n| {
            self.punct(TokenKind::LBrace, "{")?;
            Ok(n)
        }) else {
            self.skip_to_top_level();
            return None;
        };
        let mut dev = DeviceDecl {
            name,
            sources: Vec::new(),
            provides: Vec::new(),
        };
        loop {
            match self.block_end("device", &dev.name) {
                BlockEnd::Closed | BlockEnd::Unterminated => break,
                BlockEnd::Open => {}
            }
            if self.at_word("source") {
                match self.source_decl() {
                    Ok(s) => dev.sources.push(s),
                    Err(Fail) => self.skip_member(),
                }
            } else if self.at_word("provides") {
                match self.provides_decl() {
                    Ok(p) => dev.provides.push(p),
                    Err(Fail) => self.skip_member(),
                }
            } else {
                self.expected(&["source", "provides", "}"]);
                self.bump();
                self.skip_member();
            }
        }
        Some(Decl::Device(dev))
    }

    fn source_decl(&mut self) -> PResult<SourceDecl> {
        self.bump();
        let name = self.ident()?;
        self.word("as")?;
        let ty = self.type_ref()?;
        self.punct(TokenKind::Semi, ";")?;
        Ok(SourceDecl { name, ty })
    }

    fn provides_decl(&mut self) -> PResult<Ident> {
        self.bump();
        let name = self.ident()?;
        self.punct(TokenKind::Semi, ";")?;
        Ok(name)
    }

    fn interface(&mut self) -> Option<Decl> {
        let Ok(name) = self.header().and_then(|n| {
            self.punct(TokenKind::LBrace, "{")?;
            Ok(n)
        }) else {
            self.skip_to_top_level();
            return None;
        };
        let mut iface = InterfaceDecl {
            name,
            methods: Vec::new(),
        };
        loop {
            match self.block_end("actioninterface", &iface.name) {
                BlockEnd::Closed | BlockEnd::Unterminated => break,
                BlockEnd::Open => {}
            }
            if self.at_word("method") {
                match self.method_decl() {
                    Ok(m) => iface.methods.push(m),
                    Err(Fail) => self.skip_member(),
                }
            } else {
                self.expected(&["method", "}"]);
                self.bump();
                self.skip_member();
            }
        }
        Some(Decl::Interface(iface))
    }

    fn method_decl(&mut self) -> PResult<MethodDecl> {
        self.bump();
        let name = self.ident()?;
        self.punct(TokenKind::LParen, "(")?;
        let mut params = Vec::new();
        if self.peek().kind != TokenKind::RParen {
            loop {
                let pname = self.ident()?;
                self.word("as")?;
                let ty = self.type_ref()?;
                params.push(ParamDecl { name: pname, ty });
                if self.peek().kind == TokenKind::Comma {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        self.punct(TokenKind::RParen, ")")?;
        self.punct(TokenKind::Semi, ";")?;
        Ok(MethodDecl { name, params })
    }

    fn operator(&mut self) -> Option<Decl> {
        let is_context = self.at_word("context");
        let what = if is_context { "context" } else { "controller" };
        let head = self.header().and_then(|name| {
            let kind = if is_context {
                self.word("as")?;
                OperatorKind::Context {
                    output: self.type_ref()?,
                }
            } else {
                OperatorKind::Controller
            };
            self.punct(TokenKind::LBrace, "{")?;
            Ok((name, kind))
        });
        let Ok((name, kind)) = head else {
            self.skip_to_top_level();
            return None;
        };
        let mut op = OperatorDecl {
            kind,
            name,
            activation: Vec::new(),
            when_span: Span::default(),
            gets: Vec::new(),
            publishes: Vec::new(),
            invokes: Vec::new(),
        };
        let mut seen_when = false;
        let mut first = true;
        loop {
            match self.block_end(what, &op.name) {
                BlockEnd::Closed => {
                    if first {
                        let span = self.tokens[self.pos - 1].span;
                        self.diags.push(Diagnostic::new(
                            Code::SyntaxError,
                            span,
                            "expected `when`, found `}`",
                        ));
                    }
                    break;
                }
                BlockEnd::Unterminated => break,
                BlockEnd::Open => {}
            }
            if first && !self.at_word("when") {
                self.expected(&["when"]);
            }
            first = false;
            let clause = if self.at_word("when") {
                let when_tok = self.peek().span;
                if seen_when {
                    self.diags.push(Diagnostic::new(
                        Code::SyntaxError,
                        when_tok,
                        format!("`{}` already has a `when` clause", op.name.name),
                    ));
                }
                seen_when = true;
                self.when_clause().map(|(refs, span)| {
                    op.activation = refs;
                    op.when_span = span;
                })
            } else if self.at_word("get") {
                self.get_clause().map(|g| op.gets.push(g))
            } else if self.at_word("always") || self.at_word("maybe") {
                self.publish_clause().map(|p| op.publishes.push(p))
            } else if self.at_word("do") {
                self.do_clause().map(|i| op.invokes.push(i))
            } else {
                self.expected(&["when", "get", "always", "maybe", "do", "}"]);
                self.bump();
                Err(Fail)
            };
            if clause.is_err() {
                self.skip_clause();
            }
        }
        Some(Decl::Operator(op))
    }

    fn when_clause(&mut self) -> PResult<(Vec<Ref>, Span)> {
        let start = self.bump().span;
        self.word("provided")?;
        let mut refs = vec![self.reference()?];
        while self.at_word("or") {
            self.bump();
            self.word("provided")?;
            refs.push(self.reference()?);
        }
        let end = refs.last().map(Ref::span).unwrap_or(start);
        Ok((refs, start.to(end)))
    }

    fn get_clause(&mut self) -> PResult<GetDecl> {
        let start = self.bump().span;
        let target = self.reference()?;
        let declared = if self.at_word("as") {
            self.bump();
            Some(self.type_ref()?)
        } else {
            None
        };
        let end = declared.as_ref().map(|t| t.span).unwrap_or(target.span());
        Ok(GetDecl {
            target,
            declared,
            span: start.to(end),
        })
    }

    fn publish_clause(&mut self) -> PResult<PublishDecl> {
        let tok = self.bump();
        let mode = match &tok.kind {
            TokenKind::Ident(s) if s == "always" => PublishMode::Always,
            _ => PublishMode::Maybe,
        };
        let end = self.word("publish")?;
        Ok(PublishDecl {
            mode,
            span: tok.span.to(end),
        })
    }

    fn do_clause(&mut self) -> PResult<InvokeDecl> {
        let start = self.bump().span;
        let method = self.ident()?;
        self.word("on")?;
        let interface = self.ident()?;
        Ok(InvokeDecl {
            span: start.to(interface.span),
            method,
            interface,
        })
    }
}
