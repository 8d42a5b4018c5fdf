use crate::diagnostics::{Code, Diagnostic, Position, Span};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TokenKind {
    Ident(String),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Semi,
    Comma,
    Dot,
    Star,
    Eof,
}

impl TokenKind {
    pub fn describe(&self) -> String {
        match self {
            TokenKind::Ident(s) => format!("`{s}`"),
            TokenKind::LBrace => "`{`".into(),
            TokenKind::RBrace => "`}`".into(),
            TokenKind::LParen => "`(`".into(),
            TokenKind::RParen => "`)`".into(),
            TokenKind::Semi => "`;`".into(),
            TokenKind::Comma => "`,`".into(),
            TokenKind::Dot => "`.`".into(),
            TokenKind::Star => "`*`".into(),
            TokenKind::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: Span,
}

/// Tokenizes `text`. Anything after `comment` up to the end of the line is
/// skipped. The returned vector always ends with an `Eof` token.
pub fn tokenize(text: &str, comment: &str) -> (Vec<Token>, Vec<Diagnostic>) {
    let mut tokens = Vec::new();
    let mut diags = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let comment: Vec<char> = comment.chars().collect();
    let mut i = 0;
    let (mut line, mut col) = (1u32, 1u32);

    while i < chars.len() {
        let c = chars[i];
        let start = Position::new(line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if !comment.is_empty() && chars[i..].starts_with(&comment) {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
                col += 1;
            }
            continue;
        }
        if c.is_ascii_alphabetic() {
            let begin = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
                col += 1;
            }
            tokens.push(Token {
                kind: TokenKind::Ident(chars[begin..i].iter().collect()),
                span: Span::new(start, Position::new(line, col)),
            });
            continue;
        }
        let kind = match c {
            '{' => Some(TokenKind::LBrace),
            '}' => Some(TokenKind::RBrace),
            '(' => Some(TokenKind::LParen),
            ')' => Some(TokenKind::RParen),
            ';' => Some(TokenKind::Semi),
            ',' => Some(TokenKind::Comma),
            '.' => Some(TokenKind::Dot),
            '*' => Some(TokenKind::Star),
            _ => None,
        };
        i += 1;
        col += 1;
        let span = Span::new(start, Position::new(line, col));
        match kind {
            Some(kind) => tokens.push(Token { kind, span }),
            None => diags.push(Diagnostic::new(
                Code::SyntaxError,
                span,
                format!("unexpected character `{}`", c.escape_debug()),
            )),
        }
    }
    let eof = Position::new(line, col);
    tokens.push(Token {
        kind: TokenKind::Eof,
        span: Span::point(eof),
    });
    (tokens, diags)
}
