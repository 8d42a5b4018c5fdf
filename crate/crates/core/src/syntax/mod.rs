//! Concrete syntax: lexer, recovering parser and canonical printer.

pub mod ast;
mod lexer;
mod parser;
mod pretty;

pub use lexer::{tokenize, Token, TokenKind};
pub use parser::{is_keyword, parse, KEYWORDS};
pub use pretty::{pretty, pretty_model};
