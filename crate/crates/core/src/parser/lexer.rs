//! Tokenizer for the surface syntax.

use crate::kernel::SourceSpan;

use super::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(super) enum TokenKind {
    /// Lowercase-initial identifier (predicate, constant, functor,
    /// annotation-function name).
    Ident(String),
    /// Uppercase-initial variable name.
    Var(String),
    /// Unsigned numeric literal, e.g. `1` or `0.3`.
    Number(String),
    /// `#prefer`
    Prefer,
    /// `not`
    Not,
    /// `v`, the head disjunct separator. Reserved; not usable as an
    /// identifier.
    Vee,
    Dot,
    Comma,
    Colon,
    LParen,
    RParen,
    /// `<-`
    Arrow,
    /// `>`
    Gt,
    /// `&&`
    AndAnd,
    /// `||`
    OrOr,
    Minus,
    Slash,
}

impl TokenKind {
    pub(super) fn describe(&self) -> String {
        match self {
            TokenKind::Ident(name) => format!("identifier {name:?}"),
            TokenKind::Var(name) => format!("variable {name:?}"),
            TokenKind::Number(text) => format!("number {text:?}"),
            TokenKind::Prefer => "\"#prefer\"".into(),
            TokenKind::Not => "\"not\"".into(),
            TokenKind::Vee => "\"v\"".into(),
            TokenKind::Dot => "\".\"".into(),
            TokenKind::Comma => "\",\"".into(),
            TokenKind::Colon => "\":\"".into(),
            TokenKind::LParen => "\"(\"".into(),
            TokenKind::RParen => "\")\"".into(),
            TokenKind::Arrow => "\"<-\"".into(),
            TokenKind::Gt => "\">\"".into(),
            TokenKind::AndAnd => "\"&&\"".into(),
            TokenKind::OrOr => "\"||\"".into(),
            TokenKind::Minus => "\"-\"".into(),
            TokenKind::Slash => "\"/\"".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub(super) struct Token {
    pub kind: TokenKind,
    pub span: SourceSpan,
    /// Byte range in the source, used to measure whole statements.
    pub start: usize,
    pub end: usize,
}

pub(super) fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    Lexer { src, bytes: src.as_bytes(), pos: 0, line: 1, column: 1 }.run()
}

struct Lexer<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    line: u32,
    column: u32,
}

impl Lexer<'_> {
    fn run(mut self) -> Result<Vec<Token>, ParseError> {
        let mut tokens = Vec::new();
        loop {
            self.skip_trivia();
            if self.pos >= self.bytes.len() {
                return Ok(tokens);
            }
            tokens.push(self.next_token()?);
        }
    }

    fn skip_trivia(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            match b {
                b' ' | b'\t' | b'\r' => self.advance(1),
                b'\n' => {
                    self.pos += 1;
                    self.line += 1;
                    self.column = 1;
                }
                b'%' => {
                    while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                        self.advance(1);
                    }
                }
                _ => return,
            }
        }
    }

    fn next_token(&mut self) -> Result<Token, ParseError> {
        let start = self.pos;
        let span_start = self.here(1);
        let b = self.bytes[self.pos];
        let kind = match b {
            b'.' => self.symbol(TokenKind::Dot),
            b',' => self.symbol(TokenKind::Comma),
            b':' => self.symbol(TokenKind::Colon),
            b'(' => self.symbol(TokenKind::LParen),
            b')' => self.symbol(TokenKind::RParen),
            b'>' => self.symbol(TokenKind::Gt),
            b'-' => self.symbol(TokenKind::Minus),
            b'/' => self.symbol(TokenKind::Slash),
            b'<' => {
                if self.bytes.get(self.pos + 1) == Some(&b'-') {
                    self.advance(2);
                    TokenKind::Arrow
                } else {
                    return Err(self.unexpected(span_start, "expected \"<-\""));
                }
            }
            b'&' => {
                if self.bytes.get(self.pos + 1) == Some(&b'&') {
                    self.advance(2);
                    TokenKind::AndAnd
                } else {
                    return Err(self.unexpected(span_start, "expected \"&&\""));
                }
            }
            b'|' => {
                if self.bytes.get(self.pos + 1) == Some(&b'|') {
                    self.advance(2);
                    TokenKind::OrOr
                } else {
                    return Err(self.unexpected(span_start, "expected \"||\""));
                }
            }
            b'#' => {
                self.advance(1);
                let word = self.take_word();
                if word == "prefer" {
                    TokenKind::Prefer
                } else {
                    return Err(ParseError::Syntax {
                        span: span_start,
                        message: format!("unknown directive #{word}"),
                    });
                }
            }
            b'0'..=b'9' => {
                let mut end = self.pos;
                while self.bytes.get(end).is_some_and(u8::is_ascii_digit) {
                    end += 1;
                }
                // A dot continues the number only when a digit follows;
                // otherwise it terminates the statement.
                if self.bytes.get(end) == Some(&b'.')
                    && self.bytes.get(end + 1).is_some_and(u8::is_ascii_digit)
                {
                    end += 1;
                    while self.bytes.get(end).is_some_and(u8::is_ascii_digit) {
                        end += 1;
                    }
                }
                let text = self.src[self.pos..end].to_string();
                self.advance(end - self.pos);
                TokenKind::Number(text)
            }
            b'a'..=b'z' => {
                let word = self.take_word();
                match word.as_str() {
                    "not" => TokenKind::Not,
                    "v" => TokenKind::Vee,
                    _ => TokenKind::Ident(word),
                }
            }
            b'A'..=b'Z' => TokenKind::Var(self.take_word()),
            other => {
                return Err(self.unexpected(
                    span_start,
                    &format!("unexpected character {:?}", other as char),
                ));
            }
        };
        let end = self.pos;
        let span = SourceSpan {
            line: span_start.line,
            column: span_start.column,
            length: (end - start) as u32,
        };
        Ok(Token { kind, span, start, end })
    }

    fn symbol(&mut self, kind: TokenKind) -> TokenKind {
        self.advance(1);
        kind
    }

    fn take_word(&mut self) -> String {
        let start = self.pos;
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_')
        {
            self.advance(1);
        }
        self.src[start..self.pos].to_string()
    }

    fn advance(&mut self, n: usize) {
        self.pos += n;
        self.column += n as u32;
    }

    fn here(&self, length: u32) -> SourceSpan {
        SourceSpan { line: self.line, column: self.column, length }
    }

    fn unexpected(&self, span: SourceSpan, message: &str) -> ParseError {
        ParseError::Syntax { span, message: message.to_string() }
    }
}
