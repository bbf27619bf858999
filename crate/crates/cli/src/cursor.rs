//! Character cursor with line/column tracking shared by the text parsers.

use std::fmt;

use mimicry_core::Rational;

/// Syntax error at a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based line.
    pub line: usize,
    /// 1-based column, counted in characters.
    pub column: usize,
    /// What was expected or found.
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Identifier characters for actions and processes.
pub(crate) fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\'' || c == '.'
}

pub(crate) struct Cursor<'a> {
    rest: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(text: &'a str, line: usize) -> Self {
        Cursor { rest: text.chars().peekable(), line, column: 1 }
    }

    pub fn peek(&mut self) -> Option<char> {
        self.rest.peek().copied()
    }

    pub fn bump(&mut self) -> Option<char> {
        let c = self.rest.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    pub fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError { line: self.line, column: self.column, message: message.into() }
    }

    pub fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    /// True at end of input or at a `#` comment.
    pub fn at_end_or_comment(&mut self) -> bool {
        matches!(self.peek(), None | Some('#'))
    }

    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{c}`")))
        }
    }

    pub fn unexpected(&mut self, wanted: &str) -> ParseError {
        match self.peek() {
            Some(c) => self.error(format!("expected {wanted}, found `{c}`")),
            None => self.error(format!("expected {wanted}, found end of input")),
        }
    }

    pub fn ident(&mut self, what: &str) -> Result<String, ParseError> {
        let mut out = String::new();
        while let Some(c) = self.peek().filter(|&c| is_ident_char(c)) {
            out.push(c);
            self.bump();
        }
        if out.is_empty() {
            Err(self.unexpected(what))
        } else {
            Ok(out)
        }
    }

    /// `digits` or `digits/digits`.
    pub fn rational(&mut self) -> Result<Rational, ParseError> {
        let (line, column) = (self.line, self.column);
        let mut text = self.digits()?;
        if self.eat('/') {
            text.push('/');
            text.push_str(&self.digits()?);
        }
        text.parse()
            .map_err(|e| ParseError { line, column, message: format!("bad number `{text}`: {e}") })
    }

    fn digits(&mut self) -> Result<String, ParseError> {
        let mut out = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            out.push(c);
            self.bump();
        }
        if out.is_empty() {
            Err(self.unexpected("a number"))
        } else {
            Ok(out)
        }
    }
}
