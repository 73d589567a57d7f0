use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::model::Location;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Word(String),
    Str(String),
    Int(u32),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Comma,
    Colon,
    Equals,
    Arrow,
    /// A lexing failure, reported by the parser when it reaches it.
    Bad { expected: String, found: String },
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Word(w) => f.write_str(w),
            Tok::Str(s) => write!(f, "{s:?}"),
            Tok::Int(n) => write!(f, "{n}"),
            Tok::LBrace => f.write_str("{"),
            Tok::RBrace => f.write_str("}"),
            Tok::LParen => f.write_str("("),
            Tok::RParen => f.write_str(")"),
            Tok::Comma => f.write_str(","),
            Tok::Colon => f.write_str(":"),
            Tok::Equals => f.write_str("="),
            Tok::Arrow => f.write_str("->"),
            Tok::Bad { found, .. } => f.write_str(found),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub tok: Tok,
    pub at: Location,
}

struct Cursor<'a> {
    chars: core::iter::Peekable<core::str::Chars<'a>>,
    line: u32,
    column: u32,
}

impl Cursor<'_> {
    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn here(&self) -> Location {
        Location::new(self.line, self.column)
    }
}

pub(crate) fn is_word_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

pub(crate) fn is_word_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// Splits source text into tokens. Never fails: bad input becomes `Tok::Bad`.
pub(crate) fn tokenize(src: &str) -> Vec<Token> {
    let mut cur = Cursor { chars: src.chars().peekable(), line: 1, column: 1 };
    let mut out = Vec::new();
    while let Some(c) = cur.peek() {
        let at = cur.here();
        let tok = match c {
            // '\r' is whitespace so CRLF and LF sources lex identically.
            ' ' | '\t' | '\r' | '\n' | '\u{feff}' => {
                cur.bump();
                continue;
            }
            '#' => {
                while cur.peek().is_some_and(|c| c != '\n') {
                    cur.bump();
                }
                continue;
            }
            '{' | '}' | '(' | ')' | ',' | ':' | '=' => {
                cur.bump();
                match c {
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    ',' => Tok::Comma,
                    ':' => Tok::Colon,
                    _ => Tok::Equals,
                }
            }
            '-' => {
                cur.bump();
                if cur.peek() == Some('>') {
                    cur.bump();
                    Tok::Arrow
                } else {
                    Tok::Bad { expected: "\"->\"".into(), found: "-".into() }
                }
            }
            '"' => {
                cur.bump();
                lex_string(&mut cur)
            }
            c if c.is_ascii_digit() => {
                let mut digits = String::new();
                while let Some(d) = cur.peek().filter(|d| d.is_ascii_digit()) {
                    digits.push(d);
                    cur.bump();
                }
                if cur.peek().is_some_and(is_word_char) {
                    while let Some(d) = cur.peek().filter(|d| is_word_char(*d)) {
                        digits.push(d);
                        cur.bump();
                    }
                    Tok::Bad { expected: "integer".into(), found: digits }
                } else {
                    match digits.parse::<u32>() {
                        Ok(n) => Tok::Int(n),
                        Err(_) => Tok::Bad { expected: "integer below 2^32".into(), found: digits },
                    }
                }
            }
            c if is_word_start(c) => {
                let mut word = String::new();
                while let Some(d) = cur.peek().filter(|d| is_word_char(*d)) {
                    word.push(d);
                    cur.bump();
                }
                Tok::Word(word)
            }
            other => {
                cur.bump();
                Tok::Bad { expected: "token".into(), found: other.to_string() }
            }
        };
        out.push(Token { tok, at });
    }
    out.push(Token { tok: Tok::Eof, at: cur.here() });
    out
}

fn lex_string(cur: &mut Cursor<'_>) -> Tok {
    let mut s = String::new();
    loop {
        match cur.peek() {
            None | Some('\n') | Some('\r') => {
                return Tok::Bad { expected: "closing '\"'".into(), found: "end of line".into() };
            }
            Some('"') => {
                cur.bump();
                return Tok::Str(s);
            }
            Some('\\') => {
                cur.bump();
                let escaped = match cur.bump() {
                    Some('"') => '"',
                    Some('\\') => '\\',
                    Some('n') => '\n',
                    Some('r') => '\r',
                    Some('t') => '\t',
                    Some('u') => match lex_unicode_escape(cur) {
                        Some(c) => c,
                        None => return bad_escape(cur, "u"),
                    },
                    Some(other) => return bad_escape(cur, &other.to_string()),
                    None => return bad_escape(cur, ""),
                };
                s.push(escaped);
            }
            Some(c) => {
                cur.bump();
                s.push(c);
            }
        }
    }
}

/// Parses the `{XXXX}` part of a `\u{XXXX}` escape.
fn lex_unicode_escape(cur: &mut Cursor<'_>) -> Option<char> {
    if cur.peek() != Some('{') {
        return None;
    }
    cur.bump();
    let mut hex = String::new();
    while let Some(c) = cur.peek().filter(char::is_ascii_hexdigit) {
        hex.push(c);
        cur.bump();
        if hex.len() > 6 {
            return None;
        }
    }
    if cur.peek() != Some('}') {
        return None;
    }
    cur.bump();
    u32::from_str_radix(&hex, 16).ok().and_then(char::from_u32)
}

/// Skips the rest of a broken string literal so lexing resumes on the next line.
fn bad_escape(cur: &mut Cursor<'_>, what: &str) -> Tok {
    while let Some(c) = cur.peek() {
        if c == '\n' {
            break;
        }
        cur.bump();
        if c == '"' {
            break;
        }
    }
    Tok::Bad {
        expected: "escape (\\\" \\\\ \\n \\r \\t \\u{...})".into(),
        found: format!("\\{what}"),
    }
}
