//! Byte-level tokenizer for the expression language. Longest-match lexing,
//! whitespace insignificant, every token carries its byte position.

use super::parser::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(super) enum TokenKind {
    Int(i64),
    Ident(String),
    KwQ,
    KwSum,
    KwBSum,
    KwPoch,
    KwInf,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Semi,
    Underscore,
    Equals,
    DotDot,
    Eof,
}

impl TokenKind {
    pub(super) fn describe(&self) -> String {
        match self {
            TokenKind::Int(n) => format!("integer {n}"),
            TokenKind::Ident(s) => format!("identifier '{s}'"),
            TokenKind::KwQ => "'q'".into(),
            TokenKind::KwSum => "'sum'".into(),
            TokenKind::KwBSum => "'bsum'".into(),
            TokenKind::KwPoch => "'poch'".into(),
            TokenKind::KwInf => "'inf'".into(),
            TokenKind::Plus => "'+'".into(),
            TokenKind::Minus => "'-'".into(),
            TokenKind::Star => "'*'".into(),
            TokenKind::Slash => "'/'".into(),
            TokenKind::Caret => "'^'".into(),
            TokenKind::LParen => "'('".into(),
            TokenKind::RParen => "')'".into(),
            TokenKind::Comma => "','".into(),
            TokenKind::Semi => "';'".into(),
            TokenKind::Underscore => "'_'".into(),
            TokenKind::Equals => "'='".into(),
            TokenKind::DotDot => "'..'".into(),
            TokenKind::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(super) struct Token {
    pub kind: TokenKind,
    pub position: usize,
}

pub(super) fn tokenize(input: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = input.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0usize;
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
            }
            b'0'..=b'9' => {
                let mut value: i64 = 0;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    value = value
                        .checked_mul(10)
                        .and_then(|v| v.checked_add((bytes[i] - b'0') as i64))
                        .ok_or_else(|| ParseError {
                            position: start,
                            message: "integer literal out of range".into(),
                            expected: None,
                        })?;
                    i += 1;
                }
                tokens.push(Token { kind: TokenKind::Int(value), position: start });
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                let mut j = i + 1;
                while j < bytes.len()
                    && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_')
                {
                    j += 1;
                }
                let word = &input[i..j];
                let kind = match word {
                    "q" => TokenKind::KwQ,
                    "sum" => TokenKind::KwSum,
                    "bsum" => TokenKind::KwBSum,
                    "poch" => TokenKind::KwPoch,
                    "inf" => TokenKind::KwInf,
                    _ => TokenKind::Ident(word.to_string()),
                };
                tokens.push(Token { kind, position: start });
                i = j;
            }
            b'+' => {
                tokens.push(Token { kind: TokenKind::Plus, position: start });
                i += 1;
            }
            b'-' => {
                tokens.push(Token { kind: TokenKind::Minus, position: start });
                i += 1;
            }
            b'*' => {
                tokens.push(Token { kind: TokenKind::Star, position: start });
                i += 1;
            }
            b'/' => {
                tokens.push(Token { kind: TokenKind::Slash, position: start });
                i += 1;
            }
            b'^' => {
                tokens.push(Token { kind: TokenKind::Caret, position: start });
                i += 1;
            }
            b'(' => {
                tokens.push(Token { kind: TokenKind::LParen, position: start });
                i += 1;
            }
            b')' => {
                tokens.push(Token { kind: TokenKind::RParen, position: start });
                i += 1;
            }
            b',' => {
                tokens.push(Token { kind: TokenKind::Comma, position: start });
                i += 1;
            }
            b';' => {
                tokens.push(Token { kind: TokenKind::Semi, position: start });
                i += 1;
            }
            b'_' => {
                tokens.push(Token { kind: TokenKind::Underscore, position: start });
                i += 1;
            }
            b'=' => {
                tokens.push(Token { kind: TokenKind::Equals, position: start });
                i += 1;
            }
            b'.' => {
                if i + 1 < bytes.len() && bytes[i + 1] == b'.' {
                    tokens.push(Token { kind: TokenKind::DotDot, position: start });
                    i += 2;
                } else {
                    return Err(ParseError {
                        position: start,
                        message: "stray '.'".into(),
                        expected: Some("'..'".into()),
                    });
                }
            }
            _ => {
                return Err(ParseError {
                    position: start,
                    message: format!("unexpected byte 0x{b:02x}"),
                    expected: None,
                });
            }
        }
    }
    tokens.push(Token { kind: TokenKind::Eof, position: bytes.len() });
    Ok(tokens)
}
