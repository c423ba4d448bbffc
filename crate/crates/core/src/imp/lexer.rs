//! Tokenizer. `//` starts a comment running to the end of the line.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use super::ast::Pos;
use super::SyntaxError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(i64),
    Str(String),
    // keywords
    If,
    Else,
    While,
    Skip,
    Assert,
    True,
    False,
    Read,
    Nondet,
    // punctuation
    LParen,
    RParen,
    LBrace,
    RBrace,
    Semi,
    Comma,
    Dot,
    Assign,
    Plus,
    Minus,
    Star,
    Slash,
    AndAnd,
    OrOr,
    Bang,
    Lt,
    Gt,
    EqEq,
    NotEq,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(x) => return write!(f, "identifier `{x}`"),
            Tok::Int(v) => return write!(f, "integer `{v}`"),
            Tok::Str(s) => return write!(f, "string {s:?}"),
            Tok::Eof => return f.write_str("end of input"),
            Tok::If => "if",
            Tok::Else => "else",
            Tok::While => "while",
            Tok::Skip => "skip",
            Tok::Assert => "assert",
            Tok::True => "true",
            Tok::False => "false",
            Tok::Read => "read",
            Tok::Nondet => "nondet",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::Semi => ";",
            Tok::Comma => ",",
            Tok::Dot => ".",
            Tok::Assign => "=",
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Star => "*",
            Tok::Slash => "/",
            Tok::AndAnd => "&&",
            Tok::OrOr => "||",
            Tok::Bang => "!",
            Tok::Lt => "<",
            Tok::Gt => ">",
            Tok::EqEq => "==",
            Tok::NotEq => "!=",
        };
        write!(f, "`{s}`")
    }
}

fn keyword(word: &str) -> Option<Tok> {
    Some(match word {
        "if" => Tok::If,
        "else" => Tok::Else,
        "while" => Tok::While,
        "skip" => Tok::Skip,
        "assert" => Tok::Assert,
        "true" => Tok::True,
        "false" => Tok::False,
        "read" => Tok::Read,
        "nondet" => Tok::Nondet,
        _ => return None,
    })
}

pub fn tokenize(src: &str) -> Result<Vec<(Tok, Pos)>, SyntaxError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1u32, 1u32);
    let err = |pos: Pos, msg: &str| SyntaxError {
        pos,
        expected: Vec::new(),
        found: msg.to_string(),
    };
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos::new(line, col);
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
        if c == '/' && chars.get(i + 1) == Some(&'/') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            keyword(&word).unwrap_or(Tok::Ident(word))
        } else if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            Tok::Int(
                digits
                    .parse()
                    .map_err(|_| err(pos, "integer literal out of range"))?,
            )
        } else if c == '"' {
            i += 1;
            let mut s = String::new();
            loop {
                match chars.get(i) {
                    None | Some('\n') => return Err(err(pos, "unterminated string literal")),
                    Some('"') => {
                        i += 1;
                        break;
                    }
                    Some('\\') => {
                        let e = match chars.get(i + 1) {
                            Some('"') => '"',
                            Some('\\') => '\\',
                            Some('n') => '\n',
                            Some('t') => '\t',
                            _ => {
                                return Err(err(
                                    Pos::new(line, col + (i - start) as u32),
                                    "unknown escape",
                                ))
                            }
                        };
                        s.push(e);
                        i += 2;
                    }
                    Some(&ch) => {
                        s.push(ch);
                        i += 1;
                    }
                }
            }
            Tok::Str(s)
        } else {
            let next = chars.get(i + 1).copied();
            let (tok, len) = match (c, next) {
                ('&', Some('&')) => (Tok::AndAnd, 2),
                ('|', Some('|')) => (Tok::OrOr, 2),
                ('=', Some('=')) => (Tok::EqEq, 2),
                ('!', Some('=')) => (Tok::NotEq, 2),
                ('(', _) => (Tok::LParen, 1),
                (')', _) => (Tok::RParen, 1),
                ('{', _) => (Tok::LBrace, 1),
                ('}', _) => (Tok::RBrace, 1),
                (';', _) => (Tok::Semi, 1),
                (',', _) => (Tok::Comma, 1),
                ('.', _) => (Tok::Dot, 1),
                ('=', _) => (Tok::Assign, 1),
                ('+', _) => (Tok::Plus, 1),
                ('-', _) => (Tok::Minus, 1),
                ('*', _) => (Tok::Star, 1),
                ('/', _) => (Tok::Slash, 1),
                ('!', _) => (Tok::Bang, 1),
                ('<', _) => (Tok::Lt, 1),
                ('>', _) => (Tok::Gt, 1),
                _ => {
                    return Err(err(pos, &alloc::format!("unexpected character {c:?}")));
                }
            };
            i += len;
            tok
        };
        col += (i - start) as u32;
        out.push((tok, pos));
    }
    out.push((Tok::Eof, Pos::new(line, col)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn kinds(src: &str) -> Vec<Tok> {
        tokenize(src).unwrap().into_iter().map(|(t, _)| t).collect()
    }

    #[test]
    fn operators_and_keywords() {
        assert_eq!(
            kinds("if (a != 10) x = !b && c;"),
            vec![
                Tok::If,
                Tok::LParen,
                Tok::Ident("a".into()),
                Tok::NotEq,
                Tok::Int(10),
                Tok::RParen,
                Tok::Ident("x".into()),
                Tok::Assign,
                Tok::Bang,
                Tok::Ident("b".into()),
                Tok::AndAnd,
                Tok::Ident("c".into()),
                Tok::Semi,
                Tok::Eof
            ]
        );
    }

    #[test]
    fn strings_escapes_and_comments() {
        assert_eq!(
            kinds("\"a\\\"b\\\\\" // tail"),
            vec![Tok::Str("a\"b\\".into()), Tok::Eof]
        );
        assert!(tokenize("\"open").is_err());
        assert!(tokenize("x = 1 # 2").is_err());
    }

    #[test]
    fn positions_track_lines() {
        let toks = tokenize("x\n  y").unwrap();
        assert_eq!(toks[1].1, Pos::new(2, 3));
    }
}
