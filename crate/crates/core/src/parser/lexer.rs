use std::fmt;

use super::{ParseError, ParseErrorKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    /// Lowercase-initial identifier (predicates, constants, keywords, strategy ids).
    Ident(String),
    /// Uppercase-initial identifier, optionally followed by primes (`A'`).
    Var(String),
    /// Unsigned decimal numeral.
    Number(String),
    /// `#name`
    Directive(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Comma,
    Dot,
    Colon,
    If,
    Bar,
    OrOr,
    AndAnd,
    Prefer,
    Caret,
    Minus,
    EqEq,
    NotEq,
    Assign,
    Slash,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) | Tok::Var(s) | Tok::Number(s) => write!(f, "`{s}`"),
            Tok::Directive(s) => write!(f, "`#{s}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBracket => f.write_str("`[`"),
            Tok::RBracket => f.write_str("`]`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::If => f.write_str("`:-`"),
            Tok::Bar => f.write_str("`|`"),
            Tok::OrOr => f.write_str("`||`"),
            Tok::AndAnd => f.write_str("`&&`"),
            Tok::Prefer => f.write_str("`>>`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::EqEq => f.write_str("`==`"),
            Tok::NotEq => f.write_str("`!=`"),
            Tok::Assign => f.write_str("`=`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

pub fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);

    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, col);
        let advance = |n: usize, i: &mut usize, col: &mut usize| {
            *i += n;
            *col += n;
        };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            advance(1, &mut i, &mut col);
            continue;
        }
        if c == '%' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let next = chars.get(i + 1).copied();
        let two = |a: char, b: char| c == a && next == Some(b);
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            let mut j = i;
            while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                j += 1;
            }
            let upper = c.is_ascii_uppercase();
            if upper {
                while j < chars.len() && chars[j] == '\'' {
                    j += 1;
                }
            }
            let word: String = chars[i..j].iter().collect();
            advance(j - i, &mut i, &mut col);
            if upper {
                Tok::Var(word)
            } else {
                Tok::Ident(word)
            }
        } else if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            // A dot is a decimal point only when a digit follows; `a:1.` ends a statement.
            if j + 1 < chars.len() && chars[j] == '.' && chars[j + 1].is_ascii_digit() {
                j += 1;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
            }
            let word: String = chars[i..j].iter().collect();
            advance(j - i, &mut i, &mut col);
            Tok::Number(word)
        } else if c == '#' {
            let mut j = i + 1;
            while j < chars.len() && chars[j].is_ascii_alphanumeric() {
                j += 1;
            }
            if j == i + 1 {
                return Err(lex_error(start_line, start_col, "expected directive name after `#`"));
            }
            let word: String = chars[i + 1..j].iter().collect();
            advance(j - i, &mut i, &mut col);
            Tok::Directive(word)
        } else {
            let (tok, len) = if two(':', '-') {
                (Tok::If, 2)
            } else if two('|', '|') {
                (Tok::OrOr, 2)
            } else if two('&', '&') {
                (Tok::AndAnd, 2)
            } else if two('>', '>') {
                (Tok::Prefer, 2)
            } else if two('=', '=') {
                (Tok::EqEq, 2)
            } else if two('!', '=') {
                (Tok::NotEq, 2)
            } else {
                let t = match c {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    ',' => Tok::Comma,
                    '.' => Tok::Dot,
                    ':' => Tok::Colon,
                    '|' => Tok::Bar,
                    '^' => Tok::Caret,
                    '-' => Tok::Minus,
                    '=' => Tok::Assign,
                    '/' => Tok::Slash,
                    other => {
                        return Err(lex_error(start_line, start_col, &format!("unexpected character `{other}`")))
                    }
                };
                (t, 1)
            };
            advance(len, &mut i, &mut col);
            tok
        };
        out.push(Token { tok, line: start_line, column: start_col });
    }
    out.push(Token { tok: Tok::Eof, line, column: col });
    Ok(out)
}

fn lex_error(line: usize, column: usize, msg: &str) -> ParseError {
    ParseError { line, column, kind: ParseErrorKind::Lexical(msg.to_string()) }
}
