//! A small s-expression reader for SMT-LIB 2 scripts, tracking positions.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AtomKind {
    Symbol,
    Keyword,
    Numeral,
    Decimal,
    /// `#x..` / `#b..` literals
    BitLiteral,
    Str,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SExpr {
    Atom { kind: AtomKind, text: String, pos: Pos },
    List { items: Vec<SExpr>, pos: Pos },
}

impl SExpr {
    pub fn pos(&self) -> Pos {
        match self {
            SExpr::Atom { pos, .. } | SExpr::List { pos, .. } => *pos,
        }
    }

    pub fn symbol(&self) -> Option<&str> {
        match self {
            SExpr::Atom {
                kind: AtomKind::Symbol,
                text,
                ..
            } => Some(text),
            _ => None,
        }
    }
}

pub fn parse_error(pos: Pos, message: impl Into<String>) -> Error {
    Error::Parse {
        line: pos.line,
        column: pos.column,
        message: message.into(),
    }
}

struct Reader<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl Reader<'_> {
    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            column: self.column,
        }
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

    fn skip_trivia(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == ';' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn read(&mut self) -> Result<Option<SExpr>> {
        self.skip_trivia();
        let pos = self.pos();
        let Some(&c) = self.chars.peek() else {
            return Ok(None);
        };
        match c {
            '(' => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_trivia();
                    match self.chars.peek() {
                        None => return Err(parse_error(pos, "unbalanced `(`")),
                        Some(')') => {
                            self.bump();
                            return Ok(Some(SExpr::List { items, pos }));
                        }
                        Some(_) => items.push(self.read()?.expect("non-empty input")),
                    }
                }
            }
            ')' => Err(parse_error(pos, "unexpected `)`")),
            '|' => {
                self.bump();
                let mut text = String::new();
                loop {
                    match self.bump() {
                        None => return Err(parse_error(pos, "unterminated quoted symbol")),
                        Some('|') => break,
                        Some(c) => text.push(c),
                    }
                }
                Ok(Some(SExpr::Atom {
                    kind: AtomKind::Symbol,
                    text,
                    pos,
                }))
            }
            '"' => {
                self.bump();
                let mut text = String::new();
                loop {
                    match self.bump() {
                        None => return Err(parse_error(pos, "unterminated string literal")),
                        Some('"') if self.chars.peek() == Some(&'"') => {
                            self.bump();
                            text.push('"');
                        }
                        Some('"') => break,
                        Some(c) => text.push(c),
                    }
                }
                Ok(Some(SExpr::Atom {
                    kind: AtomKind::Str,
                    text,
                    pos,
                }))
            }
            _ => {
                let mut text = String::new();
                while let Some(&c) = self.chars.peek() {
                    if c.is_whitespace() || matches!(c, '(' | ')' | ';' | '"' | '|') {
                        break;
                    }
                    text.push(c);
                    self.bump();
                }
                let kind = classify(&text).ok_or_else(|| parse_error(pos, format!("malformed token `{text}`")))?;
                Ok(Some(SExpr::Atom { kind, text, pos }))
            }
        }
    }
}

fn classify(text: &str) -> Option<AtomKind> {
    let first = text.chars().next()?;
    if first.is_ascii_digit() {
        let mut parts = text.splitn(2, '.');
        let int = parts.next()?;
        let valid_int = int.bytes().all(|b| b.is_ascii_digit()) && (int == "0" || !int.starts_with('0'));
        return match parts.next() {
            None if valid_int => Some(AtomKind::Numeral),
            Some(frac) if valid_int && !frac.is_empty() && frac.bytes().all(|b| b.is_ascii_digit()) => {
                Some(AtomKind::Decimal)
            }
            _ => None,
        };
    }
    match first {
        '#' => Some(AtomKind::BitLiteral),
        ':' => Some(AtomKind::Keyword),
        _ => Some(AtomKind::Symbol),
    }
}

/// Reads every top-level s-expression of a script.
pub fn read_all(text: &str) -> Result<Vec<SExpr>> {
    let mut reader = Reader {
        chars: text.chars().peekable(),
        line: 1,
        column: 1,
    };
    let mut out = Vec::new();
    while let Some(e) = reader.read()? {
        out.push(e);
    }
    Ok(out)
}
