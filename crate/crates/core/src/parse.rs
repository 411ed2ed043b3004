//! Text syntax for words and presentations.
//!
//! ```text
//! presentation := '<' genlist '|' relist '>'
//! genlist      := name (',' name)*
//! relist       := relation (',' relation)* | ''
//! relation     := word | word '=' word          (w1 = w2 is stored as w1 w2^-1)
//! word         := term+ | '1'
//! term         := name ('^' int)?                ('*' between terms is optional)
//! ```

use std::fmt;

use thiserror::Error;

use crate::presentation::Presentation;
use crate::words::{Generator, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownGenerator(String),
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub column: usize,
}

impl ParseError {
    pub(crate) fn bad_name(name: &str) -> Self {
        ParseError { kind: ParseErrorKind::Invalid(format!("invalid generator name {name:?}")), line: 1, column: 1 }
    }

    pub(crate) fn semantic(msg: String) -> Self {
        ParseError { kind: ParseErrorKind::Invalid(msg), line: 1, column: 1 }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::Syntax(m) => write!(f, "syntax error at {}:{}: {m}", self.line, self.column),
            ParseErrorKind::UnknownGenerator(g) => {
                write!(f, "unknown generator {g} at {}:{}", self.line, self.column)
            }
            ParseErrorKind::Invalid(m) => write!(f, "{m} (at {}:{})", self.line, self.column),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Name(String),
    Int(i64),
    Caret,
    Star,
    Lt,
    Gt,
    Bar,
    Comma,
    Eq,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Name(n) => write!(f, "name {n:?}"),
            Tok::Int(i) => write!(f, "integer {i}"),
            Tok::Caret => f.write_str("'^'"),
            Tok::Star => f.write_str("'*'"),
            Tok::Lt => f.write_str("'<'"),
            Tok::Gt => f.write_str("'>'"),
            Tok::Bar => f.write_str("'|'"),
            Tok::Comma => f.write_str("','"),
            Tok::Eq => f.write_str("'='"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

impl Lexer {
    fn new(text: &str) -> Result<Self, ParseError> {
        let chars: Vec<char> = text.chars().collect();
        let mut toks = Vec::new();
        let (mut line, mut col) = (1, 1);
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let (l0, c0) = (line, col);
            let advance = |i: &mut usize, col: &mut usize| {
                *i += 1;
                *col += 1;
            };
            if c == '\n' {
                i += 1;
                line += 1;
                col = 1;
                continue;
            }
            if c.is_whitespace() {
                advance(&mut i, &mut col);
                continue;
            }
            if c.is_alphabetic() {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    advance(&mut i, &mut col);
                }
                toks.push((Tok::Name(chars[start..i].iter().collect()), l0, c0));
                continue;
            }
            if c.is_ascii_digit() || ((c == '-' || c == '+') && chars.get(i + 1).is_some_and(char::is_ascii_digit)) {
                let start = i;
                advance(&mut i, &mut col);
                while i < chars.len() && chars[i].is_ascii_digit() {
                    advance(&mut i, &mut col);
                }
                let s: String = chars[start..i].iter().collect();
                let v = s.parse::<i64>().map_err(|_| ParseError {
                    kind: ParseErrorKind::Syntax(format!("integer {s} out of range")),
                    line: l0,
                    column: c0,
                })?;
                toks.push((Tok::Int(v), l0, c0));
                continue;
            }
            let t = match c {
                '^' => Tok::Caret,
                '*' => Tok::Star,
                '<' | '⟨' => Tok::Lt,
                '>' | '⟩' => Tok::Gt,
                '|' => Tok::Bar,
                ',' => Tok::Comma,
                '=' => Tok::Eq,
                _ => {
                    return Err(ParseError {
                        kind: ParseErrorKind::Syntax(format!("unexpected character {c:?}")),
                        line: l0,
                        column: c0,
                    })
                }
            };
            advance(&mut i, &mut col);
            toks.push((t, l0, c0));
        }
        toks.push((Tok::End, line, col));
        Ok(Lexer { toks, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn next(&mut self) -> (Tok, usize, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err_here(&self, msg: String) -> ParseError {
        let (_, line, column) = self.toks[self.pos];
        ParseError { kind: ParseErrorKind::Syntax(msg), line, column }
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.next();
            Ok(())
        } else {
            Err(self.err_here(format!("expected {want}, found {}", self.peek())))
        }
    }
}

fn resolve(name: &str, alphabet: Option<&[Generator]>, line: usize, column: usize) -> Result<Generator, ParseError> {
    match alphabet {
        Some(a) => a.iter().find(|g| g.name() == name).cloned().ok_or(ParseError {
            kind: ParseErrorKind::UnknownGenerator(name.to_string()),
            line,
            column,
        }),
        None => Generator::new(name).map_err(|e| ParseError { kind: ParseErrorKind::Invalid(e.to_string()), line, column }),
    }
}

fn parse_word_tokens(lx: &mut Lexer, alphabet: Option<&[Generator]>) -> Result<Word, ParseError> {
    let mut w = Word::identity();
    let mut terms = 0;
    loop {
        match lx.peek().clone() {
            Tok::Star if terms > 0 => {
                lx.next();
                if !matches!(lx.peek(), Tok::Name(_) | Tok::Int(1)) {
                    return Err(lx.err_here(format!("expected a generator after '*', found {}", lx.peek())));
                }
            }
            Tok::Name(n) => {
                let (_, line, col) = lx.next();
                let g = resolve(&n, alphabet, line, col)?;
                let mut exp = 1;
                if *lx.peek() == Tok::Caret {
                    lx.next();
                    match lx.next() {
                        (Tok::Int(e), _, _) => exp = e,
                        (t, line, column) => {
                            return Err(ParseError {
                                kind: ParseErrorKind::Syntax(format!("expected an integer exponent, found {t}")),
                                line,
                                column,
                            })
                        }
                    }
                }
                w = w.concat(&Word::power(&g, exp));
                terms += 1;
            }
            Tok::Int(1) => {
                lx.next();
                terms += 1;
            }
            _ => break,
        }
    }
    if terms == 0 {
        return Err(lx.err_here(format!("expected a word, found {}", lx.peek())));
    }
    Ok(w)
}

fn parse_relation_tokens(lx: &mut Lexer, alphabet: &[Generator]) -> Result<Word, ParseError> {
    let lhs = parse_word_tokens(lx, Some(alphabet))?;
    if *lx.peek() == Tok::Eq {
        lx.next();
        let rhs = parse_word_tokens(lx, Some(alphabet))?;
        Ok(lhs.concat(&rhs.inverse()))
    } else {
        Ok(lhs)
    }
}

/// Parse a word. With an alphabet, names outside it are rejected.
pub fn parse_word(text: &str, alphabet: Option<&[Generator]>) -> Result<Word, ParseError> {
    let mut lx = Lexer::new(text)?;
    let w = parse_word_tokens(&mut lx, alphabet)?;
    lx.expect(Tok::End)?;
    Ok(w)
}

/// Parse `w` or `w1 = w2` over a fixed alphabet.
pub fn parse_relation(text: &str, alphabet: &[Generator]) -> Result<Word, ParseError> {
    let mut lx = Lexer::new(text)?;
    let w = parse_relation_tokens(&mut lx, alphabet)?;
    lx.expect(Tok::End)?;
    Ok(w)
}

pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let mut lx = Lexer::new(text)?;
    lx.expect(Tok::Lt)?;
    let mut gens: Vec<Generator> = Vec::new();
    loop {
        match lx.next() {
            (Tok::Name(n), line, column) => {
                let g = resolve(&n, None, line, column)?;
                if gens.contains(&g) {
                    return Err(ParseError {
                        kind: ParseErrorKind::Invalid(format!("generator {n} listed twice")),
                        line,
                        column,
                    });
                }
                gens.push(g);
            }
            (t, line, column) => {
                return Err(ParseError {
                    kind: ParseErrorKind::Syntax(format!("expected a generator name, found {t}")),
                    line,
                    column,
                })
            }
        }
        match lx.peek() {
            Tok::Comma => {
                lx.next();
            }
            Tok::Bar => break,
            t => return Err(lx.err_here(format!("expected ',' or '|', found {t}"))),
        }
    }
    lx.expect(Tok::Bar)?;
    let mut rels = Vec::new();
    if *lx.peek() != Tok::Gt {
        loop {
            rels.push(parse_relation_tokens(&mut lx, &gens)?);
            match lx.peek() {
                Tok::Comma => {
                    lx.next();
                }
                Tok::Gt => break,
                t => return Err(lx.err_here(format!("expected ',' or '>', found {t}"))),
            }
        }
    }
    lx.expect(Tok::Gt)?;
    lx.expect(Tok::End)?;
    Presentation::new("", gens, rels).map_err(|e| ParseError::semantic(e.to_string()))
}
