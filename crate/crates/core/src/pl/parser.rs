use thiserror::Error;

use super::Sentence;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unknown token {0:?}")]
    UnknownToken(String),
    #[error("unexpected token {0:?}")]
    UnexpectedToken(String),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unbalanced parenthesis")]
    UnbalancedParen,
    #[error("empty input")]
    Empty,
    #[error("nesting deeper than {MAX_NESTING}")]
    TooDeep,
}

/// Bound on nested negations, parentheses and chained implications, so that
/// hostile input cannot exhaust the stack.
pub const MAX_NESTING: usize = 512;

/// A syntax error; `position` is a character offset into the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at position {position}: {kind}")]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Atom(u32),
    Not,
    And,
    Or,
    Implies,
    LParen,
    RParen,
}

impl Tok {
    fn text(&self) -> String {
        match self {
            Tok::Atom(i) => format!("p{i}"),
            Tok::Not => "~".into(),
            Tok::And => "&".into(),
            Tok::Or => "|".into(),
            Tok::Implies => "->".into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
        }
    }
}

fn subscript_digit(c: char) -> Option<u32> {
    let d = c as u32;
    (0x2080..=0x2089).contains(&d).then(|| d - 0x2080)
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |position, s: String| ParseError { position, kind: ParseErrorKind::UnknownToken(s) };
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '~' | '∼' | '¬' => Tok::Not,
            '&' | '∧' => Tok::And,
            '|' | '∨' => Tok::Or,
            '⊃' => Tok::Implies,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '-' => {
                if chars.get(i + 1) == Some(&'>') {
                    i += 1;
                    Tok::Implies
                } else {
                    return Err(err(start, "-".into()));
                }
            }
            'p' | 'π' => {
                let mut j = i + 1;
                let mut n: u64 = 0;
                while let Some(d) = chars.get(j).and_then(|&d| d.to_digit(10).or_else(|| subscript_digit(d))) {
                    n = n * 10 + d as u64;
                    if n > u32::MAX as u64 {
                        return Err(err(start, chars[start..=j].iter().collect()));
                    }
                    j += 1;
                }
                if j == i + 1 {
                    return Err(err(start, c.to_string()));
                }
                i = j - 1;
                Tok::Atom(n as u32)
            }
            other => return Err(err(start, other.to_string())),
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn fail(&self, kind: ParseErrorKind) -> ParseError {
        ParseError { position: self.here(), kind }
    }

    fn unexpected(&self) -> ParseError {
        match self.peek() {
            None => self.fail(ParseErrorKind::UnexpectedEnd),
            Some(Tok::RParen) => self.fail(ParseErrorKind::UnbalancedParen),
            Some(t) => self.fail(ParseErrorKind::UnexpectedToken(t.text())),
        }
    }

    fn nested<T>(&mut self, f: impl FnOnce(&mut Self) -> Result<T, ParseError>) -> Result<T, ParseError> {
        if self.depth >= MAX_NESTING {
            return Err(self.fail(ParseErrorKind::TooDeep));
        }
        self.depth += 1;
        let out = f(self);
        self.depth -= 1;
        out
    }

    fn implication(&mut self) -> Result<Sentence, ParseError> {
        let lhs = self.disjunction()?;
        if self.peek() == Some(&Tok::Implies) {
            self.pos += 1;
            let rhs = self.nested(Self::implication)?;
            return Ok(Sentence::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Sentence, ParseError> {
        let mut lhs = self.conjunction()?;
        while self.peek() == Some(&Tok::Or) {
            self.pos += 1;
            lhs = Sentence::or(lhs, self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Sentence, ParseError> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Tok::And) {
            self.pos += 1;
            lhs = Sentence::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Sentence, ParseError> {
        match self.peek() {
            Some(Tok::Not) => {
                self.pos += 1;
                Ok(Sentence::not(self.nested(Self::unary)?))
            }
            Some(Tok::Atom(i)) => {
                let i = *i;
                self.pos += 1;
                Ok(Sentence::Atom(i))
            }
            Some(Tok::LParen) => {
                let open = self.here();
                self.pos += 1;
                let inner = self.nested(Self::implication)?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    None => Err(ParseError { position: open, kind: ParseErrorKind::UnbalancedParen }),
                    Some(_) => Err(self.unexpected()),
                }
            }
            _ => Err(self.unexpected()),
        }
    }
}

/// Parses the ASCII surface syntax (`p0`, `~`, `&`, `|`, `->`, parentheses).
/// The symbolic forms `π₀ ∼ ∧ ∨ ⊃` are accepted too.
///
/// Precedence from tightest: `~`, `&`, `|`, `->`; `&` and `|` associate to
/// the left, `->` to the right.
pub fn parse(text: &str) -> Result<Sentence, ParseError> {
    let toks = lex(text)?;
    let end = text.chars().count();
    if toks.is_empty() {
        return Err(ParseError { position: 0, kind: ParseErrorKind::Empty });
    }
    let mut p = Parser { toks, pos: 0, end, depth: 0 };
    let s = p.implication()?;
    if p.pos < p.toks.len() {
        return Err(p.unexpected());
    }
    Ok(s)
}
