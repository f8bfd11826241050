//! Text syntax:
//!
//! ```text
//! clause := atom '.' | atom ':-' atom (',' atom)* '.'
//! atom   := pred '(' term (',' term)* ')'
//! term   := Variable | constant | integer
//! ```
//!
//! Predicates and symbolic constants start with a lowercase letter,
//! variables with an uppercase letter or `_`; each bare `_` is a fresh
//! variable. `%` starts a comment running to the end of the line.

use std::collections::HashMap;
use std::iter::Peekable;
use std::str::CharIndices;

use crate::error::{Error, Result};
use crate::value::{SymbolTable, Value};

use super::ast::{Atom, Pos, Program, Rule, Term};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Var(String),
    Int(i64),
    LParen,
    RParen,
    Comma,
    Dot,
    Implies,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) | Tok::Var(s) => format!("`{s}`"),
            Tok::Int(i) => format!("`{i}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Implies => "`:-`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

struct Lexer<'a> {
    src: &'a str,
    chars: Peekable<CharIndices<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Self {
            src,
            chars: src.char_indices().peekable(),
            line: 1,
            column: 1,
        }
    }

    fn bump(&mut self) -> Option<(usize, char)> {
        let (i, c) = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some((i, c))
    }

    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            column: self.column,
        }
    }

    fn error(pos: Pos, message: impl Into<String>) -> Error {
        Error::Syntax {
            line: pos.line,
            column: pos.column,
            message: message.into(),
        }
    }

    fn take_while(&mut self, start: usize, pred: impl Fn(char) -> bool) -> &'a str {
        let mut end = start;
        while let Some(&(i, c)) = self.chars.peek() {
            if !pred(c) {
                break;
            }
            end = i + c.len_utf8();
            self.bump();
        }
        &self.src[start..end]
    }

    fn next_token(&mut self) -> Result<(Tok, Pos)> {
        loop {
            match self.chars.peek() {
                Some(&(_, c)) if c.is_whitespace() => {
                    self.bump();
                }
                Some(&(_, '%')) => {
                    while let Some(&(_, c)) = self.chars.peek() {
                        if c == '\n' {
                            break;
                        }
                        self.bump();
                    }
                }
                _ => break,
            }
        }
        let pos = self.pos();
        let Some(&(start, c)) = self.chars.peek() else {
            return Ok((Tok::Eof, pos));
        };
        let ident_char = |c: char| c.is_ascii_alphanumeric() || c == '_';
        let tok = match c {
            '(' | ')' | ',' | '.' => {
                self.bump();
                match c {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    ',' => Tok::Comma,
                    _ => Tok::Dot,
                }
            }
            ':' => {
                self.bump();
                match self.bump() {
                    Some((_, '-')) => Tok::Implies,
                    _ => return Err(Self::error(pos, "expected `:-`")),
                }
            }
            'a'..='z' => Tok::Ident(self.take_while(start, ident_char).to_string()),
            'A'..='Z' | '_' => Tok::Var(self.take_while(start, ident_char).to_string()),
            '0'..='9' | '-' | '+' => {
                self.bump();
                let digits = self.take_while(start + 1, |c| c.is_ascii_digit());
                let text = &self.src[start..start + 1 + digits.len()];
                text.parse::<i64>()
                    .map(Tok::Int)
                    .map_err(|_| Self::error(pos, format!("invalid integer `{text}`")))?
            }
            other => return Err(Self::error(pos, format!("unexpected character `{other}`"))),
        };
        Ok((tok, pos))
    }
}

struct Parser<'a, 's> {
    lexer: Lexer<'a>,
    peeked: Option<(Tok, Pos)>,
    symbols: &'s mut SymbolTable,
    fresh: usize,
}

impl<'a, 's> Parser<'a, 's> {
    fn new(src: &'a str, symbols: &'s mut SymbolTable) -> Self {
        Self {
            lexer: Lexer::new(src),
            peeked: None,
            symbols,
            fresh: 0,
        }
    }

    fn peek(&mut self) -> Result<&(Tok, Pos)> {
        if self.peeked.is_none() {
            self.peeked = Some(self.lexer.next_token()?);
        }
        Ok(self.peeked.as_ref().unwrap())
    }

    fn next(&mut self) -> Result<(Tok, Pos)> {
        self.peek()?;
        Ok(self.peeked.take().unwrap())
    }

    fn expect(&mut self, want: Tok) -> Result<Pos> {
        let (tok, pos) = self.next()?;
        if tok == want {
            Ok(pos)
        } else {
            Err(Lexer::error(
                pos,
                format!("expected {}, found {}", want.describe(), tok.describe()),
            ))
        }
    }

    fn term(&mut self) -> Result<Term> {
        let (tok, pos) = self.next()?;
        Ok(match tok {
            Tok::Var(v) if v == "_" => {
                self.fresh += 1;
                Term::Var(format!("_#{}", self.fresh))
            }
            Tok::Var(v) => Term::Var(v),
            Tok::Ident(s) => Term::Const(self.symbols.intern(&s)),
            Tok::Int(i) => Term::Const(Value::Int(i)),
            other => {
                return Err(Lexer::error(
                    pos,
                    format!("expected a term, found {}", other.describe()),
                ))
            }
        })
    }

    fn atom(&mut self) -> Result<Atom> {
        let (tok, pos) = self.next()?;
        let Tok::Ident(predicate) = tok else {
            return Err(Lexer::error(
                pos,
                format!("expected a predicate, found {}", tok.describe()),
            ));
        };
        self.expect(Tok::LParen)?;
        let mut args = vec![self.term()?];
        loop {
            let (tok, pos) = self.next()?;
            match tok {
                Tok::Comma => args.push(self.term()?),
                Tok::RParen => break,
                other => {
                    return Err(Lexer::error(
                        pos,
                        format!("expected `,` or `)`, found {}", other.describe()),
                    ))
                }
            }
        }
        Ok(Atom {
            predicate,
            args,
            pos,
        })
    }

    fn body(&mut self) -> Result<Vec<Atom>> {
        let mut body = vec![self.atom()?];
        while self.peek()?.0 == Tok::Comma {
            self.next()?;
            body.push(self.atom()?);
        }
        Ok(body)
    }

    fn program(&mut self) -> Result<Program> {
        let mut program = Program::default();
        while self.peek()?.0 != Tok::Eof {
            let head = self.atom()?;
            let (tok, pos) = self.next()?;
            match tok {
                Tok::Dot => program.facts.push(head),
                Tok::Implies => {
                    let body = self.body()?;
                    self.expect(Tok::Dot)?;
                    program.rules.push(Rule { head, body });
                }
                other => {
                    return Err(Lexer::error(
                        pos,
                        format!("expected `.` or `:-`, found {}", other.describe()),
                    ))
                }
            }
        }
        Ok(program)
    }
}

/// Parses and validates a program: consistent arities, ground facts, and
/// every head variable bound in its body.
pub fn parse_program(text: &str) -> Result<Program> {
    parse_program_with(text, &mut SymbolTable::new())
}

pub fn parse_program_with(text: &str, symbols: &mut SymbolTable) -> Result<Program> {
    let program = Parser::new(text, symbols).program()?;
    validate(&program)?;
    Ok(program)
}

/// Parses a comma-separated conjunction of atoms, optionally ending in `.`.
pub fn parse_query(text: &str, symbols: &mut SymbolTable) -> Result<Vec<Atom>> {
    let mut parser = Parser::new(text, symbols);
    let body = parser.body()?;
    if parser.peek()?.0 == Tok::Dot {
        parser.next()?;
    }
    let (tok, pos) = parser.next()?;
    if tok != Tok::Eof {
        return Err(Lexer::error(
            pos,
            format!("expected end of query, found {}", tok.describe()),
        ));
    }
    Ok(body)
}

/// Checks that every predicate is used with one arity throughout `atoms`,
/// seeding from `known`.
pub fn check_arities<'a>(
    atoms: impl IntoIterator<Item = &'a Atom>,
    known: &mut HashMap<String, usize>,
) -> Result<()> {
    for atom in atoms {
        match known.get(&atom.predicate) {
            Some(&expected) if expected != atom.arity() => {
                return Err(Error::ArityMismatch {
                    predicate: atom.predicate.clone(),
                    expected,
                    found: atom.arity(),
                    line: atom.pos.line,
                    column: atom.pos.column,
                })
            }
            Some(_) => {}
            None => {
                known.insert(atom.predicate.clone(), atom.arity());
            }
        }
    }
    Ok(())
}

pub fn validate(program: &Program) -> Result<()> {
    let mut arities = HashMap::new();
    let all_atoms = program
        .facts
        .iter()
        .chain(program.rules.iter().flat_map(|r| std::iter::once(&r.head).chain(&r.body)));
    check_arities(all_atoms, &mut arities)?;

    for fact in &program.facts {
        if let Some(v) = fact.vars().next() {
            return Err(Error::NonGroundFact {
                predicate: fact.predicate.clone(),
                variable: v.to_string(),
                line: fact.pos.line,
                column: fact.pos.column,
            });
        }
    }
    for rule in &program.rules {
        for v in rule.head.vars() {
            if !rule.body.iter().any(|a| a.vars().any(|b| b == v)) {
                return Err(Error::UnrestrictedHead {
                    variable: v.to_string(),
                    line: rule.head.pos.line,
                    column: rule.head.pos.column,
                });
            }
        }
    }
    Ok(())
}
