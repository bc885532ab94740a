//! Tag-pattern syntax over the coarse-tag alphabet.
//!
//! Grammar: alternation of concatenations of starred/plussed atoms,
//! where an atom is a tag symbol or a parenthesized group.

use crate::error::{Error, Result};
use crate::preprocess::CoarseTag;

/// Abstract syntax of a tag pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternAst {
    Symbol(CoarseTag),
    Concat(Vec<PatternAst>),
    Alt(Vec<PatternAst>),
    Star(Box<PatternAst>),
    Plus(Box<PatternAst>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Lexeme {
    Symbol(CoarseTag),
    LParen,
    RParen,
    Pipe,
    Star,
    Plus,
}

fn lex(source: &str) -> Result<Vec<(Lexeme, usize)>> {
    let mut out = Vec::new();
    let chars: Vec<char> = source.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            _ if c.is_whitespace() => i += 1,
            '(' => {
                out.push((Lexeme::LParen, i));
                i += 1;
            }
            ')' => {
                out.push((Lexeme::RParen, i));
                i += 1;
            }
            '|' => {
                out.push((Lexeme::Pipe, i));
                i += 1;
            }
            '*' => {
                out.push((Lexeme::Star, i));
                i += 1;
            }
            '+' => {
                out.push((Lexeme::Plus, i));
                i += 1;
            }
            _ if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_alphabetic() {
                    i += 1;
                }
                let name: String = chars[start..i].iter().collect();
                match CoarseTag::from_name(&name) {
                    Some(tag) => out.push((Lexeme::Symbol(tag), start)),
                    None => {
                        return Err(Error::Pattern {
                            position: start,
                            message: format!("unknown tag symbol {name:?}"),
                        })
                    }
                }
            }
            _ => {
                return Err(Error::Pattern {
                    position: i,
                    message: format!("unexpected character {c:?}"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    lexemes: Vec<(Lexeme, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Lexeme> {
        self.lexemes.get(self.pos).map(|(l, _)| l)
    }

    fn here(&self) -> usize {
        self.lexemes.get(self.pos).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Lexeme> {
        let l = self.lexemes.get(self.pos).map(|(l, _)| l.clone());
        self.pos += 1;
        l
    }

    fn alternation(&mut self) -> Result<PatternAst> {
        let mut branches = vec![self.concatenation()?];
        while self.peek() == Some(&Lexeme::Pipe) {
            self.bump();
            branches.push(self.concatenation()?);
        }
        Ok(if branches.len() == 1 { branches.pop().unwrap() } else { PatternAst::Alt(branches) })
    }

    fn concatenation(&mut self) -> Result<PatternAst> {
        let mut parts = Vec::new();
        while let Some(Lexeme::Symbol(_) | Lexeme::LParen) = self.peek() {
            parts.push(self.postfix()?);
        }
        if parts.is_empty() {
            return Err(Error::Pattern {
                position: self.here(),
                message: "expected a tag symbol or group".into(),
            });
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { PatternAst::Concat(parts) })
    }

    fn postfix(&mut self) -> Result<PatternAst> {
        let mut node = self.atom()?;
        loop {
            match self.peek() {
                Some(Lexeme::Star) => {
                    self.bump();
                    node = PatternAst::Star(Box::new(node));
                }
                Some(Lexeme::Plus) => {
                    self.bump();
                    node = PatternAst::Plus(Box::new(node));
                }
                _ => break,
            }
        }
        Ok(node)
    }

    fn atom(&mut self) -> Result<PatternAst> {
        let position = self.here();
        match self.bump() {
            Some(Lexeme::Symbol(tag)) => Ok(PatternAst::Symbol(tag)),
            Some(Lexeme::LParen) => {
                let inner = self.alternation()?;
                let position = self.here();
                match self.bump() {
                    Some(Lexeme::RParen) => Ok(inner),
                    _ => Err(Error::Pattern { position, message: "expected ')'".into() }),
                }
            }
            other => Err(Error::Pattern {
                position,
                message: format!("expected a tag symbol or '(', found {other:?}"),
            }),
        }
    }
}

/// Parse a pattern source string into its AST.
pub fn parse(source: &str) -> Result<PatternAst> {
    let lexemes = lex(source)?;
    let mut parser = Parser { lexemes, pos: 0, end: source.chars().count() };
    let ast = parser.alternation()?;
    if parser.pos != parser.lexemes.len() {
        return Err(Error::Pattern {
            position: parser.here(),
            message: "unexpected trailing input".into(),
        });
    }
    Ok(ast)
}
