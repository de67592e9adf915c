//! Surface syntax for concept expressions:
//!
//! ```text
//! expr  := unary ( ("and" unary)+ | ("or" unary)+ )?
//! unary := "not" unary | NAME "some" unary | NAME | "(" expr ")"
//! ```
//!
//! Mixing `and` and `or` without parentheses is rejected.

use super::ParseError;
use crate::kb::{is_valid_name, ConceptExpression};

/// Renders an expression with `and` / `or` / `not` / `some`; compound
/// operands are parenthesized and `Thing` stands for the universal concept.
pub fn render_solution(expr: &ConceptExpression) -> String {
    expr.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token<'a> {
    Open,
    Close,
    Word(&'a str),
}

fn tokenize(text: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        if c == '(' || c == ')' || c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token::Word(&text[s..i]));
            }
            match c {
                '(' => out.push(Token::Open),
                ')' => out.push(Token::Close),
                _ => {}
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token::Word(&text[s..]));
    }
    out
}

struct Parser<'a> {
    tokens: Vec<Token<'a>>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError::syntax(1, format!("{} (at token {})", message.into(), self.pos + 1))
    }

    fn peek(&self) -> Option<&Token<'a>> {
        self.tokens.get(self.pos)
    }

    fn peek_word(&self, offset: usize) -> Option<&'a str> {
        match self.tokens.get(self.pos + offset) {
            Some(Token::Word(w)) => Some(w),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<ConceptExpression, ParseError> {
        let first = self.unary()?;
        let connective = match self.peek_word(0) {
            Some(w @ ("and" | "or")) => w,
            _ => return Ok(first),
        };
        let mut children = vec![first];
        while let Some(w) = self.peek_word(0) {
            match w {
                "and" | "or" if w == connective => {
                    self.pos += 1;
                    children.push(self.unary()?);
                }
                "and" | "or" => return Err(self.err("mixed `and`/`or` need parentheses")),
                _ => break,
            }
        }
        Ok(if connective == "and" {
            ConceptExpression::Conj(children)
        } else {
            ConceptExpression::Disj(children)
        })
    }

    fn unary(&mut self) -> Result<ConceptExpression, ParseError> {
        match self.peek().cloned() {
            Some(Token::Open) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Token::Close) {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(Token::Word("not")) => {
                self.pos += 1;
                Ok(ConceptExpression::neg(self.unary()?))
            }
            Some(Token::Word(name)) if is_valid_name(name) => {
                self.pos += 1;
                if self.peek_word(0) == Some("some") {
                    self.pos += 1;
                    Ok(ConceptExpression::exists(name, self.unary()?))
                } else {
                    Ok(ConceptExpression::atomic(name))
                }
            }
            Some(Token::Word(w)) => Err(self.err(format!("unexpected `{w}`"))),
            Some(Token::Close) => Err(self.err("unexpected `)`")),
            None => Err(self.err("unexpected end of expression")),
        }
    }
}

/// Parses the rendered form back into an expression, keeping the written
/// child order.
pub fn parse_expression(text: &str) -> Result<ConceptExpression, ParseError> {
    let mut p = Parser {
        tokens: tokenize(text),
        pos: 0,
    };
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}
