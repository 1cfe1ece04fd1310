//! Recursive-descent parser.
//!
//! Grammar, loosest to tightest binding:
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' unary)?
//! atom  := number | 'x' | name '(' expr ')' | '(' expr ')'
//! ```
//!
//! '^' binds tighter than unary minus, so `-x^2` is `-(x^2)`.
//! Exponents must be constant: the solver needs expressions that are
//! smooth in x, and a variable exponent routes through `powf` whose
//! real-domain restrictions would make monotonicity analysis unreliable.
//! Constant exponents are folded to a literal at parse time.

use super::ast::{BinaryOp, Expr, UnaryFn};
use super::error::ExprError;
use super::token::{tokenize, Token, TokenKind};
use crate::expr::ast::eval_ast;

/// Parses a source string into an expression tree.
pub fn parse(source: &str) -> Result<Expr, ExprError> {
    let tokens = tokenize(source)?;
    parse_tokens(&tokens)
}

/// Parses an already-lexed token stream, which must end with an End token.
pub fn parse_tokens(tokens: &[Token]) -> Result<Expr, ExprError> {
    if tokens.is_empty() {
        return Err(ExprError::UnexpectedToken {
            found: "end of input".to_string(),
            expected: "an expression",
            position: 0,
        });
    }
    let mut p = Parser { tokens, pos: 0 };
    let e = p.expr()?;
    p.expect_end()?;
    Ok(e)
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token {
        // tokenize always appends End, so the last token is a backstop.
        self.tokens
            .get(self.pos)
            .unwrap_or(&self.tokens[self.tokens.len() - 1])
    }

    fn advance(&mut self) -> &Token {
        let t = &self.tokens[self.pos.min(self.tokens.len() - 1)];
        if self.pos < self.tokens.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn peek_operator(&self) -> Option<char> {
        let t = self.peek();
        if t.kind == TokenKind::Operator {
            t.lexeme.chars().next()
        } else {
            None
        }
    }

    fn unexpected(&self, expected: &'static str) -> ExprError {
        let t = self.peek();
        let found = if t.kind == TokenKind::End {
            "end of input".to_string()
        } else {
            format!("'{}'", t.lexeme)
        };
        ExprError::UnexpectedToken {
            found,
            expected,
            position: t.position,
        }
    }

    fn expect_end(&self) -> Result<(), ExprError> {
        if self.peek().kind == TokenKind::End {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        while let Some(c) = self.peek_operator() {
            let op = match c {
                '+' => BinaryOp::Add,
                '-' => BinaryOp::Sub,
                _ => break,
            };
            self.advance();
            let rhs = self.term()?;
            lhs = Expr::binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        while let Some(c) = self.peek_operator() {
            let op = match c {
                '*' => BinaryOp::Mul,
                '/' => BinaryOp::Div,
                _ => break,
            };
            self.advance();
            let rhs = self.unary()?;
            lhs = Expr::binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if self.peek_operator() == Some('-') {
            self.advance();
            let inner = self.unary()?;
            return Ok(Expr::negate(inner));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if self.peek_operator() == Some('^') {
            let caret_pos = self.peek().position;
            self.advance();
            // Right-assoc and tighter than unary minus on the right:
            // x^-2 and x^2^3 both parse.
            let exponent = self.unary()?;
            let folded = self.fold_exponent(exponent, caret_pos)?;
            return Ok(Expr::binary(BinaryOp::Pow, base, folded));
        }
        Ok(base)
    }

    fn fold_exponent(&self, exponent: Expr, caret_pos: usize) -> Result<Expr, ExprError> {
        if !exponent.is_constant() {
            return Err(ExprError::NonConstantExponent {
                position: caret_pos,
            });
        }
        let v = eval_ast(&exponent, f64::NAN)?;
        if !v.is_finite() {
            return Err(ExprError::NonFiniteExponent {
                position: caret_pos,
            });
        }
        Ok(Expr::Constant(v))
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        match self.peek().kind {
            TokenKind::Number => {
                let t = self.advance();
                // The tokenizer already rejected overflowing literals.
                let v: f64 = t.lexeme.parse().expect("lexer-validated number");
                Ok(Expr::Constant(v))
            }
            TokenKind::Identifier => {
                let (name, position) = {
                    let t = self.advance();
                    (t.lexeme.clone(), t.position)
                };
                if name == "x" {
                    return Ok(Expr::Variable);
                }
                let function = match name.as_str() {
                    "ln" => UnaryFn::Ln,
                    "exp" => UnaryFn::Exp,
                    "sqrt" => UnaryFn::Sqrt,
                    _ => return Err(ExprError::UnknownIdentifier { name, position }),
                };
                self.expect_paren('(')?;
                let arg = self.expr()?;
                self.expect_paren(')')?;
                Ok(Expr::call(function, arg))
            }
            TokenKind::Paren if self.peek().lexeme == "(" => {
                self.advance();
                let inner = self.expr()?;
                self.expect_paren(')')?;
                Ok(inner)
            }
            _ => Err(self.unexpected("a number, 'x', a function call, or '('")),
        }
    }

    fn expect_paren(&mut self, which: char) -> Result<(), ExprError> {
        let t = self.peek();
        if t.kind == TokenKind::Paren && t.lexeme.starts_with(which) {
            self.advance();
            Ok(())
        } else {
            Err(self.unexpected(if which == '(' { "'('" } else { "')'" }))
        }
    }
}
