//! Tokenizer for the expression language.

use super::error::ExprError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Number,
    Identifier,
    Operator,
    Paren,
    End,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    /// Byte offset of the first character in the source.
    pub position: usize,
}

/// Splits `source` into tokens, ending with an `End` token positioned
/// one past the last character. Whitespace separates tokens and is
/// otherwise ignored.
///
/// Number grammar: `digits ('.' digits)? ([eE] [+-]? digits)?`. A
/// literal too large for a double (it would read back as infinity) is
/// rejected here so every `Number` token carries a finite value.
pub fn tokenize(source: &str) -> Result<Vec<Token>, ExprError> {
    let chars: Vec<(usize, char)> = source.char_indices().collect();
    let mut tokens = Vec::new();
    let mut i = 0usize;

    while i < chars.len() {
        let (position, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && chars[i].1 == '.' {
                if i + 1 < chars.len() && chars[i + 1].1.is_ascii_digit() {
                    i += 1;
                    while i < chars.len() && chars[i].1.is_ascii_digit() {
                        i += 1;
                    }
                } else {
                    return Err(ExprError::InvalidCharacter {
                        found: '.',
                        position: chars[i].0,
                    });
                }
            }
            if i < chars.len() && (chars[i].1 == 'e' || chars[i].1 == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j].1 == '+' || chars[j].1 == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].1.is_ascii_digit() {
                    i = j;
                    while i < chars.len() && chars[i].1.is_ascii_digit() {
                        i += 1;
                    }
                }
                // Otherwise the 'e' is left for the identifier rule;
                // "2e" lexes as number 2 then identifier e, which the
                // parser rejects with a clear message.
            }
            let lexeme: String = chars[start..i].iter().map(|&(_, ch)| ch).collect();
            let value: f64 = lexeme.parse().expect("lexeme matches the number grammar");
            if !value.is_finite() {
                return Err(ExprError::NumberOverflow { position });
            }
            tokens.push(Token {
                kind: TokenKind::Number,
                lexeme,
                position,
            });
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_alphanumeric() {
                i += 1;
            }
            let lexeme: String = chars[start..i].iter().map(|&(_, ch)| ch).collect();
            tokens.push(Token {
                kind: TokenKind::Identifier,
                lexeme,
                position,
            });
            continue;
        }
        let kind = match c {
            '+' | '-' | '*' | '/' | '^' => TokenKind::Operator,
            '(' | ')' => TokenKind::Paren,
            _ => {
                return Err(ExprError::InvalidCharacter {
                    found: c,
                    position,
                })
            }
        };
        tokens.push(Token {
            kind,
            lexeme: c.to_string(),
            position,
        });
        i += 1;
    }

    tokens.push(Token {
        kind: TokenKind::End,
        lexeme: String::new(),
        position: source.len(),
    });
    Ok(tokens)
}
