//! Tokens and the lexer.
//!
//! Maximal-munch, ASCII surface syntax. `'#'` starts a comment running to
//! the end of the line. Newlines and semicolons separate statements but
//! carry no information beyond that, so the lexer skips them like
//! whitespace; the grammar is self-delimiting. All positions are 1-based.

use super::SdslError;

/// Lexical category of a token.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Identifier,
    Integer,
    Slash,
    Star,
    Plus,
    Minus,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    /// The apostrophe that marks a primed index name.
    PrimeMark,
    /// `symbol`, `over`, or `conj`.
    Keyword,
    /// `:=`
    Assign,
    /// `antisym?`, `sym?`, or `real?`.
    Query,
}

/// One lexeme with its 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    pub line: usize,
    pub col: usize,
}

const KEYWORDS: [&str; 3] = ["symbol", "over", "conj"];
const QUERY_WORDS: [&str; 3] = ["antisym", "sym", "real"];

/// Split input text into tokens.
pub fn tokenize(text: &str) -> Result<Vec<Token>, SdslError> {
    let mut tokens = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();

    macro_rules! bump {
        () => {{
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                col = 1;
            } else if c.is_some() {
                col += 1;
            }
            c
        }};
    }

    while let Some(&c) = chars.peek() {
        let (tok_line, tok_col) = (line, col);
        match c {
            ' ' | '\t' | '\r' | '\n' | ';' => {
                bump!();
            }
            '#' => {
                while let Some(&n) = chars.peek() {
                    if n == '\n' {
                        break;
                    }
                    bump!();
                }
            }
            '0'..='9' => {
                let mut text = String::new();
                while let Some(&n) = chars.peek() {
                    if n.is_ascii_digit() {
                        text.push(n);
                        bump!();
                    } else {
                        break;
                    }
                }
                tokens.push(Token {
                    kind: TokenKind::Integer,
                    text,
                    line: tok_line,
                    col: tok_col,
                });
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let mut text = String::new();
                while let Some(&n) = chars.peek() {
                    if n.is_ascii_alphanumeric() || n == '_' {
                        text.push(n);
                        bump!();
                    } else {
                        break;
                    }
                }
                let kind = if chars.peek() == Some(&'?') {
                    if !QUERY_WORDS.contains(&text.as_str()) {
                        return Err(SdslError::Lex {
                            line,
                            col,
                            message: format!("'?' may only end antisym?, sym?, or real?, not '{text}?'"),
                        });
                    }
                    bump!();
                    text.push('?');
                    TokenKind::Query
                } else if KEYWORDS.contains(&text.as_str()) {
                    TokenKind::Keyword
                } else {
                    TokenKind::Identifier
                };
                tokens.push(Token { kind, text, line: tok_line, col: tok_col });
            }
            ':' => {
                bump!();
                if chars.peek() == Some(&'=') {
                    bump!();
                    tokens.push(Token {
                        kind: TokenKind::Assign,
                        text: ":=".to_string(),
                        line: tok_line,
                        col: tok_col,
                    });
                } else {
                    return Err(SdslError::Lex {
                        line: tok_line,
                        col: tok_col,
                        message: "':' must be followed by '=' to form ':='".to_string(),
                    });
                }
            }
            _ => {
                let kind = match c {
                    '/' => Some(TokenKind::Slash),
                    '*' => Some(TokenKind::Star),
                    '+' => Some(TokenKind::Plus),
                    '-' => Some(TokenKind::Minus),
                    '(' => Some(TokenKind::LParen),
                    ')' => Some(TokenKind::RParen),
                    '[' => Some(TokenKind::LBracket),
                    ']' => Some(TokenKind::RBracket),
                    ',' => Some(TokenKind::Comma),
                    '\'' => Some(TokenKind::PrimeMark),
                    _ => None,
                };
                match kind {
                    Some(kind) => {
                        bump!();
                        tokens.push(Token {
                            kind,
                            text: c.to_string(),
                            line: tok_line,
                            col: tok_col,
                        });
                    }
                    None => {
                        return Err(SdslError::Lex {
                            line: tok_line,
                            col: tok_col,
                            message: format!("unrecognized character {c:?}"),
                        });
                    }
                }
            }
        }
    }
    Ok(tokens)
}
