//! Recursive-descent parser.
//!
//! Precedence: unary minus > product > sum. Statements are
//! self-delimiting, so no separator tokens are needed: nothing that can
//! follow a complete statement can also continue one.

use num::BigInt;

use super::ast::{
    Declaration, Definition, Expr, IndexName, Program, QueryKind, QueryStmt, Sign, Statement,
};
use super::token::{Token, TokenKind};
use super::SdslError;
use crate::scalar::{ExactScalar, Rational};

/// Names that always denote scalar literals and can never be declared.
pub const RESERVED: [&str; 2] = ["I", "SQRT2"];

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    last_line: usize,
    last_col: usize,
}

/// Parse a token stream into a program.
pub fn parse(tokens: &[Token]) -> Result<Program, SdslError> {
    let (last_line, last_col) = tokens
        .last()
        .map(|t| (t.line, t.col + t.text.len()))
        .unwrap_or((1, 1));
    let mut parser = Parser { tokens, pos: 0, last_line, last_col };
    let mut statements = Vec::new();
    while parser.peek().is_some() {
        statements.push(parser.statement()?);
    }
    Ok(Program { statements })
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos)
    }

    fn peek2(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos + 1)
    }

    fn next(&mut self) -> Option<&'a Token> {
        let t = self.tokens.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn here(&self) -> (usize, usize) {
        self.peek()
            .map(|t| (t.line, t.col))
            .unwrap_or((self.last_line, self.last_col))
    }

    fn syntax_error(&self, expected: &str) -> SdslError {
        let (line, col) = self.here();
        let found = match self.peek() {
            Some(t) => format!("'{}'", t.text),
            None => "end of input".to_string(),
        };
        SdslError::Syntax {
            line,
            col,
            message: format!("expected {expected}, found {found}"),
        }
    }

    fn expect(&mut self, kind: TokenKind, expected: &str) -> Result<&'a Token, SdslError> {
        match self.peek() {
            Some(t) if t.kind == kind => Ok(self.next().expect("peeked")),
            _ => Err(self.syntax_error(expected)),
        }
    }

    fn statement(&mut self) -> Result<Statement, SdslError> {
        let token = self.peek().expect("caller checked");
        match token.kind {
            TokenKind::Keyword if token.text == "symbol" => self.declaration().map(Statement::Decl),
            TokenKind::Query => self.query().map(Statement::Query),
            TokenKind::Identifier => self.definition().map(Statement::Defn),
            _ => Err(self.syntax_error("a statement ('symbol', a definition, or a query)")),
        }
    }

    fn name_token(&mut self, role: &str) -> Result<&'a Token, SdslError> {
        let token = self.expect(TokenKind::Identifier, role)?;
        if RESERVED.contains(&token.text.as_str()) {
            return Err(SdslError::ReservedName {
                line: token.line,
                col: token.col,
                name: token.text.clone(),
            });
        }
        Ok(token)
    }

    fn declaration(&mut self) -> Result<Declaration, SdslError> {
        let keyword = self.next().expect("checked 'symbol'");
        let name = self.name_token("a symbol name after 'symbol'")?;
        self.expect(TokenKind::LBracket, "'[' after the symbol name")?;
        let slots = self.index_list()?;
        self.expect(TokenKind::RBracket, "']' closing the signature")?;
        Ok(Declaration {
            name: name.text.clone(),
            slots,
            line: keyword.line,
            col: keyword.col,
        })
    }

    fn definition(&mut self) -> Result<Definition, SdslError> {
        let name = self.name_token("a definition name")?;
        let mut indices = Vec::new();
        if self.peek().map(|t| t.kind) == Some(TokenKind::LBracket) {
            self.next();
            indices = self.index_list()?;
            self.expect(TokenKind::RBracket, "']' closing the index list")?;
        }
        self.expect(TokenKind::Assign, "':=' in a definition")?;
        let body = self.expr()?;
        Ok(Definition {
            name: name.text.clone(),
            indices,
            body,
            line: name.line,
            col: name.col,
        })
    }

    fn query(&mut self) -> Result<QueryStmt, SdslError> {
        let token = self.next().expect("checked query token");
        let kind = match token.text.as_str() {
            "antisym?" => QueryKind::Antisym,
            "sym?" => QueryKind::Sym,
            _ => QueryKind::Real,
        };
        let name = self.name_token("a tensor name after the query word")?;
        match self.peek() {
            Some(t) if t.kind == TokenKind::Keyword && t.text == "over" => {
                self.next();
            }
            _ => return Err(self.syntax_error("'over'")),
        }
        let mut groups = Vec::new();
        loop {
            self.expect(TokenKind::LParen, "'(' starting an index group")?;
            groups.push(self.index_list()?);
            self.expect(TokenKind::RParen, "')' closing the index group")?;
            // A comma continues the group list only when another group opens.
            let continues = self.peek().map(|t| t.kind) == Some(TokenKind::Comma)
                && self.peek2().map(|t| t.kind) == Some(TokenKind::LParen);
            if continues {
                self.next();
            } else {
                break;
            }
        }
        Ok(QueryStmt {
            kind,
            name: name.text.clone(),
            groups,
            line: token.line,
            col: token.col,
        })
    }

    fn index_list(&mut self) -> Result<Vec<IndexName>, SdslError> {
        let mut names = vec![self.index_name()?];
        while self.peek().map(|t| t.kind) == Some(TokenKind::Comma) {
            self.next();
            names.push(self.index_name()?);
        }
        Ok(names)
    }

    fn index_name(&mut self) -> Result<IndexName, SdslError> {
        let token = self.expect(TokenKind::Identifier, "an index name")?;
        let mut primed = false;
        if self.peek().map(|t| t.kind) == Some(TokenKind::PrimeMark) {
            self.next();
            primed = true;
        }
        Ok(IndexName::new(token.text.clone(), primed))
    }

    fn expr(&mut self) -> Result<Expr, SdslError> {
        let first = self.term()?;
        let mut terms = vec![(Sign::Plus, first)];
        loop {
            let sign = match self.peek().map(|t| t.kind) {
                Some(TokenKind::Plus) => Sign::Plus,
                Some(TokenKind::Minus) => Sign::Minus,
                _ => break,
            };
            self.next();
            terms.push((sign, self.term()?));
        }
        if terms.len() == 1 {
            Ok(terms.pop().expect("one term").1)
        } else {
            Ok(Expr::Sum(terms))
        }
    }

    fn term(&mut self) -> Result<Expr, SdslError> {
        let mut factors = vec![self.factor()?];
        while self.peek().map(|t| t.kind) == Some(TokenKind::Star) {
            self.next();
            factors.push(self.factor()?);
        }
        if factors.len() == 1 {
            Ok(factors.pop().expect("one factor"))
        } else {
            Ok(Expr::Product(factors))
        }
    }

    fn factor(&mut self) -> Result<Expr, SdslError> {
        let token = match self.peek() {
            Some(t) => t,
            None => return Err(self.syntax_error("a factor")),
        };
        match token.kind {
            TokenKind::Minus => {
                self.next();
                let inner = self.factor()?;
                Ok(Expr::Scale(-ExactScalar::one(), Box::new(inner)))
            }
            TokenKind::Integer => {
                let numer = self.integer()?;
                if self.peek().map(|t| t.kind) == Some(TokenKind::Slash) {
                    self.next();
                    let (line, col) = self.here();
                    let denom = self.integer()?;
                    if denom == BigInt::from(0) {
                        return Err(SdslError::Syntax {
                            line,
                            col,
                            message: "zero denominator in a fraction literal".to_string(),
                        });
                    }
                    Ok(Expr::ScalarLit(ExactScalar::from_rational(Rational::new(
                        numer, denom,
                    ))))
                } else {
                    Ok(Expr::ScalarLit(ExactScalar::from_rational(
                        Rational::from_integer(numer),
                    )))
                }
            }
            TokenKind::Identifier if token.text == "I" => {
                self.next();
                Ok(Expr::ScalarLit(ExactScalar::i()))
            }
            TokenKind::Identifier if token.text == "SQRT2" => {
                self.next();
                Ok(Expr::ScalarLit(ExactScalar::sqrt2()))
            }
            TokenKind::Keyword if token.text == "conj" => {
                self.next();
                self.expect(TokenKind::LParen, "'(' after conj")?;
                let inner = self.expr()?;
                self.expect(TokenKind::RParen, "')' closing conj")?;
                Ok(Expr::Conj(Box::new(inner)))
            }
            TokenKind::LParen => {
                self.next();
                let inner = self.expr()?;
                self.expect(TokenKind::RParen, "')'")?;
                Ok(inner)
            }
            TokenKind::Identifier => {
                let token = self.next().expect("peeked");
                let mut indices = Vec::new();
                if self.peek().map(|t| t.kind) == Some(TokenKind::LBracket) {
                    self.next();
                    indices = self.index_list()?;
                    self.expect(TokenKind::RBracket, "']' closing the index list")?;
                }
                Ok(Expr::SymbolRef {
                    name: token.text.clone(),
                    indices,
                    line: token.line,
                    col: token.col,
                })
            }
            _ => Err(self.syntax_error(
                "a factor (scalar literal, symbol reference, conj(...), '(' or '-')",
            )),
        }
    }

    fn integer(&mut self) -> Result<BigInt, SdslError> {
        let token = self.expect(TokenKind::Integer, "an integer")?;
        token.text.parse::<BigInt>().map_err(|_| SdslError::Syntax {
            line: token.line,
            col: token.col,
            message: format!("invalid integer literal '{}'", token.text),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::ast::{render, structurally_equal};
    use super::super::token::tokenize;
    use super::*;

    fn parse_text(text: &str) -> Result<Program, SdslError> {
        parse(&tokenize(text)?)
    }

    #[test]
    fn parses_the_volume_definition() {
        let text = "e[A,A',B,B',C,C',D,D'] := I*(eps[A,B]*eps[C,D]*ceps[A',C']*ceps[B',D'] - eps[A,C]*eps[B,D]*ceps[A',B']*ceps[C',D'])";
        let program = parse_text(text).unwrap();
        assert_eq!(program.statements.len(), 1);
        let Statement::Defn(d) = &program.statements[0] else {
            panic!("expected a definition");
        };
        assert_eq!(d.name, "e");
        assert_eq!(d.indices.len(), 8);
        assert!(d.indices[1].primed && !d.indices[0].primed);
        // I * (sum of two products) is a product whose second factor is a sum.
        let Expr::Product(factors) = &d.body else {
            panic!("expected a product");
        };
        assert_eq!(factors.len(), 2);
        assert!(matches!(&factors[0], Expr::ScalarLit(s) if *s == ExactScalar::i()));
        let Expr::Sum(terms) = &factors[1] else {
            panic!("expected a sum");
        };
        assert_eq!(terms.len(), 2);
        assert_eq!(terms[0].0, Sign::Plus);
        assert_eq!(terms[1].0, Sign::Minus);
    }

    #[test]
    fn parses_declarations_queries_and_scalars() {
        let text = "symbol F[A,A',B,B']\nantisym? e over (A,A'),(B,B'),(C,C'),(D,D')\ns := 2/3 - SQRT2*I";
        let program = parse_text(text).unwrap();
        assert_eq!(program.statements.len(), 3);
        let Statement::Query(q) = &program.statements[1] else {
            panic!("expected a query");
        };
        assert_eq!(q.kind, QueryKind::Antisym);
        assert_eq!(q.groups.len(), 4);
        assert_eq!(q.groups[3], vec![
            IndexName::new("D", false),
            IndexName::new("D", true)
        ]);
        let Statement::Defn(d) = &program.statements[2] else {
            panic!("expected a scalar definition");
        };
        assert!(d.indices.is_empty());
    }

    #[test]
    fn statements_self_delimit_without_separators() {
        let text = "a[A] := o[A] b[A] := iota[A]";
        let program = parse_text(text).unwrap();
        assert_eq!(program.statements.len(), 2);
    }

    #[test]
    fn syntax_errors_carry_position_and_expectation() {
        match parse_text("e[A,B := eps[A,B]").unwrap_err() {
            SdslError::Syntax { line, col, message } => {
                assert_eq!((line, col), (1, 7));
                assert!(message.contains("']'"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
        match parse_text("x := ").unwrap_err() {
            SdslError::Syntax { message, .. } => {
                assert!(message.contains("end of input"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_text("antisym? e (A,B)").unwrap_err(),
            SdslError::Syntax { col: 12, .. }
        ));
        assert!(matches!(
            parse_text("x := 1/0").unwrap_err(),
            SdslError::Syntax { col: 8, .. }
        ));
        assert!(matches!(
            parse_text("I := 2").unwrap_err(),
            SdslError::ReservedName { .. }
        ));
    }

    #[test]
    fn render_round_trips_structurally() {
        let texts = [
            "g[A,A',B,B'] := eps[A,B]*ceps[A',B']",
            "d4[A,A',B,B'] := iota[A]*o[B]*ceps[A',B'] + eps[A,B]*co[A']*ciota[B']",
            "s := eps[A,B]*eps[A,B]",
            "t := -3/2 * s + conj(s)*I",
            "symbol F[A,A']",
            "antisym? g over (A,A'),(B,B')",
        ];
        for text in texts {
            let program = parse_text(text).unwrap();
            let rendered = render(&program);
            let again = parse_text(&rendered).unwrap();
            assert!(
                structurally_equal(&program, &again),
                "round trip changed structure:\n{text}\n-> {rendered}"
            );
        }
    }
}
