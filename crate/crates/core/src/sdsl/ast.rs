//! Abstract syntax of the index language, plus a renderer whose output
//! re-parses to a structurally identical program.

use num::Zero;

use crate::scalar::{ExactScalar, Rational};

/// A named abstract index. `A` and `A'` are distinct names; the prime is
/// part of the identity, not a modifier.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexName {
    pub base: String,
    pub primed: bool,
}

impl IndexName {
    pub fn new(base: impl Into<String>, primed: bool) -> Self {
        Self { base: base.into(), primed }
    }

    /// The same base name with the opposite primedness, as produced by
    /// conjugation.
    pub fn toggled(&self) -> IndexName {
        Self { base: self.base.clone(), primed: !self.primed }
    }
}

impl std::fmt::Display for IndexName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}{}", self.base, if self.primed { "'" } else { "" })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// Expression tree. `Scale` only arises from unary minus during parsing
/// but may hold any exact scalar when built programmatically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    ScalarLit(ExactScalar),
    SymbolRef {
        name: String,
        indices: Vec<IndexName>,
        line: usize,
        col: usize,
    },
    Sum(Vec<(Sign, Expr)>),
    Product(Vec<Expr>),
    Conj(Box<Expr>),
    Scale(ExactScalar, Box<Expr>),
}

/// `symbol name[sigspec]`: a signature declaration without components.
/// Only the primedness pattern of the placeholder names matters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Declaration {
    pub name: String,
    pub slots: Vec<IndexName>,
    pub line: usize,
    pub col: usize,
}

/// `name[indices] := expr` (the bracket list may be empty or omitted for
/// scalar definitions). Bracket order is slot order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Definition {
    pub name: String,
    pub indices: Vec<IndexName>,
    pub body: Expr,
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QueryKind {
    Antisym,
    Sym,
    Real,
}

impl QueryKind {
    pub fn word(self) -> &'static str {
        match self {
            QueryKind::Antisym => "antisym?",
            QueryKind::Sym => "sym?",
            QueryKind::Real => "real?",
        }
    }
}

/// `antisym? name over (A,A'),(B,B')` and friends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryStmt {
    pub kind: QueryKind,
    pub name: String,
    pub groups: Vec<Vec<IndexName>>,
    pub line: usize,
    pub col: usize,
}

// Definition dwarfs the other variants, but a program holds at most a
// handful of statements, so boxing would buy nothing.
#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Statement {
    Decl(Declaration),
    Defn(Definition),
    Query(QueryStmt),
}

/// A parsed program: statements in source order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Program {
    pub statements: Vec<Statement>,
}

/// Structural equality that ignores source positions, for round-trip
/// comparisons of rendered programs.
pub fn structurally_equal(a: &Program, b: &Program) -> bool {
    if a.statements.len() != b.statements.len() {
        return false;
    }
    a.statements.iter().zip(&b.statements).all(|(x, y)| match (x, y) {
        (Statement::Decl(p), Statement::Decl(q)) => p.name == q.name && p.slots == q.slots,
        (Statement::Defn(p), Statement::Defn(q)) => {
            p.name == q.name && p.indices == q.indices && exprs_equal(&p.body, &q.body)
        }
        (Statement::Query(p), Statement::Query(q)) => {
            p.kind == q.kind && p.name == q.name && p.groups == q.groups
        }
        _ => false,
    })
}

fn exprs_equal(a: &Expr, b: &Expr) -> bool {
    match (a, b) {
        (Expr::ScalarLit(x), Expr::ScalarLit(y)) => x == y,
        (
            Expr::SymbolRef { name: n1, indices: i1, .. },
            Expr::SymbolRef { name: n2, indices: i2, .. },
        ) => n1 == n2 && i1 == i2,
        (Expr::Sum(t1), Expr::Sum(t2)) => {
            t1.len() == t2.len()
                && t1
                    .iter()
                    .zip(t2)
                    .all(|((s1, e1), (s2, e2))| s1 == s2 && exprs_equal(e1, e2))
        }
        (Expr::Product(f1), Expr::Product(f2)) => {
            f1.len() == f2.len() && f1.iter().zip(f2).all(|(e1, e2)| exprs_equal(e1, e2))
        }
        (Expr::Conj(e1), Expr::Conj(e2)) => exprs_equal(e1, e2),
        (Expr::Scale(s1, e1), Expr::Scale(s2, e2)) => s1 == s2 && exprs_equal(e1, e2),
        _ => false,
    }
}

/// Render a scalar in the language's own literal syntax (`I`, `SQRT2`,
/// integers, fractions, and explicit products/sums thereof).
pub fn scalar_source(s: &ExactScalar) -> String {
    if s.is_zero() {
        return "0".to_string();
    }
    let [a, b, c, d] = s.coords();
    let mut terms: Vec<String> = Vec::new();
    push_coeff_term(&mut terms, a, None);
    push_coeff_term(&mut terms, b, Some("SQRT2"));
    push_coeff_term(&mut terms, c, Some("I"));
    push_coeff_term(&mut terms, d, Some("SQRT2*I"));
    if terms.len() == 1 && !terms[0].starts_with('-') {
        terms.pop().expect("one term")
    } else {
        let mut out = String::from("(");
        for (k, t) in terms.iter().enumerate() {
            if k == 0 {
                out.push_str(t);
            } else if let Some(rest) = t.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(t);
            }
        }
        out.push(')');
        out
    }
}

fn push_coeff_term(terms: &mut Vec<String>, coeff: &Rational, symbol: Option<&str>) {
    use num::One;
    if coeff.is_zero() {
        return;
    }
    let body = match symbol {
        None => format!("{coeff}"),
        Some(sym) if coeff.is_one() => sym.to_string(),
        Some(sym) if (-coeff).is_one() => format!("-{sym}"),
        Some(sym) => format!("{coeff}*{sym}"),
    };
    terms.push(body);
}

fn expr_source(expr: &Expr, out: &mut String) {
    match expr {
        Expr::ScalarLit(s) => out.push_str(&scalar_source(s)),
        Expr::SymbolRef { name, indices, .. } => {
            out.push_str(name);
            if !indices.is_empty() {
                out.push('[');
                for (k, ix) in indices.iter().enumerate() {
                    if k > 0 {
                        out.push(',');
                    }
                    out.push_str(&ix.to_string());
                }
                out.push(']');
            }
        }
        Expr::Sum(terms) => {
            for (k, (sign, term)) in terms.iter().enumerate() {
                match (k, sign) {
                    (0, Sign::Plus) => {}
                    (0, Sign::Minus) => out.push('-'),
                    (_, Sign::Plus) => out.push_str(" + "),
                    (_, Sign::Minus) => out.push_str(" - "),
                }
                render_child(term, expr, out);
            }
        }
        Expr::Product(factors) => {
            for (k, f) in factors.iter().enumerate() {
                if k > 0 {
                    out.push('*');
                }
                render_child(f, expr, out);
            }
        }
        Expr::Conj(inner) => {
            out.push_str("conj(");
            expr_source(inner, out);
            out.push(')');
        }
        Expr::Scale(s, inner) => {
            if *s == -ExactScalar::one() {
                out.push('-');
            } else {
                out.push_str(&scalar_source(s));
                out.push('*');
            }
            render_child(inner, expr, out);
        }
    }
}

/// Parenthesize a child whose top-level operator binds more loosely than
/// the parent context.
fn render_child(child: &Expr, parent: &Expr, out: &mut String) {
    let needs_parens = match (parent, child) {
        (Expr::Sum(_), Expr::Sum(_)) => true,
        (Expr::Product(_), Expr::Sum(_) | Expr::Scale(..)) => true,
        // Unary minus binds tighter than '*': -(a*b) needs its parens.
        (Expr::Scale(..), Expr::Sum(_) | Expr::Product(_) | Expr::Scale(..)) => true,
        _ => false,
    };
    if needs_parens {
        out.push('(');
        expr_source(child, out);
        out.push(')');
    } else {
        expr_source(child, out);
    }
}

impl std::fmt::Display for Expr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut out = String::new();
        expr_source(self, &mut out);
        f.write_str(&out)
    }
}

fn index_list(names: &[IndexName]) -> String {
    names.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(",")
}

/// Render a program back to source text, one statement per line.
pub fn render(program: &Program) -> String {
    let mut out = String::new();
    for statement in &program.statements {
        match statement {
            Statement::Decl(d) => {
                out.push_str(&format!("symbol {}[{}]\n", d.name, index_list(&d.slots)));
            }
            Statement::Defn(d) => {
                if d.indices.is_empty() {
                    out.push_str(&format!("{} := {}\n", d.name, d.body));
                } else {
                    out.push_str(&format!(
                        "{}[{}] := {}\n",
                        d.name,
                        index_list(&d.indices),
                        d.body
                    ));
                }
            }
            Statement::Query(q) => {
                let groups = q
                    .groups
                    .iter()
                    .map(|g| format!("({})", index_list(g)))
                    .collect::<Vec<_>>()
                    .join(",");
                out.push_str(&format!("{} {} over {}\n", q.kind.word(), q.name, groups));
            }
        }
    }
    out
}
