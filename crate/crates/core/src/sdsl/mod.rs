//! A small text language for abstract-index spinor expressions.
//!
//! Programs declare symbols, define tensors by indexed expressions, and
//! ask symmetry questions:
//!
//! ```text
//! # the composite metric
//! g[A,A',B,B'] := eps[A,B]*ceps[A',B']
//! sym? g over (A,A'),(B,B')
//! ```
//!
//! Built-ins `eps`, `ceps`, `o`, `iota`, `co`, `ciota` are the lower-index
//! constant spinors. All indices are lower; raising is a library-level
//! operation, not expressible here. An index name repeated twice in a
//! product term is summed over {0, 1} — a plain sum with no hidden
//! epsilon factors, so `eps[A,B]*eps[A,B]` evaluates to 2, not to an
//! epsilon contraction. `conj(...)` conjugates scalars and toggles the
//! primedness of enclosed index names. Scalar literals are integers,
//! fractions `p/q`, `I`, and `SQRT2`.
//!
//! ```
//! use spintensor::objects::PaperConstants;
//! use spintensor::sdsl::run_program;
//!
//! let outcome = run_program(
//!     "g[A,A',B,B'] := eps[A,B]*ceps[A',B']\nsym? g over (A,A'),(B,B')",
//!     &PaperConstants::new(),
//! )?;
//! assert!(outcome.all_passed());
//! # Ok::<(), spintensor::sdsl::SdslError>(())
//! ```
//!
//! Statements are newline- or `;`-separated; `#` comments to end of line.
//! The grammar:
//!
//! ```text
//! program   := { statement }
//! statement := decl | defn | query
//! decl      := "symbol" name "[" sigspec "]"
//! defn      := name [ "[" indexlist "]" ] ":=" expr
//! query     := ("antisym?" | "sym?" | "real?") name "over" grouplist
//! expr      := term { ("+" | "-") term }
//! term      := factor { "*" factor }
//! factor    := scalar | name [ "[" indexlist "]" ] | "conj" "(" expr ")"
//!            | "(" expr ")" | "-" factor
//! scalar    := integer [ "/" integer ] | "I" | "SQRT2"
//! index     := identifier [ "'" ]
//! grouplist := "(" indexlist ")" { "," "(" indexlist ")" }
//! ```

mod ast;
mod eval;
mod parser;
mod token;

pub use ast::{
    render, scalar_source, structurally_equal, Declaration, Definition, Expr, IndexName,
    Program, QueryKind, QueryStmt, Sign, Statement,
};
pub use eval::{
    evaluate, resolve, run_program, run_query, CheckedProgram, Environment, ProgramOutcome,
    QueryOutcome,
};
pub use parser::{parse, RESERVED};
pub use token::{tokenize, Token, TokenKind};

/// Any error from lexing through evaluation. Every variant carries the
/// 1-based line and column it points at.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SdslError {
    #[error("{line}:{col}: {message}")]
    Lex { line: usize, col: usize, message: String },
    #[error("{line}:{col}: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("{line}:{col}: '{name}' is a reserved scalar literal")]
    ReservedName { line: usize, col: usize, name: String },
    #[error("{line}:{col}: use of undeclared symbol '{name}'")]
    Undeclared { line: usize, col: usize, name: String },
    #[error("{line}:{col}: '{name}' takes {expected} indices, got {got}")]
    Arity { line: usize, col: usize, name: String, expected: usize, got: usize },
    #[error("{line}:{col}: index {slot} of '{name}' has the wrong primedness")]
    Primedness { line: usize, col: usize, name: String, slot: usize },
    #[error("{line}:{col}: index '{name}' appears more than twice in one term")]
    RepeatedIndex { line: usize, col: usize, name: String },
    #[error("{line}:{col}: {detail}")]
    FreeSetMismatch { line: usize, col: usize, detail: String },
    #[error("{line}:{col}: '{name}' is already defined")]
    Redefinition { line: usize, col: usize, name: String },
    #[error("{line}:{col}: '{name}' is declared but has no components")]
    Unbound { line: usize, col: usize, name: String },
    #[error("{line}:{col}: no definition named '{name}'")]
    UnknownName { line: usize, col: usize, name: String },
    #[error("{line}:{col}: bad index partition: {detail}")]
    BadPartition { line: usize, col: usize, detail: String },
    #[error("{line}:{col}: reality needs a toggle-closed index set; '{name}' has no primed/unprimed partner")]
    NotToggleClosed { line: usize, col: usize, name: String },
    #[error("{line}:{col}: {got} indices exceed the supported maximum")]
    TooManyIndices { line: usize, col: usize, got: usize },
}

impl SdslError {
    /// The 1-based (line, column) this error points at.
    pub fn position(&self) -> (usize, usize) {
        match self {
            SdslError::Lex { line, col, .. }
            | SdslError::Syntax { line, col, .. }
            | SdslError::ReservedName { line, col, .. }
            | SdslError::Undeclared { line, col, .. }
            | SdslError::Arity { line, col, .. }
            | SdslError::Primedness { line, col, .. }
            | SdslError::RepeatedIndex { line, col, .. }
            | SdslError::FreeSetMismatch { line, col, .. }
            | SdslError::Redefinition { line, col, .. }
            | SdslError::Unbound { line, col, .. }
            | SdslError::UnknownName { line, col, .. }
            | SdslError::BadPartition { line, col, .. }
            | SdslError::NotToggleClosed { line, col, .. }
            | SdslError::TooManyIndices { line, col, .. } => (*line, *col),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minkowski::metric_tensor;
    use crate::objects::PaperConstants;
    use crate::scalar::ExactScalar;

    fn run(text: &str) -> Result<ProgramOutcome, SdslError> {
        run_program(text, &PaperConstants::new())
    }

    #[test]
    fn metric_definition_matches_the_library_construction() {
        let outcome = run("g[A,A',B,B'] := eps[A,B]*ceps[A',B']").unwrap();
        let (name, tensor) = &outcome.definitions[0];
        assert_eq!(name, "g");
        assert_eq!(tensor, &metric_tensor(&PaperConstants::new()));
    }

    #[test]
    fn repeated_indices_sum_without_hidden_factors() {
        let outcome = run("s := eps[A,B]*eps[A,B]").unwrap();
        let tensor = &outcome.definitions[0].1;
        assert_eq!(tensor.slot_count(), 0);
        assert_eq!(tensor.components()[0], ExactScalar::from_int(2));
        // The full-contraction identity eps_AB eps^AB = 2 needs the raised
        // copy written out explicitly: here that is -eps with swapped
        // component order, but the plain square already sums (+1)^2+(-1)^2.
        let trace = run("t := eps[A,A]").unwrap();
        assert!(trace.definitions[0].1.components()[0].is_zero());
    }

    #[test]
    fn conjugation_toggles_primedness() {
        let outcome = run("cg[A',B'] := conj(eps[A,B])\nd[A',B'] := ceps[A',B']").unwrap();
        assert_eq!(outcome.definitions[0].1, outcome.definitions[1].1);
        let scaled = run("x[A',B'] := conj(I*eps[A,B])").unwrap();
        let direct = run("y[A',B'] := -I*ceps[A',B']").unwrap();
        assert_eq!(scaled.definitions[0].1, direct.definitions[0].1);
    }

    #[test]
    fn queries_report_symmetry_with_counterexamples() {
        let text = "g[A,A',B,B'] := eps[A,B]*ceps[A',B']\n\
                    sym? g over (A,A'),(B,B')\n\
                    antisym? g over (A,A'),(B,B')\n\
                    real? g over (A,A'),(B,B')";
        let outcome = run(text).unwrap();
        assert_eq!(outcome.queries.len(), 3);
        let sym = &outcome.queries[0];
        assert_eq!(sym.report.items.len(), 2);
        assert!(sym.report.passed());
        let antisym = &outcome.queries[1];
        assert!(!antisym.report.passed());
        let failure = antisym.report.first_failure().unwrap();
        let ce = failure.counterexample.as_ref().unwrap();
        assert_eq!(ce.indices, vec![0, 0, 1, 1]);
        assert!(outcome.queries[2].report.passed());
        assert!(!outcome.all_passed());
    }

    #[test]
    fn reality_fails_for_an_imaginary_multiple() {
        let text = "h[A,A',B,B'] := I*eps[A,B]*ceps[A',B']\nreal? h over (A,A'),(B,B')";
        let outcome = run(text).unwrap();
        assert!(!outcome.queries[0].report.passed());
    }

    #[test]
    fn forward_declarations_bind_later() {
        let ok = run("symbol F[A,A']\nF[A,A'] := o[A]*co[A']\nq := F[A,A']*F[A,A']").unwrap();
        assert_eq!(ok.definitions.len(), 2);
        let err = run("symbol F[A,A']\nq := F[A,A']*F[A,A']").unwrap_err();
        assert!(matches!(err, SdslError::Unbound { line: 2, col: 6, .. }), "{err:?}");
    }

    #[test]
    fn resolution_errors_carry_positions() {
        let err = run("x[A] := zeta[A]").unwrap_err();
        assert!(matches!(err, SdslError::Undeclared { line: 1, col: 9, .. }), "{err:?}");

        let err = run("x := eps[A,B] + eps[A]").unwrap_err();
        assert!(
            matches!(err, SdslError::Arity { line: 1, col: 17, expected: 2, got: 1, .. }),
            "{err:?}"
        );

        let err = run("x[A,B'] := eps[A,B']").unwrap_err();
        assert!(matches!(err, SdslError::Primedness { slot: 1, .. }), "{err:?}");

        let err = run("x[A] := eps[A,B] + eps[B,A]").unwrap_err();
        assert!(matches!(err, SdslError::FreeSetMismatch { .. }), "{err:?}");

        let err = run("x := o[B]*o[B]*o[B]").unwrap_err();
        assert!(matches!(err, SdslError::RepeatedIndex { .. }), "{err:?}");

        let err = run("x := eps[B,B]*o[B]").unwrap_err();
        assert!(matches!(err, SdslError::RepeatedIndex { .. }), "{err:?}");

        let err = run("eps[A,B] := eps[A,B]").unwrap_err();
        assert!(matches!(err, SdslError::Redefinition { .. }), "{err:?}");

        let err = run("x := 1\nx := 2").unwrap_err();
        assert!(matches!(err, SdslError::Redefinition { line: 2, .. }), "{err:?}");
    }

    #[test]
    fn query_errors_carry_positions() {
        let err = run("antisym? ghost over (A,A')").unwrap_err();
        assert!(matches!(err, SdslError::UnknownName { .. }), "{err:?}");

        let err = run("g[A,A',B,B'] := eps[A,B]*ceps[A',B']\nantisym? g over (A,A'),(B,X')")
            .unwrap_err();
        assert!(matches!(err, SdslError::BadPartition { line: 2, .. }), "{err:?}");

        let err =
            run("g[A,A',B,B'] := eps[A,B]*ceps[A',B']\nantisym? g over (A,A'),(B)").unwrap_err();
        assert!(matches!(err, SdslError::BadPartition { .. }), "{err:?}");

        let err = run("w[A,B] := eps[A,B]\nreal? w over (A,B)").unwrap_err();
        assert!(matches!(err, SdslError::NotToggleClosed { .. }), "{err:?}");

        let err = run("antisym? eps over (A),(B)").unwrap_err();
        assert!(matches!(err, SdslError::BadPartition { .. }), "{err:?}");
    }

    #[test]
    fn free_standing_sum_consistency_inside_products() {
        // A parenthesized sum acts as one factor; its free index B pairs
        // with the B outside and is summed.
        let outcome = run("x[A] := eps[A,B]*(o[B] + iota[B])").unwrap();
        let expected = run("y[A] := eps[A,B]*o[B] + eps[A,B]*iota[B]").unwrap();
        assert_eq!(outcome.definitions[0].1, expected.definitions[0].1);
    }

    #[test]
    fn scalar_definitions_feed_later_expressions() {
        let outcome = run("s := 2/3\nt := s*s + I").unwrap();
        let t = &outcome.definitions[1].1;
        assert_eq!(
            t.components()[0],
            ExactScalar::ratio(4, 9) + ExactScalar::i()
        );
    }
}
