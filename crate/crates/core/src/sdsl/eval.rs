//! Name resolution, index analysis, evaluation, and queries.
//!
//! Repeated-index semantics: within one product term (or one symbol
//! reference), an index name occurring exactly twice is summed over
//! {0, 1} — a plain Einstein sum with no implicit epsilon weighting.
//! More than two occurrences of a name in a term is an error, as is
//! reusing a name that a subterm already summed. Conjugation toggles the
//! primedness of every index name it encloses, so `conj(eps[A,B])` has
//! free indices `A'` and `B'`.

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;

use super::ast::{
    Declaration, Definition, Expr, IndexName, Program, QueryKind, QueryStmt, Statement,
};
use super::SdslError;
use crate::objects::PaperConstants;
use crate::report::{CheckItem, VerificationReport};
use crate::scalar::ExactScalar;
use crate::tensor::{
    first_mismatch, permutation_sign, IndexSignature, Slot, SpinTensor, MAX_SLOTS,
};

/// A program that passed [`resolve`]: every symbol reference matches a
/// declaration in arity and primedness, sums have consistent free index
/// sets, and definition brackets match their bodies' free indices.
#[derive(Debug, Clone)]
pub struct CheckedProgram {
    program: Program,
}

impl CheckedProgram {
    pub fn program(&self) -> &Program {
        &self.program
    }

    pub fn statements(&self) -> &[Statement] {
        &self.program.statements
    }
}

/// The built-in symbols: all lower, primedness per slot.
fn builtin_signatures() -> [(&'static str, &'static [bool]); 6] {
    [
        ("eps", &[false, false]),
        ("ceps", &[true, true]),
        ("o", &[false]),
        ("iota", &[false]),
        ("co", &[true]),
        ("ciota", &[true]),
    ]
}

#[derive(Debug, Clone)]
struct SymbolInfo {
    primed: Vec<bool>,
    defined: bool,
    builtin: bool,
}

/// Free and summed index names of a subexpression, both expressed in the
/// enclosing scope's name space.
struct IndexUsage {
    free: BTreeSet<IndexName>,
    bound: BTreeSet<IndexName>,
}

/// Validate declarations, definitions, and index usage in source order.
pub fn resolve(program: Program) -> Result<CheckedProgram, SdslError> {
    let mut table: HashMap<String, SymbolInfo> = builtin_signatures()
        .into_iter()
        .map(|(name, primed)| {
            (
                name.to_string(),
                SymbolInfo { primed: primed.to_vec(), defined: true, builtin: true },
            )
        })
        .collect();

    for statement in &program.statements {
        match statement {
            Statement::Decl(decl) => resolve_declaration(decl, &mut table)?,
            Statement::Defn(defn) => resolve_definition(defn, &mut table)?,
            // Query errors (unknown name, bad partition) are reported when
            // the query runs, against the live environment.
            Statement::Query(_) => {}
        }
    }
    Ok(CheckedProgram { program })
}

fn resolve_declaration(
    decl: &Declaration,
    table: &mut HashMap<String, SymbolInfo>,
) -> Result<(), SdslError> {
    if table.contains_key(&decl.name) {
        return Err(SdslError::Redefinition {
            line: decl.line,
            col: decl.col,
            name: decl.name.clone(),
        });
    }
    if decl.slots.len() > MAX_SLOTS {
        return Err(SdslError::TooManyIndices {
            line: decl.line,
            col: decl.col,
            got: decl.slots.len(),
        });
    }
    table.insert(
        decl.name.clone(),
        SymbolInfo {
            primed: decl.slots.iter().map(|s| s.primed).collect(),
            defined: false,
            builtin: false,
        },
    );
    Ok(())
}

fn resolve_definition(
    defn: &Definition,
    table: &mut HashMap<String, SymbolInfo>,
) -> Result<(), SdslError> {
    let bracket_primed: Vec<bool> = defn.indices.iter().map(|n| n.primed).collect();
    match table.get(&defn.name) {
        None => {}
        Some(info) if info.builtin || info.defined => {
            return Err(SdslError::Redefinition {
                line: defn.line,
                col: defn.col,
                name: defn.name.clone(),
            });
        }
        Some(info) => {
            // Filling in a forward declaration: shapes must agree.
            if info.primed.len() != bracket_primed.len() {
                return Err(SdslError::Arity {
                    line: defn.line,
                    col: defn.col,
                    name: defn.name.clone(),
                    expected: info.primed.len(),
                    got: bracket_primed.len(),
                });
            }
            if let Some(slot) = (0..info.primed.len()).find(|&k| info.primed[k] != bracket_primed[k])
            {
                return Err(SdslError::Primedness {
                    line: defn.line,
                    col: defn.col,
                    name: defn.name.clone(),
                    slot,
                });
            }
        }
    }
    if defn.indices.len() > MAX_SLOTS {
        return Err(SdslError::TooManyIndices {
            line: defn.line,
            col: defn.col,
            got: defn.indices.len(),
        });
    }
    let mut seen = BTreeSet::new();
    for name in &defn.indices {
        if !seen.insert(name.clone()) {
            return Err(SdslError::FreeSetMismatch {
                line: defn.line,
                col: defn.col,
                detail: format!("index '{name}' appears twice in the definition bracket"),
            });
        }
    }
    let usage = analyze(&defn.body, table, defn.line, defn.col)?;
    if usage.free != seen {
        return Err(SdslError::FreeSetMismatch {
            line: defn.line,
            col: defn.col,
            detail: format!(
                "bracket lists {} but the body's free indices are {}",
                format_name_set(&seen),
                format_name_set(&usage.free)
            ),
        });
    }
    table.insert(
        defn.name.clone(),
        SymbolInfo { primed: bracket_primed, defined: true, builtin: false },
    );
    Ok(())
}

fn format_name_set(names: &BTreeSet<IndexName>) -> String {
    if names.is_empty() {
        return "{} (a scalar)".to_string();
    }
    let inner = names.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(",");
    format!("{{{inner}}}")
}

/// Walk an expression computing free/bound index sets and validating
/// every reference against the symbol table.
fn analyze(
    expr: &Expr,
    table: &HashMap<String, SymbolInfo>,
    stmt_line: usize,
    stmt_col: usize,
) -> Result<IndexUsage, SdslError> {
    match expr {
        Expr::ScalarLit(_) => Ok(IndexUsage { free: BTreeSet::new(), bound: BTreeSet::new() }),
        Expr::SymbolRef { name, indices, line, col } => {
            let info = table.get(name).ok_or_else(|| SdslError::Undeclared {
                line: *line,
                col: *col,
                name: name.clone(),
            })?;
            if info.primed.len() != indices.len() {
                return Err(SdslError::Arity {
                    line: *line,
                    col: *col,
                    name: name.clone(),
                    expected: info.primed.len(),
                    got: indices.len(),
                });
            }
            if let Some(slot) =
                (0..indices.len()).find(|&k| indices[k].primed != info.primed[k])
            {
                return Err(SdslError::Primedness {
                    line: *line,
                    col: *col,
                    name: name.clone(),
                    slot,
                });
            }
            let mut free = BTreeSet::new();
            let mut bound = BTreeSet::new();
            for ix in indices {
                let count = indices.iter().filter(|j| *j == ix).count();
                match count {
                    1 => {
                        free.insert(ix.clone());
                    }
                    2 => {
                        bound.insert(ix.clone());
                    }
                    _ => {
                        return Err(SdslError::RepeatedIndex {
                            line: *line,
                            col: *col,
                            name: ix.to_string(),
                        });
                    }
                }
            }
            Ok(IndexUsage { free, bound })
        }
        Expr::Sum(terms) => {
            let mut iter = terms.iter();
            let (_, first) = iter.next().expect("parser produces non-empty sums");
            let head = analyze(first, table, stmt_line, stmt_col)?;
            let mut bound = head.bound;
            for (_, term) in iter {
                let usage = analyze(term, table, stmt_line, stmt_col)?;
                if usage.free != head.free {
                    return Err(SdslError::FreeSetMismatch {
                        line: stmt_line,
                        col: stmt_col,
                        detail: format!(
                            "sum terms have different free indices: {} vs {}",
                            format_name_set(&head.free),
                            format_name_set(&usage.free)
                        ),
                    });
                }
                bound.extend(usage.bound);
            }
            Ok(IndexUsage { free: head.free, bound })
        }
        Expr::Product(factors) => {
            let usages = factors
                .iter()
                .map(|f| analyze(f, table, stmt_line, stmt_col))
                .collect::<Result<Vec<_>, _>>()?;
            // A name one factor summed may not appear anywhere else.
            for (k, usage) in usages.iter().enumerate() {
                for name in &usage.bound {
                    let reused = usages.iter().enumerate().any(|(j, other)| {
                        j != k && (other.free.contains(name) || other.bound.contains(name))
                    });
                    if reused {
                        return Err(SdslError::RepeatedIndex {
                            line: stmt_line,
                            col: stmt_col,
                            name: name.to_string(),
                        });
                    }
                }
            }
            let mut free = BTreeSet::new();
            let mut bound: BTreeSet<IndexName> =
                usages.iter().flat_map(|u| u.bound.iter().cloned()).collect();
            let all_free: Vec<&IndexName> = usages.iter().flat_map(|u| u.free.iter()).collect();
            for name in &all_free {
                let count = all_free.iter().filter(|m| *m == name).count();
                match count {
                    1 => {
                        free.insert((*name).clone());
                    }
                    2 => {
                        bound.insert((*name).clone());
                    }
                    _ => {
                        return Err(SdslError::RepeatedIndex {
                            line: stmt_line,
                            col: stmt_col,
                            name: name.to_string(),
                        });
                    }
                }
            }
            Ok(IndexUsage { free, bound })
        }
        Expr::Conj(inner) => {
            let usage = analyze(inner, table, stmt_line, stmt_col)?;
            Ok(IndexUsage {
                free: usage.free.iter().map(IndexName::toggled).collect(),
                bound: usage.bound.iter().map(IndexName::toggled).collect(),
            })
        }
        Expr::Scale(_, inner) => analyze(inner, table, stmt_line, stmt_col),
    }
}

/// Free index set of a resolved expression (no validation).
fn free_set(expr: &Expr) -> BTreeSet<IndexName> {
    match expr {
        Expr::ScalarLit(_) => BTreeSet::new(),
        Expr::SymbolRef { indices, .. } => indices
            .iter()
            .filter(|ix| indices.iter().filter(|j| j == ix).count() == 1)
            .cloned()
            .collect(),
        Expr::Sum(terms) => free_set(&terms[0].1),
        Expr::Product(factors) => {
            let all: Vec<IndexName> = factors.iter().flat_map(free_set).collect();
            all.iter()
                .filter(|n| all.iter().filter(|m| m == n).count() == 1)
                .cloned()
                .collect()
        }
        Expr::Conj(inner) => free_set(inner).iter().map(IndexName::toggled).collect(),
        Expr::Scale(_, inner) => free_set(inner),
    }
}

/// Evaluation environment: built-ins plus previously evaluated
/// definitions, with the bracket names that give each definition's slot
/// order.
#[derive(Debug, Clone)]
pub struct Environment {
    tensors: HashMap<String, SpinTensor>,
    brackets: HashMap<String, Vec<IndexName>>,
}

impl Environment {
    /// eps, ceps, o, iota, co, ciota bound to their exact components.
    pub fn with_builtins(c: &PaperConstants) -> Self {
        let tensors = HashMap::from([
            ("eps".to_string(), c.eps_lower.clone()),
            ("ceps".to_string(), c.eps_bar_lower.clone()),
            ("o".to_string(), c.o_low.clone()),
            ("iota".to_string(), c.iota_low.clone()),
            ("co".to_string(), c.o_bar_low.clone()),
            ("ciota".to_string(), c.iota_bar_low.clone()),
        ]);
        Self { tensors, brackets: HashMap::new() }
    }

    pub fn tensor(&self, name: &str) -> Option<&SpinTensor> {
        self.tensors.get(name)
    }

    pub fn insert_definition(
        &mut self,
        name: impl Into<String>,
        brackets: Vec<IndexName>,
        tensor: SpinTensor,
    ) {
        let name = name.into();
        self.brackets.insert(name.clone(), brackets);
        self.tensors.insert(name, tensor);
    }
}

fn check_bound(expr: &Expr, env: &Environment) -> Result<(), SdslError> {
    match expr {
        Expr::ScalarLit(_) => Ok(()),
        Expr::SymbolRef { name, line, col, .. } => {
            if env.tensors.contains_key(name) {
                Ok(())
            } else {
                Err(SdslError::Unbound { line: *line, col: *col, name: name.clone() })
            }
        }
        Expr::Sum(terms) => terms.iter().try_for_each(|(_, t)| check_bound(t, env)),
        Expr::Product(factors) => factors.iter().try_for_each(|f| check_bound(f, env)),
        Expr::Conj(inner) | Expr::Scale(_, inner) => check_bound(inner, env),
    }
}

type Binding = HashMap<IndexName, u8>;

fn eval_expr(expr: &Expr, binding: &Binding, env: &Environment) -> ExactScalar {
    match expr {
        Expr::ScalarLit(s) => s.clone(),
        Expr::SymbolRef { name, indices, .. } => {
            let tensor = env.tensors.get(name).expect("checked by check_bound");
            let traced: Vec<&IndexName> = indices
                .iter()
                .filter(|ix| indices.iter().filter(|j| j == ix).count() == 2)
                .unique()
                .collect();
            let mut acc = ExactScalar::zero();
            let mut trace_binding = Binding::new();
            for assignment in 0..(1usize << traced.len()) {
                trace_binding.clear();
                for (k, name) in traced.iter().enumerate() {
                    trace_binding.insert((*name).clone(), ((assignment >> k) & 1) as u8);
                }
                let tuple: Vec<u8> = indices
                    .iter()
                    .map(|ix| {
                        *trace_binding
                            .get(ix)
                            .or_else(|| binding.get(ix))
                            .expect("resolution binds every index")
                    })
                    .collect();
                acc = acc + tensor.component(&tuple).expect("binary tuple");
            }
            acc
        }
        Expr::Sum(terms) => {
            let mut acc = ExactScalar::zero();
            for (sign, term) in terms {
                let value = eval_expr(term, binding, env);
                acc = match sign {
                    super::ast::Sign::Plus => acc + value,
                    super::ast::Sign::Minus => acc - value,
                };
            }
            acc
        }
        Expr::Product(factors) => {
            let all: Vec<IndexName> = factors.iter().flat_map(free_set).collect();
            let summed: Vec<&IndexName> = all
                .iter()
                .filter(|n| all.iter().filter(|m| m == n).count() == 2)
                .unique()
                .collect();
            let mut acc = ExactScalar::zero();
            for assignment in 0..(1usize << summed.len()) {
                let mut extended = binding.clone();
                for (k, name) in summed.iter().enumerate() {
                    extended.insert((*name).clone(), ((assignment >> k) & 1) as u8);
                }
                let mut product = ExactScalar::one();
                for factor in factors {
                    product = product * eval_expr(factor, &extended, env);
                }
                acc = acc + product;
            }
            acc
        }
        Expr::Conj(inner) => {
            let toggled: Binding = binding
                .iter()
                .map(|(name, value)| (name.toggled(), *value))
                .collect();
            eval_expr(inner, &toggled, env).conjugate()
        }
        Expr::Scale(s, inner) => s * eval_expr(inner, binding, env),
    }
}

/// Evaluate a definition from a checked program against the environment:
/// enumerate all assignments of the bracket indices to {0, 1}. Slot order
/// is bracket order; every slot is lower, primed per its index name.
pub fn evaluate(defn: &Definition, env: &Environment) -> Result<SpinTensor, SdslError> {
    check_bound(&defn.body, env)?;
    let slots: Vec<Slot> = defn.indices.iter().map(|n| Slot::down(n.primed)).collect();
    let signature = IndexSignature::new(slots).map_err(|_| SdslError::TooManyIndices {
        line: defn.line,
        col: defn.col,
        got: defn.indices.len(),
    })?;
    Ok(SpinTensor::from_fn(signature, |tuple| {
        let binding: Binding = defn
            .indices
            .iter()
            .cloned()
            .zip(tuple.iter().copied())
            .collect();
        eval_expr(&defn.body, &binding, env)
    }))
}

/// Map each query group onto slot positions of the named definition,
/// checking that the groups exactly partition its bracket names.
fn slot_groups(
    query: &QueryStmt,
    brackets: &[IndexName],
) -> Result<Vec<Vec<usize>>, SdslError> {
    let mut used = vec![false; brackets.len()];
    let mut groups = Vec::with_capacity(query.groups.len());
    for group in &query.groups {
        let mut slots = Vec::with_capacity(group.len());
        for name in group {
            match brackets.iter().position(|b| b == name) {
                None => {
                    return Err(SdslError::BadPartition {
                        line: query.line,
                        col: query.col,
                        detail: format!("'{name}' is not an index of '{}'", query.name),
                    });
                }
                Some(pos) => {
                    if used[pos] {
                        return Err(SdslError::BadPartition {
                            line: query.line,
                            col: query.col,
                            detail: format!("index '{name}' listed twice"),
                        });
                    }
                    used[pos] = true;
                    slots.push(pos);
                }
            }
        }
        groups.push(slots);
    }
    if let Some(missing) = used.iter().position(|u| !u) {
        return Err(SdslError::BadPartition {
            line: query.line,
            col: query.col,
            detail: format!("index '{}' is not covered by the groups", brackets[missing]),
        });
    }
    Ok(groups)
}

fn group_label(query: &QueryStmt, sigma: &[usize]) -> String {
    sigma
        .iter()
        .map(|&g| {
            let names = query.groups[g]
                .iter()
                .map(|n| n.to_string())
                .collect::<Vec<_>>()
                .join(",");
            format!("({names})")
        })
        .collect::<Vec<_>>()
        .join(",")
}

/// Run one symmetry query. `antisym?` and `sym?` check every one of the
/// k! group permutations, one report item each; `real?` checks equality
/// with the tensor's own conjugate under index priming.
pub fn run_query(query: &QueryStmt, env: &Environment) -> Result<VerificationReport, SdslError> {
    let tensor = env.tensor(&query.name).ok_or_else(|| SdslError::UnknownName {
        line: query.line,
        col: query.col,
        name: query.name.clone(),
    })?;
    let brackets = env.brackets.get(&query.name).ok_or_else(|| SdslError::BadPartition {
        line: query.line,
        col: query.col,
        detail: format!("'{}' is a builtin with no named indices to group over", query.name),
    })?;
    let groups = slot_groups(query, brackets)?;

    match query.kind {
        QueryKind::Antisym | QueryKind::Sym => {
            let antisym = query.kind == QueryKind::Antisym;
            if groups.iter().any(|g| g.len() != groups[0].len()) {
                return Err(SdslError::BadPartition {
                    line: query.line,
                    col: query.col,
                    detail: "groups must all have the same size to be exchanged".to_string(),
                });
            }
            let k = groups.len();
            let mut report = VerificationReport::new();
            for sigma in (0..k).permutations(k) {
                let mut perm: Vec<usize> = (0..tensor.slot_count()).collect();
                for (g, group) in groups.iter().enumerate() {
                    for (j, &slot) in group.iter().enumerate() {
                        perm[slot] = groups[sigma[g]][j];
                    }
                }
                let exchanged = tensor.permute_slots(&perm).expect("valid permutation");
                let sign = if antisym { permutation_sign(&sigma) } else { 1 };
                let expected = if sign == 1 {
                    exchanged
                } else {
                    exchanged.negate()
                };
                let relation = if antisym {
                    format!("sign {sign:+}")
                } else {
                    "unchanged".to_string()
                };
                let name = format!(
                    "{} under the group order {}",
                    relation,
                    group_label(query, &sigma)
                );
                report.push(CheckItem::from_outcome(name, first_mismatch(tensor, &expected)));
            }
            Ok(report)
        }
        QueryKind::Real => {
            let name_set: BTreeSet<&IndexName> = brackets.iter().collect();
            for name in brackets {
                if !name_set.contains(&name.toggled()) {
                    return Err(SdslError::NotToggleClosed {
                        line: query.line,
                        col: query.col,
                        name: name.to_string(),
                    });
                }
            }
            let toggled_pos: Vec<usize> = brackets
                .iter()
                .map(|n| {
                    brackets
                        .iter()
                        .position(|b| *b == n.toggled())
                        .expect("toggle-closed")
                })
                .collect();
            let conjugated = SpinTensor::from_fn(tensor.signature().clone(), |tuple| {
                let image: Vec<u8> = toggled_pos.iter().map(|&p| tuple[p]).collect();
                tensor
                    .component(&image)
                    .expect("binary tuple")
                    .conjugate()
            });
            let mut report = VerificationReport::new();
            report.push(CheckItem::from_outcome(
                "equal to its own conjugate under index priming".to_string(),
                first_mismatch(tensor, &conjugated),
            ));
            Ok(report)
        }
    }
}

/// One query's outcome, labeled for display.
#[derive(Debug, Clone)]
pub struct QueryOutcome {
    pub kind: QueryKind,
    pub label: String,
    pub report: VerificationReport,
}

/// Results of running a whole program: evaluated definitions in source
/// order, then query outcomes in source order.
#[derive(Debug, Clone, Default)]
pub struct ProgramOutcome {
    pub definitions: Vec<(String, SpinTensor)>,
    pub queries: Vec<QueryOutcome>,
}

impl ProgramOutcome {
    /// True when every query passed (definitions cannot fail once
    /// evaluation succeeds).
    pub fn all_passed(&self) -> bool {
        self.queries.iter().all(|q| q.report.passed())
    }
}

/// Tokenize, parse, resolve, and run a whole program.
pub fn run_program(text: &str, c: &PaperConstants) -> Result<ProgramOutcome, SdslError> {
    let tokens = super::token::tokenize(text)?;
    let program = super::parser::parse(&tokens)?;
    let checked = resolve(program)?;
    let mut env = Environment::with_builtins(c);
    let mut outcome = ProgramOutcome::default();
    for statement in checked.statements() {
        match statement {
            Statement::Decl(_) => {}
            Statement::Defn(defn) => {
                let tensor = evaluate(defn, &env)?;
                env.insert_definition(defn.name.clone(), defn.indices.clone(), tensor.clone());
                outcome.definitions.push((defn.name.clone(), tensor));
            }
            Statement::Query(query) => {
                let report = run_query(query, &env)?;
                outcome.queries.push(QueryOutcome {
                    kind: query.kind,
                    label: format!("{} {}", query.kind.word(), query.name),
                    report,
                });
            }
        }
    }
    Ok(outcome)
}
