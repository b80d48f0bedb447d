//! Batch front end: run the verification suite, evaluate expression
//! files, and emit bases and Hodge duals in exchange formats.
//!
//! Exit codes: 0 all checks passed; 1 a verification or query failed
//! (the counterexample is printed); 2 usage error; 3 unreadable or
//! malformed input (message carries the 1-based position).

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use spintensor::minkowski::hodge_dual;
use spintensor::objects::{
    composite_groups, lambda2_basis, lambda3_basis, lambda4_basis, NamedTensor,
    PaperConstants,
};
use spintensor::sdsl::{run_program, ProgramOutcome, QueryKind};
use spintensor::suite::{verify_paper, DEFAULT_SEED};
use spintensor::tensor::Variance;
use spintensor::{SpinTensor, VerificationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Md,
    Latex,
}

#[derive(Parser)]
#[command(
    name = "spintensor",
    version,
    about = "Exact spinor tensor verification and evaluation"
)]
struct Cli {
    /// Output format.
    #[arg(
        long,
        global = true,
        value_enum,
        default_value_t = Format::Text,
        env = "SPINTENSOR_FORMAT"
    )]
    format: Format,

    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full verification suite and print its report.
    VerifyPaper {
        /// Seed for the randomized samples (null spinors, invariance and
        /// homomorphism checks). The same seed reproduces the same report.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Evaluate an .sdsl file: print every definition and query report.
    Eval {
        /// Path to the .sdsl source file.
        input: PathBuf,
    },
    /// Emit the antisymmetric basis of the given rank.
    Basis {
        /// Basis rank: 2, 3, or 4 composite index pairs.
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=4))]
        rank: u8,
    },
    /// Read a tensor JSON file, check antisymmetry, emit its Hodge dual.
    Dual {
        /// Path to the tensor JSON file.
        input: PathBuf,
    },
}

/// A command's rendered output plus whether all its checks passed.
struct Rendered {
    output: String,
    passed: bool,
}

/// Unreadable or malformed input; the message includes the position when
/// one exists.
struct InputError(String);

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::VerifyPaper { seed } => Ok(render_verify(*seed, cli.format)),
        Command::Eval { input } => run_eval(input, cli.format),
        Command::Basis { rank } => Ok(render_basis(*rank, cli.format)),
        Command::Dual { input } => run_dual(input, cli.format),
    };
    match result {
        Err(InputError(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(3)
        }
        Ok(rendered) => {
            if let Err(e) = emit(&rendered.output, cli.output.as_deref()) {
                eprintln!("error: {e}");
                return ExitCode::from(3);
            }
            if rendered.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn emit(output: &str, path: Option<&std::path::Path>) -> std::io::Result<()> {
    match path {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(output.as_bytes())?;
            if !output.ends_with('\n') {
                stdout.write_all(b"\n")?;
            }
            Ok(())
        }
        Some(path) => std::fs::write(path, output),
    }
}

fn render_report(report: &VerificationReport, format: Format) -> String {
    match format {
        Format::Text => report.to_text(),
        Format::Json => serde_json::to_string_pretty(report).expect("serializable report"),
        Format::Md => report.to_markdown(),
        Format::Latex => report.to_latex(),
    }
}

fn render_verify(seed: u64, format: Format) -> Rendered {
    let report = verify_paper(seed);
    Rendered { output: render_report(&report, format), passed: report.passed() }
}

/// Signature shorthand: one entry per slot, `'` marking primed slots.
fn signature_text(t: &SpinTensor) -> String {
    let slots: Vec<String> = t
        .signature()
        .slots()
        .iter()
        .map(|s| {
            let word = match s.variance {
                Variance::Up => "upper",
                Variance::Down => "lower",
            };
            format!("{word}{}", if s.primed { "'" } else { "" })
        })
        .collect();
    format!("[{}]", slots.join(", "))
}

fn tensor_text(name: &str, t: &SpinTensor) -> String {
    if t.slot_count() == 0 {
        return format!("{name} = {}\n", t.components()[0]);
    }
    let mut out = format!("{name} : {}\n", signature_text(t));
    let mut any = false;
    for (tuple, value) in t.enumerate() {
        if !value.is_zero() {
            any = true;
            let ix = tuple.iter().map(u8::to_string).collect::<Vec<_>>().join(",");
            out.push_str(&format!("  {name}[{ix}] = {value}\n"));
        }
    }
    if !any {
        out.push_str("  (all components zero)\n");
    }
    out
}

fn count_word(kind: QueryKind) -> &'static str {
    match kind {
        QueryKind::Antisym | QueryKind::Sym => "permutations",
        QueryKind::Real => "checks",
    }
}

fn eval_text(outcome: &ProgramOutcome) -> String {
    let mut out = String::new();
    for (name, tensor) in &outcome.definitions {
        out.push_str(&tensor_text(name, tensor));
    }
    for query in &outcome.queries {
        let verdict = if query.report.passed() { "PASS" } else { "FAIL" };
        out.push_str(&format!(
            "{}: {} ({}/{} {})\n",
            query.label,
            verdict,
            query.report.passed_count(),
            query.report.items.len(),
            count_word(query.kind)
        ));
        for item in &query.report.items {
            if !item.passed {
                match &item.counterexample {
                    Some(c) => out.push_str(&format!(
                        "  FAIL {}  at {:?}: found {}, required {}\n",
                        item.name, c.indices, c.lhs, c.rhs
                    )),
                    None => out.push_str(&format!("  FAIL {}\n", item.name)),
                }
            }
        }
    }
    out
}

fn eval_json(outcome: &ProgramOutcome) -> serde_json::Value {
    serde_json::json!({
        "definitions": outcome
            .definitions
            .iter()
            .map(|(name, tensor)| serde_json::json!({"name": name, "tensor": tensor}))
            .collect::<Vec<_>>(),
        "queries": outcome
            .queries
            .iter()
            .map(|q| serde_json::json!({
                "label": q.label,
                "passed": q.report.passed(),
                "report": q.report,
            }))
            .collect::<Vec<_>>(),
    })
}

fn eval_markdown(outcome: &ProgramOutcome) -> String {
    let mut out = String::from("| definition | signature | nonzero components |\n|---|---|---|\n");
    for (name, tensor) in &outcome.definitions {
        let nonzero = tensor
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(tuple, v)| format!("`{tuple:?}` = {v}"))
            .collect::<Vec<_>>()
            .join(", ");
        out.push_str(&format!(
            "| {} | {} | {} |\n",
            name,
            signature_text(tensor),
            if nonzero.is_empty() { "all zero".to_string() } else { nonzero }
        ));
    }
    for query in &outcome.queries {
        out.push_str(&format!("\n## {}\n\n{}", query.label, query.report.to_markdown()));
    }
    out
}

fn eval_latex(outcome: &ProgramOutcome) -> String {
    let mut out = String::new();
    for (name, tensor) in &outcome.definitions {
        out.push_str(&format!("% {name} : {}\n", signature_text(tensor)));
        for (tuple, value) in tensor.enumerate() {
            if !value.is_zero() {
                let ix = tuple.iter().map(u8::to_string).collect::<Vec<_>>().join("");
                out.push_str(&format!("${name}_{{{ix}}} = {value}$\\\\\n"));
            }
        }
    }
    for query in &outcome.queries {
        out.push_str(&format!("% {}\n{}", query.label, query.report.to_latex()));
    }
    out
}

fn run_eval(input: &PathBuf, format: Format) -> Result<Rendered, InputError> {
    let text = std::fs::read_to_string(input)
        .map_err(|e| InputError(format!("{}: {e}", input.display())))?;
    let outcome = run_program(&text, &PaperConstants::new())
        .map_err(|e| InputError(format!("{}:{e}", input.display())))?;
    let output = match format {
        Format::Text => eval_text(&outcome),
        Format::Json => {
            serde_json::to_string_pretty(&eval_json(&outcome)).expect("serializable")
        }
        Format::Md => eval_markdown(&outcome),
        Format::Latex => eval_latex(&outcome),
    };
    Ok(Rendered { output, passed: outcome.all_passed() })
}

fn basis_of_rank(rank: u8) -> Vec<NamedTensor> {
    let c = PaperConstants::new();
    match rank {
        2 => lambda2_basis(&c),
        3 => lambda3_basis(&c),
        _ => lambda4_basis(&c),
    }
}

fn render_basis(rank: u8, format: Format) -> Rendered {
    let basis = basis_of_rank(rank);
    let output = match format {
        Format::Text => {
            let mut out = String::new();
            for (k, named) in basis.iter().enumerate() {
                let label = element_label(rank, k);
                out.push_str(&format!("{label} = {}\n", named.name));
                out.push_str(&tensor_text(&label, &named.tensor));
            }
            out
        }
        Format::Json => {
            let items: Vec<serde_json::Value> = basis
                .iter()
                .map(|n| {
                    serde_json::json!({
                        "name": n.name,
                        "latex": n.latex,
                        "tensor": n.tensor,
                    })
                })
                .collect();
            serde_json::to_string_pretty(&items).expect("serializable")
        }
        Format::Md => {
            let mut out =
                String::from("| element | construction | latex |\n|---|---|---|\n");
            for (k, named) in basis.iter().enumerate() {
                out.push_str(&format!(
                    "| {} | `{}` | `{}` |\n",
                    element_label(rank, k),
                    named.name,
                    named.latex
                ));
            }
            out
        }
        Format::Latex => {
            let mut out = String::new();
            for named in &basis {
                out.push_str(&named.latex);
                out.push('\n');
            }
            out
        }
    };
    Rendered { output, passed: true }
}

fn element_label(rank: u8, k: usize) -> String {
    match rank {
        2 => format!("d{}", k + 1),
        3 => format!("L{}", k + 1),
        _ => "e".to_string(),
    }
}

fn run_dual(input: &PathBuf, format: Format) -> Result<Rendered, InputError> {
    let text = std::fs::read_to_string(input)
        .map_err(|e| InputError(format!("{}: {e}", input.display())))?;
    let tensor: SpinTensor = serde_json::from_str(&text)
        .map_err(|e| InputError(format!("{}: {e}", input.display())))?;

    let expected_pairs = tensor.slot_count() / 2;
    let groups = composite_groups(expected_pairs);
    let antisym = tensor
        .is_totally_antisymmetric(&groups)
        .map_err(|e| InputError(format!("{}: {e}", input.display())))?;
    if !antisym.passed() {
        let mut output = String::from("input is not totally antisymmetric\n");
        output.push_str(&antisym.to_text());
        return Ok(Rendered { output, passed: false });
    }

    let c = PaperConstants::new();
    let dual = hodge_dual(&c, &tensor)
        .map_err(|e| InputError(format!("{}: {e}", input.display())))?;
    let output = match format {
        Format::Text => tensor_text("dual", &dual),
        Format::Json => serde_json::to_string_pretty(&dual).expect("serializable"),
        Format::Md => {
            let nonzero = dual
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(tuple, v)| format!("| `{tuple:?}` | {v} |"))
                .collect::<Vec<_>>()
                .join("\n");
            format!("| tuple | component |\n|---|---|\n{nonzero}\n")
        }
        Format::Latex => {
            let mut out = String::new();
            for (tuple, value) in dual.enumerate() {
                if !value.is_zero() {
                    let ix = tuple.iter().map(u8::to_string).collect::<Vec<_>>().join("");
                    out.push_str(&format!("$(\\ast F)_{{{ix}}} = {value}$\\\\\n"));
                }
            }
            out
        }
    };
    Ok(Rendered { output, passed: true })
}
