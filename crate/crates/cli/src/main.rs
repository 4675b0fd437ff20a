//! `hypercohom`: de Rham invariants of smooth projective hypersurfaces and
//! their complements, plus a small spectral-sequence calculator.

mod input;
mod render;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hypercohom_core::griffiths::second_kind_verdict;
use hypercohom_core::specseq::{two_term_les, FilteredComplex, SpecSeqError};
use hypercohom_core::{normal_form, residue, theorem41_report};
use serde_json::Value;

use input::{load_context, parse_form_sum, CliError};
use render::SpecSeqOutput;

#[derive(Parser)]
#[command(name = "hypercohom", version, about = "Hodge data of hypersurface complements in projective space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Hypersurface {
    /// Dimension of Y; the ambient space is P^(n+1) with variables x0..x(n+1).
    #[arg(long)]
    n: usize,
    /// Degree of f.
    #[arg(long)]
    d: u32,
    /// `fermat`, a path to a file holding f, or f itself, e.g. "x0^3 + x1^3 + x2^3".
    #[arg(long, default_value = "fermat")]
    f: String,
    /// Emit JSON instead of a table.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct WithForm {
    #[command(flatten)]
    hyp: Hypersurface,
    /// Sum of forms A/f^k written as "A:k[,A:k...]".
    #[arg(long)]
    form: String,
}

#[derive(Subcommand)]
enum Command {
    /// Primitive Hodge numbers, Hodge filtration, Betti numbers, consistency checks.
    Hodge(Hypersurface),
    /// Normal form of a sum of rational top forms.
    Reduce(WithForm),
    /// Exactness and second-kind verdict.
    Exact(WithForm),
    /// Residue class with Hodge types.
    Residue(WithForm),
    /// Hodge filtration versus residues of pole-order pieces, for each k.
    Thm41(Hypersurface),
    /// Cohomology of the complement with its weights and Hodge filtration.
    Complement(Hypersurface),
    /// Pages of the spectral sequence of a filtered complex read from JSON.
    Specseq {
        /// JSON file describing the filtered complex.
        file: String,
        /// Last page to print (defaults to the degeneration page).
        #[arg(long)]
        pages: Option<usize>,
        /// Also check the long exact sequence of a two-level filtration.
        #[arg(long)]
        les: bool,
        #[arg(long)]
        json: bool,
    },
}

fn emit(json: bool, value: Value, table: String) -> String {
    if json {
        let mut s = serde_json::to_string(&value).expect("JSON values always serialize");
        s.push('\n');
        s
    } else {
        table
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    Ok(match cli.command {
        Command::Hodge(h) => {
            let ctx = load_context(&h.f, h.n, h.d)?;
            emit(h.json, render::hodge_json(&ctx), render::hodge_table(&ctx))
        }
        Command::Reduce(w) => {
            let ctx = load_context(&w.hyp.f, w.hyp.n, w.hyp.d)?;
            let s = parse_form_sum(&ctx, &w.form)?;
            let nf = normal_form(&s);
            emit(w.hyp.json, render::reduce_json(&ctx, &s, &nf), render::reduce_table(&s, &nf))
        }
        Command::Exact(w) => {
            let ctx = load_context(&w.hyp.f, w.hyp.n, w.hyp.d)?;
            let s = parse_form_sum(&ctx, &w.form)?;
            let v = second_kind_verdict(&s);
            emit(w.hyp.json, render::exact_json(&ctx, &s, &v), render::exact_table(&v))
        }
        Command::Residue(w) => {
            let ctx = load_context(&w.hyp.f, w.hyp.n, w.hyp.d)?;
            let s = parse_form_sum(&ctx, &w.form)?;
            let r = residue(&s);
            emit(w.hyp.json, render::residue_json(&ctx, &s, &r), render::residue_table(&r))
        }
        Command::Thm41(h) => {
            let ctx = load_context(&h.f, h.n, h.d)?;
            let reports: Vec<_> = (0..=ctx.n()).map(|k| theorem41_report(&ctx, k)).collect();
            emit(h.json, render::thm41_json(&ctx, &reports), render::thm41_table(&reports))
        }
        Command::Complement(h) => {
            let ctx = load_context(&h.f, h.n, h.d)?;
            emit(h.json, render::complement_json(&ctx), render::complement_table(&ctx))
        }
        Command::Specseq { file, pages, les, json } => {
            let out = specseq(&file, pages, les)?;
            emit(json, render::specseq_json(&out), render::specseq_table(&out))
        }
    })
}

fn specseq(file: &str, pages: Option<usize>, les: bool) -> Result<SpecSeqOutput, CliError> {
    let text = std::fs::read_to_string(file).map_err(|e| CliError::Input(format!("cannot read {file}: {e}")))?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{file} is not valid JSON: {e}")))?;
    let fc = FilteredComplex::from_json(&value).map_err(|e| match e {
        SpecSeqError::Json(_) => CliError::Input(e.to_string()),
        other => CliError::Domain(other.to_string()),
    })?;
    let degeneration_page = fc.degeneration_page();
    let last = pages.unwrap_or(degeneration_page);
    let les = if les {
        Some(two_term_les(&fc).map_err(|e| CliError::Domain(e.to_string()))?)
    } else {
        None
    };
    let (a, b) = fc.complex().degrees();
    Ok(SpecSeqOutput {
        pages: (0..=last).map(|r| fc.page(r)).collect(),
        infinity: fc.infinity_page(),
        degeneration_page,
        stabilization_bound: fc.stabilization_bound(),
        cohomology: (a..=b).map(|m| (m, fc.complex().cohomology_dim(m))).collect(),
        les,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
