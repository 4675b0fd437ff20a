//! Turning command-line text into library objects.

use std::path::Path;
use std::sync::Arc;

use hypercohom_core::{build_context, make_form, FormSum, GradedPoly, HypersurfaceContext};

/// Failure classes, mapped onto exit codes by `main`.
#[derive(Debug)]
pub enum CliError {
    /// Malformed input: unreadable files, syntax errors, bad flags.
    Input(String),
    /// Well-formed input that violates a mathematical precondition.
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Input(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Domain(m) => m,
        }
    }
}

/// Resolves `--f`: the builtin name `fermat`, a readable file, or inline text.
pub fn load_polynomial(source: &str, n: usize, d: u32) -> Result<GradedPoly, CliError> {
    if n < 1 {
        return Err(CliError::Input(format!("n must be at least 1, got {n}")));
    }
    if d < 1 {
        return Err(CliError::Input(format!("d must be at least 1, got {d}")));
    }
    let nvars = n + 2;
    if source == "fermat" {
        return Ok(GradedPoly::fermat(nvars, d));
    }
    let text = if Path::new(source).is_file() {
        std::fs::read_to_string(source).map_err(|e| CliError::Input(format!("cannot read {source}: {e}")))?
    } else {
        source.to_string()
    };
    let f = GradedPoly::parse(text.trim(), nvars).map_err(|e| CliError::Input(format!("cannot parse f: {e}")))?;
    if f.is_zero() {
        return Err(CliError::Domain("singular hypersurface: f is the zero polynomial".into()));
    }
    if f.degree() != d as i32 {
        return Err(CliError::Domain(format!(
            "degree mismatch: f has degree {} but --d is {d}",
            f.degree()
        )));
    }
    Ok(f)
}

pub fn load_context(source: &str, n: usize, d: u32) -> Result<Arc<HypersurfaceContext>, CliError> {
    let f = load_polynomial(source, n, d)?;
    build_context(n, f).map_err(|e| CliError::Domain(e.to_string()))
}

/// Parses `NUMERATOR:POLEORDER[,NUMERATOR:POLEORDER...]`. Repeated pole
/// orders are summed.
pub fn parse_form_sum(ctx: &Arc<HypersurfaceContext>, text: &str) -> Result<FormSum, CliError> {
    let mut sum = FormSum::new(ctx);
    if text.trim().is_empty() {
        return Err(CliError::Input("empty --form".into()));
    }
    for (i, piece) in text.split(',').enumerate() {
        let (num, k) = piece
            .rsplit_once(':')
            .ok_or_else(|| CliError::Input(format!("form term {}: expected NUMERATOR:POLEORDER, got {piece:?}", i + 1)))?;
        let k: usize = k
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("form term {}: pole order {:?} is not a count", i + 1, k.trim())))?;
        let a = GradedPoly::parse(num.trim(), ctx.nvars())
            .map_err(|e| CliError::Input(format!("form term {}: {e}", i + 1)))?;
        // a bare "0" carries no degree of its own
        let a = if a.is_zero() {
            GradedPoly::zero(ctx.nvars(), ctx.numerator_degree(k.max(1)) as i32)
        } else {
            a
        };
        let form = make_form(ctx, a, k).map_err(|e| CliError::Domain(format!("form term {}: {e}", i + 1)))?;
        sum.push(&form).map_err(|e| CliError::Domain(e.to_string()))?;
    }
    Ok(sum)
}
