//! JSON documents and plain-text tables for each command.
//!
//! Every JSON document is a `serde_json::Value` whose maps keep keys sorted,
//! so printing the same value twice gives the same bytes. Counts are JSON
//! numbers; anything that can outgrow 64 bits is a string.

use std::fmt::Write as _;

use hypercohom_core::griffiths::SecondKindVerdict;
use hypercohom_core::residue::DecompositionReport;
use hypercohom_core::specseq::{LesReport, SpectralPage};
use hypercohom_core::{
    betti_table, complement_cohomology, consistency_report, euler_characteristic, hodge_filtration_dims,
    primitive_hodge_numbers, FormSum, HypersurfaceContext, NormalForm, ResidueClass,
};
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u64 = 1;

fn header(command: &str, ctx: &HypersurfaceContext) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "n": ctx.n(),
        "d": ctx.d(),
        "f": ctx.f().to_string(),
    })
}

fn extend(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

fn form_terms(s: &FormSum) -> Value {
    s.forms()
        .iter()
        .map(|f| json!({"pole_order": f.pole_order(), "numerator": f.numerator().to_string()}))
        .collect()
}

fn normal_form_terms(nf: &NormalForm) -> Value {
    nf.components()
        .map(|(j, p)| json!({"pole_order": j, "numerator": p.to_string()}))
        .collect()
}

fn verdict(exact: bool) -> &'static str {
    if exact {
        "exact"
    } else {
        "not exact"
    }
}

// ---------------------------------------------------------------- hodge

pub fn hodge_json(ctx: &HypersurfaceContext) -> Value {
    let report = consistency_report(ctx);
    extend(
        header("hodge", ctx),
        json!({
            "primitive_hodge_numbers": primitive_hodge_numbers(ctx).entries,
            "hodge_filtration_dims": hodge_filtration_dims(ctx),
            "betti_numbers": betti_table(ctx),
            "euler_characteristic": euler_characteristic(ctx.n(), ctx.d()).to_string(),
            "consistency": {
                "all_passed": report.all_passed(),
                "checks": report.checks.iter().map(|c| json!({
                    "name": c.name, "passed": c.passed, "detail": c.detail,
                })).collect::<Vec<_>>(),
            },
        }),
    )
}

pub fn hodge_table(ctx: &HypersurfaceContext) -> String {
    let n = ctx.n();
    let prim = primitive_hodge_numbers(ctx);
    let mut out = String::new();
    writeln!(out, "hypersurface  n = {n}, d = {}, f = {}", ctx.d(), ctx.f()).unwrap();
    writeln!(out, "primitive Hodge numbers").unwrap();
    for p in (0..=n).rev() {
        writeln!(out, "  h^({p},{}) = {}", n - p, prim.h(p)).unwrap();
    }
    writeln!(out, "Hodge filtration dims F^k H^{n}(Y)_0").unwrap();
    for (k, dim) in hodge_filtration_dims(ctx).iter().enumerate() {
        writeln!(out, "  k = {k}: {dim}").unwrap();
    }
    let betti: Vec<String> = betti_table(ctx).iter().map(ToString::to_string).collect();
    writeln!(out, "Betti numbers  {}", betti.join(" ")).unwrap();
    writeln!(out, "Euler characteristic  {}", euler_characteristic(n, ctx.d())).unwrap();
    for c in consistency_report(ctx).checks {
        writeln!(out, "check {:<24} {}  ({})", c.name, if c.passed { "ok" } else { "FAILED" }, c.detail).unwrap();
    }
    out
}

// ---------------------------------------------------------------- reduce / exact

pub fn reduce_json(ctx: &HypersurfaceContext, s: &FormSum, nf: &NormalForm) -> Value {
    extend(
        header("reduce", ctx),
        json!({
            "input": form_terms(s),
            "normal_form": normal_form_terms(nf),
            "verdict": verdict(nf.is_zero()),
        }),
    )
}

pub fn reduce_table(s: &FormSum, nf: &NormalForm) -> String {
    let mut out = String::new();
    writeln!(out, "input").unwrap();
    for f in s.forms() {
        writeln!(out, "  ({}) / f^{}", f.numerator(), f.pole_order()).unwrap();
    }
    writeln!(out, "normal form").unwrap();
    if nf.is_zero() {
        writeln!(out, "  0").unwrap();
    }
    for (j, p) in nf.components() {
        writeln!(out, "  ({p}) / f^{j}").unwrap();
    }
    writeln!(out, "verdict  {}", verdict(nf.is_zero())).unwrap();
    out
}

pub fn exact_json(ctx: &HypersurfaceContext, s: &FormSum, v: &SecondKindVerdict) -> Value {
    extend(
        header("exact", ctx),
        json!({
            "input": form_terms(s),
            "exact": v.exact,
            "second_kind": v.second_kind,
            "justification": v.justification,
            "verdict": verdict(v.exact),
        }),
    )
}

pub fn exact_table(v: &SecondKindVerdict) -> String {
    format!(
        "exact        {}\nsecond kind  {}\nverdict      {}\nreason       {}\n",
        v.exact,
        v.second_kind,
        verdict(v.exact),
        v.justification
    )
}

// ---------------------------------------------------------------- residue

pub fn residue_json(ctx: &HypersurfaceContext, s: &FormSum, r: &ResidueClass) -> Value {
    let comps: Vec<Value> = r
        .components
        .iter()
        .map(|c| {
            json!({
                "pole_order": c.pole_order,
                "hodge_type": [c.hodge_type.0, c.hodge_type.1],
                "representative": c.representative.to_string(),
            })
        })
        .collect();
    extend(
        header("residue", ctx),
        json!({
            "input": form_terms(s),
            "components": comps,
            "is_zero": r.is_zero(),
            "hodge_level": r.hodge_level(),
        }),
    )
}

pub fn residue_table(r: &ResidueClass) -> String {
    let mut out = String::new();
    if r.is_zero() {
        writeln!(out, "residue  0").unwrap();
    }
    for c in &r.components {
        writeln!(
            out,
            "type ({},{})  pole order {}  {}",
            c.hodge_type.0, c.hodge_type.1, c.pole_order, c.representative
        )
        .unwrap();
    }
    writeln!(out, "lies in F^{} H^{}(Y)_0", r.hodge_level(), r.n).unwrap();
    out
}

// ---------------------------------------------------------------- thm41

pub fn thm41_json(ctx: &HypersurfaceContext, reports: &[DecompositionReport]) -> Value {
    extend(
        header("thm41", ctx),
        json!({
            "reports": reports.iter().map(|r| json!({
                "k": r.k,
                "hodge_filtration_dim": r.hodge_filtration_dim,
                "residue_image_dim": r.residue_image_dim,
                "ambient_restriction_dim": r.ambient_restriction_dim,
                "holds": r.holds,
            })).collect::<Vec<_>>(),
            "all_hold": reports.iter().all(|r| r.holds),
        }),
    )
}

pub fn thm41_table(reports: &[DecompositionReport]) -> String {
    let mut out = String::from("k  dim F^k  residue image  ambient  holds\n");
    for r in reports {
        writeln!(
            out,
            "{:<2} {:<8} {:<14} {:<8} {}",
            r.k, r.hodge_filtration_dim, r.residue_image_dim, r.ambient_restriction_dim, r.holds
        )
        .unwrap();
    }
    out
}

// ---------------------------------------------------------------- complement

pub fn complement_json(ctx: &HypersurfaceContext) -> Value {
    let c = complement_cohomology(ctx);
    extend(
        header("complement", ctx),
        json!({
            "cohomology_dims": c.dims,
            "middle_weights": c.middle_weights.iter().map(|w| json!({"weight": w.weight, "dim": w.dim})).collect::<Vec<_>>(),
            "hodge_filtration": c.hodge_filtration,
        }),
    )
}

pub fn complement_table(ctx: &HypersurfaceContext) -> String {
    let c = complement_cohomology(ctx);
    let n = ctx.n();
    let mut out = String::new();
    for (q, dim) in c.dims.iter().enumerate() {
        writeln!(out, "dim H^{q}(X - Y) = {dim}").unwrap();
    }
    for w in &c.middle_weights {
        writeln!(out, "weight {} piece of H^{}: {}", w.weight, n + 1, w.dim).unwrap();
    }
    for (k, dim) in c.hodge_filtration.iter().enumerate() {
        writeln!(out, "dim F^{k} H^{} = {dim}", n + 1).unwrap();
    }
    out
}

// ---------------------------------------------------------------- specseq

pub struct SpecSeqOutput {
    pub pages: Vec<SpectralPage>,
    pub infinity: SpectralPage,
    pub degeneration_page: usize,
    pub stabilization_bound: usize,
    pub cohomology: Vec<(i64, usize)>,
    pub les: Option<LesReport>,
}

pub fn specseq_json(o: &SpecSeqOutput) -> Value {
    let mut v = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "specseq",
        "pages": o.pages.iter().map(SpectralPage::to_json).collect::<Vec<_>>(),
        "infinity_page": o.infinity.to_json(),
        "degeneration_page": o.degeneration_page,
        "stabilization_bound": o.stabilization_bound,
        "cohomology": o.cohomology.iter().map(|(m, d)| json!({"degree": m, "dim": d})).collect::<Vec<_>>(),
    });
    if let Some(les) = &o.les {
        v["les"] = json!({
            "exact": les.is_exact(),
            "nodes": les.nodes.iter().map(|n| json!({
                "label": n.label, "degree": n.degree, "dim": n.dim,
                "rank_in": n.rank_in, "rank_out": n.rank_out, "exact": n.exact,
            })).collect::<Vec<_>>(),
        });
    }
    v
}

fn page_lines(out: &mut String, name: &str, page: &SpectralPage) {
    let cells: Vec<String> = page
        .entries
        .iter()
        .filter(|(_, &d)| d > 0)
        .map(|((p, q), d)| format!("({p},{q})={d}"))
        .collect();
    let shown = if cells.is_empty() { "0".to_string() } else { cells.join(" ") };
    writeln!(out, "{name}  {shown}").unwrap();
    for d in page.differentials.iter().filter(|d| !d.matrix.is_zero()) {
        writeln!(
            out,
            "    d: ({},{}) -> ({},{}) rank {}",
            d.source.0,
            d.source.1,
            d.target.0,
            d.target.1,
            d.matrix.rank()
        )
        .unwrap();
    }
}

pub fn specseq_table(o: &SpecSeqOutput) -> String {
    let mut out = String::new();
    for p in &o.pages {
        page_lines(&mut out, &format!("E_{}", p.r), p);
    }
    page_lines(&mut out, "E_inf", &o.infinity);
    let h: Vec<String> = o.cohomology.iter().map(|(m, d)| format!("H^{m}={d}")).collect();
    writeln!(out, "cohomology  {}", h.join(" ")).unwrap();
    writeln!(out, "degenerates at E_{}", o.degeneration_page).unwrap();
    if let Some(les) = &o.les {
        writeln!(out, "long exact sequence  {}", if les.is_exact() { "exact" } else { "NOT exact" }).unwrap();
        for n in &les.nodes {
            writeln!(
                out,
                "  {:<12} dim {:<3} in {:<3} out {:<3} {}",
                n.label,
                n.dim,
                n.rank_in,
                n.rank_out,
                if n.exact { "ok" } else { "FAILED" }
            )
            .unwrap();
        }
    }
    out
}
