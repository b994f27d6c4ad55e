//! Text, CSV and JSON rendering of command results.

use std::fmt::Write as _;

use serde_json::{json, Value};
use tubecalc::category::{CategorySpec, ValidationReport};
use tubecalc::center::CenterReport;
use tubecalc::linalg::Mat;
use tubecalc::monoidal::{ModularData, Tensor};
use tubecalc::rep::SimpleModule;
use tubecalc::suite::SuiteReport;
use tubecalc::tube::TubeAlgebra;
use tubecalc::{Scalar, TolerancePolicy};

use crate::Format;

/// Writes CSV rows with a header.
fn csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("writing to memory");
    for row in rows {
        w.write_record(&row).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("writing to memory")).expect("UTF-8 input")
}

fn pretty(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn full<S: Scalar>(s: &S) -> String {
    s.fmt_full()
}

fn matrix_json<S: Scalar>(m: &Mat<S>) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(|x| Value::String(full(x))).collect())).collect())
}

fn grades<S: Scalar>(t: &TubeAlgebra<S>, dims: &[usize]) -> String {
    t.labels()
        .iter()
        .zip(dims)
        .filter(|(_, &d)| d > 0)
        .map(|(&a, d)| format!("{}:{d}", t.spec().name(a)))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn validation(report: &ValidationReport, fmt: Format) -> String {
    match fmt {
        Format::Text => report.to_string(),
        Format::Csv => csv(
            &["check", "passed", "max_residual", "worst"],
            report.checks.iter().map(|c| {
                vec![c.name.clone(), c.passed.to_string(), format!("{:e}", c.max_residual), c.worst.clone()]
            }),
        ),
        Format::Json => pretty(json!({ "passed": report.passed(), "checks": report.checks })),
    }
}

pub fn info<S: Scalar>(spec: &CategorySpec<S>, tube_dim: usize, fmt: Format) -> String {
    let n = spec.num_simples();
    let rows: Vec<Vec<String>> = (0..n)
        .map(|a| {
            vec![
                spec.name(a).to_string(),
                spec.source(a).to_string(),
                spec.target(a).to_string(),
                spec.name(spec.dual(a)).to_string(),
                full(spec.qdim(a)),
                full(spec.pivotal(a)),
            ]
        })
        .collect();
    let fusion: Vec<(String, String, Vec<(String, usize)>)> = (0..n)
        .flat_map(|a| (0..n).filter(move |&b| spec.composable(a, b)).map(move |b| (a, b)))
        .map(|(a, b)| {
            let channels = spec.channels(a, b).iter().map(|&(c, m)| (spec.name(c).to_string(), m)).collect();
            (spec.name(a).to_string(), spec.name(b).to_string(), channels)
        })
        .collect();
    let global: Vec<String> = (0..spec.zero_cells).map(|i| full(&spec.global_dimension(i))).collect();
    match fmt {
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "name: {}", spec.name);
            let _ = writeln!(out, "0-cells: {}", spec.zero_cells);
            let _ = writeln!(out, "simples: {n}");
            let _ = writeln!(out, "tube algebra dimension: {tube_dim}");
            for r in &rows {
                let _ = writeln!(
                    out,
                    "  {} : {} -> {}, dual {}, d = {}, p = {}",
                    r[0], r[1], r[2], r[3], r[4], r[5]
                );
            }
            let _ = writeln!(out, "fusion rules:");
            for (a, b, ch) in &fusion {
                let terms: Vec<String> =
                    ch.iter().map(|(c, m)| if *m == 1 { c.clone() } else { format!("{m}{c}") }).collect();
                let _ = writeln!(out, "  {a} x {b} = {}", if terms.is_empty() { "0".into() } else { terms.join(" + ") });
            }
            for (i, g) in global.iter().enumerate() {
                let _ = writeln!(out, "global dimension of 0-cell {i}: {g}");
            }
            out
        }
        Format::Csv => csv(&["label", "source", "target", "dual", "qdim", "pivotal"], rows),
        Format::Json => pretty(json!({
            "name": spec.name,
            "zero_cells": spec.zero_cells,
            "tube_dimension": tube_dim,
            "simples": rows.iter().map(|r| json!({
                "label": r[0], "source": r[1].parse::<usize>().unwrap_or(0),
                "target": r[2].parse::<usize>().unwrap_or(0), "dual": r[3], "qdim": r[4], "pivotal": r[5],
            })).collect::<Vec<_>>(),
            "fusion": fusion.iter().map(|(a, b, ch)| json!({
                "left": a, "right": b,
                "channels": ch.iter().map(|(c, m)| json!({ "label": c, "multiplicity": m })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "global_dimensions": global,
        })),
    }
}

pub fn tube<S: Scalar>(t: &TubeAlgebra<S>, fmt: Format) -> String {
    let spec = t.spec();
    let rows: Vec<Vec<String>> = t
        .blocks()
        .into_iter()
        .map(|(a, b, x)| {
            let (_, len) = t.block(a, b, x).expect("listed block");
            vec![spec.name(a).to_string(), spec.name(b).to_string(), spec.name(x).to_string(), len.to_string()]
        })
        .collect();
    match fmt {
        Format::Text => {
            let mut out = format!("tube algebra dimension: {}\n", t.dim());
            for r in &rows {
                let _ = writeln!(out, "  T[{};{}] loop {}: {}", r[0], r[1], r[2], r[3]);
            }
            out
        }
        Format::Csv => csv(&["a", "b", "x", "dim"], rows),
        Format::Json => pretty(json!({
            "dimension": t.dim(),
            "blocks": rows.iter().map(|r| json!({
                "a": r[0], "b": r[1], "x": r[2], "dim": r[3].parse::<usize>().unwrap_or(0),
            })).collect::<Vec<_>>(),
        })),
    }
}

pub fn irreps<S: Scalar>(t: &TubeAlgebra<S>, simples: &[SimpleModule<S>], fmt: Format) -> String {
    let rows: Vec<Vec<String>> = simples
        .iter()
        .enumerate()
        .map(|(k, s)| {
            vec![
                k.to_string(),
                s.rep.total_dim().to_string(),
                s.multiplicity.to_string(),
                full(&s.twist),
                grades(t, s.rep.dims()),
            ]
        })
        .collect();
    match fmt {
        Format::Text => {
            let squares: usize = simples.iter().map(|s| s.rep.total_dim().pow(2)).sum();
            let mut out = format!("{} simple modules, sum of squared dimensions {squares} (tube dimension {})\n", simples.len(), t.dim());
            for r in &rows {
                let _ = writeln!(out, "  S{}: dim {}, multiplicity {}, twist {}, grades [{}]", r[0], r[1], r[2], r[3], r[4]);
            }
            out
        }
        Format::Csv => csv(&["index", "dim", "multiplicity", "twist", "grades"], rows),
        Format::Json => pretty(Value::Array(
            simples
                .iter()
                .enumerate()
                .map(|(k, s)| {
                    json!({
                        "index": k,
                        "dim": s.rep.total_dim(),
                        "multiplicity": s.multiplicity,
                        "twist": full(&s.twist),
                        "grades": t.labels().iter().zip(s.rep.dims())
                            .map(|(&a, d)| json!({ "label": t.spec().name(a), "dim": d }))
                            .collect::<Vec<_>>(),
                    })
                })
                .collect(),
        )),
    }
}

pub fn fuse<S: Scalar>(
    t: &TubeAlgebra<S>,
    (left, right): (usize, usize),
    product: &Tensor<S>,
    mult: &[usize],
    fmt: Format,
) -> String {
    match fmt {
        Format::Text => {
            let terms: Vec<String> = mult
                .iter()
                .enumerate()
                .filter(|(_, &m)| m > 0)
                .map(|(k, &m)| if m == 1 { format!("S{k}") } else { format!("{m} S{k}") })
                .collect();
            format!(
                "S{left} x S{right} = {}\ndim {}, grades [{}], relation closure residual {:e}\n",
                if terms.is_empty() { "0".into() } else { terms.join(" + ") },
                product.rep.total_dim(),
                grades(t, product.dims()),
                product.closure_residual
            )
        }
        Format::Csv => csv(&["simple", "multiplicity"], mult.iter().enumerate().map(|(k, m)| vec![k.to_string(), m.to_string()])),
        Format::Json => pretty(json!({
            "left": left,
            "right": right,
            "dim": product.rep.total_dim(),
            "grades": t.labels().iter().zip(product.dims())
                .map(|(&a, d)| json!({ "label": t.spec().name(a), "dim": d })).collect::<Vec<_>>(),
            "multiplicities": mult,
            "closure_residual": product.closure_residual,
        })),
    }
}

fn matrix_rows<'a, S: Scalar>(name: &'a str, m: &'a Mat<S>) -> impl Iterator<Item = Vec<String>> + 'a {
    (0..m.rows()).flat_map(move |i| {
        (0..m.cols()).map(move |j| vec![name.to_string(), i.to_string(), j.to_string(), full(&m[(i, j)])])
    })
}

fn matrix_text<S: Scalar>(m: &Mat<S>) -> String {
    (0..m.rows())
        .map(|i| format!("  [{}]\n", m.row(i).iter().map(full).collect::<Vec<_>>().join(", ")))
        .collect()
}

pub fn modular<S: Scalar>(data: &ModularData<S>, pol: &TolerancePolicy, fmt: Format) -> String {
    let nondegenerate = data.is_nondegenerate(pol);
    let verlinde = nondegenerate.then(|| data.verlinde_residual());
    match fmt {
        Format::Text => {
            let mut out = String::new();
            let list = |v: &[S]| v.iter().map(full).collect::<Vec<_>>().join(", ");
            let _ = writeln!(out, "twists: [{}]", list(&data.twists));
            let _ = writeln!(out, "quantum dimensions: [{}]", list(&data.dims));
            let _ = writeln!(out, "normalization: {}", full(&data.normalization));
            let _ = write!(out, "S:\n{}", matrix_text(&data.s));
            let _ = write!(out, "T:\n{}", matrix_text(&data.t));
            let _ = writeln!(out, "nondegenerate: {nondegenerate}");
            if let Some(v) = verlinde {
                let _ = writeln!(out, "Verlinde residual: {v:e}");
            }
            out
        }
        Format::Csv => csv(&["matrix", "row", "col", "value"], matrix_rows("S", &data.s).chain(matrix_rows("T", &data.t))),
        Format::Json => pretty(json!({
            "twists": data.twists.iter().map(full).collect::<Vec<_>>(),
            "dims": data.dims.iter().map(full).collect::<Vec<_>>(),
            "fusion": data.fusion.n,
            "normalization": full(&data.normalization),
            "s_unnormalized": matrix_json(&data.s_unnormalized),
            "s": matrix_json(&data.s),
            "t": matrix_json(&data.t),
            "nondegenerate": nondegenerate,
            "verlinde_residual": verlinde,
        })),
    }
}

pub fn center(report: &CenterReport, fmt: Format) -> String {
    match fmt {
        Format::Text => format!("{report}\n"),
        Format::Csv => {
            let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
            let entries = report.entries.iter().map(|e| {
                vec![
                    "entry".into(),
                    e.name.clone(),
                    String::new(),
                    join(&e.multiplicities),
                    format!("{:e}", e.module_law_residual),
                    e.identified.to_string(),
                ]
            });
            let pairs = report.pairs.iter().map(|p| {
                vec![
                    "pair".into(),
                    p.left.clone(),
                    p.right.clone(),
                    join(&p.product),
                    format!("{:e}", p.psi_intertwiner_residual.max(p.braiding_square_residual)),
                    p.psi_invertible.to_string(),
                ]
            });
            csv(&["kind", "left", "right", "multiplicities", "residual", "ok"], entries.chain(pairs))
        }
        Format::Json => pretty(serde_json::to_value(report).expect("report serializes")),
    }
}

pub fn selftest(report: &SuiteReport, fmt: Format) -> String {
    match fmt {
        Format::Text => {
            let total = report.checks().count();
            let failed = report.checks().filter(|(_, c)| !c.passed).count();
            format!("{report}{} checks, {failed} failed\n", total)
        }
        Format::Csv => csv(
            &["module", "check", "passed", "max_residual", "worst"],
            report.checks().map(|(m, c)| {
                vec![m.to_string(), c.name.clone(), c.passed.to_string(), format!("{:e}", c.max_residual), c.worst.clone()]
            }),
        ),
        Format::Json => pretty(json!({ "passed": report.passed(), "sections": report.sections })),
    }
}
