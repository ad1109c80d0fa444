//! Rendering: aligned human tables, CSV and JSON.

use std::io::{self, Write};
use std::sync::Arc;

use anyhow::Context;
use clap::ValueEnum;

use quotinv::field::{format_rational, Rational};
use quotinv::graded_ring::{intersection_signature, RingElement, RingPresentation};
use quotinv::invariants::{
    c_squared_closed_form, c_squared_pairing, chern_class, eta_closed_form, w2_report, Family, FamilyDescriptor,
    SignConvention,
};
use quotinv::moduli::{ModuliRecord, ModuliRow, ModuliTable};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

/// `p/q` with `q = 1` suppressed and a typographic minus.
fn pretty(q: &Rational) -> String {
    let s = format_rational(q);
    match s.strip_prefix('-') {
        Some(rest) => format!("−{rest}"),
        None => s,
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn width(s: &str) -> usize {
    s.chars().count()
}

/// Left-aligned columns separated by two spaces.
fn columns(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| width(h)).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(width(cell));
        }
    }
    let line = |cells: Vec<&str>| {
        let mut out = String::new();
        for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
            if i + 1 == cells.len() {
                out.push_str(cell);
            } else {
                out.push_str(cell);
                out.push_str(&" ".repeat(w - width(cell) + 2));
            }
        }
        out.push('\n');
        out
    };
    let mut out = line(header.to_vec());
    for row in rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

fn single_records(rows: &[(SignConvention, ModuliRow)]) -> anyhow::Result<Vec<ModuliRecord>> {
    let mut out = Vec::new();
    for (s, row) in rows {
        out.extend(ModuliTable::from_rows(row.diffeo_type, *s, vec![row.clone()]).records()?);
    }
    Ok(out)
}

fn write_records(records: &[ModuliRecord], format: Format) -> anyhow::Result<()> {
    let stdout = io::stdout();
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(stdout.lock());
            for r in records {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        Format::Json => {
            let mut lock = stdout.lock();
            serde_json::to_writer_pretty(&mut lock, records)?;
            writeln!(lock)?;
        }
        Format::Table => unreachable!("tables are rendered by the caller"),
    }
    Ok(())
}

pub fn invariants(f: &FamilyDescriptor, rows: &[(SignConvention, ModuliRow)], format: Format) -> anyhow::Result<()> {
    if format != Format::Table {
        return write_records(&single_records(rows)?, format);
    }
    let mut facts: Vec<Vec<String>> = vec![
        vec!["descriptor".into(), f.to_string()],
        vec!["family".into(), f.family().to_string()],
    ];
    if f.family() != Family::Brieskorn {
        let c = chern_class(f).context("Chern class")?;
        let w2 = w2_report(f).context("w2 report")?;
        facts.push(vec!["chern class".into(), c.to_string()]);
        facts.push(vec!["⟨c², [B]⟩".into(), c_squared_pairing(f)?.to_string().replace('-', "−")]);
        facts.push(vec!["closed form".into(), c_squared_closed_form(f)?.to_string().replace('-', "−")]);
        facts.push(vec!["w₂(B) ≠ 0".into(), yes_no(w2.base_w2_nonzero).into()]);
        facts.push(vec!["N spin".into(), yes_no(w2.n_spin).into()]);
        facts.push(vec!["X spin".into(), yes_no(w2.x_spin).into()]);
    }
    facts.push(vec!["η closed form".into(), eta_closed_form(f).to_string()]);
    if let Some((_, row)) = rows.first() {
        facts.push(vec!["η fixed points".into(), row.eta.to_string()]);
    }
    let mut out = columns(&["quantity", "value"], &facts);
    out.push('\n');
    out.push_str(&classification_table(rows));
    print!("{out}");
    Ok(())
}

fn classification_table(rows: &[(SignConvention, ModuliRow)]) -> String {
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|(s, row)| vec![s.to_string(), row.bordism.to_string(), row.diffeo_type.to_string()])
        .collect();
    columns(&["ε", "[P]", "type"], &cells)
}

pub fn classification(rows: &[(SignConvention, ModuliRow)], format: Format) -> anyhow::Result<()> {
    if format != Format::Table {
        return write_records(&single_records(rows)?, format);
    }
    if let Some((_, row)) = rows.first() {
        println!("{}", row.descriptor);
    }
    print!("{}", classification_table(rows));
    Ok(())
}

pub fn tables(tables: &[ModuliTable], format: Format) -> anyhow::Result<()> {
    if format != Format::Table {
        let mut records = Vec::new();
        for t in tables {
            records.extend(t.records()?);
        }
        return write_records(&records, format);
    }
    let mut out = String::new();
    for (i, t) in tables.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&format!(
            "{}  ε = {}  rows: {}  distinct |η|: {}\n",
            t.diffeo_type,
            t.epsilon,
            t.rows.len(),
            t.distinct_count
        ));
        let cells: Vec<Vec<String>> = t
            .rows
            .iter()
            .enumerate()
            .map(|(n, row)| {
                vec![n.to_string(), row.descriptor.to_string(), row.bordism.to_string(), row.eta.to_string()]
            })
            .collect();
        out.push_str(&columns(&["#", "descriptor", "[P]", "η"], &cells));
    }
    print!("{out}");
    Ok(())
}

pub fn evaluation(x: &RingElement) {
    println!("normal form  {x}");
    println!("pairing      {}", pretty(&x.pair_fundamental()));
}

pub fn presentation(pres: &Arc<RingPresentation>) {
    println!("{pres}");
    let names: Vec<&str> = pres.order_priority().iter().map(|&i| pres.generators()[i].name.as_str()).collect();
    println!("order: deglex, {}", names.join(" > "));
    println!("rules:");
    for (lhs, rhs) in pres.rules() {
        let tail = if rhs.is_empty() { "0".to_string() } else { pres.format_terms(rhs, true) };
        println!("  {} → {}", pres.format_monomial(lhs, true), tail);
    }
    println!("basis:");
    for d in 0..=pres.top_degree() {
        let basis = pres.basis(d);
        if basis.is_empty() {
            continue;
        }
        let shown: Vec<String> = basis.iter().map(|m| pres.format_monomial(m, true)).collect();
        println!("  degree {d}: {}", shown.join(", "));
    }
    let sig = intersection_signature(pres);
    println!(
        "signature: {} (positive {}, negative {}, nullity {})",
        sig.value().to_string().replace('-', "−"),
        sig.positive,
        sig.negative,
        sig.nullity
    );
}
