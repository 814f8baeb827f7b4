//! Table renderings for `coeffs` and `moments`.

use charlier_core::charlier::moments;
use charlier_core::diffeq::CoeffTable;
use serde::Serialize;

use crate::CliError;

#[derive(Debug, Serialize)]
pub struct A0Row {
    pub n: u32,
    pub poly: String,
}

#[derive(Debug, Serialize)]
pub struct AiRow {
    pub i: u32,
    pub poly: String,
    pub deg_x: i64,
    pub deg_a: i64,
}

#[derive(Debug, Serialize)]
pub struct CoeffListing {
    pub a0: Vec<A0Row>,
    pub ai: Vec<AiRow>,
}

impl CoeffListing {
    pub fn new(table: &CoeffTable, max_i: u32) -> Self {
        let a0 = (0..=max_i)
            .map(|n| A0Row {
                n,
                poly: table.a0(n).to_string(),
            })
            .collect();
        let ai = (1..=max_i)
            .map(|i| {
                let info = table.info(i);
                AiRow {
                    i,
                    poly: table.ai(i).to_string(),
                    deg_x: info.deg_x,
                    deg_a: info.deg_a,
                }
            })
            .collect();
        CoeffListing { a0, ai }
    }
}

#[derive(Debug, Serialize)]
struct CsvRow<'a> {
    kind: &'static str,
    index: u32,
    poly: &'a str,
    deg_x: Option<i64>,
    deg_a: Option<i64>,
}

pub fn coeffs_json(listing: &CoeffListing) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(listing)? + "\n")
}

pub fn coeffs_csv(listing: &CoeffListing) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in &listing.a0 {
        w.serialize(CsvRow {
            kind: "a0",
            index: row.n,
            poly: &row.poly,
            deg_x: None,
            deg_a: None,
        })?;
    }
    for row in &listing.ai {
        w.serialize(CsvRow {
            kind: "ai",
            index: row.i,
            poly: &row.poly,
            deg_x: Some(row.deg_x),
            deg_a: Some(row.deg_a),
        })?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// One aligned row per coefficient.
pub fn coeffs_latex(table: &CoeffTable, max_i: u32) -> String {
    let mut rows = Vec::new();
    for n in 0..=max_i {
        rows.push(format!("A_{{0}}({n}, a) &= {}", table.a0(n).to_latex()));
    }
    for i in 1..=max_i {
        rows.push(format!("A_{{{i}}}(a, x) &= {}", table.ai(i).to_latex()));
    }
    format!(
        "\\begin{{align*}}\n{}\n\\end{{align*}}\n",
        rows.join(" \\\\\n")
    )
}

#[derive(Debug, Serialize)]
struct MomentRow {
    k: usize,
    poly: String,
}

pub fn moments_json(max_k: usize) -> Result<String, CliError> {
    let rows: Vec<MomentRow> = moments(max_k)
        .into_iter()
        .enumerate()
        .map(|(k, p)| MomentRow {
            k,
            poly: p.to_string(),
        })
        .collect();
    Ok(serde_json::to_string_pretty(&rows)? + "\n")
}
