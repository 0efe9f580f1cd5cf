//! Text formats for complexes.
//!
//! A complex is a JSON document `{"n": 5, "top_cells": [[0, 1, 2], …]}` with
//! an optional `"dim"` for complexes whose top level may be empty. Each cell
//! lists distinct vertices in ascending order.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};

struct SortedCell(Vec<usize>);

impl<'de> Deserialize<'de> for SortedCell {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(de)?;
        if let Some(w) = v.windows(2).find(|w| w[0] >= w[1]) {
            let what = if w[0] == w[1] { "repeats a vertex" } else { "is not sorted ascending" };
            return Err(D::Error::custom(format!("cell {v:?} {what}")));
        }
        if v.is_empty() {
            return Err(D::Error::custom("cells must be nonempty"));
        }
        Ok(SortedCell(v))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexDoc {
    n: usize,
    #[serde(default)]
    dim: Option<usize>,
    top_cells: Vec<SortedCell>,
}

#[derive(Serialize)]
struct ComplexOut<'a> {
    n: usize,
    dim: usize,
    top_cells: Vec<&'a [usize]>,
}

/// Parses a complex document; syntax errors carry a 1-based line and column.
pub fn parse_complex(text: &str) -> Result<SimplicialComplex> {
    let doc: ComplexDoc = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: strip_position(&e.to_string()),
    })?;
    let cells = doc.top_cells.into_iter().map(|c| c.0);
    match doc.dim {
        Some(dim) => SimplicialComplex::with_dimension(doc.n, dim, cells),
        None => SimplicialComplex::from_top_cells(doc.n, cells),
    }
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

/// Writes the maximal cells of `x`, one cell per line.
pub fn write_complex(x: &SimplicialComplex) -> String {
    let maximal = x.maximal_cells();
    let doc = ComplexOut {
        n: x.n_vertices(),
        dim: x.dim(),
        top_cells: maximal.iter().map(|c| c.vertices()).collect(),
    };
    let mut out = format!("{{\n  \"n\": {},\n  \"dim\": {},\n  \"top_cells\": [", doc.n, doc.dim);
    for (i, c) in doc.top_cells.iter().enumerate() {
        let sep = if i == 0 { "\n    " } else { ",\n    " };
        out.push_str(sep);
        out.push_str(&serde_json::to_string(c).expect("integer arrays serialize"));
    }
    out.push_str(if doc.top_cells.is_empty() { "]\n}\n" } else { "\n  ]\n}\n" });
    out
}
