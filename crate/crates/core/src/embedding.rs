//! Dissimilarity matrices against a representation set; their rows are the
//! embedded vectors.

use std::collections::HashSet;
use std::io::{Read, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::Label;
use crate::seqcore::{levenshtein_encoded, AlignmentCostModel, Sequence};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Initial,
    ExpansionMedoid,
}

/// Ordered prototype sequences (the representation set), non-empty and with
/// unique ids.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepresentationSet {
    prototypes: Vec<Sequence>,
    provenance: Vec<Provenance>,
}

impl RepresentationSet {
    pub fn new(prototypes: Vec<Sequence>) -> Result<Self> {
        let provenance = vec![Provenance::Initial; prototypes.len()];
        Self::from_parts(prototypes, provenance)
    }

    pub fn from_parts(prototypes: Vec<Sequence>, provenance: Vec<Provenance>) -> Result<Self> {
        if prototypes.is_empty() {
            return Err(Error::domain("representation set must be non-empty"));
        }
        if prototypes.len() != provenance.len() {
            return Err(Error::domain("one provenance tag per prototype is required"));
        }
        let mut seen = HashSet::new();
        for p in &prototypes {
            if !seen.insert(p.id()) {
                return Err(Error::domain(format!("duplicate prototype id '{}'", p.id())));
            }
        }
        Ok(Self {
            prototypes,
            provenance,
        })
    }

    pub fn len(&self) -> usize {
        self.prototypes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prototypes.is_empty()
    }

    pub fn prototypes(&self) -> &[Sequence] {
        &self.prototypes
    }

    pub fn provenance(&self) -> &[Provenance] {
        &self.provenance
    }

    pub fn ids(&self) -> Vec<String> {
        self.prototypes.iter().map(|p| p.id().to_string()).collect()
    }

    pub fn contains_id(&self, id: &str) -> bool {
        self.prototypes.iter().any(|p| p.id() == id)
    }

    /// Keeps the prototypes at `indices`, in the given order.
    pub fn select(&self, indices: &[usize]) -> Result<Self> {
        Self::from_parts(
            indices.iter().map(|&i| self.prototypes[i].clone()).collect(),
            indices.iter().map(|&i| self.provenance[i]).collect(),
        )
    }
}

/// Dense `n x m` table of dissimilarities, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct DissimilarityMatrix {
    values: Vec<f64>,
    row_ids: Vec<String>,
    col_ids: Vec<String>,
}

impl DissimilarityMatrix {
    pub fn from_rows(row_ids: Vec<String>, col_ids: Vec<String>, rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.len() != row_ids.len() || rows.iter().any(|r| r.len() != col_ids.len()) {
            return Err(Error::domain("matrix shape does not match its ids"));
        }
        if rows.iter().flatten().any(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(Error::domain("dissimilarities must be finite and non-negative"));
        }
        Ok(Self {
            values: rows.into_iter().flatten().collect(),
            row_ids,
            col_ids,
        })
    }

    pub fn n_rows(&self) -> usize {
        self.row_ids.len()
    }

    pub fn n_cols(&self) -> usize {
        self.col_ids.len()
    }

    pub fn row_ids(&self) -> &[String] {
        &self.row_ids
    }

    pub fn col_ids(&self) -> &[String] {
        &self.col_ids
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n_cols() + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let m = self.n_cols();
        &self.values[i * m..(i + 1) * m]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks(self.n_cols().max(1)).take(self.n_rows())
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.n_rows()).map(|i| self.get(i, j)).collect()
    }

    /// Sub-matrix with the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let values = (0..self.n_rows())
            .flat_map(|i| cols.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.get(i, j))
            .collect();
        Self {
            values,
            row_ids: self.row_ids.clone(),
            col_ids: cols.iter().map(|&j| self.col_ids[j].clone()).collect(),
        }
    }

    /// Sub-matrix with the given rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Self {
            values: rows.iter().flat_map(|&i| self.row(i).iter().copied()).collect(),
            row_ids: rows.iter().map(|&i| self.row_ids[i].clone()).collect(),
            col_ids: self.col_ids.clone(),
        }
    }

    /// CSV with a header of prototype ids; the first column holds row ids.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["id".to_string()];
        header.extend(self.col_ids.iter().cloned());
        w.write_record(&header)?;
        for (i, id) in self.row_ids.iter().enumerate() {
            let mut record = vec![id.clone()];
            record.extend(self.row(i).iter().map(f64::to_string));
            w.write_record(&record)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(input: R) -> Result<Self> {
        let mut r = csv::Reader::from_reader(input);
        let col_ids: Vec<String> = r.headers()?.iter().skip(1).map(str::to_string).collect();
        let mut row_ids = Vec::new();
        let mut rows = Vec::new();
        for record in r.records() {
            let record = record?;
            let mut fields = record.iter();
            row_ids.push(fields.next().unwrap_or_default().to_string());
            let row = fields
                .map(|f| {
                    f.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::domain(format!("bad matrix value '{f}'")))
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        Self::from_rows(row_ids, col_ids, rows)
    }
}

/// Embedded vectors (rows of a dissimilarity matrix) with their class labels.
#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddedDataset {
    pub vectors: Vec<Vec<f64>>,
    pub labels: Vec<Label>,
    pub dim: usize,
}

impl EmbeddedDataset {
    pub fn from_matrix(d: &DissimilarityMatrix, labels: Vec<Label>) -> Result<Self> {
        if labels.len() != d.n_rows() {
            return Err(Error::domain(format!(
                "{} labels for {} embedded rows",
                labels.len(),
                d.n_rows()
            )));
        }
        Ok(Self {
            vectors: d.rows().map(<[f64]>::to_vec).collect(),
            labels,
            dim: d.n_cols(),
        })
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

/// Alphabet indices for each sequence; `None` when a symbol is outside the alphabet.
fn encode_all(seqs: &[Sequence], cm: &AlignmentCostModel) -> Vec<Option<Vec<u8>>> {
    seqs.iter()
        .map(|s| {
            s.residues()
                .iter()
                .map(|&symbol| cm.index_of(symbol).map(|i| i as u8))
                .collect()
        })
        .collect()
}

fn unknown_symbol(s: &Sequence, cm: &AlignmentCostModel) -> Error {
    let position = s
        .residues()
        .iter()
        .position(|&b| cm.index_of(b).is_none())
        .unwrap_or(0);
    Error::UnknownSymbol {
        id: s.id().to_string(),
        position,
        symbol: s.residues().get(position).copied().unwrap_or(b'?') as char,
    }
}

/// Reports the lexicographically first cell whose row or column sequence
/// fails to encode.
fn check_cells(
    data: &[Sequence],
    rows: &[Option<Vec<u8>>],
    protos: &[Sequence],
    cols: &[Option<Vec<u8>>],
    cm: &AlignmentCostModel,
) -> Result<()> {
    let bad_row = rows.iter().position(Option::is_none);
    let bad_col = cols.iter().position(Option::is_none);
    let (row, col, source) = match (bad_row, bad_col) {
        (None, None) => return Ok(()),
        (Some(0), _) => (0, 0, unknown_symbol(&data[0], cm)),
        (_, Some(j)) => (0, j, unknown_symbol(&protos[j], cm)),
        (Some(i), None) => (i, 0, unknown_symbol(&data[i], cm)),
    };
    Err(Error::Cell {
        row,
        col,
        source: Box::new(source),
    })
}

/// `D[i][j] = d(data_i, prototype_j)`. Cells are computed independently, so
/// the result does not depend on the worker count.
pub fn compute_matrix(
    data: &[Sequence],
    r: &RepresentationSet,
    cm: &AlignmentCostModel,
) -> Result<DissimilarityMatrix> {
    if data.is_empty() {
        return Err(Error::domain("cannot embed an empty dataset"));
    }
    let rows = encode_all(data, cm);
    let cols = encode_all(r.prototypes(), cm);
    check_cells(data, &rows, r.prototypes(), &cols, cm)?;
    let rows: Vec<Vec<u8>> = rows.into_iter().flatten().collect();
    let cols: Vec<Vec<u8>> = cols.into_iter().flatten().collect();
    let values: Vec<Vec<f64>> = rows
        .par_iter()
        .map(|a| cols.iter().map(|b| levenshtein_encoded(a, b, cm)).collect())
        .collect();
    Ok(DissimilarityMatrix {
        values: values.into_iter().flatten().collect(),
        row_ids: data.iter().map(|s| s.id().to_string()).collect(),
        col_ids: r.ids(),
    })
}

/// All-pairs matrix of `data` against itself, computing the upper triangle
/// once and mirroring it. Equal, bit for bit, to
/// `compute_matrix(data, data)` because the alignment is exactly symmetric.
pub fn pairwise_matrix(data: &[Sequence], cm: &AlignmentCostModel) -> Result<DissimilarityMatrix> {
    if data.is_empty() {
        return Err(Error::domain("cannot embed an empty dataset"));
    }
    let encoded = encode_all(data, cm);
    check_cells(data, &encoded, data, &encoded, cm)?;
    let rows: Vec<Vec<u8>> = encoded.into_iter().flatten().collect();
    let n = rows.len();
    let upper: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| (i + 1..n).map(|j| levenshtein_encoded(&rows[i], &rows[j], cm)).collect())
        .collect();
    let mut values = vec![0.0; n * n];
    for (i, row) in upper.iter().enumerate() {
        for (off, &v) in row.iter().enumerate() {
            let j = i + 1 + off;
            values[i * n + j] = v;
            values[j * n + i] = v;
        }
    }
    let ids: Vec<String> = data.iter().map(|s| s.id().to_string()).collect();
    Ok(DissimilarityMatrix {
        values,
        row_ids: ids.clone(),
        col_ids: ids,
    })
}

/// The row `compute_matrix` would produce for `s`.
pub fn embed_one(s: &Sequence, r: &RepresentationSet, cm: &AlignmentCostModel) -> Result<Vec<f64>> {
    let d = compute_matrix(std::slice::from_ref(s), r, cm)?;
    Ok(d.values)
}
