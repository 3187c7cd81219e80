use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Read;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::matrix::SparseMatrix;
use crate::{Result, VipegError};

/// A labelled sparse dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetFixture {
    /// `m × n` feature matrix
    pub features: SparseMatrix,
    /// `+1` or `−1` per row
    pub labels: Vec<f64>,
    /// number of repeated indices dropped while parsing (last value wins)
    pub duplicates: usize,
}

impl DatasetFixture {
    pub fn new(features: SparseMatrix, labels: Vec<f64>) -> Result<Self> {
        if features.rows() != labels.len() {
            return Err(VipegError::InvalidInput(format!(
                "{} labels for {} feature rows",
                labels.len(),
                features.rows()
            )));
        }
        if labels.iter().any(|&l| l != 1.0 && l != -1.0) {
            return Err(VipegError::InvalidInput("labels must be +1 or -1".into()));
        }
        Ok(Self { features, labels, duplicates: 0 })
    }

    pub fn samples(&self) -> usize {
        self.labels.len()
    }

    pub fn features_count(&self) -> usize {
        self.features.cols()
    }
}

fn parse_number(tok: &str, line: usize, what: &str) -> Result<f64> {
    let normalized = tok.replace('\u{2212}', "-");
    match normalized.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(VipegError::Parse { line, msg: format!("bad {what} '{tok}'") }),
    }
}

/// Parse svmlight-style text: `label idx:value idx:value ...` per line with
/// 1-based indices. Text after `#` is ignored, as are blank lines. Labels
/// `> 0` map to `+1`, all others to `−1`.
pub fn parse_sparse_dataset_str(text: &str) -> Result<DatasetFixture> {
    let mut labels = Vec::new();
    let mut triplets = Vec::new();
    let mut cols = 0usize;
    let mut duplicates = 0usize;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = content.split_whitespace();
        let Some(label_tok) = tokens.next() else { continue };
        let label = parse_number(label_tok, line, "label")?;
        let row = labels.len();
        labels.push(if label > 0.0 { 1.0 } else { -1.0 });

        let mut entries = BTreeMap::new();
        for tok in tokens {
            let (idx, val) = tok
                .split_once(':')
                .ok_or_else(|| VipegError::Parse { line, msg: format!("expected index:value, got '{tok}'") })?;
            let idx: usize = idx.parse().map_err(|_| VipegError::Parse { line, msg: format!("bad index '{idx}'") })?;
            if idx == 0 {
                return Err(VipegError::Parse { line, msg: "indices are 1-based; found 0".into() });
            }
            let val = parse_number(val, line, "value")?;
            if entries.insert(idx - 1, val).is_some() {
                duplicates += 1;
            }
            cols = cols.max(idx);
        }
        triplets.extend(entries.into_iter().map(|(j, v)| (row, j, v)));
    }
    let features = SparseMatrix::from_triplets(labels.len(), cols, triplets)?;
    Ok(DatasetFixture { features, labels, duplicates })
}

pub fn parse_sparse_dataset(mut reader: impl Read) -> Result<DatasetFixture> {
    let mut text = String::new();
    reader.read_to_string(&mut text).map_err(|e| VipegError::Parse { line: 0, msg: e.to_string() })?;
    parse_sparse_dataset_str(&text)
}

/// Canonical text form: `+1`/`-1`, then `idx:value` with ascending 1-based
/// indices and shortest round-trip float formatting, one line per row.
pub fn serialize_sparse_dataset(data: &DatasetFixture) -> String {
    let mut out = String::new();
    for (i, &l) in data.labels.iter().enumerate() {
        out.push_str(if l > 0.0 { "+1" } else { "-1" });
        for (j, v) in data.features.row(i) {
            let _ = write!(out, " {}:{}", j + 1, v);
        }
        out.push('\n');
    }
    out
}

/// Synthetic binary classification data: each feature is nonzero with
/// probability `density`, values uniform on `(−1, 1)`, and labels are the sign
/// of `hᵀw + noise` for a sparse planted `w`.
pub fn synthetic_dataset(m: usize, n: usize, density: f64, seed: u64) -> Result<DatasetFixture> {
    if m == 0 || n == 0 {
        return Err(VipegError::InvalidInput("synthetic dataset needs m, n > 0".into()));
    }
    if !(density > 0.0 && density <= 1.0) {
        return Err(VipegError::InvalidInput(format!("density {density} must lie in ]0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w: Vec<f64> = (0..n).map(|_| if rng.gen_bool(0.2) { rng.gen_range(-2.0..2.0) } else { 0.0 }).collect();
    let mut triplets = Vec::new();
    let mut labels = Vec::with_capacity(m);
    for i in 0..m {
        let mut score = rng.gen_range(-0.3..0.3);
        for (j, wj) in w.iter().enumerate() {
            if rng.gen_bool(density) {
                let v: f64 = rng.gen_range(-1.0..1.0);
                score += v * wj;
                triplets.push((i, j, v));
            }
        }
        labels.push(if score > 0.0 { 1.0 } else { -1.0 });
    }
    DatasetFixture::new(SparseMatrix::from_triplets(m, n, triplets)?, labels)
}
