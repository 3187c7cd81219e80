use crate::linalg::{dot, norm, DenseVector};
use crate::{Result, VipegError};

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(VipegError::InvalidInput(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn matvec(&self, x: &[f64]) -> DenseVector {
        (0..self.rows).map(|i| dot(self.row(i), x)).collect()
    }

    pub fn matvec_t(&self, x: &[f64]) -> DenseVector {
        let mut out = vec![0.0; self.cols];
        for (i, &xi) in x.iter().enumerate().take(self.rows) {
            for (o, a) in out.iter_mut().zip(self.row(i)) {
                *o += a * xi;
            }
        }
        out
    }
}

/// Compressed sparse row matrix with sorted, duplicate-free column indices.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<f64>,
}

impl SparseMatrix {
    /// Build from `(row, col, value)` triplets in any order.
    pub fn from_triplets(rows: usize, cols: usize, mut triplets: Vec<(usize, usize, f64)>) -> Result<Self> {
        triplets.sort_by_key(|a| (a.0, a.1));
        for w in triplets.windows(2) {
            if (w[0].0, w[0].1) == (w[1].0, w[1].1) {
                return Err(VipegError::InvalidInput(format!("duplicate entry ({}, {})", w[0].0, w[0].1)));
            }
        }
        let mut row_ptr = vec![0usize; rows + 1];
        let mut col_idx = Vec::with_capacity(triplets.len());
        let mut values = Vec::with_capacity(triplets.len());
        for &(i, j, v) in &triplets {
            if i >= rows || j >= cols {
                return Err(VipegError::InvalidInput(format!("entry ({i}, {j}) outside {rows}x{cols}")));
            }
            if !v.is_finite() {
                return Err(VipegError::InvalidInput(format!("entry ({i}, {j}) is not finite")));
            }
            row_ptr[i + 1] += 1;
            col_idx.push(j);
            values.push(v);
        }
        for i in 0..rows {
            row_ptr[i + 1] += row_ptr[i];
        }
        Ok(Self { rows, cols, row_ptr, col_idx, values })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// `(col, value)` pairs of row `i`.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        self.col_idx[r.clone()].iter().copied().zip(self.values[r].iter().copied())
    }

    /// All entries in row-major order.
    pub fn entries(&self) -> Vec<(usize, usize, f64)> {
        (0..self.rows).flat_map(|i| self.row(i).map(move |(j, v)| (i, j, v))).collect()
    }

    pub fn matvec(&self, x: &[f64]) -> DenseVector {
        (0..self.rows).map(|i| self.row(i).map(|(j, v)| v * x[j]).sum()).collect()
    }

    pub fn matvec_t(&self, y: &[f64]) -> DenseVector {
        let mut out = vec![0.0; self.cols];
        for (i, &yi) in y.iter().enumerate().take(self.rows) {
            for (j, v) in self.row(i) {
                out[j] += v * yi;
            }
        }
        out
    }

    /// Scale row `i` by `s[i]`.
    pub fn scale_rows(&self, s: &[f64]) -> Self {
        let mut out = self.clone();
        for i in 0..self.rows {
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                out.values[k] *= s[i];
            }
        }
        out
    }
}

/// Largest eigenvalue of a symmetric positive semidefinite linear map by
/// power iteration from a fixed start vector.
pub fn power_iteration(apply: impl Fn(&[f64]) -> DenseVector, dim: usize, max_iter: usize, tol: f64) -> f64 {
    let mut v: DenseVector = (0..dim).map(|i| 1.0 + 0.01 * (i % 7) as f64).collect();
    let n0 = norm(&v);
    v.iter_mut().for_each(|a| *a /= n0);
    let mut estimate = 0.0;
    for _ in 0..max_iter {
        let w = apply(&v);
        let nw = norm(&w);
        if nw == 0.0 {
            return 0.0;
        }
        let next = dot(&v, &w);
        v = w.into_iter().map(|a| a / nw).collect();
        if (next - estimate).abs() <= tol * next.abs() {
            return next.max(nw);
        }
        estimate = next;
    }
    estimate
}

/// `‖A‖₂` of a dense square operator via power iteration on `AᵀA`.
pub fn spectral_norm(a: &DenseMatrix) -> f64 {
    power_iteration(|v| a.matvec_t(&a.matvec(v)), a.cols(), 100_000, 1e-14).sqrt()
}
