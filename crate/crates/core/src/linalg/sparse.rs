use super::fp::{Echelon, FpVector};
use super::Matrix;

/// Column-major sparse integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    columns: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn new(rows: usize, mut columns: Vec<Vec<(usize, i64)>>) -> Self {
        for c in &mut columns {
            c.sort_unstable_by_key(|e| e.0);
            let mut merged: Vec<(usize, i64)> = Vec::with_capacity(c.len());
            for &(r, v) in c.iter() {
                debug_assert!(r < rows);
                match merged.last_mut() {
                    Some(last) if last.0 == r => last.1 += v,
                    _ => merged.push((r, v)),
                }
            }
            merged.retain(|e| e.1 != 0);
            *c = merged;
        }
        SparseMatrix { rows, columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &[(usize, i64)] {
        &self.columns[j]
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.rows, self.cols());
        for (j, c) in self.columns.iter().enumerate() {
            for &(i, v) in c {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.cols());
        let mut out = vec![0; self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            if v[j] != 0 {
                for &(i, a) in c {
                    out[i] += a * v[j];
                }
            }
        }
        out
    }

    pub fn fp_column(&self, j: usize, p: u32) -> FpVector {
        let mut v = FpVector::zeros(p, self.rows);
        for &(i, a) in &self.columns[j] {
            let r = a.rem_euclid(p as i64) as u32;
            if r != 0 {
                v.set(i, r);
            }
        }
        v
    }

    /// Echelon basis of the column space over `F_p`.
    pub fn column_echelon(&self, p: u32) -> Echelon {
        let mut e = Echelon::new(p, self.rows);
        for j in 0..self.cols() {
            e.insert(self.fp_column(j, p));
        }
        e
    }

    /// Column echelon over `F_p` whose rows carry zero tags of the given
    /// length, ready for further tagged insertions.
    pub fn column_echelon_tagged(&self, p: u32, tag_len: usize) -> Echelon {
        let mut e = Echelon::with_tags(p, self.rows, tag_len);
        for j in 0..self.cols() {
            e.insert_tagged(self.fp_column(j, p), FpVector::zeros(p, tag_len));
        }
        e
    }

    pub fn rank_mod(&self, p: u32) -> usize {
        self.column_echelon(p).rank()
    }

    /// Basis of the kernel over `F_p` (vectors of length `cols`).
    pub fn kernel_mod(&self, p: u32) -> Vec<FpVector> {
        let n = self.cols();
        let mut e = Echelon::with_tags(p, self.rows, n);
        let mut out = Vec::new();
        for j in 0..n {
            if let Some(rel) = e.insert_or_relation(self.fp_column(j, p), FpVector::unit(p, n, j)) {
                out.push(rel);
            }
        }
        out
    }

    pub fn compose(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols(), other.rows);
        let cols = other
            .columns
            .iter()
            .map(|c| {
                let mut acc: Vec<(usize, i64)> = Vec::new();
                for &(k, b) in c {
                    for &(i, a) in &self.columns[k] {
                        acc.push((i, a * b));
                    }
                }
                acc
            })
            .collect();
        SparseMatrix::new(self.rows, cols)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    pub fn reduce(&self, p: u64) -> SparseMatrix {
        let cols = self
            .columns
            .iter()
            .map(|c| c.iter().map(|&(i, v)| (i, v.rem_euclid(p as i64))).collect())
            .collect();
        SparseMatrix::new(self.rows, cols)
    }
}
