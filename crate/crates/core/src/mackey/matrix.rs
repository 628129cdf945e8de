use std::fmt;

use serde::Serialize;

use crate::error::{boundary, Result};

/// A natural-number matrix; column `j` is the image of generator `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NatMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<u64>,
}

impl NatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        NatMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = NatMatrix::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_columns(rows: usize, columns: &[Vec<u64>]) -> Self {
        let mut m = NatMatrix::zero(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column of wrong length");
            for (i, &v) in c.iter().enumerate() {
                m.data[i * m.cols + j] = v;
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn apply(&self, v: &[u64]) -> Result<Vec<u64>> {
        if v.len() != self.cols {
            return Err(boundary("vector length does not match the matrix"));
        }
        Ok((0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * v[j]).sum())
            .collect())
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &NatMatrix) -> Result<NatMatrix> {
        if self.cols != inner.rows {
            return Err(boundary("matrices do not compose"));
        }
        let mut m = NatMatrix::zero(self.rows, inner.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..inner.cols {
                    m.data[i * inner.cols + j] += a * inner.get(k, j);
                }
            }
        }
        Ok(m)
    }

    pub fn add(&self, other: &NatMatrix) -> Result<NatMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(boundary("matrices of different shapes"));
        }
        Ok(NatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    /// A 0/1 matrix with exactly one 1 in every row and column.
    pub fn is_permutation(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).filter(|&j| self.get(i, j) != 0).count() == 1)
            && (0..self.cols).all(|j| (0..self.rows).filter(|&i| self.get(i, j) != 0).count() == 1)
            && self.data.iter().all(|&v| v <= 1)
    }
}

impl fmt::Display for NatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}
