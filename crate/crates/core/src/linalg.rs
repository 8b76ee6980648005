//! Dense matrices over a prime field `GF(p)` and reduced row echelon form.
//!
//! Pivoting is deterministic: columns are scanned left to right and the
//! first row (in the current row order) with a nonzero entry becomes the
//! pivot row. Row operations only touch the nonzero entries of the pivot
//! row, which keeps the sparse systems produced by window truncation cheap.

use crate::error::{Error, Result};
use crate::ring::is_prime;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    p: u32,
    ncols: usize,
    rows: Vec<Vec<u32>>,
}

/// Result of row reduction: the reduced matrix and its pivot columns.
#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: FpMatrix,
    pub pivots: Vec<usize>,
}

impl FpMatrix {
    pub fn zeros(p: u32, nrows: usize, ncols: usize) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotAField(format!("Z/{p}")));
        }
        Ok(FpMatrix {
            p,
            ncols,
            rows: vec![vec![0; ncols]; nrows],
        })
    }

    pub fn identity(p: u32, n: usize) -> Result<Self> {
        let mut m = Self::zeros(p, n, n)?;
        for i in 0..n {
            m.rows[i][i] = 1 % p;
        }
        Ok(m)
    }

    /// Rows must all have the same length; entries are reduced mod `p`.
    pub fn from_rows(p: u32, rows: Vec<Vec<u32>>) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::InvalidParameter("ragged matrix rows".into()));
        }
        let mut m = Self::zeros(p, 0, ncols)?;
        m.rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(|v| v % p).collect())
            .collect();
        Ok(m)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.rows[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.rows[r][c] = v % self.p;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.rows[r]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        self.rows.iter().map(|r| r[c]).collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.p != other.p || self.nrows() != other.nrows() {
            return Err(Error::InvalidParameter(
                "hstack needs equal row counts over the same field".into(),
            ));
        }
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.iter().chain(b).copied().collect())
            .collect();
        Ok(FpMatrix {
            p: self.p,
            ncols: self.ncols + other.ncols,
            rows,
        })
    }

    pub fn negated(&self) -> FpMatrix {
        let p = self.p;
        FpMatrix {
            p,
            ncols: self.ncols,
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|&v| (p - v) % p).collect())
                .collect(),
        }
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.ncols, "vector length mismatch");
        let p = self.p as u64;
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(a, _)| **a != 0)
                    .fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % p)
                    as u32
            })
            .collect()
    }

    pub fn rref(&self) -> Rref {
        let p = self.p as u64;
        let mut rows = self.rows.clone();
        let nrows = rows.len();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.ncols {
            if r == nrows {
                break;
            }
            let Some(found) = (r..nrows).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(r, found);
            let inv = inverse_mod(rows[r][c] as u64, p);
            let mut nz: Vec<(usize, u64)> = Vec::new();
            for (j, v) in rows[r].iter_mut().enumerate().skip(c) {
                if *v != 0 {
                    *v = ((*v as u64 * inv) % p) as u32;
                    nz.push((j, *v as u64));
                }
            }
            for (i, target) in rows.iter_mut().enumerate() {
                let f = target[c] as u64;
                if i == r || f == 0 {
                    continue;
                }
                let neg = p - f;
                for &(j, v) in &nz {
                    target[j] = ((target[j] as u64 + neg * v) % p) as u32;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            matrix: FpMatrix {
                p: self.p,
                ncols: self.ncols,
                rows,
            },
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Kernel basis, one vector per free column in increasing column order.
    /// The vector for free column `f` has a one at `f`, zeros at the other
    /// free columns and is determined on the pivot columns.
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        let Rref { matrix, pivots } = self.rref();
        let p = self.p;
        let mut is_pivot = vec![false; self.ncols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.ncols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![0u32; self.ncols];
                v[f] = 1 % p;
                for (k, &pc) in pivots.iter().enumerate() {
                    v[pc] = (p - matrix.rows[k][f]) % p;
                }
                v
            })
            .collect()
    }
}

pub(crate) fn inverse_mod(a: u64, p: u64) -> u64 {
    let mut base = a % p;
    let mut e = p - 2;
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}
