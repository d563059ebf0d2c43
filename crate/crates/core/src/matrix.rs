//! Dense square matrices over F_p and a little linear algebra (rank,
//! determinant, solvability of affine systems).

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Modulus;

/// An `dim x dim` matrix over F_p, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SquareMatrix {
    modulus: Modulus,
    dim: usize,
    entries: Vec<u64>,
}

impl fmt::Debug for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SquareMatrix(p={}, {:?})", self.modulus, self.rows())
    }
}

impl SquareMatrix {
    pub fn new(modulus: Modulus, dim: usize, entries: Vec<u64>) -> Result<Self> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(Error::Dimension(format!(
                "{} entries do not form a nonempty square matrix of dimension {dim}",
                entries.len()
            )));
        }
        let entries = entries.into_iter().map(|v| modulus.reduce(v)).collect();
        Ok(SquareMatrix {
            modulus,
            dim,
            entries,
        })
    }

    /// Builds a matrix from signed integer rows, reducing each entry mod p.
    pub fn from_rows<R: AsRef<[i64]>>(modulus: Modulus, rows: &[R]) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            let row = row.as_ref();
            if row.len() != dim {
                return Err(Error::Dimension(format!(
                    "row of length {} in a matrix with {dim} rows",
                    row.len()
                )));
            }
            entries.extend(row.iter().map(|&v| modulus.reduce_signed(v)));
        }
        SquareMatrix::new(modulus, dim, entries)
    }

    pub fn identity(modulus: Modulus, dim: usize) -> Self {
        let mut entries = vec![0; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1 % modulus.p();
        }
        SquareMatrix {
            modulus,
            dim,
            entries,
        }
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.dim + c]
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u64] {
        &self.entries[r * self.dim..(r + 1) * self.dim]
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.entries.chunks(self.dim).map(<[u64]>::to_vec).collect()
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn scale(&self, lambda: u64) -> SquareMatrix {
        let m = self.modulus;
        SquareMatrix {
            modulus: m,
            dim: self.dim,
            entries: self.entries.iter().map(|&v| m.mul(v, lambda)).collect(),
        }
    }

    pub fn mul(&self, other: &SquareMatrix) -> Result<SquareMatrix> {
        if self.dim != other.dim || self.modulus != other.modulus {
            return Err(Error::Dimension(
                "matrix product of incompatible operands".into(),
            ));
        }
        let n = self.dim;
        let m = self.modulus;
        let mut column = vec![0; n];
        let mut entries = vec![0; n * n];
        for c in 0..n {
            for (r, slot) in column.iter_mut().enumerate() {
                *slot = other.get(r, c);
            }
            for r in 0..n {
                entries[r * n + c] = m.dot(self.row(r), &column);
            }
        }
        Ok(SquareMatrix {
            modulus: m,
            dim: n,
            entries,
        })
    }

    pub fn pow(&self, mut exp: u128) -> SquareMatrix {
        let mut acc = SquareMatrix::identity(self.modulus, self.dim);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).expect("same shape");
            }
            base = base.mul(&base).expect("same shape");
            exp >>= 1;
        }
        acc
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        debug_assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|r| self.modulus.dot(self.row(r), v))
            .collect()
    }

    pub fn mul_vec_into(&self, v: &[u64], out: &mut [u64]) {
        for (r, slot) in out.iter_mut().enumerate() {
            *slot = self.modulus.dot(self.row(r), v);
        }
    }

    pub fn trace(&self) -> u64 {
        (0..self.dim).fold(0, |acc, i| self.modulus.add(acc, self.get(i, i)))
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> u64 {
        let m = self.modulus;
        let n = self.dim;
        let mut a = self.entries.clone();
        let mut det = 1 % m.p();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| a[r * n + col] != 0) else {
                return 0;
            };
            if pivot != col {
                for c in 0..n {
                    a.swap(pivot * n + c, col * n + c);
                }
                det = m.neg(det);
            }
            let pv = a[col * n + col];
            det = m.mul(det, pv);
            let inv = m.inv(pv).expect("nonzero pivot");
            for r in col + 1..n {
                let factor = m.mul(a[r * n + col], inv);
                if factor == 0 {
                    continue;
                }
                for c in col..n {
                    let sub = m.mul(factor, a[col * n + c]);
                    a[r * n + c] = m.sub(a[r * n + c], sub);
                }
            }
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        self.det() != 0
    }
}

/// Rank of a (not necessarily square) matrix given as rows.
pub fn rank(modulus: Modulus, rows: &[Vec<u64>]) -> usize {
    let mut a: Vec<Vec<u64>> = rows.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let m = modulus;
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..a.len()).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, pivot);
        let inv = m.inv(a[rank][col]).expect("nonzero pivot");
        let pivot_row = a[rank].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == rank || row[col] == 0 {
                continue;
            }
            let factor = m.mul(row[col], inv);
            for (x, &y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x = m.sub(*x, m.mul(factor, y));
            }
        }
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    rank
}

/// Decides whether the affine system `linear[k] . x + constant[k] = 0`
/// (for every `k`) has a solution in F_p^n.
///
/// Each equation is given as `n` linear coefficients followed by the
/// constant term. The system is solvable iff appending the constant column
/// does not raise the rank.
pub fn affine_system_solvable(modulus: Modulus, equations: &[Vec<u64>]) -> bool {
    if equations.is_empty() {
        return true;
    }
    let n = equations[0].len() - 1;
    let linear: Vec<Vec<u64>> = equations.iter().map(|e| e[..n].to_vec()).collect();
    rank(modulus, &linear) == rank(modulus, equations)
}
