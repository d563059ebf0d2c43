use serde::Serialize;

use crate::analysis::SCHEMA_VERSION;
use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::projective::canonicalize;

/// A window whose leading points fail to span enough of P^n.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Offset of the window's first point along the orbit of `[0 : ... : 0 : 1]`.
    pub window: u64,
    /// Smallest `d` for which points `0..=d+1` of the window lie in a
    /// `d`-dimensional projective subspace.
    pub d: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct UniformityReport {
    pub schema_version: u32,
    pub p: u64,
    pub n: usize,
    pub windows: u64,
    pub uniform: bool,
    pub violation_count: u64,
    /// The first few violations, for diagnosis.
    pub violations: Vec<Violation>,
}

const REPORTED_VIOLATIONS: usize = 16;

/// Checks, for `windows` consecutive starting points along the projective
/// orbit of `[0 : ... : 0 : 1]`, that the `k` points `P, MP, ..., M^{k-1} P`
/// are linearly independent for every `k <= n + 1`. Equivalently no `d + 2`
/// consecutive points lie in a projective subspace of dimension `d`, for
/// `1 <= d <= n - 1`.
pub fn subspace_uniformity_check(matrix: &SquareMatrix, windows: u64) -> Result<UniformityReport> {
    let dim = matrix.dim();
    if dim < 3 {
        return Err(Error::Dimension(
            "subspace uniformity needs n >= 2 (a matrix of size at least 3)".into(),
        ));
    }
    if !matrix.is_invertible() {
        return Err(Error::InvalidParameter("matrix is singular".into()));
    }
    let modulus = matrix.modulus();
    let n = dim - 1;

    // ring of the n + 1 most recent orbit points, oldest first
    let mut ring: std::collections::VecDeque<Vec<u64>> = std::collections::VecDeque::new();
    let mut point = vec![0u64; dim];
    point[n] = 1;
    for _ in 0..dim {
        ring.push_back(point.clone());
        point = matrix.mul_vec(&point);
        canonicalize(modulus, &mut point);
    }

    let mut violation_count = 0;
    let mut violations = Vec::new();
    let mut basis: Vec<Vec<u64>> = Vec::with_capacity(dim);
    for window in 0..windows {
        basis.clear();
        for (k, v) in ring.iter().enumerate() {
            if !reduce_into(modulus, &mut basis, v) {
                // points 0..=k span at most a (k-1)-dimensional subspace
                violation_count += 1;
                if violations.len() < REPORTED_VIOLATIONS {
                    violations.push(Violation {
                        window,
                        d: k.saturating_sub(1).max(1),
                    });
                }
                break;
            }
        }
        ring.pop_front();
        ring.push_back(point.clone());
        point = matrix.mul_vec(&point);
        canonicalize(modulus, &mut point);
    }

    Ok(UniformityReport {
        schema_version: SCHEMA_VERSION,
        p: modulus.p(),
        n,
        windows,
        uniform: violation_count == 0,
        violation_count,
        violations,
    })
}

/// Adds `v` to an echelon basis; returns `false` if `v` is already in its span.
fn reduce_into(modulus: crate::field::Modulus, basis: &mut Vec<Vec<u64>>, v: &[u64]) -> bool {
    let mut w = v.to_vec();
    for row in basis.iter() {
        let pivot = row
            .iter()
            .position(|&c| c != 0)
            .expect("basis rows are nonzero");
        if w[pivot] != 0 {
            let factor = w[pivot];
            for (wc, &rc) in w.iter_mut().zip(row) {
                *wc = modulus.sub(*wc, modulus.mul(factor, rc));
            }
        }
    }
    let Some(pivot) = w.iter().position(|&c| c != 0) else {
        return false;
    };
    let inv = modulus.inv(w[pivot]).expect("nonzero pivot");
    for c in w.iter_mut() {
        *c = modulus.mul(*c, inv);
    }
    // keep the basis fully reduced so pivots stay independent
    for row in basis.iter_mut() {
        if row[pivot] != 0 {
            let factor = row[pivot];
            for (rc, &wc) in row.iter_mut().zip(&w) {
                *rc = modulus.sub(*rc, modulus.mul(factor, wc));
            }
        }
    }
    basis.push(w);
    true
}
