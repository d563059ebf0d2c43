use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Modulus;
use crate::fracjump::FractionalJump;
use crate::matrix::SquareMatrix;
use crate::poly::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolyForm {
    Companion,
}

/// Generator parameter file.
///
/// Either an explicit `(n+1) x (n+1)` matrix, or a characteristic polynomial
/// (coefficients low degree first) turned into a matrix by `form`. The
/// polynomial may list `n + 1` coefficients, with the leading 1 implied, or
/// all `n + 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GeneratorParams {
    Matrix {
        p: u64,
        n: usize,
        matrix: Vec<Vec<i64>>,
    },
    CharPoly {
        p: u64,
        n: usize,
        char_poly: Vec<i64>,
        form: PolyForm,
    },
}

impl GeneratorParams {
    pub fn p(&self) -> u64 {
        match self {
            GeneratorParams::Matrix { p, .. } | GeneratorParams::CharPoly { p, .. } => *p,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            GeneratorParams::Matrix { n, .. } | GeneratorParams::CharPoly { n, .. } => *n,
        }
    }

    /// The matrix these parameters describe, without the transitivity check.
    pub fn to_matrix(&self) -> Result<SquareMatrix> {
        let modulus = Modulus::new(self.p())?;
        let n = self.n();
        if n == 0 {
            return Err(Error::Dimension("n must be at least 1".into()));
        }
        match self {
            GeneratorParams::Matrix { matrix, .. } => {
                if matrix.len() != n + 1 {
                    return Err(Error::Dimension(format!(
                        "matrix has {} rows, expected {}",
                        matrix.len(),
                        n + 1
                    )));
                }
                SquareMatrix::from_rows(modulus, matrix)
            }
            GeneratorParams::CharPoly {
                char_poly, form, ..
            } => {
                let mut coeffs = char_poly.clone();
                if coeffs.len() == n + 1 {
                    coeffs.push(1);
                } else if coeffs.len() != n + 2 {
                    return Err(Error::Dimension(format!(
                        "char_poly has {} coefficients, expected {} or {}",
                        coeffs.len(),
                        n + 1,
                        n + 2
                    )));
                }
                let f = Polynomial::from_signed(modulus, &coeffs);
                if !f.is_monic() {
                    return Err(Error::InvalidParameter(format!(
                        "char_poly {f} is not monic of degree {}",
                        n + 1
                    )));
                }
                match form {
                    PolyForm::Companion => f.companion_matrix(),
                }
            }
        }
    }

    pub fn build(&self) -> Result<FractionalJump> {
        FractionalJump::build(&self.to_matrix()?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        GeneratorParams::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json()? + "\n")?;
        Ok(())
    }
}
