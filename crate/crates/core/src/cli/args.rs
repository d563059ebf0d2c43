use std::path::PathBuf;

use clap::Args;

use crate::error::{Error, Result};
use crate::field::Modulus;
use crate::fracjump::{FractionalJump, GeneratorParams, PolyForm};
use crate::matrix::SquareMatrix;
use crate::poly::find_projectively_primitive;

/// Where the generator comes from: a parameter file, an inline matrix or
/// polynomial, or (with only `--p` and `--n`) the first small-coefficient
/// companion matrix found by the search.
#[derive(Args, Clone, Debug, Default)]
pub struct GeneratorArgs {
    /// Parameter file in the generator JSON format.
    #[arg(long, conflicts_with_all = ["p", "n", "matrix", "char_poly"])]
    pub params: Option<PathBuf>,

    /// Field characteristic.
    #[arg(long)]
    pub p: Option<u64>,

    /// Dimension of the affine space; inferred from --matrix or --char-poly.
    #[arg(long)]
    pub n: Option<usize>,

    /// Matrix as JSON, e.g. "[[1,0,2],[0,3,4],[4,2,3]]".
    #[arg(long, conflicts_with = "char_poly")]
    pub matrix: Option<String>,

    /// Characteristic polynomial coefficients, low degree first, e.g. "23,-1,-7".
    /// The leading 1 may be given too, together with --n.
    #[arg(long, allow_hyphen_values = true)]
    pub char_poly: Option<String>,
}

impl GeneratorArgs {
    pub fn from_params(params: &GeneratorParams) -> Self {
        GeneratorArgs {
            params: None,
            p: Some(params.p()),
            n: Some(params.n()),
            matrix: match params {
                GeneratorParams::Matrix { matrix, .. } => {
                    Some(serde_json::to_string(matrix).expect("plain integers"))
                }
                _ => None,
            },
            char_poly: match params {
                GeneratorParams::CharPoly { char_poly, .. } => Some(
                    char_poly
                        .iter()
                        .map(i64::to_string)
                        .collect::<Vec<_>>()
                        .join(","),
                ),
                _ => None,
            },
        }
    }

    /// Resolves the arguments to parameters; `n` may be inferred from the
    /// matrix size.
    pub fn resolve(&self) -> Result<GeneratorParams> {
        if let Some(path) = &self.params {
            return GeneratorParams::load(path);
        }
        let p = self
            .p
            .ok_or_else(|| Error::InvalidParameter("either --params or --p is required".into()))?;
        if let Some(text) = &self.matrix {
            let matrix: Vec<Vec<i64>> = serde_json::from_str(text).map_err(|e| {
                Error::InvalidParameter(format!("--matrix is not a JSON array of rows: {e}"))
            })?;
            let n = self.n.unwrap_or(matrix.len().saturating_sub(1));
            return Ok(GeneratorParams::Matrix { p, n, matrix });
        }
        if let Some(text) = &self.char_poly {
            let char_poly = parse_list::<i64>(text, "--char-poly")?;
            let n = self.n.unwrap_or(char_poly.len().saturating_sub(1));
            return Ok(GeneratorParams::CharPoly {
                p,
                n,
                char_poly,
                form: PolyForm::Companion,
            });
        }
        let n = self.n.ok_or_else(|| {
            Error::InvalidParameter("--n is required without --matrix or --char-poly".into())
        })?;
        if n == 0 {
            return Err(Error::Dimension("n must be at least 1".into()));
        }
        let modulus = Modulus::new(p)?;
        let f = find_projectively_primitive(modulus, n + 1, p / 2, 0)?;
        Ok(GeneratorParams::CharPoly {
            p,
            n,
            char_poly: f.signed_coeffs(),
            form: PolyForm::Companion,
        })
    }

    pub fn matrix(&self) -> Result<SquareMatrix> {
        self.resolve()?.to_matrix()
    }

    pub fn build(&self) -> Result<FractionalJump> {
        self.resolve()?.build()
    }
}

/// Parses a comma-separated list such as "64,22".
pub fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<T>()
                .map_err(|_| Error::InvalidParameter(format!("{what}: cannot parse {t:?}")))
        })
        .collect()
}

/// A seed point, defaulting to the origin.
pub fn parse_seed(text: Option<&str>, n: usize) -> Result<Vec<u64>> {
    match text {
        None => Ok(vec![0; n]),
        Some(t) => {
            let seed = parse_list::<u64>(t, "--seed")?;
            if seed.len() != n {
                return Err(Error::Dimension(format!(
                    "--seed has {} coordinates, expected {n}",
                    seed.len()
                )));
            }
            Ok(seed)
        }
    }
}
