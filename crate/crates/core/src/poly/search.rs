use crate::error::{Error, Result};
use crate::field::Modulus;
use crate::poly::{is_projectively_primitive, Polynomial};

/// Searches for a monic projectively primitive polynomial of the given
/// degree whose non-leading coefficients, lifted to `(-p/2, p/2]`, have
/// absolute value at most `coeff_bound`.
///
/// Candidates are visited shell by shell in increasing maximum absolute
/// coefficient. Inside a shell the order is lexicographic on
/// `(c_{m-1}, ..., c_0)` as signed integers, rotated by `seed` so that
/// different seeds yield different (still small) polynomials. The result is
/// a pure function of the arguments.
pub fn find_projectively_primitive(
    modulus: Modulus,
    degree: usize,
    coeff_bound: u64,
    seed: u64,
) -> Result<Polynomial> {
    if degree < 2 {
        return Err(Error::InvalidParameter(format!(
            "search degree must be at least 2, got {degree}"
        )));
    }
    let p = modulus.p() as i64;
    let lowest = -((p - 1) / 2);
    let highest = p / 2;
    let reachable = lowest.unsigned_abs().max(highest as u64);

    for level in 0..=coeff_bound.min(reachable) {
        let level = level as i64;
        let lo = lowest.max(-level);
        let hi = highest.min(level);
        let width = (hi - lo + 1) as u128;
        let Some(cells) = width.checked_pow(degree as u32) else {
            return Err(Error::ResourceLimit(format!(
                "search shell of width {width} in degree {degree} is too large"
            )));
        };
        let offset = seed as u128 % cells;
        let mut digits = vec![0i64; degree];
        for k in 0..cells {
            let mut idx = (offset + k) % cells;
            for d in digits.iter_mut() {
                *d = lo + (idx % width) as i64;
                idx /= width;
            }
            if digits[0] == 0 || digits.iter().map(|d| d.abs()).max() != Some(level) {
                continue;
            }
            let mut coeffs = digits.clone();
            coeffs.push(1);
            let candidate = Polynomial::from_signed(modulus, &coeffs);
            if is_projectively_primitive(&candidate)? {
                return Ok(candidate);
            }
        }
    }
    Err(Error::NotFound(format!(
        "no projectively primitive polynomial of degree {degree} over F_{} with coefficients bounded by {coeff_bound}",
        modulus.p()
    )))
}
