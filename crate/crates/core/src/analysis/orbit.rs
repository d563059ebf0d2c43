use serde::Serialize;

use crate::analysis::SCHEMA_VERSION;
use crate::error::Result;
use crate::fracjump::{FractionalJump, OpCounts};

/// Largest `p^n` for which the visited-set bitmap is allocated.
pub const ORBIT_LIMIT: u64 = 1 << 26;

#[derive(Clone, Debug, Serialize)]
pub struct OrbitCertificate {
    pub schema_version: u32,
    pub p: u64,
    pub n: usize,
    pub full_orbit: bool,
    /// Number of steps until the orbit of 0 first returns to 0, or the
    /// number of steps taken before a repeat was detected.
    pub period: u64,
    pub jump_index: usize,
    pub max_piece_index: usize,
    /// `piece_histogram[i - 1]` counts the points of the orbit lying in `U_i`.
    pub piece_histogram: Vec<u64>,
}

/// Walks the orbit of 0 under the jump, marking each point in a bitmap.
///
/// The orbit is full iff no point repeats within `p^n` steps and step
/// `p^n` lands back on 0.
pub fn full_orbit_certify(jump: &FractionalJump) -> Result<OrbitCertificate> {
    let size = jump.space_size_checked(ORBIT_LIMIT)?;
    let n = jump.dim();
    let mut visited = vec![0u64; (size as usize).div_ceil(64)];
    let mut counts = OpCounts::default();
    let mut x = vec![0u64; n];
    let mut next = vec![0u64; n];
    let mut period = 0u64;
    let mut full = false;
    while period < size {
        let idx = jump.encode_point(&x) as usize;
        let (word, bit) = (idx / 64, 1u64 << (idx % 64));
        if visited[word] & bit != 0 {
            break;
        }
        visited[word] |= bit;
        jump.step_counted(&x, &mut next, &mut counts);
        std::mem::swap(&mut x, &mut next);
        period += 1;
        if x.iter().all(|&c| c == 0) {
            full = period == size;
            break;
        }
    }
    let max_piece_index = counts
        .piece_histogram
        .iter()
        .rposition(|&c| c > 0)
        .map_or(0, |i| i + 1);
    Ok(OrbitCertificate {
        schema_version: SCHEMA_VERSION,
        p: jump.modulus().p(),
        n,
        full_orbit: full,
        period,
        jump_index: jump.jump_index(),
        max_piece_index,
        piece_histogram: counts.piece_histogram,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::field::Modulus;
    use crate::fracjump::make_icg;
    use crate::matrix::SquareMatrix;

    #[test]
    fn worked_example_has_full_orbit() {
        let m = Modulus::new(101).unwrap();
        let a = SquareMatrix::from_rows(m, &[[1, 0, 2], [0, 3, 4], [4, 2, 3]]).unwrap();
        let cert = full_orbit_certify(&FractionalJump::build(&a).unwrap()).unwrap();
        assert!(cert.full_orbit);
        assert_eq!(cert.period, 10201);
        assert_eq!(cert.max_piece_index, 3);
        assert_eq!(cert.piece_histogram.iter().sum::<u64>(), 10201);
        // U_2 is a line minus one point, U_3 the single point (64, 22)
        assert_eq!(cert.piece_histogram, vec![10100, 100, 1]);
    }

    #[test]
    fn icg_over_f5() {
        let m = Modulus::new(5).unwrap();
        let mut found = 0;
        for a in 1..5 {
            for b in 0..5 {
                if let Ok(icg) = make_icg(m, a, b) {
                    let cert = full_orbit_certify(&icg).unwrap();
                    assert!(cert.full_orbit);
                    assert_eq!(cert.period, 5);
                    found += 1;
                }
            }
        }
        assert!(found > 0);
    }

    #[test]
    fn guard() {
        let m = Modulus::new(65537).unwrap();
        let f = crate::poly::find_projectively_primitive(m, 3, 10, 0).unwrap();
        let fj = FractionalJump::from_char_poly(&f).unwrap();
        assert!(matches!(
            full_orbit_certify(&fj),
            Err(Error::ResourceLimit(_))
        ));
    }
}
