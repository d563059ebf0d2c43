//! Consecutive points of a transitive map never fall into a proper subspace
//! early; a reducible map does.

use fracjump::analysis::subspace_uniformity_check;
use fracjump::projective::projective_space_size;
use fracjump::{Modulus, SquareMatrix};

fn main() -> fracjump::Result<()> {
    let modulus = Modulus::new(101)?;
    let windows = projective_space_size(101, 2) as u64;
    let transitive = SquareMatrix::from_rows(modulus, &[[1, 0, 2], [0, 3, 4], [4, 2, 3]])?;
    let r = subspace_uniformity_check(&transitive, windows)?;
    println!("transitive: {} windows, uniform = {}", r.windows, r.uniform);

    let reducible = SquareMatrix::from_rows(modulus, &[[0, 1, 0], [1, 1, 0], [0, 0, 5]])?;
    let r = subspace_uniformity_check(&reducible, 20)?;
    println!(
        "block diagonal: uniform = {}, {} violations, first {:?}",
        r.uniform,
        r.violation_count,
        r.violations.first()
    );
    Ok(())
}
