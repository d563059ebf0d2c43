//! Exact star discrepancy of overlapping s-tuples, with a trend in N.

use fracjump::analysis::{discrepancy_report, discrepancy_trend, trend_csv};
use fracjump::fracjump::FractionalJump;
use fracjump::{Modulus, SquareMatrix};

fn main() -> fracjump::Result<()> {
    let modulus = Modulus::new(101)?;
    let a = SquareMatrix::from_rows(modulus, &[[1, 0, 2], [0, 3, 4], [4, 2, 3]])?;
    let jump = FractionalJump::build(&a)?;

    let full = discrepancy_report(&jump, 1, 2 * 101 * 101, &[0, 0])?;
    println!(
        "full period, s=1: D* = {} (equals 1/101: {})",
        full.d_star,
        full.d_star_exact.equals_fraction(1, 101)
    );

    let reports = discrepancy_trend(&jump, 2, &[250, 500, 1000, 2000, 4000], &[0, 0])?;
    print!("{}", trend_csv(&reports));
    Ok(())
}
