//! Exponential sums over the scalar stream against the explicit bound.

use fracjump::analysis::{exp_sum_check, second_moment_report};
use fracjump::fracjump::FractionalJump;
use fracjump::{Modulus, SquareMatrix};

fn main() -> fracjump::Result<()> {
    let modulus = Modulus::new(101)?;
    let a = SquareMatrix::from_rows(modulus, &[[1, 0, 2], [0, 3, 4], [4, 2, 3]])?;
    let jump = FractionalJump::build(&a)?;

    println!("  s   d  |sum|      bound");
    for (s, d, h) in [
        (1, 1, vec![1]),
        (2, 5, vec![1, 100]),
        (3, 40, vec![7, 0, 3]),
    ] {
        let r = exp_sum_check(&jump, s, d, 1, &h)?;
        println!("{s:>3} {d:>3}  {:>9.2}  {:>9.2}  h={h:?}", r.lhs, r.rhs);
    }

    for k in [10, 100, 1000] {
        let r = second_moment_report(&jump, 2, 1, k, &[1, 1])?;
        println!(
            "second moment K={k}: {:.4e}, ratio to scale {:.4}",
            r.lhs, r.ratio
        );
    }
    Ok(())
}
