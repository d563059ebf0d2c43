//! Walk a whole orbit and tally which piece of the jump each step used.

use fracjump::analysis::full_orbit_certify;
use fracjump::fracjump::FractionalJump;
use fracjump::poly::find_projectively_primitive;
use fracjump::Modulus;

fn main() -> fracjump::Result<()> {
    for (p, n) in [(2, 3), (7, 2), (31, 2), (5, 4), (101, 3)] {
        let f = find_projectively_primitive(Modulus::new(p)?, n + 1, p / 2, 0)?;
        let jump = FractionalJump::from_char_poly(&f)?;
        let cert = full_orbit_certify(&jump)?;
        println!(
            "p={p:<4} n={n} chi={f:<28} period={:<9} J={} pieces used {:?}",
            cert.period, cert.jump_index, cert.piece_histogram
        );
    }
    Ok(())
}
