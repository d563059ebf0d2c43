//! Search for a projectively primitive polynomial and turn it into a generator.

use fracjump::analysis::full_orbit_certify;
use fracjump::fracjump::FractionalJump;
use fracjump::poly::find_projectively_primitive;
use fracjump::Modulus;

fn main() -> fracjump::Result<()> {
    let p: u64 = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(1009);
    let degree: usize = std::env::args()
        .nth(2)
        .and_then(|a| a.parse().ok())
        .unwrap_or(3);
    let modulus = Modulus::new(p)?;
    let f = find_projectively_primitive(modulus, degree, p / 2, 0)?;
    println!("found {f} over F_{p}");

    let jump = FractionalJump::from_char_poly(&f)?;
    println!("companion matrix rows: {:?}", jump.matrix().rows());
    if (p as u128).pow(degree as u32 - 1) <= 1 << 24 {
        let cert = full_orbit_certify(&jump)?;
        println!(
            "orbit of 0 has length {} (full: {})",
            cert.period, cert.full_orbit
        );
    }
    Ok(())
}
