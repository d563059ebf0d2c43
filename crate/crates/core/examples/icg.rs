//! Inversive congruential generators as the n = 1 case.

use fracjump::fracjump::make_icg;
use fracjump::Modulus;

fn main() -> fracjump::Result<()> {
    let p = 1009;
    let modulus = Modulus::new(p)?;
    let (a, b) = (1..p)
        .flat_map(|a| (0..p).map(move |b| (a, b)))
        .find(|&(a, b)| make_icg(modulus, a, b).is_ok())
        .expect("full-period parameters exist");
    let icg = make_icg(modulus, a, b)?;
    println!("x -> {a}/x + {b} mod {p}, chi(T) = {}", icg.char_poly());

    let mut x = vec![0];
    let mut seen = 0;
    loop {
        x = icg.step(&x);
        seen += 1;
        if x[0] == 0 {
            break;
        }
    }
    println!("period {seen}");

    let full = (1..p)
        .flat_map(|a| (0..p).map(move |b| (a, b)))
        .filter(|&(a, b)| make_icg(modulus, a, b).is_ok())
        .count();
    println!("{full} of {} parameter pairs give full period", (p - 1) * p);
    Ok(())
}
