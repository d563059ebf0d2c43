//! Exhaustive search for transitive affine maps x -> Ax + b on small spaces.

use fracjump::projective::affine_transitivity_census;
use fracjump::Modulus;

fn main() -> fracjump::Result<()> {
    for (p, n) in [(2, 1), (3, 1), (2, 2), (2, 3), (3, 2)] {
        let census = affine_transitivity_census(Modulus::new(p)?, n)?;
        println!(
            "F_{p}^{n}: {} of {} affine bijections are transitive",
            census.transitive_maps.len(),
            census.total_maps
        );
        for map in census.transitive_maps.iter().take(3) {
            println!("  A = {:?}, b = {:?}", map.linear, map.b);
        }
    }
    Ok(())
}
