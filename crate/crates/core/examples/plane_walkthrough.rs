//! A 3x3 matrix over F_101 acting on the affine plane, piece by piece.

use fracjump::fracjump::FractionalJump;
use fracjump::poly::{char_poly, is_projectively_primitive, projective_order_bound};
use fracjump::{Modulus, SquareMatrix};

fn main() -> fracjump::Result<()> {
    let modulus = Modulus::new(101)?;
    let a = SquareMatrix::from_rows(modulus, &[[1, 0, 2], [0, 3, 4], [4, 2, 3]])?;
    let chi = char_poly(&a);
    println!("chi(T) = {chi}");
    println!("|P^2(F_101)| = {}", projective_order_bound(101, 3)?);
    println!(
        "projectively primitive: {}",
        is_projectively_primitive(&chi)?
    );

    let jump = FractionalJump::build(&a)?;
    println!("jump index = {}", jump.jump_index());
    for i in 1..=jump.jump_index() {
        let piece = jump.piece(i)?;
        print!("f^({i}) = {piece}");
        match jump.vanishing_locus_dimension(i) {
            None => println!(", denominator never vanishes on the plane"),
            Some(d) => println!(", denominator vanishes on a {d}-dimensional locus"),
        }
    }
    println!("V_2 = {:?}", jump.vanishing_locus(2)?);

    let mut x = vec![0, 0];
    for _ in 0..5 {
        let next = jump.step(&x);
        println!("{x:?} -> {next:?}");
        x = next;
    }
    Ok(())
}
