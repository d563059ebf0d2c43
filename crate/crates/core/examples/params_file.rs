//! Generator parameters as JSON, and a scalar stream from them.

use fracjump::fracjump::GeneratorParams;

fn main() -> fracjump::Result<()> {
    let params = GeneratorParams::from_json(
        r#"{"p": 101, "n": 2, "char_poly": [23, -1, -7, 1], "form": "companion"}"#,
    )?;
    let jump = params.build()?;
    println!("{}", jump.params().to_json()?);
    let scalars: Vec<u64> = jump.scalars(&[0, 0])?.take(12).collect();
    println!("{scalars:?}");
    Ok(())
}
