//! Step cost against an inversive generator of the same state size.

use fracjump::cli::{bench, BenchConfig};

fn main() -> fracjump::Result<()> {
    let config = BenchConfig {
        grid: vec![(2, 65537), (3, 65537)],
        trials: 3,
        steps: 200_000,
    };
    let report = bench(&config)?;
    for e in &report.entries {
        println!(
            "n={} p={}: {:.2} ns/bit vs ICG mod {} at {:.2} ns/bit; {} mults + 1 inversion per U_1 step (model holds: {})",
            e.n, e.p, e.ns_per_bit, e.icg_modulus, e.icg_ns_per_bit, e.n, e.ops.matches_model
        );
    }
    Ok(())
}
