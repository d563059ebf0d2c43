//! Throughput of the fractional jump against an inversive generator of
//! equal output size.
//!
//! One step of the jump on `U_1` costs `n` multiplications and one
//! inversion in F_p and yields `n log2 p` bits; one ICG step over F_P with
//! `log2 P ~ n log2 p` costs one inversion in the larger field. The report
//! gives measured medians and the exact operation counts behind them.

use std::hint::black_box;
use std::time::Instant;

use serde::Serialize;

use crate::analysis::SCHEMA_VERSION;
use crate::error::{Error, Result};
use crate::field::{is_prime_u64, Modulus, MODULUS_LIMIT};
use crate::fracjump::{FractionalJump, OpCounts};
use crate::matrix::SquareMatrix;
use crate::poly::{char_poly, find_projectively_primitive, is_projectively_primitive, Polynomial};

/// `(n, p)` pairs measured when no grid is given.
pub const DEFAULT_GRID: [(usize, u64); 6] = [
    (2, 251),
    (4, 251),
    (2, 65537),
    (3, 65537),
    (2, 1_048_573),
    (3, 1_048_573),
];

const OP_SAMPLE_STEPS: u64 = 10_000;

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub grid: Vec<(usize, u64)>,
    pub trials: usize,
    pub steps: u64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            grid: DEFAULT_GRID.to_vec(),
            trials: 10,
            steps: 1_000_000,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OpReport {
    pub steps_sampled: u64,
    pub inversions_per_step: f64,
    pub multiplications_per_step: f64,
    pub coefficient_products_per_step: f64,
    pub u1_steps: u64,
    pub u1_inversions: u64,
    pub u1_multiplications: u64,
    pub u1_coefficient_products: u64,
    /// Whether every sampled step on the first piece cost exactly the
    /// modelled number of inversions and full multiplications.
    pub matches_model: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchEntry {
    pub n: usize,
    pub p: u64,
    pub char_poly: String,
    pub icg_modulus: u64,
    pub icg_a: u64,
    pub icg_b: u64,
    pub bits_per_step: f64,
    pub icg_bits_per_step: f64,
    pub ns_per_step: f64,
    pub ns_per_scalar: f64,
    pub ns_per_bit: f64,
    pub icg_ns_per_step: f64,
    pub icg_ns_per_bit: f64,
    /// Jump time per output bit over ICG time per output bit.
    pub ratio_per_bit: f64,
    pub ops: OpReport,
    pub icg_ops: OpReport,
    pub trials_ns_per_step: Vec<f64>,
    pub icg_trials_ns_per_step: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchReport {
    pub schema_version: u32,
    pub trials: usize,
    pub steps: u64,
    pub entries: Vec<BenchEntry>,
}

/// Largest prime below `2^bits`.
pub fn prime_below_power_of_two(bits: u32) -> Result<u64> {
    if !(2..=61).contains(&bits) {
        return Err(Error::NotFound(format!(
            "no prime modulus of {bits} bits is supported (need 2..=61)"
        )));
    }
    let mut candidate = (1u64 << bits) - 1;
    while candidate >= MODULUS_LIMIT || !is_prime_u64(candidate) {
        candidate -= 1;
    }
    Ok(candidate)
}

/// Inversive generator `x -> a/x + b` over F_P, preferring `a = 1` so a
/// step is a single inversion followed by an addition.
#[derive(Clone, Copy, Debug)]
pub struct Icg {
    modulus: Modulus,
    a: u64,
    b: u64,
}

impl Icg {
    /// Finds full-period parameters by searching small `b` with `a = 1`,
    /// then falling back to the general polynomial search.
    pub fn find(modulus: Modulus) -> Result<Self> {
        let p = modulus.p();
        for b in 1..p.min(4096) {
            let f = Polynomial::new(modulus, vec![modulus.neg(1), modulus.neg(b), 1]);
            if is_projectively_primitive(&f)? {
                return Ok(Icg { modulus, a: 1, b });
            }
        }
        // T^2 + c1 T + c0 is the polynomial of [[-c1, -c0], [1, 0]]
        let f = find_projectively_primitive(modulus, 2, p / 2, 0)?;
        Ok(Icg {
            modulus,
            a: modulus.neg(f.coeff(0)),
            b: modulus.neg(f.coeff(1)),
        })
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn matrix(&self) -> SquareMatrix {
        SquareMatrix::new(self.modulus, 2, vec![self.b, self.a, 1, 0]).expect("2x2")
    }

    #[inline]
    pub fn step(&self, x: u64) -> u64 {
        self.step_with(x, &mut ())
    }

    #[inline]
    fn step_with(&self, x: u64, counts: &mut impl IcgSink) -> u64 {
        let m = self.modulus;
        match m.inv(x) {
            None => self.b,
            Some(inv) => {
                counts.inversion();
                let q = if self.a == 1 {
                    inv
                } else {
                    counts.multiplication();
                    m.mul(self.a, inv)
                };
                m.add(q, self.b)
            }
        }
    }
}

trait IcgSink {
    fn inversion(&mut self) {}
    fn multiplication(&mut self) {}
}

impl IcgSink for () {}

impl IcgSink for OpCounts {
    fn inversion(&mut self) {
        self.inversions += 1;
    }
    fn multiplication(&mut self) {
        self.multiplications += 1;
    }
}

fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    if v.len().is_multiple_of(2) {
        (v[mid - 1] + v[mid]) / 2.0
    } else {
        v[mid]
    }
}

fn jump_ops(jump: &FractionalJump) -> OpReport {
    let n = jump.dim();
    let mut total = OpCounts::default();
    let (mut u1_steps, mut u1_inv, mut u1_mul, mut u1_coef) = (0, 0, 0, 0);
    let mut matches = true;
    let mut x = vec![0u64; n];
    let mut next = vec![0u64; n];
    for _ in 0..OP_SAMPLE_STEPS {
        let mut one = OpCounts::default();
        let piece = jump.step_counted(&x, &mut next, &mut one);
        if piece == 1 {
            u1_steps += 1;
            u1_inv += one.inversions;
            u1_mul += one.multiplications;
            u1_coef += one.coefficient_products;
            matches &= one.inversions == 1 && one.multiplications == n as u64;
        }
        total.inversions += one.inversions;
        total.multiplications += one.multiplications;
        total.coefficient_products += one.coefficient_products;
        std::mem::swap(&mut x, &mut next);
    }
    let steps = OP_SAMPLE_STEPS as f64;
    OpReport {
        steps_sampled: OP_SAMPLE_STEPS,
        inversions_per_step: total.inversions as f64 / steps,
        multiplications_per_step: total.multiplications as f64 / steps,
        coefficient_products_per_step: total.coefficient_products as f64 / steps,
        u1_steps,
        u1_inversions: u1_inv,
        u1_multiplications: u1_mul,
        u1_coefficient_products: u1_coef,
        matches_model: matches && u1_steps > 0,
    }
}

fn icg_ops(icg: &Icg) -> OpReport {
    let mut total = OpCounts::default();
    let (mut u1_steps, mut u1_inv, mut u1_mul) = (0, 0, 0);
    let mut matches = true;
    let mut x = 0u64;
    for _ in 0..OP_SAMPLE_STEPS {
        let mut one = OpCounts::default();
        let next = icg.step_with(x, &mut one);
        if x != 0 {
            u1_steps += 1;
            u1_inv += one.inversions;
            u1_mul += one.multiplications;
            matches &= one.inversions == 1 && one.multiplications == (icg.a != 1) as u64;
        }
        total.inversions += one.inversions;
        total.multiplications += one.multiplications;
        x = next;
    }
    let steps = OP_SAMPLE_STEPS as f64;
    OpReport {
        steps_sampled: OP_SAMPLE_STEPS,
        inversions_per_step: total.inversions as f64 / steps,
        multiplications_per_step: total.multiplications as f64 / steps,
        coefficient_products_per_step: 0.0,
        u1_steps,
        u1_inversions: u1_inv,
        u1_multiplications: u1_mul,
        u1_coefficient_products: 0,
        matches_model: matches && u1_steps > 0,
    }
}

fn time_jump(jump: &FractionalJump, steps: u64) -> f64 {
    let n = jump.dim();
    let mut x = vec![0u64; n];
    let mut next = vec![0u64; n];
    let start = Instant::now();
    for _ in 0..steps {
        jump.step_into(black_box(&x), &mut next);
        std::mem::swap(&mut x, &mut next);
    }
    black_box(&x);
    start.elapsed().as_nanos() as f64 / steps as f64
}

fn time_icg(icg: &Icg, steps: u64) -> f64 {
    let mut x = 0u64;
    let start = Instant::now();
    for _ in 0..steps {
        x = icg.step(black_box(x));
    }
    black_box(x);
    start.elapsed().as_nanos() as f64 / steps as f64
}

/// Generator used for the `(n, p)` cell: companion matrix of the first
/// projectively primitive polynomial with the smallest coefficients.
pub fn bench_generator(n: usize, p: u64) -> Result<FractionalJump> {
    let modulus = Modulus::new(p)?;
    let f = find_projectively_primitive(modulus, n + 1, p / 2, 0)?;
    FractionalJump::from_char_poly(&f)
}

pub fn bench_entry(n: usize, p: u64, trials: usize, steps: u64) -> Result<BenchEntry> {
    if trials == 0 || steps == 0 {
        return Err(Error::InvalidParameter(
            "trials and steps must be positive".into(),
        ));
    }
    let bits = n as f64 * (p as f64).log2();
    let icg_prime = prime_below_power_of_two(bits.round() as u32)?;
    let jump = bench_generator(n, p)?;
    let icg = Icg::find(Modulus::new(icg_prime)?)?;
    debug_assert!(is_projectively_primitive(&char_poly(&icg.matrix()))?);
    let icg_bits = (icg_prime as f64).log2();

    // interleave trials so drift in machine state hits both sides equally
    let mut jump_ns = Vec::with_capacity(trials);
    let mut icg_ns = Vec::with_capacity(trials);
    for _ in 0..trials {
        jump_ns.push(time_jump(&jump, steps));
        icg_ns.push(time_icg(&icg, steps));
    }
    let ns_per_step = median(&jump_ns);
    let icg_ns_per_step = median(&icg_ns);
    let ns_per_bit = ns_per_step / bits;
    let icg_ns_per_bit = icg_ns_per_step / icg_bits;
    Ok(BenchEntry {
        n,
        p,
        char_poly: jump.char_poly().to_string(),
        icg_modulus: icg_prime,
        icg_a: icg.a,
        icg_b: icg.b,
        bits_per_step: bits,
        icg_bits_per_step: icg_bits,
        ns_per_step,
        ns_per_scalar: ns_per_step / n as f64,
        ns_per_bit,
        icg_ns_per_step,
        icg_ns_per_bit,
        ratio_per_bit: ns_per_bit / icg_ns_per_bit,
        ops: jump_ops(&jump),
        icg_ops: icg_ops(&icg),
        trials_ns_per_step: jump_ns,
        icg_trials_ns_per_step: icg_ns,
    })
}

pub fn bench(config: &BenchConfig) -> Result<BenchReport> {
    let entries = config
        .grid
        .iter()
        .map(|&(n, p)| bench_entry(n, p, config.trials, config.steps))
        .collect::<Result<Vec<_>>>()?;
    Ok(BenchReport {
        schema_version: SCHEMA_VERSION,
        trials: config.trials,
        steps: config.steps,
        entries,
    })
}
