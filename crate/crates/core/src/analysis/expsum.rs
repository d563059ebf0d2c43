//! Exponential sums over all initial values of the snake sequence.
//!
//! Phases are accumulated as integer counts per residue class and turned
//! into a complex number in one pass over F_p, so the only floating-point
//! error is in the final length-p sum.

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::SCHEMA_VERSION;
use crate::error::{Error, Result};
use crate::field::Modulus;
use crate::fracjump::{FractionalJump, GeneratorState};

/// Largest `p^n` for [`exp_sum_check`].
pub const EXP_SUM_LIMIT: u64 = 1 << 22;
/// Largest `p^n * K` for [`second_moment_report`].
pub const MOMENT_LIMIT: u64 = 1 << 26;

const CHUNK: usize = 1 << 12;

#[derive(Clone, Debug, Serialize)]
pub struct ExpSumReport {
    pub schema_version: u32,
    pub p: u64,
    pub n: usize,
    pub s: usize,
    pub d: u64,
    pub j0: u64,
    pub h: Vec<u64>,
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SecondMomentReport {
    pub schema_version: u32,
    pub p: u64,
    pub n: usize,
    pub s: usize,
    pub j0: u64,
    pub k: u64,
    pub h: Vec<u64>,
    pub lhs: f64,
    /// `K p^n + K^2 p^(n - 1/2)`.
    pub scale: f64,
    pub ratio: f64,
}

/// `3((s+d)/n + 1) p^(n-1) + 4(s/n + 1) p^(n-1/2)`.
pub fn exp_sum_bound(p: u64, n: usize, s: usize, d: u64) -> f64 {
    let (p, nf, s) = (p as f64, n as f64, s as f64);
    3.0 * ((s + d as f64) / nf + 1.0) * p.powf(nf - 1.0) + 4.0 * (s / nf + 1.0) * p.powf(nf - 0.5)
}

fn check_h(modulus: Modulus, s: usize, h: &[u64]) -> Result<Vec<u64>> {
    if s == 0 {
        return Err(Error::OutOfRange("s must be at least 1".into()));
    }
    if h.len() != s {
        return Err(Error::Dimension(format!(
            "h has {} entries, expected s = {s}",
            h.len()
        )));
    }
    let h: Vec<u64> = h.iter().map(|&c| modulus.reduce(c)).collect();
    if h.iter().all(|&c| c == 0) {
        return Err(Error::InvalidParameter("h must be nonzero".into()));
    }
    Ok(h)
}

/// `|sum_z counts[z] e(z/p)|`.
fn magnitude(counts: &[u64]) -> f64 {
    let p = counts.len() as f64;
    let (mut re, mut im) = (0.0f64, 0.0f64);
    for (z, &c) in counts.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let angle = std::f64::consts::TAU * z as f64 / p;
        re += c as f64 * angle.cos();
        im += c as f64 * angle.sin();
    }
    re.hypot(im)
}

/// The snake sequence of the orbit of 0 over one full period, `n p^n`
/// values. Because the jump is a single cycle, `v_i(u_t(0)) = v_{tn+i}(0)`
/// and this table yields the snake of every initial value.
fn snake_period(jump: &FractionalJump) -> Vec<u32> {
    let size = jump
        .space_size_checked(EXP_SUM_LIMIT)
        .expect("checked by caller");
    let n = jump.dim();
    let mut out = Vec::with_capacity(size as usize * n);
    let mut state = GeneratorState::origin(jump);
    for _ in 0..size as usize * n {
        out.push(state.next_scalar(jump) as u32);
    }
    out
}

/// Evaluates `|sum_x e_p(sum_j h_j (v_{j0+d+j}(x) - v_{j0+j}(x)))|` over all
/// `x` in F_p^n and compares it with [`exp_sum_bound`].
pub fn exp_sum_check(
    jump: &FractionalJump,
    s: usize,
    d: u64,
    j0: u64,
    h: &[u64],
) -> Result<ExpSumReport> {
    let modulus = jump.modulus();
    let p = modulus.p();
    let n = jump.dim();
    let h = check_h(modulus, s, h)?;
    if j0 == 0 {
        return Err(Error::OutOfRange("j0 must be at least 1".into()));
    }
    let d_max = (p as i128 - 1) * n as i128 - s as i128;
    if d == 0 || d as i128 > d_max {
        return Err(Error::OutOfRange(format!(
            "d = {d} outside 1..={d_max} for p = {p}, n = {n}, s = {s}"
        )));
    }
    let size = jump.space_size_checked(EXP_SUM_LIMIT)?;
    let snake = snake_period(jump);
    let period = snake.len() as u64;

    // w(i) = sum_j h_j v_{i+j}, with i a 1-based snake index from 0
    let w = |i: u64| -> u64 {
        let base = (i - 1) % period;
        h.iter().enumerate().fold(0u64, |acc, (j, &hj)| {
            let v = snake[((base + j as u64) % period) as usize] as u64;
            modulus.add(acc, modulus.mul(hj, v))
        })
    };
    let (offset, shift) = (j0 % period, d % period);
    let counts = (0..size as usize)
        .into_par_iter()
        .with_min_len(CHUNK)
        .fold(
            || vec![0u64; p as usize],
            |mut counts, t| {
                let start = t as u64 * n as u64 + offset + period;
                let z = modulus.sub(w(start + shift), w(start));
                counts[z as usize] += 1;
                counts
            },
        )
        .reduce(
            || vec![0u64; p as usize],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    let lhs = magnitude(&counts);
    let rhs = exp_sum_bound(p, n, s, d);
    Ok(ExpSumReport {
        schema_version: SCHEMA_VERSION,
        p,
        n,
        s,
        d,
        j0,
        h,
        lhs,
        rhs,
        pass: lhs <= rhs,
    })
}

/// `sum_x |sum_{k<K} e_p(sum_j h_j v_{j0+j+k}(x))|^2`, with the ratio to
/// `K p^n + K^2 p^(n-1/2)`. The implied constant is not explicit, so there
/// is no verdict.
pub fn second_moment_report(
    jump: &FractionalJump,
    s: usize,
    j0: u64,
    k: u64,
    h: &[u64],
) -> Result<SecondMomentReport> {
    let modulus = jump.modulus();
    let p = modulus.p();
    let n = jump.dim();
    let h = check_h(modulus, s, h)?;
    if j0 == 0 {
        return Err(Error::OutOfRange("j0 must be at least 1".into()));
    }
    let size = jump.space_size_checked(MOMENT_LIMIT)?;
    if k == 0 || k > size {
        return Err(Error::OutOfRange(format!("K = {k} outside 1..={size}")));
    }
    if size as u128 * k as u128 > MOMENT_LIMIT as u128 {
        return Err(Error::ResourceLimit(format!(
            "p^n * K = {} exceeds {MOMENT_LIMIT}",
            size as u128 * k as u128
        )));
    }
    // the snake of every seed has period n p^n
    let skip = (j0 - 1) % (n as u64 * size);
    let unit = |z: u64| {
        let angle = std::f64::consts::TAU * z as f64 / p as f64;
        (angle.cos(), angle.sin())
    };
    let table: Vec<(f64, f64)> = if p <= 1 << 20 {
        (0..p).map(unit).collect()
    } else {
        Vec::new()
    };

    let per_x = |t: u64| -> f64 {
        let mut x = vec![0u64; n];
        jump.decode_point(t, &mut x);
        let mut state = GeneratorState::new(jump, &x).expect("dimension matches");
        for _ in 0..skip {
            state.next_scalar(jump);
        }
        let mut window: std::collections::VecDeque<u64> =
            (0..s).map(|_| state.next_scalar(jump)).collect();
        let (mut re, mut im) = (0.0f64, 0.0f64);
        for step in 0..k {
            let z = window
                .iter()
                .zip(&h)
                .fold(0u64, |acc, (&v, &hj)| modulus.add(acc, modulus.mul(hj, v)));
            let (c, sn) = table.get(z as usize).copied().unwrap_or_else(|| unit(z));
            re += c;
            im += sn;
            if step + 1 < k {
                window.pop_front();
                window.push_back(state.next_scalar(jump));
            }
        }
        re * re + im * im
    };

    // fixed-size chunks summed in index order keep the result independent
    // of the thread count
    let chunk_sums: Vec<f64> = (0..size.div_ceil(CHUNK as u64))
        .into_par_iter()
        .map(|c| {
            let lo = c * CHUNK as u64;
            (lo..(lo + CHUNK as u64).min(size)).map(per_x).sum()
        })
        .collect();
    let lhs: f64 = chunk_sums.iter().sum();
    let (pf, nf, kf) = (p as f64, n as f64, k as f64);
    let scale = kf * pf.powf(nf) + kf * kf * pf.powf(nf - 0.5);
    Ok(SecondMomentReport {
        schema_version: SCHEMA_VERSION,
        p,
        n,
        s,
        j0,
        k,
        h,
        lhs,
        scale,
        ratio: lhs / scale,
    })
}
