//! Exact star discrepancy of snake windows.
//!
//! Sample coordinates are residues `v` standing for `v / p`, so every
//! candidate value of `|count/N - volume|` is a rational with denominator
//! `N p^s` and the supremum is computed exactly in integers.

use std::fmt::Write as _;

use serde::Serialize;

use crate::analysis::SCHEMA_VERSION;
use crate::error::{Error, Result};
use crate::fracjump::{FractionalJump, GeneratorState};

pub const S1_SAMPLE_LIMIT: u64 = 1_000_000;
pub const S2_SAMPLE_LIMIT: u64 = 5_000;

/// `numerator / denominator`, with `denominator = N p^s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StarDiscrepancy {
    pub numerator: u128,
    pub denominator: u128,
}

impl StarDiscrepancy {
    pub fn value(&self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }

    /// Exact comparison with `a / b`.
    pub fn equals_fraction(&self, a: u128, b: u128) -> bool {
        self.numerator * b == a * self.denominator
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DiscrepancyReport {
    pub schema_version: u32,
    pub p: u64,
    pub n: usize,
    pub s: usize,
    #[serde(rename = "N")]
    pub samples: u64,
    pub x0: Vec<u64>,
    pub d_star: f64,
    pub d_star_exact: StarDiscrepancy,
    /// `2^s D*`, an upper bound for the discrepancy over all boxes.
    pub extreme_upper: f64,
    /// `(N^(-1/3) + p^(-1/4)) (log N)^s log p`, the shape of the
    /// asymptotic bound with constant 1 and `Delta = 1`. For trends only.
    pub bound: f64,
}

/// Star discrepancy of `points.len() / s` points in `[0, 1)^s`, given as
/// flattened residues in `[0, p)`. Supports `s` in `{1, 2}`.
pub fn star_discrepancy(p: u64, s: usize, points: &[u64]) -> Result<StarDiscrepancy> {
    if s == 0 || points.is_empty() || !points.len().is_multiple_of(s) {
        return Err(Error::Dimension(format!(
            "{} coordinates do not form a nonempty set of {s}-dimensional points",
            points.len()
        )));
    }
    let count = (points.len() / s) as u128;
    match s {
        1 => Ok(star_1d(p, points)),
        2 => {
            if p >= 1 << 56 || count > 1 << 13 {
                return Err(Error::ResourceLimit(
                    "exact planar discrepancy needs p < 2^56 and N <= 8192".into(),
                ));
            }
            Ok(star_2d(p, points))
        }
        _ => Err(Error::OutOfRange(format!(
            "s = {s}; only s = 1, 2 are supported"
        ))),
    }
}

fn star_1d(p: u64, values: &[u64]) -> StarDiscrepancy {
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    let (n, p) = (sorted.len() as i128, p as i128);
    let mut best = 0i128;
    for (i, &a) in sorted.iter().enumerate() {
        let (i, a) = (i as i128, a as i128);
        // with denominator N p: (i+1)/N - a/p and a/p - i/N
        best = best.max((i + 1) * p - a * n).max(a * n - i * p);
    }
    StarDiscrepancy {
        numerator: best as u128,
        denominator: (n * p) as u128,
    }
}

/// Sweep over the critical anchored boxes. `count/N - vol` peaks on closed
/// boxes with corners at sample coordinates; `vol - count/N` peaks on open
/// boxes with corners at sample coordinates or at 1.
fn star_2d(p: u64, points: &[u64]) -> StarDiscrepancy {
    let n = (points.len() / 2) as i128;
    let p128 = p as i128;
    let p2 = p128 * p128;

    let mut ys: Vec<u64> = points.iter().skip(1).step_by(2).copied().collect();
    ys.sort_unstable();
    ys.dedup();
    let mut by_x: Vec<(u64, usize)> = points
        .chunks_exact(2)
        .map(|c| (c[0], ys.binary_search(&c[1]).expect("y present")))
        .collect();
    by_x.sort_unstable();

    let mut hist = vec![0i128; ys.len()];
    let mut best = 0i128;
    let mut k = 0;
    let open_sweep = |a: i128, hist: &[i128], best: &mut i128| {
        let mut below = 0i128;
        for (j, &b) in ys.iter().enumerate() {
            *best = (*best).max(n * a * b as i128 - below * p2);
            below += hist[j];
        }
        *best = (*best).max(n * a * p128 - below * p2);
    };
    while k < by_x.len() {
        let a = by_x[k].0;
        open_sweep(a as i128, &hist, &mut best);
        while k < by_x.len() && by_x[k].0 == a {
            hist[by_x[k].1] += 1;
            k += 1;
        }
        let mut at_most = 0i128;
        for (j, &b) in ys.iter().enumerate() {
            at_most += hist[j];
            best = best.max(at_most * p2 - n * a as i128 * b as i128);
        }
    }
    open_sweep(p128, &hist, &mut best);
    StarDiscrepancy {
        numerator: best as u128,
        denominator: (n * p2) as u128,
    }
}

/// Exact star discrepancy of the windows `(v_{m+1}, ..., v_{m+s}) / p`,
/// `m = 0..N-1`, of the snake sequence started at `x0`.
pub fn discrepancy_report(
    jump: &FractionalJump,
    s: usize,
    samples: u64,
    x0: &[u64],
) -> Result<DiscrepancyReport> {
    let limit = match s {
        1 => S1_SAMPLE_LIMIT,
        2 => S2_SAMPLE_LIMIT,
        _ => {
            return Err(Error::OutOfRange(format!(
                "s = {s}; only s = 1, 2 are supported"
            )))
        }
    };
    if samples == 0 || samples > limit {
        return Err(Error::OutOfRange(format!(
            "N = {samples} outside 1..={limit} for s = {s}"
        )));
    }
    let mut state = GeneratorState::new(jump, x0)?;
    let x0 = state.point().to_vec();
    let scalars: Vec<u64> = (0..samples as usize + s - 1)
        .map(|_| state.next_scalar(jump))
        .collect();
    let points: Vec<u64> = scalars
        .windows(s)
        .take(samples as usize)
        .flatten()
        .copied()
        .collect();
    let p = jump.modulus().p();
    let exact = star_discrepancy(p, s, &points)?;
    let d_star = exact.value();
    let ln_n = (samples as f64).ln();
    let bound = ((samples as f64).powf(-1.0 / 3.0) + (p as f64).powf(-0.25))
        * ln_n.powi(s as i32)
        * (p as f64).ln();
    Ok(DiscrepancyReport {
        schema_version: SCHEMA_VERSION,
        p,
        n: jump.dim(),
        s,
        samples,
        x0,
        d_star,
        d_star_exact: exact,
        extreme_upper: d_star * (1u32 << s) as f64,
        bound,
    })
}

pub fn discrepancy_trend(
    jump: &FractionalJump,
    s: usize,
    sample_counts: &[u64],
    x0: &[u64],
) -> Result<Vec<DiscrepancyReport>> {
    sample_counts
        .iter()
        .map(|&count| discrepancy_report(jump, s, count, x0))
        .collect()
}

/// CSV series of `(N, D*)` with the parameters repeated on every row.
pub fn trend_csv(reports: &[DiscrepancyReport]) -> String {
    let mut out = String::from(
        "schema_version,p,n,s,N,d_star,d_star_numerator,d_star_denominator,extreme_upper,bound\n",
    );
    for r in reports {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            r.schema_version,
            r.p,
            r.n,
            r.s,
            r.samples,
            r.d_star,
            r.d_star_exact.numerator,
            r.d_star_exact.denominator,
            r.extreme_upper,
            r.bound
        );
    }
    out
}
