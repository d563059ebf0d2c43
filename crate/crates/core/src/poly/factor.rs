//! Integer factorization for group-order computations.
//!
//! Trial division below 10^6 followed by Brent's variant of Pollard rho.
//! Every reported prime is certified: Miller-Rabin with a witness set that is
//! proven complete below 3.3 * 10^24, and a Lucas (n - 1) certificate above.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::is_prime_u64;

/// Exclusive upper bound on integers accepted by [`factor_integer`].
pub const FACTORIZATION_LIMIT: u128 = 1 << 96;

const TRIAL_DIVISION_BOUND: u128 = 1_000_000;

/// Miller-Rabin with the primes up to 41 as witnesses is deterministic below
/// this bound (Sorenson and Webster).
const MR41_DETERMINISTIC_BOUND: u128 = 3_317_044_064_679_887_385_961_981;
const MR_WITNESSES: [u128; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Prime factorization as `(prime, exponent)` pairs, primes increasing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factorization {
    factors: Vec<(u128, u32)>,
}

impl Factorization {
    pub fn factors(&self) -> &[(u128, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u128> + '_ {
        self.factors.iter().map(|&(q, _)| q)
    }

    /// Multiplies the factorization back out.
    pub fn value(&self) -> u128 {
        self.factors
            .iter()
            .fold(1u128, |acc, &(q, e)| acc * q.pow(e))
    }

    fn from_primes(mut primes: Vec<u128>) -> Self {
        primes.sort_unstable();
        let mut factors: Vec<(u128, u32)> = Vec::new();
        for q in primes {
            match factors.last_mut() {
                Some((last, e)) if *last == q => *e += 1,
                _ => factors.push((q, 1)),
            }
        }
        Factorization { factors }
    }
}

fn mul_mod(a: u128, b: u128, n: u128) -> u128 {
    if n <= u64::MAX as u128 {
        return (a * b) % n;
    }
    // n < 2^96: feed b in 32-bit limbs so no intermediate exceeds 2^128
    debug_assert!(n < FACTORIZATION_LIMIT);
    let mut r = 0u128;
    for shift in [64u32, 32, 0] {
        let limb = (b >> shift) & 0xffff_ffff;
        r = (r << 32) % n;
        r = (r + (a * limb) % n) % n;
    }
    r
}

fn pow_mod(mut base: u128, mut exp: u128, n: u128) -> u128 {
    let mut acc = 1 % n;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        exp >>= 1;
    }
    acc
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn miller_rabin(n: u128, witnesses: &[u128]) -> bool {
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for &a in witnesses {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Deterministic primality for `n < 2^96`.
///
/// # Panics
/// Panics if `n >= 2^96`.
pub fn is_prime_u128(n: u128) -> bool {
    assert!(n < FACTORIZATION_LIMIT, "primality range exceeded");
    if n <= u64::MAX as u128 {
        return is_prime_u64(n as u64);
    }
    if MR_WITNESSES.iter().any(|&w| n.is_multiple_of(w)) || !miller_rabin(n, &MR_WITNESSES) {
        return false;
    }
    if n < MR41_DETERMINISTIC_BOUND {
        return true;
    }
    lucas_certificate(n)
}

/// Lucas test: `n` is prime iff some `a` has order exactly `n - 1` mod `n`.
fn lucas_certificate(n: u128) -> bool {
    let order = factor_integer(n - 1).expect("n - 1 lies in range");
    let mut a = 2u128;
    loop {
        if pow_mod(a, n - 1, n) != 1 {
            return false;
        }
        if order.primes().all(|q| pow_mod(a, (n - 1) / q, n) != 1) {
            return true;
        }
        a += 1;
    }
}

fn pollard_brent(n: u128) -> u128 {
    if n.is_multiple_of(2) {
        return 2;
    }
    const BATCH: u64 = 128;
    let diff = |a: u128, b: u128| a.abs_diff(b);
    for c in 1u128.. {
        let f = |x: u128| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut ys) = (2u128, 2u128, 2u128);
        let (mut g, mut q, mut r) = (1u128, 1u128, 1u64);
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, diff(x, y), n);
                }
                g = gcd(q, n);
                k += BATCH;
            }
            r *= 2;
        }
        if g == n {
            // the batch overshot; replay it one step at a time
            loop {
                ys = f(ys);
                g = gcd(diff(x, ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!("rho iteration over all increments")
}

fn split_into(n: u128, out: &mut Vec<u128>) {
    if n == 1 {
        return;
    }
    if is_prime_u128(n) {
        out.push(n);
        return;
    }
    let d = pollard_brent(n);
    split_into(d, out);
    split_into(n / d, out);
}

/// Complete prime factorization of `2 <= n < 2^96`.
pub fn factor_integer(n: u128) -> Result<Factorization> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "cannot factor {n}; input must be at least 2"
        )));
    }
    if n >= FACTORIZATION_LIMIT {
        return Err(Error::UnsupportedRange(n));
    }
    let mut rest = n;
    let mut primes = Vec::new();
    while rest.is_multiple_of(2) {
        primes.push(2);
        rest /= 2;
    }
    let mut d = 3u128;
    while d < TRIAL_DIVISION_BOUND && d * d <= rest {
        while rest.is_multiple_of(d) {
            primes.push(d);
            rest /= d;
        }
        d += 2;
    }
    if rest > 1 {
        if d * d > rest {
            primes.push(rest);
        } else {
            split_into(rest, &mut primes);
        }
    }
    Ok(Factorization::from_primes(primes))
}
