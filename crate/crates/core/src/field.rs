//! Arithmetic in the prime field F_p.
//!
//! Residues are stored as plain `u64` values in `[0, p)`. The [`Modulus`]
//! carries the raw operations used by the hot paths (matrix products,
//! generator steps); [`FieldElement`] pairs a residue with its modulus for
//! callers that want checked, self-describing values.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exclusive upper bound on supported moduli.
pub const MODULUS_LIMIT: u64 = 1 << 61;

/// Witnesses making Miller-Rabin deterministic for every 64-bit input.
const MR_WITNESSES_U64: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mul_mod_u64(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut exp: u64, n: u64) -> u64 {
    let mut acc = 1 % n;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, n);
        }
        base = mul_mod_u64(base, base, n);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality test for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &w in &MR_WITNESSES_U64 {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for &a in &MR_WITNESSES_U64 {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A prime modulus `p` with `2 <= p < 2^61`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Modulus(u64);

impl TryFrom<u64> for Modulus {
    type Error = Error;

    fn try_from(p: u64) -> Result<Self> {
        Modulus::new(p)
    }
}

impl From<Modulus> for u64 {
    fn from(m: Modulus) -> u64 {
        m.0
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Modulus {
    pub fn new(p: u64) -> Result<Self> {
        if p >= MODULUS_LIMIT {
            return Err(Error::ModulusTooLarge(p));
        }
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Modulus(p))
    }

    #[inline]
    pub fn p(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn element(self, value: u64) -> FieldElement {
        FieldElement {
            value: value % self.0,
            modulus: self,
        }
    }

    #[inline]
    pub fn reduce(self, v: u64) -> u64 {
        v % self.0
    }

    /// Maps a signed integer to its residue.
    #[inline]
    pub fn reduce_signed(self, v: i64) -> u64 {
        v.rem_euclid(self.0 as i64) as u64
    }

    /// Lifts a residue to the symmetric range `(-p/2, p/2]`.
    #[inline]
    pub fn lift_symmetric(self, v: u64) -> i64 {
        if v > self.0 / 2 {
            v as i64 - self.0 as i64
        } else {
            v as i64
        }
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        mul_mod_u64(a, b, self.0)
    }

    /// Inverse by the extended Euclidean algorithm; `None` for zero.
    #[inline]
    pub fn inv(self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let p = self.0 as i64;
        let (mut r0, mut r1) = (p, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(if t0 < 0 { (t0 + p) as u64 } else { t0 as u64 })
    }

    /// Square-and-multiply; `0^0 = 1`.
    pub fn pow(self, base: u64, exp: u128) -> u64 {
        let mut acc = 1 % self.0;
        let mut b = base % self.0;
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    /// Inner product of a coefficient row with a vector, reduced mod p.
    ///
    /// Products are below 2^122, so up to 64 of them are accumulated in a
    /// `u128` before reduction.
    #[inline]
    pub fn dot(self, row: &[u64], v: &[u64]) -> u64 {
        let p = self.0 as u128;
        let mut acc: u128 = 0;
        for (chunk_r, chunk_v) in row.chunks(64).zip(v.chunks(64)) {
            for (&r, &x) in chunk_r.iter().zip(chunk_v) {
                acc += r as u128 * x as u128;
            }
            acc %= p;
        }
        acc as u64
    }
}

/// A residue in `[0, p)` tagged with its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u64,
    modulus: Modulus,
}

impl FieldElement {
    pub fn new(value: u64, modulus: Modulus) -> Self {
        modulus.element(value)
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> Modulus {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn check(self, other: FieldElement) -> Result<Modulus> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus.p(),
                right: other.modulus.p(),
            });
        }
        Ok(self.modulus)
    }

    pub fn checked_add(self, other: FieldElement) -> Result<FieldElement> {
        let m = self.check(other)?;
        Ok(m.element(m.add(self.value, other.value)))
    }

    pub fn checked_sub(self, other: FieldElement) -> Result<FieldElement> {
        let m = self.check(other)?;
        Ok(m.element(m.sub(self.value, other.value)))
    }

    pub fn checked_mul(self, other: FieldElement) -> Result<FieldElement> {
        let m = self.check(other)?;
        Ok(m.element(m.mul(self.value, other.value)))
    }

    pub fn inv(self) -> Result<FieldElement> {
        self.modulus
            .inv(self.value)
            .map(|v| self.modulus.element(v))
            .ok_or(Error::DivisionByZero(self.modulus.p()))
    }

    pub fn pow(self, exp: u128) -> FieldElement {
        self.modulus.element(self.modulus.pow(self.value, exp))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

// Operator forms panic on mismatched moduli, mirroring shape errors in
// array libraries. Use the `checked_*` methods to get a `Result` instead.
impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        self.checked_add(rhs).expect("field addition")
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: FieldElement) -> FieldElement {
        self.checked_sub(rhs).expect("field subtraction")
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        self.checked_mul(rhs).expect("field multiplication")
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.modulus.element(self.modulus.neg(self.value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fe(v: u64, p: u64) -> FieldElement {
        Modulus::new(p).unwrap().element(v)
    }

    #[test]
    fn addition_examples() {
        assert_eq!((fe(64, 101) + fe(50, 101)).value(), 114 % 101);
        assert_eq!((fe(0, 101) + fe(7, 101)).value(), 7);
        assert_eq!((fe(1, 2) + fe(1, 2)).value(), 0);
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!((fe(4, 101) * fe(64, 101)).value(), 256 % 101);
        for x in 0..101 {
            assert_eq!((fe(1, 101) * fe(x, 101)).value(), x);
        }
        assert_eq!((fe(3, 5) * fe(2, 5)).value(), 1);
    }

    #[test]
    fn inversion_examples() {
        assert_eq!(fe(2, 101).inv().unwrap().value(), 51);
        assert_eq!(fe(1, 101).inv().unwrap().value(), 1);
        let brute = (1..7).find(|b| 3 * b % 7 == 1).unwrap();
        assert_eq!(fe(3, 7).inv().unwrap().value(), brute);
        assert!(matches!(fe(0, 7).inv(), Err(Error::DivisionByZero(7))));
    }

    #[test]
    fn power_examples() {
        assert_eq!(fe(2, 101).pow(100).value(), 1);
        assert_eq!(fe(5, 101).pow(0).value(), 1);
        assert_eq!(fe(0, 101).pow(0).value(), 1);
        assert_eq!(fe(2, 5).pow(3).value(), 8 % 5);
    }

    #[test]
    fn mismatched_moduli_are_rejected() {
        let err = fe(1, 5).checked_add(fe(1, 7)).unwrap_err();
        assert!(matches!(err, Error::ModulusMismatch { left: 5, right: 7 }));
        assert!(fe(1, 5).checked_mul(fe(1, 7)).is_err());
    }

    #[test]
    fn modulus_construction() {
        assert!(Modulus::new(2).is_ok());
        assert!(matches!(Modulus::new(1), Err(Error::NotPrime(1))));
        assert!(matches!(Modulus::new(91), Err(Error::NotPrime(91))));
        // 2^61 - 1 is a Mersenne prime and the largest admissible modulus
        assert!(Modulus::new((1 << 61) - 1).is_ok());
        assert!(matches!(
            Modulus::new(2305843009213693951 + 2),
            Err(Error::ModulusTooLarge(_))
        ));
    }

    #[test]
    fn primality_against_sieve() {
        let limit = 10_000usize;
        let mut sieve = vec![true; limit];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..limit {
            if sieve[i] {
                for j in (i * i..limit).step_by(i) {
                    sieve[j] = false;
                }
            }
        }
        for (n, &prime) in sieve.iter().enumerate() {
            assert_eq!(is_prime_u64(n as u64), prime, "n = {n}");
        }
        // strong pseudoprimes to several small bases
        assert!(!is_prime_u64(3_215_031_751));
        assert!(!is_prime_u64(3_825_123_056_546_413_051));
        assert!(is_prime_u64(18_446_744_073_709_551_557));
    }

    #[test]
    fn symmetric_lift() {
        let m = Modulus::new(5).unwrap();
        let lifted: Vec<i64> = (0..5).map(|v| m.lift_symmetric(v)).collect();
        assert_eq!(lifted, vec![0, 1, 2, -2, -1]);
        let two = Modulus::new(2).unwrap();
        assert_eq!(two.lift_symmetric(1), 1);
        assert_eq!(m.reduce_signed(-7), 3);
    }

    const PRIMES: [u64; 5] = [2, 3, 101, 65_521, 2_305_843_009_213_693_951];

    proptest! {
        #[test]
        fn inverse_is_two_sided(idx in 0usize..5, raw in any::<u64>()) {
            let m = Modulus::new(PRIMES[idx]).unwrap();
            let a = m.element(raw);
            prop_assume!(!a.is_zero());
            let b = a.inv().unwrap();
            prop_assert_eq!((a * b).value(), 1);
            prop_assert_eq!(a.pow(m.p() as u128 - 1).value(), 1);
        }

        #[test]
        fn ring_axioms(idx in 0usize..5, x in any::<u64>(), y in any::<u64>(), z in any::<u64>()) {
            let m = Modulus::new(PRIMES[idx]).unwrap();
            let (a, b, c) = (m.element(x), m.element(y), m.element(z));
            prop_assert_eq!((a * b) * c, a * (b * c));
            prop_assert_eq!(a * (b + c), a * b + a * c);
            prop_assert_eq!((a + b) - b, a);
            prop_assert_eq!(a + (-a), m.element(0));
        }

        #[test]
        fn dot_matches_naive(x in proptest::collection::vec(any::<u64>(), 1..80)) {
            let m = Modulus::new(2_305_843_009_213_693_951).unwrap();
            let row: Vec<u64> = x.iter().map(|&v| m.reduce(v)).collect();
            let v: Vec<u64> = x.iter().map(|&v| m.reduce(v.rotate_left(7))).collect();
            let naive = row.iter().zip(&v).fold(0, |acc, (&r, &y)| m.add(acc, m.mul(r, y)));
            prop_assert_eq!(m.dot(&row, &v), naive);
        }
    }
}
