//! Univariate polynomials over F_p.
//!
//! Besides the arithmetic needed for modular exponentiation, this module
//! hosts the characteristic polynomial of a matrix, the irreducibility and
//! (projective) primitivity tests, integer factorization for the order
//! checks, and the search for projectively primitive polynomials with small
//! coefficients.

mod charpoly;
mod factor;
mod primitivity;
mod search;

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Modulus;
use crate::matrix::SquareMatrix;

pub use charpoly::char_poly;
pub use factor::{factor_integer, is_prime_u128, Factorization, FACTORIZATION_LIMIT};
pub use primitivity::{
    is_irreducible, is_primitive, is_projectively_primitive, projective_order_bound,
};
pub use search::find_projectively_primitive;

/// Dense polynomial, coefficients lowest degree first. The zero polynomial
/// has an empty coefficient vector; otherwise the leading coefficient is
/// nonzero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    modulus: Modulus,
    coeffs: Vec<u64>,
}

impl Polynomial {
    pub fn new(modulus: Modulus, coeffs: Vec<u64>) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| modulus.reduce(c)).collect();
        trim(&mut coeffs);
        Polynomial { modulus, coeffs }
    }

    pub fn from_signed(modulus: Modulus, coeffs: &[i64]) -> Self {
        Polynomial::new(
            modulus,
            coeffs.iter().map(|&c| modulus.reduce_signed(c)).collect(),
        )
    }

    pub fn zero(modulus: Modulus) -> Self {
        Polynomial {
            modulus,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(modulus: Modulus, c: u64) -> Self {
        Polynomial::new(modulus, vec![c])
    }

    /// The monomial `T`.
    pub fn indeterminate(modulus: Modulus) -> Self {
        Polynomial::new(modulus, vec![0, 1])
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    #[inline]
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn eval(&self, x: u64) -> u64 {
        let m = self.modulus;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| m.add(m.mul(acc, x), c))
    }

    pub fn monic(&self) -> Polynomial {
        match self.modulus.inv(self.leading()) {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    pub fn scale(&self, c: u64) -> Polynomial {
        let m = self.modulus;
        Polynomial::new(m, self.coeffs.iter().map(|&v| m.mul(v, c)).collect())
    }

    fn check(&self, other: &Polynomial) {
        assert_eq!(
            self.modulus, other.modulus,
            "polynomials over different fields"
        );
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.check(other);
        let m = self.modulus;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| m.add(self.coeff(i), other.coeff(i)))
            .collect();
        Polynomial::new(m, coeffs)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.check(other);
        let m = self.modulus;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| m.sub(self.coeff(i), other.coeff(i)))
            .collect();
        Polynomial::new(m, coeffs)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.check(other);
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(self.modulus);
        }
        let m = self.modulus;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = m.add(out[i + j], m.mul(a, b));
            }
        }
        Polynomial::new(m, out)
    }

    /// Quotient and remainder of division by a nonzero polynomial.
    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        self.check(divisor);
        let m = self.modulus;
        let dd = divisor.degree().ok_or(Error::DivisionByZero(m.p()))?;
        let lead_inv = m
            .inv(divisor.leading())
            .expect("trimmed leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Polynomial::zero(m), self.clone()));
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = m.mul(rem[k + dd], lead_inv);
            quot[k] = c;
            if c == 0 {
                continue;
            }
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = m.sub(rem[k + j], m.mul(c, d));
            }
        }
        rem.truncate(dd);
        Ok((Polynomial::new(m, quot), Polynomial::new(m, rem)))
    }

    pub fn rem(&self, divisor: &Polynomial) -> Result<Polynomial> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^exp mod modulus_poly`.
    pub fn pow_mod(&self, mut exp: u128, modulus_poly: &Polynomial) -> Result<Polynomial> {
        let mut base = self.rem(modulus_poly)?;
        let mut acc = Polynomial::constant(self.modulus, 1).rem(modulus_poly)?;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).rem(modulus_poly)?;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base).rem(modulus_poly)?;
            }
        }
        Ok(acc)
    }

    /// Companion matrix: ones on the subdiagonal and the negated
    /// non-leading coefficients in the last column. Its characteristic
    /// polynomial is `self` (made monic).
    pub fn companion_matrix(&self) -> Result<SquareMatrix> {
        let f = self.monic();
        let deg = f
            .degree()
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::InvalidParameter("companion matrix needs degree >= 1".into()))?;
        let m = self.modulus;
        let mut entries = vec![0u64; deg * deg];
        for r in 1..deg {
            entries[r * deg + r - 1] = 1;
        }
        for r in 0..deg {
            entries[r * deg + deg - 1] = m.neg(f.coeff(r));
        }
        SquareMatrix::new(m, deg, entries)
    }

    /// Coefficients lifted to the symmetric range, lowest degree first.
    pub fn signed_coeffs(&self) -> Vec<i64> {
        self.coeffs
            .iter()
            .map(|&c| self.modulus.lift_symmetric(c))
            .collect()
    }
}

fn trim(coeffs: &mut Vec<u64>) {
    while coeffs.last() == Some(&0) {
        coeffs.pop();
    }
}

impl fmt::Display for Polynomial {
    /// Renders with symmetric coefficients, e.g. `T^3 - 7T^2 - T + 23`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.signed_coeffs().iter().enumerate().rev() {
            if *c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if first {
                if *c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if *c < 0 { '-' } else { '+' })?;
            }
            first = false;
            match (i, mag) {
                (0, _) => write!(f, "{mag}")?,
                (1, 1) => write!(f, "T")?,
                (1, _) => write!(f, "{mag}T")?,
                (_, 1) => write!(f, "T^{i}")?,
                _ => write!(f, "{mag}T^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial(p={}, {})", self.modulus, self)
    }
}
