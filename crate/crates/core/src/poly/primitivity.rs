use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::poly::factor::factor_integer;
use crate::poly::Polynomial;

/// Rabin's irreducibility test.
///
/// A polynomial `f` of degree `m` is irreducible iff `T^(p^m) = T mod f` and
/// `gcd(T^(p^(m/l)) - T, f) = 1` for every prime `l | m`. Constants (units
/// and zero) are not irreducible.
pub fn is_irreducible(f: &Polynomial) -> bool {
    let Some(m) = f.degree() else {
        return false;
    };
    if m == 0 {
        return false;
    }
    if m == 1 {
        return true;
    }
    let f = f.monic();
    let p = f.modulus().p() as u128;
    let t = Polynomial::indeterminate(f.modulus());

    // frobenius[k] = T^(p^k) mod f
    let mut frobenius = Vec::with_capacity(m + 1);
    frobenius.push(t.clone());
    for k in 1..=m {
        let next = frobenius[k - 1].pow_mod(p, &f).expect("f is nonzero");
        frobenius.push(next);
    }
    if frobenius[m] != t {
        return false;
    }
    let degree_primes = factor_integer(m as u128).expect("degree is at least 2");
    let coprime = degree_primes.primes().all(|l| {
        let k = m / l as usize;
        frobenius[k].sub(&t).gcd(&f).is_one()
    });
    coprime
}

/// `N = (p^m - 1) / (p - 1)`, the order of `F_{p^m}^* / F_p^*`, if it lies in
/// the supported factorization range.
pub fn projective_order_bound(p: u64, m: usize) -> Result<u128> {
    let p = p as u128;
    let mut total: u128 = 0;
    let mut power: u128 = 1;
    for _ in 0..m {
        total = total
            .checked_add(power)
            .ok_or(Error::UnsupportedRange(u128::MAX))?;
        power = power.saturating_mul(p);
    }
    if total >= super::FACTORIZATION_LIMIT {
        return Err(Error::UnsupportedRange(total));
    }
    Ok(total)
}

fn root_is_unit(f: &Polynomial) -> bool {
    f.coeff(0) != 0
}

/// Whether a root of `f` generates `F_{p^m}^* / F_p^*`.
///
/// Checked as: `f` is irreducible with nonzero constant term and, for each
/// prime `l | N`, `T^(N/l) mod f` is not a constant. Since `T^N` always
/// reduces to a constant (it is the norm of the root up to sign), the order
/// of the class of `T` divides `N` and this test is exact.
pub fn is_projectively_primitive(f: &Polynomial) -> Result<bool> {
    let Some(m) = f.degree() else {
        return Ok(false);
    };
    if m == 0 || !root_is_unit(f) || !is_irreducible(f) {
        return Ok(false);
    }
    let f = f.monic();
    let order = projective_order_bound(f.modulus().p(), m)?;
    if order == 1 {
        return Ok(true);
    }
    let t = Polynomial::indeterminate(f.modulus());
    for l in factor_integer(order)?.primes() {
        if t.pow_mod(order / l, &f)?.is_constant() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether a root of `f` generates the full multiplicative group
/// `F_{p^m}^*`.
pub fn is_primitive(f: &Polynomial) -> Result<bool> {
    let Some(m) = f.degree() else {
        return Ok(false);
    };
    if m == 0 || !root_is_unit(f) || !is_irreducible(f) {
        return Ok(false);
    }
    let f = f.monic();
    let p = f.modulus().p();
    // p^m - 1 = (p - 1) * N; factor the two parts separately
    let projective = projective_order_bound(p, m)?;
    let order = projective
        .checked_mul(p as u128 - 1)
        .ok_or(Error::UnsupportedRange(u128::MAX))?;
    let mut primes = BTreeSet::new();
    for part in [projective, p as u128 - 1] {
        if part > 1 {
            primes.extend(factor_integer(part)?.primes());
        }
    }
    let t = Polynomial::indeterminate(f.modulus());
    for l in primes {
        if t.pow_mod(order / l, &f)?.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}
