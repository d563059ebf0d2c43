use serde::Serialize;

use crate::analysis::{full_orbit_certify, ORBIT_LIMIT, SCHEMA_VERSION};
use crate::error::{Error, Result};
use crate::field::Modulus;
use crate::fracjump::FractionalJump;
use crate::matrix::SquareMatrix;
use crate::poly::{char_poly, is_projectively_primitive};
use crate::projective::{is_transitive_bruteforce, projective_space_size, ENUMERATION_LIMIT};

#[derive(Clone, Debug, Serialize)]
pub struct CertifyReport {
    pub schema_version: u32,
    pub p: u64,
    pub n: usize,
    pub matrix: Vec<Vec<u64>>,
    pub char_poly: String,
    pub primitive: bool,
    /// Brute-force verdict: the full-orbit walk of the jump when the
    /// polynomial test accepts, projective transitivity otherwise. Absent
    /// when the space is too large to enumerate.
    pub brute_force: Option<bool>,
    pub period: Option<u64>,
    pub jump_index: Option<usize>,
    pub agree: Option<bool>,
}

/// Decides transitivity from the characteristic polynomial and, when the
/// space is small enough, confirms it by brute force.
///
/// Disagreement is reported as [`Error::Inconsistency`] after the report is
/// produced, so callers can still print it.
pub fn certify(matrix: &SquareMatrix) -> Result<CertifyReport> {
    let modulus = matrix.modulus();
    let p = modulus.p();
    let n = matrix
        .dim()
        .checked_sub(1)
        .filter(|&n| n >= 1)
        .ok_or_else(|| Error::Dimension("need an (n+1)x(n+1) matrix with n >= 1".into()))?;
    let chi = char_poly(matrix);
    let primitive = is_projectively_primitive(&chi)?;
    let affine_size = (p as u128).saturating_pow(n as u32);

    let mut report = CertifyReport {
        schema_version: SCHEMA_VERSION,
        p,
        n,
        matrix: matrix.rows(),
        char_poly: chi.to_string(),
        primitive,
        brute_force: None,
        period: None,
        jump_index: None,
        agree: None,
    };
    if primitive {
        let jump = FractionalJump::build(matrix)?;
        report.jump_index = Some(jump.jump_index());
        if affine_size <= ORBIT_LIMIT as u128 {
            let cert = full_orbit_certify(&jump)?;
            report.brute_force = Some(cert.full_orbit);
            report.period = Some(cert.period);
        }
    } else if matrix.is_invertible() && projective_space_size(p, n) <= ENUMERATION_LIMIT {
        report.brute_force = Some(is_transitive_bruteforce(matrix)?);
    } else if !matrix.is_invertible() {
        report.brute_force = Some(false);
    }
    report.agree = report.brute_force.map(|b| b == primitive);
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub schema_version: u32,
    pub p: u64,
    pub n: usize,
    pub matrices: u64,
    pub primitive: u64,
    pub transitive: u64,
    /// Matrices whose jump was built and walked a full orbit of F_p.
    pub full_orbit_jumps: u64,
    pub agreements: u64,
    pub disagreements: u64,
    pub agreement_rate: f64,
}

/// Runs [`certify`] semantics over all of GL_2(F_p).
pub fn certify_sweep(modulus: Modulus) -> Result<SweepReport> {
    let p = modulus.p();
    if p > 31 {
        return Err(Error::ResourceLimit(format!(
            "the GL_2 sweep enumerates p^4 matrices; p = {p} is above 31"
        )));
    }
    let mut report = SweepReport {
        schema_version: SCHEMA_VERSION,
        p,
        n: 1,
        matrices: 0,
        primitive: 0,
        transitive: 0,
        full_orbit_jumps: 0,
        agreements: 0,
        disagreements: 0,
        agreement_rate: 0.0,
    };
    for idx in 0..p.pow(4) {
        let entries: Vec<u64> = (0..4).map(|k| idx / p.pow(k) % p).collect();
        let matrix = SquareMatrix::new(modulus, 2, entries)?;
        if !matrix.is_invertible() {
            continue;
        }
        report.matrices += 1;
        let primitive = is_projectively_primitive(&char_poly(&matrix))?;
        let transitive = is_transitive_bruteforce(&matrix)?;
        report.primitive += primitive as u64;
        report.transitive += transitive as u64;
        if primitive {
            let cert = full_orbit_certify(&FractionalJump::build(&matrix)?)?;
            report.full_orbit_jumps += cert.full_orbit as u64;
        }
        if primitive == transitive {
            report.agreements += 1;
        } else {
            report.disagreements += 1;
        }
    }
    report.agreement_rate = report.agreements as f64 / report.matrices as f64;
    Ok(report)
}
