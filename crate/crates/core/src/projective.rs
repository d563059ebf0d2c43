//! Projective points and automorphisms of P^n(F_p), brute-force orbit
//! machinery, and affine maps of A^n.
//!
//! Points are stored as canonical representatives whose last nonzero
//! coordinate is 1. The affine chart `U` (last coordinate nonzero) is then
//! exactly the set of points ending in 1, and `H` the points ending in 0.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Modulus;
use crate::matrix::SquareMatrix;

/// Largest projective space the brute-force routines will enumerate.
pub const ENUMERATION_LIMIT: u128 = 1 << 24;
/// Largest number of affine maps the census will enumerate.
pub const CENSUS_LIMIT: u128 = 1 << 22;

/// Scales `v` so that its last nonzero coordinate is 1. Returns `false` for
/// the zero vector.
pub fn canonicalize(modulus: Modulus, v: &mut [u64]) -> bool {
    let Some(last) = v.iter().rposition(|&c| c != 0) else {
        return false;
    };
    if v[last] != 1 {
        let inv = modulus.inv(v[last]).expect("nonzero coordinate");
        for c in &mut v[..last] {
            *c = modulus.mul(*c, inv);
        }
        v[last] = 1;
    }
    true
}

/// A point `[X_0 : ... : X_n]` of P^n in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ProjectivePoint {
    coords: Vec<u64>,
}

impl ProjectivePoint {
    /// Canonical representative of the class of a nonzero vector.
    pub fn from_vector(modulus: Modulus, mut v: Vec<u64>) -> Result<Self> {
        for c in v.iter_mut() {
            *c = modulus.reduce(*c);
        }
        if !canonicalize(modulus, &mut v) {
            return Err(Error::InvalidParameter(
                "the zero vector does not represent a projective point".into(),
            ));
        }
        Ok(ProjectivePoint { coords: v })
    }

    /// The embedding `x -> [x_1 : ... : x_n : 1]` of A^n onto the chart U.
    pub fn from_affine(modulus: Modulus, x: &[u64]) -> Self {
        let mut coords: Vec<u64> = x.iter().map(|&c| modulus.reduce(c)).collect();
        coords.push(1 % modulus.p());
        ProjectivePoint { coords }
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    /// Dimension `n` of the ambient projective space.
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    /// Whether the point lies on the hyperplane at infinity `X_n = 0`.
    pub fn in_hyperplane(&self) -> bool {
        *self.coords.last().expect("nonempty") == 0
    }

    /// Inverse of [`from_affine`](Self::from_affine) on the chart U.
    pub fn to_affine(&self) -> Option<Vec<u64>> {
        if self.in_hyperplane() {
            None
        } else {
            Some(self.coords[..self.dim()].to_vec())
        }
    }
}

/// Image of a point under the automorphism represented by `matrix`.
pub fn apply(matrix: &SquareMatrix, point: &ProjectivePoint) -> Result<ProjectivePoint> {
    if matrix.dim() != point.coords.len() {
        return Err(Error::Dimension(format!(
            "{}x{} matrix applied to a point with {} coordinates",
            matrix.dim(),
            matrix.dim(),
            point.coords.len()
        )));
    }
    let v = matrix.mul_vec(&point.coords);
    ProjectivePoint::from_vector(matrix.modulus(), v)
        .map_err(|_| Error::InvalidParameter("matrix is singular".into()))
}

/// Number of points of P^n(F_p), i.e. `(p^(n+1) - 1) / (p - 1)`, saturating.
pub fn projective_space_size(p: u64, n: usize) -> u128 {
    let mut total: u128 = 0;
    let mut power: u128 = 1;
    for _ in 0..=n {
        total = total.saturating_add(power);
        power = power.saturating_mul(p as u128);
    }
    total
}

/// Indexing of P^n(F_p) used by [`enumerate_projective_space`].
///
/// Points are grouped by the position `k` of their last nonzero coordinate,
/// `k = n` first and descending. Within a group, the free coordinates
/// `X_0 .. X_{k-1}` are read as base-p digits with `X_0` least significant.
#[derive(Clone, Copy, Debug)]
pub struct ProjectiveSpace {
    modulus: Modulus,
    n: usize,
    size: usize,
}

impl ProjectiveSpace {
    pub fn new(modulus: Modulus, n: usize) -> Result<Self> {
        let size = projective_space_size(modulus.p(), n);
        if size > ENUMERATION_LIMIT {
            return Err(Error::ResourceLimit(format!(
                "P^{n}(F_{}) has {size} points, above the enumeration limit {ENUMERATION_LIMIT}",
                modulus.p()
            )));
        }
        Ok(ProjectiveSpace {
            modulus,
            n,
            size: size as usize,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Index of a canonical coordinate vector.
    pub fn index_of(&self, coords: &[u64]) -> usize {
        let p = self.modulus.p() as usize;
        let k = coords.iter().rposition(|&c| c != 0).expect("nonzero point");
        // charts with a later last-nonzero position come first
        let offset: usize = (k + 1..=self.n).map(|j| p.pow(j as u32)).sum();
        let local = coords[..k]
            .iter()
            .rev()
            .fold(0usize, |acc, &c| acc * p + c as usize);
        offset + local
    }

    pub fn point_at(&self, mut index: usize) -> ProjectivePoint {
        let p = self.modulus.p() as usize;
        let mut k = self.n;
        loop {
            let chart = p.pow(k as u32);
            if index < chart {
                break;
            }
            index -= chart;
            k -= 1;
        }
        let mut coords = vec![0u64; self.n + 1];
        for c in coords.iter_mut().take(k) {
            *c = (index % p) as u64;
            index /= p;
        }
        coords[k] = 1;
        ProjectivePoint { coords }
    }

    pub fn points(&self) -> impl Iterator<Item = ProjectivePoint> + '_ {
        (0..self.size).map(|i| self.point_at(i))
    }
}

/// Every point of P^n(F_p) once, in the order documented on
/// [`ProjectiveSpace`].
pub fn enumerate_projective_space(modulus: Modulus, n: usize) -> Result<Vec<ProjectivePoint>> {
    let space = ProjectiveSpace::new(modulus, n)?;
    Ok(space.points().collect())
}

fn require_invertible(matrix: &SquareMatrix) -> Result<()> {
    if !matrix.is_invertible() {
        return Err(Error::InvalidParameter(
            "matrix is singular and does not define an automorphism".into(),
        ));
    }
    Ok(())
}

/// Length of the orbit of `start` under the automorphism `[matrix]`.
pub fn projective_orbit_length(matrix: &SquareMatrix, start: &ProjectivePoint) -> Result<usize> {
    require_invertible(matrix)?;
    let space = ProjectiveSpace::new(matrix.modulus(), matrix.dim() - 1)?;
    let m = matrix.modulus();
    let mut current = start.coords.clone();
    let mut next = vec![0u64; current.len()];
    for length in 1..=space.size() {
        matrix.mul_vec_into(&current, &mut next);
        canonicalize(m, &mut next);
        if next == start.coords {
            return Ok(length);
        }
        std::mem::swap(&mut current, &mut next);
    }
    Err(Error::Inconsistency(
        "orbit of an invertible matrix failed to close".into(),
    ))
}

/// Whether `[matrix]` acts transitively on P^n, decided by following a single
/// orbit: a bijection is transitive iff one orbit has full length.
pub fn is_transitive_bruteforce(matrix: &SquareMatrix) -> Result<bool> {
    let space = ProjectiveSpace::new(matrix.modulus(), matrix.dim() - 1)?;
    let start = space.point_at(0);
    Ok(projective_orbit_length(matrix, &start)? == space.size())
}

/// The fractional jump of `[matrix]` at `x`, computed by iterating the
/// projective map until the image re-enters the chart U. Works for any
/// invertible matrix; returns the image and the number of iterations used.
pub fn jump_by_iteration(matrix: &SquareMatrix, x: &[u64]) -> (Vec<u64>, usize) {
    let m = matrix.modulus();
    let mut v = ProjectivePoint::from_affine(m, x).coords;
    let mut next = vec![0u64; v.len()];
    let mut k = 0;
    loop {
        matrix.mul_vec_into(&v, &mut next);
        canonicalize(m, &mut next);
        std::mem::swap(&mut v, &mut next);
        k += 1;
        if *v.last().expect("nonempty") != 0 {
            v.pop();
            return (v, k);
        }
    }
}

/// An affine map `x -> A x + b` of A^n with `A` invertible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    linear: SquareMatrix,
    translation: Vec<u64>,
}

impl AffineMap {
    pub fn new(linear: SquareMatrix, translation: Vec<u64>) -> Result<Self> {
        if translation.len() != linear.dim() {
            return Err(Error::Dimension(format!(
                "translation of length {} for a {}x{} linear part",
                translation.len(),
                linear.dim(),
                linear.dim()
            )));
        }
        require_invertible(&linear)?;
        let m = linear.modulus();
        let translation = translation.into_iter().map(|c| m.reduce(c)).collect();
        Ok(AffineMap {
            linear,
            translation,
        })
    }

    pub fn linear(&self) -> &SquareMatrix {
        &self.linear
    }

    pub fn translation(&self) -> &[u64] {
        &self.translation
    }

    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        let m = self.linear.modulus();
        let mut y = self.linear.mul_vec(x);
        for (yi, &bi) in y.iter_mut().zip(&self.translation) {
            *yi = m.add(*yi, bi);
        }
        y
    }

    /// Least `m >= 1` with `f^m(start) = start`.
    pub fn orbit_length(&self, start: &[u64]) -> Result<u64> {
        let modulus = self.linear.modulus();
        let n = self.linear.dim();
        let size = (modulus.p() as u128).saturating_pow(n as u32);
        if size > ENUMERATION_LIMIT {
            return Err(Error::ResourceLimit(format!(
                "A^{n}(F_{}) has {size} points, above the enumeration limit",
                modulus.p()
            )));
        }
        let start: Vec<u64> = start.iter().map(|&c| modulus.reduce(c)).collect();
        let mut x = self.apply(&start);
        let mut length = 1u64;
        while x != start {
            x = self.apply(&x);
            length += 1;
            if length as u128 > size {
                return Err(Error::Inconsistency("affine orbit failed to close".into()));
            }
        }
        Ok(length)
    }
}

/// One transitive affine map in a census report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineMapRecord {
    #[serde(rename = "A")]
    pub linear: Vec<Vec<u64>>,
    pub b: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub schema_version: u32,
    pub p: u64,
    pub n: usize,
    pub total_maps: u64,
    pub transitive_maps: Vec<AffineMapRecord>,
}

/// `|GL_n(F_p)| = prod_{i<n} (p^n - p^i)`, saturating.
pub fn general_linear_order(p: u64, n: usize) -> u128 {
    let p = p as u128;
    let pn = p.saturating_pow(n as u32);
    (0..n).fold(1u128, |acc, i| {
        acc.saturating_mul(pn.saturating_sub(p.saturating_pow(i as u32)))
    })
}

/// Exhaustively lists the transitive affine maps of A^n(F_p).
pub fn affine_transitivity_census(modulus: Modulus, n: usize) -> Result<CensusReport> {
    let p = modulus.p();
    let points = (p as u128).saturating_pow(n as u32);
    let maps = general_linear_order(p, n).saturating_mul(points);
    if n == 0 || maps > CENSUS_LIMIT {
        return Err(Error::ResourceLimit(format!(
            "census over A^{n}(F_{p}) needs {maps} maps, above the limit {CENSUS_LIMIT}"
        )));
    }
    let points = points as u64;
    let cells = (p as u128).pow((n * n) as u32) as u64;
    let digits = |mut idx: u64, len: usize| -> Vec<u64> {
        let mut out = vec![0u64; len];
        for d in out.iter_mut().rev() {
            *d = idx % p;
            idx /= p;
        }
        out
    };

    let mut total_maps = 0u64;
    let mut transitive_maps = Vec::new();
    for cell in 0..cells {
        let linear = SquareMatrix::new(modulus, n, digits(cell, n * n))?;
        if !linear.is_invertible() {
            continue;
        }
        for shift in 0..points {
            total_maps += 1;
            let map = AffineMap::new(linear.clone(), digits(shift, n))?;
            if map.orbit_length(&vec![0; n])? == points {
                transitive_maps.push(AffineMapRecord {
                    linear: linear.rows(),
                    b: map.translation().to_vec(),
                });
            }
        }
    }
    Ok(CensusReport {
        schema_version: 1,
        p,
        n,
        total_maps,
        transitive_maps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{char_poly, is_projectively_primitive};
    use proptest::prelude::*;

    fn m(p: u64) -> Modulus {
        Modulus::new(p).unwrap()
    }

    fn example() -> SquareMatrix {
        SquareMatrix::from_rows(m(101), &[[1, 0, 2], [0, 3, 4], [4, 2, 3]]).unwrap()
    }

    #[test]
    fn apply_normalizes_the_image() {
        let origin = ProjectivePoint::from_affine(m(101), &[0, 0]);
        let image = apply(&example(), &origin).unwrap();
        let inv3 = m(101).inv(3).unwrap();
        assert_eq!(
            image.coords(),
            &[m(101).mul(2, inv3), m(101).mul(4, inv3), 1]
        );
        assert_eq!(image.coords(), &[68, 35, 1]);

        let id = SquareMatrix::identity(m(101), 3);
        assert_eq!(apply(&id, &image).unwrap(), image);
        assert_eq!(apply(&example().scale(57), &origin).unwrap(), image);
    }

    #[test]
    fn hyperplane_membership() {
        let inf = ProjectivePoint::from_vector(m(7), vec![1, 0]).unwrap();
        assert!(inf.in_hyperplane());
        assert!(!ProjectivePoint::from_affine(m(7), &[3]).in_hyperplane());
        assert!(ProjectivePoint::from_vector(m(7), vec![0, 1, 0])
            .unwrap()
            .in_hyperplane());
        assert!(ProjectivePoint::from_vector(m(7), vec![0, 0]).is_err());
    }

    #[test]
    fn enumeration_order_and_sizes() {
        let pts = enumerate_projective_space(m(2), 1).unwrap();
        let coords: Vec<&[u64]> = pts.iter().map(|p| p.coords()).collect();
        assert_eq!(coords, vec![&[0, 1][..], &[1, 1], &[1, 0]]);
        assert_eq!(enumerate_projective_space(m(101), 2).unwrap().len(), 10303);
        assert_eq!(enumerate_projective_space(m(3), 1).unwrap().len(), 4);
        assert!(matches!(
            enumerate_projective_space(m(101), 4),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn index_round_trip() {
        let space = ProjectiveSpace::new(m(5), 3).unwrap();
        for (i, point) in space.points().enumerate() {
            assert_eq!(space.index_of(point.coords()), i);
        }
    }

    #[test]
    fn transitivity_examples() {
        assert!(is_transitive_bruteforce(&example()).unwrap());
        assert!(!is_transitive_bruteforce(&SquareMatrix::identity(m(5), 3)).unwrap());
        let three_cycle = SquareMatrix::from_rows(m(2), &[[1, 1], [1, 0]]).unwrap();
        assert!(is_transitive_bruteforce(&three_cycle).unwrap());
        let singular = SquareMatrix::from_rows(m(2), &[[1, 1], [1, 1]]).unwrap();
        assert!(is_transitive_bruteforce(&singular).is_err());
    }

    #[test]
    fn apply_permutes_the_space() {
        let space = ProjectiveSpace::new(m(5), 2).unwrap();
        let a = SquareMatrix::from_rows(m(5), &[[2, 1, 0], [0, 1, 3], [1, 0, 4]]).unwrap();
        assert!(a.is_invertible());
        let mut seen = vec![false; space.size()];
        for point in space.points() {
            let image = apply(&a, &point).unwrap();
            let idx = space.index_of(image.coords());
            assert!(!seen[idx]);
            seen[idx] = true;
        }
    }

    #[test]
    fn affine_orbits() {
        let a = SquareMatrix::from_rows(m(2), &[[1, 1], [0, 1]]).unwrap();
        let f = AffineMap::new(a, vec![1, 1]).unwrap();
        assert_eq!(f.orbit_length(&[0, 0]).unwrap(), 4);

        let id = AffineMap::new(SquareMatrix::identity(m(3), 2), vec![0, 0]).unwrap();
        assert_eq!(id.orbit_length(&[2, 1]).unwrap(), 1);

        let a3 = SquareMatrix::from_rows(m(3), &[[1, 1], [0, 1]]).unwrap();
        let g = AffineMap::new(a3, vec![1, 1]).unwrap();
        assert_eq!(g.orbit_length(&[1, 1]).unwrap(), 3);
    }

    #[test]
    fn census_small_cases() {
        let two_two = affine_transitivity_census(m(2), 2).unwrap();
        assert_eq!(two_two.total_maps, 24);
        assert!(two_two.transitive_maps.contains(&AffineMapRecord {
            linear: vec![vec![1, 1], vec![0, 1]],
            b: vec![1, 1],
        }));
        assert!(affine_transitivity_census(m(2), 3)
            .unwrap()
            .transitive_maps
            .is_empty());
        assert!(affine_transitivity_census(m(3), 2)
            .unwrap()
            .transitive_maps
            .is_empty());
        // n = 1: x -> x + 1 is transitive for any prime
        let line = affine_transitivity_census(m(5), 1).unwrap();
        assert!(line
            .transitive_maps
            .iter()
            .any(|r| r.linear == vec![vec![1]] && r.b == vec![1]));
        assert!(matches!(
            affine_transitivity_census(m(5), 3),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn jump_by_iteration_skips_the_hyperplane() {
        // [b X0 + a X1 : X0] with a = 2, b = 3 over F_7 sends 0 to infinity
        let icg = SquareMatrix::from_rows(m(7), &[[3, 2], [1, 0]]).unwrap();
        assert_eq!(jump_by_iteration(&icg, &[0]), (vec![3], 2));
        let inv = m(7).inv(4).unwrap();
        assert_eq!(
            jump_by_iteration(&icg, &[4]).0,
            vec![m(7).add(m(7).mul(2, inv), 3)]
        );
    }

    #[test]
    fn transitivity_matches_projective_primitivity_on_gl2_f3() {
        let modulus = m(3);
        for idx in 0..81u64 {
            let entries: Vec<u64> = (0..4).map(|k| idx / 3u64.pow(k) % 3).collect();
            let a = SquareMatrix::new(modulus, 2, entries).unwrap();
            if !a.is_invertible() {
                continue;
            }
            assert_eq!(
                is_transitive_bruteforce(&a).unwrap(),
                is_projectively_primitive(&char_poly(&a)).unwrap()
            );
        }
    }

    proptest! {
        #[test]
        fn canonical_form_is_scale_invariant(
            raw in proptest::collection::vec(0u64..101, 3),
            lambda in 1u64..101,
        ) {
            prop_assume!(raw.iter().any(|&c| c != 0));
            let modulus = m(101);
            let point = ProjectivePoint::from_vector(modulus, raw.clone()).unwrap();
            let scaled: Vec<u64> = raw.iter().map(|&c| modulus.mul(c, lambda)).collect();
            prop_assert_eq!(&ProjectivePoint::from_vector(modulus, scaled).unwrap(), &point);
            let again = ProjectivePoint::from_vector(modulus, point.coords().to_vec()).unwrap();
            prop_assert_eq!(again, point);
        }
    }
}
