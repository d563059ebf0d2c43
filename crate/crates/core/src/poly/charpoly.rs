use crate::matrix::SquareMatrix;
use crate::poly::Polynomial;

/// Characteristic polynomial `det(T * Id - M)` by Berkowitz's
/// division-free recursion, so it is valid in every characteristic.
///
/// The leading principal submatrices are grown one row and column at a
/// time; each extension multiplies the running coefficient vector by a
/// lower-triangular Toeplitz matrix built from `R * A^k * C`.
pub fn char_poly(matrix: &SquareMatrix) -> Polynomial {
    let m = matrix.modulus();
    let n = matrix.dim();
    // coefficients, highest degree first
    let mut v: Vec<u64> = vec![1 % m.p()];
    for r in 0..n {
        let mut toeplitz = Vec::with_capacity(r + 2);
        toeplitz.push(1 % m.p());
        toeplitz.push(m.neg(matrix.get(r, r)));
        let row: Vec<u64> = (0..r).map(|c| matrix.get(r, c)).collect();
        let mut w: Vec<u64> = (0..r).map(|i| matrix.get(i, r)).collect();
        for _ in 0..r {
            toeplitz.push(m.neg(m.dot(&row, &w)));
            w = (0..r)
                .map(|i| {
                    let lead = &matrix.row(i)[..r];
                    m.dot(lead, &w)
                })
                .collect();
        }
        let mut next = vec![0u64; r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            let mut acc = 0;
            for (j, &vj) in v.iter().enumerate().take(i + 1) {
                acc = m.add(acc, m.mul(toeplitz[i - j], vj));
            }
            *slot = acc;
        }
        v = next;
    }
    v.reverse();
    Polynomial::new(m, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Modulus;
    use proptest::prelude::*;

    /// Leibniz expansion of det(T * Id - M) with polynomial entries; an
    /// independent route for small dimensions.
    fn char_poly_by_permutations(matrix: &SquareMatrix) -> Polynomial {
        let m = matrix.modulus();
        let n = matrix.dim();
        let entry = |r: usize, c: usize| {
            let neg = m.neg(matrix.get(r, c));
            if r == c {
                Polynomial::new(m, vec![neg, 1])
            } else {
                Polynomial::constant(m, neg)
            }
        };
        let mut perm: Vec<usize> = (0..n).collect();
        let mut total = Polynomial::zero(m);
        permute(&mut perm, 0, &mut |p: &[usize]| {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            let mut term = Polynomial::constant(m, 1);
            for (r, &c) in p.iter().enumerate() {
                term = term.mul(&entry(r, c));
            }
            total = if inversions % 2 == 0 {
                total.add(&term)
            } else {
                total.sub(&term)
            };
        });
        total
    }

    fn permute(p: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize])) {
        if k == p.len() {
            visit(p);
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            permute(p, k + 1, visit);
            p.swap(k, i);
        }
    }

    #[test]
    fn worked_example_polynomial() {
        let m = Modulus::new(101).unwrap();
        let a = SquareMatrix::from_rows(m, &[[1, 0, 2], [0, 3, 4], [4, 2, 3]]).unwrap();
        let f = char_poly(&a);
        assert_eq!(f.coeffs(), &[23, 100, 94, 1]);
        assert_eq!(f, Polynomial::from_signed(m, &[23, -1, -7, 1]));
    }

    #[test]
    fn identity_gives_power_of_linear_factor() {
        for p in [2, 3, 101] {
            let m = Modulus::new(p).unwrap();
            let t_minus_one = Polynomial::from_signed(m, &[-1, 1]);
            let expected = t_minus_one.mul(&t_minus_one).mul(&t_minus_one);
            assert_eq!(char_poly(&SquareMatrix::identity(m, 3)), expected);
        }
    }

    #[test]
    fn small_characteristic() {
        let m = Modulus::new(2).unwrap();
        let a = SquareMatrix::from_rows(m, &[[1, 1], [0, 1]]).unwrap();
        // (T - 1)^2 = T^2 - 2T + 1 = T^2 + 1 over F_2
        assert_eq!(char_poly(&a).coeffs(), &[1, 0, 1]);
    }

    proptest! {
        #[test]
        fn agrees_with_permutation_expansion(
            p_idx in 0usize..4,
            dim in 1usize..5,
            raw in proptest::collection::vec(any::<u64>(), 16),
        ) {
            let p = [2u64, 3, 5, 101][p_idx];
            let m = Modulus::new(p).unwrap();
            let a = SquareMatrix::new(m, dim, raw[..dim * dim].to_vec()).unwrap();
            let f = char_poly(&a);
            prop_assert_eq!(&f, &char_poly_by_permutations(&a));
            prop_assert!(f.is_monic());
            prop_assert_eq!(f.degree(), Some(dim));
            // constant term (-1)^dim det, next-to-leading coefficient -trace
            let det = if dim % 2 == 0 { a.det() } else { m.neg(a.det()) };
            prop_assert_eq!(f.coeff(0), det);
            prop_assert_eq!(f.coeff(dim - 1), m.neg(a.trace()));
        }
    }
}
