//! Fractional jumps of transitive projective automorphisms.
//!
//! For `M` in GL_{n+1}(F_p), write `b^(i)` for the last row of `M^i` acting
//! on `(x_1, ..., x_n, 1)`. The fractional jump sends `x` to
//! `f^(i)(x) = (rows 0..n of M^i applied to (x, 1)) / b^(i)(x)` for the least
//! `i` with `b^(i)(x) != 0`. When the class of `M` is transitive on P^n the
//! index never exceeds `n + 1`, and the map is a single cycle through all
//! of F_p^n.

mod params;

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Modulus;
use crate::matrix::{affine_system_solvable, rank, SquareMatrix};
use crate::poly::{char_poly, is_projectively_primitive, Polynomial};

pub use params::{GeneratorParams, PolyForm};

/// `constant + sum_k linear[k] * x_{k+1}` over F_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineForm {
    pub linear: Vec<u64>,
    pub constant: u64,
}

impl AffineForm {
    /// Interprets a matrix row `[c_0, ..., c_n]` as acting on `(x_1, ..., x_n, 1)`.
    pub fn from_row(row: &[u64]) -> Self {
        let (linear, constant) = row.split_at(row.len() - 1);
        AffineForm {
            linear: linear.to_vec(),
            constant: constant[0],
        }
    }

    pub fn eval(&self, modulus: Modulus, x: &[u64]) -> u64 {
        modulus.add(modulus.dot(&self.linear, x), self.constant)
    }

    pub fn is_constant(&self) -> bool {
        self.linear.iter().all(|&c| c == 0)
    }

    fn to_equation(&self) -> Vec<u64> {
        let mut e = self.linear.clone();
        e.push(self.constant);
        e
    }

    /// Renders as e.g. `15x1 - 15x2 - 47` with symmetric coefficients.
    pub fn display(&self, modulus: Modulus) -> String {
        let mut out = String::new();
        let terms = self
            .linear
            .iter()
            .enumerate()
            .map(|(k, &c)| (modulus.lift_symmetric(c), format!("x{}", k + 1)))
            .chain(std::iter::once((
                modulus.lift_symmetric(self.constant),
                String::new(),
            )));
        for (c, var) in terms {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if out.is_empty() {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if c < 0 { " - " } else { " + " });
            }
            if mag != 1 || var.is_empty() {
                out.push_str(&mag.to_string());
            }
            out.push_str(&var);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// A degree-one rational map `x -> (a_1(x), ..., a_n(x)) / b(x)` whose forms
/// are the rows of one invertible matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalAffineMap {
    modulus: Modulus,
    pub numerators: Vec<AffineForm>,
    pub denominator: AffineForm,
}

impl RationalAffineMap {
    fn from_matrix(matrix: &SquareMatrix) -> Self {
        let n = matrix.dim() - 1;
        RationalAffineMap {
            modulus: matrix.modulus(),
            numerators: (0..n)
                .map(|r| AffineForm::from_row(matrix.row(r)))
                .collect(),
            denominator: AffineForm::from_row(matrix.row(n)),
        }
    }

    /// `None` where the denominator vanishes.
    pub fn eval(&self, x: &[u64]) -> Option<Vec<u64>> {
        let m = self.modulus;
        let inv = m.inv(self.denominator.eval(m, x))?;
        Some(
            self.numerators
                .iter()
                .map(|a| m.mul(a.eval(m, x), inv))
                .collect(),
        )
    }
}

impl fmt::Display for RationalAffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let den = self.denominator.display(self.modulus);
        let parts: Vec<String> = self
            .numerators
            .iter()
            .map(|a| format!("({})/({den})", a.display(self.modulus)))
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Nonzero entries of a matrix row; index `n` is the constant slot.
#[derive(Clone, Debug)]
struct SparseRow {
    terms: Vec<(usize, u64)>,
}

impl SparseRow {
    fn new(row: &[u64]) -> Self {
        SparseRow {
            terms: row
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(k, &c)| (k, c))
                .collect(),
        }
    }

    #[inline]
    fn eval<C: OpSink>(&self, modulus: Modulus, x: &[u64], sink: &mut C) -> u64 {
        let p = modulus.p() as u128;
        let n = x.len();
        let mut acc: u128 = 0;
        for (count, &(k, c)) in self.terms.iter().enumerate() {
            if k == n {
                acc += c as u128;
            } else if c == 1 {
                acc += x[k] as u128;
            } else {
                sink.coefficient_product();
                acc += c as u128 * x[k] as u128;
            }
            if count % 63 == 62 {
                acc %= p;
            }
        }
        (acc % p) as u64
    }
}

/// Receives operation counts from instrumented steps.
pub trait OpSink {
    fn inversion(&mut self) {}
    fn multiplication(&mut self) {}
    fn coefficient_product(&mut self) {}
    fn piece(&mut self, _index: usize) {}
}

impl OpSink for () {}

/// Operation tally for a run of generator steps.
///
/// `multiplications` counts products with the inverted denominator, the
/// full-size field multiplications. Products with matrix coefficients other
/// than 0 and 1 are tallied separately in `coefficient_products`; with small
/// coefficients they cost about as much as additions.
#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct OpCounts {
    pub steps: u64,
    pub inversions: u64,
    pub multiplications: u64,
    pub coefficient_products: u64,
    /// `piece_histogram[i - 1]` counts steps evaluated with piece `i`.
    pub piece_histogram: Vec<u64>,
}

impl OpSink for OpCounts {
    fn inversion(&mut self) {
        self.inversions += 1;
    }
    fn multiplication(&mut self) {
        self.multiplications += 1;
    }
    fn coefficient_product(&mut self) {
        self.coefficient_products += 1;
    }
    fn piece(&mut self, index: usize) {
        self.steps += 1;
        if self.piece_histogram.len() < index {
            self.piece_histogram.resize(index, 0);
        }
        self.piece_histogram[index - 1] += 1;
    }
}

/// The precomputed fractional jump of a transitive automorphism `[M]`.
///
/// Immutable once built; share it freely between threads and keep one
/// [`GeneratorState`] per stream.
#[derive(Clone, Debug)]
pub struct FractionalJump {
    modulus: Modulus,
    n: usize,
    matrix: SquareMatrix,
    char_poly: Polynomial,
    powers: Vec<SquareMatrix>,
    sparse: Vec<Vec<SparseRow>>,
}

impl FractionalJump {
    /// Builds the jump of `[matrix]`, refusing matrices whose
    /// characteristic polynomial is not projectively primitive.
    pub fn build(matrix: &SquareMatrix) -> Result<Self> {
        if matrix.dim() < 2 {
            return Err(Error::Dimension(
                "a generator over F_p^n needs an (n+1)x(n+1) matrix with n >= 1".into(),
            ));
        }
        let modulus = matrix.modulus();
        let n = matrix.dim() - 1;
        let chi = char_poly(matrix);
        if !is_projectively_primitive(&chi)? {
            return Err(Error::NotProjectivelyPrimitive {
                p: modulus.p(),
                poly: chi.to_string(),
            });
        }

        // J = least i such that b^(1) = ... = b^(i) = 0 has no solution
        let mut powers = Vec::with_capacity(n + 1);
        let mut equations = Vec::with_capacity(n + 1);
        let mut current = matrix.clone();
        loop {
            equations.push(current.row(n).to_vec());
            powers.push(current.clone());
            if !affine_system_solvable(modulus, &equations) {
                break;
            }
            if powers.len() > n {
                return Err(Error::Inconsistency(format!(
                    "jump index exceeds n + 1 = {} for a transitive automorphism",
                    n + 1
                )));
            }
            current = current.mul(matrix)?;
        }

        let sparse = powers
            .iter()
            .map(|power| (0..=n).map(|r| SparseRow::new(power.row(r))).collect())
            .collect();
        Ok(FractionalJump {
            modulus,
            n,
            matrix: matrix.clone(),
            char_poly: chi,
            powers,
            sparse,
        })
    }

    /// Jump of the companion matrix of a monic polynomial of degree `n + 1`.
    pub fn from_char_poly(f: &Polynomial) -> Result<Self> {
        if !f.is_monic() {
            return Err(Error::InvalidParameter(format!("{f} is not monic")));
        }
        FractionalJump::build(&f.companion_matrix()?)
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    /// Dimension `n` of the affine space F_p^n.
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &SquareMatrix {
        &self.matrix
    }

    pub fn char_poly(&self) -> &Polynomial {
        &self.char_poly
    }

    /// The absolute jump index: the largest piece index `step` can use.
    pub fn jump_index(&self) -> usize {
        self.powers.len()
    }

    /// `M^i` for `1 <= i <= jump_index`.
    pub fn power(&self, i: usize) -> Option<&SquareMatrix> {
        i.checked_sub(1).and_then(|k| self.powers.get(k))
    }

    /// The rational map `f^(i)` used on the piece `U_i`.
    pub fn piece(&self, i: usize) -> Result<RationalAffineMap> {
        self.power(i)
            .map(RationalAffineMap::from_matrix)
            .ok_or_else(|| {
                Error::OutOfRange(format!("piece index {i} outside 1..={}", self.jump_index()))
            })
    }

    /// Denominators `b^(1), ..., b^(i)`, whose common zero set is `V_i`.
    pub fn vanishing_system(&self, i: usize) -> Vec<AffineForm> {
        self.powers
            .iter()
            .take(i)
            .map(|power| AffineForm::from_row(power.row(self.n)))
            .collect()
    }

    /// Affine dimension of `V_i`, or `None` if it is empty.
    pub fn vanishing_locus_dimension(&self, i: usize) -> Option<usize> {
        let equations: Vec<Vec<u64>> = self
            .vanishing_system(i)
            .iter()
            .map(AffineForm::to_equation)
            .collect();
        if !affine_system_solvable(self.modulus, &equations) {
            return None;
        }
        let linear: Vec<Vec<u64>> = equations.iter().map(|e| e[..self.n].to_vec()).collect();
        Some(self.n - rank(self.modulus, &linear))
    }

    /// Points of `V_i` by enumeration of F_p^n (at most 2^24 points).
    pub fn vanishing_locus(&self, i: usize) -> Result<Vec<Vec<u64>>> {
        let total = self.space_size_checked(1 << 24)?;
        let forms = self.vanishing_system(i);
        let mut out = Vec::new();
        let mut x = vec![0u64; self.n];
        for idx in 0..total {
            self.decode_point(idx, &mut x);
            if forms.iter().all(|b| b.eval(self.modulus, &x) == 0) {
                out.push(x.clone());
            }
        }
        Ok(out)
    }

    /// `p^n` if it does not exceed `limit`.
    pub(crate) fn space_size_checked(&self, limit: u64) -> Result<u64> {
        let size = (self.modulus.p() as u128).saturating_pow(self.n as u32);
        if size > limit as u128 {
            return Err(Error::ResourceLimit(format!(
                "F_{}^{} has {size} points, above the limit {limit}",
                self.modulus.p(),
                self.n
            )));
        }
        Ok(size as u64)
    }

    /// Base-p digits of `idx`, `x_1` least significant.
    pub fn decode_point(&self, mut idx: u64, x: &mut [u64]) {
        let p = self.modulus.p();
        for c in x.iter_mut() {
            *c = idx % p;
            idx /= p;
        }
    }

    /// Inverse of [`decode_point`](Self::decode_point).
    pub fn encode_point(&self, x: &[u64]) -> u64 {
        let p = self.modulus.p();
        x.iter().rev().fold(0, |acc, &c| acc * p + c)
    }

    #[inline]
    fn step_with<C: OpSink>(&self, x: &[u64], out: &mut [u64], sink: &mut C) -> usize {
        let m = self.modulus;
        for (i, rows) in self.sparse.iter().enumerate() {
            let den = rows[self.n].eval(m, x, sink);
            if den == 0 {
                continue;
            }
            sink.inversion();
            let inv = m.inv(den).expect("nonzero denominator");
            for (slot, row) in out.iter_mut().zip(rows) {
                sink.multiplication();
                *slot = m.mul(row.eval(m, x, sink), inv);
            }
            sink.piece(i + 1);
            return i + 1;
        }
        unreachable!("V_J is empty, so some denominator is nonzero")
    }

    /// Writes `psi(x)` to `out` and returns the piece index used.
    #[inline]
    pub fn step_into(&self, x: &[u64], out: &mut [u64]) -> usize {
        self.step_with(x, out, &mut ())
    }

    /// Like [`step_into`](Self::step_into), tallying operations in `counts`.
    pub fn step_counted(&self, x: &[u64], out: &mut [u64], counts: &mut OpCounts) -> usize {
        self.step_with(x, out, counts)
    }

    pub fn step(&self, x: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.n];
        self.step_into(x, &mut out);
        out
    }

    /// Iterator over `psi(seed), psi^2(seed), ...`.
    pub fn points(&self, seed: &[u64]) -> Result<Points<'_>> {
        Ok(Points {
            jump: self,
            state: GeneratorState::new(self, seed)?,
        })
    }

    /// Iterator over the snake sequence: the coordinates of `seed`,
    /// then of `psi(seed)`, and so on.
    pub fn scalars(&self, seed: &[u64]) -> Result<Scalars<'_>> {
        Ok(Scalars {
            jump: self,
            state: GeneratorState::new(self, seed)?,
        })
    }

    /// Parameters describing this generator, in matrix form.
    pub fn params(&self) -> GeneratorParams {
        GeneratorParams::Matrix {
            p: self.modulus.p(),
            n: self.n,
            matrix: self
                .matrix
                .rows()
                .into_iter()
                .map(|r| r.into_iter().map(|v| v as i64).collect())
                .collect(),
        }
    }
}

/// Builds the inversive congruential generator `x -> a/x + b` (with
/// `0 -> b`) as the jump of `[[b, a], [1, 0]]`.
pub fn make_icg(modulus: Modulus, a: u64, b: u64) -> Result<FractionalJump> {
    let (a, b) = (modulus.reduce(a), modulus.reduce(b));
    if a == 0 {
        return Err(Error::InvalidParameter(
            "the inversive generator needs a != 0".into(),
        ));
    }
    FractionalJump::build(&SquareMatrix::new(modulus, 2, vec![b, a, 1, 0])?)
}

/// Position of a stream: the current point `u_k` and the cursor into its
/// coordinates for the scalar (snake) stream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorState {
    x: Vec<u64>,
    snake_pos: usize,
    scratch: Vec<u64>,
}

impl GeneratorState {
    pub fn new(jump: &FractionalJump, seed: &[u64]) -> Result<Self> {
        if seed.len() != jump.n {
            return Err(Error::Dimension(format!(
                "seed has {} coordinates, expected {}",
                seed.len(),
                jump.n
            )));
        }
        Ok(GeneratorState {
            x: seed.iter().map(|&c| jump.modulus.reduce(c)).collect(),
            snake_pos: 0,
            scratch: vec![0; jump.n],
        })
    }

    /// State at the origin, the conventional seed.
    pub fn origin(jump: &FractionalJump) -> Self {
        GeneratorState {
            x: vec![0; jump.n],
            snake_pos: 0,
            scratch: vec![0; jump.n],
        }
    }

    pub fn point(&self) -> &[u64] {
        &self.x
    }

    pub fn snake_pos(&self) -> usize {
        self.snake_pos
    }

    /// Advances to the next point and returns it; resets the scalar cursor.
    pub fn next_point(&mut self, jump: &FractionalJump) -> &[u64] {
        jump.step_into(&self.x, &mut self.scratch);
        std::mem::swap(&mut self.x, &mut self.scratch);
        self.snake_pos = 0;
        &self.x
    }

    /// Next element of the snake sequence. The point advances exactly when
    /// all `n` coordinates of the current one have been emitted.
    pub fn next_scalar(&mut self, jump: &FractionalJump) -> u64 {
        let v = self.x[self.snake_pos];
        self.snake_pos += 1;
        if self.snake_pos == jump.n {
            self.next_point(jump);
        }
        v
    }
}

pub struct Points<'a> {
    jump: &'a FractionalJump,
    state: GeneratorState,
}

impl Iterator for Points<'_> {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        Some(self.state.next_point(self.jump).to_vec())
    }
}

pub struct Scalars<'a> {
    jump: &'a FractionalJump,
    state: GeneratorState,
}

impl Iterator for Scalars<'_> {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        Some(self.state.next_scalar(self.jump))
    }
}
