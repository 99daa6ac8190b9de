//! Exact rational scalars, p-adic valuations, and elementary-divisor
//! valuations of invertible rational matrices.
//!
//! Everything downstream (tree distances, translation lengths, projection
//! intervals) reduces to the two operations here: [`vp`] and
//! [`elementary_divisor_valuations`]. Both are exact; the criterion checked
//! by the rest of the crate involves strict inequalities, so there is no
//! rounding anywhere in the verification path.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator (`num_rational` maintains both invariants).
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArithError {
    /// The given modulus is not a prime number.
    NotPrime(u64),
    /// A matrix with zero determinant was supplied where an invertible one
    /// is required.
    SingularMatrix,
    /// Only 2x2 and 3x3 matrices are supported.
    UnsupportedDimension(usize),
    /// Entry count does not match the declared dimension.
    BadEntryCount { dim: usize, got: usize },
    /// A rational literal could not be parsed.
    ParseRational(String),
    /// Zero denominator or scaling by zero.
    DivisionByZero,
}

impl fmt::Display for ArithError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArithError::NotPrime(p) => write!(f, "{p} is not a prime"),
            ArithError::SingularMatrix => write!(f, "matrix is singular"),
            ArithError::UnsupportedDimension(d) => {
                write!(f, "unsupported matrix dimension {d} (expected 2 or 3)")
            }
            ArithError::BadEntryCount { dim, got } => {
                write!(f, "expected {} entries for a {dim}x{dim} matrix, got {got}", dim * dim)
            }
            ArithError::ParseRational(s) => write!(f, "cannot parse rational from {s:?}"),
            ArithError::DivisionByZero => write!(f, "division by zero"),
        }
    }
}

/// Value of a p-adic valuation: an integer, or `Infinity` for the zero
/// element. Ordered with `Infinity` greater than every finite value, added
/// with `Infinity` absorbing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinity)
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Infinity, Valuation::Infinity) => Ordering::Equal,
            (Valuation::Infinity, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Finite(_), Valuation::Infinity) => Ordering::Less,
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
        }
    }
}

impl Add for Valuation {
    type Output = Valuation;

    fn add(self, other: Valuation) -> Valuation {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinity,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => write!(f, "+inf"),
        }
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin primality test for machine-word integers.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n == b {
            return true;
        }
        if n % b == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for &a in &BASES {
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

pub(crate) fn validate_prime(p: u64) -> Result<(), ArithError> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(ArithError::NotPrime(p))
    }
}

/// Exponent of `p` in a nonzero integer.
fn int_valuation(n: &BigInt, p: u64) -> i64 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut v = 0i64;
    let mut rest = n.clone();
    loop {
        let (q, r) = rest.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        v += 1;
        rest = q;
    }
}

/// The p-adic valuation of a rational number; `Infinity` iff `x == 0`.
///
/// Satisfies `vp(ab) = vp(a) + vp(b)` and `vp(a + b) >= min(vp(a), vp(b))`.
pub fn vp(x: &Rational, p: u64) -> Result<Valuation, ArithError> {
    validate_prime(p)?;
    Ok(vp_unchecked(x, p))
}

/// As [`vp`], for callers that have already validated the prime.
pub(crate) fn vp_unchecked(x: &Rational, p: u64) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinity;
    }
    Valuation::Finite(int_valuation(x.numer(), p) - int_valuation(x.denom(), p))
}

/// Parse `"num"` or `"num/den"` into a rational in lowest terms.
pub fn parse_rational(s: &str) -> Result<Rational, ArithError> {
    let s = s.trim();
    let bad = || ArithError::ParseRational(s.to_string());
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num_str.parse().map_err(|_| bad())?;
    let den: BigInt = den_str.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(ArithError::DivisionByZero);
    }
    Ok(Rational::new(num, den))
}

/// Format as `"num/den"`, omitting the denominator when it is 1.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// The integer `n` as a rational.
pub fn rational_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Integer power of the prime as a rational (negative exponents allowed).
pub fn prime_power(p: u64, k: i64) -> Rational {
    let mag = BigInt::from(p).pow(k.unsigned_abs() as u32);
    if k >= 0 {
        Rational::from_integer(mag)
    } else {
        Rational::new(BigInt::one(), mag)
    }
}

/// Invertible square matrix (2x2 or 3x3) over the rationals. All group
/// elements in the crate are values of this type; invertibility is checked
/// once, on construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    dim: usize,
    entries: Vec<Rational>,
}

impl Matrix {
    /// Build from row-major entries, rejecting singular matrices.
    pub fn new(dim: usize, entries: Vec<Rational>) -> Result<Self, ArithError> {
        if dim != 2 && dim != 3 {
            return Err(ArithError::UnsupportedDimension(dim));
        }
        if entries.len() != dim * dim {
            return Err(ArithError::BadEntryCount { dim, got: entries.len() });
        }
        let m = Matrix { dim, entries };
        if m.det().is_zero() {
            return Err(ArithError::SingularMatrix);
        }
        Ok(m)
    }

    /// 2x2 convenience constructor from integer entries.
    pub fn from_i64_2x2(rows: [[i64; 2]; 2]) -> Result<Self, ArithError> {
        let entries = rows.iter().flatten().map(|&v| rational_int(v)).collect();
        Matrix::new(2, entries)
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = alloc::vec![Rational::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Rational::one();
        }
        Matrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row * self.dim + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        self.entries.chunks(self.dim)
    }

    pub fn trace(&self) -> Rational {
        (0..self.dim).map(|i| self.entry(i, i)).sum()
    }

    pub fn det(&self) -> Rational {
        let e = |i: usize, j: usize| self.entries[i * self.dim + j].clone();
        match self.dim {
            2 => e(0, 0) * e(1, 1) - e(0, 1) * e(1, 0),
            3 => {
                e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1))
                    - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))
                    + e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0))
            }
            _ => unreachable!("dimension checked on construction"),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.dim, other.dim, "matrix dimension mismatch");
        let n = self.dim;
        let mut entries = alloc::vec![Rational::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = Rational::zero();
                for k in 0..n {
                    acc += self.entry(i, k) * other.entry(k, j);
                }
                entries[i * n + j] = acc;
            }
        }
        Matrix { dim: n, entries }
    }

    /// Inverse via the adjugate; always defined by the construction invariant.
    pub fn inverse(&self) -> Matrix {
        let d = self.det();
        let e = |i: usize, j: usize| self.entries[i * self.dim + j].clone();
        let entries = match self.dim {
            2 => alloc::vec![e(1, 1), -e(0, 1), -e(1, 0), e(0, 0)],
            3 => {
                let cof = |r0: usize, c0: usize, r1: usize, c1: usize| {
                    e(r0, c0) * e(r1, c1) - e(r0, c1) * e(r1, c0)
                };
                // Adjugate = transposed cofactor matrix.
                alloc::vec![
                    cof(1, 1, 2, 2), -cof(0, 1, 2, 2), cof(0, 1, 1, 2),
                    -cof(1, 0, 2, 2), cof(0, 0, 2, 2), -cof(0, 0, 1, 2),
                    cof(1, 0, 2, 1), -cof(0, 0, 2, 1), cof(0, 0, 1, 1),
                ]
            }
            _ => unreachable!("dimension checked on construction"),
        };
        let entries = entries.into_iter().map(|c| c / d.clone()).collect();
        Matrix { dim: self.dim, entries }
    }

    /// Multiply every entry by a nonzero scalar.
    pub fn scale(&self, c: &Rational) -> Result<Matrix, ArithError> {
        if c.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let entries = self.entries.iter().map(|x| x * c).collect();
        Ok(Matrix { dim: self.dim, entries })
    }

    /// Integer power (negative exponents use the inverse).
    pub fn pow(&self, k: i64) -> Matrix {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut exp = k.unsigned_abs();
        let mut acc = Matrix::identity(self.dim);
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&sq);
            }
            exp >>= 1;
            if exp > 0 {
                sq = sq.mul(&sq);
            }
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(self.dim)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let cells: Vec<String> = row.iter().map(format_rational).collect();
            write!(f, "{}", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Valuations `e_1 <= ... <= e_dim` of the elementary divisors of `m` over
/// the ring of rationals with p-free denominators.
///
/// Computed by valuation-pivoted Gaussian elimination: each round moves an
/// entry of minimal valuation to the pivot and clears its row and column
/// with p-integral multipliers, which are invertible row/column operations
/// over the localization at `p`. The pivot valuations come out sorted and
/// sum to `vp(det m)`.
pub fn elementary_divisor_valuations(m: &Matrix, p: u64) -> Result<Vec<i64>, ArithError> {
    validate_prime(p)?;
    let n = m.dim;
    let mut a: Vec<Vec<Rational>> = m.rows().map(|r| r.to_vec()).collect();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mut pivot: Option<(i64, usize, usize)> = None;
        for i in k..n {
            for j in k..n {
                if let Valuation::Finite(v) = vp_unchecked(&a[i][j], p) {
                    if pivot.map_or(true, |(best, _, _)| v < best) {
                        pivot = Some((v, i, j));
                    }
                }
            }
        }
        // The trailing block of an invertible matrix cannot vanish after
        // invertible row/column operations.
        let (v, pi, pj) = pivot.ok_or(ArithError::SingularMatrix)?;
        a.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        let pivot_value = a[k][k].clone();
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let factor = &a[i][k] / &pivot_value;
            for j in k..n {
                let sub = &factor * &a[k][j];
                a[i][j] -= sub;
            }
        }
        for j in k + 1..n {
            if a[k][j].is_zero() {
                continue;
            }
            let factor = &a[k][j] / &pivot_value;
            for i in k..n {
                let sub = &factor * &a[i][k];
                a[i][j] -= sub;
            }
        }
        out.push(v);
    }
    debug_assert!(out.windows(2).all(|w| w[0] <= w[1]));
    debug_assert_eq!(
        Valuation::Finite(out.iter().sum()),
        vp_unchecked(&m.det(), p),
        "elementary divisor valuations must sum to vp(det)"
    );
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn vp_of_prime_itself() {
        assert_eq!(vp(&rat("2"), 2).unwrap(), Valuation::Finite(1));
    }

    #[test]
    fn vp_of_denominator_power() {
        assert_eq!(vp(&rat("9/4"), 2).unwrap(), Valuation::Finite(-2));
        assert_eq!(vp(&rat("9/4"), 3).unwrap(), Valuation::Finite(2));
    }

    #[test]
    fn vp_of_zero_is_infinite() {
        assert_eq!(vp(&rat("0"), 5).unwrap(), Valuation::Infinity);
    }

    #[test]
    fn vp_rejects_composite_modulus() {
        assert_eq!(vp(&rat("1"), 6), Err(ArithError::NotPrime(6)));
        assert_eq!(vp(&rat("1"), 1), Err(ArithError::NotPrime(1)));
    }

    #[test]
    fn valuation_ordering_and_sum() {
        assert!(Valuation::Infinity > Valuation::Finite(i64::MAX));
        assert_eq!(Valuation::Finite(2) + Valuation::Finite(-5), Valuation::Finite(-3));
        assert_eq!(Valuation::Finite(2) + Valuation::Infinity, Valuation::Infinity);
    }

    #[test]
    fn primality_smoke() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007 * 3));
    }

    #[test]
    fn rational_round_trip() {
        assert_eq!(format_rational(&rat("6/4")), "3/2");
        assert_eq!(format_rational(&rat("-6/4")), "-3/2");
        assert_eq!(format_rational(&rat("8/2")), "4");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn singular_matrix_rejected() {
        let err = Matrix::from_i64_2x2([[1, 2], [2, 4]]);
        assert_eq!(err, Err(ArithError::SingularMatrix));
    }

    #[test]
    fn inverse_and_pow() {
        let m = Matrix::from_i64_2x2([[1, 2], [1, 3]]).unwrap();
        assert!(m.mul(&m.inverse()).is_identity());
        assert_eq!(m.pow(3), m.mul(&m).mul(&m));
        assert_eq!(m.pow(-2), m.inverse().mul(&m.inverse()));
        assert!(m.pow(0).is_identity());
    }

    #[test]
    fn elementary_divisors_of_diagonal() {
        for p in [2u64, 3, 5, 7] {
            let m = Matrix::new(2, alloc::vec![
                prime_power(p, 1), Rational::zero(),
                Rational::zero(), prime_power(p, -1),
            ])
            .unwrap();
            assert_eq!(elementary_divisor_valuations(&m, p).unwrap(), alloc::vec![-1, 1]);
        }
    }

    #[test]
    fn elementary_divisors_of_unimodular() {
        let m = Matrix::from_i64_2x2([[1, 2], [0, 1]]).unwrap();
        assert_eq!(elementary_divisor_valuations(&m, 2).unwrap(), alloc::vec![0, 0]);
    }

    #[test]
    fn elementary_divisors_3x3() {
        // diag(1, p, p^-1) reordered by elimination into sorted valuations.
        let p = 5u64;
        let m = Matrix::new(3, alloc::vec![
            Rational::one(), Rational::zero(), Rational::zero(),
            Rational::zero(), prime_power(p, 1), Rational::zero(),
            Rational::zero(), Rational::zero(), prime_power(p, -1),
        ])
        .unwrap();
        assert_eq!(elementary_divisor_valuations(&m, p).unwrap(), alloc::vec![-1, 0, 1]);
    }
}
