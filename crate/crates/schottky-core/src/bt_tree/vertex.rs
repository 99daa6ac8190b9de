//! Vertices of the Bruhat-Tits tree of `SL2(Q_p)` as canonical lattice
//! classes, with the metric, adjacency and geodesics.
//!
//! A vertex is a homothety class of rank-2 lattices over the localization
//! of the rationals at `p`. Every class has a unique basis of the form
//! `[[p^level, offset], [0, 1]]` where `offset` is reduced mod
//! `p^level` (its digit expansion stops below exponent `level`), so
//! equality of vertices is structural equality of `(prime, level, offset)`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Zero};

use crate::exact_arith::{
    elementary_divisor_valuations, prime_power, validate_prime, vp_unchecked, Matrix, Rational,
    Valuation,
};

use super::TreeError;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TreeVertex {
    prime: u64,
    level: i64,
    offset: Rational,
}

/// Canonical representative of `c` modulo `p^level`: the truncation of the
/// p-adic digit expansion of `c` below exponent `level`.
///
/// Writing `c = p^v a / b` with `a`, `b` prime to `p` and `v < level`, the
/// representative is `p^v r` for the least non-negative
/// `r = a b^-1 mod p^(level - v)`; its base-p digits are exactly the
/// truncated expansion.
pub(crate) fn reduce_mod_power(c: &Rational, level: i64, p: u64) -> Rational {
    if c.is_zero() {
        return Rational::zero();
    }
    let v = match vp_unchecked(c, p) {
        Valuation::Finite(v) => v,
        Valuation::Infinity => unreachable!("nonzero rational"),
    };
    if v >= level {
        return Rational::zero();
    }
    let unit_part = c * prime_power(p, -v);
    let modulus = BigInt::from(p).pow((level - v) as u32);
    let gcd = unit_part.denom().extended_gcd(&modulus);
    debug_assert!(gcd.gcd.is_one(), "denominator must be prime to p");
    let inverse = gcd.x.mod_floor(&modulus);
    let residue = (unit_part.numer() * inverse).mod_floor(&modulus);
    Rational::from_integer(residue) * prime_power(p, v)
}

/// Column-reduce an invertible basis over the localization at `p` and
/// normalize the homothety power, yielding the unique canonical form.
fn canonicalize(p: u64, basis: &Matrix) -> TreeVertex {
    debug_assert_eq!(basis.dim(), 2);
    let mut b00 = basis.entry(0, 0).clone();
    let mut b01 = basis.entry(0, 1).clone();
    let mut b10 = basis.entry(1, 0).clone();
    let mut b11 = basis.entry(1, 1).clone();
    // Make the (1,1) entry the bottom-row entry of minimal valuation.
    if vp_unchecked(&b10, p) < vp_unchecked(&b11, p) {
        core::mem::swap(&mut b00, &mut b01);
        core::mem::swap(&mut b10, &mut b11);
    }
    debug_assert!(!b11.is_zero(), "invertible basis has a nonzero bottom row");
    // Clear the bottom-left entry with a p-integral column operation.
    if !b10.is_zero() {
        let t = &b10 / &b11;
        b00 -= &t * &b01;
        b10 = Rational::zero();
    }
    let _ = b10;
    let alpha = vp_unchecked(&b00, p).finite().expect("nonzero diagonal");
    let delta = vp_unchecked(&b11, p).finite().expect("nonzero diagonal");
    let level = alpha - delta;
    let offset = reduce_mod_power(&(&b01 / &b11), level, p);
    TreeVertex { prime: p, level, offset }
}

impl TreeVertex {
    /// The class of the standard lattice.
    pub fn standard(prime: u64) -> Result<Self, TreeError> {
        validate_prime(prime)?;
        Ok(TreeVertex { prime, level: 0, offset: Rational::zero() })
    }

    /// Canonicalize the lattice class spanned by the columns of `basis`.
    pub fn from_basis(prime: u64, basis: &Matrix) -> Result<Self, TreeError> {
        validate_prime(prime)?;
        if basis.dim() != 2 {
            return Err(TreeError::NotTwoByTwo(basis.dim()));
        }
        Ok(canonicalize(prime, basis))
    }

    /// Canonicalization for internal callers with validated inputs.
    pub(crate) fn from_basis_unchecked(prime: u64, basis: &Matrix) -> Self {
        canonicalize(prime, basis)
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn level(&self) -> i64 {
        self.level
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    /// The canonical basis matrix `[[p^level, offset], [0, 1]]`.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::new(
            2,
            alloc::vec![
                prime_power(self.prime, self.level),
                self.offset.clone(),
                Rational::zero(),
                Rational::one(),
            ],
        )
        .expect("canonical basis is invertible")
    }

    fn check_same_prime(&self, other: &TreeVertex) -> Result<(), TreeError> {
        if self.prime == other.prime {
            Ok(())
        } else {
            Err(TreeError::MixedPrimes(self.prime, other.prime))
        }
    }

    /// Tree distance: the spread `e_max - e_min` of the elementary divisor
    /// valuations of a change-of-basis matrix between the two classes.
    pub fn distance(&self, other: &TreeVertex) -> Result<u64, TreeError> {
        self.check_same_prime(other)?;
        if self == other {
            return Ok(0);
        }
        let change = self.basis_matrix().inverse().mul(&other.basis_matrix());
        let evals = elementary_divisor_valuations(&change, self.prime)?;
        Ok((evals[evals.len() - 1] - evals[0]) as u64)
    }

    /// The `p + 1` neighbouring classes: the `p` index-`p` refinements and
    /// the unique coarsening.
    pub fn neighbors(&self) -> Vec<TreeVertex> {
        let p = self.prime;
        let mut out = Vec::with_capacity(p as usize + 1);
        let step = prime_power(p, self.level);
        for digit in 0..p {
            let offset = &self.offset + Rational::from_integer(BigInt::from(digit)) * &step;
            out.push(TreeVertex { prime: p, level: self.level + 1, offset });
        }
        out.push(TreeVertex {
            prime: p,
            level: self.level - 1,
            offset: reduce_mod_power(&self.offset, self.level - 1, p),
        });
        out
    }

    /// The unique geodesic path from `self` to `other`, inclusive of both
    /// endpoints; consecutive vertices are adjacent.
    pub fn geodesic(&self, other: &TreeVertex) -> Result<Vec<TreeVertex>, TreeError> {
        self.check_same_prime(other)?;
        let p = self.prime;
        let diff = &self.offset - &other.offset;
        let mut meet = self.level.min(other.level);
        if let Valuation::Finite(v) = vp_unchecked(&diff, p) {
            meet = meet.min(v);
        }
        let mut path = Vec::with_capacity(((self.level - meet) + (other.level - meet) + 1) as usize);
        path.push(self.clone());
        for k in (meet..self.level).rev() {
            path.push(TreeVertex {
                prime: p,
                level: k,
                offset: reduce_mod_power(&self.offset, k, p),
            });
        }
        for k in meet + 1..=other.level {
            path.push(TreeVertex {
                prime: p,
                level: k,
                offset: reduce_mod_power(&other.offset, k, p),
            });
        }
        debug_assert_eq!(path.last(), Some(other));
        Ok(path)
    }
}
