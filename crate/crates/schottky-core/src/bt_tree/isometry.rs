//! Type-preserving isometries of the tree given by 2x2 rational matrices,
//! and their elliptic/hyperbolic classification.

use crate::exact_arith::{validate_prime, vp_unchecked, Matrix, Valuation};

use super::vertex::TreeVertex;
use super::TreeError;

/// An invertible 2x2 rational matrix acting on the tree at `prime`.
///
/// The determinant valuation is required to be even, so the action
/// preserves the two vertex types and there are no edge inversions;
/// translation lengths are then even integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeIsometry {
    matrix: Matrix,
    prime: u64,
    det_valuation: i64,
}

/// Outcome of [`TreeIsometry::classify`]. Translation lengths are positive
/// even integers; elliptic isometries fix a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsometryClass {
    Elliptic,
    Hyperbolic { translation_length: u64 },
}

impl TreeIsometry {
    pub fn new(matrix: Matrix, prime: u64) -> Result<Self, TreeError> {
        validate_prime(prime)?;
        if matrix.dim() != 2 {
            return Err(TreeError::NotTwoByTwo(matrix.dim()));
        }
        let det_valuation = vp_unchecked(&matrix.det(), prime)
            .finite()
            .expect("invertible matrix has nonzero determinant");
        if det_valuation.rem_euclid(2) != 0 {
            return Err(TreeError::TypeSwapping { det_valuation });
        }
        Ok(TreeIsometry { matrix, prime, det_valuation })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn det_valuation(&self) -> i64 {
        self.det_valuation
    }

    /// Valuation of the trace; `Infinity` for trace zero.
    pub fn trace_valuation(&self) -> Valuation {
        vp_unchecked(&self.matrix.trace(), self.prime)
    }

    pub fn inverse(&self) -> TreeIsometry {
        TreeIsometry {
            matrix: self.matrix.inverse(),
            prime: self.prime,
            det_valuation: -self.det_valuation,
        }
    }

    /// Composition `self . other` (apply `other` first).
    pub fn compose(&self, other: &TreeIsometry) -> Result<TreeIsometry, TreeError> {
        if self.prime != other.prime {
            return Err(TreeError::MixedPrimes(self.prime, other.prime));
        }
        Ok(TreeIsometry {
            matrix: self.matrix.mul(&other.matrix),
            prime: self.prime,
            det_valuation: self.det_valuation + other.det_valuation,
        })
    }

    /// Image of a vertex: canonicalize the transformed lattice basis.
    pub fn apply(&self, v: &TreeVertex) -> TreeVertex {
        debug_assert_eq!(self.prime, v.prime());
        TreeVertex::from_basis_unchecked(self.prime, &self.matrix.mul(&v.basis_matrix()))
    }

    /// Elliptic/hyperbolic classification from the trace valuation.
    ///
    /// After normalizing the determinant valuation to zero (a homothety,
    /// which does not change the action), the isometry is hyperbolic iff the
    /// normalized trace valuation is negative, with translation length twice
    /// its absolute value; equivalently
    /// `l = max(0, vp(det) - 2 vp(tr))`.
    pub fn classify(&self) -> IsometryClass {
        match self.trace_valuation() {
            Valuation::Infinity => IsometryClass::Elliptic,
            Valuation::Finite(tv) => {
                let length = self.det_valuation - 2 * tv;
                if length > 0 {
                    IsometryClass::Hyperbolic { translation_length: length as u64 }
                } else {
                    IsometryClass::Elliptic
                }
            }
        }
    }

    /// Distance a vertex is moved.
    pub fn displacement(&self, v: &TreeVertex) -> u64 {
        self.apply(v).distance(v).expect("same prime")
    }
}
