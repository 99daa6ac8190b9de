//! Exact-arithmetic certification that isometries generate free (and, on
//! locally compact spaces, discrete) groups.
//!
//! The crate has two verification modes backed by one ping-pong engine:
//!
//! * [`bt_tree`] works on the Bruhat-Tits tree of `SL2(Q_p)`. Generators are
//!   2x2 rational matrices; axes, projections and the projection-diameter
//!   criterion are computed exactly, and a successful [`bt_tree::schottky_check`]
//!   is a certificate of freeness and discreteness.
//! * [`cat0_config`] checks the same criterion on abstract configuration data
//!   (axes as coordinate lines, pairwise relations with explicit angles) for
//!   spaces this crate has no geometry engine for.
//!
//! Every certificate can be cross-examined by the independent brute-force
//! [`word_oracle`], and [`a2_link`] covers the projective-plane combinatorics
//! used to build opposite chamber pairs in buildings of type A2-tilde.
//!
//! All arithmetic is exact: rationals of unbounded size, integer valuations,
//! no floating point anywhere. The crate is `no_std` (alloc required); IO,
//! JSON and the command-line front end live in the companion `schottky-cli`
//! crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod a2_link;
pub mod bt_tree;
pub mod cat0_config;
pub mod exact_arith;
pub mod pingpong;
pub mod word_oracle;

pub use exact_arith::{Matrix, Rational, Valuation};
