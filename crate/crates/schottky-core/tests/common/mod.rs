//! Shared helpers for the integration tests: seeded randomness and
//! generators of random matrices, vertices and isometries.

#![allow(dead_code)]

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use schottky_core::bt_tree::{TreeIsometry, TreeVertex};
use schottky_core::exact_arith::{parse_rational, prime_power, rational_int, Matrix, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform-ish integer in `lo..=hi` (tiny ranges, bias irrelevant).
pub fn rand_range(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> i64 {
    lo + (rng.next_u64() % (hi - lo + 1) as u64) as i64
}

pub fn rat(s: &str) -> Rational {
    parse_rational(s).unwrap()
}

pub fn mat2(entries: [&str; 4]) -> Matrix {
    Matrix::new(2, entries.iter().map(|s| rat(s)).collect()).unwrap()
}

pub fn isom(entries: [&str; 4], p: u64) -> TreeIsometry {
    TreeIsometry::new(mat2(entries), p).unwrap()
}

pub fn conjugate(t: &TreeIsometry, g: &TreeIsometry) -> TreeIsometry {
    t.compose(g).unwrap().compose(&t.inverse()).unwrap()
}

/// The certified demo pair: `diag(5, 1/5)` and its conjugate by
/// `[[1, 1], [1, 2]]`.
pub fn demo_pair() -> Vec<TreeIsometry> {
    let g1 = isom(["5", "0", "0", "1/5"], 5);
    let t = isom(["1", "1", "1", "2"], 5);
    vec![g1.clone(), conjugate(&t, &g1)]
}

/// Nonzero rational with small numerator and denominator.
pub fn rand_rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let num = rand_range(rng, -12, 12);
        let den = rand_range(rng, 1, 6);
        if num != 0 {
            return Rational::new(num.into(), den.into());
        }
    }
}

/// Rational with non-negative p-valuation (p-integral) and small size.
pub fn rand_p_integral(rng: &mut ChaCha8Rng, p: u64) -> Rational {
    let num = rand_range(rng, -9, 9);
    let mut den = rand_range(rng, 1, 6);
    while den as u64 % p == 0 {
        den = rand_range(rng, 1, 6);
    }
    Rational::new(num.into(), den.into())
}

fn elem_2x2(which: usize, value: Rational) -> Matrix {
    let one = rational_int(1);
    let zero = rational_int(0);
    let entries = match which {
        0 => vec![one.clone(), value, zero, one],             // upper shear
        _ => vec![one.clone(), zero, value, one],             // lower shear
    };
    Matrix::new(2, entries).unwrap()
}

/// Random product of determinant-1 factors: integer shears, `diag(p, 1/p)`
/// and the rotation `[[0, 1], [-1, 0]]`.
pub fn random_sl2(rng: &mut ChaCha8Rng, p: u64, factors: usize) -> Matrix {
    let mut m = Matrix::identity(2);
    for _ in 0..factors {
        let f = match rng.next_u64() % 5 {
            0 | 1 => elem_2x2(0, rational_int(rand_range(rng, -3, 3))),
            2 | 3 => elem_2x2(1, rational_int(rand_range(rng, -3, 3))),
            _ => {
                let k = if rng.next_u64() % 2 == 0 { 1 } else { -1 };
                Matrix::new(
                    2,
                    vec![prime_power(p, k), rational_int(0), rational_int(0), prime_power(p, -k)],
                )
                .unwrap()
            }
        };
        m = m.mul(&f);
    }
    if rng.next_u64() % 3 == 0 {
        let j = mat2(["0", "1", "-1", "0"]);
        m = m.mul(&j);
    }
    m
}

/// Random matrix with p-integral entries and determinant of valuation 0:
/// a product of p-integral shears, unit diagonal scalings, and swaps.
pub fn random_p_unimodular(rng: &mut ChaCha8Rng, p: u64) -> Matrix {
    let mut m = Matrix::identity(2);
    for _ in 0..rand_range(rng, 1, 4) {
        let f = match rng.next_u64() % 4 {
            0 => elem_2x2(0, rand_p_integral(rng, p)),
            1 => elem_2x2(1, rand_p_integral(rng, p)),
            2 => {
                // diag(u, 1) for a unit u in the localization at p.
                let mut u = rand_p_integral(rng, p);
                while schottky_core::exact_arith::vp(&u, p).unwrap()
                    != schottky_core::exact_arith::Valuation::Finite(0)
                {
                    u = rand_p_integral(rng, p);
                }
                Matrix::new(2, vec![u, rational_int(0), rational_int(0), rational_int(1)]).unwrap()
            }
            _ => mat2(["0", "1", "1", "0"]),
        };
        m = m.mul(&f);
    }
    m
}

/// Random tree vertex: a level in `-4..=4` and random digits below it.
pub fn random_vertex(rng: &mut ChaCha8Rng, p: u64) -> TreeVertex {
    let level = rand_range(rng, -4, 4);
    let depth = rand_range(rng, 0, 5);
    let mut offset = rational_int(0);
    for k in (level - depth)..level {
        let digit = rand_range(rng, 0, p as i64 - 1);
        offset += rational_int(digit) * prime_power(p, k);
    }
    let basis = Matrix::new(
        2,
        vec![prime_power(p, level), offset, rational_int(0), rational_int(1)],
    )
    .unwrap();
    TreeVertex::from_basis(p, &basis).unwrap()
}

/// Minimum displacement of `g` over the ball of the given radius around
/// the standard vertex, by exhaustive breadth-first enumeration.
pub fn displacement_min_over_ball(g: &TreeIsometry, radius: u64) -> u64 {
    let start = TreeVertex::standard(g.prime()).unwrap();
    let mut seen = std::collections::BTreeSet::new();
    seen.insert(start.clone());
    let mut frontier = vec![start.clone()];
    let mut best = g.displacement(&start);
    for _ in 0..radius {
        let mut next = Vec::new();
        for v in &frontier {
            for w in v.neighbors() {
                if seen.insert(w.clone()) {
                    best = best.min(g.displacement(&w));
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    best
}
