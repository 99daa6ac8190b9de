//! Exhaustive plane axioms for small prime orders and the double-count
//! cross-check of chamber opposition.

mod common;

use schottky_core::a2_link::{build_plane, opposite_chamber_pairs, opposite, Chamber};

#[test]
fn plane_axioms_hold_exhaustively() {
    for q in [2u64, 3, 5] {
        let plane = build_plane(q).unwrap();
        let expected = (q * q + q + 1) as usize;
        assert_eq!(plane.point_count(), expected);
        assert_eq!(plane.line_count(), expected);
        for line in 0..plane.line_count() {
            assert_eq!(plane.points_on_line(line).len() as u64, q + 1);
        }
        for point in 0..plane.point_count() {
            assert_eq!(plane.lines_through_point(point).len() as u64, q + 1);
        }
        // Two distinct points lie on exactly one common line, dually for
        // lines.
        for a in 0..plane.point_count() {
            for b in a + 1..plane.point_count() {
                let common: Vec<usize> = (0..plane.line_count())
                    .filter(|&l| plane.incident(a, l) && plane.incident(b, l))
                    .collect();
                assert_eq!(common.len(), 1, "points {a}, {b} at q = {q}");
            }
        }
        for a in 0..plane.line_count() {
            for b in a + 1..plane.line_count() {
                let common: Vec<usize> = (0..plane.point_count())
                    .filter(|&p| plane.incident(p, a) && plane.incident(p, b))
                    .collect();
                assert_eq!(common.len(), 1, "lines {a}, {b} at q = {q}");
            }
        }
    }
}

/// Opposition recomputed from raw homogeneous coordinates, independent of
/// the plane's incidence table.
fn opposite_from_coords(plane: &schottky_core::a2_link::ProjPlane, c1: &Chamber, c2: &Chamber) -> bool {
    let q = plane.order();
    let dot = |p: &[u64; 3], l: &[u64; 3]| (0..3).map(|k| p[k] * l[k]).sum::<u64>() % q;
    dot(plane.point_coords(c1.point), plane.line_coords(c2.line)) != 0
        && dot(plane.point_coords(c2.point), plane.line_coords(c1.line)) != 0
}

#[test]
fn fano_opposition_matches_the_coordinate_predicate() {
    let plane = build_plane(2).unwrap();
    let chambers = plane.chambers();
    assert_eq!(chambers.len(), 21);
    let mut opposite_pairs = 0;
    for (i, a) in chambers.iter().enumerate() {
        for b in &chambers[i + 1..] {
            let fast = opposite(&plane, a, b);
            assert_eq!(fast, opposite_from_coords(&plane, a, b));
            if fast {
                opposite_pairs += 1;
            }
        }
    }
    // Each chamber is opposite to exactly q^3 = 8 others: 21 * 8 / 2 pairs.
    assert_eq!(opposite_pairs, 84);
}

#[test]
fn opposition_is_symmetric() {
    for q in [2u64, 3] {
        let plane = build_plane(q).unwrap();
        let chambers = plane.chambers();
        for a in &chambers {
            for b in &chambers {
                assert_eq!(opposite(&plane, a, b), opposite(&plane, b, a));
            }
        }
    }
}

#[test]
fn example_configuration_is_opposite_by_exhaustive_check() {
    let plane = build_plane(3).unwrap();
    let pairs = opposite_chamber_pairs(&plane, 2).unwrap();
    let chambers: Vec<Chamber> = pairs.iter().flat_map(|(a, b)| [*a, *b]).collect();
    assert_eq!(chambers.len(), 4);
    let mut checked = 0;
    for (i, a) in chambers.iter().enumerate() {
        for b in &chambers[i + 1..] {
            assert!(opposite(&plane, a, b));
            checked += 1;
        }
    }
    assert_eq!(checked, 6, "all six unordered pairs must be verified");
}
