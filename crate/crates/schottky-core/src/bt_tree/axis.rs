//! Axes of hyperbolic isometries and the geodesic projection onto them.

use alloc::vec::Vec;

use super::isometry::{IsometryClass, TreeIsometry};
use super::vertex::TreeVertex;
use super::TreeError;

/// The invariant geodesic line of a hyperbolic isometry, addressed by
/// integer axis coordinates. The owner translates by `+translation_length`.
///
/// Representation is lazy: one fundamental segment
/// `vertex_at(0) ... vertex_at(l)` is stored and every other coordinate is
/// reached by applying a power of the owner, so far-away coordinates cost a
/// matrix power instead of a stored window. Values are immutable after
/// construction and safe to share across threads.
#[derive(Debug, Clone)]
pub struct Axis {
    owner: TreeIsometry,
    translation_length: u64,
    segment: Vec<TreeVertex>,
}

/// Axis of a hyperbolic isometry, found by displacement descent from the
/// standard vertex: any neighbor strictly decreasing `d(x, gx)` moves two
/// steps closer to the axis, and the displacement function is convex along
/// geodesics, so the walk reaches a minimizer.
pub fn axis(g: &TreeIsometry) -> Result<Axis, TreeError> {
    let translation_length = match g.classify() {
        IsometryClass::Hyperbolic { translation_length } => translation_length,
        IsometryClass::Elliptic => return Err(TreeError::NotHyperbolic),
    };
    let mut current = TreeVertex::standard(g.prime())?;
    let mut displacement = g.displacement(&current);
    let mut guard = 0u32;
    while displacement > translation_length {
        let next = current
            .neighbors()
            .into_iter()
            .find(|w| g.displacement(w) < displacement)
            .ok_or_else(|| {
                TreeError::internal("displacement descent stalled above the translation length")
            })?;
        displacement = g.displacement(&next);
        current = next;
        guard += 1;
        if guard > 100_000 {
            return Err(TreeError::internal("displacement descent did not terminate"));
        }
    }
    let image = g.apply(&current);
    let segment = current.geodesic(&image)?;
    debug_assert_eq!(segment.len() as u64, translation_length + 1);
    Ok(Axis { owner: g.clone(), translation_length, segment })
}

impl Axis {
    pub fn owner(&self) -> &TreeIsometry {
        &self.owner
    }

    pub fn prime(&self) -> u64 {
        self.owner.prime()
    }

    pub fn translation_length(&self) -> u64 {
        self.translation_length
    }

    pub fn base(&self) -> &TreeVertex {
        &self.segment[0]
    }

    /// The axis vertex with coordinate `k`.
    pub fn vertex_at(&self, k: i64) -> TreeVertex {
        let length = self.translation_length as i64;
        let q = k.div_euclid(length);
        let r = k.rem_euclid(length) as usize;
        if q == 0 {
            return self.segment[r].clone();
        }
        let power = self.owner.matrix().pow(q);
        TreeVertex::from_basis_unchecked(
            self.prime(),
            &power.mul(&self.segment[r].basis_matrix()),
        )
    }

    /// Whether a vertex lies on the axis.
    pub fn contains(&self, v: &TreeVertex) -> Result<bool, TreeError> {
        let (vertex, _) = project(v, self)?;
        Ok(vertex == *v)
    }
}

/// Geodesic projection of a vertex onto an axis: the unique closest axis
/// vertex, returned with its axis coordinate.
///
/// The projection is the median of `(a, x, b)` for axis vertices `a`, `b`
/// on either side of it; any window strictly containing the projection
/// gives the same answer, and the window `[-K, K]` with
/// `K = d(x, base) + 1` always does because projections do not increase
/// distances.
pub fn project(x: &TreeVertex, axis: &Axis) -> Result<(TreeVertex, i64), TreeError> {
    if x.prime() != axis.prime() {
        return Err(TreeError::MixedPrimes(x.prime(), axis.prime()));
    }
    let radius = x.distance(axis.base())? as i64 + 1;
    let left = axis.vertex_at(-radius);
    let right = axis.vertex_at(radius);
    let to_left = x.distance(&left)? as i64;
    let to_right = x.distance(&right)? as i64;
    debug_assert_eq!((to_left - to_right).rem_euclid(2), 0);
    let coordinate = (to_left - to_right) / 2;
    let vertex = axis.vertex_at(coordinate);
    debug_assert_eq!(
        x.distance(&vertex).unwrap() as i64,
        to_left - (coordinate + radius),
        "median point must lie on both geodesics"
    );
    Ok((vertex, coordinate))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::{parse_rational, Matrix, Rational};
    use alloc::vec::Vec;
    use num_traits::{One, Zero};

    fn isom(entries: [&str; 4], p: u64) -> TreeIsometry {
        let entries: Vec<Rational> = entries.iter().map(|s| parse_rational(s).unwrap()).collect();
        TreeIsometry::new(Matrix::new(2, entries).unwrap(), p).unwrap()
    }

    #[test]
    fn elliptic_input_has_no_axis() {
        let a = isom(["1", "2", "0", "1"], 2);
        assert!(matches!(axis(&a), Err(TreeError::NotHyperbolic)));
    }

    #[test]
    fn diagonal_axis_contains_diagonal_vertices() {
        let g = isom(["5", "0", "0", "1/5"], 5);
        let ax = axis(&g).unwrap();
        assert_eq!(ax.translation_length(), 2);
        for k in -2..=2i64 {
            let diag = Matrix::new(
                2,
                alloc::vec![
                    crate::exact_arith::prime_power(5, k),
                    Rational::zero(),
                    Rational::zero(),
                    Rational::one(),
                ],
            )
            .unwrap();
            let v = TreeVertex::from_basis(5, &diag).unwrap();
            assert!(ax.contains(&v).unwrap(), "diag(5^{k}, 1) should be on the axis");
            assert_eq!(g.displacement(&v), 2);
        }
    }

    #[test]
    fn axis_steps_are_edges_and_owner_translates() {
        let g = isom(["1", "1", "1", "2"], 5);
        let conj = g.compose(&isom(["5", "0", "0", "1/5"], 5)).unwrap().compose(&g.inverse()).unwrap();
        let ax = axis(&conj).unwrap();
        let length = ax.translation_length() as i64;
        for k in -5..=5i64 {
            assert_eq!(ax.vertex_at(k).distance(&ax.vertex_at(k + 1)).unwrap(), 1);
            assert_eq!(conj.apply(&ax.vertex_at(k)), ax.vertex_at(k + length));
            assert_eq!(conj.displacement(&ax.vertex_at(k)), ax.translation_length());
        }
    }

    #[test]
    fn projection_fixes_axis_vertices() {
        let g = isom(["3", "0", "0", "1/3"], 3);
        let ax = axis(&g).unwrap();
        for k in -4..=4i64 {
            let v = ax.vertex_at(k);
            let (proj, coord) = project(&v, &ax).unwrap();
            assert_eq!(proj, v);
            assert_eq!(coord, k);
        }
    }

    #[test]
    fn off_axis_neighbor_projects_to_its_gate() {
        let g = isom(["3", "0", "0", "1/3"], 3);
        let ax = axis(&g).unwrap();
        let on_axis = ax.vertex_at(1);
        for w in on_axis.neighbors() {
            if ax.contains(&w).unwrap() {
                continue;
            }
            let (proj, _) = project(&w, &ax).unwrap();
            assert_eq!(proj, on_axis);
            assert_eq!(w.distance(&proj).unwrap(), 1);
        }
    }
}
