//! Pairwise relation of two axes: bounded shared segment, bridge between
//! disjoint axes, or inapplicable (unbounded intersection).

use alloc::format;
use alloc::string::String;
use core::fmt;

use super::axis::{project, Axis};
use super::vertex::TreeVertex;
use super::TreeError;

/// Why a pair of axes admits no bounded relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InapplicableReason {
    EqualAxes,
    SharedEnd,
    NoStabilization,
}

impl fmt::Display for InapplicableReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InapplicableReason::EqualAxes => write!(f, "equal axes"),
            InapplicableReason::SharedEnd => write!(f, "axes share an end"),
            InapplicableReason::NoStabilization => {
                write!(f, "projection did not stabilize within the safety bound")
            }
        }
    }
}

/// Relation of an ordered pair of axes `(first, second)`.
///
/// In the tree every angle hypothesis holds automatically, so no angle data
/// is carried here; the general-configuration checker records them as `pi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxisRelation {
    /// The axes intersect in a bounded segment, given by its coordinate
    /// extents on both axes. A single shared vertex is a segment of length 0.
    CaseI {
        segment_on_first: (i64, i64),
        segment_on_second: (i64, i64),
        length: u64,
    },
    /// The axes are disjoint; the bridge runs between the two feet, which
    /// are exactly the projections of either axis onto the other.
    CaseII {
        foot_on_first: (TreeVertex, i64),
        foot_on_second: (TreeVertex, i64),
        bridge_length: u64,
    },
    /// Unbounded intersection (equal axes or a shared end).
    Inapplicable { reason: InapplicableReason },
}

impl AxisRelation {
    pub fn is_applicable(&self) -> bool {
        !matches!(self, AxisRelation::Inapplicable { .. })
    }

    /// Footprint of the second axis on the first, as a coordinate interval.
    pub fn footprint_on_first(&self) -> Option<(i64, i64)> {
        match self {
            AxisRelation::CaseI { segment_on_first, .. } => Some(*segment_on_first),
            AxisRelation::CaseII { foot_on_first, .. } => Some((foot_on_first.1, foot_on_first.1)),
            AxisRelation::Inapplicable { .. } => None,
        }
    }

    /// Footprint of the first axis on the second.
    pub fn footprint_on_second(&self) -> Option<(i64, i64)> {
        match self {
            AxisRelation::CaseI { segment_on_second, .. } => Some(*segment_on_second),
            AxisRelation::CaseII { foot_on_second, .. } => {
                Some((foot_on_second.1, foot_on_second.1))
            }
            AxisRelation::Inapplicable { .. } => None,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            AxisRelation::CaseI { length, segment_on_first, .. } => format!(
                "case I: shared segment of length {length} at [{}, {}]",
                segment_on_first.0, segment_on_first.1
            ),
            AxisRelation::CaseII { bridge_length, .. } => {
                format!("case II: bridge of length {bridge_length}")
            }
            AxisRelation::Inapplicable { reason } => format!("inapplicable: {reason}"),
        }
    }
}

/// One direction of the probe: the eventual constant value of
/// `coord(project(second(dir * k)))` as `k` grows.
///
/// The projection of a geodesic onto an axis advances monotonically and, in
/// a tree, is constant while the distance to the axis is growing; so once
/// two consecutive probe points project to the same vertex *and* the second
/// is strictly farther from the axis, the projection has left its gate and
/// stays there for every larger `k`. Stalls on the approach side (distance
/// still shrinking) are not accepted.
fn stabilized_limit(first: &Axis, second: &Axis, dir: i64, k_safe: i64) -> Result<Option<i64>, TreeError> {
    let mut k = 1i64;
    while k <= k_safe {
        let near = second.vertex_at(dir * k);
        let far = second.vertex_at(dir * (k + 1));
        let (near_gate, near_coord) = project(&near, first)?;
        let (far_gate, far_coord) = project(&far, first)?;
        if near_coord == far_coord && near_gate == far_gate {
            let near_dist = near.distance(&near_gate)?;
            let far_dist = far.distance(&far_gate)?;
            if far_dist > near_dist {
                return Ok(Some(near_coord));
            }
        }
        k *= 2;
    }
    Ok(None)
}

/// Classify the relation of two distinct axes over the same prime.
///
/// Projects `second(+-k)` for `k = 1, 2, 4, ...` until both directions
/// stabilize; gives up (inapplicable) past
/// `K_safe = 64 + 4 (l_1 + l_2 + d(base_1, base_2))`, which exceeds any
/// bounded overlap reachable from the bases.
pub fn axes_relation(first: &Axis, second: &Axis) -> Result<AxisRelation, TreeError> {
    if first.prime() != second.prime() {
        return Err(TreeError::MixedPrimes(first.prime(), second.prime()));
    }
    let base_gap = first.base().distance(second.base())? as i64;
    let k_safe =
        64 + 4 * (first.translation_length() as i64 + second.translation_length() as i64 + base_gap);

    let plus = stabilized_limit(first, second, 1, k_safe)?;
    let minus = stabilized_limit(first, second, -1, k_safe)?;

    let (plus, minus) = match (plus, minus) {
        (Some(p), Some(m)) => (p, m),
        (p, m) => {
            // No bounded footprint: decide between equal axes and a shared
            // end by membership of far probe points in the first axis.
            let probe = (k_safe as u64).next_power_of_two() as i64;
            let plus_on_first = first.contains(&second.vertex_at(probe))?;
            let minus_on_first = first.contains(&second.vertex_at(-probe))?;
            let reason = if plus_on_first && minus_on_first {
                InapplicableReason::EqualAxes
            } else if plus_on_first || minus_on_first {
                InapplicableReason::SharedEnd
            } else {
                debug_assert!(p.is_none() || m.is_none());
                InapplicableReason::NoStabilization
            };
            return Ok(AxisRelation::Inapplicable { reason });
        }
    };

    let lo = plus.min(minus);
    let hi = plus.max(minus);
    if lo == hi {
        let gate = first.vertex_at(lo);
        let (foot, foot_coord) = project(&gate, second)?;
        let gap = gate.distance(&foot)?;
        if gap == 0 {
            return Ok(AxisRelation::CaseI {
                segment_on_first: (lo, lo),
                segment_on_second: (foot_coord, foot_coord),
                length: 0,
            });
        }
        return Ok(AxisRelation::CaseII {
            foot_on_first: (gate, lo),
            foot_on_second: (foot, foot_coord),
            bridge_length: gap,
        });
    }

    // Proper shared segment: both gate vertices must lie on the second axis.
    let lo_gate = first.vertex_at(lo);
    let hi_gate = first.vertex_at(hi);
    let (lo_on_second, lo_coord) = project(&lo_gate, second)?;
    let (hi_on_second, hi_coord) = project(&hi_gate, second)?;
    if lo_on_second != lo_gate || hi_on_second != hi_gate {
        return Err(TreeError::internal(
            "projection footprint is an interval but its gates are off the other axis",
        ));
    }
    if (hi_coord - lo_coord).unsigned_abs() != (hi - lo) as u64 {
        return Err(TreeError::internal("shared segment has different extents on the two axes"));
    }
    Ok(AxisRelation::CaseI {
        segment_on_first: (lo, hi),
        segment_on_second: (lo_coord.min(hi_coord), lo_coord.max(hi_coord)),
        length: (hi - lo) as u64,
    })
}
