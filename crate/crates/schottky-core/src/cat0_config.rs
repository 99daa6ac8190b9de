//! The general-form criterion over abstract configuration descriptors:
//! axes as coordinate lines, pairwise relations with explicit angles, and
//! caller-supplied projection footprints.
//!
//! This covers what the tree specialization makes automatic. Angles are
//! input data checked for exact equality with pi (as exact rational
//! multiples of pi), not computed: the hypotheses are verified, not
//! re-derived, for spaces this crate has no geometry engine for.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed};

use crate::bt_tree::{AxisRelation, SchottkyOutcome, SchottkyVerdict};
use crate::exact_arith::{rational_int, Rational};

/// An angle as an exact rational multiple of pi.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Angle(pub Rational);

impl Angle {
    pub fn pi() -> Self {
        Angle(Rational::one())
    }

    pub fn is_pi(&self) -> bool {
        self.0.is_one()
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_one() {
            write!(f, "pi")
        } else {
            write!(f, "{}·pi", crate::exact_arith::format_rational(&self.0))
        }
    }
}

/// A closed bounded coordinate interval `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self, ConfigError> {
        if lo > hi {
            return Err(ConfigError::EmptyInterval);
        }
        Ok(Interval { lo, hi })
    }

    pub fn point(at: Rational) -> Self {
        Interval { lo: at.clone(), hi: at }
    }

    pub fn length(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]",
            crate::exact_arith::format_rational(&self.lo),
            crate::exact_arith::format_rational(&self.hi)
        )
    }
}

/// An axis known only through its id and translation length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbstractAxis {
    pub id: String,
    pub translation_length: Rational,
}

/// Case data of one unordered pair of axes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelationKind {
    /// Bounded shared segment, with its coordinate extents on both axes and
    /// the two angles at its endpoints.
    CaseI {
        segment_on_first: Interval,
        segment_on_second: Interval,
        angles: [Angle; 2],
    },
    /// Disjoint axes joined by a bridge, with the four angles between the
    /// bridge and the axes.
    CaseII { bridge_length: Rational, angles: [Angle; 4] },
}

/// Relation record for the pair `(first, second)` of axis indices,
/// including the projection footprints `p_first(A_second)` and
/// `p_second(A_first)` in the respective axis coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairRelation {
    pub first: usize,
    pub second: usize,
    pub kind: RelationKind,
    pub footprint_on_first: Interval,
    pub footprint_on_second: Interval,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConfigError {
    TooFewAxes(usize),
    NonPositiveLength { axis: usize },
    BadAxisIndex { index: usize, count: usize },
    SelfPair { axis: usize },
    MissingPair { first: usize, second: usize },
    DuplicatePair { first: usize, second: usize },
    EmptyInterval,
    NonPositiveBridge { first: usize, second: usize },
    /// Case I extents on the two axes have different lengths; it is the
    /// same segment.
    SegmentExtentMismatch { first: usize, second: usize },
    /// Case I segment is not contained in the supplied footprint.
    SegmentOutsideFootprint { first: usize, second: usize },
    /// Conversion from a tree relation with an unbounded intersection.
    InapplicableRelation(String),
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::TooFewAxes(n) => write!(f, "need at least 2 axes, got {n}"),
            ConfigError::NonPositiveLength { axis } => {
                write!(f, "axis {axis} has non-positive translation length")
            }
            ConfigError::BadAxisIndex { index, count } => {
                write!(f, "axis index {index} out of range (count {count})")
            }
            ConfigError::SelfPair { axis } => write!(f, "relation pairs axis {axis} with itself"),
            ConfigError::MissingPair { first, second } => {
                write!(f, "missing relation for the pair ({first}, {second})")
            }
            ConfigError::DuplicatePair { first, second } => {
                write!(f, "duplicate relation for the pair ({first}, {second})")
            }
            ConfigError::EmptyInterval => write!(f, "interval has lo > hi"),
            ConfigError::NonPositiveBridge { first, second } => {
                write!(f, "pair ({first}, {second}) has a non-positive bridge length")
            }
            ConfigError::SegmentExtentMismatch { first, second } => write!(
                f,
                "pair ({first}, {second}): segment extents on the two axes differ in length"
            ),
            ConfigError::SegmentOutsideFootprint { first, second } => write!(
                f,
                "pair ({first}, {second}): shared segment is not contained in the footprint"
            ),
            ConfigError::InapplicableRelation(reason) => {
                write!(f, "tree relation is inapplicable: {reason}")
            }
        }
    }
}

/// Outcome of the configuration check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConfigVerdict {
    Certified { domains: Vec<(Rational, Rational)>, warnings: Vec<String> },
    Rejected { reason: String, warnings: Vec<String> },
}

impl ConfigVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, ConfigVerdict::Certified { .. })
    }

    pub fn warnings(&self) -> &[String] {
        match self {
            ConfigVerdict::Certified { warnings, .. } => warnings,
            ConfigVerdict::Rejected { warnings, .. } => warnings,
        }
    }
}

/// Check the criterion on abstract data: every listed angle must equal pi
/// exactly, and on every axis the union of the footprints must fit in an
/// open interval of the translation length, decided by
/// `diam(union) < length` in exact rational arithmetic. On success the
/// centered domain choices are reported.
pub fn check_configuration(
    axes: &[AbstractAxis],
    relations: &[PairRelation],
) -> Result<ConfigVerdict, ConfigError> {
    let n = axes.len();
    if n < 2 {
        return Err(ConfigError::TooFewAxes(n));
    }
    for (axis, a) in axes.iter().enumerate() {
        if !a.translation_length.is_positive() {
            return Err(ConfigError::NonPositiveLength { axis });
        }
    }

    // Exactly one relation per unordered pair.
    let mut seen = alloc::vec![alloc::vec![false; n]; n];
    for rel in relations {
        for index in [rel.first, rel.second] {
            if index >= n {
                return Err(ConfigError::BadAxisIndex { index, count: n });
            }
        }
        if rel.first == rel.second {
            return Err(ConfigError::SelfPair { axis: rel.first });
        }
        let (a, b) = (rel.first.min(rel.second), rel.first.max(rel.second));
        if seen[a][b] {
            return Err(ConfigError::DuplicatePair { first: a, second: b });
        }
        seen[a][b] = true;
    }
    for a in 0..n {
        for b in a + 1..n {
            if !seen[a][b] {
                return Err(ConfigError::MissingPair { first: a, second: b });
            }
        }
    }

    // Structural validation of the case data against the footprints.
    for rel in relations {
        match &rel.kind {
            RelationKind::CaseI { segment_on_first, segment_on_second, .. } => {
                if segment_on_first.length() != segment_on_second.length() {
                    return Err(ConfigError::SegmentExtentMismatch {
                        first: rel.first,
                        second: rel.second,
                    });
                }
                if !rel.footprint_on_first.contains_interval(segment_on_first)
                    || !rel.footprint_on_second.contains_interval(segment_on_second)
                {
                    return Err(ConfigError::SegmentOutsideFootprint {
                        first: rel.first,
                        second: rel.second,
                    });
                }
            }
            RelationKind::CaseII { bridge_length, .. } => {
                if !bridge_length.is_positive() {
                    return Err(ConfigError::NonPositiveBridge {
                        first: rel.first,
                        second: rel.second,
                    });
                }
            }
        }
    }

    let mut warnings = Vec::new();
    if n == 2 {
        // With two generators, case I forces the shared segment to be
        // strictly shorter than both translation lengths; flag data that
        // contradicts this derived fact.
        for rel in relations {
            if let RelationKind::CaseI { segment_on_first, .. } = &rel.kind {
                let seg = segment_on_first.length();
                for (axis, a) in axes.iter().enumerate() {
                    if seg >= a.translation_length {
                        warnings.push(format!(
                            "case I segment of length {} is not shorter than the translation \
                             length {} of axis {}, which no valid two-generator configuration \
                             allows",
                            crate::exact_arith::format_rational(&seg),
                            crate::exact_arith::format_rational(&a.translation_length),
                            axes[axis].id
                        ));
                    }
                }
            }
        }
    }

    // Hypothesis (a): every listed angle is exactly pi.
    for rel in relations {
        let angles: &[Angle] = match &rel.kind {
            RelationKind::CaseI { angles, .. } => angles,
            RelationKind::CaseII { angles, .. } => angles,
        };
        for angle in angles {
            if !angle.is_pi() {
                return Ok(ConfigVerdict::Rejected {
                    reason: format!(
                        "angle hypothesis: pair ({}, {}) lists an angle of {}, expected pi",
                        axes[rel.first].id, axes[rel.second].id, angle
                    ),
                    warnings,
                });
            }
        }
    }

    // Hypothesis (b): the footprint union fits in an open interval of the
    // translation length on every axis.
    let mut domains = Vec::with_capacity(n);
    for (i, axis) in axes.iter().enumerate() {
        let mut hull: Option<(Rational, Rational)> = None;
        for rel in relations {
            let footprint = if rel.first == i {
                &rel.footprint_on_first
            } else if rel.second == i {
                &rel.footprint_on_second
            } else {
                continue;
            };
            hull = Some(match hull {
                None => (footprint.lo.clone(), footprint.hi.clone()),
                Some((lo, hi)) => (lo.min(footprint.lo.clone()), hi.max(footprint.hi.clone())),
            });
        }
        let (lo, hi) = hull.expect("every axis occurs in n-1 >= 1 relations");
        let diameter = &hi - &lo;
        if diameter >= axis.translation_length {
            return Ok(ConfigVerdict::Rejected {
                reason: format!(
                    "projection condition fails on axis {}: footprint union has diameter {} >= \
                     translation length {}",
                    axis.id,
                    crate::exact_arith::format_rational(&diameter),
                    crate::exact_arith::format_rational(&axis.translation_length)
                ),
                warnings,
            });
        }
        let midpoint = (&lo + &hi) / rational_int(2);
        let half = &axis.translation_length / rational_int(2);
        domains.push((&midpoint - &half, &midpoint + &half));
    }

    Ok(ConfigVerdict::Certified { domains, warnings })
}

/// Convert a tree relation into abstract pair data: tree angles are
/// automatically pi, integer coordinates become rationals, and the
/// footprints are the segment (case I) or the bridge feet (case II).
pub fn relation_from_tree(
    first: usize,
    second: usize,
    relation: &AxisRelation,
) -> Result<PairRelation, ConfigError> {
    let int_interval = |(lo, hi): (i64, i64)| Interval {
        lo: rational_int(lo),
        hi: rational_int(hi),
    };
    match relation {
        AxisRelation::CaseI { segment_on_first, segment_on_second, .. } => {
            let seg_first = int_interval(*segment_on_first);
            let seg_second = int_interval(*segment_on_second);
            Ok(PairRelation {
                first,
                second,
                footprint_on_first: seg_first.clone(),
                footprint_on_second: seg_second.clone(),
                kind: RelationKind::CaseI {
                    segment_on_first: seg_first,
                    segment_on_second: seg_second,
                    angles: [Angle::pi(), Angle::pi()],
                },
            })
        }
        AxisRelation::CaseII { foot_on_first, foot_on_second, bridge_length } => Ok(PairRelation {
            first,
            second,
            footprint_on_first: Interval::point(rational_int(foot_on_first.1)),
            footprint_on_second: Interval::point(rational_int(foot_on_second.1)),
            kind: RelationKind::CaseII {
                bridge_length: rational_int(*bridge_length as i64),
                angles: [Angle::pi(), Angle::pi(), Angle::pi(), Angle::pi()],
            },
        }),
        AxisRelation::Inapplicable { reason } => {
            Err(ConfigError::InapplicableRelation(reason.to_string()))
        }
    }
}

/// Lift a whole tree outcome into abstract configuration data, for
/// cross-checking the two checkers against each other.
pub fn config_from_tree(
    outcome: &SchottkyOutcome,
) -> Result<(Vec<AbstractAxis>, Vec<PairRelation>), ConfigError> {
    if let SchottkyVerdict::Inconclusive { reason } = &outcome.verdict {
        if outcome.relations.iter().any(|(_, _, rel)| !rel.is_applicable()) {
            return Err(ConfigError::InapplicableRelation(reason.clone()));
        }
    }
    let axes = outcome
        .translation_lengths
        .iter()
        .enumerate()
        .map(|(i, &l)| AbstractAxis {
            id: format!("g{}", i + 1),
            translation_length: rational_int(l as i64),
        })
        .collect();
    let relations = outcome
        .relations
        .iter()
        .map(|(i, j, rel)| relation_from_tree(*i, *j, rel))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((axes, relations))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn axis(id: &str, length: i64) -> AbstractAxis {
        AbstractAxis { id: id.into(), translation_length: rational_int(length) }
    }

    fn point_footprints_case_ii(bridge: i64) -> PairRelation {
        PairRelation {
            first: 0,
            second: 1,
            kind: RelationKind::CaseII {
                bridge_length: rational_int(bridge),
                angles: [Angle::pi(), Angle::pi(), Angle::pi(), Angle::pi()],
            },
            footprint_on_first: Interval::point(rational_int(0)),
            footprint_on_second: Interval::point(rational_int(5)),
        }
    }

    #[test]
    fn case_ii_with_point_footprints_is_certified() {
        let axes = [axis("A1", 2), axis("A2", 2)];
        let verdict = check_configuration(&axes, &[point_footprints_case_ii(3)]).unwrap();
        assert!(verdict.is_certified());
    }

    #[test]
    fn case_i_segment_longer_than_translation_length_rejected() {
        let axes = [axis("A1", 2), axis("A2", 2)];
        let seg1 = Interval::new(rational_int(0), rational_int(3)).unwrap();
        let seg2 = Interval::new(rational_int(-3), rational_int(0)).unwrap();
        let rel = PairRelation {
            first: 0,
            second: 1,
            footprint_on_first: seg1.clone(),
            footprint_on_second: seg2.clone(),
            kind: RelationKind::CaseI {
                segment_on_first: seg1,
                segment_on_second: seg2,
                angles: [Angle::pi(), Angle::pi()],
            },
        };
        match check_configuration(&axes, &[rel]).unwrap() {
            ConfigVerdict::Rejected { reason, warnings } => {
                assert!(reason.contains("projection condition"));
                assert!(!warnings.is_empty(), "two-generator case I warning expected");
            }
            ConfigVerdict::Certified { .. } => panic!("diameter 3 cannot fit in length 2"),
        }
    }

    #[test]
    fn non_straight_angle_rejected() {
        let axes = [axis("A1", 2), axis("A2", 2)];
        let seg = Interval::point(rational_int(0));
        let rel = PairRelation {
            first: 0,
            second: 1,
            footprint_on_first: seg.clone(),
            footprint_on_second: seg.clone(),
            kind: RelationKind::CaseI {
                segment_on_first: seg.clone(),
                segment_on_second: seg,
                angles: [Angle(Rational::new(1.into(), 2.into())), Angle::pi()],
            },
        };
        match check_configuration(&axes, &[rel]).unwrap() {
            ConfigVerdict::Rejected { reason, .. } => assert!(reason.contains("angle hypothesis")),
            ConfigVerdict::Certified { .. } => panic!("right angle must reject"),
        }
    }

    #[test]
    fn missing_pair_is_an_error() {
        let axes = [axis("A1", 2), axis("A2", 2), axis("A3", 2)];
        let err = check_configuration(&axes, &[point_footprints_case_ii(1)]).unwrap_err();
        assert_eq!(err, ConfigError::MissingPair { first: 0, second: 2 });
    }

    #[test]
    fn non_positive_bridge_is_an_error() {
        let axes = [axis("A1", 2), axis("A2", 2)];
        let err = check_configuration(&axes, &[point_footprints_case_ii(0)]).unwrap_err();
        assert_eq!(err, ConfigError::NonPositiveBridge { first: 0, second: 1 });
    }

    #[test]
    fn segment_outside_footprint_is_an_error() {
        let axes = [axis("A1", 4), axis("A2", 4)];
        let seg = Interval::new(rational_int(0), rational_int(1)).unwrap();
        let rel = PairRelation {
            first: 0,
            second: 1,
            footprint_on_first: Interval::point(rational_int(0)),
            footprint_on_second: seg.clone(),
            kind: RelationKind::CaseI {
                segment_on_first: seg.clone(),
                segment_on_second: seg,
                angles: [Angle::pi(), Angle::pi()],
            },
        };
        let err = check_configuration(&axes, &[rel]).unwrap_err();
        assert_eq!(err, ConfigError::SegmentOutsideFootprint { first: 0, second: 1 });
    }

    #[test]
    fn certified_domains_have_the_axis_lengths() {
        let axes = [axis("A1", 4), axis("A2", 6)];
        match check_configuration(&axes, &[point_footprints_case_ii(2)]).unwrap() {
            ConfigVerdict::Certified { domains, .. } => {
                assert_eq!(&domains[0].1 - &domains[0].0, rational_int(4));
                assert_eq!(&domains[1].1 - &domains[1].0, rational_int(6));
            }
            ConfigVerdict::Rejected { reason, .. } => panic!("unexpected rejection: {reason}"),
        }
    }
}
