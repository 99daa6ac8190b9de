//! The tree-specialized criterion: pairwise axis relations, projection
//! unions, fundamental domains, and the ping-pong sets of a certificate.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::ToPrimitive;

use crate::exact_arith::{rational_int, Rational};
use crate::pingpong;

use super::axis::{axis, project, Axis};
use super::isometry::{IsometryClass, TreeIsometry};
use super::relation::{axes_relation, AxisRelation};
use super::vertex::TreeVertex;
use super::TreeError;

/// An open interval `(lo, hi)` on an axis with `hi - lo` equal to the
/// owner's translation length; its translates under the owner tile the
/// axis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalDomain {
    pub axis_index: usize,
    pub lo: Rational,
    pub hi: Rational,
}

impl FundamentalDomain {
    pub fn length(&self) -> Rational {
        &self.hi - &self.lo
    }
}

/// Footprint of one other axis on axis `axis_index`, in axis coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FootprintInterval {
    /// Index of the axis that was projected.
    pub from: usize,
    pub lo: i64,
    pub hi: i64,
}

/// Union of the footprints on one axis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectionSummary {
    pub intervals: Vec<FootprintInterval>,
    /// Convex hull `[min lo, max hi]` of the union.
    pub hull: (i64, i64),
    pub diameter: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SchottkyVerdict {
    /// The projection condition holds: the generators provably generate a
    /// free group of the full rank, discrete in the locally compact tree.
    Certified,
    /// The criterion does not apply (unbounded axis relation) or its
    /// projection inequality fails; nothing is concluded either way.
    Inconclusive { reason: String },
}

impl SchottkyVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, SchottkyVerdict::Certified)
    }
}

/// Everything a criterion run produces: the verdict plus the data needed to
/// report it and to hand ping-pong sets to the engine.
#[derive(Debug, Clone)]
pub struct SchottkyOutcome {
    pub prime: u64,
    pub translation_lengths: Vec<u64>,
    /// Pairwise relations, one per unordered pair `(i, j)`, `i < j`.
    pub relations: Vec<(usize, usize, AxisRelation)>,
    /// Per-generator projection unions; populated when every relation is
    /// applicable.
    pub projections: Vec<ProjectionSummary>,
    /// Chosen fundamental domains; non-empty exactly when certified.
    pub domains: Vec<FundamentalDomain>,
    pub verdict: SchottkyVerdict,
    pub axes: Vec<Axis>,
}

impl SchottkyOutcome {
    /// Ping-pong sets of a certified outcome.
    pub fn ping_pong(&self) -> Result<TreePingPong, TreeError> {
        if !self.verdict.is_certified() {
            return Err(TreeError::internal("ping-pong sets require a certified verdict"));
        }
        pingpong_sets(&self.axes, &self.domains)
    }

    pub fn universe(&self) -> Result<TreeUniverse, TreeError> {
        Ok(TreeUniverse { prime: self.prime, basepoint: self.ping_pong()?.basepoint })
    }

    /// Generator/inverse pairs in the shape the ping-pong engine expects.
    pub fn generator_pairs(&self) -> Vec<(TreeIsometry, TreeIsometry)> {
        self.axes.iter().map(|a| (a.owner().clone(), a.owner().inverse())).collect()
    }
}

/// Decide the criterion for hyperbolic generators over one prime.
///
/// Computes all pairwise axis relations, the projection union `P_i` on each
/// axis, and certifies exactly when `diam(P_i) < l(g_i)` for every `i` (a
/// closed set of diameter `d` fits in an open interval of length `l` iff
/// `d < l`; both sides are integers, so strictness is exact). The chosen
/// `D_i` is centered on the hull of `P_i`.
pub fn schottky_check(generators: &[TreeIsometry]) -> Result<SchottkyOutcome, TreeError> {
    let n = generators.len();
    if n < 2 {
        return Err(TreeError::TooFewGenerators(n));
    }
    let prime = generators[0].prime();
    for g in generators {
        if g.prime() != prime {
            return Err(TreeError::MixedPrimes(prime, g.prime()));
        }
    }
    let mut translation_lengths = Vec::with_capacity(n);
    for (index, g) in generators.iter().enumerate() {
        match g.classify() {
            IsometryClass::Hyperbolic { translation_length } => {
                translation_lengths.push(translation_length)
            }
            IsometryClass::Elliptic => return Err(TreeError::EllipticGenerator { index }),
        }
    }
    let axes: Vec<Axis> = generators.iter().map(axis).collect::<Result<_, _>>()?;

    let mut relations = Vec::new();
    let mut inapplicable: Option<String> = None;
    for i in 0..n {
        for j in i + 1..n {
            let rel = axes_relation(&axes[i], &axes[j])?;
            if let AxisRelation::Inapplicable { reason } = &rel {
                if inapplicable.is_none() {
                    inapplicable =
                        Some(format!("axes of generators {} and {} are {reason}", i + 1, j + 1));
                }
            }
            relations.push((i, j, rel));
        }
    }
    if let Some(reason) = inapplicable {
        return Ok(SchottkyOutcome {
            prime,
            translation_lengths,
            relations,
            projections: Vec::new(),
            domains: Vec::new(),
            verdict: SchottkyVerdict::Inconclusive { reason },
            axes,
        });
    }

    let mut projections = Vec::with_capacity(n);
    for i in 0..n {
        let mut intervals = Vec::with_capacity(n - 1);
        for (a, b, rel) in &relations {
            let footprint = if *a == i {
                rel.footprint_on_first().map(|iv| (*b, iv))
            } else if *b == i {
                rel.footprint_on_second().map(|iv| (*a, iv))
            } else {
                None
            };
            if let Some((from, (lo, hi))) = footprint {
                intervals.push(FootprintInterval { from, lo, hi });
            }
        }
        debug_assert_eq!(intervals.len(), n - 1);
        let hull_lo = intervals.iter().map(|iv| iv.lo).min().expect("n >= 2");
        let hull_hi = intervals.iter().map(|iv| iv.hi).max().expect("n >= 2");
        projections.push(ProjectionSummary {
            intervals,
            hull: (hull_lo, hull_hi),
            diameter: (hull_hi - hull_lo) as u64,
        });
    }

    for (i, summary) in projections.iter().enumerate() {
        if summary.diameter >= translation_lengths[i] {
            let reason = format!(
                "projection union on axis {} has diameter {} >= translation length {}",
                i + 1,
                summary.diameter,
                translation_lengths[i]
            );
            return Ok(SchottkyOutcome {
                prime,
                translation_lengths,
                relations,
                projections,
                domains: Vec::new(),
                verdict: SchottkyVerdict::Inconclusive { reason },
                axes,
            });
        }
    }

    // Center each open domain on the midpoint of the projection hull; any
    // placement containing the hull works, centering maximizes the margin
    // and keeps reports deterministic.
    let mut domains = Vec::with_capacity(n);
    for (i, summary) in projections.iter().enumerate() {
        let midpoint =
            (rational_int(summary.hull.0) + rational_int(summary.hull.1)) / rational_int(2);
        let half_length = rational_int(translation_lengths[i] as i64) / rational_int(2);
        domains.push(FundamentalDomain {
            axis_index: i,
            lo: &midpoint - &half_length,
            hi: &midpoint + &half_length,
        });
    }

    Ok(SchottkyOutcome {
        prime,
        translation_lengths,
        relations,
        projections,
        domains,
        verdict: SchottkyVerdict::Certified,
        axes,
    })
}

/// Which side of its fundamental domain an axis coordinate falls on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RaySide {
    /// Coordinate `>= hi(D_i)`: on the positive ray `A_i^+`.
    Plus,
    /// Coordinate `<= lo(D_i)`: on the negative ray `A_i^-`.
    Minus,
    /// Strictly inside the open domain.
    Domain,
}

/// The ping-pong sets of a certificate: per generator, the rays
/// `A_i^+ = [hi(D_i), +inf)` and `A_i^- = (-inf, lo(D_i)]` in axis
/// coordinates, with membership in `X_i^+ = p_i^-1(A_i^+)` and
/// `X_i^- = p_i^-1(A_i^-)` decided exactly by computing the projection.
#[derive(Debug, Clone)]
pub struct TreePingPong {
    axes: Vec<Axis>,
    domains: Vec<(Rational, Rational)>,
    basepoint: TreeVertex,
}

/// Build ping-pong sets from axes and fundamental domains, checking that
/// each domain's length equals the owner's translation length.
///
/// The basepoint is an axis vertex of the first generator with integer
/// coordinate strictly inside `D_1`; its projection onto every other axis
/// lands inside that axis's domain (it is in the projection union), so the
/// basepoint lies outside all `2n` sets.
pub fn pingpong_sets(
    axes: &[Axis],
    domains: &[FundamentalDomain],
) -> Result<TreePingPong, TreeError> {
    if axes.len() != domains.len() {
        return Err(TreeError::DomainCountMismatch { axes: axes.len(), domains: domains.len() });
    }
    if axes.is_empty() {
        return Err(TreeError::TooFewGenerators(0));
    }
    let mut intervals = Vec::with_capacity(domains.len());
    for (index, domain) in domains.iter().enumerate() {
        let expected = rational_int(axes[index].translation_length() as i64);
        if domain.length() != expected {
            return Err(TreeError::DomainLengthMismatch { index });
        }
        intervals.push((domain.lo.clone(), domain.hi.clone()));
    }
    let first_lo = &intervals[0].0;
    let base_coord = first_lo
        .floor()
        .to_integer()
        .to_i64()
        .ok_or_else(|| TreeError::internal("domain coordinate out of range"))?
        + 1;
    debug_assert!(rational_int(base_coord) > intervals[0].0);
    debug_assert!(rational_int(base_coord) < intervals[0].1);
    let basepoint = axes[0].vertex_at(base_coord);
    Ok(TreePingPong { axes: axes.to_vec(), domains: intervals, basepoint })
}

impl TreePingPong {
    pub fn generator_count(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    /// The ray thresholds `(lo(D_i), hi(D_i))` on axis `i`.
    pub fn domain(&self, i: usize) -> (&Rational, &Rational) {
        (&self.domains[i].0, &self.domains[i].1)
    }

    pub fn basepoint(&self) -> &TreeVertex {
        &self.basepoint
    }

    /// Side of `D_i` the projection of `v` falls on.
    pub fn side(&self, i: usize, v: &TreeVertex) -> Result<RaySide, TreeError> {
        let (_, coordinate) = project(v, &self.axes[i])?;
        Ok(self.side_of_coordinate(i, coordinate))
    }

    pub fn side_of_coordinate(&self, i: usize, coordinate: i64) -> RaySide {
        let c = rational_int(coordinate);
        let (lo, hi) = &self.domains[i];
        if &c >= hi {
            RaySide::Plus
        } else if &c <= lo {
            RaySide::Minus
        } else {
            RaySide::Domain
        }
    }

    pub fn in_plus(&self, i: usize, v: &TreeVertex) -> bool {
        matches!(self.side(i, v).expect("same prime"), RaySide::Plus)
    }

    pub fn in_minus(&self, i: usize, v: &TreeVertex) -> bool {
        matches!(self.side(i, v).expect("same prime"), RaySide::Minus)
    }
}

impl pingpong::SetFamily<TreeVertex> for TreePingPong {
    fn generator_count(&self) -> usize {
        self.generator_count()
    }

    fn in_plus(&self, i: usize, x: &TreeVertex) -> bool {
        TreePingPong::in_plus(self, i, x)
    }

    fn in_minus(&self, i: usize, x: &TreeVertex) -> bool {
        TreePingPong::in_minus(self, i, x)
    }

    /// Rays are closed and projection is continuous, so the preimages are
    /// closed subsets of the tree.
    fn closed_sets(&self) -> bool {
        true
    }
}

/// The tree as a point universe for the ping-pong engine. Locally compact:
/// the tree is locally finite for any prime.
#[derive(Debug, Clone)]
pub struct TreeUniverse {
    prime: u64,
    basepoint: TreeVertex,
}

impl TreeUniverse {
    pub fn new(basepoint: TreeVertex) -> Self {
        TreeUniverse { prime: basepoint.prime(), basepoint }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }
}

impl pingpong::Universe for TreeUniverse {
    type Point = TreeVertex;
    type Element = TreeIsometry;

    fn apply(&self, g: &TreeIsometry, x: &TreeVertex) -> TreeVertex {
        g.apply(x)
    }

    fn basepoint(&self) -> TreeVertex {
        self.basepoint.clone()
    }

    fn neighbors(&self, x: &TreeVertex) -> alloc::vec::Vec<TreeVertex> {
        x.neighbors()
    }

    fn is_locally_compact(&self) -> bool {
        true
    }
}
