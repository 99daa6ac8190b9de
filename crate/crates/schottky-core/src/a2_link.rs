//! Link combinatorics for buildings of type A2-tilde: finite projective
//! planes, chamber opposition, construction of pairwise-opposite chamber
//! pairs through a common point, and the abstract ball-condition check for
//! pairwise opposite isometries.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Signed;

use crate::exact_arith::{is_prime, rational_int, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum A2Error {
    /// Only prime orders are generated (Desarguesian planes over prime
    /// fields).
    NonPrimeOrder(u64),
    NotIncident { point: usize, line: usize },
    BadId { id: usize, count: usize },
    /// `opposite_chamber_pairs` needs `1 <= k <= floor((q + 1) / 2)`.
    PairCountOutOfRange { k: usize, max: usize },
    /// Ragged, asymmetric or otherwise unusable distance data.
    MalformedInput(String),
    /// A translation length or distance is negative where it must not be.
    NegativeData(String),
}

impl fmt::Display for A2Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            A2Error::NonPrimeOrder(q) => write!(f, "prime orders only: {q} is not prime"),
            A2Error::NotIncident { point, line } => {
                write!(f, "point {point} is not on line {line}")
            }
            A2Error::BadId { id, count } => write!(f, "id {id} out of range (count {count})"),
            A2Error::PairCountOutOfRange { k, max } => {
                write!(f, "k = {k} out of range: need 1 <= k <= floor((q+1)/2) = {max}")
            }
            A2Error::MalformedInput(msg) => write!(f, "{msg}"),
            A2Error::NegativeData(msg) => write!(f, "{msg}"),
        }
    }
}

/// The Desarguesian projective plane `PG(2, q)` over the prime field with
/// `q` elements: `q^2 + q + 1` points and as many lines, every line with
/// `q + 1` points and dually.
///
/// Points and lines are normalized homogeneous triples (first nonzero
/// coordinate 1); incidence is the vanishing of the standard bilinear form.
#[derive(Debug, Clone)]
pub struct ProjPlane {
    order: u64,
    points: Vec<[u64; 3]>,
    lines: Vec<[u64; 3]>,
    incidence: Vec<Vec<bool>>,
}

/// An incident point-line pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Chamber {
    pub point: usize,
    pub line: usize,
}

fn normalized_triples(q: u64) -> Vec<[u64; 3]> {
    let mut out = Vec::with_capacity((q * q + q + 1) as usize);
    for y in 0..q {
        for z in 0..q {
            out.push([1, y, z]);
        }
    }
    for z in 0..q {
        out.push([0, 1, z]);
    }
    out.push([0, 0, 1]);
    out
}

fn incident_coords(point: &[u64; 3], line: &[u64; 3], q: u64) -> bool {
    let mut acc = 0u64;
    for k in 0..3 {
        acc = (acc + point[k] * line[k]) % q;
    }
    acc == 0
}

/// Build `PG(2, q)` for prime `q`.
pub fn build_plane(q: u64) -> Result<ProjPlane, A2Error> {
    if !is_prime(q) {
        return Err(A2Error::NonPrimeOrder(q));
    }
    let points = normalized_triples(q);
    let lines = normalized_triples(q);
    let incidence = points
        .iter()
        .map(|p| lines.iter().map(|l| incident_coords(p, l, q)).collect())
        .collect();
    Ok(ProjPlane { order: q, points, lines, incidence })
}

impl ProjPlane {
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    pub fn line_count(&self) -> usize {
        self.lines.len()
    }

    pub fn point_coords(&self, id: usize) -> &[u64; 3] {
        &self.points[id]
    }

    pub fn line_coords(&self, id: usize) -> &[u64; 3] {
        &self.lines[id]
    }

    pub fn incident(&self, point: usize, line: usize) -> bool {
        self.incidence[point][line]
    }

    pub fn points_on_line(&self, line: usize) -> Vec<usize> {
        (0..self.point_count()).filter(|&p| self.incidence[p][line]).collect()
    }

    pub fn lines_through_point(&self, point: usize) -> Vec<usize> {
        (0..self.line_count()).filter(|&l| self.incidence[point][l]).collect()
    }

    /// A chamber, validated to be a flag.
    pub fn chamber(&self, point: usize, line: usize) -> Result<Chamber, A2Error> {
        if point >= self.point_count() {
            return Err(A2Error::BadId { id: point, count: self.point_count() });
        }
        if line >= self.line_count() {
            return Err(A2Error::BadId { id: line, count: self.line_count() });
        }
        if !self.incident(point, line) {
            return Err(A2Error::NotIncident { point, line });
        }
        Ok(Chamber { point, line })
    }

    /// All chambers (incident point-line flags), in (point, line) order.
    pub fn chambers(&self) -> Vec<Chamber> {
        let mut out = Vec::new();
        for point in 0..self.point_count() {
            for line in 0..self.line_count() {
                if self.incident(point, line) {
                    out.push(Chamber { point, line });
                }
            }
        }
        out
    }
}

/// Chamber opposition: `(p1, L1)` and `(p2, L2)` are opposite iff
/// `p1` is not on `L2` and `p2` is not on `L1`.
pub fn opposite(plane: &ProjPlane, c1: &Chamber, c2: &Chamber) -> bool {
    !plane.incident(c1.point, c2.line) && !plane.incident(c2.point, c1.line)
}

/// Pairwise opposite chambers through a common point: fix a point `p`,
/// take the `q + 1` lines through it and a point `p_i != p` on each; the
/// chambers `(p_i, L_i)` are pairwise opposite (`L_i` and `L_j` meet only
/// in `p`, which neither `p_i` nor `p_j` equals), and `k` disjoint pairs
/// of them are returned for `1 <= k <= floor((q + 1) / 2)`.
pub fn opposite_chamber_pairs(plane: &ProjPlane, k: usize) -> Result<Vec<(Chamber, Chamber)>, A2Error> {
    let max = (plane.order() as usize + 1) / 2;
    if k == 0 || k > max {
        return Err(A2Error::PairCountOutOfRange { k, max });
    }
    let hub = 0usize;
    let lines = plane.lines_through_point(hub);
    debug_assert_eq!(lines.len(), plane.order() as usize + 1);
    let mut chambers = Vec::with_capacity(2 * k);
    for &line in lines.iter().take(2 * k) {
        let point = plane
            .points_on_line(line)
            .into_iter()
            .find(|&p| p != hub)
            .expect("every line has q + 1 >= 2 points");
        chambers.push(Chamber { point, line });
    }
    Ok(chambers.chunks_exact(2).map(|pair| (pair[0], pair[1])).collect())
}

/// Abstract descriptors for pairwise opposite hyperbolic isometries: the
/// translation lengths, the opposition flags, and the exact distance table
/// of the pairwise axis-intersection points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OppositionInput {
    pub translation_lengths: Vec<Rational>,
    /// Symmetric opposition flags; the diagonal is ignored.
    pub pairwise_opposite: Vec<Vec<bool>>,
    /// Symmetric, zero-diagonal distance table of the intersection points.
    pub distances: Vec<Vec<Rational>>,
    pub locally_compact: bool,
}

/// Where a certifying ball center was found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CenterWitness {
    /// One of the intersection points, with the exact covering radius.
    InputPoint { index: usize, radius: Rational },
    /// The midpoint of two input points, with the exact upper bound on the
    /// squared covering radius from the CAT(0) midpoint inequality.
    Midpoint { a: usize, b: usize, radius_squared_bound: Rational },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OppositionVerdict {
    /// All opposition flags hold and the intersection points provably fit
    /// in an open ball of radius at most half the minimum translation
    /// length; the isometries generate a free group of rank `free_rank`,
    /// discrete when the space is locally compact.
    Certified { center: CenterWitness, free_rank: usize, discrete: bool },
    Rejected { reason: String },
    /// The two center searches failed but the diameter does not rule a
    /// ball out; soundness over completeness, no certificate is issued.
    Inconclusive { reason: String },
}

impl OppositionVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, OppositionVerdict::Certified { .. })
    }
}

fn validate_input(input: &OppositionInput) -> Result<(), A2Error> {
    let n = input.translation_lengths.len();
    if n == 0 {
        return Err(A2Error::MalformedInput("no isometry descriptors".into()));
    }
    for l in &input.translation_lengths {
        if !l.is_positive() {
            return Err(A2Error::NegativeData("translation lengths must be positive".into()));
        }
    }
    if input.pairwise_opposite.len() != n
        || input.pairwise_opposite.iter().any(|row| row.len() != n)
    {
        return Err(A2Error::MalformedInput(format!(
            "opposition matrix must be {n} x {n}"
        )));
    }
    let m = input.distances.len();
    if m == 0 {
        return Err(A2Error::MalformedInput("missing distances".into()));
    }
    for (i, row) in input.distances.iter().enumerate() {
        if row.len() != m {
            return Err(A2Error::MalformedInput(format!(
                "distance table must be square: row {i} has {} entries, expected {m}",
                row.len()
            )));
        }
        for (j, d) in row.iter().enumerate() {
            if d.is_negative() {
                return Err(A2Error::NegativeData(format!("distance ({i}, {j}) is negative")));
            }
            if *d != input.distances[j][i] {
                return Err(A2Error::MalformedInput(format!(
                    "distance table not symmetric at ({i}, {j})"
                )));
            }
        }
        if !row[i].is_zero() {
            return Err(A2Error::MalformedInput(format!("distance ({i}, {i}) is not zero")));
        }
    }
    Ok(())
}

use num_traits::Zero;

/// Decide the ball condition for pairwise opposite isometries from the
/// distance table alone.
///
/// Certifies when some intersection point, or the midpoint of some pair of
/// them (bounded through the CAT(0) midpoint inequality
/// `d(m, x)^2 <= d(a, x)^2 / 2 + d(b, x)^2 / 2 - d(a, b)^2 / 4`),
/// covers every point strictly within half the minimum translation length.
/// Rejects when the diameter alone rules any such ball out. Anything in
/// between is inconclusive: this module cannot see the space, and it never
/// emits a false certificate.
pub fn opposition_check(input: &OppositionInput) -> Result<OppositionVerdict, A2Error> {
    validate_input(input)?;
    let n = input.translation_lengths.len();
    for i in 0..n {
        for j in 0..n {
            if i != j && !input.pairwise_opposite[i][j] {
                return Ok(OppositionVerdict::Rejected {
                    reason: format!("not pairwise opposite: flags for ({i}, {j}) are false"),
                });
            }
        }
    }
    let min_length = input
        .translation_lengths
        .iter()
        .min()
        .expect("validated non-empty")
        .clone();
    let radius_limit = &min_length / rational_int(2);
    let radius_limit_sq = &radius_limit * &radius_limit;
    let m = input.distances.len();
    let d = |i: usize, j: usize| &input.distances[i][j];

    // An input point as center: exact covering radius.
    let mut best: Option<(Rational, usize)> = None;
    for c in 0..m {
        let radius = (0..m).map(|k| d(c, k).clone()).max().expect("m >= 1");
        if best.as_ref().map_or(true, |(r, _)| radius < *r) {
            best = Some((radius, c));
        }
    }
    let (best_radius, best_center) = best.expect("m >= 1");
    if best_radius < radius_limit {
        return Ok(OppositionVerdict::Certified {
            center: CenterWitness::InputPoint { index: best_center, radius: best_radius },
            free_rank: n,
            discrete: input.locally_compact,
        });
    }

    // A midpoint as center: squared-radius bound from the midpoint
    // inequality, exact in rational arithmetic.
    let quarter = Rational::new(1.into(), 4.into());
    let half = Rational::new(1.into(), 2.into());
    for a in 0..m {
        for b in a + 1..m {
            let dab_sq = d(a, b) * d(a, b);
            let mut worst = Rational::zero();
            for k in 0..m {
                let bound =
                    (d(a, k) * d(a, k) + d(b, k) * d(b, k)) * &half - &dab_sq * &quarter;
                if bound > worst {
                    worst = bound;
                }
            }
            if worst < radius_limit_sq {
                return Ok(OppositionVerdict::Certified {
                    center: CenterWitness::Midpoint { a, b, radius_squared_bound: worst },
                    free_rank: n,
                    discrete: input.locally_compact,
                });
            }
        }
    }

    // Diameter obstruction: points inside an open ball of radius at most
    // half the minimum length are pairwise strictly closer than the
    // minimum length.
    let diameter = (0..m)
        .flat_map(|i| (0..m).map(move |j| (i, j)))
        .map(|(i, j)| d(i, j).clone())
        .max()
        .expect("m >= 1");
    if diameter >= min_length {
        return Ok(OppositionVerdict::Rejected {
            reason: format!(
                "diameter obstruction: intersection points at distance {} cannot lie in an open \
                 ball of radius at most {}",
                crate::exact_arith::format_rational(&diameter),
                crate::exact_arith::format_rational(&radius_limit)
            ),
        });
    }
    Ok(OppositionVerdict::Inconclusive {
        reason: "no certifying center among the input points and their pairwise midpoints".into(),
    })
}
