//! The abstract ping-pong engine: given generators acting on a point
//! universe and candidate sets `X_i^+`, `X_i^-`, falsify the hypotheses on
//! deterministic samples and trace words through the sets.
//!
//! The hypotheses quantify over the whole universe, so sampling can only
//! refute them; exact verification is the tree module's certificate, and
//! the engine's reports say "no violation found in N checks" rather than
//! claiming a proof.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// A set with a group action, sampled through a basepoint and a neighbor
/// relation. `apply` must be an action: identity fixes points and
/// composition corresponds to successive application.
pub trait Universe {
    type Point: Clone + Ord;
    type Element: Clone;

    fn apply(&self, g: &Self::Element, x: &Self::Point) -> Self::Point;
    /// A designated point outside the union of the candidate sets.
    fn basepoint(&self) -> Self::Point;
    /// Finitely many neighbors, in a deterministic order.
    fn neighbors(&self, x: &Self::Point) -> Vec<Self::Point>;
    fn is_locally_compact(&self) -> bool;
}

/// Membership predicates for the `2n` candidate sets.
pub trait SetFamily<P> {
    fn generator_count(&self) -> usize;
    fn in_plus(&self, i: usize, x: &P) -> bool;
    fn in_minus(&self, i: usize, x: &P) -> bool;
    /// Caller-asserted: every set is closed in the universe's topology.
    fn closed_sets(&self) -> bool;

    /// Membership in `Y`, the union of all candidate sets.
    fn in_union(&self, x: &P) -> bool {
        (0..self.generator_count()).any(|i| self.in_plus(i, x) || self.in_minus(i, x))
    }
}

/// Name of one candidate set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct SetLabel {
    pub generator: usize,
    pub positive: bool,
}

impl fmt::Display for SetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X_{}^{}", self.generator + 1, if self.positive { "+" } else { "-" })
    }
}

fn memberships<P, F: SetFamily<P> + ?Sized>(family: &F, x: &P) -> Vec<SetLabel> {
    let mut labels = Vec::new();
    for i in 0..family.generator_count() {
        if family.in_plus(i, x) {
            labels.push(SetLabel { generator: i, positive: true });
        }
        if family.in_minus(i, x) {
            labels.push(SetLabel { generator: i, positive: false });
        }
    }
    labels
}

/// One letter of a word: a generator index and whether it is inverted.
/// Letters order as `g_1 < g_1^-1 < g_2 < g_2^-1 < ...`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn cancels(&self, other: &Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }
}

/// A freely reduced word: no adjacent cancelling pair.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ReducedWord {
    letters: Vec<Letter>,
}

impl ReducedWord {
    pub fn new(letters: Vec<Letter>) -> Result<Self, PingPongError> {
        for (pos, pair) in letters.windows(2).enumerate() {
            if pair[0].cancels(&pair[1]) {
                return Err(PingPongError::NotReduced { position: pos });
            }
        }
        Ok(ReducedWord { letters })
    }

    pub fn empty() -> Self {
        ReducedWord { letters: Vec::new() }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Length-lexicographic comparison: the enumeration order of words.
    pub fn cmp_enumeration(&self, other: &ReducedWord) -> core::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| self.letters.cmp(&other.letters))
    }
}

impl fmt::Display for ReducedWord {
    /// Case-encoded: `a b c ...` for generators, `A B C ...` for inverses.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        for (k, letter) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            if letter.generator < 26 {
                let base = if letter.inverse { b'A' } else { b'a' };
                write!(f, "{}", (base + letter.generator as u8) as char)?;
            } else if letter.inverse {
                write!(f, "G{}", letter.generator + 1)?;
            } else {
                write!(f, "g{}", letter.generator + 1)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PingPongError {
    TooFewGenerators(usize),
    FamilySizeMismatch { family: usize, generators: usize },
    EmptySampleSource,
    NotReduced { position: usize },
    LetterOutOfRange { index: usize, count: usize },
    /// `trace_word` requires a start point outside the union.
    StartInsideUnion,
}

impl fmt::Display for PingPongError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PingPongError::TooFewGenerators(n) => {
                write!(f, "ping-pong needs at least 2 generators, got {n}")
            }
            PingPongError::FamilySizeMismatch { family, generators } => {
                write!(f, "set family covers {family} generators but {generators} were supplied")
            }
            PingPongError::EmptySampleSource => write!(f, "empty sample source"),
            PingPongError::NotReduced { position } => {
                write!(f, "word is not reduced: cancelling pair at position {position}")
            }
            PingPongError::LetterOutOfRange { index, count } => {
                write!(f, "letter refers to generator {index} but only {count} exist")
            }
            PingPongError::StartInsideUnion => {
                write!(f, "trace must start outside the union of the candidate sets")
            }
        }
    }
}

/// A found counterexample to one of the hypotheses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// The basepoint lies in a candidate set: the sets cover the witness.
    BasepointCovered { label: SetLabel },
    /// Two candidate sets share a sampled point.
    NotDisjoint { sample_index: usize, first: SetLabel, second: SetLabel },
    /// `g_i (X \ X_i^-)` escaped `X_i^+` (or the inverse containment failed).
    ContainmentFailed { sample_index: usize, generator: usize, inverse: bool },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BasepointCovered { label } => {
                write!(f, "basepoint lies in {label}; the sets must not cover the universe")
            }
            Violation::NotDisjoint { sample_index, first, second } => {
                write!(f, "sample {sample_index} lies in both {first} and {second}")
            }
            Violation::ContainmentFailed { sample_index, generator, inverse } => {
                let (g, from, to) = if *inverse {
                    ("g^-1", "+", "-")
                } else {
                    ("g", "-", "+")
                };
                write!(
                    f,
                    "sample {sample_index}: {g}_{} of a point outside X^{from} left X^{to}",
                    generator + 1
                )
            }
        }
    }
}

/// Result of a sampled hypothesis check. Deterministic in
/// `(seed, sample_count)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisReport {
    pub generators: usize,
    pub seed: u64,
    pub samples: usize,
    pub checks_run: usize,
    /// First violation in sample order, if any.
    pub violation: Option<Violation>,
    /// `2n x 2n` co-membership counts over the samples, indexed by
    /// `2 * generator + (negative ray)`; the diagonal counts set occupancy.
    pub co_membership: Vec<Vec<usize>>,
}

impl HypothesisReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

fn label_slot(label: &SetLabel) -> usize {
    2 * label.generator + usize::from(!label.positive)
}

/// Deterministic sample set: the basepoint, its one-letter images, a BFS
/// ball of radius 5 around it, then images under seeded random short words
/// until `sample_count` points are collected (or the attempt budget runs
/// out).
fn collect_samples<U: Universe>(
    universe: &U,
    generators: &[(U::Element, U::Element)],
    sample_count: usize,
    seed: u64,
) -> Vec<U::Point> {
    let mut seen: BTreeSet<U::Point> = BTreeSet::new();
    let mut ordered: Vec<U::Point> = Vec::with_capacity(sample_count);
    let push = |x: U::Point, ordered: &mut Vec<U::Point>, seen: &mut BTreeSet<U::Point>| {
        if ordered.len() < sample_count && seen.insert(x.clone()) {
            ordered.push(x);
        }
    };
    let base = universe.basepoint();
    push(base.clone(), &mut ordered, &mut seen);
    for (g, g_inv) in generators {
        push(universe.apply(g, &base), &mut ordered, &mut seen);
        push(universe.apply(g_inv, &base), &mut ordered, &mut seen);
    }
    // BFS ball of radius 5.
    let mut frontier = alloc::vec![base.clone()];
    for _ in 0..5 {
        if ordered.len() >= sample_count {
            break;
        }
        let mut next = Vec::new();
        for x in &frontier {
            for nb in universe.neighbors(x) {
                if ordered.len() >= sample_count {
                    break;
                }
                if seen.insert(nb.clone()) {
                    ordered.push(nb.clone());
                    next.push(nb);
                }
            }
        }
        frontier = next;
    }
    // Images of the basepoint under random short reduced words.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut attempts = 0usize;
    let budget = sample_count.saturating_mul(100).max(1000);
    while ordered.len() < sample_count && attempts < budget {
        attempts += 1;
        let len = 1 + (rng.next_u32() as usize) % 8;
        let mut point = base.clone();
        let mut prev: Option<(usize, bool)> = None;
        for _ in 0..len {
            let mut idx = (rng.next_u32() as usize) % (2 * generators.len());
            if let Some((pg, pinv)) = prev {
                // Avoid an immediate cancellation so the word stays reduced.
                while idx / 2 == pg && (idx % 2 == 1) != pinv {
                    idx = (rng.next_u32() as usize) % (2 * generators.len());
                }
            }
            let (g, g_inv) = &generators[idx / 2];
            let inverse = idx % 2 == 1;
            point = universe.apply(if inverse { g_inv } else { g }, &point);
            prev = Some((idx / 2, inverse));
        }
        push(point, &mut ordered, &mut seen);
    }
    ordered
}

/// Check disjointness, non-coverage and both containments of the Ping Pong
/// Lemma on deterministic samples. Returns at the first violation, in
/// sample order.
pub fn verify_hypotheses<U, F>(
    universe: &U,
    family: &F,
    generators: &[(U::Element, U::Element)],
    sample_count: usize,
    seed: u64,
) -> Result<HypothesisReport, PingPongError>
where
    U: Universe,
    F: SetFamily<U::Point>,
{
    let n = generators.len();
    if n < 2 {
        return Err(PingPongError::TooFewGenerators(n));
    }
    if family.generator_count() != n {
        return Err(PingPongError::FamilySizeMismatch {
            family: family.generator_count(),
            generators: n,
        });
    }
    if sample_count == 0 {
        return Err(PingPongError::EmptySampleSource);
    }

    let mut checks_run = 0usize;
    let mut co_membership = alloc::vec![alloc::vec![0usize; 2 * n]; 2 * n];
    let mut violation = None;

    // Non-coverage witness: the basepoint must avoid every candidate set.
    let base_labels = memberships(family, &universe.basepoint());
    checks_run += 2 * n;
    if let Some(label) = base_labels.first() {
        violation = Some(Violation::BasepointCovered { label: *label });
    }

    let samples = collect_samples(universe, generators, sample_count, seed);
    // Phase 1: disjointness on every sample (this also fills the
    // co-membership matrix), reporting the least sample index.
    if violation.is_none() {
        for (sample_index, x) in samples.iter().enumerate() {
            let labels = memberships(family, x);
            checks_run += 2 * n;
            for a in &labels {
                for b in &labels {
                    if a < b {
                        co_membership[label_slot(a)][label_slot(b)] += 1;
                        co_membership[label_slot(b)][label_slot(a)] += 1;
                    }
                }
                co_membership[label_slot(a)][label_slot(a)] += 1;
            }
            if labels.len() > 1 && violation.is_none() {
                violation = Some(Violation::NotDisjoint {
                    sample_index,
                    first: labels[0],
                    second: labels[1],
                });
            }
        }
    }
    // Phase 2: the two containments on every sample.
    if violation.is_none() {
        'containment: for (sample_index, x) in samples.iter().enumerate() {
            for (i, (g, g_inv)) in generators.iter().enumerate() {
                if !family.in_minus(i, x) {
                    checks_run += 1;
                    if !family.in_plus(i, &universe.apply(g, x)) {
                        violation = Some(Violation::ContainmentFailed {
                            sample_index,
                            generator: i,
                            inverse: false,
                        });
                        break 'containment;
                    }
                }
                if !family.in_plus(i, x) {
                    checks_run += 1;
                    if !family.in_minus(i, &universe.apply(g_inv, x)) {
                        violation = Some(Violation::ContainmentFailed {
                            sample_index,
                            generator: i,
                            inverse: true,
                        });
                        break 'containment;
                    }
                }
            }
        }
    }

    Ok(HypothesisReport {
        generators: n,
        seed,
        samples: samples.len(),
        checks_run,
        violation,
        co_membership,
    })
}

/// One step of a word trace: the point reached after applying `applied`
/// (None for the starting point) and the candidate sets containing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep<P> {
    pub applied: Option<Letter>,
    pub point: P,
    pub labels: Vec<SetLabel>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordTrace<P> {
    pub steps: Vec<TraceStep<P>>,
    /// Whether the final point lies in the union `Y`; for a non-empty word
    /// under the lemma's hypotheses this must hold, which is what makes the
    /// word nontrivial.
    pub final_in_union: bool,
}

/// Apply a reduced word letter by letter (rightmost first), recording which
/// candidate set each intermediate point lies in.
pub fn trace_word<U, F>(
    universe: &U,
    family: &F,
    generators: &[(U::Element, U::Element)],
    word: &ReducedWord,
    start: &U::Point,
) -> Result<WordTrace<U::Point>, PingPongError>
where
    U: Universe,
    F: SetFamily<U::Point>,
{
    let n = generators.len();
    for letter in word.letters() {
        if letter.generator >= n {
            return Err(PingPongError::LetterOutOfRange { index: letter.generator, count: n });
        }
    }
    if family.in_union(start) {
        return Err(PingPongError::StartInsideUnion);
    }
    let mut steps = Vec::with_capacity(word.len() + 1);
    steps.push(TraceStep {
        applied: None,
        point: start.clone(),
        labels: memberships(family, start),
    });
    let mut current = start.clone();
    for letter in word.letters().iter().rev() {
        let (g, g_inv) = &generators[letter.generator];
        current = universe.apply(if letter.inverse { g_inv } else { g }, &current);
        steps.push(TraceStep {
            applied: Some(*letter),
            point: current.clone(),
            labels: memberships(family, &current),
        });
    }
    let final_in_union = !steps.last().expect("at least one step").labels.is_empty();
    Ok(WordTrace { steps, final_in_union })
}

/// Whether the discreteness clause of the lemma applies: it needs closed
/// candidate sets and a locally compact universe, and is only recorded when
/// both are asserted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiscretenessRationale {
    pub closed_sets: bool,
    pub locally_compact: bool,
    pub discreteness_claimed: bool,
}

pub fn discreteness_rationale(closed_sets: bool, locally_compact: bool) -> DiscretenessRationale {
    DiscretenessRationale {
        closed_sets,
        locally_compact,
        discreteness_claimed: closed_sets && locally_compact,
    }
}
