//! Independent brute-force oracle: enumerate reduced words, evaluate them
//! as exact matrix products, and measure basepoint displacements.
//!
//! This is the ground truth against which certificates are checked; it
//! shares nothing with the criterion path except the matrix type. Words are
//! evaluated along the prefix tree, so each word costs one multiplication.

use alloc::vec::Vec;
use core::fmt;

use crate::bt_tree::{TreeIsometry, TreeVertex};
use crate::exact_arith::Matrix;
use crate::pingpong::{Letter, ReducedWord};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    NoGenerators,
    BadMaxLength(usize),
    DimensionMismatch,
    MixedPrimes(u64, u64),
    LetterOutOfRange { index: usize, count: usize },
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::NoGenerators => write!(f, "need at least one generator"),
            OracleError::BadMaxLength(l) => write!(f, "maximum word length must be >= 1, got {l}"),
            OracleError::DimensionMismatch => write!(f, "generators have different dimensions"),
            OracleError::MixedPrimes(a, b) => write!(f, "mixed primes: {a} and {b}"),
            OracleError::LetterOutOfRange { index, count } => {
                write!(f, "first letter refers to generator {index} but only {count} exist")
            }
        }
    }
}

/// Number of reduced words of length exactly `len` on `n` generators:
/// `2n * (2n - 1)^(len - 1)`.
pub fn reduced_word_count(n: usize, len: usize) -> u64 {
    if len == 0 {
        return 1;
    }
    let alphabet = 2 * n as u64;
    let mut count = alphabet;
    for _ in 1..len {
        count *= alphabet - 1;
    }
    count
}

/// Iterator over every reduced word of length `1..=max_len`, in
/// length-lexicographic order with alphabet
/// `g_1 < g_1^-1 < ... < g_n < g_n^-1`.
pub struct ReducedWords {
    n: usize,
    max_len: usize,
    current_len: usize,
    /// Letter indices (0..2n) of the word about to be yielded; empty when
    /// a fresh length must be started.
    state: Vec<usize>,
    exhausted: bool,
}

/// Stream the reduced words of length `1..=max_len`; every word appears
/// exactly once.
pub fn enumerate_reduced(n: usize, max_len: usize) -> Result<ReducedWords, OracleError> {
    if n == 0 {
        return Err(OracleError::NoGenerators);
    }
    if max_len == 0 {
        return Err(OracleError::BadMaxLength(0));
    }
    Ok(ReducedWords { n, max_len, current_len: 1, state: Vec::new(), exhausted: false })
}

impl ReducedWords {
    fn cancels(a: usize, b: usize) -> bool {
        a / 2 == b / 2 && a % 2 != b % 2
    }

    /// Smallest letter index valid after `prev`.
    fn first_valid(prev: Option<usize>) -> usize {
        match prev {
            // Letter 0 only cancels letter 1, so 0 is always valid... unless
            // the previous letter is 1.
            Some(1) => 1,
            _ => 0,
        }
    }

    fn refill_from(&mut self, pos: usize) {
        for t in pos..self.current_len {
            let prev = if t == 0 { None } else { Some(self.state[t - 1]) };
            self.state[t] = Self::first_valid(prev);
        }
    }

    fn advance(&mut self) -> bool {
        let mut pos = self.current_len;
        loop {
            if pos == 0 {
                return false;
            }
            pos -= 1;
            let prev = if pos == 0 { None } else { Some(self.state[pos - 1]) };
            let mut candidate = self.state[pos] + 1;
            while candidate < 2 * self.n {
                let ok = match prev {
                    Some(p) => !Self::cancels(p, candidate),
                    None => true,
                };
                if ok {
                    self.state[pos] = candidate;
                    self.refill_from(pos + 1);
                    return true;
                }
                candidate += 1;
            }
        }
    }
}

impl Iterator for ReducedWords {
    type Item = ReducedWord;

    fn next(&mut self) -> Option<ReducedWord> {
        if self.exhausted {
            return None;
        }
        if self.state.is_empty() {
            self.state = alloc::vec![0; self.current_len];
            self.refill_from(0);
        } else if !self.advance() {
            self.current_len += 1;
            if self.current_len > self.max_len {
                self.exhausted = true;
                return None;
            }
            self.state = alloc::vec![0; self.current_len];
            self.refill_from(0);
        }
        let letters = self
            .state
            .iter()
            .map(|&idx| Letter { generator: idx / 2, inverse: idx % 2 == 1 })
            .collect();
        Some(ReducedWord::new(letters).expect("enumeration yields reduced words"))
    }
}

/// Per-length statistics of a scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthStats {
    pub len: usize,
    pub words: u64,
    /// Minimum basepoint displacement among nontrivial words of this
    /// length; absent for pure freeness scans or all-trivial lengths.
    pub min_displacement: Option<u64>,
}

/// The word attaining the minimum displacement (earliest in enumeration
/// order among minimizers).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisplacementRecord {
    pub word: ReducedWord,
    pub displacement: u64,
}

/// What a brute-force scan found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub generator_count: usize,
    pub max_len: usize,
    pub words_checked: u64,
    /// Earliest reduced word (length-lexicographic) evaluating to the
    /// identity matrix, if any.
    pub first_trivial_word: Option<ReducedWord>,
    pub per_length: Vec<LengthStats>,
    /// Minimum displacement over all nontrivial words, with its witness.
    pub min_displacement: Option<DisplacementRecord>,
    /// Nontrivial words displacing the basepoint by zero (vertex
    /// stabilizers), decided by exact vertex canonicalization.
    pub zero_displacement_count: u64,
}

impl OracleReport {
    fn empty(generator_count: usize, max_len: usize) -> Self {
        OracleReport {
            generator_count,
            max_len,
            words_checked: 0,
            first_trivial_word: None,
            per_length: (1..=max_len)
                .map(|len| LengthStats { len, words: 0, min_displacement: None })
                .collect(),
            min_displacement: None,
            zero_displacement_count: 0,
        }
    }

    fn record_trivial(&mut self, word: &ReducedWord) {
        let better = match &self.first_trivial_word {
            None => true,
            Some(current) => word.cmp_enumeration(current) == core::cmp::Ordering::Less,
        };
        if better {
            self.first_trivial_word = Some(word.clone());
        }
    }

    fn record_displacement(&mut self, word: &ReducedWord, displacement: u64) {
        if displacement == 0 {
            self.zero_displacement_count += 1;
        }
        let stats = &mut self.per_length[word.len() - 1];
        stats.min_displacement = Some(match stats.min_displacement {
            None => displacement,
            Some(m) => m.min(displacement),
        });
        let better = match &self.min_displacement {
            None => true,
            Some(record) => {
                displacement < record.displacement
                    || (displacement == record.displacement
                        && word.cmp_enumeration(&record.word) == core::cmp::Ordering::Less)
            }
        };
        if better {
            self.min_displacement = Some(DisplacementRecord { word: word.clone(), displacement });
        }
    }

    /// Merge two partial scans (e.g. per-first-letter partitions) into the
    /// report a single serial scan would have produced. Witnesses are
    /// resolved by enumeration order, so the merge is order-independent.
    pub fn merge(mut self, other: &OracleReport) -> OracleReport {
        debug_assert_eq!(self.generator_count, other.generator_count);
        debug_assert_eq!(self.max_len, other.max_len);
        self.words_checked += other.words_checked;
        if let Some(word) = &other.first_trivial_word {
            self.record_trivial(word);
        }
        for (mine, theirs) in self.per_length.iter_mut().zip(&other.per_length) {
            mine.words += theirs.words;
            mine.min_displacement = match (mine.min_displacement, theirs.min_displacement) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            };
        }
        self.zero_displacement_count += other.zero_displacement_count;
        if let Some(record) = &other.min_displacement {
            let better = match &self.min_displacement {
                None => true,
                Some(current) => {
                    record.displacement < current.displacement
                        || (record.displacement == current.displacement
                            && record.word.cmp_enumeration(&current.word)
                                == core::cmp::Ordering::Less)
                }
            };
            if better {
                self.min_displacement = Some(record.clone());
            }
        }
        self
    }
}

/// Prefix-tree scan: visit every reduced word of length `1..=max_len`
/// whose first letter is allowed by `roots`, extending the running matrix
/// product by one multiplication per word. The measure hook sees each
/// (word, product) pair once.
fn scan_prefix_tree<M>(
    elements: &[Matrix],
    roots: &[usize],
    max_len: usize,
    mut measure: M,
) -> u64
where
    M: FnMut(&[Letter], &Matrix),
{
    let mut words_checked = 0u64;
    let mut letters: Vec<Letter> = Vec::with_capacity(max_len);
    let mut products: Vec<Matrix> = Vec::with_capacity(max_len);
    // Iterative DFS over (letter index, depth); measure on entry.
    let mut pending: Vec<(usize, usize)> = Vec::new();
    for &root in roots.iter().rev() {
        pending.push((root, 1));
    }
    while let Some((idx, depth)) = pending.pop() {
        letters.truncate(depth - 1);
        products.truncate(depth - 1);
        let letter = Letter { generator: idx / 2, inverse: idx % 2 == 1 };
        let product = match products.last() {
            Some(prev) => prev.mul(&elements[idx]),
            None => elements[idx].clone(),
        };
        letters.push(letter);
        products.push(product);
        words_checked += 1;
        measure(&letters, products.last().expect("just pushed"));
        if depth < max_len {
            // Push children in reverse so they pop in enumeration order.
            for child in (0..elements.len()).rev() {
                if child / 2 == idx / 2 && child % 2 != idx % 2 {
                    continue; // cancels
                }
                pending.push((child, depth + 1));
            }
        }
    }
    words_checked
}

fn interleaved_elements(gens: &[Matrix]) -> Vec<Matrix> {
    let mut elements = Vec::with_capacity(2 * gens.len());
    for g in gens {
        elements.push(g.clone());
        elements.push(g.inverse());
    }
    elements
}

fn validate_roots(roots: &[usize], n: usize) -> Result<(), OracleError> {
    for &r in roots {
        if r >= 2 * n {
            return Err(OracleError::LetterOutOfRange { index: r / 2, count: n });
        }
    }
    Ok(())
}

fn freeness_scan(
    gens: &[Matrix],
    max_len: usize,
    roots: &[usize],
) -> Result<OracleReport, OracleError> {
    if gens.is_empty() {
        return Err(OracleError::NoGenerators);
    }
    if max_len == 0 {
        return Err(OracleError::BadMaxLength(0));
    }
    if gens.iter().any(|g| g.dim() != gens[0].dim()) {
        return Err(OracleError::DimensionMismatch);
    }
    validate_roots(roots, gens.len())?;
    let elements = interleaved_elements(gens);
    let mut report = OracleReport::empty(gens.len(), max_len);
    let mut per_length = alloc::vec![0u64; max_len];
    let mut trivial: Option<ReducedWord> = None;
    let words_checked = scan_prefix_tree(&elements, roots, max_len, |letters, product| {
        per_length[letters.len() - 1] += 1;
        if product.is_identity() {
            let word = ReducedWord::new(letters.to_vec()).expect("scan yields reduced words");
            let better = match &trivial {
                None => true,
                Some(t) => word.cmp_enumeration(t) == core::cmp::Ordering::Less,
            };
            if better {
                trivial = Some(word);
            }
        }
    });
    report.words_checked = words_checked;
    report.first_trivial_word = trivial;
    for (stats, words) in report.per_length.iter_mut().zip(per_length) {
        stats.words = words;
    }
    Ok(report)
}

/// Evaluate every reduced word of length `1..=max_len` exactly and report
/// the earliest one equal to the identity, if any.
pub fn freeness_check(gens: &[Matrix], max_len: usize) -> Result<OracleReport, OracleError> {
    let roots: Vec<usize> = (0..2 * gens.len()).collect();
    freeness_scan(gens, max_len, &roots)
}

/// The sub-scan of [`freeness_check`] restricted to words whose first
/// letter has the given index in `g_1 < g_1^-1 < ...` order. Partial
/// reports merge with [`OracleReport::merge`] into the full report.
pub fn freeness_check_rooted(
    gens: &[Matrix],
    max_len: usize,
    first_letter: usize,
) -> Result<OracleReport, OracleError> {
    freeness_scan(gens, max_len, &[first_letter])
}

fn displacement_scan_impl(
    gens: &[TreeIsometry],
    max_len: usize,
    basepoint: &TreeVertex,
    roots: &[usize],
) -> Result<OracleReport, OracleError> {
    if gens.is_empty() {
        return Err(OracleError::NoGenerators);
    }
    if max_len == 0 {
        return Err(OracleError::BadMaxLength(0));
    }
    let prime = gens[0].prime();
    for g in gens {
        if g.prime() != prime {
            return Err(OracleError::MixedPrimes(prime, g.prime()));
        }
    }
    if basepoint.prime() != prime {
        return Err(OracleError::MixedPrimes(prime, basepoint.prime()));
    }
    validate_roots(roots, gens.len())?;
    let matrices: Vec<Matrix> = gens.iter().map(|g| g.matrix().clone()).collect();
    let elements = interleaved_elements(&matrices);
    let mut report = OracleReport::empty(gens.len(), max_len);
    let mut per_length = alloc::vec![0u64; max_len];
    let base_basis = basepoint.basis_matrix();
    let words_checked = scan_prefix_tree(&elements, roots, max_len, |letters, product| {
        per_length[letters.len() - 1] += 1;
        let word = ReducedWord::new(letters.to_vec()).expect("scan yields reduced words");
        if product.is_identity() {
            // Trivial words are recorded but excluded from displacement
            // statistics; they are the identity element.
            report.record_trivial(&word);
            return;
        }
        let image = TreeVertex::from_basis_unchecked(prime, &product.mul(&base_basis));
        let displacement = image.distance(basepoint).expect("same prime");
        report.record_displacement(&word, displacement);
    });
    report.words_checked = words_checked;
    for (stats, words) in report.per_length.iter_mut().zip(per_length) {
        stats.words = words;
    }
    Ok(report)
}

/// For every nontrivial reduced word `w` of length `1..=max_len`, compute
/// `d(basepoint, w basepoint)` exactly; report the minimum (with its
/// earliest witness) and the number of zero-displacement words.
pub fn displacement_scan(
    gens: &[TreeIsometry],
    max_len: usize,
    basepoint: &TreeVertex,
) -> Result<OracleReport, OracleError> {
    let roots: Vec<usize> = (0..2 * gens.len()).collect();
    displacement_scan_impl(gens, max_len, basepoint, &roots)
}

/// First-letter partition of [`displacement_scan`]; see
/// [`freeness_check_rooted`].
pub fn displacement_scan_rooted(
    gens: &[TreeIsometry],
    max_len: usize,
    basepoint: &TreeVertex,
    first_letter: usize,
) -> Result<OracleReport, OracleError> {
    displacement_scan_impl(gens, max_len, basepoint, &[first_letter])
}
