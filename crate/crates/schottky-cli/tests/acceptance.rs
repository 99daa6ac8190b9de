//! Acceptance suite: one test per criterion, printing a pass line each.
//! Every tolerance is exact; there is no epsilon anywhere.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use schottky_core::bt_tree::{
    axis, project, schottky_check, IsometryClass, SchottkyVerdict, TreeIsometry, TreeVertex,
};
use schottky_core::cat0_config::{
    check_configuration, AbstractAxis, Angle, ConfigVerdict, Interval, PairRelation, RelationKind,
};
use schottky_core::exact_arith::{
    parse_rational, prime_power, rational_int, Matrix, Rational, Valuation,
};
use schottky_core::pingpong::{trace_word, verify_hypotheses, SetFamily, Violation};
use schottky_core::word_oracle::{displacement_scan, enumerate_reduced, freeness_check};

fn pass(number: u32, name: &str) {
    println!("ACCEPTANCE {number} ({name}): PASS");
}

fn rat(s: &str) -> Rational {
    parse_rational(s).unwrap()
}

fn mat2(entries: [&str; 4]) -> Matrix {
    Matrix::new(2, entries.iter().map(|s| rat(s)).collect()).unwrap()
}

fn isom(entries: [&str; 4], p: u64) -> TreeIsometry {
    TreeIsometry::new(mat2(entries), p).unwrap()
}

fn conjugate(t: &TreeIsometry, g: &TreeIsometry) -> TreeIsometry {
    t.compose(g).unwrap().compose(&t.inverse()).unwrap()
}

fn demo_pair() -> Vec<TreeIsometry> {
    let g1 = isom(["5", "0", "0", "1/5"], 5);
    let t = isom(["1", "1", "1", "2"], 5);
    vec![g1.clone(), conjugate(&t, &g1)]
}

fn rand_range(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> i64 {
    lo + (rng.next_u64() % (hi - lo + 1) as u64) as i64
}

/// Random determinant-1 product of small shears, diag(p, 1/p) factors and
/// an occasional rotation.
fn random_sl2(rng: &mut ChaCha8Rng, p: u64, factors: usize) -> Matrix {
    let shear = |upper: bool, value: i64| {
        let v = rational_int(value);
        let entries = if upper {
            vec![rational_int(1), v, rational_int(0), rational_int(1)]
        } else {
            vec![rational_int(1), rational_int(0), v, rational_int(1)]
        };
        Matrix::new(2, entries).unwrap()
    };
    let mut m = Matrix::identity(2);
    for _ in 0..factors {
        let f = match rng.next_u64() % 5 {
            0 | 1 => shear(true, rand_range(rng, -3, 3)),
            2 | 3 => shear(false, rand_range(rng, -3, 3)),
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
        m = m.mul(&mat2(["0", "1", "-1", "0"]));
    }
    m
}

fn random_vertex(rng: &mut ChaCha8Rng, p: u64) -> TreeVertex {
    let level = rand_range(rng, -4, 4);
    let depth = rand_range(rng, 0, 5);
    let mut offset = rational_int(0);
    for k in (level - depth)..level {
        offset += rational_int(rand_range(rng, 0, p as i64 - 1)) * prime_power(p, k);
    }
    let basis =
        Matrix::new(2, vec![prime_power(p, level), offset, rational_int(0), rational_int(1)])
            .unwrap();
    TreeVertex::from_basis(p, &basis).unwrap()
}

fn binary() -> &'static str {
    env!("CARGO_BIN_EXE_schottky")
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

/// Criterion 1: the worked example over Q_2 is reproduced exhaustively:
/// 118,096 words free to depth 10, both generators elliptic with trace
/// valuation 1, and every word of length <= 6 fixes the standard vertex.
#[test]
fn acceptance_1_sanov_reproduction() {
    let start = Instant::now();
    let a = isom(["1", "2", "0", "1"], 2);
    let b = isom(["1", "0", "2", "1"], 2);
    for g in [&a, &b] {
        assert_eq!(g.classify(), IsometryClass::Elliptic);
        assert_eq!(g.trace_valuation(), Valuation::Finite(1));
    }

    let freeness = freeness_check(&[a.matrix().clone(), b.matrix().clone()], 10).unwrap();
    assert_eq!(freeness.words_checked, 118_096, "word count must be exact");
    assert_eq!(freeness.first_trivial_word, None, "no reduced word of length <= 10 is trivial");

    let base = TreeVertex::standard(2).unwrap();
    let displacement = displacement_scan(&[a, b], 6, &base).unwrap();
    assert_eq!(displacement.words_checked, 1456);
    assert_eq!(
        displacement.zero_displacement_count, 1456,
        "every word of length <= 6 must fix the standard vertex"
    );

    let demo = Command::new(binary()).args(["demo", "sanov"]).output().unwrap();
    assert_eq!(demo.status.code(), Some(0), "the demo command must succeed");

    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}, budget 60s");
    pass(1, "sanov reproduction: free of rank 2, not discrete");
}

/// Criterion 2: the translation-length formula agrees with the exhaustive
/// displacement minimum over the radius-4 ball, 50/50 exactly.
#[test]
fn acceptance_2_translation_length_formula() {
    let start = Instant::now();
    let primes = [2u64, 3, 5];
    let mut matched = 0;
    for seed in 0..50u64 {
        let p = primes[(seed % 3) as usize];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let factors = 1 + (seed % 4) as usize;
        let g = TreeIsometry::new(random_sl2(&mut rng, p, factors), p).unwrap();
        let formula = match g.classify() {
            IsometryClass::Hyperbolic { translation_length } => translation_length,
            IsometryClass::Elliptic => 0,
        };
        // Exhaustive scan of the radius-4 ball around the standard vertex.
        let base = TreeVertex::standard(p).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        seen.insert(base.clone());
        let mut frontier = vec![base.clone()];
        let mut scan = g.displacement(&base);
        for _ in 0..4 {
            let mut next = Vec::new();
            for v in &frontier {
                for w in v.neighbors() {
                    if seen.insert(w.clone()) {
                        scan = scan.min(g.displacement(&w));
                        next.push(w);
                    }
                }
            }
            frontier = next;
        }
        assert_eq!(formula, scan, "seed {seed}, p {p}: formula {formula} vs scan {scan}");
        matched += 1;
    }
    assert_eq!(matched, 50);
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:?}, budget 30s");
    pass(2, "translation length formula matches the exhaustive scan 50/50");
}

/// Criterion 3: certified configurations are consistent with the word
/// oracle - no trivial word to length 10, minimum displacement >= 1 to
/// length 8. Any discrepancy is a build failure.
#[test]
fn acceptance_3_certified_configurations_survive_the_oracle() {
    let mut configurations = vec![demo_pair()];
    let g1 = isom(["5", "0", "0", "1/5"], 5);
    let mut seed = 0u64;
    while configurations.len() < 5 && seed < 100 {
        seed += 1;
        let mut rng = ChaCha8Rng::seed_from_u64(seed * 77);
        let t = TreeIsometry::new(random_sl2(&mut rng, 5, 2 + (seed % 3) as usize), 5).unwrap();
        let pair = vec![g1.clone(), conjugate(&t, &g1)];
        if schottky_check(&pair).unwrap().verdict.is_certified() {
            configurations.push(pair);
        }
    }
    assert!(configurations.len() >= 5, "need the demo pair plus at least 4 seeded configurations");

    for (index, gens) in configurations.iter().enumerate() {
        let outcome = schottky_check(gens).unwrap();
        assert!(outcome.verdict.is_certified(), "configuration {index} must be certified");

        let matrices: Vec<_> = gens.iter().map(|g| g.matrix().clone()).collect();
        let freeness = freeness_check(&matrices, 10).unwrap();
        assert_eq!(
            freeness.first_trivial_word, None,
            "configuration {index}: the oracle found a trivial word; exit-code-4 situation"
        );

        let base = TreeVertex::standard(5).unwrap();
        let displacement = displacement_scan(gens, 8, &base).unwrap();
        let min = displacement.min_displacement.unwrap().displacement;
        assert!(
            min >= 1,
            "configuration {index}: a nontrivial word fixed the basepoint; exit-code-4 situation"
        );
    }
    pass(3, "5 certified configurations consistent with the word oracle");
}

/// Criterion 4: negative controls are inconclusive or rejected, exactly.
#[test]
fn acceptance_4_negative_controls() {
    let g = isom(["5", "0", "0", "1/5"], 5);
    let shared_end = conjugate(&isom(["1", "2", "0", "1"], 5), &g);
    for (label, pair) in [
        ("(g, g)", vec![g.clone(), g.clone()]),
        ("(g, g^-1)", vec![g.clone(), g.inverse()]),
        ("shared-end conjugates", vec![g.clone(), shared_end]),
    ] {
        let outcome = schottky_check(&pair).unwrap();
        assert!(
            matches!(outcome.verdict, SchottkyVerdict::Inconclusive { .. }),
            "{label} must be inconclusive"
        );
    }

    // Abstract checker: a length-3 segment against translation lengths 2.
    let axes = [
        AbstractAxis { id: "A1".into(), translation_length: rational_int(2) },
        AbstractAxis { id: "A2".into(), translation_length: rational_int(2) },
    ];
    let seg1 = Interval::new(rational_int(0), rational_int(3)).unwrap();
    let seg2 = Interval::new(rational_int(-3), rational_int(0)).unwrap();
    let long_segment = PairRelation {
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
    assert!(matches!(
        check_configuration(&axes, &[long_segment]).unwrap(),
        ConfigVerdict::Rejected { .. }
    ));

    // Abstract checker: a right angle.
    let point = Interval::point(rational_int(0));
    let right_angle = PairRelation {
        first: 0,
        second: 1,
        footprint_on_first: point.clone(),
        footprint_on_second: point.clone(),
        kind: RelationKind::CaseI {
            segment_on_first: point.clone(),
            segment_on_second: point,
            angles: [Angle(rat("1/2")), Angle::pi()],
        },
    };
    match check_configuration(&axes, &[right_angle]).unwrap() {
        ConfigVerdict::Rejected { reason, .. } => {
            assert!(reason.contains("angle hypothesis"), "got: {reason}")
        }
        ConfigVerdict::Certified { .. } => panic!("a right angle must reject"),
    }
    pass(4, "negative controls all inconclusive/rejected");
}

/// Criterion 5: tree geometry properties with zero violations, exact
/// arithmetic throughout.
#[test]
fn acceptance_5_tree_geometry_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(5050);

    // Metric axioms on 500 random triples.
    let mut triples = 0;
    for p in [2u64, 3, 5] {
        for _ in 0..170 {
            let a = random_vertex(&mut rng, p);
            let b = random_vertex(&mut rng, p);
            let c = random_vertex(&mut rng, p);
            assert_eq!(a.distance(&b).unwrap(), b.distance(&a).unwrap());
            assert_eq!(a.distance(&b).unwrap() == 0, a == b);
            assert!(a.distance(&c).unwrap() <= a.distance(&b).unwrap() + b.distance(&c).unwrap());
            triples += 1;
        }
    }
    assert!(triples >= 500);

    // p+1 regularity on 100 vertices (34 per prime).
    let mut counted = 0;
    for p in [2u64, 3, 5] {
        for _ in 0..34 {
            let v = random_vertex(&mut rng, p);
            let nbrs = v.neighbors();
            assert_eq!(nbrs.len() as u64, p + 1);
            for w in &nbrs {
                assert_eq!(v.distance(w).unwrap(), 1);
            }
            counted += 1;
        }
    }
    assert!(counted >= 100);

    // Projection non-expansiveness on 200 pairs.
    let g = demo_pair().pop().unwrap();
    let ax = axis(&g).unwrap();
    for _ in 0..200 {
        let x = random_vertex(&mut rng, 5);
        let y = random_vertex(&mut rng, 5);
        let (px, _) = project(&x, &ax).unwrap();
        let (py, _) = project(&y, &ax).unwrap();
        assert!(px.distance(&py).unwrap() <= x.distance(&y).unwrap());
    }

    // Projection-isometry commutation on 100 pairs.
    for seed in 0..25u64 {
        let p = [2u64, 3, 5][(seed % 3) as usize];
        let mut sr = ChaCha8Rng::seed_from_u64(seed + 900);
        let diag = TreeIsometry::new(
            Matrix::new(
                2,
                vec![prime_power(p, 1), rational_int(0), rational_int(0), prime_power(p, -1)],
            )
            .unwrap(),
            p,
        )
        .unwrap();
        let t = TreeIsometry::new(random_sl2(&mut sr, p, 2), p).unwrap();
        let h = conjugate(&t, &diag);
        let hax = axis(&h).unwrap();
        for _ in 0..4 {
            let x = random_vertex(&mut rng, p);
            let (px, _) = project(&x, &hax).unwrap();
            let (phx, _) = project(&h.apply(&x), &hax).unwrap();
            assert_eq!(phx, h.apply(&px));
        }
    }

    // Geodesic concatenation on 200 triples.
    let mut concatenations = 0;
    for p in [2u64, 3, 5] {
        for _ in 0..70 {
            let x = random_vertex(&mut rng, p);
            let z = random_vertex(&mut rng, p);
            let path = x.geodesic(&z).unwrap();
            let y = path[(rng.next_u64() as usize) % path.len()].clone();
            assert_eq!(
                x.distance(&z).unwrap(),
                x.distance(&y).unwrap() + y.distance(&z).unwrap()
            );
            concatenations += 1;
        }
    }
    assert!(concatenations >= 200);
    pass(5, "metric, regularity, projection and concatenation properties exact");
}

/// Criterion 6: exhaustive short-word traces end in the union, and each
/// mutation produces a reported violation.
#[test]
fn acceptance_6_pingpong_engine() {
    let gens = demo_pair();
    let outcome = schottky_check(&gens).unwrap();
    let sets = outcome.ping_pong().unwrap();
    let universe = outcome.universe().unwrap();
    let pairs = outcome.generator_pairs();
    let base = sets.basepoint().clone();

    // All reduced words of length <= 3 (4 + 12 + 36 = 52 for n = 2), and
    // of length <= 5 (484) for good measure: every trace ends in Y.
    let mut traced_short = 0u32;
    let mut traced_all = 0u32;
    for word in enumerate_reduced(2, 5).unwrap() {
        let trace = trace_word(&universe, &sets, &pairs, &word, &base).unwrap();
        assert!(trace.final_in_union, "word {word} escaped the union");
        if word.len() <= 3 {
            traced_short += 1;
        }
        traced_all += 1;
    }
    assert_eq!(traced_short, 52, "exhaustive length <= 3 sweep");
    assert_eq!(traced_all, 484, "exhaustive length <= 5 sweep");

    // Mutation: duplicated set (X_1^- replaced by X_1^+).
    struct Duplicated<'a>(&'a schottky_core::bt_tree::TreePingPong);
    impl SetFamily<TreeVertex> for Duplicated<'_> {
        fn generator_count(&self) -> usize {
            self.0.generator_count()
        }
        fn in_plus(&self, i: usize, x: &TreeVertex) -> bool {
            self.0.in_plus(i, x)
        }
        fn in_minus(&self, i: usize, x: &TreeVertex) -> bool {
            if i == 0 { self.0.in_plus(i, x) } else { self.0.in_minus(i, x) }
        }
        fn closed_sets(&self) -> bool {
            true
        }
    }
    let duplicated = verify_hypotheses(&universe, &Duplicated(&sets), &pairs, 400, 7).unwrap();
    assert!(
        matches!(duplicated.violation, Some(Violation::NotDisjoint { .. })),
        "duplicated sets must violate disjointness, got {:?}",
        duplicated.violation
    );

    // Mutation: predicates swapped between the two generators.
    struct Swapped<'a>(&'a schottky_core::bt_tree::TreePingPong);
    impl SetFamily<TreeVertex> for Swapped<'_> {
        fn generator_count(&self) -> usize {
            self.0.generator_count()
        }
        fn in_plus(&self, i: usize, x: &TreeVertex) -> bool {
            self.0.in_plus(i ^ 1, x)
        }
        fn in_minus(&self, i: usize, x: &TreeVertex) -> bool {
            self.0.in_minus(i ^ 1, x)
        }
        fn closed_sets(&self) -> bool {
            true
        }
    }
    let swapped = verify_hypotheses(&universe, &Swapped(&sets), &pairs, 400, 7).unwrap();
    assert!(swapped.violation.is_some(), "swapped sets must violate a hypothesis");

    // The healthy family passes the same sampling.
    let healthy = verify_hypotheses(&universe, &sets, &pairs, 400, 7).unwrap();
    assert!(healthy.passed());
    pass(6, "exhaustive traces end in Y; mutations each report a violation");
}

/// Criterion 7: plane axioms for q in {2, 3, 5}, the k = 2 configuration
/// at q = 3, and both ball-condition instances.
#[test]
fn acceptance_7_a2_combinatorics() {
    use schottky_core::a2_link::{
        build_plane, opposition_check, opposite_chamber_pairs, opposite, OppositionInput,
        OppositionVerdict,
    };
    for q in [2u64, 3, 5] {
        let plane = build_plane(q).unwrap();
        assert_eq!(plane.point_count() as u64, q * q + q + 1);
        assert_eq!(plane.line_count() as u64, q * q + q + 1);
        for line in 0..plane.line_count() {
            assert_eq!(plane.points_on_line(line).len() as u64, q + 1);
        }
        for a in 0..plane.point_count() {
            for b in a + 1..plane.point_count() {
                let common = (0..plane.line_count())
                    .filter(|&l| plane.incident(a, l) && plane.incident(b, l))
                    .count();
                assert_eq!(common, 1);
            }
        }
    }

    let plane = build_plane(3).unwrap();
    let pairs = opposite_chamber_pairs(&plane, 2).unwrap();
    let chambers: Vec<_> = pairs.iter().flat_map(|(a, b)| [*a, *b]).collect();
    assert_eq!(chambers.len(), 4);
    let mut opposite_pairs = 0;
    for (i, a) in chambers.iter().enumerate() {
        for b in &chambers[i + 1..] {
            assert!(opposite(&plane, a, b));
            opposite_pairs += 1;
        }
    }
    assert_eq!(opposite_pairs, 6);
    assert!(opposite_chamber_pairs(&plane, 3).is_err(), "k = 3 exceeds floor((3+1)/2)");

    let accept = OppositionInput {
        translation_lengths: vec![rational_int(2), rational_int(2)],
        pairwise_opposite: vec![vec![true, true], vec![true, true]],
        distances: vec![vec![rational_int(0)]],
        locally_compact: true,
    };
    assert!(opposition_check(&accept).unwrap().is_certified());

    let reject = OppositionInput {
        translation_lengths: vec![rational_int(4), rational_int(6)],
        pairwise_opposite: vec![vec![true, true], vec![true, true]],
        distances: vec![
            vec![rational_int(0), rational_int(10)],
            vec![rational_int(10), rational_int(0)],
        ],
        locally_compact: true,
    };
    assert!(matches!(
        opposition_check(&reject).unwrap(),
        OppositionVerdict::Rejected { .. }
    ));
    pass(7, "plane axioms, opposite chambers and ball condition exact");
}

/// Criterion 8: two identical runs produce byte-identical reports.
#[test]
fn acceptance_8_determinism() {
    let path = data("certified_pair.json");
    let args = ["verify", "--file", path.to_str().unwrap(), "--oracle", "--seed", "7"];
    let first = Command::new(binary()).args(args).output().unwrap();
    let second = Command::new(binary()).args(args).output().unwrap();
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(second.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout, "reports must be byte-identical");
    assert!(!first.stdout.is_empty());
    pass(8, "verify --oracle --seed 7 reports byte-identical");
}
