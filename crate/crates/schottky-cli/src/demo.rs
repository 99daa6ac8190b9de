//! Built-in worked demonstrations: the rank-two free-but-not-discrete pair
//! over Q_2, and the order-3 projective plane configuration with the
//! ball-condition check.

use std::path::Path;

use serde_json::{json, Value};

use schottky_core::a2_link::{
    build_plane, opposition_check, opposite_chamber_pairs, opposite, OppositionInput,
};
use schottky_core::bt_tree::{IsometryClass, TreeIsometry, TreeVertex};
use schottky_core::exact_arith::{parse_rational, rational_int, Matrix, Valuation};

use crate::commands::emit;
use crate::report;
use crate::runner;
use crate::{exit_code, Failure};

fn sanov_generators() -> (TreeIsometry, TreeIsometry) {
    let a = Matrix::from_i64_2x2([[1, 2], [0, 1]]).expect("invertible");
    let b = Matrix::from_i64_2x2([[1, 0], [2, 1]]).expect("invertible");
    (
        TreeIsometry::new(a, 2).expect("unit determinant"),
        TreeIsometry::new(b, 2).expect("unit determinant"),
    )
}

/// The unipotent pair over Q_2: exhaustively free to depth 10, yet every
/// word fixes the standard vertex, so the subgroup cannot be discrete.
pub fn cmd_demo_sanov(json_path: Option<&Path>) -> Result<i32, Failure> {
    const FREENESS_DEPTH: usize = 10;
    const DISPLACEMENT_DEPTH: usize = 6;
    let (a, b) = sanov_generators();
    for (name, g) in [("A", &a), ("B", &b)] {
        if !matches!(g.classify(), IsometryClass::Elliptic) {
            return Err(Failure::internal(format!("{name} must classify as elliptic")));
        }
        if g.trace_valuation() != Valuation::Finite(1) {
            return Err(Failure::internal(format!("{name} must have trace valuation 1")));
        }
    }

    let matrices = vec![a.matrix().clone(), b.matrix().clone()];
    let freeness = runner::run_freeness(&matrices, FREENESS_DEPTH)
        .map_err(|e| Failure::internal(format!("oracle failed: {e}")))?;
    if let Some(word) = &freeness.first_trivial_word {
        return Err(Failure::internal(format!(
            "the pair is provably free, yet \"{word}\" evaluated to the identity"
        )));
    }

    let base = TreeVertex::standard(2).map_err(|e| Failure::from_tree(&e))?;
    let gens = vec![a.clone(), b.clone()];
    let displacement = runner::run_displacement(&gens, DISPLACEMENT_DEPTH, &base)
        .map_err(|e| Failure::internal(format!("oracle failed: {e}")))?;
    if displacement.zero_displacement_count != displacement.words_checked {
        return Err(Failure::internal(
            "integral unit-determinant words must all fix the standard vertex".into(),
        ));
    }

    let body = json!({
        "prime": 2,
        "generators": [
            {"name": "A", "matrix": [["1","2"],["0","1"]], "classification": report::classification_json(&a)},
            {"name": "B", "matrix": [["1","0"],["2","1"]], "classification": report::classification_json(&b)},
        ],
        "freeness": report::oracle_json(&freeness),
        "displacement": report::oracle_json(&displacement),
        "conclusions": [
            format!(
                "no trivial reduced word up to length {FREENESS_DEPTH} ({} words checked): free of rank 2",
                freeness.words_checked
            ),
            format!(
                "all words fix the standard vertex (displacement 0 for all {} words of length <= {DISPLACEMENT_DEPTH})",
                displacement.words_checked
            ),
            "both generators are infinite-order elliptic isometries (trace valuation 1)".to_string(),
            "a free group of rank 2 inside a vertex stabilizer has no neighborhood of the identity \
             separating it: the subgroup is not discrete"
                .to_string(),
        ],
        "verdict": "free of rank 2, not discrete",
    });
    let full = report::envelope("demo", json!({"which": "sanov"}), Value::Null, body);
    emit(&full, json_path)?;
    Ok(exit_code::SUCCESS)
}

/// Order-3 plane: two disjoint pairs of pairwise opposite chambers through
/// a common point, plus the ball-condition run for conjugates of
/// `diag(1, p, 1/p)` sharing their intersection point.
pub fn cmd_demo_a2(json_path: Option<&Path>) -> Result<i32, Failure> {
    let plane = build_plane(3).map_err(|e| Failure::unsupported(e.to_string()))?;
    let pairs = opposite_chamber_pairs(&plane, 2).map_err(|e| Failure::unsupported(e.to_string()))?;
    let chambers: Vec<_> = pairs.iter().flat_map(|(x, y)| [*x, *y]).collect();
    let mut opposite_checks = 0;
    for (i, x) in chambers.iter().enumerate() {
        for y in &chambers[i + 1..] {
            if !opposite(&plane, x, y) {
                return Err(Failure::internal(format!(
                    "constructed chambers ({}, {}) and ({}, {}) are not opposite",
                    x.point, x.line, y.point, y.line
                )));
            }
            opposite_checks += 1;
        }
    }

    // Descriptors for two conjugates of f = diag(1, p, 1/p) whose axes
    // meet in a single shared point. The translation length in the building
    // metric is a supplied parameter, not computed here.
    let p = 5u64;
    let f = Matrix::new(
        3,
        vec![
            rational_int(1),
            rational_int(0),
            rational_int(0),
            rational_int(0),
            rational_int(p as i64),
            rational_int(0),
            rational_int(0),
            rational_int(0),
            parse_rational(&format!("1/{p}")).expect("valid rational"),
        ],
    )
    .map_err(|e| Failure::internal(e.to_string()))?;
    let length_parameter = rational_int(2);
    let input = OppositionInput {
        translation_lengths: vec![length_parameter.clone(), length_parameter],
        pairwise_opposite: vec![vec![true, true], vec![true, true]],
        distances: vec![vec![rational_int(0)]],
        locally_compact: true,
    };
    let verdict = opposition_check(&input).map_err(|e| Failure::internal(e.to_string()))?;
    if !verdict.is_certified() {
        return Err(Failure::internal(
            "the shared-point configuration must certify".into(),
        ));
    }

    let chamber_pairs: Vec<Value> = pairs
        .iter()
        .map(|(x, y)| {
            json!([
                {"point": x.point, "line": x.line},
                {"point": y.point, "line": y.line},
            ])
        })
        .collect();
    let body = json!({
        "plane": {
            "order": plane.order(),
            "points": plane.point_count(),
            "lines": plane.line_count(),
        },
        "chamber_pairs": chamber_pairs,
        "opposition": format!("all {opposite_checks} unordered chamber pairs verified opposite"),
        "ball_condition": {
            "isometry": format!("{f}"),
            "prime": p,
            "note": "translation length is a supplied parameter of the descriptor, not computed",
            "input": {
                "translation_lengths": ["2", "2"],
                "pairwise_opposite": [[true, true], [true, true]],
                "distance_table": [["0"]],
                "locally_compact": true,
            },
            "result": report::opposition_json(&verdict),
        },
        "verdict": "certified",
    });
    let full = report::envelope("demo", json!({"which": "a2"}), Value::Null, body);
    emit(&full, json_path)?;
    Ok(exit_code::SUCCESS)
}
