//! One function per CLI subcommand, returning the process exit code.

use std::path::Path;

use serde_json::{json, Value};

use schottky_core::a2_link::{build_plane, opposition_check};
use schottky_core::bt_tree::{schottky_check, IsometryClass, TreeIsometry, TreeVertex};
use schottky_core::cat0_config::check_configuration;
use schottky_core::pingpong::{discreteness_rationale, verify_hypotheses, SetFamily, Universe};

use crate::formats::{parse_matrix_2x2, read_json_file, ConfigFile, OppositionFile, GeneratorFile};
use crate::report;
use crate::runner;
use crate::{exit_code, Failure};

/// Longest word length the enumeration guard allows.
pub const MAX_WORD_LENGTH: usize = 14;
/// Displacement scans cap below the freeness depth: vertex images are
/// costlier than identity tests and the discreteness evidence needs less.
const DISPLACEMENT_DEPTH_CAP: usize = 8;

pub fn emit(report: &Value, json_path: Option<&Path>) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(report).expect("reports serialize");
    println!("{text}");
    if let Some(path) = json_path {
        std::fs::write(path, text.as_bytes())
            .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn check_max_len(max_len: usize) -> Result<(), Failure> {
    if max_len == 0 || max_len > MAX_WORD_LENGTH {
        return Err(Failure::input(format!(
            "max word length must be in 1..={MAX_WORD_LENGTH}, got {max_len}"
        )));
    }
    Ok(())
}

pub fn cmd_classify(matrix: &str, prime: u64, json_path: Option<&Path>) -> Result<i32, Failure> {
    let rows: [[String; 2]; 2] = serde_json::from_str(matrix)
        .map_err(|e| Failure::input(format!("cannot parse the matrix argument: {e}")))?;
    let matrix = parse_matrix_2x2(&rows)?;
    let isometry =
        TreeIsometry::new(matrix, prime).map_err(|e| Failure::from_tree(&e))?;
    let line = match isometry.classify() {
        IsometryClass::Elliptic => format!(
            "elliptic (v_{prime}(tr) = {})",
            isometry.trace_valuation()
        ),
        IsometryClass::Hyperbolic { translation_length } => format!(
            "hyperbolic, l = {translation_length} (v_{prime}(tr) = {})",
            isometry.trace_valuation()
        ),
    };
    println!("{line}");
    if json_path.is_some() {
        let body = json!({
            "prime": prime,
            "classification": report::classification_json(&isometry),
            "summary": line,
        });
        let full = report::envelope(
            "classify",
            json!({"prime": prime}),
            json!({"matrix": rows}),
            body,
        );
        let text = serde_json::to_string_pretty(&full).expect("reports serialize");
        std::fs::write(json_path.unwrap(), text.as_bytes()).map_err(|e| {
            Failure::input(format!("cannot write {}: {e}", json_path.unwrap().display()))
        })?;
    }
    Ok(exit_code::SUCCESS)
}

pub struct VerifyOptions {
    pub oracle: bool,
    pub max_len: usize,
    pub seed: u64,
    pub samples: usize,
}

pub fn cmd_verify(file: &Path, opts: &VerifyOptions, json_path: Option<&Path>) -> Result<i32, Failure> {
    check_max_len(opts.max_len)?;
    if opts.samples == 0 {
        return Err(Failure::input("sample count must be at least 1".into()));
    }
    let (parsed, echo): (GeneratorFile, Value) = read_json_file(file)?;
    let parameters = json!({
        "file": file.display().to_string(),
        "oracle": opts.oracle,
        "max_len": opts.max_len,
        "seed": opts.seed,
        "samples": opts.samples,
    });
    let named = match parsed.isometries() {
        Ok(named) => named,
        Err(failure) => {
            // Well-formed file, unsupported content: report it as a verdict.
            if failure.code == exit_code::UNSUPPORTED {
                let body = json!({"verdict": "error", "error": failure.message});
                emit(&report::envelope("verify", parameters, echo, body), json_path)?;
                return Ok(exit_code::UNSUPPORTED);
            }
            return Err(failure);
        }
    };
    let names: Vec<String> = named.iter().map(|(n, _)| n.clone()).collect();
    let gens: Vec<TreeIsometry> = named.into_iter().map(|(_, g)| g).collect();

    let outcome = match schottky_check(&gens) {
        Ok(outcome) => outcome,
        Err(e) => {
            let failure = Failure::from_tree(&e).rename_generators(&names);
            if failure.code == exit_code::UNSUPPORTED || failure.code == exit_code::INPUT {
                let body = json!({"verdict": "error", "error": failure.message});
                emit(&report::envelope("verify", parameters, echo, body), json_path)?;
                return Ok(failure.code);
            }
            return Err(failure);
        }
    };

    let mut body = report::schottky_json(&names, &outcome);
    let certified = outcome.verdict.is_certified();

    if certified {
        let sets = outcome.ping_pong().map_err(|e| Failure::from_tree(&e))?;
        let universe = outcome.universe().map_err(|e| Failure::from_tree(&e))?;
        let pairs = outcome.generator_pairs();
        let hypothesis = verify_hypotheses(&universe, &sets, &pairs, opts.samples, opts.seed)
            .map_err(|e| Failure::internal(format!("ping-pong engine rejected its input: {e}")))?;
        if let Some(violation) = &hypothesis.violation {
            return Err(Failure::internal(format!(
                "certificate contradicts the sampled ping-pong hypotheses: {violation}"
            )));
        }
        let rationale =
            discreteness_rationale(sets.closed_sets(), universe.is_locally_compact());
        let rays: Vec<Value> = (0..sets.generator_count())
            .map(|i| {
                let (lo, hi) = sets.domain(i);
                json!({
                    "generator": names[i],
                    "positive_ray": format!(
                        "axis coordinates >= {}",
                        schottky_core::exact_arith::format_rational(hi)
                    ),
                    "negative_ray": format!(
                        "axis coordinates <= {}",
                        schottky_core::exact_arith::format_rational(lo)
                    ),
                })
            })
            .collect();
        let obj = body.as_object_mut().expect("schottky body is an object");
        obj.insert("ping_pong".into(), report::hypothesis_json(&hypothesis));
        obj.insert("ping_pong_rays".into(), json!(rays));
        obj.insert("discreteness".into(), report::discreteness_json(&rationale));
        obj.insert(
            "basepoint".into(),
            report::vertex_json(sets.basepoint()),
        );
        obj.insert(
            "conclusion".into(),
            json!(format!("free of rank {}; discrete", gens.len())),
        );
    }

    if opts.oracle {
        let matrices: Vec<_> = gens.iter().map(|g| g.matrix().clone()).collect();
        let freeness = runner::run_freeness(&matrices, opts.max_len)
            .map_err(|e| Failure::input(format!("oracle failed: {e}")))?;
        let base = TreeVertex::standard(outcome.prime).map_err(|e| Failure::from_tree(&e))?;
        let depth = opts.max_len.min(DISPLACEMENT_DEPTH_CAP);
        let displacement = runner::run_displacement(&gens, depth, &base)
            .map_err(|e| Failure::input(format!("oracle failed: {e}")))?;
        if certified {
            if let Some(word) = &freeness.first_trivial_word {
                return Err(Failure::internal(format!(
                    "certificate contradicts the word oracle: \"{word}\" evaluates to the identity"
                )));
            }
            if displacement.min_displacement.as_ref().map(|r| r.displacement) == Some(0) {
                return Err(Failure::internal(
                    "certificate contradicts the word oracle: a nontrivial word has displacement 0"
                        .into(),
                ));
            }
        }
        let obj = body.as_object_mut().expect("schottky body is an object");
        obj.insert(
            "oracle".into(),
            json!({
                "freeness": report::oracle_json(&freeness),
                "displacement": report::oracle_json(&displacement),
                "consistent": true,
            }),
        );
    }

    emit(&report::envelope("verify", parameters, echo, body), json_path)?;
    Ok(if certified { exit_code::SUCCESS } else { exit_code::INCONCLUSIVE })
}

pub fn cmd_oracle(file: &Path, max_len: usize, json_path: Option<&Path>) -> Result<i32, Failure> {
    check_max_len(max_len)?;
    let (parsed, echo): (GeneratorFile, Value) = read_json_file(file)?;
    let mut matrices = Vec::new();
    for entry in &parsed.generators {
        matrices.push(parse_matrix_2x2(&entry.matrix)
            .map_err(|f| Failure::new(f.code, format!("generator {:?}: {}", entry.name, f.message)))?);
    }
    if matrices.is_empty() {
        return Err(Failure::input("generator file lists no generators".into()));
    }
    let freeness = runner::run_freeness(&matrices, max_len)
        .map_err(|e| Failure::input(format!("oracle failed: {e}")))?;
    // Displacements need type-preserving tree isometries; skip them (with a
    // note) when some generator swaps types.
    let displacement = match parsed.isometries() {
        Ok(named) => {
            let gens: Vec<TreeIsometry> = named.into_iter().map(|(_, g)| g).collect();
            let base = TreeVertex::standard(parsed.prime).map_err(|e| Failure::from_tree(&e))?;
            let depth = max_len.min(DISPLACEMENT_DEPTH_CAP);
            Some(
                runner::run_displacement(&gens, depth, &base)
                    .map_err(|e| Failure::input(format!("oracle failed: {e}")))?,
            )
        }
        Err(_) => None,
    };
    let body = json!({
        "prime": parsed.prime,
        "freeness": report::oracle_json(&freeness),
        "displacement": displacement.as_ref().map(report::oracle_json),
        "displacement_note": if displacement.is_none() {
            Some("skipped: generators are not type-preserving tree isometries")
        } else {
            None
        },
    });
    let parameters = json!({"file": file.display().to_string(), "max_len": max_len});
    emit(&report::envelope("oracle", parameters, echo, body), json_path)?;
    Ok(exit_code::SUCCESS)
}

pub fn cmd_config(file: &Path, json_path: Option<&Path>) -> Result<i32, Failure> {
    let (parsed, echo): (ConfigFile, Value) = read_json_file(file)?;
    let (axes, relations) = parsed.into_core()?;
    let verdict = check_configuration(&axes, &relations)
        .map_err(|e| Failure::input(format!("configuration rejected: {e}")))?;
    let body = report::config_verdict_json(&verdict);
    let parameters = json!({"file": file.display().to_string()});
    emit(&report::envelope("config", parameters, echo, body), json_path)?;
    Ok(if verdict.is_certified() { exit_code::SUCCESS } else { exit_code::INCONCLUSIVE })
}

pub fn cmd_opposite(file: &Path, json_path: Option<&Path>) -> Result<i32, Failure> {
    let (parsed, echo): (OppositionFile, Value) = read_json_file(file)?;
    let input = parsed.into_core()?;
    let verdict = opposition_check(&input)
        .map_err(|e| Failure::input(format!("input rejected: {e}")))?;
    let body = report::opposition_json(&verdict);
    let parameters = json!({"file": file.display().to_string()});
    emit(&report::envelope("opposite", parameters, echo, body), json_path)?;
    Ok(if verdict.is_certified() { exit_code::SUCCESS } else { exit_code::INCONCLUSIVE })
}

pub fn cmd_plane(order: u64, json_path: Option<&Path>) -> Result<i32, Failure> {
    let plane = build_plane(order).map_err(|e| Failure::unsupported(e.to_string()))?;
    let body = report::plane_json(&plane);
    let parameters = json!({"order": order});
    emit(&report::envelope("plane", parameters, Value::Null, body), json_path)?;
    Ok(exit_code::SUCCESS)
}
