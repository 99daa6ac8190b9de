//! JSON report fragments built from core result types. Reports are
//! deterministic: object keys serialize sorted, and no timestamps or
//! machine-specific data are embedded.

use serde_json::{json, Value};

use schottky_core::a2_link::{CenterWitness, OppositionVerdict, ProjPlane};
use schottky_core::bt_tree::{
    AxisRelation, IsometryClass, SchottkyOutcome, SchottkyVerdict, TreeIsometry, TreeVertex,
};
use schottky_core::cat0_config::ConfigVerdict;
use schottky_core::exact_arith::{format_rational, Valuation};
use schottky_core::pingpong::{DiscretenessRationale, HypothesisReport};
use schottky_core::word_oracle::OracleReport;

pub fn envelope(command: &str, parameters: Value, input: Value, body: Value) -> Value {
    let mut report = json!({
        "command": command,
        "input": input,
        "parameters": parameters,
        "tool": {
            "name": "schottky",
            "version": env!("CARGO_PKG_VERSION"),
        },
    });
    if let (Value::Object(target), Value::Object(extra)) = (&mut report, body) {
        for (k, v) in extra {
            target.insert(k, v);
        }
    }
    report
}

pub fn valuation_json(v: Valuation) -> Value {
    match v {
        Valuation::Finite(x) => json!(x),
        Valuation::Infinity => json!("infinity"),
    }
}

pub fn vertex_json(v: &TreeVertex) -> Value {
    json!({
        "level": v.level(),
        "offset": format_rational(v.offset()),
    })
}

pub fn classification_json(g: &TreeIsometry) -> Value {
    match g.classify() {
        IsometryClass::Elliptic => json!({
            "type": "elliptic",
            "trace_valuation": valuation_json(g.trace_valuation()),
            "determinant_valuation": g.det_valuation(),
        }),
        IsometryClass::Hyperbolic { translation_length } => json!({
            "type": "hyperbolic",
            "translation_length": translation_length,
            "trace_valuation": valuation_json(g.trace_valuation()),
            "determinant_valuation": g.det_valuation(),
        }),
    }
}

pub fn relation_json(names: &[String], i: usize, j: usize, relation: &AxisRelation) -> Value {
    let pair = json!([names[i], names[j]]);
    match relation {
        AxisRelation::CaseI { segment_on_first, segment_on_second, length } => json!({
            "pair": pair,
            "kind": "case_i",
            "segment_length": length,
            "segment_on_first": [segment_on_first.0, segment_on_first.1],
            "segment_on_second": [segment_on_second.0, segment_on_second.1],
            "angles": "automatic (tree)",
        }),
        AxisRelation::CaseII { foot_on_first, foot_on_second, bridge_length } => json!({
            "pair": pair,
            "kind": "case_ii",
            "bridge_length": bridge_length,
            "foot_on_first": {
                "coordinate": foot_on_first.1,
                "vertex": vertex_json(&foot_on_first.0),
            },
            "foot_on_second": {
                "coordinate": foot_on_second.1,
                "vertex": vertex_json(&foot_on_second.0),
            },
            "angles": "automatic (tree)",
        }),
        AxisRelation::Inapplicable { reason } => json!({
            "pair": pair,
            "kind": "inapplicable",
            "reason": reason.to_string(),
        }),
    }
}

pub fn schottky_json(names: &[String], outcome: &SchottkyOutcome) -> Value {
    let generators: Vec<Value> = names
        .iter()
        .zip(&outcome.axes)
        .zip(&outcome.translation_lengths)
        .map(|((name, axis), length)| {
            json!({
                "name": name,
                "translation_length": length,
                "classification": classification_json(axis.owner()),
                "axis_base": vertex_json(axis.base()),
            })
        })
        .collect();
    let relations: Vec<Value> = outcome
        .relations
        .iter()
        .map(|(i, j, rel)| relation_json(names, *i, *j, rel))
        .collect();
    let projections: Vec<Value> = outcome
        .projections
        .iter()
        .enumerate()
        .map(|(i, summary)| {
            let intervals: Vec<Value> = summary
                .intervals
                .iter()
                .map(|iv| json!({"from": names[iv.from], "interval": [iv.lo, iv.hi]}))
                .collect();
            json!({
                "generator": names[i],
                "intervals": intervals,
                "hull": [summary.hull.0, summary.hull.1],
                "diameter": summary.diameter,
                "translation_length": outcome.translation_lengths[i],
                "margin": outcome.translation_lengths[i] as i64 - summary.diameter as i64,
            })
        })
        .collect();
    let domains: Vec<Value> = outcome
        .domains
        .iter()
        .map(|d| {
            json!({
                "generator": names[d.axis_index],
                "interval": [format_rational(&d.lo), format_rational(&d.hi)],
            })
        })
        .collect();
    let (verdict, reason) = match &outcome.verdict {
        SchottkyVerdict::Certified => ("certified", Value::Null),
        SchottkyVerdict::Inconclusive { reason } => ("inconclusive", json!(reason)),
    };
    json!({
        "prime": outcome.prime,
        "generators": generators,
        "relations": relations,
        "projections": projections,
        "fundamental_domains": domains,
        "verdict": verdict,
        "reason": reason,
    })
}

pub fn hypothesis_json(report: &HypothesisReport) -> Value {
    let violations: Vec<Value> = report
        .violation
        .iter()
        .map(|v| json!(v.to_string()))
        .collect();
    json!({
        "generators": report.generators,
        "seed": report.seed,
        "samples": report.samples,
        "checks_run": report.checks_run,
        "violations": violations,
        "disjointness_matrix": report.co_membership,
        "summary": if report.passed() {
            format!("no violation found in {} checks", report.checks_run)
        } else {
            "violation found".to_string()
        },
    })
}

pub fn discreteness_json(rationale: &DiscretenessRationale) -> Value {
    json!({
        "closed_sets": rationale.closed_sets,
        "locally_compact": rationale.locally_compact,
        "discreteness_claimed": rationale.discreteness_claimed,
    })
}

pub fn oracle_json(report: &OracleReport) -> Value {
    let per_length: Vec<Value> = report
        .per_length
        .iter()
        .map(|stats| {
            json!({
                "len": stats.len,
                "words": stats.words,
                "min_displacement": stats.min_displacement,
            })
        })
        .collect();
    json!({
        "generators": report.generator_count,
        "max_len": report.max_len,
        "words_checked": report.words_checked,
        "first_trivial_word": report.first_trivial_word.as_ref().map(|w| w.to_string()),
        "per_length": per_length,
        "min_displacement": report.min_displacement.as_ref().map(|r| {
            json!({"word": r.word.to_string(), "displacement": r.displacement})
        }),
        "zero_displacement_count": report.zero_displacement_count,
    })
}

pub fn config_verdict_json(verdict: &ConfigVerdict) -> Value {
    match verdict {
        ConfigVerdict::Certified { domains, warnings } => json!({
            "verdict": "certified",
            "fundamental_domains": domains
                .iter()
                .map(|(lo, hi)| json!([format_rational(lo), format_rational(hi)]))
                .collect::<Vec<_>>(),
            "warnings": warnings,
        }),
        ConfigVerdict::Rejected { reason, warnings } => json!({
            "verdict": "rejected",
            "reason": reason,
            "warnings": warnings,
        }),
    }
}

pub fn plane_json(plane: &ProjPlane) -> Value {
    let points: Vec<Value> = (0..plane.point_count())
        .map(|id| json!({"id": id, "coords": plane.point_coords(id)}))
        .collect();
    let lines: Vec<Value> = (0..plane.line_count())
        .map(|id| json!({"id": id, "coords": plane.line_coords(id)}))
        .collect();
    let mut incidence = Vec::new();
    for point in 0..plane.point_count() {
        for line in 0..plane.line_count() {
            if plane.incident(point, line) {
                incidence.push(json!([point, line]));
            }
        }
    }
    json!({
        "order": plane.order(),
        "points": points,
        "lines": lines,
        "incidence": incidence,
    })
}

pub fn opposition_json(verdict: &OppositionVerdict) -> Value {
    match verdict {
        OppositionVerdict::Certified { center, free_rank, discrete } => {
            let center = match center {
                CenterWitness::InputPoint { index, radius } => json!({
                    "kind": "input_point",
                    "index": index,
                    "radius": format_rational(radius),
                }),
                CenterWitness::Midpoint { a, b, radius_squared_bound } => json!({
                    "kind": "midpoint",
                    "between": [a, b],
                    "radius_squared_bound": format_rational(radius_squared_bound),
                }),
            };
            json!({
                "verdict": "certified",
                "center": center,
                "conclusion": if *discrete {
                    format!("free of rank {free_rank}; discrete")
                } else {
                    format!("free of rank {free_rank}")
                },
                "caveat": "conditional on the descriptors being realized by actual hyperbolic \
                           isometries with the stated axes; realizability is not decided here",
            })
        }
        OppositionVerdict::Rejected { reason } => json!({
            "verdict": "rejected",
            "reason": reason,
        }),
        OppositionVerdict::Inconclusive { reason } => json!({
            "verdict": "inconclusive",
            "reason": reason,
        }),
    }
}
