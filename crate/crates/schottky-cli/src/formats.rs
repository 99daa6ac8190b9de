//! JSON input file schemas and their conversion into core types.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use schottky_core::bt_tree::TreeIsometry;
use schottky_core::cat0_config::{AbstractAxis, Angle, Interval, PairRelation, RelationKind};
use schottky_core::exact_arith::{parse_rational, Matrix, Rational};

use crate::Failure;

/// Generator file: a prime and named 2x2 matrices with entries written as
/// `"num"` or `"num/den"`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeneratorFile {
    pub prime: u64,
    pub generators: Vec<GeneratorEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeneratorEntry {
    pub name: String,
    pub matrix: [[String; 2]; 2],
}

pub fn parse_matrix_2x2(rows: &[[String; 2]; 2]) -> Result<Matrix, Failure> {
    let mut entries = Vec::with_capacity(4);
    for row in rows {
        for cell in row {
            entries.push(
                parse_rational(cell).map_err(|e| Failure::input(format!("bad matrix entry: {e}")))?,
            );
        }
    }
    Matrix::new(2, entries).map_err(|e| Failure::input(format!("bad matrix: {e}")))
}

impl GeneratorFile {
    pub fn isometries(&self) -> Result<Vec<(String, TreeIsometry)>, Failure> {
        if self.generators.is_empty() {
            return Err(Failure::input("generator file lists no generators".into()));
        }
        let mut out = Vec::with_capacity(self.generators.len());
        for entry in &self.generators {
            let matrix = parse_matrix_2x2(&entry.matrix)
                .map_err(|f| Failure::new(f.code, format!("generator {:?}: {}", entry.name, f.message)))?;
            let isometry = TreeIsometry::new(matrix, self.prime)
                .map_err(|e| Failure::from_tree(&e).with_context(&entry.name))?;
            out.push((entry.name.clone(), isometry));
        }
        Ok(out)
    }
}

/// Abstract configuration file for the general-form checker.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConfigFile {
    pub axes: Vec<ConfigAxis>,
    pub relations: Vec<ConfigRelation>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConfigAxis {
    pub id: String,
    pub translation_length: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConfigRelation {
    pub pair: [String; 2],
    pub kind: String,
    /// Two angles for case I, four for case II; `"pi"` or `"num/den·pi"`.
    pub angles: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub segment_on_first: Option<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub segment_on_second: Option<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bridge_length: Option<String>,
    pub footprint_on_first: [String; 2],
    pub footprint_on_second: [String; 2],
}

fn parse_angle(s: &str) -> Result<Angle, Failure> {
    let s = s.trim();
    if s == "pi" {
        return Ok(Angle::pi());
    }
    let prefix = s
        .strip_suffix("·pi")
        .or_else(|| s.strip_suffix("*pi"))
        .ok_or_else(|| Failure::input(format!("bad angle {s:?}: expected \"pi\" or \"num/den·pi\"")))?;
    let multiple = parse_rational(prefix)
        .map_err(|e| Failure::input(format!("bad angle {s:?}: {e}")))?;
    Ok(Angle(multiple))
}

fn parse_interval(pair: &[String; 2], what: &str) -> Result<Interval, Failure> {
    let lo = parse_rational(&pair[0])
        .map_err(|e| Failure::input(format!("bad {what} endpoint: {e}")))?;
    let hi = parse_rational(&pair[1])
        .map_err(|e| Failure::input(format!("bad {what} endpoint: {e}")))?;
    Interval::new(lo, hi).map_err(|e| Failure::input(format!("bad {what}: {e}")))
}

fn parse_positive_rational(s: &str, what: &str) -> Result<Rational, Failure> {
    parse_rational(s).map_err(|e| Failure::input(format!("bad {what}: {e}")))
}

impl ConfigFile {
    pub fn into_core(&self) -> Result<(Vec<AbstractAxis>, Vec<PairRelation>), Failure> {
        let mut axes = Vec::with_capacity(self.axes.len());
        let mut index: BTreeMap<&str, usize> = BTreeMap::new();
        for (i, axis) in self.axes.iter().enumerate() {
            if index.insert(axis.id.as_str(), i).is_some() {
                return Err(Failure::input(format!("duplicate axis id {:?}", axis.id)));
            }
            axes.push(AbstractAxis {
                id: axis.id.clone(),
                translation_length: parse_positive_rational(
                    &axis.translation_length,
                    "translation length",
                )?,
            });
        }
        let mut relations = Vec::with_capacity(self.relations.len());
        for rel in &self.relations {
            let lookup = |id: &str| {
                index.get(id).copied().ok_or_else(|| {
                    Failure::input(format!("relation names unknown axis {id:?}"))
                })
            };
            let first = lookup(&rel.pair[0])?;
            let second = lookup(&rel.pair[1])?;
            let angles: Vec<Angle> =
                rel.angles.iter().map(|a| parse_angle(a)).collect::<Result<_, _>>()?;
            let kind = match rel.kind.as_str() {
                "case_i" => {
                    let seg_first = rel.segment_on_first.as_ref().ok_or_else(|| {
                        Failure::input("case_i relation is missing segment_on_first".into())
                    })?;
                    let seg_second = rel.segment_on_second.as_ref().ok_or_else(|| {
                        Failure::input("case_i relation is missing segment_on_second".into())
                    })?;
                    let [a, b]: [Angle; 2] = angles.try_into().map_err(|_| {
                        Failure::input("case_i relation needs exactly 2 angles".into())
                    })?;
                    RelationKind::CaseI {
                        segment_on_first: parse_interval(seg_first, "segment")?,
                        segment_on_second: parse_interval(seg_second, "segment")?,
                        angles: [a, b],
                    }
                }
                "case_ii" => {
                    let bridge = rel.bridge_length.as_ref().ok_or_else(|| {
                        Failure::input("case_ii relation is missing bridge_length".into())
                    })?;
                    let angles: [Angle; 4] = angles.try_into().map_err(|_| {
                        Failure::input("case_ii relation needs exactly 4 angles".into())
                    })?;
                    RelationKind::CaseII {
                        bridge_length: parse_positive_rational(bridge, "bridge length")?,
                        angles,
                    }
                }
                other => {
                    return Err(Failure::input(format!(
                        "unknown relation kind {other:?}: expected \"case_i\" or \"case_ii\""
                    )))
                }
            };
            relations.push(PairRelation {
                first,
                second,
                kind,
                footprint_on_first: parse_interval(&rel.footprint_on_first, "footprint")?,
                footprint_on_second: parse_interval(&rel.footprint_on_second, "footprint")?,
            });
        }
        Ok((axes, relations))
    }
}

/// Input for the opposite-isometry ball-condition check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OppositionFile {
    pub translation_lengths: Vec<String>,
    pub pairwise_opposite: Vec<Vec<bool>>,
    pub distance_table: Vec<Vec<String>>,
    pub locally_compact: bool,
}

impl OppositionFile {
    pub fn into_core(&self) -> Result<schottky_core::a2_link::OppositionInput, Failure> {
        let lengths = self
            .translation_lengths
            .iter()
            .map(|s| parse_positive_rational(s, "translation length"))
            .collect::<Result<Vec<_>, _>>()?;
        let distances = self
            .distance_table
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| parse_positive_rational(s, "distance"))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(schottky_core::a2_link::OppositionInput {
            translation_lengths: lengths,
            pairwise_opposite: self.pairwise_opposite.clone(),
            distances,
            locally_compact: self.locally_compact,
        })
    }
}

pub fn read_json_file<T: for<'de> Deserialize<'de>>(path: &std::path::Path) -> Result<(T, serde_json::Value), Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Failure::input(format!("invalid JSON in {}: {e}", path.display())))?;
    let parsed: T = serde_json::from_value(value.clone())
        .map_err(|e| Failure::input(format!("unexpected schema in {}: {e}", path.display())))?;
    Ok((parsed, value))
}
