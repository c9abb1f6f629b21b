//! JSON documents.
//!
//! Every document is an envelope
//! `{"schema_version": "1", "kind": ..., "payload": ...}`. Payload shapes:
//!
//! | kind             | payload                                                             |
//! |------------------|---------------------------------------------------------------------|
//! | `fan`            | `{"rank", "rays", "max_cones"}`                                     |
//! | `pair`           | fan fields plus `"coeffs": ["p/q", ...]`                            |
//! | `numerical_pair` | fan fields plus `"components": [{"class", "coeff", "count"}, ...]` |
//! | `arrangement`    | `{"lines": [["a", "b", "c"], ...], "coeffs": [...]}`                |
//! | `morphism`       | `{"source": fan, "target": fan, "matrix": [[ints]]}`                |
//! | `tower_spec`     | `{"stages": [{"dim", "twists": [[ints], ...]}, ...]}`               |
//!
//! Rationals are strings `"p"` or `"p/q"`; integers are JSON integers. Unknown
//! fields are rejected everywhere. Structural problems are
//! [`IoError::Schema`]; data that is well-formed but rejected by a domain
//! constructor is [`IoError::Validation`]. Both carry a path such as
//! `payload.coeffs[2]`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{Map, Value};

use crate::arrangement::{ArrangementError, PlanePair};
use crate::bott::{build_bott_tower, BottError, BottStage, BottTowerSpec};
use crate::fan::{Fan, FanError, RawFan};
use crate::fibration::{FanMorphism, FibrationError};
use crate::lattice::{IntMatrix, IntVector};
use crate::pair::{NumericalComponent, NumericalPair, PairError, ToricPair};
use crate::rational::{format_rational, parse_rational, Rational};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IoError {
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("validation error at {path}: {message}")]
    Validation { path: String, message: String },
}

impl IoError {
    fn schema(path: impl Into<String>, message: impl fmt::Display) -> Self {
        IoError::Schema {
            path: path.into(),
            message: message.to_string(),
        }
    }

    fn validation(path: impl Into<String>, message: impl fmt::Display) -> Self {
        IoError::Validation {
            path: path.into(),
            message: message.to_string(),
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            IoError::Schema { .. } => "SchemaError",
            IoError::Validation { .. } => "ValidationError",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Fan,
    Pair,
    NumericalPair,
    Arrangement,
    Morphism,
    TowerSpec,
}

impl Kind {
    pub const ALL: [Kind; 6] = [
        Kind::Fan,
        Kind::Pair,
        Kind::NumericalPair,
        Kind::Arrangement,
        Kind::Morphism,
        Kind::TowerSpec,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Fan => "fan",
            Kind::Pair => "pair",
            Kind::NumericalPair => "numerical_pair",
            Kind::Arrangement => "arrangement",
            Kind::Morphism => "morphism",
            Kind::TowerSpec => "tower_spec",
        }
    }

    fn parse(s: &str) -> Option<Kind> {
        Kind::ALL.into_iter().find(|k| k.as_str() == s)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A validated domain value read from or written to a document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Fan(Fan),
    Pair(ToricPair),
    NumericalPair(NumericalPair),
    Arrangement(PlanePair),
    Morphism(FanMorphism),
    TowerSpec(BottTowerSpec),
}

impl Document {
    pub fn kind(&self) -> Kind {
        match self {
            Document::Fan(_) => Kind::Fan,
            Document::Pair(_) => Kind::Pair,
            Document::NumericalPair(_) => Kind::NumericalPair,
            Document::Arrangement(_) => Kind::Arrangement,
            Document::Morphism(_) => Kind::Morphism,
            Document::TowerSpec(_) => Kind::TowerSpec,
        }
    }
}

/// A rational carried as a `"p/q"` string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalString(pub Rational);

impl Serialize for RationalString {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for RationalString {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s)
            .map(RationalString)
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanDto {
    pub rank: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDto {
    pub rank: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
    pub coeffs: Vec<RationalString>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentDto {
    pub class: Vec<i64>,
    pub coeff: RationalString,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NumericalPairDto {
    pub rank: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
    pub components: Vec<ComponentDto>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrangementDto {
    pub lines: Vec<[RationalString; 3]>,
    pub coeffs: Vec<RationalString>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDto {
    pub source: FanDto,
    pub target: FanDto,
    pub matrix: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StageDto {
    pub dim: usize,
    pub twists: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerSpecDto {
    pub stages: Vec<StageDto>,
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn fan_error_path(prefix: &str, e: &FanError) -> String {
    match e {
        FanError::RankMismatch { ray, .. }
        | FanError::ZeroRay { ray }
        | FanError::NonPrimitiveRay { ray, .. }
        | FanError::UnusedRay { ray } => format!("{prefix}.rays[{ray}]"),
        FanError::DuplicateRay { second, .. } => format!("{prefix}.rays[{second}]"),
        FanError::RayIndexOutOfRange { cone, .. }
        | FanError::ConeDimension { cone, .. }
        | FanError::DuplicateCone { cone }
        | FanError::NonSimplicialCone { cone } => format!("{prefix}.max_cones[{cone}]"),
        FanError::FaceIntersectionViolation { second, .. } => {
            format!("{prefix}.max_cones[{second}]")
        }
        _ => prefix.to_string(),
    }
}

fn build_fan(
    prefix: &str,
    rank: usize,
    rays: &[Vec<i64>],
    max_cones: &[Vec<usize>],
) -> Result<Fan, IoError> {
    let raw = RawFan {
        rank,
        rays: rays.iter().map(|r| ints(r)).collect(),
        max_cones: max_cones.to_vec(),
    };
    crate::fan::validate_fan(raw).map_err(|e| IoError::validation(fan_error_path(prefix, &e), e))
}

fn pair_error(e: PairError) -> IoError {
    let path = match &e {
        PairError::CoeffCount { .. } => "payload.coeffs".to_string(),
        PairError::ClassLength { component, .. } => {
            format!("payload.components[{component}].class")
        }
        PairError::CoeffOutOfRange { component, .. } => {
            format!("payload.components[{component}].coeff")
        }
        PairError::ZeroCount { component } => format!("payload.components[{component}].count"),
        _ => "payload".to_string(),
    };
    IoError::validation(path, e)
}

fn arrangement_error(e: ArrangementError) -> IoError {
    let path = match &e {
        ArrangementError::ZeroLine { line } => format!("payload.lines[{line}]"),
        ArrangementError::DuplicateLine { second, .. } => format!("payload.lines[{second}]"),
        ArrangementError::CoeffOutOfRange { line, .. } => format!("payload.coeffs[{line}]"),
        _ => "payload.coeffs".to_string(),
    };
    IoError::validation(path, e)
}

fn matrix_from(rows: &[Vec<i64>]) -> Result<IntMatrix, IoError> {
    IntMatrix::from_rows(rows.iter().map(|r| ints(r)).collect())
        .map_err(|e| IoError::validation("payload.matrix", e))
}

impl FanDto {
    pub fn into_fan(&self, prefix: &str) -> Result<Fan, IoError> {
        build_fan(prefix, self.rank, &self.rays, &self.max_cones)
    }
}

fn decode_payload<T: DeserializeOwned>(payload: Value) -> Result<T, IoError> {
    serde_path_to_error::deserialize(payload).map_err(|e| {
        let inner = e.path().to_string();
        let path = if inner == "." {
            "payload".to_string()
        } else {
            format!("payload.{inner}")
        };
        IoError::schema(path, e.into_inner())
    })
}

fn decode(kind: Kind, payload: Value) -> Result<Document, IoError> {
    Ok(match kind {
        Kind::Fan => Document::Fan(decode_payload::<FanDto>(payload)?.into_fan("payload")?),
        Kind::Pair => {
            let dto: PairDto = decode_payload(payload)?;
            let fan = build_fan("payload", dto.rank, &dto.rays, &dto.max_cones)?;
            let coeffs = dto.coeffs.into_iter().map(|c| c.0).collect();
            Document::Pair(ToricPair::new(fan, coeffs).map_err(pair_error)?)
        }
        Kind::NumericalPair => {
            let dto: NumericalPairDto = decode_payload(payload)?;
            let fan = build_fan("payload", dto.rank, &dto.rays, &dto.max_cones)?;
            let components = dto
                .components
                .into_iter()
                .map(|c| NumericalComponent {
                    class: ints(&c.class),
                    coeff: c.coeff.0,
                    count: c.count.into(),
                })
                .collect();
            Document::NumericalPair(NumericalPair::new(fan, components).map_err(pair_error)?)
        }
        Kind::Arrangement => {
            let dto: ArrangementDto = decode_payload(payload)?;
            let lines = dto.lines.into_iter().map(|l| l.map(|x| x.0)).collect();
            let coeffs = dto.coeffs.into_iter().map(|c| c.0).collect();
            Document::Arrangement(PlanePair::new(lines, coeffs).map_err(arrangement_error)?)
        }
        Kind::Morphism => {
            let dto: MorphismDto = decode_payload(payload)?;
            let source = dto.source.into_fan("payload.source")?;
            let target = dto.target.into_fan("payload.target")?;
            let matrix = matrix_from(&dto.matrix)?;
            let f = FanMorphism::new(source, target, matrix).map_err(|e| {
                let path = match &e {
                    FibrationError::IncompatibleCone { .. } => "payload.source.max_cones",
                    _ => "payload.matrix",
                };
                IoError::validation(path, e)
            })?;
            Document::Morphism(f)
        }
        Kind::TowerSpec => {
            let dto: TowerSpecDto = decode_payload(payload)?;
            let spec = BottTowerSpec {
                stages: dto
                    .stages
                    .into_iter()
                    .map(|s| BottStage {
                        dim: s.dim,
                        twists: s.twists.iter().map(|t| ints(t)).collect(),
                    })
                    .collect(),
            };
            build_bott_tower(&spec).map_err(|e| {
                let path = match &e {
                    BottError::ZeroDimension { stage } => format!("payload.stages[{stage}].dim"),
                    BottError::FirstStageTwists => "payload.stages[0].twists".to_string(),
                    BottError::Stage { stage, .. } => format!("payload.stages[{stage}]"),
                    _ => "payload.stages".to_string(),
                };
                IoError::validation(path, e)
            })?;
            Document::TowerSpec(spec)
        }
    })
}

/// Parses and validates a document.
pub fn parse_document(text: &str) -> Result<Document, IoError> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| IoError::schema(format!("line {} column {}", e.line(), e.column()), e))?;
    let Value::Object(mut map) = value else {
        return Err(IoError::schema("$", "a document must be a JSON object"));
    };
    if let Some(extra) = map
        .keys()
        .find(|k| !matches!(k.as_str(), "schema_version" | "kind" | "payload"))
    {
        return Err(IoError::schema(extra.clone(), "unknown field"));
    }
    match map.remove("schema_version") {
        Some(Value::String(v)) if v == SCHEMA_VERSION => {}
        Some(other) => {
            return Err(IoError::schema(
                "schema_version",
                format!("expected \"{SCHEMA_VERSION}\", found {other}"),
            ))
        }
        None => return Err(IoError::schema("schema_version", "missing field")),
    }
    let kind = match map.remove("kind") {
        Some(Value::String(k)) => {
            Kind::parse(&k).ok_or_else(|| IoError::schema("kind", format!("unknown kind {k:?}")))?
        }
        Some(other) => {
            return Err(IoError::schema(
                "kind",
                format!("expected a string, found {other}"),
            ))
        }
        None => return Err(IoError::schema("kind", "missing field")),
    };
    let payload = map
        .remove("payload")
        .ok_or_else(|| IoError::schema("payload", "missing field"))?;
    decode(kind, payload)
}

/// Parses a document and requires one of the given kinds.
pub fn parse_expecting(text: &str, kinds: &[Kind]) -> Result<Document, IoError> {
    let doc = parse_document(text)?;
    if !kinds.contains(&doc.kind()) {
        let wanted: Vec<&str> = kinds.iter().map(|k| k.as_str()).collect();
        return Err(IoError::schema(
            "kind",
            format!("expected {}, found {}", wanted.join(" or "), doc.kind()),
        ));
    }
    Ok(doc)
}

fn small(x: &BigInt, path: &str) -> Result<i64, IoError> {
    x.to_i64()
        .ok_or_else(|| IoError::schema(path, format!("integer {x} does not fit in 64 bits")))
}

fn small_vec(v: &[BigInt], path: &str) -> Result<Vec<i64>, IoError> {
    v.iter().map(|x| small(x, path)).collect()
}

pub fn fan_dto(fan: &Fan) -> Result<FanDto, IoError> {
    Ok(FanDto {
        rank: fan.rank(),
        rays: fan
            .rays()
            .iter()
            .map(|r| small_vec(r.coords(), "rays"))
            .collect::<Result<_, _>>()?,
        max_cones: fan.max_cones().iter().map(|c| c.rays().to_vec()).collect(),
    })
}

fn rationals(v: &[Rational]) -> Vec<RationalString> {
    v.iter().cloned().map(RationalString).collect()
}

/// The payload object of a document.
pub fn payload(doc: &Document) -> Result<Value, IoError> {
    let value = match doc {
        Document::Fan(f) => serde_json::to_value(fan_dto(f)?),
        Document::Pair(p) => {
            let f = fan_dto(p.fan())?;
            serde_json::to_value(PairDto {
                rank: f.rank,
                rays: f.rays,
                max_cones: f.max_cones,
                coeffs: rationals(p.coeffs()),
            })
        }
        Document::NumericalPair(p) => {
            let f = fan_dto(p.fan())?;
            let components = p
                .components()
                .iter()
                .map(|c| {
                    Ok(ComponentDto {
                        class: small_vec(&c.class, "class")?,
                        coeff: RationalString(c.coeff.clone()),
                        count: c
                            .count
                            .to_u64()
                            .ok_or_else(|| IoError::schema("count", "count too large"))?,
                    })
                })
                .collect::<Result<_, IoError>>()?;
            serde_json::to_value(NumericalPairDto {
                rank: f.rank,
                rays: f.rays,
                max_cones: f.max_cones,
                components,
            })
        }
        Document::Arrangement(p) => serde_json::to_value(ArrangementDto {
            lines: p
                .lines()
                .iter()
                .map(|l| l.clone().map(RationalString))
                .collect(),
            coeffs: rationals(p.coeffs()),
        }),
        Document::Morphism(m) => serde_json::to_value(MorphismDto {
            source: fan_dto(m.source())?,
            target: fan_dto(m.target())?,
            matrix: m
                .matrix()
                .to_rows()
                .iter()
                .map(|r| small_vec(r, "matrix"))
                .collect::<Result<_, _>>()?,
        }),
        Document::TowerSpec(s) => serde_json::to_value(TowerSpecDto {
            stages: s
                .stages
                .iter()
                .map(|st| {
                    Ok(StageDto {
                        dim: st.dim,
                        twists: st
                            .twists
                            .iter()
                            .map(|t| small_vec(t, "twists"))
                            .collect::<Result<_, _>>()?,
                    })
                })
                .collect::<Result<_, IoError>>()?,
        }),
    };
    value.map_err(|e| IoError::schema("payload", e))
}

/// The full envelope as a JSON value.
pub fn to_value(doc: &Document) -> Result<Value, IoError> {
    let mut map = Map::new();
    map.insert(
        "schema_version".into(),
        Value::String(SCHEMA_VERSION.into()),
    );
    map.insert("kind".into(), Value::String(doc.kind().as_str().into()));
    map.insert("payload".into(), payload(doc)?);
    Ok(Value::Object(map))
}

/// Serializes a document as pretty-printed JSON with a trailing newline.
pub fn write_document(doc: &Document) -> Result<String, IoError> {
    let mut s =
        serde_json::to_string_pretty(&to_value(doc)?).map_err(|e| IoError::schema("$", e))?;
    s.push('\n');
    Ok(s)
}

/// Parses a single vector written as comma-separated integers, e.g. `"1,-2"`.
pub fn parse_int_list(s: &str) -> Result<Vec<BigInt>, IoError> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| IoError::schema("argument", format!("invalid integer {t:?}")))
        })
        .collect()
}

pub fn parse_int_vector(s: &str) -> Result<IntVector, IoError> {
    IntVector::new(parse_int_list(s)?).map_err(|e| IoError::schema("argument", e))
}
