//! The machine-readable output document.
//!
//! Key order is the struct field order, and absent optional sections are
//! omitted, so `serde_json::to_string` is byte-deterministic.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use toric_hj::lattice::LatticeVector;
use toric_hj::oracle::Report;

/// An integer that is written as a JSON number when it fits in `i64`, and
/// as `{"bigint": "<decimal>"}` otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JsonInt(pub BigInt);

impl From<BigInt> for JsonInt {
    fn from(v: BigInt) -> Self {
        JsonInt(v)
    }
}

impl From<&BigInt> for JsonInt {
    fn from(v: &BigInt) -> Self {
        JsonInt(v.clone())
    }
}

impl From<i64> for JsonInt {
    fn from(v: i64) -> Self {
        JsonInt(v.into())
    }
}

impl fmt::Display for JsonInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Serialize, Deserialize)]
struct BigIntMarker {
    bigint: String,
}

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => BigIntMarker {
                bigint: self.0.to_string(),
            }
            .serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Small(i64),
            Unsigned(u64),
            Big(BigIntMarker),
        }
        match Repr::deserialize(d)? {
            Repr::Small(v) => Ok(JsonInt(v.into())),
            Repr::Unsigned(v) => Ok(JsonInt(v.into())),
            Repr::Big(m) => m
                .bigint
                .parse()
                .map(JsonInt)
                .map_err(serde::de::Error::custom),
        }
    }
}

pub type JsonPoint = [JsonInt; 2];

pub fn point(v: &LatticeVector) -> JsonPoint {
    [JsonInt::from(&v.x), JsonInt::from(&v.y)]
}

pub fn points(vs: &[LatticeVector]) -> Vec<JsonPoint> {
    vs.iter().map(point).collect()
}

pub fn ints(xs: &[BigInt]) -> Vec<JsonInt> {
    xs.iter().map(JsonInt::from).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HjBlock {
    pub num: JsonInt,
    pub den: JsonInt,
    pub b: Vec<JsonInt>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_sequence: Option<Vec<JsonInt>>,
    /// Reduced fractions written as `"num/den"` (or `"num"` when integral).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta_sequence: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub name: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

pub fn check_entries(report: &Report) -> Vec<CheckEntry> {
    report
        .checks
        .iter()
        .map(|c| CheckEntry {
            name: c.name.clone(),
            pass: c.pass,
            detail: c.detail.clone(),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InitBlock {
    pub n1: JsonPoint,
    pub p0: JsonInt,
    pub q0: JsonInt,
}

/// One resolved cone of a fan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionBlock {
    pub cone: [JsonPoint; 2],
    pub det: JsonInt,
    pub init: InitBlock,
    pub b: Vec<JsonInt>,
    pub rays: Vec<JsonPoint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularEntry {
    pub index: usize,
    pub det: JsonInt,
}

/// The fan that was resolved, with its singular cones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceBlock {
    pub rays: Vec<JsonPoint>,
    pub singular_cones: Vec<SingularEntry>,
}

/// A Hirzebruch surface the resolution maps to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetBlock {
    pub label: String,
    pub n: JsonInt,
    pub rays: Vec<JsonPoint>,
    pub refines: bool,
    /// Self-intersection of `D(-e2)` on the target.
    pub minus_e2_self_intersection: JsonInt,
    /// Whether the morphism keeps the self-intersection of `D(-e2)`.
    pub preserves_minus_e2: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryBlock {
    pub pairs_checked: usize,
    pub failures: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<[JsonInt; 3]>,
    #[serde(default)]
    pub rays: Vec<JsonPoint>,
    #[serde(default)]
    pub max_cones: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub self_intersections: Option<Vec<JsonInt>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hj: Option<HjBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<CheckEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub init: Option<InitBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<SourceBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resolutions: Option<Vec<ResolutionBlock>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub targets: Option<Vec<TargetBlock>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub summary: Option<SummaryBlock>,
}

impl OutputDocument {
    pub fn all_checks_passed(&self) -> bool {
        self.checks.iter().flatten().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("document serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<OutputDocument> {
        serde_json::from_str(s)
    }
}
