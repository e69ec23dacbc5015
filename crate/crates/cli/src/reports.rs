//! Report object shapes. Struct field order is the serialized key order and
//! is part of the versioned output format.

use crossl_core::bounds::{BoundResult, RationalBound};
use crossl_core::search::MatchVerdict;
use serde::{Deserialize, Serialize};

#[derive(Serialize)]
pub struct ErrorReport {
    pub error: String,
}

#[derive(Serialize)]
pub struct BoundReport {
    pub mode: String,
    pub n: u32,
    pub k: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    #[serde(rename = "L", skip_serializing_if = "Option::is_none")]
    pub l: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regime: Option<String>,
    pub value: String,
    pub asymptotic: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub terms: Vec<(u32, String)>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub extremal_classes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub argmax_m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<u32>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rational: Option<RationalBound>,
}

impl BoundReport {
    pub fn from_core(b: BoundResult) -> Self {
        BoundReport {
            mode: b.mode.clone(),
            n: b.n,
            k: b.k,
            r: b.r,
            l: Some(b.l.clone()),
            regime: Some(b.regime.as_str().to_string()),
            value: b.value.clone(),
            asymptotic: b.asymptotic,
            terms: b.terms.clone(),
            extremal_classes: b.extremal_classes.clone(),
            argmax_m: None,
            branch: None,
            b: None,
            t: None,
            warnings: b.warnings,
            rational: None,
        }
    }

    pub fn simple(
        mode: &str,
        n: u32,
        k: u32,
        r: Option<u32>,
        l: Option<Vec<u32>>,
        value: String,
        asymptotic: bool,
    ) -> Self {
        BoundReport {
            mode: mode.to_string(),
            n,
            k,
            r,
            l,
            regime: None,
            value,
            asymptotic,
            terms: Vec::new(),
            extremal_classes: Vec::new(),
            argmax_m: None,
            branch: None,
            b: None,
            t: None,
            warnings: Vec::new(),
            rational: None,
        }
    }
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub mode: String,
    pub n: u32,
    pub k: u32,
    pub r: u32,
    #[serde(rename = "L")]
    pub l: Vec<u32>,
    pub bound: String,
    pub oracle: String,
    pub equal: bool,
    pub asymptotic: bool,
    pub witness_match: MatchVerdict,
    pub complete: bool,
}

#[derive(Serialize)]
pub struct SweepRow {
    pub mode: String,
    pub n: u32,
    pub k: u32,
    pub r: u32,
    #[serde(rename = "L")]
    pub l: Vec<u32>,
    pub bound: String,
    pub oracle: String,
    pub equal: bool,
    pub complete: bool,
    pub runtime_ms: u64,
    #[serde(skip)]
    pub oracle_num: Option<u64>,
    #[serde(skip)]
    pub bound_num: Option<u64>,
}

#[derive(Serialize)]
pub struct ThresholdEntry {
    pub k: u32,
    pub r: u32,
    #[serde(rename = "L")]
    pub l: Vec<u32>,
    pub empirical_threshold: Option<u32>,
}

#[derive(Serialize)]
pub struct VerifySweepReport {
    pub mode: String,
    pub rows: Vec<SweepRow>,
    pub all_equal: bool,
    pub thresholds: Vec<ThresholdEntry>,
}

#[derive(Serialize)]
pub struct ShadowReport {
    pub n: u32,
    pub k: u32,
    pub i: u32,
    pub family_size: usize,
    pub x: f64,
    pub shadow_size: usize,
    pub lovasz_lower_bound: f64,
    pub satisfied: bool,
}

#[derive(Serialize)]
pub struct ConstructReport {
    pub which: String,
    pub n: u32,
    pub k: u32,
    pub r: usize,
    pub sizes: Vec<usize>,
    pub total: usize,
    pub files: Vec<String>,
    pub families: Vec<serde_json::Value>,
}

#[derive(Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: String,
    pub exit: u8,
    pub output: String,
}
