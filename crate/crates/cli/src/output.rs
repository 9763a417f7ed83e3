//! JSON payloads emitted by each command.

use std::collections::BTreeMap;

use schemars::{schema_for, JsonSchema};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use sumfree_core::fourier::{DensityProfile, NegativeCharacter};
use sumfree_core::search::{EnumerationRecord, GroupRecord};
use sumfree_core::set::KneserRecord;
use sumfree_core::theorems::TheoremReport;
use sumfree_core::SetRecord;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
    /// Witness elements, when the check produced any.
    #[serde(default)]
    pub witness: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct VerifySetOutput {
    pub group: GroupRecord,
    pub set: SetRecord,
    pub checks: Vec<CheckResult>,
    pub all_pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct SpectrumRow {
    pub c: Vec<u32>,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct TripleRecord {
    pub fourier_sum_re: f64,
    pub fourier_sum_im: f64,
    pub solution_count: u64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct FourierOutput {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub group: Option<GroupRecord>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub density: Option<f64>,
    #[serde(default)]
    pub spectrum: Vec<SpectrumRow>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub parseval_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub triple: Option<TripleRecord>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub negative_character: Option<NegativeCharacter>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub coset_densities: Option<DensityProfile>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub scan_step: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub worst_margin: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub margin_at_start: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct ConstructOutput {
    pub group: GroupRecord,
    pub variant: String,
    pub set: SetRecord,
    pub sum_free: bool,
    pub maximal: bool,
    pub periodic: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct KneserOutput {
    pub group: GroupRecord,
    pub report: KneserRecord,
}

pub const COMMANDS: [&str; 6] = ["verify-set", "enumerate", "fourier", "construct", "check-theorem", "kneser"];

/// Schema of the `--json` payload of `command`.
pub fn schema(command: &str) -> Option<Value> {
    let s = match command {
        "verify-set" => schema_for!(VerifySetOutput),
        "enumerate" => schema_for!(EnumerationRecord),
        "fourier" => schema_for!(FourierOutput),
        "construct" => schema_for!(ConstructOutput),
        "check-theorem" => schema_for!(TheoremReport),
        "kneser" => schema_for!(KneserOutput),
        _ => return None,
    };
    Some(serde_json::to_value(s).expect("schema serializes"))
}

pub fn all_schemas() -> Value {
    let map: BTreeMap<&str, Value> = COMMANDS.iter().map(|&c| (c, schema(c).expect("known command"))).collect();
    serde_json::to_value(map).expect("schemas serialize")
}
