//! Stable JSON and CSV renderings of results.

use std::fmt::Write as _;

use serde::{Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::factor::{DeltaSet, LengthSet, Limits};
use crate::group::Block;
use crate::numerical::{NmScan, Scalar};
use crate::survey::{Status, SurveyConfig, SurveyReport};
use crate::witness::ArchimedeanWitness;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub(crate) fn ser_block<S: Serializer>(b: &Block, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&b.to_text())
}

pub(crate) fn ser_opt_block<S: Serializer>(b: &Option<Block>, s: S) -> Result<S::Ok, S::Error> {
    match b {
        Some(b) => s.serialize_some(&b.to_text()),
        None => s.serialize_none(),
    }
}

pub(crate) fn ser_blocks<S: Serializer>(bs: &[Block], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(bs.iter().map(Block::to_text))
}

/// Hex SHA-256 of the canonical JSON of a survey configuration and limits.
pub fn config_hash(config: &SurveyConfig, limits: &Limits) -> String {
    let canonical = serde_json::json!({ "config": config, "limits": limits, "version": VERSION });
    hex::encode(Sha256::digest(canonical.to_string().as_bytes()))
}

/// One factored block.
#[derive(Clone, Debug, Serialize)]
pub struct FactorRecord {
    pub n: u64,
    #[serde(serialize_with = "ser_block")]
    pub block: Block,
    pub lengths: LengthSet,
    pub delta: DeltaSet,
    pub num_factorizations: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub catenary: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NmRecord<T: Scalar> {
    pub gens: Vec<T>,
    pub elt: T,
    pub lengths: LengthSet,
    pub delta: DeltaSet,
}

#[derive(Serialize)]
struct SubsetRow<'a> {
    set: &'a [u64],
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
}

#[derive(Serialize)]
struct CardRow {
    card: usize,
    witness: String,
}

#[derive(Serialize)]
struct SurveyJson<'a> {
    version: &'static str,
    config_hash: String,
    config: &'a SurveyConfig,
    limits: &'a Limits,
    complete: bool,
    blocks_examined: u64,
    #[serde(serialize_with = "ser_blocks")]
    skipped_blocks: &'a [Block],
    delta_union: Vec<u64>,
    max_delta_card: Option<CardRow>,
    out_of_range: Vec<SubsetRow<'a>>,
    subsets: Vec<SubsetRow<'a>>,
}

fn subset_row<'a>(t: &'a [u64], status: &Status) -> SubsetRow<'a> {
    SubsetRow {
        set: t,
        status: status.label(),
        witness: match status {
            Status::Realized(w) => Some(w.to_text()),
            _ => None,
        },
    }
}

pub fn survey_json(report: &SurveyReport) -> String {
    let doc = SurveyJson {
        version: VERSION,
        config_hash: config_hash(&report.config, &report.limits),
        config: &report.config,
        limits: &report.limits,
        complete: report.is_complete(),
        blocks_examined: report.blocks_examined,
        skipped_blocks: &report.skipped,
        delta_union: report.delta_union.iter().copied().collect(),
        max_delta_card: report.max_delta_card.as_ref().map(|(card, w)| CardRow { card: *card, witness: w.to_text() }),
        out_of_range: report
            .out_of_range
            .iter()
            .map(|(t, w)| SubsetRow { set: t, status: "realized", witness: Some(w.to_text()) })
            .collect(),
        subsets: report.entries.iter().map(|(t, s)| subset_row(t, s)).collect(),
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("report serializes");
    out.push('\n');
    out
}

fn join(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

/// One row per subset: `set,status,witness`, elements space-separated.
pub fn survey_csv(report: &SurveyReport) -> String {
    let mut out = String::from("set,status,witness\n");
    for (t, s) in &report.entries {
        let witness = match s {
            Status::Realized(w) => w.to_text(),
            _ => String::new(),
        };
        let _ = writeln!(out, "{},{},{}", join(t), s.label(), witness);
    }
    out
}

pub fn survey_text(report: &SurveyReport) -> String {
    let mut out = format!(
        "Z_{} survey, |x| <= {}: {} blocks{}\n",
        report.config.group.order(),
        report.config.max_len,
        report.blocks_examined,
        if report.is_complete() { String::new() } else { format!(", {} skipped", report.skipped.len()) }
    );
    for (t, s) in &report.entries {
        let _ = match s {
            Status::Realized(w) => writeln!(out, "  {{{}}}  realized by {w}", join(t).replace(' ', ",")),
            other => writeln!(out, "  {{{}}}  {}", join(t).replace(' ', ","), other.label()),
        };
    }
    out
}

/// `s,delta` rows for every element of the scan.
pub fn nm_scan_csv<T: Scalar>(scan: &NmScan<T>) -> String {
    let mut out = String::from("s,delta\n");
    for (s, d) in &scan.deltas {
        let _ = writeln!(out, "{s},{}", join(d.as_slice()));
    }
    out
}

#[derive(Serialize)]
struct RealizedRow<T> {
    set: Vec<u64>,
    witness: T,
}

#[derive(Serialize)]
struct NmScanSummary<'a, T: Scalar> {
    gens: &'a [T],
    up_to: T,
    bound_limited: bool,
    delta_union: Vec<u64>,
    realized: Vec<RealizedRow<T>>,
}

pub fn nm_scan_summary<T: Scalar>(scan: &NmScan<T>) -> String {
    let doc = NmScanSummary {
        gens: &scan.generators,
        up_to: scan.up_to,
        bound_limited: scan.bound_limited,
        delta_union: scan.delta_union.iter().copied().collect(),
        realized: scan.realized.iter().map(|(t, &w)| RealizedRow { set: t.clone(), witness: w }).collect(),
    };
    serde_json::to_string(&doc).expect("summary serializes")
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessRecord {
    #[serde(flatten)]
    pub witness: ArchimedeanWitness,
    pub predicted_lengths: LengthSet,
    pub predicted_delta: DeltaSet,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub actual_lengths: Option<LengthSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::CyclicGroup;

    #[test]
    fn factor_record_shape() {
        let g = CyclicGroup::new(5).unwrap();
        let rec = FactorRecord {
            n: 5,
            block: Block::parse(g, "1^8 2 4^5").unwrap(),
            lengths: LengthSet::from(vec![3, 5, 6]),
            delta: DeltaSet::from(vec![1, 2]),
            num_factorizations: 4,
            catenary: None,
        };
        assert_eq!(
            serde_json::to_string(&rec).unwrap(),
            r#"{"n":5,"block":"1^8 2 4^5","lengths":[3,5,6],"delta":[1,2],"num_factorizations":4}"#
        );
    }

    #[test]
    fn nm_record_shape() {
        let rec = NmRecord {
            gens: vec![7u64, 10, 12],
            elt: 56,
            lengths: LengthSet::from(vec![5, 6, 8]),
            delta: DeltaSet::from(vec![1, 2]),
        };
        assert_eq!(
            serde_json::to_string(&rec).unwrap(),
            r#"{"gens":[7,10,12],"elt":56,"lengths":[5,6,8],"delta":[1,2]}"#
        );
    }

    #[test]
    fn config_hash_tracks_config() {
        let g = CyclicGroup::new(5).unwrap();
        let a = SurveyConfig::new(g, 14).unwrap();
        let b = SurveyConfig::new(g, 13).unwrap();
        let l = Limits::default();
        assert_eq!(config_hash(&a, &l), config_hash(&a.clone(), &l));
        assert_ne!(config_hash(&a, &l), config_hash(&b, &l));
    }
}
