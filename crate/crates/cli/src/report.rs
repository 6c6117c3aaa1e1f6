//! The JSON report document shared by every subcommand.

use std::collections::BTreeMap;

use monostab_core::stability::{Certification, StabilityReport};
use monostab_core::{Error, MonomialIdeal, PrimeSet, Ring};
use serde::{Deserialize, Serialize};

use crate::suite::SuiteRow;

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Input {
    pub ring: Option<String>,
    pub ideal: Option<String>,
    pub options: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordDoc {
    pub n: usize,
    pub generators: usize,
    pub ass: Vec<Vec<String>>,
    pub depth: usize,
    pub closure_ass: Option<Vec<Vec<String>>>,
    pub closure_depth: Option<usize>,
    pub strong_persistence: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Indices {
    pub astab_observed: Option<usize>,
    pub dstab_observed: Option<usize>,
    pub astabbar_observed: Option<usize>,
    pub stable_ass: Option<Vec<Vec<String>>>,
    pub stable_closure_ass: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Timing {
    pub total_us: u64,
    pub per_power_us: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorDoc {
    pub kind: String,
    pub message: String,
    pub power: Option<usize>,
}

impl ErrorDoc {
    pub fn from_error(e: &Error) -> Self {
        let kind = match e.root() {
            Error::Usage(_) => "usage",
            Error::Parse { .. } => "parse",
            Error::Overflow(_) => "overflow",
            Error::Limit(_) => "limit",
            Error::AtPower { .. } => unreachable!("root is never wrapped"),
        };
        let power = match e {
            Error::AtPower { power, .. } => Some(*power),
            _ => None,
        };
        ErrorDoc {
            kind: kind.to_string(),
            message: e.to_string(),
            power,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ReportDocument {
    pub version: String,
    pub command: String,
    pub input: Input,
    pub ring: Vec<String>,
    pub ideal: Vec<String>,
    pub horizon: Option<usize>,
    pub records: Vec<RecordDoc>,
    pub indices: Indices,
    pub certification: BTreeMap<String, Certification>,
    pub suite: Vec<SuiteRow>,
    pub result: serde_json::Value,
    pub timing: Timing,
    pub error: Option<ErrorDoc>,
}

impl ReportDocument {
    pub fn new(command: &str, input: Input) -> Self {
        ReportDocument {
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            input,
            ..Default::default()
        }
    }

    pub fn set_ideal(&mut self, ideal: &MonomialIdeal) {
        self.ring = ideal.ring().names().to_vec();
        self.ideal = ideal.format_gens();
    }

    pub fn set_stability(&mut self, ring: &Ring, report: &StabilityReport) {
        self.horizon = Some(report.horizon);
        self.indices = Indices {
            astab_observed: report.astab,
            dstab_observed: report.dstab,
            astabbar_observed: report.astabbar,
            stable_ass: report.ass_infinity().map(|s| prime_names(ring, s)),
            stable_closure_ass: report.closure_ass_infinity().map(|s| prime_names(ring, s)),
        };
        let certs = [
            ("astab", &report.astab_cert),
            ("dstab", &report.dstab_cert),
            ("astabbar", &report.astabbar_cert),
        ];
        self.certification = certs
            .into_iter()
            .filter_map(|(k, c)| c.clone().map(|c| (k.to_string(), c)))
            .collect();
    }

    pub fn zero_timing(&mut self) {
        self.timing.total_us = 0;
        self.timing.per_power_us.iter_mut().for_each(|t| *t = 0);
    }

    /// Pretty JSON with keys sorted at every level.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        serde_json::to_string_pretty(&value).expect("value prints")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

pub fn prime_names(ring: &Ring, primes: &PrimeSet) -> Vec<Vec<String>> {
    primes.iter().map(|p| p.names(ring)).collect()
}

pub fn record_doc(ring: &Ring, r: &monostab_core::PowerRecord) -> RecordDoc {
    RecordDoc {
        n: r.n,
        generators: r.generators,
        ass: prime_names(ring, &r.ass),
        depth: r.depth,
        closure_ass: r.closure_ass.as_ref().map(|s| prime_names(ring, s)),
        closure_depth: r.closure_depth,
        strong_persistence: r.strong_persistence_at_n,
    }
}

pub fn format_primes(ring: &Ring, primes: &PrimeSet) -> String {
    let parts: Vec<String> = primes.iter().map(|p| p.format(ring)).collect();
    format!("{{{}}}", parts.join(", "))
}
