//! Campaign reports: per-trial records, witnesses, summary counts and exit codes.

use std::collections::BTreeMap;
use std::io::Write;

use gradalg::io::{canonical_string, ModuleFile, RingFile};
use gradalg::FieldSpec;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::ExperimentConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    /// Sample discarded before any check (ring filter, parse failure).
    Rejected,
    /// Hypothesis not met on the window; nothing was asserted.
    Inapplicable,
    /// Unexpected but not a counterexample, e.g. vanishing that may stop past the window.
    Anomaly,
    /// A fully serialized sample contradicting the statement under test.
    Falsification,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct TrialRecord {
    pub index: usize,
    pub status: Status,
    pub ring: RingFile,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleFile>,
    /// Homological window that was examined.
    pub window: (i32, i32),
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// Labels counted into the summary tallies.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tags: Vec<String>,
    pub data: Value,
}

impl TrialRecord {
    pub fn new(index: usize, ring: RingFile, module: Option<ModuleFile>, window: (i32, i32)) -> Self {
        TrialRecord {
            index,
            status: Status::Pass,
            ring,
            module,
            window,
            note: None,
            tags: Vec::new(),
            data: Value::Null,
        }
    }

    pub fn with(mut self, status: Status, note: impl Into<String>) -> Self {
        self.status = status;
        self.note = Some(note.into());
        self
    }

    pub fn tag(&mut self, t: impl Into<String>) {
        self.tags.push(t.into());
    }
}

/// Everything needed to re-run a falsification claim independently.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct Witness {
    pub index: usize,
    pub ring: RingFile,
    pub module: Option<ModuleFile>,
    pub window: (i32, i32),
    pub claim: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct Summary {
    pub trials: usize,
    pub counts: BTreeMap<Status, usize>,
    /// How many trials carry each tag.
    pub tallies: BTreeMap<String, usize>,
}

impl Summary {
    pub fn count(&self, s: Status) -> usize {
        self.counts.get(&s).copied().unwrap_or(0)
    }
}

/// Outcome of rerunning a campaign over another field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct FieldRerun {
    pub field: FieldSpec,
    pub trials: usize,
    pub falsifications: usize,
    pub anomalies: usize,
    /// Trials whose status matches the base run.
    pub same_status: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct Report {
    pub experiment: String,
    pub config: ExperimentConfig,
    pub summary: Summary,
    pub witnesses: Vec<Witness>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub char_check: Vec<FieldRerun>,
    pub trials: Vec<TrialRecord>,
}

impl Report {
    /// Sorts by trial index, counts statuses and lifts falsifications into witnesses.
    pub fn new(experiment: &str, config: ExperimentConfig, mut trials: Vec<TrialRecord>) -> Self {
        trials.sort_by_key(|t| t.index);
        let mut summary = Summary {
            trials: trials.len(),
            ..Summary::default()
        };
        for t in &trials {
            *summary.counts.entry(t.status).or_insert(0) += 1;
            for tag in &t.tags {
                *summary.tallies.entry(tag.clone()).or_insert(0) += 1;
            }
        }
        let witnesses = trials
            .iter()
            .filter(|t| t.status == Status::Falsification)
            .map(|t| Witness {
                index: t.index,
                ring: t.ring.clone(),
                module: t.module.clone(),
                window: t.window,
                claim: t.note.clone().unwrap_or_default(),
            })
            .collect();
        Report {
            experiment: experiment.into(),
            config,
            summary,
            witnesses,
            char_check: Vec::new(),
            trials,
        }
    }

    pub fn tally(&self, key: &str) -> usize {
        self.summary.tallies.get(key).copied().unwrap_or(0)
    }

    pub fn falsifications(&self) -> usize {
        self.witnesses.len() + self.char_check.iter().map(|c| c.falsifications).sum::<usize>()
    }

    pub fn anomalies(&self) -> usize {
        self.summary.count(Status::Anomaly) + self.char_check.iter().map(|c| c.anomalies).sum::<usize>()
    }

    /// 0 when everything passed, 2 on anomalies, 3 when a falsification witness was emitted.
    pub fn exit_code(&self) -> i32 {
        if self.falsifications() > 0 {
            3
        } else if self.anomalies() > 0 {
            2
        } else {
            0
        }
    }

    /// Pretty JSON with object keys sorted; identical inputs give identical bytes.
    pub fn to_canonical_json(&self) -> String {
        canonical_string(self)
    }

    /// One row per trial: index, status, ring relations, module shape and note.
    pub fn write_csv<W: Write>(&self, w: W) -> csv::Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["index", "status", "relations", "generators", "relations_of_module", "note"])?;
        for t in &self.trials {
            let status = serde_json::to_value(t.status).expect("status serializes");
            out.write_record([
                t.index.to_string(),
                status.as_str().unwrap_or_default().to_string(),
                t.ring.relations.join(" "),
                t.module.as_ref().map_or(String::new(), |m| m.targets.len().to_string()),
                t.module.as_ref().map_or(String::new(), |m| m.sources.len().to_string()),
                t.note.clone().unwrap_or_default(),
            ])?;
        }
        out.flush()?;
        Ok(())
    }
}
