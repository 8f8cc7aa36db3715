//! Experiment configuration and the curated ring lists.

use anyhow::bail;
use gradalg::io::{RingFile, VarSpec};
use gradalg::random::{ModuleParams, RingParams};
use gradalg::FieldSpec;
use serde::{Deserialize, Serialize};

use crate::Experiment;

pub const DEFAULT_MAX_RESOLUTION_RANK: usize = 400;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RingSource {
    /// The experiment's built-in list, cycled by trial index.
    Curated,
    Random(RingParams),
    Files { rings: Vec<RingFile> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", default)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub trials: usize,
    pub field: FieldSpec,
    /// Homological window `N`: Tor/Ext are computed for `i <= N`.
    pub homological_window: usize,
    /// Internal degree bound for series windows; `None` means max twist plus top degree.
    pub internal_degree: Option<i32>,
    /// Tor/Ext scans after the mandatory window stop before using a resolution module of larger rank.
    pub max_resolution_rank: usize,
    pub rings: RingSource,
    pub modules: ModuleParams,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            seed: 0,
            trials: 100,
            field: FieldSpec::default(),
            homological_window: 8,
            internal_degree: None,
            max_resolution_rank: DEFAULT_MAX_RESOLUTION_RANK,
            rings: RingSource::Curated,
            modules: ModuleParams::default(),
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self, experiment: Experiment) -> anyhow::Result<()> {
        if experiment == Experiment::M3Zero && self.homological_window < 5 {
            bail!(
                "the m^3 = 0 campaign needs Tor_2..Tor_5, got window {}",
                self.homological_window
            );
        }
        if self.field.characteristic() == 2 {
            bail!("characteristic 2 is not supported");
        }
        if let RingSource::Files { rings } = &self.rings {
            if rings.is_empty() {
                bail!("empty ring list");
            }
        }
        if let RingSource::Random(p) = &self.rings {
            if p.min_vars == 0 || p.min_vars > p.max_vars || p.max_vars > 4 {
                bail!("random rings need 1 <= min-vars <= max-vars <= 4");
            }
        }
        Ok(())
    }
}

/// A standard-graded ring file over the default field.
pub fn ring(names: &[&str], relations: &[&str]) -> RingFile {
    RingFile {
        field: FieldSpec::default(),
        vars: names
            .iter()
            .map(|n| VarSpec {
                name: (*n).into(),
                weight: 1,
            })
            .collect(),
        relations: relations.iter().map(|r| (*r).into()).collect(),
    }
}

/// `k[x,y]/(x^2, y^2)`.
pub fn exterior_like() -> RingFile {
    ring(&["x", "y"], &["x^2", "y^2"])
}

/// `k[x,y]/(x^2, xy, y^2)`.
pub fn square_of_max_ideal() -> RingFile {
    ring(&["x", "y"], &["x^2", "x*y", "y^2"])
}

/// Rings with `m^3 = 0` used by the Tor-rigidity campaign.
pub fn cube_zero_rings() -> Vec<RingFile> {
    vec![
        exterior_like(),
        square_of_max_ideal(),
        ring(&["x", "y", "z"], &["x^2", "y^2", "z^2", "x*y", "x*z", "y*z"]),
        ring(&["x", "y"], &["x^2", "x*y^2", "y^3"]),
    ]
}

/// Artinian rings of type 1 and of larger type.
pub fn tachikawa_rings() -> Vec<RingFile> {
    vec![
        exterior_like(),
        square_of_max_ideal(),
        ring(&[], &[]),
        ring(&["x"], &["x^3"]),
        ring(&["x", "y"], &["x^2", "y^3"]),
        ring(&["x", "y", "z"], &["x^2", "y^2", "z^2"]),
        ring(&["x", "y"], &["x^2", "x*y^2", "y^3"]),
        ring(&["x", "y"], &["x^2", "x*y", "y^3"]),
        ring(&["x", "y", "z"], &["x^2", "y^2", "z^2", "x*y", "x*z", "y*z"]),
    ]
}

pub fn semidualizing_rings() -> Vec<RingFile> {
    vec![
        exterior_like(),
        square_of_max_ideal(),
        ring(&["x"], &["x^3"]),
        ring(&["x", "y"], &["x^2", "x*y", "y^3"]),
    ]
}

pub fn curated_rings(experiment: Experiment) -> Vec<RingFile> {
    match experiment {
        Experiment::M3Zero => cube_zero_rings(),
        Experiment::LengthCriterion => vec![exterior_like()],
        Experiment::Tachikawa => tachikawa_rings(),
        Experiment::Semidualizing => semidualizing_rings(),
    }
}
