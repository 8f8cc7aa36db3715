//! Verification campaigns over small Artinian graded rings, their reports and the proof ledger.

pub mod config;
pub mod experiments;
pub mod instances;
pub mod ledger;
pub mod report;

pub use gradalg;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    /// `Tor_{2..5}(M, M) = 0` forces `M` free when `m^3 = 0`.
    #[value(name = "m3zero")]
    #[serde(rename = "m3zero")]
    M3Zero,
    LengthCriterion,
    Tachikawa,
    Semidualizing,
}

impl Experiment {
    pub const ALL: [Experiment; 4] = [
        Experiment::M3Zero,
        Experiment::LengthCriterion,
        Experiment::Tachikawa,
        Experiment::Semidualizing,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::M3Zero => "m3zero",
            Experiment::LengthCriterion => "length-criterion",
            Experiment::Tachikawa => "tachikawa",
            Experiment::Semidualizing => "semidualizing",
        }
    }
}

/// Evaluates `body` with `$f` bound to the field named by a `FieldSpec`.
/// Must be used inside a function returning a `Result` that absorbs `gradalg::Error`.
#[macro_export]
macro_rules! with_field {
    ($spec:expr, |$f:ident| $body:expr) => {
        match $spec {
            $crate::gradalg::FieldSpec::PrimeField { p } => {
                let $f = $crate::gradalg::PrimeField::new(p)?;
                $body
            }
            $crate::gradalg::FieldSpec::Rationals => {
                let $f = $crate::gradalg::Rationals;
                $body
            }
        }
    };
}
