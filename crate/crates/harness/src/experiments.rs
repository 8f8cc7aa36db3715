//! The four campaigns. Each trial is independent; results are gathered in parallel and sorted by
//! trial index before the report is built.

use std::sync::Arc;

use anyhow::Context;
use gradalg::homological::{ext_with, hom_dim_and_mu, tor_with, HomologyReport};
use gradalg::identities::check_ab97;
use gradalg::io::{ModuleFile, RingFile};
use gradalg::module::{PresentedModule, StructuredModule};
use gradalg::resolution::Resolution;
use gradalg::{Field, FieldSpec, Ring};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::config::{curated_rings, ExperimentConfig};
use crate::instances::{instance, ring_for, trial_rng, InstanceParams};
use crate::ledger::proof_ledger_with;
use crate::report::{FieldRerun, Report, Status, TrialRecord};
use crate::{with_field, Experiment};

/// Attempts at drawing a module of prescribed length before falling back to a vector space.
const LENGTH_ATTEMPTS: usize = 400;


pub fn instance_params(experiment: Experiment, cfg: &ExperimentConfig) -> InstanceParams {
    InstanceParams {
        field: cfg.field,
        rings: cfg.rings.clone(),
        curated: curated_rings(experiment),
        modules: cfg.modules.clone(),
        require_cube_zero: experiment == Experiment::M3Zero,
    }
}

pub fn run(experiment: Experiment, cfg: &ExperimentConfig) -> anyhow::Result<Report> {
    cfg.validate(experiment)?;
    let params = instance_params(experiment, cfg);
    let trials = with_field!(cfg.field, |f| run_trials(experiment, cfg, &params, &f));
    Ok(Report::new(experiment.name(), cfg.clone(), trials))
}

/// Reruns the first `trials` trials over `F_7` and over the rationals and records how they compare.
pub fn char_check(experiment: Experiment, cfg: &ExperimentConfig, base: &Report, trials: usize) -> anyhow::Result<Vec<FieldRerun>> {
    let mut out = Vec::new();
    for field in [FieldSpec::PrimeField { p: 7 }, FieldSpec::Rationals] {
        let sub = ExperimentConfig {
            field,
            trials: trials.min(cfg.trials),
            ..cfg.clone()
        };
        let r = run(experiment, &sub)?;
        let same_status = r
            .trials
            .iter()
            .zip(&base.trials)
            .filter(|(a, b)| a.status == b.status)
            .count();
        out.push(FieldRerun {
            field,
            trials: r.summary.trials,
            falsifications: r.witnesses.len(),
            anomalies: r.summary.count(Status::Anomaly),
            same_status,
        });
    }
    Ok(out)
}

fn run_trials<K: Field>(experiment: Experiment, cfg: &ExperimentConfig, params: &InstanceParams, field: &K) -> Vec<TrialRecord> {
    (0..cfg.trials)
        .into_par_iter()
        .map(|index| {
            let mut rng = trial_rng(cfg.seed, index);
            let outcome = match experiment {
                Experiment::M3Zero => m3zero_trial(field, cfg, params, index),
                Experiment::LengthCriterion => length_trial(field, cfg, params, index, &mut rng),
                Experiment::Tachikawa => ring_of(field, params, index, &mut rng).and_then(|(file, ring)| tachikawa_trial(cfg, index, file, ring)),
                Experiment::Semidualizing => ring_of(field, params, index, &mut rng).and_then(|(file, ring)| semidualizing_trial(cfg, index, file, ring)),
            };
            outcome.unwrap_or_else(|e| {
                let ring = RingFile {
                    field: cfg.field,
                    vars: Vec::new(),
                    relations: Vec::new(),
                };
                TrialRecord::new(index, ring, None, (0, 0)).with(Status::Rejected, format!("{e:#}"))
            })
        })
        .collect()
}

fn ring_of<K: Field>(field: &K, params: &InstanceParams, index: usize, rng: &mut ChaCha8Rng) -> anyhow::Result<(RingFile, Arc<Ring<K>>)> {
    let (file, _) = ring_for(index, params, rng);
    let file = file.context("no acceptable random ring was drawn")?;
    let ring = Arc::new(file.build(field.clone())?);
    ring.require_artinian()?;
    Ok((file, ring))
}

#[derive(Clone, Copy)]
enum Functor {
    Tor,
    Ext,
}

/// `Tor_i(M, N)` or `Ext^i(M, N)` for `i` in `lo..=hi`, stopping at the first nonzero index or before
/// any `i` with `rank F_i > budget`. The returned window
/// ends at the last index examined; the flag is set when the budget cut the scan short.
fn scan<K: Field>(
    functor: Functor,
    res: &mut Resolution<K>,
    n: &StructuredModule<K>,
    lo: i32,
    hi: i32,
    budget: usize,
) -> (HomologyReport, bool) {
    let name = match functor {
        Functor::Tor => "tor",
        Functor::Ext => "ext",
    };
    let mut report = HomologyReport::new(name, (lo, hi));
    for i in lo..=hi {
        if res.module(i as usize).len() > budget {
            report.window = (lo, i - 1);
            return (report, true);
        }
        let step = match functor {
            Functor::Tor => tor_with(res, n, i, i, true),
            Functor::Ext => ext_with(res, n, i, i, true),
        };
        report.entries.extend(step.entries);
        if !report.vanishes() {
            report.window = (lo, i);
            break;
        }
    }
    (report, false)
}

/// `Tor_i(M, M)` for `2 <= i <= 5` over a ring with `m^3 = 0`; vanishing must force `M` free.
fn m3zero_trial<K: Field>(field: &K, cfg: &ExperimentConfig, params: &InstanceParams, index: usize) -> anyhow::Result<TrialRecord> {
    let inst = instance(cfg.seed, index, params).context("no acceptable random ring was drawn")?;
    let mut rec = TrialRecord::new(index, inst.ring.clone(), Some(inst.module.clone()), (2, 5));
    let ring = Arc::new(inst.ring.build(field.clone())?);
    if !ring.cube_of_max_ideal_vanishes() {
        return Ok(rec.with(Status::Rejected, "m^3 != 0"));
    }
    let m = inst.module.build(ring)?.minimal_presentation();
    let free = m.is_free();
    let mut res = Resolution::new(&m);
    // a free module is scanned over the whole window so the report shows every zero
    let tor = tor_with(&mut res, &m.structure(), 2, 5, !free);
    rec.data = json!({
        "mu": m.mu(),
        "length": m.length(),
        "free": free,
        "rejected-rings": inst.rejected_rings,
        "tor": tor,
    });
    if free {
        rec.tag("free");
        return Ok(if tor.vanishes() {
            rec.tag("free-with-zero-window");
            rec.with(Status::Pass, "free; Tor_2..Tor_5 vanish")
        } else {
            rec.with(Status::Anomaly, "free module with nonzero Tor: implementation fault")
        });
    }
    rec.tag("non-free");
    let ledger = proof_ledger_with(&m, &mut res, Some(tor.clone()))?;
    rec.data["ledger"] = serde_json::to_value(ledger)?;
    Ok(match tor.first_nonzero() {
        None => rec.with(Status::Falsification, "Tor_2..Tor_5 vanish but M is not free"),
        Some(i) => {
            rec.tag(format!("first-nonzero-tor-{i}"));
            rec.with(Status::Pass, format!("not free; Tor_{i} != 0"))
        }
    })
}

/// A direct sum of shifted copies of `k` with the given generator degrees.
fn vector_space<K: Field>(ring: &Arc<Ring<K>>, degrees: &[i32]) -> PresentedModule<K> {
    let k = PresentedModule::residue_field(ring.clone());
    degrees
        .iter()
        .fold(PresentedModule::zero(ring.clone()), |acc, &t| acc.direct_sum(&k.shift(-t)))
}

/// Module of length `l(R)` for the length-criterion campaign, by trial index:
/// the ring itself, a vector space, `m ⊕ k`, or a random presentation of the right length.
fn module_of_ring_length<K: Field>(ring: &Arc<Ring<K>>, index: usize, cfg: &ExperimentConfig, rng: &mut ChaCha8Rng) -> (&'static str, PresentedModule<K>) {
    let l = ring.length().unwrap_or(0);
    let twist = rng.gen_range(0..=1);
    match index % 4 {
        0 => ("ring", PresentedModule::free(ring.clone(), &[twist])),
        1 => {
            let degrees: Vec<i32> = (0..l).map(|_| rng.gen_range(0..=2)).collect();
            ("vector-space", vector_space(ring, &degrees))
        }
        2 => {
            let m = PresentedModule::maximal_ideal(ring.clone());
            ("max-ideal-plus-k", m.direct_sum(&vector_space(ring, &[twist])))
        }
        _ => {
            let top = ring.top_degree().unwrap_or(0);
            for _ in 0..LENGTH_ATTEMPTS {
                let file = gradalg::random::random_module_file(ring.vars(), top, &cfg.modules, rng);
                if let Ok(m) = file.build(ring.clone()) {
                    if m.length() == l {
                        return ("random", m);
                    }
                }
            }
            ("vector-space", vector_space(ring, &vec![0; l]))
        }
    }
}

/// `l(M) = l(R)` and `Tor_{1..N}(M, M) = 0` should only happen for `M ≅ R(-j)`.
fn length_trial<K: Field>(field: &K, cfg: &ExperimentConfig, params: &InstanceParams, index: usize, rng: &mut ChaCha8Rng) -> anyhow::Result<TrialRecord> {
    let (file, ring) = ring_of(field, params, index, rng)?;
    let n = cfg.homological_window as i32;
    let (kind, m) = module_of_ring_length(&ring, index, cfg, rng);
    let m = m.minimal_presentation();
    let mut rec = TrialRecord::new(index, file, Some(ModuleFile::from_module(&m)), (1, n));
    rec.tag(kind);
    let mut res = Resolution::new(&m);
    let (tor, truncated) = scan(Functor::Tor, &mut res, &m.structure(), 1, n, cfg.max_resolution_rank);
    if truncated {
        rec.tag("window-truncated");
    }
    let cyclic = m.is_cyclic();
    let certified = m.is_shifted_ring();
    rec.data = json!({
        "kind": kind,
        "length": m.length(),
        "ring-length": ring.length(),
        "mu": m.mu(),
        "cyclic": cyclic,
        "certified-shifted-ring": certified,
        "tor": tor,
    });
    Ok(match (tor.first_nonzero(), cyclic) {
        (None, _) if certified => {
            rec.tag("certified-ring");
            rec.with(Status::Pass, "Tor vanishes on the window; M is cyclic with zero annihilator")
        }
        (None, _) => rec.with(Status::Anomaly, "anomaly: Tor vanishes on the window but M is not R(-j); extend window"),
        (Some(i), false) => {
            rec.tag("non-cyclic-detected");
            rec.with(Status::Pass, format!("not cyclic; Tor_{i} != 0"))
        }
        (Some(i), true) => rec.with(Status::Anomaly, format!("M is R(-j) but Tor_{i} != 0: implementation fault")),
    })
}

/// `Ext^{1..N}(ω, R)`: vanishing should only happen for Gorenstein rings.
fn tachikawa_trial<K: Field>(cfg: &ExperimentConfig, index: usize, file: RingFile, ring: Arc<Ring<K>>) -> anyhow::Result<TrialRecord> {
    let n = cfg.homological_window as i32;
    let mut rec = TrialRecord::new(index, file, None, (1, n));
    let omega = StructuredModule::canonical(ring.clone())?.presentation();
    let r = ring.socle_dim()?;
    let h = ring.hilbert_polynomial()?;
    let palindromic = h.is_palindromic();
    let mut res = Resolution::new(&omega);
    let (ext, truncated) = scan(Functor::Ext, &mut res, &StructuredModule::free(ring.clone(), &[0]), 1, n, cfg.max_resolution_rank);
    if truncated {
        rec.tag("window-truncated");
    }
    rec.data = json!({
        "type": r,
        "hilbert": h.to_string(),
        "palindromic": palindromic,
        "ext": ext,
    });
    let gorenstein = r == 1;
    rec.tag(if gorenstein { "gorenstein" } else { "non-gorenstein" });
    Ok(match (ext.first_nonzero(), gorenstein) {
        (None, true) if palindromic => rec.with(Status::Pass, "Gorenstein; Ext vanishes on the window; H_R palindromic"),
        (None, true) => rec.with(Status::Anomaly, "Gorenstein ring with non-palindromic Hilbert function"),
        (None, false) => rec.with(Status::Anomaly, format!("anomaly: extend window (type {r}, Ext^1..Ext^{n} vanish)")),
        (Some(i), false) => {
            rec.tag("nonvanishing-found");
            rec.data["first-nonzero-index"] = json!(i);
            rec.with(Status::Pass, format!("type {r}; Ext^{i}(omega, R) != 0"))
        }
        (Some(i), true) => rec.with(Status::Anomaly, format!("Gorenstein ring with Ext^{i}(omega, R) != 0: implementation fault")),
    })
}

/// Semidualizing test for `C ∈ {R, ω, k}` plus the Hilbert series identity on the ones that pass.
fn semidualizing_trial<K: Field>(cfg: &ExperimentConfig, index: usize, file: RingFile, ring: Arc<Ring<K>>) -> anyhow::Result<TrialRecord> {
    let n = cfg.homological_window as i32;
    let mut rec = TrialRecord::new(index, file, None, (1, n));
    let l = ring.length().unwrap_or(0);
    let h_r = ring.hilbert_polynomial()?;
    let gorenstein = ring.is_gorenstein();
    let candidates = [
        ("R", PresentedModule::free(ring.clone(), &[0])),
        ("omega", StructuredModule::canonical(ring.clone())?.presentation()),
        ("k", PresentedModule::residue_field(ring.clone())),
    ];
    let mut rows = Vec::new();
    let mut problems = Vec::new();
    let mut falsified = Vec::new();
    for (name, c) in &candidates {
        let c = c.minimal_presentation();
        let structure = c.structure();
        let (hom_dim, hom_mu) = hom_dim_and_mu(&c, &structure);
        let hom_is_ring = hom_dim == l && hom_mu == 1;
        let mut res = Resolution::new(&c);
        let (ext, truncated) = scan(Functor::Ext, &mut res, &structure, 1, n, cfg.max_resolution_rank);
        if truncated {
            rec.tag(format!("window-truncated-{name}"));
        }
        let semidualizing = hom_is_ring && ext.vanishes();
        let shifted_ring = c.is_shifted_ring();
        let ab97 = semidualizing.then(|| check_ab97(&h_r, &c.hilbert_polynomial()));
        if let Some(a) = &ab97 {
            if !a.verdict.pass {
                falsified.push(format!("{name}: H_R(1/t)H_R(t) != H_C(1/t)H_C(t)"));
            } else if !a.multiplicities_equal {
                falsified.push(format!("{name}: e_R(C) != e(R)"));
            }
        }
        let expected = match *name {
            "k" => l == 1,
            _ => true,
        };
        if semidualizing != expected {
            problems.push(format!("{name}: semidualizing = {semidualizing}, expected {expected}"));
        }
        if semidualizing && gorenstein && !shifted_ring {
            falsified.push(format!("{name}: semidualizing over a Gorenstein ring but not R(-j)"));
        }
        if semidualizing {
            rec.tag(format!("semidualizing-{name}"));
        } else {
            rec.tag(format!("rejected-{name}"));
        }
        rows.push(json!({
            "candidate": name,
            "hom-dim": hom_dim,
            "hom-mu": hom_mu,
            "ext": ext,
            "semidualizing": semidualizing,
            "shifted-ring": shifted_ring,
            "ab97": ab97.as_ref().map(|a| json!({
                "lhs": a.lhs.to_string(),
                "rhs": a.rhs.to_string(),
                "verdict": a.verdict,
            })),
        }));
    }
    rec.data = json!({ "gorenstein": gorenstein, "length": l, "candidates": rows });
    Ok(if !falsified.is_empty() {
        rec.with(Status::Falsification, falsified.join("; "))
    } else if !problems.is_empty() {
        rec.with(Status::Anomaly, problems.join("; "))
    } else {
        rec.with(Status::Pass, "R and omega semidualizing; k only over a field")
    })
}
