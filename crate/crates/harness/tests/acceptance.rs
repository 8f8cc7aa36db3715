//! Acceptance run: one line per criterion, nonzero exit if any fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use common::oracle::{betti_numbers, Quotient};
use common::{build, curated, f101, sample, small_modules};
use gradalg::homological::tor_with;
use gradalg::identities::{check_ab97, check_epsilon_identity, check_hilbert_poincare, check_lemma_hilbert_formulas, check_poincare_s2};
use gradalg::module::{PresentedModule, StructuredModule};
use gradalg::powers::{alpha, s2_h0_check, symmetric_square_complex};
use gradalg::random::RingParams;
use gradalg::resolution::{resolve, Resolution};
use gradalg::series::LaurentPoly;
use gradalg::{Field, FieldSpec};
use gradalg_harness::config::{cube_zero_rings, exterior_like, square_of_max_ideal, ExperimentConfig, RingSource};
use gradalg_harness::experiments::{char_check, run};
use gradalg_harness::report::Status;
use gradalg_harness::Experiment;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn poly(s: &str) -> LaurentPoly {
    s.parse().unwrap()
}

fn nonzero(m: impl IntoIterator<Item = ((i32, i32), usize)>) -> BTreeMap<(i32, i32), usize> {
    m.into_iter().filter(|e| e.1 > 0).collect()
}

fn series_identity_suite() -> Outcome {
    let e = build(&exterior_like());
    let k = PresentedModule::residue_field(e.clone());
    let betti = Resolution::new(&k).betti_table(4);
    for i in 0..=4 {
        ensure!(betti.total(i) == i as usize + 1, "beta_{i}(k) over E is {}", betti.total(i));
        ensure!(betti.get(i, i) == i as usize + 1, "beta_{i},{i}(k) over E is {}", betti.get(i, i));
    }
    let oracle = betti_numbers(&Quotient::from_file(&exterior_like()), &gradalg::io::ModuleFile::from_module(&k), &exterior_like(), 4);
    ensure!(nonzero(betti.entries()) == nonzero(oracle), "k over E disagrees with the oracle");
    ensure!(check_hilbert_poincare(&k, 8).map_err(|e| e.to_string())?.pass, "k over E");

    let mut rings = BTreeMap::new();
    let mut checked = 0;
    for seed in 0..120u64 {
        let s = sample(seed, &small_modules());
        if !s.ring.is_artinian() {
            continue;
        }
        let m = s.module.minimal_presentation();
        let t0 = m.targets().iter().copied().min().unwrap_or(0);
        let n = (8 - t0).max(1) as usize;
        let v = check_hilbert_poincare(&s.module, n).map_err(|e| e.to_string())?;
        ensure!(v.window <= 8, "window {} above 8", v.window);
        ensure!(v.pass, "seed {seed}: {:?}", v.detail);
        let lib = Resolution::new(&s.module).betti_table(3);
        let want = betti_numbers(&Quotient::from_file(&s.ring_file), &s.module_file, &s.ring_file, 3);
        ensure!(nonzero(lib.entries()) == nonzero(want), "seed {seed}: Betti table disagrees with the oracle");
        *rings.entry(s.ring_file.relations.join(",")).or_insert(0) += 1;
        checked += 1;
    }
    ensure!(checked >= 50 && rings.len() >= 5, "{checked} modules over {} rings", rings.len());
    Ok(format!("{checked} modules over {} rings, Betti tables match the oracle; beta_i(k/E) = i+1", rings.len()))
}

fn symmetric_square_suite() -> Outcome {
    let two = f101().from_i64(2);
    let mut complexes = 0;
    for seed in 0..40u64 {
        let s = sample(seed, &small_modules());
        let steps = 1 + (seed % 2) as usize;
        let (x, _) = resolve(&s.module.minimal_presentation(), steps);
        ensure!(x.is_minimal(), "seed {seed}: resolution not minimal");
        let a = alpha(&x);
        ensure!(a.compose(&a).same_components(&a.scale(&two)), "seed {seed}: alpha^2 != 2 alpha");
        let sq = symmetric_square_complex(&x).map_err(|e| e.to_string())?;
        ensure!(sq.certificate().holds(), "seed {seed}: split exactness fails");
        let v = check_poincare_s2(&x, 2 * steps as i32).map_err(|e| e.to_string())?;
        ensure!(v.pass, "seed {seed}: {:?}", v.detail);
        ensure!(s2_h0_check(&x).map_err(|e| e.to_string())?.matches(), "seed {seed}: H_0(S2 X) != S2(H_0 X)");
        complexes += 1;
    }
    Ok(format!("{complexes} minimal complexes: alpha^2 = 2 alpha, split ranks, Poincare identity, H_0"))
}

fn hilbert_formula_suite() -> Outcome {
    let e = build(&exterior_like());
    let worked = check_lemma_hilbert_formulas(&PresentedModule::free(e.clone(), &[1, 0]), 8).map_err(|e| e.to_string())?;
    let h_r = e.hilbert_polynomial().map_err(|e| e.to_string())?;
    ensure!(worked.verdict.pass, "R(-1) + R: {:?}", worked.verdict);
    ensure!(worked.sym2 == h_r.mul(&poly("1 + t + t^2")), "S2 of R(-1) + R: {}", worked.sym2);
    ensure!(worked.wedge2 == h_r.mul(&poly("t")), "wedge2 of R(-1) + R: {}", worked.wedge2);

    let rings: Vec<_> = curated().iter().map(build).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut free_cases = 0;
    for case in 0..120 {
        let ring = rings[case % rings.len()].clone();
        let n = rng.gen_range(1..=3);
        let twists: Vec<i32> = (0..n).map(|_| rng.gen_range(-1..=2)).collect();
        let c = check_lemma_hilbert_formulas(&PresentedModule::free(ring, &twists), 8).map_err(|e| e.to_string())?;
        ensure!(c.verdict.pass, "free {twists:?}: {:?}", c.verdict);
        free_cases += 1;
    }
    let (mut sampled, mut vanishing) = (0, 0);
    for seed in 0..80u64 {
        let s = sample(seed, &small_modules());
        let m = s.module.minimal_presentation();
        let tor = tor_with(&mut Resolution::new(&m), &m.structure(), 1, 8, true);
        sampled += 1;
        if tor.vanishes() {
            let c = check_lemma_hilbert_formulas(&m, 8).map_err(|e| e.to_string())?;
            ensure!(c.verdict.pass, "seed {seed}: {:?}", c.verdict);
            vanishing += 1;
        }
    }
    ensure!(free_cases >= 100, "only {free_cases} free cases");
    Ok(format!(
        "worked case exact; {free_cases} free modules; {vanishing} of {sampled} sampled modules with vanishing Tor"
    ))
}

fn count(report: &gradalg_harness::report::Report, s: Status) -> usize {
    report.summary.count(s)
}

fn m3zero_config(trials: usize) -> ExperimentConfig {
    ExperimentConfig {
        seed: 2024,
        trials,
        ..ExperimentConfig::default()
    }
}

fn m3zero_campaign() -> Outcome {
    let curated = run(Experiment::M3Zero, &m3zero_config(1000)).map_err(|e| e.to_string())?;
    let random = run(
        Experiment::M3Zero,
        &ExperimentConfig {
            rings: RingSource::Random(RingParams {
                cube_zero: true,
                ..RingParams::default()
            }),
            ..m3zero_config(500)
        },
    )
    .map_err(|e| e.to_string())?;
    for r in [&curated, &random] {
        ensure!(r.witnesses.is_empty(), "{} falsification witnesses", r.witnesses.len());
        ensure!(count(r, Status::Anomaly) == 0, "{} anomalies", count(r, Status::Anomaly));
        ensure!(count(r, Status::Pass) == r.summary.trials, "{:?}", r.summary.counts);
        ensure!(r.tally("free") == r.tally("free-with-zero-window"), "a free module had nonzero Tor");
        ensure!(r.tally("free") > 0 && r.tally("non-free") > 0, "degenerate sample {:?}", r.summary.tallies);
    }
    let rings = cube_zero_rings().len();
    Ok(format!(
        "{} modules over {rings} curated rings and {} over random m^3 = 0 rings; {} free, {} non-free, 0 witnesses",
        curated.summary.trials,
        random.summary.trials,
        curated.tally("free") + random.tally("free"),
        curated.tally("non-free") + random.tally("non-free"),
    ))
}

fn length_criterion_campaign() -> Outcome {
    let cfg = ExperimentConfig {
        seed: 5,
        trials: 200,
        ..ExperimentConfig::default()
    };
    let r = run(Experiment::LengthCriterion, &cfg).map_err(|e| e.to_string())?;
    ensure!(count(&r, Status::Pass) == r.summary.trials, "{:?}", r.summary.counts);
    for t in &r.trials {
        ensure!(t.data["length"] == 4, "trial {}: length {}", t.index, t.data["length"]);
        if t.data["cyclic"] == false {
            ensure!(t.data["tor"]["entries"].as_array().is_some_and(|e| !e.is_empty()), "trial {}", t.index);
        }
        if t.tags.iter().any(|g| g == "ring") {
            ensure!(t.tags.iter().any(|g| g == "certified-ring"), "trial {}: R not certified", t.index);
        }
    }
    Ok(format!(
        "{} modules of length 4 over E: {} non-cyclic all with Tor != 0, {} certified R(-j)",
        r.summary.trials,
        r.tally("non-cyclic-detected"),
        r.tally("certified-ring")
    ))
}

fn tachikawa_suite() -> Outcome {
    let r = run(Experiment::Tachikawa, &ExperimentConfig { trials: 90, ..ExperimentConfig::default() }).map_err(|e| e.to_string())?;
    ensure!(count(&r, Status::Pass) == r.summary.trials, "{:?}", r.summary.counts);
    let g = square_of_max_ideal().relations;
    let mut g_index = None;
    for t in &r.trials {
        if t.tags.iter().any(|x| x == "gorenstein") {
            ensure!(t.data["palindromic"] == true, "trial {}", t.index);
            ensure!(t.data["ext"]["entries"].as_array().is_some_and(|e| e.is_empty()), "trial {}", t.index);
        }
        if t.ring.relations == g {
            let i = t.data["first-nonzero-index"].as_i64();
            ensure!(i.is_some_and(|i| i <= 8), "G: no nonzero Ext^i(omega, R) up to 8");
            g_index = i;
        }
    }
    Ok(format!(
        "{} Gorenstein samples vanish with palindromic H_R; {} non-Gorenstein show Ext != 0; G at i = {}",
        r.tally("gorenstein"),
        r.tally("nonvanishing-found"),
        g_index.ok_or("G was not sampled")?
    ))
}

fn ab97_identity() -> Outcome {
    let g = build(&square_of_max_ideal());
    let h_r = g.hilbert_polynomial().map_err(|e| e.to_string())?;
    let omega = StructuredModule::canonical(g.clone()).map_err(|e| e.to_string())?.presentation();
    let c = check_ab97(&h_r, &omega.hilbert_polynomial());
    // (1 + 2/t)(1 + 2t) = (2 + 1/t)(2 + t) = 2/t + 5 + 2t
    let expected = poly("2t^-1 + 5 + 2t");
    ensure!(c.verdict.pass && c.lhs == expected && c.rhs == expected, "{:?}", c.verdict);
    ensure!(c.multiplicities_equal, "e(R) != e_R(omega)");
    let cfg = ExperimentConfig {
        trials: 4,
        rings: RingSource::Files { rings: vec![square_of_max_ideal()] },
        ..ExperimentConfig::default()
    };
    let r = run(Experiment::Semidualizing, &cfg).map_err(|e| e.to_string())?;
    ensure!(count(&r, Status::Pass) == 4, "{:?}", r.summary.counts);
    ensure!(r.tally("rejected-k") == 4 && r.tally("semidualizing-omega") == 4, "{:?}", r.summary.tallies);
    Ok("(1+2/t)(1+2t) = (2+1/t)(2+t) for (R, omega) over G; k rejected".into())
}

fn epsilon_identity() -> Outcome {
    for s in ["1", "1 + t", "1 + 2t + t^2", "1 + 3t + t^2 + 2t^3"] {
        let e = poly(s);
        let c = check_epsilon_identity(&e, &e);
        ensure!(c.verdict.pass && c.rhs.is_zero(), "eps = {s}: RHS = {}", c.rhs);
        ensure!(c.wedge.as_ref().is_some_and(LaurentPoly::is_zero), "eps = {s}: wedge = {:?}", c.wedge);
    }
    let xy = check_epsilon_identity(&poly("1 + t"), &poly("1 + t"));
    ensure!(xy.rhs.is_zero() && xy.rhs_at_one == 0, "k[x,y]/(xy) data");
    let bad = check_epsilon_identity(&poly("1 + t"), &poly("2 + t"));
    ensure!(bad.rhs_at_one != 0, "mismatched pair gave RHS(1) = 0");
    Ok(format!("eps_M = eps_R gives wedge 0; (1+t, 1+t) gives RHS 0; mismatched RHS(1) = {}", bad.rhs_at_one))
}

fn reproducibility() -> Outcome {
    for experiment in Experiment::ALL {
        let cfg = ExperimentConfig {
            seed: 77,
            trials: 40,
            ..ExperimentConfig::default()
        };
        let a = run(experiment, &cfg).map_err(|e| e.to_string())?.to_canonical_json();
        let b = run(experiment, &cfg).map_err(|e| e.to_string())?.to_canonical_json();
        ensure!(a == b, "{} differs between runs", experiment.name());
    }
    let cfg = m3zero_config(1000);
    let base = run(Experiment::M3Zero, &cfg).map_err(|e| e.to_string())?;
    let reruns = char_check(Experiment::M3Zero, &cfg, &base, 50).map_err(|e| e.to_string())?;
    for r in &reruns {
        ensure!(r.falsifications == 0 && r.anomalies == 0, "{}: {r:?}", r.field);
    }
    let fields: Vec<String> = reruns.iter().map(|r| r.field.to_string()).collect();
    ensure!(
        reruns.iter().any(|r| r.field == FieldSpec::Rationals) && reruns.iter().any(|r| r.field == FieldSpec::PrimeField { p: 7 }),
        "fields {fields:?}"
    );
    Ok(format!("byte-identical reports for all campaigns; reruns over {} add no witnesses", fields.join(" and ")))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("series identities", series_identity_suite),
        ("symmetric square of complexes", symmetric_square_suite),
        ("Hilbert series of S2 and wedge2", hilbert_formula_suite),
        ("m^3 = 0 Tor rigidity campaign", m3zero_campaign),
        ("length criterion campaign", length_criterion_campaign),
        ("Tachikawa suite", tachikawa_suite),
        ("AB97 identity", ab97_identity),
        ("epsilon identity", epsilon_identity),
        ("reproducibility", reproducibility),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}) [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
