use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use gradalg::homological::{ext, tor};
use gradalg::identities::{
    check_ab97, check_epsilon_identity, check_hilbert_poincare, check_lemma_hilbert_formulas, check_poincare_s2, Verdict,
};
use gradalg::io::{canonical_string, complex_json, module_json, ModuleFile, RingFile};
use gradalg::module::PresentedModule;
use gradalg::powers::SquarePowers;
use gradalg::resolution::{resolve, Resolution};
use gradalg::series::LaurentPoly;
use gradalg::{Field, FieldSpec, Ring};
use gradalg_harness::config::ExperimentConfig;
use gradalg_harness::experiments::{char_check, run};
use gradalg_harness::ledger::proof_ledger;
use gradalg_harness::{with_field, Experiment};
use serde::Serialize;
use serde_json::json;

#[derive(Parser)]
#[command(name = "gradalg", version, about = "Homological computations over Artinian graded rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ring invariants.
    Ring {
        #[command(subcommand)]
        command: RingCommand,
    },
    /// Module computations.
    Module {
        #[command(subcommand)]
        command: ModuleCommand,
    },
    /// Graded dimensions of `Tor_i(M, N)`.
    Tor(TwoModules),
    /// Graded dimensions of `Ext^i(M, N)`.
    Ext(TwoModules),
    /// Second symmetric or exterior power of a module.
    Powers {
        power: Power,
        ring: PathBuf,
        module: PathBuf,
    },
    /// Series identities.
    Series {
        #[command(subcommand)]
        command: SeriesCommand,
    },
    /// Run a verification campaign and write its report.
    Experiment(ExperimentArgs),
    /// Numbers from the `m^3 = 0` rigidity argument for a non-free module.
    Ledger { ring: PathBuf, module: PathBuf },
}

#[derive(Subcommand)]
enum RingCommand {
    Info { ring: PathBuf },
}

#[derive(Subcommand)]
enum ModuleCommand {
    /// Minimal free resolution and Betti table.
    Resolve {
        ring: PathBuf,
        module: PathBuf,
        #[arg(long, default_value_t = 4)]
        steps: usize,
        /// Print the differentials as JSON instead of the Betti table.
        #[arg(long)]
        json: bool,
    },
}

#[derive(clap::Args)]
struct TwoModules {
    ring: PathBuf,
    m: PathBuf,
    n: PathBuf,
    #[arg(long, default_value_t = 0)]
    lo: i32,
    #[arg(long, default_value_t = 4)]
    hi: i32,
}

#[derive(Clone, Copy, ValueEnum)]
enum Power {
    S2,
    Wedge2,
}

#[derive(Subcommand)]
enum SeriesCommand {
    /// Check one identity; exit code 3 when it fails and 2 when its hypothesis does not hold.
    Check {
        #[command(subcommand)]
        identity: Identity,
    },
}

#[derive(Subcommand)]
enum Identity {
    /// `H_M = H_R · P_M(t, -1)`.
    HilbertPoincare {
        ring: PathBuf,
        module: PathBuf,
        #[arg(long, default_value_t = 8)]
        steps: usize,
    },
    /// `2 P_{S²X} = P_X² + P_X(t², -z²)` for the resolution of a module.
    PoincareS2 {
        ring: PathBuf,
        module: PathBuf,
        #[arg(long, default_value_t = 3)]
        steps: usize,
    },
    /// Hilbert series of `S²M` and `∧²M` when `Tor_{>0}(M, M)` vanishes.
    Lemma {
        ring: PathBuf,
        module: PathBuf,
        #[arg(long, default_value_t = 8)]
        window: usize,
    },
    /// Multiplicity polynomial relation for `∧²`.
    Epsilon {
        #[arg(long)]
        eps_r: LaurentPoly,
        #[arg(long)]
        eps_m: LaurentPoly,
    },
    /// `H_R(1/t) H_R(t) = H_C(1/t) H_C(t)`.
    Ab97 {
        #[arg(long)]
        h_r: LaurentPoly,
        #[arg(long)]
        h_c: LaurentPoly,
    },
}

#[derive(clap::Args)]
struct ExperimentArgs {
    name: Experiment,
    /// JSON config; command line flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    /// `p` for a prime field, `0` for the rationals.
    #[arg(long)]
    field: Option<u64>,
    #[arg(long)]
    window: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Rerun up to this many trials over F_7 and over the rationals.
    #[arg(long, num_args = 0..=1, default_missing_value = "50")]
    char_check: Option<usize>,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn print<T: Serialize>(v: &T) {
    println!("{}", canonical_string(v));
}

fn load_ring<K: Field>(file: &RingFile, field: K) -> anyhow::Result<Arc<Ring<K>>> {
    Ok(Arc::new(file.build(field)?))
}

fn load_module<K: Field>(ring: &Arc<Ring<K>>, path: &Path) -> anyhow::Result<PresentedModule<K>> {
    let file: ModuleFile = read_json(path)?;
    Ok(file.build(ring.clone())?)
}

fn verdict_code(v: &Verdict) -> u8 {
    match (v.pass, v.is_applicable()) {
        (true, _) => 0,
        (false, false) => 2,
        (false, true) => 3,
    }
}

fn ring_info<K: Field>(file: &RingFile, field: K) -> anyhow::Result<u8> {
    let ring = load_ring(file, field)?;
    let artinian = ring.is_artinian();
    let mut info = json!({
        "ring": file,
        "krull-dim": ring.krull_dim(),
        "embedding-dim": ring.embedding_dim(),
        "artinian": artinian,
        "hilbert-series": ring.hilbert_series(12).to_string(),
    });
    if artinian {
        info["hilbert-polynomial"] = json!(ring.hilbert_polynomial()?.to_string());
        info["length"] = json!(ring.length());
        info["top-degree"] = json!(ring.top_degree());
        info["type"] = json!(ring.socle_dim()?);
        info["gorenstein"] = json!(ring.is_gorenstein());
        info["cube-of-max-ideal-vanishes"] = json!(ring.cube_of_max_ideal_vanishes());
    }
    print(&info);
    Ok(0)
}

fn module_command<K: Field>(file: &RingFile, field: K, command: &Command) -> anyhow::Result<u8> {
    let ring = load_ring(file, field)?;
    match command {
        Command::Module {
            command: ModuleCommand::Resolve { module, steps, json, .. },
        } => {
            let m = load_module(&ring, module)?;
            let (x, betti) = resolve(&m, *steps);
            if *json {
                print(&json!({"complex": complex_json(&x), "betti": betti.to_json()}));
            } else {
                print!("{betti}");
            }
        }
        Command::Tor(args) | Command::Ext(args) => {
            let m = load_module(&ring, &args.m)?;
            let n = load_module(&ring, &args.n)?;
            let report = if matches!(command, Command::Tor(_)) {
                tor(&m, &n, args.lo, args.hi)
            } else {
                ext(&m, &n.structure(), args.lo, args.hi)
            };
            print(&report);
        }
        Command::Powers { power, module, .. } => {
            let m = load_module(&ring, module)?.minimal_presentation();
            let sq = SquarePowers::new(&m);
            let p = match power {
                Power::S2 => sq.sym2,
                Power::Wedge2 => sq.wedge2,
            };
            print(&json!({
                "presentation": module_json(&p),
                "hilbert": p.hilbert_polynomial().to_string(),
                "minimal": module_json(&p.minimal_presentation()),
            }));
        }
        Command::Ledger { module, .. } => {
            let m = load_module(&ring, module)?;
            print(&proof_ledger(&m)?);
        }
        Command::Series {
            command: SeriesCommand::Check { identity },
        } => {
            let v = match identity {
                Identity::HilbertPoincare { module, steps, .. } => check_hilbert_poincare(&load_module(&ring, module)?, *steps)?,
                Identity::PoincareS2 { module, steps, .. } => {
                    let m = load_module(&ring, module)?.minimal_presentation();
                    let x = Resolution::new(&m).complex(*steps);
                    check_poincare_s2(&x, *steps as i32)?
                }
                Identity::Lemma { module, window, .. } => {
                    let c = check_lemma_hilbert_formulas(&load_module(&ring, module)?, *window)?;
                    print(&json!({
                        "verdict": c.verdict,
                        "tor": c.tor,
                        "sym2": c.sym2.to_string(),
                        "wedge2": c.wedge2.to_string(),
                    }));
                    return Ok(verdict_code(&c.verdict));
                }
                Identity::Epsilon { .. } | Identity::Ab97 { .. } => unreachable!("handled without a ring"),
            };
            print(&v);
            return Ok(verdict_code(&v));
        }
        Command::Ring { .. } | Command::Experiment(_) => unreachable!("handled before loading modules"),
    }
    Ok(0)
}

fn experiment(args: &ExperimentArgs) -> anyhow::Result<u8> {
    let mut cfg: ExperimentConfig = match &args.config {
        Some(p) => read_json(p)?,
        None => ExperimentConfig::default(),
    };
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    if let Some(t) = args.trials {
        cfg.trials = t;
    }
    if let Some(w) = args.window {
        cfg.homological_window = w;
    }
    if let Some(p) = args.field {
        cfg.field = if p == 0 { FieldSpec::Rationals } else { FieldSpec::PrimeField { p } };
    }
    let mut report = run(args.name, &cfg)?;
    if let Some(n) = args.char_check {
        report.char_check = char_check(args.name, &cfg, &report, n)?;
    }
    let text = report.to_canonical_json();
    match &args.out {
        Some(p) => fs::write(p, text + "\n").with_context(|| format!("writing {}", p.display()))?,
        None => println!("{text}"),
    }
    if let Some(p) = &args.csv {
        let f = fs::File::create(p).with_context(|| format!("writing {}", p.display()))?;
        report.write_csv(f)?;
    }
    let s = &report.summary;
    eprintln!(
        "{}: {} trials, counts {:?}, {} witnesses",
        report.experiment,
        s.trials,
        s.counts,
        report.falsifications()
    );
    Ok(report.exit_code() as u8)
}

/// The ring file named by a command, if any.
fn ring_path(command: &Command) -> Option<&Path> {
    match command {
        Command::Ring {
            command: RingCommand::Info { ring },
        }
        | Command::Module {
            command: ModuleCommand::Resolve { ring, .. },
        }
        | Command::Powers { ring, .. }
        | Command::Ledger { ring, .. } => Some(ring),
        Command::Tor(a) | Command::Ext(a) => Some(&a.ring),
        Command::Series {
            command: SeriesCommand::Check { identity },
        } => match identity {
            Identity::HilbertPoincare { ring, .. } | Identity::PoincareS2 { ring, .. } | Identity::Lemma { ring, .. } => Some(ring),
            Identity::Epsilon { .. } | Identity::Ab97 { .. } => None,
        },
        Command::Experiment(_) => None,
    }
}

fn dispatch(cli: &Cli) -> anyhow::Result<u8> {
    match &cli.command {
        Command::Experiment(args) => return experiment(args),
        Command::Series {
            command: SeriesCommand::Check {
                identity: Identity::Epsilon { eps_r, eps_m },
            },
        } => {
            let c = check_epsilon_identity(eps_r, eps_m);
            print(&json!({
                "verdict": c.verdict,
                "rhs": c.rhs.to_string(),
                "rhs-at-one": c.rhs_at_one.to_string(),
                "wedge": c.wedge.map(|w| w.to_string()),
            }));
            return Ok(verdict_code(&c.verdict));
        }
        Command::Series {
            command: SeriesCommand::Check {
                identity: Identity::Ab97 { h_r, h_c },
            },
        } => {
            let c = check_ab97(h_r, h_c);
            print(&json!({
                "verdict": c.verdict,
                "lhs": c.lhs.to_string(),
                "rhs": c.rhs.to_string(),
                "multiplicities-equal": c.multiplicities_equal,
            }));
            return Ok(verdict_code(&c.verdict));
        }
        _ => {}
    }
    let path = ring_path(&cli.command).expect("every remaining command reads a ring");
    let file: RingFile = read_json(path)?;
    with_field!(file.field, |f| match &cli.command {
        Command::Ring { .. } => ring_info(&file, f),
        other => module_command(&file, f, other),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
