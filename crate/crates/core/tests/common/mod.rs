#![allow(dead_code)]

pub mod oracle;

use std::sync::Arc;

use gradalg::io::{ModuleFile, RingFile};
use gradalg::module::PresentedModule;
use gradalg::random::{random_module_file, random_ring_file, ModuleParams, RingParams};
use gradalg::{FieldSpec, PrimeField, Ring};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn f101() -> PrimeField {
    PrimeField::new(101).unwrap()
}

pub fn ring_file(names: &[&str], relations: &[&str]) -> RingFile {
    serde_json::from_value(serde_json::json!({
        "vars": names.iter().map(|n| serde_json::json!({"name": n})).collect::<Vec<_>>(),
        "relations": relations,
    }))
    .unwrap()
}

pub fn build(file: &RingFile) -> Arc<Ring<PrimeField>> {
    Arc::new(file.build(f101()).unwrap())
}

/// Small Artinian rings used throughout: `E`, `G`, the truncated line, and two `m^3 = 0` examples.
pub fn curated() -> Vec<RingFile> {
    vec![
        ring_file(&["x", "y"], &["x^2", "y^2"]),
        ring_file(&["x", "y"], &["x^2", "x*y", "y^2"]),
        ring_file(&["x"], &["x^3"]),
        ring_file(&["x", "y"], &["x^2", "x*y^2", "y^3"]),
        ring_file(&["x", "y", "z"], &["x^2", "y^2", "z^2", "x*y", "x*z", "y*z"]),
        ring_file(&["x", "y"], &["x^3", "y^2"]),
    ]
}

pub struct Sample {
    pub ring_file: RingFile,
    pub ring: Arc<Ring<PrimeField>>,
    pub module_file: ModuleFile,
    pub module: PresentedModule<PrimeField>,
}

/// A reproducible ring and module from `seed`; about half the rings come from the curated list.
pub fn sample(seed: u64, module_params: &ModuleParams) -> Sample {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ring_file = if seed.is_multiple_of(2) {
        let c = curated();
        c[(seed / 2) as usize % c.len()].clone()
    } else {
        random_ring_file(FieldSpec::default(), &RingParams::default(), &mut rng)
    };
    let ring = build(&ring_file);
    let module_file = random_module_file(ring.vars(), ring.top_degree().unwrap(), module_params, &mut rng);
    let module = module_file.build(ring.clone()).unwrap();
    Sample {
        ring_file,
        ring,
        module_file,
        module,
    }
}

pub fn small_modules() -> ModuleParams {
    ModuleParams {
        max_generators: 2,
        max_relations: 2,
        max_twist: 1,
        max_entry_degree: 2,
    }
}
