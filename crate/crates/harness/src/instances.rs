//! Deterministic stream of (ring, module) samples.
//!
//! Trial `i` draws from its own ChaCha stream keyed by `(seed, i)`, so trials can run in any
//! order and on any number of threads without changing what they see.

use gradalg::io::{ModuleFile, RingFile};
use gradalg::random::{random_module_file, random_ring_file, ModuleParams};
use gradalg::{FieldSpec, PrimeField, Ring};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::config::RingSource;

/// Attempts per trial before a random ring draw gives up.
const MAX_RING_ATTEMPTS: usize = 64;

pub fn trial_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct InstanceParams {
    pub field: FieldSpec,
    pub rings: RingSource,
    /// Used when `rings` is [`RingSource::Curated`].
    pub curated: Vec<RingFile>,
    pub modules: ModuleParams,
    pub require_cube_zero: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct Instance {
    pub index: usize,
    pub ring: RingFile,
    pub module: ModuleFile,
    /// Random ring draws discarded by the Artinian / `m^3 = 0` filter.
    pub rejected_rings: usize,
}

/// Whether a ring file passes the filter; checked over `F_101` so the result does not depend on the
/// field the experiment later runs in.
fn accept(file: &RingFile, require_cube_zero: bool) -> Option<Ring<PrimeField>> {
    let ring = file.build(PrimeField::new(101).ok()?).ok()?;
    let ok = ring.is_artinian() && (!require_cube_zero || ring.cube_of_max_ideal_vanishes());
    ok.then_some(ring)
}

/// Ring for trial `index`, plus the number of rejected random draws; `None` if every draw failed.
pub fn ring_for(index: usize, params: &InstanceParams, rng: &mut ChaCha8Rng) -> (Option<RingFile>, usize) {
    let pick = |list: &[RingFile]| RingFile {
        field: params.field,
        ..list[index % list.len()].clone()
    };
    let rp = match &params.rings {
        RingSource::Curated => return (Some(pick(&params.curated)), 0),
        RingSource::Files { rings } => return (Some(pick(rings)), 0),
        RingSource::Random(rp) => rp,
    };
    let mut rejected = 0;
    for _ in 0..MAX_RING_ATTEMPTS {
        let file = random_ring_file(params.field, rp, rng);
        if accept(&file, params.require_cube_zero).is_some() {
            return (Some(file), rejected);
        }
        rejected += 1;
    }
    (None, rejected)
}

/// The sample for trial `index`. Modules are generated against the ring's variables and top degree;
/// experiments minimalize them after building.
pub fn instance(seed: u64, index: usize, params: &InstanceParams) -> Option<Instance> {
    let mut rng = trial_rng(seed, index);
    let (ring, rejected_rings) = ring_for(index, params, &mut rng);
    let ring = ring?;
    let built = accept(&ring, false)?;
    let module = random_module_file(built.vars(), built.top_degree().unwrap_or(0), &params.modules, &mut rng);
    Some(Instance {
        index,
        ring,
        module,
        rejected_rings,
    })
}

/// `instance(seed, 0)`, `instance(seed, 1)`, … skipping trials whose ring draw failed.
pub fn random_instances(seed: u64, params: &InstanceParams) -> impl Iterator<Item = Instance> + '_ {
    (0..).filter_map(move |i| instance(seed, i, params))
}
