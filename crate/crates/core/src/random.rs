//! Random ring and module presentations with small integer coefficients.
//!
//! Instances are produced as [`RingFile`] / [`ModuleFile`] text, so one sample can be built over
//! any coefficient field and written out verbatim as a witness.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::field::FieldSpec;
use crate::io::{ModuleFile, RingFile, VarSpec};
use crate::poly::{Monomial, Variables};

const NAMES: [&str; 4] = ["x", "y", "z", "w"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", default)]
pub struct RingParams {
    pub min_vars: usize,
    pub max_vars: usize,
    /// Force `m^3 = 0` by adding every cubic monomial.
    pub cube_zero: bool,
    /// Random homogeneous relations beyond the ones that make the ring Artinian.
    pub max_extra_relations: usize,
}

impl Default for RingParams {
    fn default() -> Self {
        RingParams {
            min_vars: 2,
            max_vars: 3,
            cube_zero: false,
            max_extra_relations: 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", default)]
pub struct ModuleParams {
    pub max_generators: usize,
    pub max_relations: usize,
    /// Generator degrees are drawn from `0..=max_twist`.
    pub max_twist: i32,
    /// Relation degrees exceed the lowest generator degree by `1..=max_entry_degree`.
    pub max_entry_degree: i32,
}

impl Default for ModuleParams {
    fn default() -> Self {
        ModuleParams {
            max_generators: 3,
            max_relations: 3,
            max_twist: 1,
            max_entry_degree: 2,
        }
    }
}

fn coefficient(rng: &mut impl Rng) -> i64 {
    // nonzero and small, so the same text reads sensibly over F_7, F_101 and Q
    let c = rng.gen_range(1..=3);
    if rng.gen_bool(0.5) {
        -c
    } else {
        c
    }
}

/// A random homogeneous polynomial of degree `d` as text; `"0"` when nothing was picked.
pub fn random_form(vars: &Variables, d: u32, max_terms: usize, rng: &mut impl Rng) -> String {
    let mut monos: Vec<Monomial> = vars.monomials_of_degree(d);
    if monos.is_empty() {
        return "0".into();
    }
    monos.shuffle(rng);
    let k = rng.gen_range(1..=max_terms.min(monos.len()));
    let mut picked: Vec<&Monomial> = monos[..k].iter().collect();
    picked.sort();
    picked.reverse();
    let mut s = String::new();
    for (n, m) in picked.into_iter().enumerate() {
        let c = coefficient(rng);
        let mono = m.fmt_with(vars.names());
        let sign = if c < 0 { "-" } else { "+" };
        if n == 0 {
            if c < 0 {
                s.push('-');
            }
        } else {
            s.push_str(&format!(" {sign} "));
        }
        match (c.abs(), m.is_one()) {
            (1, false) => s.push_str(&mono),
            (a, true) => s.push_str(&a.to_string()),
            (a, false) => s.push_str(&format!("{a}*{mono}")),
        }
    }
    s
}

/// A standard-graded Artinian presentation: pure powers of degree 2 or 3 in every variable,
/// plus a few random quadrics or cubics (and all cubic monomials when `cube_zero`).
pub fn random_ring_file(field: FieldSpec, params: &RingParams, rng: &mut impl Rng) -> RingFile {
    let n = rng.gen_range(params.min_vars..=params.max_vars.min(NAMES.len()));
    let vars = Variables::standard(&NAMES[..n]);
    let mut relations = Vec::new();
    for name in &NAMES[..n] {
        let e = if params.cube_zero { 2 } else { rng.gen_range(2..=3) };
        if !params.cube_zero || rng.gen_bool(0.5) {
            relations.push(format!("{name}^{e}"));
        }
    }
    for _ in 0..rng.gen_range(0..=params.max_extra_relations) {
        let d = if params.cube_zero { 2 } else { rng.gen_range(2..=3) };
        let f = random_form(&vars, d, 3, rng);
        if f != "0" {
            relations.push(f);
        }
    }
    if params.cube_zero {
        for m in vars.monomials_of_degree(3) {
            relations.push(m.fmt_with(vars.names()));
        }
    }
    RingFile {
        field,
        vars: NAMES[..n]
            .iter()
            .map(|s| VarSpec {
                name: (*s).into(),
                weight: 1,
            })
            .collect(),
        relations,
    }
}

/// A random graded presentation matrix over the variables of a ring with top degree `top`.
///
/// Entries are forms of positive degree, so the presentation is already minimal up to
/// cancellation in the ring.
pub fn random_module_file(vars: &Variables, top: i32, params: &ModuleParams, rng: &mut impl Rng) -> ModuleFile {
    let ngens = rng.gen_range(1..=params.max_generators.max(1));
    let mut targets: Vec<i32> = (0..ngens).map(|_| rng.gen_range(0..=params.max_twist)).collect();
    targets.sort();
    let low = targets[0];
    let nrels = rng.gen_range(0..=params.max_relations);
    let mut sources: Vec<i32> = (0..nrels)
        .map(|_| low + rng.gen_range(1..=params.max_entry_degree.clamp(1, top.max(1))))
        .collect();
    sources.sort();
    let entries = targets
        .iter()
        .map(|&t| {
            sources
                .iter()
                .map(|&s| {
                    let d = s - t;
                    if d <= 0 || d > top || rng.gen_bool(0.35) {
                        "0".to_string()
                    } else {
                        random_form(vars, d as u32, 2, rng)
                    }
                })
                .collect()
        })
        .collect();
    ModuleFile {
        targets,
        sources,
        entries,
    }
}
