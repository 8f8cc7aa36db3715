//! JSON descriptions of rings, modules and complexes.
//!
//! A ring file reads `{"field": {"kind": "prime-field", "p": 101}, "vars": [{"name": "x", "weight": 1}], "relations": ["x^2"]}`
//! and a module file `{"targets": [0], "sources": [1], "entries": [["x"]]}`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::complex::FreeComplex;
use crate::error::Result;
use crate::field::{Field, FieldSpec};
use crate::module::{GradedMatrix, PresentedModule};
use crate::poly::Variables;
use crate::ring::Ring;

fn unit_weight() -> u32 {
    1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarSpec {
    pub name: String,
    #[serde(default = "unit_weight")]
    pub weight: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingFile {
    #[serde(default)]
    pub field: FieldSpec,
    pub vars: Vec<VarSpec>,
    #[serde(default)]
    pub relations: Vec<String>,
}

impl RingFile {
    pub fn variables(&self) -> Result<Variables> {
        Variables::new(
            self.vars.iter().map(|v| v.name.clone()).collect(),
            self.vars.iter().map(|v| v.weight).collect(),
        )
    }

    /// Builds the ring over `field`, which should match `self.field`.
    pub fn build<K: Field>(&self, field: K) -> Result<Ring<K>> {
        let rels: Vec<&str> = self.relations.iter().map(String::as_str).collect();
        Ring::parse(field, self.variables()?, &rels)
    }

    /// Same ring presentation, coefficients read over another field.
    pub fn with_field(&self, field: FieldSpec) -> Self {
        RingFile { field, ..self.clone() }
    }

    pub fn from_ring<K: Field>(ring: &Ring<K>) -> Self {
        let vars = ring.vars();
        RingFile {
            field: ring.field().spec(),
            vars: vars
                .names()
                .iter()
                .zip(vars.weights())
                .map(|(n, &w)| VarSpec { name: n.clone(), weight: w })
                .collect(),
            relations: ring.relations().iter().map(|f| f.fmt_with(ring.field(), vars)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleFile {
    pub targets: Vec<i32>,
    #[serde(default)]
    pub sources: Vec<i32>,
    #[serde(default)]
    pub entries: Vec<Vec<String>>,
}

impl ModuleFile {
    pub fn build<K: Field>(&self, ring: Arc<Ring<K>>) -> Result<PresentedModule<K>> {
        let entries: Vec<Vec<&str>> = self.entries.iter().map(|r| r.iter().map(String::as_str).collect()).collect();
        PresentedModule::parse(ring, self.targets.clone(), self.sources.clone(), &entries)
    }

    pub fn from_matrix<K: Field>(ring: &Ring<K>, phi: &GradedMatrix<K::Elem>) -> Self {
        ModuleFile {
            targets: phi.target().to_vec(),
            sources: phi.source().to_vec(),
            entries: phi.format_entries(ring),
        }
    }

    pub fn from_module<K: Field>(m: &PresentedModule<K>) -> Self {
        Self::from_matrix(m.ring(), m.matrix())
    }
}

pub fn ring_json<K: Field>(ring: &Ring<K>) -> Value {
    serde_json::to_value(RingFile::from_ring(ring)).expect("ring files serialize")
}

pub fn module_json<K: Field>(m: &PresentedModule<K>) -> Value {
    serde_json::to_value(ModuleFile::from_module(m)).expect("module files serialize")
}

/// `{"low", "modules", "differentials"}` with `differentials[k]` the map out of homological degree `low + k + 1`.
pub fn complex_json<K: Field>(x: &FreeComplex<K>) -> Value {
    let ring = x.ring();
    let diffs: Vec<Value> = (x.low() + 1..=x.high())
        .map(|i| json!(x.differential(i).format_entries(ring)))
        .collect();
    let modules: Vec<Value> = (x.low()..=x.high()).map(|i| json!(x.module(i))).collect();
    json!({
        "ring": ring_json(ring),
        "low": x.low(),
        "modules": modules,
        "differentials": diffs,
    })
}

/// Serialization with object keys in sorted order.
///
/// `serde_json` without `preserve_order` stores objects in a `BTreeMap`, so a round trip through
/// `Value` is enough to canonicalize.
pub fn canonical_string<T: Serialize>(v: &T) -> String {
    let value = serde_json::to_value(v).expect("serializable");
    serde_json::to_string_pretty(&value).expect("serializable")
}

/// Hex SHA-256 of the canonical serialization.
pub fn fingerprint(v: &Value) -> String {
    let bytes = serde_json::to_vec(v).expect("serializable");
    hex::encode(Sha256::digest(&bytes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn ring_file_round_trip() {
        let text = r#"{"field": {"kind": "prime-field", "p": 101},
                       "vars": [{"name": "x"}, {"name": "y", "weight": 1}],
                       "relations": ["x^2", "x*y", "y^2"]}"#;
        let file: RingFile = serde_json::from_str(text).unwrap();
        let ring = file.build(PrimeField::new(101).unwrap()).unwrap();
        assert_eq!(ring.length(), Some(3));
        let back = RingFile::from_ring(&ring);
        assert_eq!(back.vars, file.vars);
        assert_eq!(back.relations, file.relations);
    }

    #[test]
    fn module_file_round_trip() {
        let file: RingFile =
            serde_json::from_value(json!({"vars": [{"name": "x"}, {"name": "y"}], "relations": ["x^2", "y^2"]})).unwrap();
        let ring = Arc::new(file.build(PrimeField::new(101).unwrap()).unwrap());
        let mf: ModuleFile =
            serde_json::from_value(json!({"targets": [0], "sources": [1], "entries": [["x"]]})).unwrap();
        let m = mf.build(ring).unwrap();
        assert_eq!(m.length(), 2);
        assert_eq!(ModuleFile::from_module(&m), mf);
    }

    #[test]
    fn fingerprints_ignore_key_order() {
        let a: Value = serde_json::from_str(r#"{"b": 1, "a": [2, 3]}"#).unwrap();
        let b: Value = serde_json::from_str(r#"{"a": [2, 3], "b": 1}"#).unwrap();
        assert_eq!(fingerprint(&a), fingerprint(&b));
        assert_eq!(canonical_string(&a), canonical_string(&b));
    }
}
