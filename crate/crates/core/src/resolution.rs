//! Syzygies and minimal graded free resolutions over an Artinian ring.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::complex::FreeComplex;
use crate::field::Field;
use crate::module::{kernel_of_map, GradedMatrix, PresentedModule};
use crate::ring::Ring;
use crate::series::{LaurentPoly, TwoVariableSeries};

/// Minimal generators of `ker φ`, as a matrix whose target is the source of `φ`.
pub fn syzygy<K: Field>(ring: &Arc<Ring<K>>, phi: &GradedMatrix<K::Elem>) -> GradedMatrix<K::Elem> {
    kernel_of_map(ring, phi.source(), |d| phi.degree_matrix(ring, d))
}

/// A minimal free resolution `… -> F_1 -> F_0 -> M`, extended on demand.
#[derive(Debug, Clone)]
pub struct Resolution<K: Field> {
    ring: Arc<Ring<K>>,
    modules: Vec<Vec<i32>>,
    maps: Vec<GradedMatrix<K::Elem>>,
}

impl<K: Field> Resolution<K> {
    pub fn new(m: &PresentedModule<K>) -> Self {
        let min = m.minimal_presentation();
        Resolution {
            ring: m.ring().clone(),
            modules: vec![min.targets().to_vec(), min.sources().to_vec()],
            maps: vec![min.matrix().clone()],
        }
    }

    pub fn ring(&self) -> &Arc<Ring<K>> {
        &self.ring
    }

    /// Makes `F_0, …, F_n` available.
    pub fn extend_to(&mut self, n: usize) {
        while self.modules.len() <= n {
            let next = syzygy(&self.ring, self.maps.last().unwrap());
            self.modules.push(next.source().to_vec());
            self.maps.push(next);
        }
    }

    /// Twists of `F_i`.
    pub fn module(&mut self, i: usize) -> &[i32] {
        self.extend_to(i);
        &self.modules[i]
    }

    /// `d_i: F_i -> F_{i-1}` for `i >= 1`.
    pub fn differential(&mut self, i: usize) -> &GradedMatrix<K::Elem> {
        assert!(i >= 1);
        self.extend_to(i);
        &self.maps[i - 1]
    }

    /// Length of the computed part, or the projective dimension once a zero module is reached.
    pub fn computed_len(&self) -> usize {
        self.modules.len() - 1
    }

    pub fn is_finite_at(&self, n: usize) -> bool {
        self.modules.get(n).is_some_and(|m| m.is_empty())
    }

    /// `F_n -> … -> F_0` as a complex in homological degrees `0..=n`.
    pub fn complex(&mut self, n: usize) -> FreeComplex<K> {
        self.extend_to(n);
        FreeComplex::new(
            self.ring.clone(),
            0,
            self.modules[..=n].to_vec(),
            self.maps[..n].to_vec(),
        )
        .expect("resolution differentials are composable")
    }

    pub fn betti_table(&mut self, n: usize) -> BettiTable {
        self.extend_to(n);
        BettiTable::from_modules(0, &self.modules[..=n])
    }
}

/// The first `n + 1` steps of a minimal resolution and their Betti table.
pub fn resolve<K: Field>(m: &PresentedModule<K>, n: usize) -> (FreeComplex<K>, BettiTable) {
    let mut res = Resolution::new(m);
    let c = res.complex(n);
    let b = res.betti_table(n);
    (c, b)
}

/// Graded Betti numbers `β_{i,j}` for `i` in a window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    low: i32,
    high: i32,
    entries: BTreeMap<(i32, i32), usize>,
}

impl BettiTable {
    /// Reads `β_{i,j}` off the twists of `F_low, F_low+1, …`.
    pub fn from_modules(low: i32, modules: &[Vec<i32>]) -> Self {
        let mut entries = BTreeMap::new();
        for (k, twists) in modules.iter().enumerate() {
            for &j in twists {
                *entries.entry((low + k as i32, j)).or_insert(0) += 1;
            }
        }
        BettiTable {
            low,
            high: low + modules.len() as i32 - 1,
            entries,
        }
    }

    pub fn window(&self) -> (i32, i32) {
        (self.low, self.high)
    }

    pub fn get(&self, i: i32, j: i32) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// `β_i = Σ_j β_{i,j}`.
    pub fn total(&self, i: i32) -> usize {
        self.entries.range((i, i32::MIN)..=(i, i32::MAX)).map(|(_, &b)| b).sum()
    }

    pub fn totals(&self) -> Vec<usize> {
        (self.low..=self.high).map(|i| self.total(i)).collect()
    }

    /// Nonzero `((i, j), β_{i,j})`.
    pub fn entries(&self) -> impl Iterator<Item = ((i32, i32), usize)> + '_ {
        self.entries.iter().map(|(&k, &b)| (k, b))
    }

    /// `P(t, z) = Σ β_{i,j} t^j z^i`.
    pub fn poincare_series(&self) -> TwoVariableSeries {
        TwoVariableSeries::from_terms(self.high, self.entries().map(|(k, b)| (k, b as i128)))
    }

    /// `Σ_i (-1)^i Σ_j β_{i,j} t^j`.
    pub fn alternating_sum(&self) -> LaurentPoly {
        self.poincare_series().at_z_minus_one()
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self.entries().map(|((i, j), b)| json!([i, j, b])).collect();
        json!({
            "window": [self.low, self.high],
            "totals": self.totals(),
            "entries": entries,
        })
    }
}

/// Macaulay-style grid: columns are homological degrees `i`, rows are `j - i`.
impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols: Vec<i32> = (self.low..=self.high).collect();
        let rows: Vec<i32> = {
            let mut r: Vec<i32> = self.entries.keys().map(|&(i, j)| j - i).collect();
            r.sort();
            r.dedup();
            r
        };
        let cell = |s: String| format!("{s:>4}");
        let mut head = format!("{:>7}", "");
        for i in &cols {
            head.push_str(&cell(i.to_string()));
        }
        writeln!(f, "{}", head.trim_end())?;
        let mut tot = format!("{:>7}", "total:");
        for &i in &cols {
            tot.push_str(&cell(self.total(i).to_string()));
        }
        writeln!(f, "{tot}")?;
        for r in rows {
            let mut line = format!("{:>7}", format!("{r}:"));
            for &i in &cols {
                let b = self.get(i, i + r);
                line.push_str(&cell(if b == 0 { ".".to_string() } else { b.to_string() }));
            }
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}
