//! Bounded complexes of graded free modules and chain maps between them.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::module::{free_offsets, GradedMatrix};
use crate::resolution::BettiTable;
use crate::ring::Ring;
use crate::series::TwoVariableSeries;

/// `X_high -> … -> X_low` with `d_i: X_i -> X_{i-1}`.
#[derive(Debug, Clone)]
pub struct FreeComplex<K: Field> {
    ring: Arc<Ring<K>>,
    low: i32,
    modules: Vec<Vec<i32>>,
    /// `diffs[k]` is `d_{low+k+1}`.
    diffs: Vec<GradedMatrix<K::Elem>>,
}

impl<K: Field> FreeComplex<K> {
    pub fn new(
        ring: Arc<Ring<K>>,
        low: i32,
        modules: Vec<Vec<i32>>,
        diffs: Vec<GradedMatrix<K::Elem>>,
    ) -> Result<Self> {
        if diffs.len() + 1 != modules.len().max(1) {
            return Err(Error::Structural(format!(
                "{} modules need {} differentials, got {}",
                modules.len(),
                modules.len().saturating_sub(1),
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.source() != modules[k + 1].as_slice() || d.target() != modules[k].as_slice() {
                return Err(Error::Structural(format!(
                    "differential out of degree {} has the wrong shape",
                    low + k as i32 + 1
                )));
            }
        }
        Ok(FreeComplex {
            ring,
            low,
            modules,
            diffs,
        })
    }

    /// A single free module in homological degree `i`.
    pub fn concentrated(ring: Arc<Ring<K>>, i: i32, twists: Vec<i32>) -> Self {
        FreeComplex {
            ring,
            low: i,
            modules: vec![twists],
            diffs: Vec::new(),
        }
    }

    /// `R(-a) --f--> R(-b)` in degrees 1 and 0.
    pub fn two_term(ring: Arc<Ring<K>>, d: GradedMatrix<K::Elem>) -> Self {
        FreeComplex {
            ring,
            low: 0,
            modules: vec![d.target().to_vec(), d.source().to_vec()],
            diffs: vec![d],
        }
    }

    pub fn ring(&self) -> &Arc<Ring<K>> {
        &self.ring
    }

    pub fn low(&self) -> i32 {
        self.low
    }

    pub fn high(&self) -> i32 {
        self.low + self.modules.len() as i32 - 1
    }

    pub fn module(&self, i: i32) -> &[i32] {
        if i < self.low || i > self.high() {
            return &[];
        }
        &self.modules[(i - self.low) as usize]
    }

    pub fn rank(&self, i: i32) -> usize {
        self.module(i).len()
    }

    /// `d_i: X_i -> X_{i-1}`, zero outside the stored range.
    pub fn differential(&self, i: i32) -> GradedMatrix<K::Elem> {
        if i > self.low && i <= self.high() {
            return self.diffs[(i - self.low - 1) as usize].clone();
        }
        GradedMatrix::zero(self.module(i - 1).to_vec(), self.module(i).to_vec())
    }

    fn differential_ref(&self, i: i32) -> Option<&GradedMatrix<K::Elem>> {
        if i > self.low && i <= self.high() {
            Some(&self.diffs[(i - self.low - 1) as usize])
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.modules.iter().all(|m| m.is_empty())
    }

    pub fn d_squared_is_zero(&self) -> bool {
        (self.low + 2..=self.high()).all(|i| {
            let a = self.differential_ref(i - 1).unwrap();
            let b = self.differential_ref(i).unwrap();
            a.compose(&self.ring, b).is_zero()
        })
    }

    /// Every differential has its entries in the maximal ideal.
    pub fn is_minimal(&self) -> bool {
        self.diffs.iter().all(|d| d.is_minimal())
    }

    /// Degrees where `X_i` can be nonzero.
    fn internal_range(&self, i: i32) -> Option<(i32, i32)> {
        let m = self.module(i);
        let lo = *m.iter().min()?;
        let hi = *m.iter().max()? + self.ring.top_degree().unwrap_or(0);
        Some((lo, hi))
    }

    /// `dim_k H_i(X)_d` for every internal degree with nonzero homology.
    pub fn homology(&self, i: i32) -> Vec<(i32, usize)> {
        let Some((lo, hi)) = self.internal_range(i) else {
            return Vec::new();
        };
        let f = self.ring.field();
        let mut out = Vec::new();
        for d in lo..=hi {
            let n = free_offsets(&self.ring, self.module(i), d).last().copied().unwrap();
            if n == 0 {
                continue;
            }
            let out_rank = self.differential_ref(i).map_or(0, |m| m.degree_matrix(&self.ring, d).rank(f));
            let in_rank = self
                .differential_ref(i + 1)
                .map_or(0, |m| m.degree_matrix(&self.ring, d).rank(f));
            let h = n - out_rank - in_rank;
            if h > 0 {
                out.push((d, h));
            }
        }
        out
    }

    /// Ranks of `β_{i,j}` read off the twists.
    pub fn twist_table(&self) -> BettiTable {
        BettiTable::from_modules(self.low, &self.modules)
    }

    /// Betti table and `P(t,z)`; refused unless the complex is minimal.
    pub fn poincare_table(&self) -> Result<(BettiTable, TwoVariableSeries)> {
        if !self.is_minimal() {
            return Err(Error::NotMinimal(
                "a differential has a unit entry".into(),
            ));
        }
        let t = self.twist_table();
        let p = t.poincare_series();
        Ok((t, p))
    }

    /// Keeps homological degrees `<= n`.
    pub fn truncate(&self, n: i32) -> Self {
        if n >= self.high() {
            return self.clone();
        }
        let keep = (n - self.low + 1).max(0) as usize;
        FreeComplex {
            ring: self.ring.clone(),
            low: self.low,
            modules: self.modules[..keep].to_vec(),
            diffs: self.diffs[..keep.saturating_sub(1)].to_vec(),
        }
    }

    /// `X ⊗_R Y` with `d(x ⊗ y) = dx ⊗ y + (-1)^{|x|} x ⊗ dy`.
    pub fn tensor(&self, other: &Self) -> Self {
        let index = TensorIndex::new(self, other);
        let f = self.ring.field();
        let minus = f.neg(&f.one());
        let mut modules = Vec::new();
        let mut diffs = Vec::new();
        for n in index.low..=index.high {
            modules.push(index.twists(self, other, n));
            if n == index.low {
                continue;
            }
            let mut columns = Vec::new();
            for (i, u, v) in index.basis(n) {
                let j = n - i;
                let mut col = Vec::new();
                if let Some(dx) = self.differential_ref(i) {
                    for (u2, a) in dx.column(u) {
                        col.push((index.position(n - 1, i - 1, *u2, v), a.clone()));
                    }
                }
                if let Some(dy) = other.differential_ref(j) {
                    for (v2, a) in dy.column(v) {
                        let a = if i % 2 == 0 {
                            a.clone()
                        } else {
                            a.iter().map(|x| f.mul(x, &minus)).collect()
                        };
                        col.push((index.position(n - 1, i, u, *v2), a));
                    }
                }
                col.sort_by_key(|(r, _)| *r);
                columns.push(col);
            }
            let target = modules[modules.len() - 2].clone();
            let source = modules[modules.len() - 1].clone();
            diffs.push(GradedMatrix::from_columns(target, source, columns));
        }
        FreeComplex {
            ring: self.ring.clone(),
            low: index.low,
            modules,
            diffs,
        }
    }
}

/// Positions of `e_u ⊗ e_v` inside `(X ⊗ Y)_n`: summands ordered by `i`, then `u`, then `v`.
#[derive(Debug, Clone)]
pub struct TensorIndex {
    pub low: i32,
    pub high: i32,
    x_low: i32,
    x_ranks: Vec<usize>,
    y_low: i32,
    y_ranks: Vec<usize>,
}

impl TensorIndex {
    pub fn new<K: Field>(x: &FreeComplex<K>, y: &FreeComplex<K>) -> Self {
        TensorIndex {
            low: x.low + y.low,
            high: x.high() + y.high(),
            x_low: x.low,
            x_ranks: x.modules.iter().map(|m| m.len()).collect(),
            y_low: y.low,
            y_ranks: y.modules.iter().map(|m| m.len()).collect(),
        }
    }

    fn x_rank(&self, i: i32) -> usize {
        if i < self.x_low {
            return 0;
        }
        self.x_ranks.get((i - self.x_low) as usize).copied().unwrap_or(0)
    }

    fn y_rank(&self, j: i32) -> usize {
        if j < self.y_low {
            return 0;
        }
        self.y_ranks.get((j - self.y_low) as usize).copied().unwrap_or(0)
    }

    /// `(i, u, v)` in positional order for total degree `n`.
    pub fn basis(&self, n: i32) -> Vec<(i32, usize, usize)> {
        let mut out = Vec::new();
        for i in self.x_low..=self.x_low + self.x_ranks.len() as i32 - 1 {
            let j = n - i;
            for u in 0..self.x_rank(i) {
                for v in 0..self.y_rank(j) {
                    out.push((i, u, v));
                }
            }
        }
        out
    }

    /// Index of `e_u ⊗ e_v`, with `e_u ∈ X_i` and `e_v ∈ Y_{n-i}`, inside `(X ⊗ Y)_n`.
    pub fn position(&self, n: i32, i: i32, u: usize, v: usize) -> usize {
        let before: usize = (self.x_low..i).map(|k| self.x_rank(k) * self.y_rank(n - k)).sum();
        before + u * self.y_rank(n - i) + v
    }

    fn twists<K: Field>(&self, x: &FreeComplex<K>, y: &FreeComplex<K>, n: i32) -> Vec<i32> {
        self.basis(n)
            .into_iter()
            .map(|(i, u, v)| x.module(i)[u] + y.module(n - i)[v])
            .collect()
    }
}

/// Per homological degree, a graded matrix `S_i -> T_i`.
#[derive(Debug, Clone)]
pub struct ChainMap<K: Field> {
    pub source: FreeComplex<K>,
    pub target: FreeComplex<K>,
    /// `maps[k]` acts in homological degree `source.low() + k`.
    maps: Vec<GradedMatrix<K::Elem>>,
}

impl<K: Field> ChainMap<K> {
    pub fn new(source: FreeComplex<K>, target: FreeComplex<K>, maps: Vec<GradedMatrix<K::Elem>>) -> Result<Self> {
        if source.low() != target.low() || source.high() != target.high() || maps.len() != source.modules.len() {
            return Err(Error::Structural("chain map between complexes of different ranges".into()));
        }
        for (k, m) in maps.iter().enumerate() {
            let i = source.low() + k as i32;
            if m.source() != source.module(i) || m.target() != target.module(i) {
                return Err(Error::Structural(format!("chain map component {i} has the wrong shape")));
            }
        }
        Ok(ChainMap { source, target, maps })
    }

    pub fn component(&self, i: i32) -> GradedMatrix<K::Elem> {
        let low = self.source.low();
        if i < low || i > self.source.high() {
            return GradedMatrix::zero(self.target.module(i).to_vec(), self.source.module(i).to_vec());
        }
        self.maps[(i - low) as usize].clone()
    }

    /// `d^T_i ∘ f_i = f_{i-1} ∘ d^S_i` in every degree.
    pub fn commutes(&self) -> bool {
        let ring = self.source.ring().clone();
        (self.source.low() + 1..=self.source.high()).all(|i| {
            let left = self.target.differential(i).compose(&ring, &self.component(i));
            let right = self.component(i - 1).compose(&ring, &self.source.differential(i));
            left == right
        })
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ChainMap<K>) -> ChainMap<K> {
        let ring = self.source.ring().clone();
        let maps = (other.source.low()..=other.source.high())
            .map(|i| self.component(i).compose(&ring, &other.component(i)))
            .collect();
        ChainMap {
            source: other.source.clone(),
            target: self.target.clone(),
            maps,
        }
    }

    pub fn scale(&self, c: &K::Elem) -> ChainMap<K> {
        let f = self.source.ring().field().clone();
        ChainMap {
            source: self.source.clone(),
            target: self.target.clone(),
            maps: self.maps.iter().map(|m| m.scale(&f, c)).collect(),
        }
    }

    pub fn same_components(&self, other: &ChainMap<K>) -> bool {
        self.maps == other.maps
    }

    /// Degree-`d` matrix of the component in homological degree `i`.
    pub fn degree_matrix(&self, i: i32, d: i32) -> Matrix<K::Elem> {
        self.component(i).degree_matrix(self.source.ring(), d)
    }
}
