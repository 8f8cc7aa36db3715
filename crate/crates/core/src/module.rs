//! Graded modules over an Artinian ring.
//!
//! Everything reduces to finite-dimensional linear algebra one internal
//! degree at a time. A [`GradedModule`] exposes its degreewise dimensions and
//! the action of the ring's basis monomials; free modules, explicitly
//! structured modules and cokernels of homogeneous matrices all implement it.

use std::sync::Arc;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Matrix, Subspace};
use crate::poly::parse_polynomial;
use crate::ring::{Ring, RingElem};
use crate::series::LaurentPoly;

/// Start of each summand's block inside `(⊕ R(-j_u))_d`, plus the total at the end.
pub fn free_offsets<K: Field>(ring: &Ring<K>, twists: &[i32], d: i32) -> Vec<usize> {
    let mut off = Vec::with_capacity(twists.len() + 1);
    let mut acc = 0;
    off.push(0);
    for &j in twists {
        acc += ring.dim(d - j);
        off.push(acc);
    }
    off
}

fn twist_range<K: Field>(ring: &Ring<K>, twists: &[i32]) -> Option<(i32, i32)> {
    let lo = *twists.iter().min()?;
    let hi = *twists.iter().max()? + ring.top_degree().unwrap_or(0);
    Some((lo, hi))
}

/// A graded module whose pieces are explicit vector spaces.
pub trait GradedModule<K: Field> {
    fn ring(&self) -> &Ring<K>;

    /// Degrees outside this range are zero. `None` for the zero module.
    fn degree_range(&self) -> Option<(i32, i32)>;

    fn dim(&self, d: i32) -> usize;

    /// `out += c * (b_g * v)` where `v` lies in degree `d` and `b_g` is a basis monomial of the ring.
    fn mul_basis_acc(&self, g: usize, d: i32, v: &[K::Elem], c: &K::Elem, out: &mut [K::Elem]);

    fn mul_elem(&self, r: &RingElem<K::Elem>, d: i32, v: &[K::Elem]) -> Vec<K::Elem> {
        let ring = self.ring();
        let f = ring.field();
        let mut out = vec![f.zero(); self.dim(d + r.degree)];
        for (k, c) in r.coeffs.iter().enumerate() {
            if !f.is_zero(c) {
                self.mul_basis_acc(ring.global_index(r.degree, k), d, v, c, &mut out);
            }
        }
        out
    }

    /// Matrix of multiplication by `r` out of degree `d`.
    fn action_matrix(&self, r: &RingElem<K::Elem>, d: i32) -> Matrix<K::Elem> {
        let f = self.ring().field();
        let n = self.dim(d);
        let cols: Vec<Vec<K::Elem>> = (0..n)
            .map(|k| {
                let mut e = vec![f.zero(); n];
                e[k] = f.one();
                self.mul_elem(r, d, &e)
            })
            .collect();
        Matrix::from_columns(f, self.dim(d + r.degree), &cols)
    }

    fn length(&self) -> usize {
        match self.degree_range() {
            Some((lo, hi)) => (lo..=hi).map(|d| self.dim(d)).sum(),
            None => 0,
        }
    }

    fn hilbert_polynomial(&self) -> LaurentPoly {
        match self.degree_range() {
            Some((lo, hi)) => LaurentPoly::new(lo, (lo..=hi).map(|d| self.dim(d) as i128).collect()),
            None => LaurentPoly::zero(),
        }
    }
}

/// Matrix at degree `d` of the map `⊕ R(-j_v) -> M` sending `e_v` to `images[v]`.
pub fn image_matrix<K: Field, M: GradedModule<K> + ?Sized>(
    module: &M,
    source: &[i32],
    images: &[Vec<K::Elem>],
    d: i32,
) -> Matrix<K::Elem> {
    let ring = module.ring();
    let f = ring.field();
    let off = free_offsets(ring, source, d);
    let rows = module.dim(d);
    let mut m = Matrix::zeros(f, rows, *off.last().unwrap());
    let one = f.one();
    for (v, img) in images.iter().enumerate() {
        let e = d - source[v];
        for k in 0..ring.dim(e) {
            let mut out = vec![f.zero(); rows];
            module.mul_basis_acc(ring.global_index(e, k), source[v], img, &one, &mut out);
            for (i, x) in out.into_iter().enumerate() {
                if !f.is_zero(&x) {
                    m.set(i, off[v] + k, x);
                }
            }
        }
    }
    m
}

/// One subspace per internal degree, starting at `low`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSubspace<E> {
    low: i32,
    pieces: Vec<Subspace<E>>,
}

impl<E: Clone> GradedSubspace<E> {
    pub fn new(low: i32, pieces: Vec<Subspace<E>>) -> Self {
        GradedSubspace { low, pieces }
    }

    pub fn piece(&self, d: i32) -> Option<&Subspace<E>> {
        if d < self.low {
            return None;
        }
        self.pieces.get((d - self.low) as usize)
    }

    pub fn dim(&self, d: i32) -> usize {
        self.piece(d).map_or(0, |s| s.dim())
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        (0..self.pieces.len()).map(move |k| self.low + k as i32)
    }

    pub fn total_dim(&self) -> usize {
        self.pieces.iter().map(|s| s.dim()).sum()
    }
}

/// Minimal homogeneous generators of a submodule given degreewise.
///
/// In each degree the new generators are the echelon basis vectors of `K_d`
/// that are not already in `(m K)_d`, taken in basis order.
pub fn minimal_generators<K: Field, M: GradedModule<K> + ?Sized>(
    module: &M,
    sub: &GradedSubspace<K::Elem>,
) -> Vec<(i32, Vec<K::Elem>)> {
    let ring = module.ring();
    let f = ring.field();
    let one = f.one();
    let mut gens = Vec::new();
    for d in sub.degrees() {
        let piece = sub.piece(d).unwrap();
        if piece.dim() == 0 {
            continue;
        }
        let n = module.dim(d);
        let mut span = Subspace::new(n);
        for &(_, g) in ring.variable_generators() {
            let w = ring.degree_of(g);
            if let Some(lower) = sub.piece(d - w) {
                for b in lower.basis() {
                    let mut out = vec![f.zero(); n];
                    module.mul_basis_acc(g, d - w, b, &one, &mut out);
                    span.insert(f, &out);
                }
            }
        }
        for b in piece.basis() {
            if span.insert(f, b) {
                gens.push((d, b.clone()));
            }
        }
    }
    gens
}

/// Homogeneous matrix between graded free modules `⊕_v R(-source_v) -> ⊕_u R(-target_u)`.
///
/// Columns are sparse: only nonzero entries are stored, each as coefficients
/// over the basis of `R_{source_v - target_u}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedMatrix<E> {
    target: Vec<i32>,
    source: Vec<i32>,
    columns: Vec<Vec<(usize, Vec<E>)>>,
}

pub type Column<E> = Vec<(usize, Vec<E>)>;

impl<E: Clone> GradedMatrix<E> {
    pub fn zero(target: Vec<i32>, source: Vec<i32>) -> Self {
        let columns = vec![Vec::new(); source.len()];
        GradedMatrix { target, source, columns }
    }

    pub fn from_columns(target: Vec<i32>, source: Vec<i32>, columns: Vec<Column<E>>) -> Self {
        assert_eq!(source.len(), columns.len());
        GradedMatrix { target, source, columns }
    }

    pub fn identity<K: Field<Elem = E>>(ring: &Ring<K>, twists: &[i32]) -> Self {
        let columns = (0..twists.len()).map(|u| vec![(u, ring.one_elem().coeffs)]).collect();
        GradedMatrix {
            target: twists.to_vec(),
            source: twists.to_vec(),
            columns,
        }
    }

    /// Builds a matrix from row-major entries, checking homogeneity and degrees.
    pub fn from_entries<K: Field<Elem = E>>(
        ring: &Ring<K>,
        target: Vec<i32>,
        source: Vec<i32>,
        entries: &[Vec<crate::poly::Polynomial<E>>],
    ) -> Result<Self> {
        // a matrix with no columns may omit its rows entirely
        let rows_ok = entries.len() == target.len() || (source.is_empty() && entries.is_empty());
        if !rows_ok || entries.iter().any(|r| r.len() != source.len()) {
            return Err(Error::Structural(format!(
                "expected {}x{} entries, found {} rows",
                target.len(),
                source.len(),
                entries.len()
            )));
        }
        let mut columns = vec![Vec::new(); source.len()];
        for (u, row) in entries.iter().enumerate() {
            for (v, p) in row.iter().enumerate() {
                let nf = ring.normal_form(p);
                if nf.is_zero() {
                    continue;
                }
                let expected = source[v] - target[u];
                match nf.homogeneous_degree() {
                    Some(d) if d as i32 == expected => {}
                    found => {
                        return Err(Error::EntryDegree {
                            row: u,
                            col: v,
                            expected,
                            found: found.map_or(-1, |d| d as i32),
                        })
                    }
                }
                let e = ring.element(&nf, expected)?;
                columns[v].push((u, e.coeffs));
            }
        }
        Ok(GradedMatrix { target, source, columns })
    }

    pub fn parse<K: Field<Elem = E>>(
        ring: &Ring<K>,
        target: Vec<i32>,
        source: Vec<i32>,
        entries: &[Vec<&str>],
    ) -> Result<Self> {
        let polys = entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| parse_polynomial(ring.field(), ring.vars(), s))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_entries(ring, target, source, &polys)
    }

    pub fn target(&self) -> &[i32] {
        &self.target
    }

    pub fn source(&self) -> &[i32] {
        &self.source
    }

    pub fn columns(&self) -> &[Column<E>] {
        &self.columns
    }

    pub fn column(&self, v: usize) -> &Column<E> {
        &self.columns[v]
    }

    pub fn entry(&self, u: usize, v: usize) -> Option<&[E]> {
        self.columns[v].iter().find(|(r, _)| *r == u).map(|(_, c)| c.as_slice())
    }

    pub fn entry_elem<K: Field<Elem = E>>(&self, ring: &Ring<K>, u: usize, v: usize) -> RingElem<E> {
        let degree = self.source[v] - self.target[u];
        match self.entry(u, v) {
            Some(c) => RingElem {
                degree,
                coeffs: c.to_vec(),
            },
            None => ring.zero_elem(degree),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    /// First entry that is a nonzero scalar (degree 0), if any.
    pub fn unit_entry(&self) -> Option<(usize, usize)> {
        for (v, col) in self.columns.iter().enumerate() {
            for (u, _) in col {
                if self.source[v] == self.target[*u] {
                    return Some((*u, v));
                }
            }
        }
        None
    }

    /// All entries lie in the maximal ideal.
    pub fn is_minimal(&self) -> bool {
        self.unit_entry().is_none()
    }

    /// The k-linear map `(source)_d -> (target)_d`.
    pub fn degree_matrix<K: Field<Elem = E>>(&self, ring: &Ring<K>, d: i32) -> Matrix<E> {
        let f = ring.field();
        let t_off = free_offsets(ring, &self.target, d);
        let s_off = free_offsets(ring, &self.source, d);
        let mut m = Matrix::zeros(f, *t_off.last().unwrap(), *s_off.last().unwrap());
        let one = f.one();
        for (v, col) in self.columns.iter().enumerate() {
            let e = d - self.source[v];
            for k in 0..ring.dim(e) {
                let g = ring.global_index(e, k);
                for (u, a) in col {
                    let mut out = vec![f.zero(); t_off[u + 1] - t_off[*u]];
                    ring.mul_basis_acc(g, a, self.source[v] - self.target[*u], &one, &mut out);
                    for (i, x) in out.into_iter().enumerate() {
                        if !f.is_zero(&x) {
                            m.set(t_off[*u] + i, s_off[v] + k, x);
                        }
                    }
                }
            }
        }
        m
    }

    /// Column `v` as a dense vector of `(target)_{source_v}`.
    pub fn column_vector<K: Field<Elem = E>>(&self, ring: &Ring<K>, v: usize) -> Vec<E> {
        let d = self.source[v];
        let off = free_offsets(ring, &self.target, d);
        let mut out = vec![ring.field().zero(); *off.last().unwrap()];
        for (u, a) in &self.columns[v] {
            out[off[*u]..off[u + 1]].clone_from_slice(a);
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose<K: Field<Elem = E>>(&self, ring: &Ring<K>, other: &GradedMatrix<E>) -> GradedMatrix<E> {
        assert_eq!(self.source, other.target, "incompatible graded matrices");
        let f = ring.field();
        let columns = other
            .columns
            .iter()
            .enumerate()
            .map(|(w, col)| {
                let d = other.source[w];
                let off = free_offsets(ring, &self.target, d);
                let mut acc = vec![f.zero(); *off.last().unwrap()];
                for (v, b) in col {
                    let bv = RingElem {
                        degree: other.source[w] - other.target[*v],
                        coeffs: b.clone(),
                    };
                    for (u, a) in &self.columns[*v] {
                        let av = RingElem {
                            degree: self.source[*v] - self.target[*u],
                            coeffs: a.clone(),
                        };
                        let p = ring.mul(&av, &bv);
                        for (x, y) in acc[off[*u]..off[u + 1]].iter_mut().zip(&p.coeffs) {
                            *x = f.add(x, y);
                        }
                    }
                }
                sparse_column(f, &off, &acc)
            })
            .collect();
        GradedMatrix {
            target: self.target.clone(),
            source: other.source.clone(),
            columns,
        }
    }

    pub fn add<K: Field<Elem = E>>(&self, ring: &Ring<K>, other: &GradedMatrix<E>) -> GradedMatrix<E> {
        assert_eq!(self.target, other.target);
        assert_eq!(self.source, other.source);
        let f = ring.field();
        let columns = (0..self.source.len())
            .map(|v| {
                let d = self.source[v];
                let off = free_offsets(ring, &self.target, d);
                let a = self.column_vector(ring, v);
                let b = other.column_vector(ring, v);
                let sum: Vec<E> = a.iter().zip(&b).map(|(x, y)| f.add(x, y)).collect();
                sparse_column(f, &off, &sum)
            })
            .collect();
        GradedMatrix {
            target: self.target.clone(),
            source: self.source.clone(),
            columns,
        }
    }

    pub fn scale<K: Field<Elem = E>>(&self, field: &K, c: &E) -> GradedMatrix<E> {
        let columns = self
            .columns
            .iter()
            .map(|col| {
                col.iter()
                    .map(|(u, a)| (*u, a.iter().map(|x| field.mul(x, c)).collect::<Vec<E>>()))
                    .filter(|(_, a)| a.iter().any(|x| !field.is_zero(x)))
                    .collect()
            })
            .collect();
        GradedMatrix {
            target: self.target.clone(),
            source: self.source.clone(),
            columns,
        }
    }

    pub fn sub<K: Field<Elem = E>>(&self, ring: &Ring<K>, other: &GradedMatrix<E>) -> GradedMatrix<E> {
        let f = ring.field();
        self.add(ring, &other.scale(f, &f.neg(&f.one())))
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &GradedMatrix<E>) -> GradedMatrix<E> {
        let shift = self.target.len();
        let mut columns = self.columns.clone();
        columns.extend(
            other
                .columns
                .iter()
                .map(|col| col.iter().map(|(u, a)| (u + shift, a.clone())).collect()),
        );
        GradedMatrix {
            target: [self.target.as_slice(), other.target.as_slice()].concat(),
            source: [self.source.as_slice(), other.source.as_slice()].concat(),
            columns,
        }
    }

    /// `col_w -= r * col_v`.
    fn column_axpy<K: Field<Elem = E>>(&mut self, ring: &Ring<K>, w: usize, r: &RingElem<E>, v: usize) {
        let f = ring.field();
        let d = self.source[w];
        let off = free_offsets(ring, &self.target, d);
        let mut acc = self.column_vector(ring, w);
        for (x, a) in &self.columns[v] {
            let av = RingElem {
                degree: self.source[v] - self.target[*x],
                coeffs: a.clone(),
            };
            let p = ring.mul(r, &av);
            for (y, z) in acc[off[*x]..off[x + 1]].iter_mut().zip(&p.coeffs) {
                *y = f.sub(y, z);
            }
        }
        self.columns[w] = sparse_column(f, &off, &acc);
    }

    fn remove_row_and_column(&mut self, u: usize, v: usize) {
        self.columns.remove(v);
        self.source.remove(v);
        self.target.remove(u);
        for col in self.columns.iter_mut() {
            col.retain(|(r, _)| *r != u);
            for (r, _) in col.iter_mut() {
                if *r > u {
                    *r -= 1;
                }
            }
        }
    }

    /// Row-major entry strings.
    pub fn format_entries<K: Field<Elem = E>>(&self, ring: &Ring<K>) -> Vec<Vec<String>> {
        (0..self.target.len())
            .map(|u| {
                (0..self.source.len())
                    .map(|v| match self.entry(u, v) {
                        Some(_) => ring.format_elem(&self.entry_elem(ring, u, v)),
                        None => "0".to_string(),
                    })
                    .collect()
            })
            .collect()
    }
}

/// Splits a dense vector of a free module into its nonzero summand blocks.
pub fn sparse_column<K: Field>(field: &K, offsets: &[usize], dense: &[K::Elem]) -> Column<K::Elem> {
    let mut col = Vec::new();
    for u in 0..offsets.len() - 1 {
        let block = &dense[offsets[u]..offsets[u + 1]];
        if block.iter().any(|x| !field.is_zero(x)) {
            col.push((u, block.to_vec()));
        }
    }
    col
}

/// `⊕ R(-j_u)` as a [`GradedModule`].
#[derive(Debug, Clone)]
pub struct FreeModule<K: Field> {
    ring: Arc<Ring<K>>,
    twists: Vec<i32>,
}

impl<K: Field> FreeModule<K> {
    pub fn new(ring: Arc<Ring<K>>, twists: Vec<i32>) -> Self {
        FreeModule { ring, twists }
    }

    pub fn twists(&self) -> &[i32] {
        &self.twists
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }
}

impl<K: Field> GradedModule<K> for FreeModule<K> {
    fn ring(&self) -> &Ring<K> {
        &self.ring
    }

    fn degree_range(&self) -> Option<(i32, i32)> {
        twist_range(&self.ring, &self.twists)
    }

    fn dim(&self, d: i32) -> usize {
        self.twists.iter().map(|&j| self.ring.dim(d - j)).sum()
    }

    fn mul_basis_acc(&self, g: usize, d: i32, v: &[K::Elem], c: &K::Elem, out: &mut [K::Elem]) {
        let e = d + self.ring.degree_of(g);
        let src = free_offsets(&self.ring, &self.twists, d);
        let dst = free_offsets(&self.ring, &self.twists, e);
        for (u, &j) in self.twists.iter().enumerate() {
            if src[u] == src[u + 1] || dst[u] == dst[u + 1] {
                continue;
            }
            self.ring
                .mul_basis_acc(g, &v[src[u]..src[u + 1]], d - j, c, &mut out[dst[u]..dst[u + 1]]);
        }
    }
}

/// A graded module given by its pieces and the action of every basis monomial of the ring.
#[derive(Debug, Clone)]
pub struct StructuredModule<K: Field> {
    ring: Arc<Ring<K>>,
    low: i32,
    dims: Vec<usize>,
    /// `actions[g][d - low]`: multiplication by basis monomial `g` out of degree `d`.
    actions: Vec<Vec<Matrix<K::Elem>>>,
}

impl<K: Field> StructuredModule<K> {
    /// Builds the module from the action of each generating variable.
    ///
    /// `var_action(i, d)` must be the matrix of `x_i` from degree `d` to `d + w_i`.
    /// Actions of longer monomials are products of these.
    pub fn from_variable_actions(
        ring: Arc<Ring<K>>,
        low: i32,
        dims: Vec<usize>,
        mut var_action: impl FnMut(usize, i32) -> Matrix<K::Elem>,
    ) -> Self {
        let f = ring.field().clone();
        let n = ring.basis_len();
        let dim_at = |d: i32| -> usize {
            if d < low {
                0
            } else {
                dims.get((d - low) as usize).copied().unwrap_or(0)
            }
        };
        let degrees: Vec<i32> = (0..dims.len()).map(|k| low + k as i32).collect();
        let mut var_cache: Vec<Option<Vec<Matrix<K::Elem>>>> = vec![None; ring.vars().len()];
        let mut actions: Vec<Vec<Matrix<K::Elem>>> = Vec::with_capacity(n);
        actions.push(Vec::new());
        for g in 1..n {
            let dg = ring.degree_of(g);
            let local = g - ring.global_index(dg, 0);
            let mono = ring.basis(dg)[local].clone();
            let i = mono
                .exponents()
                .iter()
                .position(|&e| e > 0)
                .expect("non-unit monomial");
            if var_cache[i].is_none() {
                var_cache[i] = Some(degrees.iter().map(|&d| var_action(i, d)).collect());
            }
            let xi = var_cache[i].as_ref().unwrap();
            let wi = ring.vars().weights()[i] as i32;
            let mut rest = mono.exponents().to_vec();
            rest[i] -= 1;
            let rest_deg = dg - wi;
            let per_degree = degrees
                .iter()
                .map(|&d| {
                    if rest_deg == 0 {
                        return xi[(d - low) as usize].clone();
                    }
                    let rest_local = ring
                        .basis(rest_deg)
                        .iter()
                        .position(|m| m.exponents() == rest.as_slice())
                        .expect("divisors of standard monomials are standard");
                    let h = ring.global_index(rest_deg, rest_local);
                    let first = &actions[h][(d - low) as usize];
                    let mid = d + rest_deg;
                    if mid - low >= dims.len() as i32 {
                        return Matrix::zeros(&f, dim_at(d + dg), dim_at(d));
                    }
                    xi[(mid - low) as usize].mul(&f, first)
                })
                .collect();
            actions.push(per_degree);
        }
        StructuredModule {
            ring,
            low,
            dims,
            actions,
        }
    }

    /// Structure of any graded module, copied into explicit matrices.
    pub fn from_module<M: GradedModule<K>>(ring: Arc<Ring<K>>, m: &M) -> Self {
        let Some((lo, hi)) = m.degree_range() else {
            return Self::zero(ring);
        };
        let dims: Vec<usize> = (lo..=hi).map(|d| m.dim(d)).collect();
        let gens: Vec<(usize, usize)> = ring.variable_generators().to_vec();
        let r2 = ring.clone();
        Self::from_variable_actions(ring, lo, dims, |i, d| {
            let g = gens.iter().find(|(v, _)| *v == i).expect("generating variable").1;
            let x = RingElem {
                degree: r2.degree_of(g),
                coeffs: {
                    let mut c = vec![r2.field().zero(); r2.dim(r2.degree_of(g))];
                    c[g - r2.global_index(r2.degree_of(g), 0)] = r2.field().one();
                    c
                },
            };
            m.action_matrix(&x, d)
        })
    }

    pub fn zero(ring: Arc<Ring<K>>) -> Self {
        let n = ring.basis_len();
        StructuredModule {
            ring,
            low: 0,
            dims: Vec::new(),
            actions: vec![Vec::new(); n],
        }
    }

    pub fn free(ring: Arc<Ring<K>>, twists: &[i32]) -> Self {
        let fm = FreeModule::new(ring.clone(), twists.to_vec());
        Self::from_module(ring, &fm)
    }

    /// The canonical module `ω_R`, the graded k-dual of `R` placed in degrees `0..=s`.
    pub fn canonical(ring: Arc<Ring<K>>) -> Result<Self> {
        ring.require_artinian()?;
        let s = ring.top_degree().unwrap();
        Ok(Self::free(ring, &[0]).dual().shift(-s))
    }

    pub fn ring_arc(&self) -> &Arc<Ring<K>> {
        &self.ring
    }

    pub fn low(&self) -> i32 {
        self.low
    }

    /// Matrix of basis monomial `g` out of degree `d`.
    pub fn act(&self, g: usize, d: i32) -> Matrix<K::Elem> {
        let f = self.ring.field();
        let e = d + self.ring.degree_of(g);
        if g == 0 {
            return Matrix::identity(f, self.dim(d));
        }
        if d < self.low || d - self.low >= self.dims.len() as i32 {
            return Matrix::zeros(f, self.dim(e), self.dim(d));
        }
        self.actions[g][(d - self.low) as usize].clone()
    }

    /// `N(j)`, with `N(j)_d = N_{d+j}`.
    pub fn shift(&self, j: i32) -> Self {
        StructuredModule {
            ring: self.ring.clone(),
            low: self.low - j,
            dims: self.dims.clone(),
            actions: self.actions.clone(),
        }
    }

    /// Graded k-dual `Hom_k(N, k)` with `(N^*)_d = (N_{-d})^*`.
    pub fn dual(&self) -> Self {
        if self.dims.is_empty() {
            return self.clone();
        }
        let len = self.dims.len();
        let high = self.low + len as i32 - 1;
        let dims: Vec<usize> = self.dims.iter().rev().copied().collect();
        let low = -high;
        let f = self.ring.field().clone();
        let actions = (0..self.actions.len())
            .map(|g| {
                if g == 0 {
                    return Vec::new();
                }
                let w = self.ring.degree_of(g);
                (0..len)
                    .map(|k| {
                        let d = low + k as i32;
                        // x: N*_d -> N*_{d+w} is the transpose of x: N_{-d-w} -> N_{-d}
                        let src = -d - w;
                        if src < self.low || src > high {
                            let rows = self.dim(-d - w);
                            return Matrix::zeros(&f, rows, self.dim(-d));
                        }
                        self.actions[g][(src - self.low) as usize].transpose()
                    })
                    .collect()
            })
            .collect();
        StructuredModule {
            ring: self.ring.clone(),
            low,
            dims,
            actions,
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        if self.dims.is_empty() {
            return other.clone();
        }
        if other.dims.is_empty() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let high = (self.low + self.dims.len() as i32).max(other.low + other.dims.len() as i32) - 1;
        let dims: Vec<usize> = (low..=high).map(|d| self.dim(d) + other.dim(d)).collect();
        let f = self.ring.field().clone();
        let actions = (0..self.actions.len())
            .map(|g| {
                if g == 0 {
                    return Vec::new();
                }
                let w = self.ring.degree_of(g);
                (low..=high)
                    .map(|d| {
                        let a = self.act(g, d);
                        let b = other.act(g, d);
                        let mut m = Matrix::zeros(&f, a.rows() + b.rows(), a.cols() + b.cols());
                        for i in 0..a.rows() {
                            for j in 0..a.cols() {
                                m.set(i, j, a.get(i, j).clone());
                            }
                        }
                        for i in 0..b.rows() {
                            for j in 0..b.cols() {
                                m.set(a.rows() + i, a.cols() + j, b.get(i, j).clone());
                            }
                        }
                        debug_assert_eq!(m.rows(), self.dim(d + w) + other.dim(d + w));
                        m
                    })
                    .collect()
            })
            .collect();
        StructuredModule {
            ring: self.ring.clone(),
            low,
            dims,
            actions,
        }
    }

    /// Checks that the variable actions commute and that every relation of the ring acts as zero.
    pub fn satisfies_module_axioms(&self) -> bool {
        let ring = &self.ring;
        let f = ring.field();
        let Some((lo, hi)) = self.degree_range() else {
            return true;
        };
        let vars: Vec<RingElem<K::Elem>> = (0..ring.vars().len())
            .map(|i| {
                let w = ring.vars().weights()[i] as i32;
                let p = crate::poly::Polynomial::term(f, f.one(), ring.vars().var(i));
                ring.element(&p, w).expect("variables are homogeneous")
            })
            .collect();
        let act_var = |i: usize, d: i32| self.action_matrix(&vars[i], d);
        for d in lo..=hi {
            for i in 0..vars.len() {
                for j in (i + 1)..vars.len() {
                    let (wi, wj) = (vars[i].degree, vars[j].degree);
                    let a = act_var(j, d + wi).mul(f, &act_var(i, d));
                    let b = act_var(i, d + wj).mul(f, &act_var(j, d));
                    if a != b {
                        return false;
                    }
                }
            }
            for rel in ring.groebner().generators() {
                let deg = rel.homogeneous_degree().unwrap() as i32;
                let mut total = Matrix::zeros(f, self.dim(d + deg), self.dim(d));
                for (m, c) in rel.terms() {
                    let mut cur = Matrix::identity(f, self.dim(d));
                    let mut at = d;
                    for (i, &e) in m.exponents().iter().enumerate() {
                        for _ in 0..e {
                            cur = act_var(i, at).mul(f, &cur);
                            at += vars[i].degree;
                        }
                    }
                    total = total.add(f, &cur.scale(f, c));
                }
                if !total.is_zero(f) {
                    return false;
                }
            }
        }
        true
    }

    /// Minimal presentation of this module as a cokernel.
    pub fn presentation(&self) -> PresentedModule<K> {
        let ring = self.ring.clone();
        let f = ring.field().clone();
        let Some((lo, hi)) = self.degree_range() else {
            return PresentedModule::zero(ring);
        };
        let whole = GradedSubspace::new(
            lo,
            (lo..=hi).map(|d| Subspace::full(&f, self.dim(d))).collect(),
        );
        let gens = minimal_generators(self, &whole);
        let targets: Vec<i32> = gens.iter().map(|(d, _)| *d).collect();
        let images: Vec<Vec<K::Elem>> = gens.into_iter().map(|(_, v)| v).collect();
        let relations = kernel_of_map(&ring, &targets, |d| image_matrix(self, &targets, &images, d));
        PresentedModule::from_matrix(ring, relations)
    }
}

impl<K: Field> GradedModule<K> for StructuredModule<K> {
    fn ring(&self) -> &Ring<K> {
        &self.ring
    }

    fn degree_range(&self) -> Option<(i32, i32)> {
        let first = self.dims.iter().position(|&n| n > 0)?;
        let last = self.dims.iter().rposition(|&n| n > 0)?;
        Some((self.low + first as i32, self.low + last as i32))
    }

    fn dim(&self, d: i32) -> usize {
        if d < self.low {
            return 0;
        }
        self.dims.get((d - self.low) as usize).copied().unwrap_or(0)
    }

    fn mul_basis_acc(&self, g: usize, d: i32, v: &[K::Elem], c: &K::Elem, out: &mut [K::Elem]) {
        let f = self.ring.field();
        if g == 0 {
            for (o, x) in out.iter_mut().zip(v) {
                *o = f.add(o, &f.mul(c, x));
            }
            return;
        }
        if d < self.low || d - self.low >= self.dims.len() as i32 || out.is_empty() {
            return;
        }
        let m = &self.actions[g][(d - self.low) as usize];
        for (j, x) in v.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            let s = f.mul(c, x);
            for (i, o) in out.iter_mut().enumerate() {
                let a = m.get(i, j);
                if !f.is_zero(a) {
                    *o = f.add(o, &f.mul(&s, a));
                }
            }
        }
    }
}

/// Minimal generators of the kernel of a map out of `⊕ R(-j_v)`, as the columns of a graded matrix.
///
/// `map_at(d)` gives the map in degree `d`. Kernel generators live in degrees
/// at most `max j_v + s`.
pub fn kernel_of_map<K: Field>(
    ring: &Arc<Ring<K>>,
    source: &[i32],
    mut map_at: impl FnMut(i32) -> Matrix<K::Elem>,
) -> GradedMatrix<K::Elem> {
    let f = ring.field();
    let Some((lo, hi)) = twist_range(ring, source) else {
        return GradedMatrix::zero(source.to_vec(), Vec::new());
    };
    let pieces = (lo..=hi)
        .map(|d| {
            let m = map_at(d);
            Subspace::spanned_by(f, m.cols(), &m.kernel(f))
        })
        .collect();
    let sub = GradedSubspace::new(lo, pieces);
    let free = FreeModule::new(ring.clone(), source.to_vec());
    let gens = minimal_generators(&free, &sub);
    columns_from_vectors(ring, source, gens)
}

/// Graded matrix with target `target` whose columns are the given homogeneous vectors.
pub fn columns_from_vectors<K: Field>(
    ring: &Ring<K>,
    target: &[i32],
    vectors: Vec<(i32, Vec<K::Elem>)>,
) -> GradedMatrix<K::Elem> {
    let f = ring.field();
    let mut source = Vec::with_capacity(vectors.len());
    let mut columns = Vec::with_capacity(vectors.len());
    for (d, v) in vectors {
        let off = free_offsets(ring, target, d);
        source.push(d);
        columns.push(sparse_column(f, &off, &v));
    }
    GradedMatrix::from_columns(target.to_vec(), source, columns)
}

/// `coker(φ)` together with the bookkeeping to move between `F_0` and the quotient.
#[derive(Debug, Clone)]
pub struct Cokernel<K: Field> {
    pub module: StructuredModule<K>,
    low: i32,
    images: Vec<Subspace<K::Elem>>,
    complements: Vec<Vec<usize>>,
}

impl<K: Field> Cokernel<K> {
    fn index(&self, d: i32) -> Option<usize> {
        if d < self.low || d - self.low >= self.images.len() as i32 {
            None
        } else {
            Some((d - self.low) as usize)
        }
    }

    /// Class of `v ∈ (F_0)_d` in the quotient basis.
    pub fn project(&self, field: &K, d: i32, v: &[K::Elem]) -> Vec<K::Elem> {
        let Some(k) = self.index(d) else {
            return Vec::new();
        };
        let mut w = v.to_vec();
        self.images[k].reduce(field, &mut w);
        self.complements[k].iter().map(|&c| w[c].clone()).collect()
    }

    /// A representative in `(F_0)_d` of a quotient vector.
    pub fn lift(&self, field: &K, d: i32, q: &[K::Elem]) -> Vec<K::Elem> {
        let Some(k) = self.index(d) else {
            return Vec::new();
        };
        let mut v = vec![field.zero(); self.images[k].ambient()];
        for (&c, x) in self.complements[k].iter().zip(q) {
            v[c] = x.clone();
        }
        v
    }
}

/// The module numbers `l(M)`, `μ(M)` and `γ(M) = l(M)/μ(M) - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericInvariants {
    pub length: usize,
    pub mu: usize,
    pub gamma: Option<Ratio<i64>>,
}

/// `M = coker(φ: F_1 -> F_0)` for a homogeneous matrix `φ`.
#[derive(Debug, Clone)]
pub struct PresentedModule<K: Field> {
    ring: Arc<Ring<K>>,
    matrix: GradedMatrix<K::Elem>,
}

impl<K: Field> PresentedModule<K> {
    pub fn from_matrix(ring: Arc<Ring<K>>, matrix: GradedMatrix<K::Elem>) -> Self {
        PresentedModule { ring, matrix }
    }

    pub fn parse(ring: Arc<Ring<K>>, targets: Vec<i32>, sources: Vec<i32>, entries: &[Vec<&str>]) -> Result<Self> {
        ring.require_artinian()?;
        let matrix = GradedMatrix::parse(&ring, targets, sources, entries)?;
        Ok(Self::from_matrix(ring, matrix))
    }

    pub fn free(ring: Arc<Ring<K>>, twists: &[i32]) -> Self {
        Self::from_matrix(ring, GradedMatrix::zero(twists.to_vec(), Vec::new()))
    }

    pub fn zero(ring: Arc<Ring<K>>) -> Self {
        Self::free(ring, &[])
    }

    /// `R/(f_1, …, f_k)` with generator in degree 0.
    pub fn cyclic(ring: Arc<Ring<K>>, relations: &[&str]) -> Result<Self> {
        let polys = relations
            .iter()
            .map(|s| parse_polynomial(ring.field(), ring.vars(), s))
            .collect::<Result<Vec<_>>>()?;
        let sources = polys
            .iter()
            .map(|p| {
                p.homogeneous_degree()
                    .map(|d| d as i32)
                    .ok_or_else(|| Error::NotHomogeneous(p.fmt_with(ring.field(), ring.vars())))
            })
            .collect::<Result<Vec<_>>>()?;
        let matrix = GradedMatrix::from_entries(&ring, vec![0], sources, &[polys])?;
        Ok(Self::from_matrix(ring, matrix))
    }

    /// The residue field `k = R/m`.
    pub fn residue_field(ring: Arc<Ring<K>>) -> Self {
        let gens: Vec<String> = ring.vars().names().to_vec();
        let refs: Vec<&str> = gens.iter().map(|s| s.as_str()).collect();
        Self::cyclic(ring, &refs).expect("variables are homogeneous")
    }

    /// The maximal ideal as a module.
    pub fn maximal_ideal(ring: Arc<Ring<K>>) -> Self {
        let s = ring.top_degree().unwrap_or(0);
        if s == 0 {
            return Self::zero(ring);
        }
        let dims = (1..=s).map(|d| ring.dim(d)).collect();
        let r = ring.clone();
        let ideal = StructuredModule::from_variable_actions(ring, 1, dims, move |i, d| {
            let g = r.variable_generators().iter().find(|(v, _)| *v == i).unwrap().1;
            r.mul_matrix(g, d)
        });
        ideal.presentation()
    }

    pub fn ring(&self) -> &Arc<Ring<K>> {
        &self.ring
    }

    pub fn matrix(&self) -> &GradedMatrix<K::Elem> {
        &self.matrix
    }

    pub fn targets(&self) -> &[i32] {
        self.matrix.target()
    }

    pub fn sources(&self) -> &[i32] {
        self.matrix.source()
    }

    pub fn cokernel(&self) -> Cokernel<K> {
        let ring = &self.ring;
        let f = ring.field();
        let Some((lo, hi)) = twist_range(ring, self.targets()) else {
            return Cokernel {
                module: StructuredModule::zero(ring.clone()),
                low: 0,
                images: Vec::new(),
                complements: Vec::new(),
            };
        };
        let mut images = Vec::new();
        let mut complements = Vec::new();
        for d in lo..=hi {
            let m = self.matrix.degree_matrix(ring, d);
            let cols: Vec<Vec<K::Elem>> = (0..m.cols()).map(|j| m.column(j)).collect();
            let sub = Subspace::spanned_by(f, m.rows(), &cols);
            complements.push(sub.complement_coordinates());
            images.push(sub);
        }
        let dims: Vec<usize> = complements.iter().map(|c| c.len()).collect();
        let mut coker = Cokernel {
            module: StructuredModule::zero(ring.clone()),
            low: lo,
            images,
            complements,
        };
        let free = FreeModule::new(ring.clone(), self.targets().to_vec());
        let one = f.one();
        let module = StructuredModule::from_variable_actions(ring.clone(), lo, dims.clone(), |i, d| {
            let g = ring.variable_generators().iter().find(|(v, _)| *v == i).unwrap().1;
            let e = d + ring.degree_of(g);
            let n = dims[(d - lo) as usize];
            let cols: Vec<Vec<K::Elem>> = (0..n)
                .map(|k| {
                    let mut q = vec![f.zero(); n];
                    q[k] = one.clone();
                    let v = coker.lift(f, d, &q);
                    let mut out = vec![f.zero(); free.dim(e)];
                    free.mul_basis_acc(g, d, &v, &one, &mut out);
                    coker.project(f, e, &out)
                })
                .collect();
            let rows = if e > hi { 0 } else { dims[(e - lo) as usize] };
            Matrix::from_columns(f, rows, &cols)
        });
        coker.module = module;
        coker
    }

    pub fn structure(&self) -> StructuredModule<K> {
        self.cokernel().module
    }

    pub fn hilbert_polynomial(&self) -> LaurentPoly {
        self.structure().hilbert_polynomial()
    }

    pub fn length(&self) -> usize {
        self.structure().length()
    }

    /// Presentation with all entries in `m` and a minimal set of relations.
    pub fn minimal_presentation(&self) -> PresentedModule<K> {
        let ring = &self.ring;
        let mut phi = self.matrix.clone();
        let f = ring.field();
        while let Some((u, v)) = phi.unit_entry() {
            let c = phi.entry(u, v).unwrap()[0].clone();
            let cinv = f.inv(&c);
            for w in 0..phi.source().len() {
                if w == v {
                    continue;
                }
                if let Some(a) = phi.entry(u, w) {
                    let r = RingElem {
                        degree: phi.source()[w] - phi.target()[u],
                        coeffs: a.iter().map(|x| f.mul(x, &cinv)).collect(),
                    };
                    phi.column_axpy(ring, w, &r, v);
                }
            }
            phi.remove_row_and_column(u, v);
        }
        let targets = phi.target().to_vec();
        let Some((lo, hi)) = twist_range(ring, &targets) else {
            return Self::zero(ring.clone());
        };
        let pieces = (lo..=hi)
            .map(|d| {
                let m = phi.degree_matrix(ring, d);
                let cols: Vec<Vec<K::Elem>> = (0..m.cols()).map(|j| m.column(j)).collect();
                Subspace::spanned_by(f, m.rows(), &cols)
            })
            .collect();
        let free = FreeModule::new(ring.clone(), targets.clone());
        let gens = minimal_generators(&free, &GradedSubspace::new(lo, pieces));
        Self::from_matrix(ring.clone(), columns_from_vectors(ring, &targets, gens))
    }

    pub fn is_minimal(&self) -> bool {
        self.matrix.is_minimal()
    }

    /// `μ(M)`, the minimal number of generators.
    pub fn mu(&self) -> usize {
        self.minimal_presentation().targets().len()
    }

    pub fn is_free(&self) -> bool {
        self.minimal_presentation().matrix.is_zero()
    }

    pub fn is_cyclic(&self) -> bool {
        self.mu() <= 1
    }

    pub fn numeric_invariants(&self) -> NumericInvariants {
        let length = self.length();
        let mu = self.mu();
        let gamma = (mu > 0).then(|| Ratio::new(length as i64, mu as i64) - 1);
        NumericInvariants { length, mu, gamma }
    }

    /// `m M = 0`, i.e. `M` is a direct sum of shifted copies of `k`.
    pub fn is_killed_by_max_ideal(&self) -> bool {
        let s = self.structure();
        let f = self.ring.field();
        let Some((lo, hi)) = s.degree_range() else {
            return true;
        };
        self.ring
            .variable_generators()
            .iter()
            .all(|&(_, g)| (lo..=hi).all(|d| s.act(g, d).is_zero(f)))
    }

    /// Certifies `M ≅ R(-j)`: one generator and no annihilator, so `l(M) = l(R)`.
    pub fn is_shifted_ring(&self) -> bool {
        self.mu() == 1 && Some(self.length()) == self.ring.length()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::from_matrix(self.ring.clone(), self.matrix.direct_sum(&other.matrix))
    }

    /// `M(j)`: every twist drops by `j`.
    pub fn shift(&self, j: i32) -> Self {
        let m = &self.matrix;
        Self::from_matrix(
            self.ring.clone(),
            GradedMatrix::from_columns(
                m.target().iter().map(|t| t - j).collect(),
                m.source().iter().map(|t| t - j).collect(),
                m.columns().to_vec(),
            ),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::poly::Variables;

    fn ring(names: &[&str], rels: &[&str]) -> Arc<Ring<PrimeField>> {
        Arc::new(Ring::parse(PrimeField::new(101).unwrap(), Variables::standard(names), rels).unwrap())
    }

    fn e() -> Arc<Ring<PrimeField>> {
        ring(&["x", "y"], &["x^2", "y^2"])
    }

    fn g() -> Arc<Ring<PrimeField>> {
        ring(&["x", "y"], &["x^2", "x*y", "y^2"])
    }

    #[test]
    fn unit_presentation_is_zero() {
        let m = PresentedModule::parse(e(), vec![0], vec![0], &[vec!["1"]]).unwrap();
        let min = m.minimal_presentation();
        assert_eq!(min.targets().len(), 0);
        assert_eq!(m.mu(), 0);
        assert_eq!(m.length(), 0);
        assert!(m.is_free() && m.is_cyclic());
    }

    #[test]
    fn cyclic_quotient_is_already_minimal() {
        let m = PresentedModule::parse(e(), vec![0], vec![1], &[vec!["x"]]).unwrap();
        let min = m.minimal_presentation();
        assert_eq!(min.targets(), &[0]);
        assert_eq!(min.sources(), &[1]);
        assert_eq!(m.hilbert_polynomial(), LaurentPoly::from_coeffs(&[1, 1]));
        assert!(m.is_cyclic() && !m.is_free());
    }

    #[test]
    fn unit_row_is_eliminated() {
        let m = PresentedModule::parse(e(), vec![0, 1], vec![0, 2], &[vec!["1", "x^2 + x*y"], vec!["0", "y"]]);
        // x^2 vanishes, so the corner entry is x*y
        let m = m.unwrap();
        let min = m.minimal_presentation();
        assert_eq!(min.targets(), &[1]);
        assert_eq!(min.sources(), &[2]);
        assert_eq!(min.matrix().format_entries(m.ring()), vec![vec!["y"]]);
        assert_eq!(min.hilbert_polynomial(), m.hilbert_polynomial());
    }

    #[test]
    fn numeric_invariants_examples() {
        let r = e();
        let max = PresentedModule::maximal_ideal(r.clone());
        let inv = max.numeric_invariants();
        assert_eq!((inv.length, inv.mu), (3, 2));
        assert_eq!(inv.gamma, Some(Ratio::new(1, 2)));
        let k = PresentedModule::residue_field(r.clone());
        assert_eq!(k.numeric_invariants().gamma, Some(Ratio::from_integer(0)));
        assert!(k.is_killed_by_max_ideal());
        let free = PresentedModule::free(r.clone(), &[0]);
        assert_eq!(free.numeric_invariants().gamma, Some(Ratio::from_integer(3)));
        assert!(!free.is_killed_by_max_ideal());
        assert_eq!(PresentedModule::zero(r).numeric_invariants().gamma, None);
    }

    #[test]
    fn freeness_and_cyclicity() {
        let r = e();
        let e2 = PresentedModule::free(r.clone(), &[0, 0]);
        assert!(e2.is_free() && !e2.is_cyclic());
        let max = PresentedModule::maximal_ideal(r.clone());
        assert!(!max.is_free() && !max.is_cyclic());
        let ex = PresentedModule::cyclic(r, &["x"]).unwrap();
        assert!(ex.is_cyclic() && !ex.is_free());
    }

    #[test]
    fn canonical_module_of_e_and_g() {
        let ome = StructuredModule::canonical(e()).unwrap();
        assert_eq!(ome.hilbert_polynomial(), LaurentPoly::from_coeffs(&[1, 2, 1]));
        assert!(ome.satisfies_module_axioms());
        let p = ome.presentation();
        assert_eq!(p.targets(), &[0]);
        assert!(p.is_shifted_ring());
        let omg = StructuredModule::canonical(g()).unwrap();
        assert_eq!(omg.hilbert_polynomial(), LaurentPoly::from_coeffs(&[2, 1]));
        assert_eq!(omg.presentation().mu(), 2);
        let k = ring(&[], &[]);
        let omk = StructuredModule::canonical(k).unwrap();
        assert_eq!(omk.presentation().targets(), &[0]);
        assert_eq!(omk.length(), 1);
    }

    #[test]
    fn structure_round_trip() {
        let r = e();
        let m = PresentedModule::parse(r.clone(), vec![0, 1], vec![1, 2], &[vec!["x", "0"], vec!["0", "y"]]).unwrap();
        let s = m.structure();
        assert!(s.satisfies_module_axioms());
        let back = s.presentation();
        assert_eq!(back.hilbert_polynomial(), m.hilbert_polynomial());
        assert_eq!(back.mu(), 2);
        let sum = s.direct_sum(&StructuredModule::free(r, &[3]));
        assert!(sum.satisfies_module_axioms());
        assert_eq!(sum.length(), m.length() + 4);
    }

    #[test]
    fn entry_degree_is_enforced() {
        let r = e();
        let err = PresentedModule::parse(r, vec![0], vec![2], &[vec!["x"]]).unwrap_err();
        assert!(matches!(err, Error::EntryDegree { expected: 2, found: 1, .. }));
    }
}
