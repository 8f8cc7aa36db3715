//! Second exterior and symmetric powers of modules and of free complexes.
//!
//! For `M = coker(φ: F_1 -> F_0)` the squares are presented from `F_0`:
//! `∧²M = ∧²F_0 / (φ(g) ∧ e_w)`, `S²M = S²F_0 / (φ(g) e_w)` and
//! `M ⊗ M = F_0 ⊗ F_0 / (φ(g) ⊗ e_w, e_w ⊗ φ(g))`.

use std::collections::BTreeMap;

use crate::complex::{ChainMap, FreeComplex, TensorIndex};
use crate::error::Result;
use crate::field::Field;
use crate::linalg::Matrix;
use crate::module::{Cokernel, Column, GradedMatrix, GradedModule, PresentedModule};
use crate::ring::{Ring, RingElem};
use crate::series::LaurentPoly;

fn wedge_index(n: usize, u: usize, v: usize) -> usize {
    debug_assert!(u < v);
    // pairs (0,1), (0,2), …, (0,n-1), (1,2), …
    u * n - u * (u + 1) / 2 + (v - u - 1)
}

fn sym_index(n: usize, u: usize, v: usize) -> usize {
    debug_assert!(u <= v);
    u * n - u * (u.saturating_sub(1)) / 2 + (v - u)
}

fn wedge_twists(t: &[i32]) -> Vec<i32> {
    let n = t.len();
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            out.push(t[u] + t[v]);
        }
    }
    out
}

fn sym_twists(t: &[i32]) -> Vec<i32> {
    let n = t.len();
    let mut out = Vec::new();
    for u in 0..n {
        for v in u..n {
            out.push(t[u] + t[v]);
        }
    }
    out
}

fn tensor_twists(t: &[i32]) -> Vec<i32> {
    t.iter().flat_map(|a| t.iter().map(move |b| a + b)).collect()
}

fn neg<K: Field>(f: &K, a: &[K::Elem]) -> Vec<K::Elem> {
    a.iter().map(|x| f.neg(x)).collect()
}

fn finish_column<E>(mut col: Column<E>) -> Column<E> {
    col.sort_by_key(|(r, _)| *r);
    col
}

/// Accumulates sparse column entries, adding blocks that land on the same row.
fn accumulate<K: Field>(f: &K, entries: Vec<(usize, Vec<K::Elem>)>) -> Column<K::Elem> {
    let mut map: BTreeMap<usize, Vec<K::Elem>> = BTreeMap::new();
    for (r, b) in entries {
        match map.get_mut(&r) {
            Some(acc) => {
                for (x, y) in acc.iter_mut().zip(&b) {
                    *x = f.add(x, y);
                }
            }
            None => {
                map.insert(r, b);
            }
        }
    }
    map.into_iter()
        .filter(|(_, b)| b.iter().any(|x| !f.is_zero(x)))
        .collect()
}

/// `∧²M`, `S²M` and `M ⊗ M`, all presented over the generators of `M`.
#[derive(Debug, Clone)]
pub struct SquarePowers<K: Field> {
    pub module: PresentedModule<K>,
    pub wedge2: PresentedModule<K>,
    pub sym2: PresentedModule<K>,
    pub tensor: PresentedModule<K>,
}

impl<K: Field> SquarePowers<K> {
    /// Uses the presentation of `m` exactly as given.
    pub fn new(m: &PresentedModule<K>) -> Self {
        let ring = m.ring().clone();
        let f = ring.field();
        let phi = m.matrix();
        let t = phi.target();
        let n = t.len();
        let (mut wcols, mut wsrc) = (Vec::new(), Vec::new());
        let (mut scols, mut ssrc) = (Vec::new(), Vec::new());
        let (mut tcols, mut tsrc) = (Vec::new(), Vec::new());
        for (g, col) in phi.columns().iter().enumerate() {
            let sg = phi.source()[g];
            for (w, &tw) in t.iter().enumerate() {
                let deg = sg + tw;
                let mut wc = Vec::new();
                let mut sc = Vec::new();
                let mut left = Vec::new();
                let mut right = Vec::new();
                for (u, a) in col {
                    let u = *u;
                    if u < w {
                        wc.push((wedge_index(n, u, w), a.clone()));
                    } else if u > w {
                        wc.push((wedge_index(n, w, u), neg(f, a)));
                    }
                    sc.push((sym_index(n, u.min(w), u.max(w)), a.clone()));
                    left.push((u * n + w, a.clone()));
                    right.push((w * n + u, a.clone()));
                }
                wcols.push(finish_column(wc));
                wsrc.push(deg);
                scols.push(finish_column(sc));
                ssrc.push(deg);
                tcols.push(finish_column(left));
                tsrc.push(deg);
                tcols.push(finish_column(right));
                tsrc.push(deg);
            }
        }
        let build = |target: Vec<i32>, source: Vec<i32>, cols| {
            PresentedModule::from_matrix(ring.clone(), GradedMatrix::from_columns(target, source, cols))
        };
        SquarePowers {
            module: m.clone(),
            wedge2: build(wedge_twists(t), wsrc, wcols),
            sym2: build(sym_twists(t), ssrc, scols),
            tensor: build(tensor_twists(t), tsrc, tcols),
        }
    }

    /// `ι: e_u ∧ e_v ↦ e_u ⊗ e_v - e_v ⊗ e_u` on the free covers.
    pub fn iota_lift(&self) -> GradedMatrix<K::Elem> {
        let ring = self.module.ring();
        let f = ring.field();
        let t = self.module.targets();
        let n = t.len();
        let one = ring.one_elem().coeffs;
        let mut cols = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                cols.push(finish_column(vec![(u * n + v, one.clone()), (v * n + u, neg(f, &one))]));
            }
        }
        GradedMatrix::from_columns(tensor_twists(t), wedge_twists(t), cols)
    }

    /// `σ: e_u ⊗ e_v ↦ ½ e_u ∧ e_v` on the free covers.
    pub fn splitting_lift(&self) -> Result<GradedMatrix<K::Elem>> {
        let ring = self.module.ring();
        let f = ring.field();
        f.require_odd_characteristic()?;
        let half = f.inv(&f.from_i64(2));
        let t = self.module.targets();
        let n = t.len();
        let mut cols = Vec::new();
        for u in 0..n {
            for v in 0..n {
                let col = if u < v {
                    vec![(wedge_index(n, u, v), vec![half.clone()])]
                } else if u > v {
                    vec![(wedge_index(n, v, u), vec![f.neg(&half)])]
                } else {
                    Vec::new()
                };
                cols.push(col);
            }
        }
        Ok(GradedMatrix::from_columns(wedge_twists(t), tensor_twists(t), cols))
    }
}

/// The map `coker_src -> coker_tgt` induced by `lift` on the free covers, at degree `d`.
pub fn induced_matrix<K: Field>(
    ring: &Ring<K>,
    src: &Cokernel<K>,
    tgt: &Cokernel<K>,
    lift: &GradedMatrix<K::Elem>,
    d: i32,
) -> Matrix<K::Elem> {
    let f = ring.field();
    let n = src.module.dim(d);
    let rows = tgt.module.dim(d);
    let m = lift.degree_matrix(ring, d);
    let cols: Vec<Vec<K::Elem>> = (0..n)
        .map(|k| {
            let mut q = vec![f.zero(); n];
            q[k] = f.one();
            let v = src.lift(f, d, &q);
            let w = m.apply(f, &v);
            tgt.project(f, d, &w)
        })
        .collect();
    Matrix::from_columns(f, rows, &cols)
}

fn degree_span<K: Field>(mods: &[&Cokernel<K>]) -> Option<(i32, i32)> {
    let ranges: Vec<(i32, i32)> = mods.iter().filter_map(|c| c.module.degree_range()).collect();
    let lo = ranges.iter().map(|r| r.0).min()?;
    let hi = ranges.iter().map(|r| r.1).max()?;
    Some((lo, hi))
}

/// `ι_M: ∧²M -> M ⊗ M` realised degreewise, with `∧²M`, `S²M`, `M ⊗ M`.
#[derive(Debug, Clone)]
pub struct Antisymmetrization<K: Field> {
    pub powers: SquarePowers<K>,
    /// `(d, ι_d)` in every degree where `∧²M` or `M ⊗ M` is nonzero.
    pub iota: Vec<(i32, Matrix<K::Elem>)>,
    pub injective: bool,
    /// `dim coker(ι)_d = dim (S²M)_d` for every `d`.
    pub cokernel_matches_sym2: bool,
}

pub fn antisymmetrization_module<K: Field>(m: &PresentedModule<K>) -> Antisymmetrization<K> {
    let powers = SquarePowers::new(&m.minimal_presentation());
    let ring = powers.module.ring().clone();
    let f = ring.field();
    let wedge = powers.wedge2.cokernel();
    let tensor = powers.tensor.cokernel();
    let sym = powers.sym2.structure();
    let lift = powers.iota_lift();
    let mut iota = Vec::new();
    let mut injective = true;
    let mut matches = true;
    if let Some((lo, hi)) = degree_span(&[&wedge, &tensor]) {
        for d in lo..=hi {
            let m = induced_matrix(&ring, &wedge, &tensor, &lift, d);
            let r = m.rank(f);
            injective &= r == m.cols();
            matches &= m.rows() - r == sym.dim(d);
            iota.push((d, m));
        }
    }
    Antisymmetrization {
        powers,
        iota,
        injective,
        cokernel_matches_sym2: matches,
    }
}

/// Degreewise comparison `M ⊗ M = S²M ⊕ ∧²M` and the ½-splitting of `ι_M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorSquareDecomposition {
    /// `(d, dim (M⊗M)_d, dim (S²M)_d, dim (∧²M)_d)`.
    pub dims: Vec<(i32, usize, usize, usize)>,
    pub dims_add_up: bool,
    /// `σ ∘ ι = id` in every degree.
    pub splitting_is_left_inverse: bool,
}

impl TensorSquareDecomposition {
    pub fn holds(&self) -> bool {
        self.dims_add_up && self.splitting_is_left_inverse
    }
}

pub fn decompose_tensor_square<K: Field>(m: &PresentedModule<K>) -> Result<TensorSquareDecomposition> {
    m.ring().field().require_odd_characteristic()?;
    let powers = SquarePowers::new(&m.minimal_presentation());
    let ring = powers.module.ring().clone();
    let f = ring.field();
    let wedge = powers.wedge2.cokernel();
    let tensor = powers.tensor.cokernel();
    let sym = powers.sym2.structure();
    let iota = powers.iota_lift();
    let sigma = powers.splitting_lift()?;
    let mut dims = Vec::new();
    let mut add_up = true;
    let mut left_inverse = true;
    if let Some((lo, hi)) = degree_span(&[&wedge, &tensor]) {
        for d in lo..=hi {
            let (t, s, w) = (tensor.module.dim(d), sym.dim(d), wedge.module.dim(d));
            add_up &= t == s + w;
            let i = induced_matrix(&ring, &wedge, &tensor, &iota, d);
            let p = induced_matrix(&ring, &tensor, &wedge, &sigma, d);
            left_inverse &= p.mul(f, &i) == Matrix::identity(f, w);
            dims.push((d, t, s, w));
        }
    }
    Ok(TensorSquareDecomposition {
        dims,
        dims_add_up: add_up,
        splitting_is_left_inverse: left_inverse,
    })
}

/// Both sides of `dim ∧²L <= r(R) · C(b, 2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedgeBounds {
    pub mu: usize,
    pub killed_by_max_ideal: bool,
    /// `C(μ, 2)` when `mL = 0`, else the computed `dim_k ∧²L`.
    pub wedge_dim: usize,
    pub socle_capacity: usize,
    pub holds: bool,
}

pub fn binomial2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// The inequality from numbers alone: `C(μ, 2) <= r · C(b, 2)`.
pub fn wedge_inequality(mu: usize, socle_dim: usize, b: usize) -> (usize, usize, bool) {
    let lhs = binomial2(mu);
    let rhs = socle_dim * binomial2(b);
    (lhs, rhs, lhs <= rhs)
}

pub fn wedge_dimension_bounds<K: Field>(l: &PresentedModule<K>, b: usize) -> Result<WedgeBounds> {
    let r = l.ring().socle_dim()?;
    let mu = l.mu();
    let killed = l.is_killed_by_max_ideal();
    let wedge_dim = if killed {
        binomial2(mu)
    } else {
        SquarePowers::new(&l.minimal_presentation()).wedge2.length()
    };
    let cap = r * binomial2(b);
    Ok(WedgeBounds {
        mu,
        killed_by_max_ideal: killed,
        wedge_dim,
        socle_capacity: cap,
        holds: wedge_dim <= cap,
    })
}

fn ring_product<K: Field>(ring: &Ring<K>, a: &RingElem<K::Elem>, b: &RingElem<K::Elem>) -> Vec<K::Elem> {
    ring.mul(a, b).coeffs
}

/// `∧²Φ: e_u ∧ e_v ↦ Φe_u ∧ Φe_v` between exterior squares of free modules.
pub fn wedge2_matrix<K: Field>(ring: &Ring<K>, phi: &GradedMatrix<K::Elem>) -> GradedMatrix<K::Elem> {
    let f = ring.field();
    let (s, t) = (phi.source(), phi.target());
    let (n, m) = (s.len(), t.len());
    let mut cols = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let mut entries = Vec::new();
            for a in 0..m {
                for b in 0..m {
                    if a == b || phi.entry(a, u).is_none() || phi.entry(b, v).is_none() {
                        continue;
                    }
                    let p = ring_product(ring, &phi.entry_elem(ring, a, u), &phi.entry_elem(ring, b, v));
                    if a < b {
                        entries.push((wedge_index(m, a, b), p));
                    } else {
                        entries.push((wedge_index(m, b, a), neg(f, &p)));
                    }
                }
            }
            cols.push(accumulate(f, entries));
        }
    }
    GradedMatrix::from_columns(wedge_twists(t), wedge_twists(s), cols)
}

/// `Φ ⊗ Φ` between tensor squares of free modules.
pub fn tensor2_matrix<K: Field>(ring: &Ring<K>, phi: &GradedMatrix<K::Elem>) -> GradedMatrix<K::Elem> {
    let f = ring.field();
    let (s, t) = (phi.source(), phi.target());
    let (n, m) = (s.len(), t.len());
    let mut cols = Vec::new();
    for u in 0..n {
        for v in 0..n {
            let mut entries = Vec::new();
            for (a, _) in phi.column(u) {
                for (b, _) in phi.column(v) {
                    let p = ring_product(ring, &phi.entry_elem(ring, *a, u), &phi.entry_elem(ring, *b, v));
                    entries.push((a * m + b, p));
                }
            }
            cols.push(accumulate(f, entries));
        }
    }
    GradedMatrix::from_columns(tensor_twists(t), tensor_twists(s), cols)
}

/// The square `ι_T ∘ ∧²φ = (φ ⊗ φ) ∘ ι_L` for a module map `φ: L -> T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaturalitySquare {
    pub commutes: bool,
    pub iota_source_injective: bool,
    pub tensor_map_injective: bool,
    pub wedge_map_injective: bool,
}

impl NaturalitySquare {
    /// Injectivity of `ι_L` and `φ ⊗ φ` forces injectivity of `∧²φ`.
    pub fn consistent(&self) -> bool {
        self.commutes && (!(self.iota_source_injective && self.tensor_map_injective) || self.wedge_map_injective)
    }
}

/// `phi` maps the generators of `l` into the free cover of `t`; both presentations are used as given.
pub fn naturality_square<K: Field>(
    l: &PresentedModule<K>,
    t: &PresentedModule<K>,
    phi: &GradedMatrix<K::Elem>,
) -> NaturalitySquare {
    let ring = l.ring().clone();
    let f = ring.field();
    let pl = SquarePowers::new(l);
    let pt = SquarePowers::new(t);
    let (wl, tl) = (pl.wedge2.cokernel(), pl.tensor.cokernel());
    let (wt, tt) = (pt.wedge2.cokernel(), pt.tensor.cokernel());
    let w_phi = wedge2_matrix(&ring, phi);
    let t_phi = tensor2_matrix(&ring, phi);
    let (il, it) = (pl.iota_lift(), pt.iota_lift());
    let mut sq = NaturalitySquare {
        commutes: true,
        iota_source_injective: true,
        tensor_map_injective: true,
        wedge_map_injective: true,
    };
    let Some((lo, hi)) = degree_span(&[&wl, &tl, &wt, &tt]) else {
        return sq;
    };
    for d in lo..=hi {
        let a = induced_matrix(&ring, &wl, &wt, &w_phi, d);
        let b = induced_matrix(&ring, &wt, &tt, &it, d);
        let c = induced_matrix(&ring, &wl, &tl, &il, d);
        let e = induced_matrix(&ring, &tl, &tt, &t_phi, d);
        sq.commutes &= b.mul(f, &a) == e.mul(f, &c);
        sq.iota_source_injective &= c.rank(f) == c.cols();
        sq.tensor_map_injective &= e.rank(f) == e.cols();
        sq.wedge_map_injective &= a.rank(f) == a.cols();
    }
    sq
}

fn sign<K: Field>(f: &K, odd: bool) -> K::Elem {
    if odd {
        f.neg(&f.one())
    } else {
        f.one()
    }
}

/// `α^X(x ⊗ x') = x ⊗ x' - (-1)^{|x||x'|} x' ⊗ x` on `X ⊗ X`.
pub fn alpha<K: Field>(x: &FreeComplex<K>) -> ChainMap<K> {
    let ring = x.ring().clone();
    let f = ring.field();
    let xx = x.tensor(x);
    let index = TensorIndex::new(x, x);
    let maps = (xx.low()..=xx.high())
        .map(|n| {
            let cols = index
                .basis(n)
                .into_iter()
                .map(|(i, u, v)| {
                    let j = n - i;
                    let here = index.position(n, i, u, v);
                    let swapped = index.position(n, j, v, u);
                    let s = f.neg(&sign(f, (i * j) % 2 != 0));
                    accumulate(f, vec![(here, vec![f.one()]), (swapped, vec![s])])
                })
                .collect();
            GradedMatrix::from_columns(xx.module(n).to_vec(), xx.module(n).to_vec(), cols)
        })
        .collect();
    ChainMap::new(xx.clone(), xx, maps).expect("endomorphism of X ⊗ X")
}

/// A basis element `e_{i,u} e_{j,v}` of `S²X`, as the pair of factors.
pub type PairIndex = ((i32, usize), (i32, usize));

/// `S²X = coker(α^X)` with an explicit free basis and the projection from `X ⊗ X`.
#[derive(Debug, Clone)]
pub struct SymmetricSquare<K: Field> {
    pub complex: FreeComplex<K>,
    pub alpha: ChainMap<K>,
    pub projection: ChainMap<K>,
    /// Per homological degree, the pairs `((i, u), (j, v))` with `(i, u) <= (j, v)` spanning `S²X_n`.
    pub basis: Vec<Vec<PairIndex>>,
}

/// Checks that make the splitting of `X ⊗ X` explicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitCertificate {
    pub alpha_is_chain_map: bool,
    pub alpha_squared_is_twice_alpha: bool,
    pub projection_is_chain_map: bool,
    pub projection_kills_alpha: bool,
    pub d_squared_zero: bool,
    /// `rank (X⊗X)_{n,j} = dim ker α_{n,j} + rank α_{n,j}` and `rank S²X_{n,j} = dim ker α_{n,j}`.
    pub rank_additivity: bool,
}

impl SplitCertificate {
    pub fn holds(&self) -> bool {
        self.alpha_is_chain_map
            && self.alpha_squared_is_twice_alpha
            && self.projection_is_chain_map
            && self.projection_kills_alpha
            && self.d_squared_zero
            && self.rank_additivity
    }
}

pub fn symmetric_square_complex<K: Field>(x: &FreeComplex<K>) -> Result<SymmetricSquare<K>> {
    let ring = x.ring().clone();
    let f = ring.field();
    f.require_odd_characteristic()?;
    let alpha = alpha(x);
    let xx = alpha.source.clone();
    let index = TensorIndex::new(x, x);
    let mut basis = Vec::new();
    let mut modules = Vec::new();
    let mut proj = Vec::new();
    let mut lifts = Vec::new();
    for n in xx.low()..=xx.high() {
        let mut b = Vec::new();
        for (i, u, v) in index.basis(n) {
            let j = n - i;
            let (a, c) = ((i, u), (j, v));
            if a < c || (a == c && i % 2 == 0) {
                b.push((a, c));
            }
        }
        let pos: BTreeMap<PairIndex, usize> = b.iter().enumerate().map(|(k, p)| (*p, k)).collect();
        let twists: Vec<i32> = b.iter().map(|&((i, u), (j, v))| x.module(i)[u] + x.module(j)[v]).collect();
        let pcols: Vec<Column<K::Elem>> = index
            .basis(n)
            .into_iter()
            .map(|(i, u, v)| {
                let j = n - i;
                let (a, c) = ((i, u), (j, v));
                if a < c {
                    vec![(pos[&(a, c)], vec![f.one()])]
                } else if a > c {
                    vec![(pos[&(c, a)], vec![sign(f, (i * j) % 2 != 0)])]
                } else if i % 2 == 0 {
                    vec![(pos[&(a, c)], vec![f.one()])]
                } else {
                    Vec::new()
                }
            })
            .collect();
        let lcols: Vec<Column<K::Elem>> = b
            .iter()
            .map(|&((i, u), (_, v))| vec![(index.position(n, i, u, v), vec![f.one()])])
            .collect();
        proj.push(GradedMatrix::from_columns(twists.clone(), xx.module(n).to_vec(), pcols));
        lifts.push(GradedMatrix::from_columns(xx.module(n).to_vec(), twists.clone(), lcols));
        modules.push(twists);
        basis.push(b);
    }
    let mut diffs = Vec::new();
    for k in 1..modules.len() {
        let n = xx.low() + k as i32;
        let d = proj[k - 1].compose(&ring, &xx.differential(n).compose(&ring, &lifts[k]));
        diffs.push(d);
    }
    let complex = FreeComplex::new(ring.clone(), xx.low(), modules, diffs)?;
    let projection = ChainMap::new(xx, complex.clone(), proj)?;
    Ok(SymmetricSquare {
        complex,
        alpha,
        projection,
        basis,
    })
}

impl<K: Field> SymmetricSquare<K> {
    pub fn certificate(&self) -> SplitCertificate {
        let ring = self.complex.ring().clone();
        let f = ring.field();
        let two = f.from_i64(2);
        let aa = self.alpha.compose(&self.alpha);
        let pa = self.projection.compose(&self.alpha);
        let xx = &self.alpha.source;
        let mut additivity = true;
        for n in xx.low()..=xx.high() {
            let twists = xx.module(n);
            let mut by_twist: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
            for (k, &j) in twists.iter().enumerate() {
                by_twist.entry(j).or_default().push(k);
            }
            let a = self.alpha.component(n);
            for (j, idx) in by_twist {
                let mut m = Matrix::zeros(f, idx.len(), idx.len());
                for (c, &col) in idx.iter().enumerate() {
                    for (r, &row) in idx.iter().enumerate() {
                        if let Some(e) = a.entry(row, col) {
                            m.set(r, c, e[0].clone());
                        }
                    }
                }
                let rank = m.rank(f);
                let kernel = m.kernel(f).len();
                let s_rank = self.complex.module(n).iter().filter(|&&t| t == j).count();
                additivity &= idx.len() == rank + kernel && s_rank == kernel;
            }
        }
        SplitCertificate {
            alpha_is_chain_map: self.alpha.commutes(),
            alpha_squared_is_twice_alpha: aa.same_components(&self.alpha.scale(&two)),
            projection_is_chain_map: self.projection.commutes(),
            projection_kills_alpha: (xx.low()..=xx.high()).all(|n| pa.component(n).is_zero()),
            d_squared_zero: self.complex.d_squared_is_zero(),
            rank_additivity: additivity,
        }
    }
}

/// Hilbert series of `H_0(S²X)` and of `S²(H_0 X)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct S2H0Check {
    pub h0_of_s2: LaurentPoly,
    pub s2_of_h0: LaurentPoly,
}

impl S2H0Check {
    pub fn matches(&self) -> bool {
        self.h0_of_s2 == self.s2_of_h0
    }
}

/// Compares `H_0(S²X)` with `S²(H_0(X))` degree by degree; `X` must start in degree 0.
pub fn s2_h0_check<K: Field>(x: &FreeComplex<K>) -> Result<S2H0Check> {
    let ring = x.ring().clone();
    ring.require_artinian()?;
    let s2 = symmetric_square_complex(x)?;
    let h0 = |c: &FreeComplex<K>| PresentedModule::from_matrix(ring.clone(), c.differential(c.low() + 1));
    let left = h0(&s2.complex).hilbert_polynomial();
    let right = SquarePowers::new(&h0(x)).sym2.hilbert_polynomial();
    Ok(S2H0Check {
        h0_of_s2: left,
        s2_of_h0: right,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::poly::Variables;
    use crate::resolution::resolve;
    use std::sync::Arc;

    fn ring(rels: &[&str]) -> Arc<Ring<PrimeField>> {
        Arc::new(Ring::parse(PrimeField::new(101).unwrap(), Variables::standard(&["x", "y"]), rels).unwrap())
    }

    #[test]
    fn pair_indices_are_dense() {
        let n = 4;
        let mut w = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                w.push(wedge_index(n, u, v));
            }
        }
        assert_eq!(w, (0..6).collect::<Vec<_>>());
        let mut s = Vec::new();
        for u in 0..n {
            for v in u..n {
                s.push(sym_index(n, u, v));
            }
        }
        assert_eq!(s, (0..10).collect::<Vec<_>>());
    }

    #[test]
    fn squares_of_a_two_dimensional_vector_space() {
        let g = ring(&["x^2", "x*y", "y^2"]);
        let m = PresentedModule::maximal_ideal(g);
        let a = antisymmetrization_module(&m);
        assert_eq!(a.powers.wedge2.length(), 1);
        assert_eq!(a.powers.sym2.length(), 3);
        assert_eq!(a.powers.tensor.length(), 4);
        assert!(a.injective && a.cokernel_matches_sym2);
        let dec = decompose_tensor_square(&m).unwrap();
        assert!(dec.holds());
    }

    #[test]
    fn squares_of_free_modules() {
        let e = ring(&["x^2", "y^2"]);
        let r = PresentedModule::free(e.clone(), &[0]);
        let a = antisymmetrization_module(&r);
        assert_eq!(a.powers.wedge2.length(), 0);
        assert!(a.powers.sym2.is_shifted_ring());
        let e2 = PresentedModule::free(e, &[0, 0]);
        let p = SquarePowers::new(&e2);
        assert_eq!(p.wedge2.mu(), 1);
        assert!(p.wedge2.is_free());
        assert_eq!(p.sym2.mu(), 3);
        assert!(decompose_tensor_square(&e2).unwrap().holds());
    }

    #[test]
    fn tensor_square_of_max_ideal_splits() {
        let e = ring(&["x^2", "y^2"]);
        let m = PresentedModule::maximal_ideal(e);
        let dec = decompose_tensor_square(&m).unwrap();
        assert!(dec.holds(), "{dec:?}");
    }

    #[test]
    fn wedge_inequality_examples() {
        assert_eq!(wedge_inequality(1, 1, 2), (0, 1, true));
        assert_eq!(wedge_inequality(2, 1, 2), (1, 1, true));
        assert_eq!(wedge_inequality(3, 2, 2), (3, 2, false));
    }

    #[test]
    fn alpha_on_koszul_square() {
        let e = ring(&["x^2", "y^2"]);
        let d = GradedMatrix::parse(&e, vec![0], vec![1], &[vec!["x"]]).unwrap();
        let x = FreeComplex::two_term(e.clone(), d);
        let xx = x.tensor(&x);
        assert_eq!((xx.rank(0), xx.rank(1), xx.rank(2)), (1, 2, 1));
        assert_eq!(xx.module(1), &[1, 1]);
        assert_eq!(xx.module(2), &[2]);
        assert!(xx.d_squared_is_zero());
        let a = alpha(&x);
        assert_eq!(a.component(2).entry(0, 0), Some(&[2u64][..]));
        assert!(a.component(0).is_zero());
        let s = symmetric_square_complex(&x).unwrap();
        assert_eq!((s.complex.rank(0), s.complex.rank(1), s.complex.rank(2)), (1, 1, 0));
        assert!(s.certificate().holds());
    }

    #[test]
    fn symmetric_square_of_residue_resolution() {
        let e = ring(&["x^2", "y^2"]);
        let (x, _) = resolve(&PresentedModule::residue_field(e), 3);
        let s = symmetric_square_complex(&x).unwrap();
        assert!(s.certificate().holds());
        assert!(s2_h0_check(&x).unwrap().matches());
    }

    #[test]
    fn naturality_for_a_syzygy_embedding() {
        let e = ring(&["x^2", "y^2"]);
        let k = PresentedModule::residue_field(e.clone());
        let (c, _) = resolve(&k, 2);
        let l = PresentedModule::from_matrix(e.clone(), c.differential(2));
        let t = PresentedModule::free(e, c.module(0));
        let sq = naturality_square(&l, &t, &c.differential(1));
        assert!(sq.commutes && sq.consistent());
    }
}
