//! Tor and Ext by degreewise rank counts over a minimal resolution.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::complex::FreeComplex;
use crate::field::Field;
use crate::linalg::{Matrix, Subspace};
use crate::module::{minimal_generators, GradedMatrix, GradedModule, GradedSubspace, PresentedModule, StructuredModule};
use crate::resolution::Resolution;
use crate::ring::Ring;

/// `dim_k H_i(X)_j` on a window of homological degrees; zero entries are omitted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub op: String,
    pub window: (i32, i32),
    pub entries: Vec<(i32, i32, usize)>,
}

impl HomologyReport {
    pub fn new(op: &str, window: (i32, i32)) -> Self {
        HomologyReport {
            op: op.to_string(),
            window,
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, i: i32, pieces: &[(i32, usize)]) {
        self.entries
            .extend(pieces.iter().filter(|(_, n)| *n > 0).map(|&(j, n)| (i, j, n)));
    }

    pub fn total(&self, i: i32) -> usize {
        self.entries.iter().filter(|e| e.0 == i).map(|e| e.2).sum()
    }

    pub fn get(&self, i: i32, j: i32) -> usize {
        self.entries
            .iter()
            .find(|e| e.0 == i && e.1 == j)
            .map_or(0, |e| e.2)
    }

    pub fn vanishes(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn first_nonzero(&self) -> Option<i32> {
        self.entries.iter().map(|e| e.0).min()
    }
}

fn range_of<K: Field, M: GradedModule<K> + ?Sized>(m: &M) -> Option<(i32, i32)> {
    m.degree_range()
}

/// The matrix at internal degree `d` of `φ ⊗ N: F_1 ⊗ N -> F_0 ⊗ N`.
///
/// `(F ⊗ N)_d = ⊕_u N_{d - j_u}`, ordered by summand.
pub fn tensor_matrix<K: Field, M: GradedModule<K> + ?Sized>(
    phi: &GradedMatrix<K::Elem>,
    n: &M,
    d: i32,
) -> Matrix<K::Elem> {
    let ring = n.ring();
    let f = ring.field();
    let offsets = |tw: &[i32]| -> Vec<usize> {
        let mut off = vec![0];
        for &j in tw {
            off.push(off.last().unwrap() + n.dim(d - j));
        }
        off
    };
    let t_off = offsets(phi.target());
    let s_off = offsets(phi.source());
    let mut m = Matrix::zeros(f, *t_off.last().unwrap(), *s_off.last().unwrap());
    for (v, col) in phi.columns().iter().enumerate() {
        let dv = d - phi.source()[v];
        let width = s_off[v + 1] - s_off[v];
        for b in 0..width {
            let mut unit = vec![f.zero(); width];
            unit[b] = f.one();
            for (u, a) in col {
                let deg = phi.source()[v] - phi.target()[*u];
                let mut out = vec![f.zero(); t_off[u + 1] - t_off[*u]];
                for (k, c) in a.iter().enumerate() {
                    if !f.is_zero(c) {
                        n.mul_basis_acc(ring.global_index(deg, k), dv, &unit, c, &mut out);
                    }
                }
                for (i, x) in out.into_iter().enumerate() {
                    if !f.is_zero(&x) {
                        m.set(t_off[*u] + i, s_off[v] + b, x);
                    }
                }
            }
        }
    }
    m
}

/// The matrix at degree `d` of `Hom(φ, N): Hom(F_0, N) -> Hom(F_1, N)`.
///
/// `Hom(F, N)_d = ⊕_u N_{d + j_u}`; a map is recorded by the images of the basis vectors.
pub fn hom_matrix<K: Field, M: GradedModule<K> + ?Sized>(
    phi: &GradedMatrix<K::Elem>,
    n: &M,
    d: i32,
) -> Matrix<K::Elem> {
    let ring = n.ring();
    let f = ring.field();
    let offsets = |tw: &[i32]| -> Vec<usize> {
        let mut off = vec![0];
        for &j in tw {
            off.push(off.last().unwrap() + n.dim(d + j));
        }
        off
    };
    let src = offsets(phi.target());
    let dst = offsets(phi.source());
    let mut m = Matrix::zeros(f, *dst.last().unwrap(), *src.last().unwrap());
    for (v, col) in phi.columns().iter().enumerate() {
        for (u, a) in col {
            let deg = phi.source()[v] - phi.target()[*u];
            let from = d + phi.target()[*u];
            let width = src[u + 1] - src[*u];
            for b in 0..width {
                let mut unit = vec![f.zero(); width];
                unit[b] = f.one();
                let mut out = vec![f.zero(); dst[v + 1] - dst[v]];
                for (k, c) in a.iter().enumerate() {
                    if !f.is_zero(c) {
                        n.mul_basis_acc(ring.global_index(deg, k), from, &unit, c, &mut out);
                    }
                }
                for (i, x) in out.into_iter().enumerate() {
                    if !f.is_zero(&x) {
                        let cur = m.get(dst[v] + i, src[*u] + b).clone();
                        m.set(dst[v] + i, src[*u] + b, f.add(&cur, &x));
                    }
                }
            }
        }
    }
    m
}

fn module_total<K: Field, M: GradedModule<K> + ?Sized>(n: &M, twists: &[i32], d: i32, sign: i32) -> usize {
    twists.iter().map(|&j| n.dim(d + sign * j)).sum()
}

/// Degreewise homology of `X ⊗ N` at `i`.
pub fn tensor_homology<K: Field, M: GradedModule<K> + ?Sized>(x: &FreeComplex<K>, n: &M, i: i32) -> Vec<(i32, usize)> {
    let (Some((nlo, nhi)), Some(lo), Some(hi)) = (
        range_of(n),
        x.module(i).iter().min().copied(),
        x.module(i).iter().max().copied(),
    ) else {
        return Vec::new();
    };
    let f = n.ring().field();
    let out_map = x.differential(i);
    let in_map = x.differential(i + 1);
    let mut out = Vec::new();
    for d in lo + nlo..=hi + nhi {
        let total = module_total(n, x.module(i), d, -1);
        if total == 0 {
            continue;
        }
        let r_out = tensor_matrix(&out_map, n, d).rank(f);
        let r_in = tensor_matrix(&in_map, n, d).rank(f);
        let h = total - r_out - r_in;
        if h > 0 {
            out.push((d, h));
        }
    }
    out
}

/// Degreewise cohomology of `Hom(X, N)` at `i`: `ker Hom(d_{i+1}, N) / im Hom(d_i, N)`.
pub fn hom_cohomology<K: Field, M: GradedModule<K> + ?Sized>(x: &FreeComplex<K>, n: &M, i: i32) -> Vec<(i32, usize)> {
    let (Some((nlo, nhi)), Some(lo), Some(hi)) = (
        range_of(n),
        x.module(i).iter().min().copied(),
        x.module(i).iter().max().copied(),
    ) else {
        return Vec::new();
    };
    let f = n.ring().field();
    let into = x.differential(i);
    let outof = x.differential(i + 1);
    let mut out = Vec::new();
    for d in nlo - hi..=nhi - lo {
        let total = module_total(n, x.module(i), d, 1);
        if total == 0 {
            continue;
        }
        let r_out = hom_matrix(&outof, n, d).rank(f);
        let r_in = hom_matrix(&into, n, d).rank(f);
        let h = total - r_out - r_in;
        if h > 0 {
            out.push((d, h));
        }
    }
    out
}

/// Degreewise data of the cochain complex `Hom_R(X, N)`.
pub struct HomComplex<'a, K: Field, M: GradedModule<K> + ?Sized> {
    complex: &'a FreeComplex<K>,
    target: &'a M,
}

impl<'a, K: Field, M: GradedModule<K> + ?Sized> HomComplex<'a, K, M> {
    /// `dim_k Hom_R(X_i, N)_d`.
    pub fn dim(&self, i: i32, d: i32) -> usize {
        module_total(self.target, self.complex.module(i), d, 1)
    }

    /// `δ: Hom(X_{i-1}, N)_d -> Hom(X_i, N)_d`.
    pub fn coboundary(&self, i: i32, d: i32) -> Matrix<K::Elem> {
        hom_matrix(&self.complex.differential(i), self.target, d)
    }

    pub fn cohomology(&self, i: i32) -> Vec<(i32, usize)> {
        hom_cohomology(self.complex, self.target, i)
    }
}

pub fn hom_complex<'a, K: Field, M: GradedModule<K> + ?Sized>(x: &'a FreeComplex<K>, n: &'a M) -> HomComplex<'a, K, M> {
    HomComplex { complex: x, target: n }
}

/// `Tor_i(M, N)` for `i` in `[lo, hi]` from a minimal resolution of `M`.
pub fn tor<K: Field>(m: &PresentedModule<K>, n: &PresentedModule<K>, lo: i32, hi: i32) -> HomologyReport {
    let mut res = Resolution::new(m);
    tor_with(&mut res, &n.structure(), lo, hi, false)
}

/// Like [`tor`] on an existing resolution; with `stop_at_first` the scan ends at the first nonzero index.
pub fn tor_with<K: Field, M: GradedModule<K> + ?Sized>(
    res: &mut Resolution<K>,
    n: &M,
    lo: i32,
    hi: i32,
    stop_at_first: bool,
) -> HomologyReport {
    let mut report = HomologyReport::new("tor", (lo, hi));
    for i in lo.max(0)..=hi {
        let c = res.complex(i as usize + 1);
        let h = tensor_homology(&c, n, i);
        report.push(i, &h);
        if stop_at_first && !h.is_empty() {
            report.window = (lo, i);
            break;
        }
    }
    report
}

/// `Ext^i(M, N)` for `i` in `[lo, hi]` from a minimal resolution of `M`.
pub fn ext<K: Field, M: GradedModule<K> + ?Sized>(m: &PresentedModule<K>, n: &M, lo: i32, hi: i32) -> HomologyReport {
    let mut res = Resolution::new(m);
    ext_with(&mut res, n, lo, hi, false)
}

pub fn ext_with<K: Field, M: GradedModule<K> + ?Sized>(
    res: &mut Resolution<K>,
    n: &M,
    lo: i32,
    hi: i32,
    stop_at_first: bool,
) -> HomologyReport {
    let mut report = HomologyReport::new("ext", (lo, hi));
    for i in lo.max(0)..=hi {
        let c = res.complex(i as usize + 1);
        let h = hom_cohomology(&c, n, i);
        report.push(i, &h);
        if stop_at_first && !h.is_empty() {
            report.window = (lo, i);
            break;
        }
    }
    report
}

/// `Hom_R(M, N)` as a submodule of `⊕_u N(j_u)`, where `j_u` are the generator degrees of `M`.
pub fn hom_module<K: Field>(m: &PresentedModule<K>, n: &StructuredModule<K>) -> (StructuredModule<K>, GradedSubspace<K::Elem>) {
    let min = m.minimal_presentation();
    let ring: Arc<Ring<K>> = m.ring().clone();
    let f = ring.field();
    let mut ambient = StructuredModule::zero(ring.clone());
    for &j in min.targets() {
        ambient = ambient.direct_sum(&n.shift(j));
    }
    let Some((lo, hi)) = ambient.degree_range() else {
        return (ambient, GradedSubspace::new(0, Vec::new()));
    };
    let pieces = (lo..=hi)
        .map(|d| {
            let delta = hom_matrix(min.matrix(), n, d);
            debug_assert_eq!(delta.cols(), ambient.dim(d));
            Subspace::spanned_by(f, delta.cols(), &delta.kernel(f))
        })
        .collect();
    (ambient, GradedSubspace::new(lo, pieces))
}

/// `dim_k Hom_R(M, N)` and `μ(Hom_R(M, N))`.
pub fn hom_dim_and_mu<K: Field>(m: &PresentedModule<K>, n: &StructuredModule<K>) -> (usize, usize) {
    let (ambient, sub) = hom_module(m, n);
    let gens = minimal_generators(&ambient, &sub);
    (sub.total_dim(), gens.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::poly::Variables;

    fn ring(rels: &[&str]) -> Arc<Ring<PrimeField>> {
        Arc::new(Ring::parse(PrimeField::new(101).unwrap(), Variables::standard(&["x", "y"]), rels).unwrap())
    }

    #[test]
    fn tor_of_cyclic_quotient_over_e() {
        let e = ring(&["x^2", "y^2"]);
        let m = PresentedModule::cyclic(e, &["x"]).unwrap();
        let t = tor(&m, &m, 1, 4);
        for i in 1..=4 {
            assert_eq!(t.total(i), 2, "Tor_{i}");
        }
    }

    #[test]
    fn tor_one_of_residue_field() {
        let e = ring(&["x^2", "y^2"]);
        let k = PresentedModule::residue_field(e.clone());
        let t = tor(&k, &k, 0, 2);
        assert_eq!(t.total(0), 1);
        assert_eq!(t.total(1), 2);
        assert_eq!(t.get(1, 1), 2);
        assert_eq!(t.total(2), 3);
        let free = PresentedModule::free(e, &[0, 1]);
        assert!(tor(&free, &k, 1, 3).vanishes());
    }

    #[test]
    fn ext_into_free_and_from_free() {
        let e = ring(&["x^2", "y^2"]);
        let k = PresentedModule::residue_field(e.clone());
        let free = PresentedModule::free(e.clone(), &[0]);
        assert!(ext(&free, &k.structure(), 1, 3).vanishes());
        let ome = StructuredModule::canonical(e.clone()).unwrap();
        let r = StructuredModule::free(e.clone(), &[0]);
        let report = ext(&ome.presentation(), &r, 0, 3);
        assert_eq!(report.total(0), 4);
        assert_eq!(report.total(1) + report.total(2) + report.total(3), 0);
    }

    #[test]
    fn hom_from_residue_field_is_the_socle() {
        let e = ring(&["x^2", "y^2"]);
        let g = ring(&["x^2", "x*y", "y^2"]);
        for (r, socle) in [(e, 1), (g, 2)] {
            let k = PresentedModule::residue_field(r.clone());
            let (c, _) = crate::resolution::resolve(&k, 2);
            let rr = StructuredModule::free(r.clone(), &[0]);
            let h = hom_complex(&c, &rr);
            let h0: usize = h.cohomology(0).iter().map(|x| x.1).sum();
            assert_eq!(h0, socle);
            assert_eq!(r.socle_dim().unwrap(), socle);
        }
    }

    #[test]
    fn hom_into_module_from_unit_complex() {
        let e = ring(&["x^2", "y^2"]);
        let x = FreeComplex::concentrated(e.clone(), 0, vec![0]);
        let m = PresentedModule::cyclic(e, &["x"]).unwrap().structure();
        let h = hom_complex(&x, &m);
        assert_eq!(h.cohomology(0), vec![(0, 1), (1, 1)]);
    }

    #[test]
    fn endomorphisms() {
        let e = ring(&["x^2", "y^2"]);
        let r = StructuredModule::free(e.clone(), &[0]);
        let (dim, mu) = hom_dim_and_mu(&PresentedModule::free(e.clone(), &[0]), &r);
        assert_eq!((dim, mu), (4, 1));
        let k = PresentedModule::residue_field(e);
        let (dim, mu) = hom_dim_and_mu(&k, &k.structure());
        assert_eq!((dim, mu), (1, 1));
    }
}
