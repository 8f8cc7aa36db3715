//! Positively graded quotients `R = k[x_1..x_n] / I` of weighted polynomial rings.
//!
//! Arithmetic in `R` is normal form against a reduced Gröbner basis followed by
//! expansion in the standard-monomial basis of each degree. When `R` is
//! Artinian the whole basis and a multiplication table are built once.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{buchberger, GroebnerBasis};
use crate::linalg::{Matrix, Subspace};
use crate::poly::{parse_polynomial, Monomial, Polynomial, Variables};
use crate::series::{canonical_form, monomial_ideal_dimension, monomial_ideal_numerator, LaurentPoly, RationalSeries};

/// Homogeneous element of `R`: coefficients over the standard monomials of one degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingElem<E> {
    pub degree: i32,
    pub coeffs: Vec<E>,
}

impl<E> RingElem<E> {
    pub fn is_zero_with<K: Field<Elem = E>>(&self, field: &K) -> bool {
        self.coeffs.iter().all(|c| field.is_zero(c))
    }
}

#[derive(Debug, Clone)]
struct Artinian<E> {
    top: i32,
    basis: Vec<Vec<Monomial>>,
    offsets: Vec<usize>,
    degree_of: Vec<i32>,
    local: HashMap<Vec<u16>, usize>,
    /// `table[g][h]`: product of basis monomials `g` and `h`, sparse over the basis of the sum degree.
    table: Vec<Vec<Vec<(usize, E)>>>,
    /// Global indices of the variables that are standard monomials.
    variables: Vec<(usize, usize)>,
}

/// A positively graded, finitely presented commutative algebra over a field.
#[derive(Debug, Clone)]
pub struct Ring<K: Field> {
    field: K,
    vars: Variables,
    relations: Vec<Polynomial<K::Elem>>,
    gb: GroebnerBasis<K::Elem>,
    lead_ideal: Vec<Monomial>,
    krull_dim: usize,
    artinian: Option<Artinian<K::Elem>>,
}

impl<K: Field> Ring<K> {
    pub fn new(field: K, vars: Variables, relations: Vec<Polynomial<K::Elem>>) -> Result<Self> {
        for r in &relations {
            if r.is_zero() {
                continue;
            }
            match r.homogeneous_degree() {
                None => return Err(Error::NotHomogeneous(r.fmt_with(&field, &vars))),
                Some(0) => {
                    return Err(Error::Structural(format!(
                        "relation {} has degree 0",
                        r.fmt_with(&field, &vars)
                    )))
                }
                Some(_) => {}
            }
        }
        let gb = buchberger(&field, &vars, &relations)?;
        let lead_ideal = gb.lead_term_ideal();
        let krull_dim = monomial_ideal_dimension(vars.len(), &lead_ideal);
        let mut ring = Ring {
            field,
            vars,
            relations,
            gb,
            lead_ideal,
            krull_dim,
            artinian: None,
        };
        if ring.krull_dim == 0 {
            ring.artinian = Some(ring.build_artinian());
        }
        Ok(ring)
    }

    /// Parses relation strings in the given variables.
    pub fn parse(field: K, vars: Variables, relations: &[&str]) -> Result<Self> {
        let rels = relations
            .iter()
            .map(|s| parse_polynomial(&field, &vars, s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, vars, rels)
    }

    fn build_artinian(&self) -> Artinian<K::Elem> {
        let mut basis = Vec::new();
        let mut d = 0u32;
        let max_weight = self.vars.weights().iter().copied().max().unwrap_or(1);
        let mut empty_run = 0;
        loop {
            let b = self.standard_monomials(d);
            if b.is_empty() {
                empty_run += 1;
            } else {
                empty_run = 0;
            }
            basis.push(b);
            if empty_run >= max_weight {
                break;
            }
            d += 1;
        }
        while basis.last().is_some_and(|b| b.is_empty()) {
            basis.pop();
        }
        let top = basis.len() as i32 - 1;
        let mut offsets = Vec::with_capacity(basis.len() + 1);
        let mut degree_of = Vec::new();
        let mut local = HashMap::new();
        let mut acc = 0;
        for (deg, b) in basis.iter().enumerate() {
            offsets.push(acc);
            for (k, m) in b.iter().enumerate() {
                local.insert(m.exponents().to_vec(), k);
                degree_of.push(deg as i32);
            }
            acc += b.len();
        }
        offsets.push(acc);
        let all: Vec<&Monomial> = basis.iter().flatten().collect();
        let mut table = Vec::with_capacity(all.len());
        for a in &all {
            let mut row = Vec::with_capacity(all.len());
            for b in &all {
                let prod = a.mul(b);
                let deg = prod.degree() as i32;
                let mut entry = Vec::new();
                if deg <= top {
                    let nf = self
                        .gb
                        .normal_form(&self.field, &Polynomial::term(&self.field, self.field.one(), prod));
                    for (m, c) in nf.terms() {
                        entry.push((local[m.exponents()], c.clone()));
                    }
                    entry.sort_by_key(|(k, _)| *k);
                }
                row.push(entry);
            }
            table.push(row);
        }
        let variables = (0..self.vars.len())
            .filter_map(|i| {
                let v = self.vars.var(i);
                let d = v.degree() as usize;
                if d >= basis.len() {
                    return None;
                }
                basis[d].iter().position(|m| *m == v).map(|k| (i, offsets[d] + k))
            })
            .collect();
        Artinian {
            top,
            basis,
            offsets,
            degree_of,
            local,
            table,
            variables,
        }
    }

    fn standard_monomials(&self, d: u32) -> Vec<Monomial> {
        self.vars
            .monomials_of_degree(d)
            .into_iter()
            .filter(|m| !self.lead_ideal.iter().any(|l| l.divides(m)))
            .collect()
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn vars(&self) -> &Variables {
        &self.vars
    }

    pub fn relations(&self) -> &[Polynomial<K::Elem>] {
        &self.relations
    }

    pub fn groebner(&self) -> &GroebnerBasis<K::Elem> {
        &self.gb
    }

    pub fn lead_term_ideal(&self) -> &[Monomial] {
        &self.lead_ideal
    }

    pub fn krull_dim(&self) -> usize {
        self.krull_dim
    }

    pub fn is_artinian(&self) -> bool {
        self.artinian.is_some()
    }

    pub fn require_artinian(&self) -> Result<()> {
        if self.is_artinian() {
            Ok(())
        } else {
            Err(Error::NotArtinian)
        }
    }

    fn art(&self) -> &Artinian<K::Elem> {
        self.artinian
            .as_ref()
            .expect("Artinian ring required; callers validate with require_artinian")
    }

    /// Top degree `s`: `R_s != 0` and `R_d = 0` for `d > s`.
    pub fn top_degree(&self) -> Option<i32> {
        self.artinian.as_ref().map(|a| a.top)
    }

    /// Ordered basis of `R_d` (standard monomials, descending in degrevlex).
    pub fn basis(&self, d: i32) -> Vec<Monomial> {
        if d < 0 {
            return Vec::new();
        }
        match &self.artinian {
            Some(a) => a.basis.get(d as usize).cloned().unwrap_or_default(),
            None => self.standard_monomials(d as u32),
        }
    }

    pub fn dim(&self, d: i32) -> usize {
        if d < 0 {
            return 0;
        }
        match &self.artinian {
            Some(a) => a.basis.get(d as usize).map_or(0, |b| b.len()),
            None => self.standard_monomials(d as u32).len(),
        }
    }

    /// `l(R)`, for Artinian rings.
    pub fn length(&self) -> Option<usize> {
        self.artinian.as_ref().map(|a| a.degree_of.len())
    }

    /// `H_R(t) = Σ dim R_d t^d` of an Artinian ring.
    pub fn hilbert_polynomial(&self) -> Result<LaurentPoly> {
        let top = self.top_degree().ok_or(Error::NotArtinian)?;
        Ok(LaurentPoly::new(0, (0..=top).map(|d| self.dim(d) as i128).collect()))
    }

    /// Number of basis monomials over all degrees (Artinian only).
    pub fn basis_len(&self) -> usize {
        self.art().degree_of.len()
    }

    pub fn global_index(&self, d: i32, k: usize) -> usize {
        self.art().offsets[d as usize] + k
    }

    pub fn degree_of(&self, g: usize) -> i32 {
        self.art().degree_of[g]
    }

    /// Global basis indices of the variables that survive as standard monomials.
    /// They generate the maximal ideal.
    pub fn variable_generators(&self) -> &[(usize, usize)] {
        &self.art().variables
    }

    /// `out += c * (b_g * a)` where `a` lies in degree `da`.
    #[inline]
    pub fn mul_basis_acc(&self, g: usize, a: &[K::Elem], da: i32, c: &K::Elem, out: &mut [K::Elem]) {
        let art = self.art();
        let off = art.offsets[da as usize];
        let f = &self.field;
        for (k, x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            let s = f.mul(c, x);
            for (idx, v) in &art.table[g][off + k] {
                out[*idx] = f.add(&out[*idx], &f.mul(&s, v));
            }
        }
    }

    pub fn zero_elem(&self, d: i32) -> RingElem<K::Elem> {
        RingElem {
            degree: d,
            coeffs: vec![self.field.zero(); self.dim(d)],
        }
    }

    pub fn one_elem(&self) -> RingElem<K::Elem> {
        RingElem {
            degree: 0,
            coeffs: vec![self.field.one()],
        }
    }

    pub fn mul(&self, a: &RingElem<K::Elem>, b: &RingElem<K::Elem>) -> RingElem<K::Elem> {
        let d = a.degree + b.degree;
        let mut out = self.zero_elem(d);
        if out.coeffs.is_empty() {
            return out;
        }
        for (k, x) in b.coeffs.iter().enumerate() {
            if self.field.is_zero(x) {
                continue;
            }
            let g = self.global_index(b.degree, k);
            self.mul_basis_acc(g, &a.coeffs, a.degree, x, &mut out.coeffs);
        }
        out
    }

    pub fn normal_form(&self, f: &Polynomial<K::Elem>) -> Polynomial<K::Elem> {
        self.gb.normal_form(&self.field, f)
    }

    /// Expands a homogeneous polynomial of degree `d` in the basis of `R_d`.
    pub fn element(&self, f: &Polynomial<K::Elem>, d: i32) -> Result<RingElem<K::Elem>> {
        let nf = self.normal_form(f);
        let basis = self.basis(d);
        let mut coeffs = vec![self.field.zero(); basis.len()];
        for (m, c) in nf.terms() {
            if m.degree() as i32 != d {
                return Err(Error::NotHomogeneous(f.fmt_with(&self.field, &self.vars)));
            }
            let k = match &self.artinian {
                Some(a) => a.local[m.exponents()],
                None => basis.iter().position(|b| b == m).expect("normal form is standard"),
            };
            coeffs[k] = c.clone();
        }
        Ok(RingElem { degree: d, coeffs })
    }

    pub fn parse_element(&self, s: &str, d: i32) -> Result<RingElem<K::Elem>> {
        self.element(&parse_polynomial(&self.field, &self.vars, s)?, d)
    }

    pub fn polynomial(&self, e: &RingElem<K::Elem>) -> Polynomial<K::Elem> {
        let basis = self.basis(e.degree);
        let terms = basis
            .into_iter()
            .zip(&e.coeffs)
            .filter(|(_, c)| !self.field.is_zero(c))
            .map(|(m, c)| (m, c.clone()))
            .collect();
        Polynomial::from_terms(&self.field, self.vars.len(), terms)
    }

    pub fn format_elem(&self, e: &RingElem<K::Elem>) -> String {
        self.polynomial(e).fmt_with(&self.field, &self.vars)
    }

    /// Matrix of multiplication by the basis monomial `g` from `R_d` to `R_{d + deg g}`.
    pub fn mul_matrix(&self, g: usize, d: i32) -> Matrix<K::Elem> {
        let e = d + self.degree_of(g);
        let (rows, cols) = (self.dim(e), self.dim(d));
        let mut m = Matrix::zeros(&self.field, rows, cols);
        let one = self.field.one();
        for k in 0..cols {
            let mut unit = vec![self.field.zero(); cols];
            unit[k] = one.clone();
            let mut out = vec![self.field.zero(); rows];
            self.mul_basis_acc(g, &unit, d, &one, &mut out);
            for (i, x) in out.into_iter().enumerate() {
                m.set(i, k, x);
            }
        }
        m
    }

    /// Hilbert series in reduced rational form, expanded up to `cutoff`.
    pub fn hilbert_series(&self, cutoff: i32) -> RationalSeries {
        let numerator = monomial_ideal_numerator(&self.vars, &self.lead_ideal);
        let (eps, den) = canonical_form(&numerator, self.vars.weights(), self.krull_dim);
        RationalSeries::new(eps, den, cutoff)
    }

    /// `dim_k(m / m^2)`: the minimal number of generators of the maximal ideal.
    pub fn embedding_dim(&self) -> usize {
        let max_w = self.vars.weights().iter().copied().max().unwrap_or(0) as i32;
        let mut total = 0;
        for d in 1..=max_w {
            let basis = self.basis(d);
            if basis.is_empty() {
                continue;
            }
            let mut sq = Subspace::new(basis.len());
            for a in 1..d {
                for u in self.basis(a) {
                    for v in self.basis(d - a) {
                        let nf = self.normal_form(&Polynomial::term(&self.field, self.field.one(), u.mul(&v)));
                        let mut vec = vec![self.field.zero(); basis.len()];
                        for (m, c) in nf.terms() {
                            let k = basis.iter().position(|b| b == m).expect("standard");
                            vec[k] = c.clone();
                        }
                        sq.insert(&self.field, &vec);
                    }
                }
            }
            total += basis.len() - sq.dim();
        }
        total
    }

    /// `codim R = mu(m) - dim R`.
    pub fn embedding_codim(&self) -> i64 {
        self.embedding_dim() as i64 - self.krull_dim as i64
    }

    /// Per-degree bases of `Soc(R) = (0 : m)`.
    #[allow(clippy::type_complexity)]
    pub fn socle(&self) -> Result<Vec<(i32, Vec<Vec<K::Elem>>)>> {
        self.require_artinian()?;
        let top = self.top_degree().unwrap();
        let mut out = Vec::new();
        for d in 0..=top {
            let n = self.dim(d);
            let mut blocks = Vec::new();
            for &(_, g) in self.variable_generators() {
                blocks.push(self.mul_matrix(g, d));
            }
            let rows: usize = blocks.iter().map(|b| b.rows()).sum();
            let mut stacked = Matrix::zeros(&self.field, rows, n);
            let mut r0 = 0;
            for b in &blocks {
                for i in 0..b.rows() {
                    for j in 0..n {
                        stacked.set(r0 + i, j, b.get(i, j).clone());
                    }
                }
                r0 += b.rows();
            }
            let ker = stacked.kernel(&self.field);
            if !ker.is_empty() {
                out.push((d, ker));
            }
        }
        Ok(out)
    }

    /// Type `r(R) = dim_k Soc(R)`.
    pub fn socle_dim(&self) -> Result<usize> {
        Ok(self.socle()?.iter().map(|(_, b)| b.len()).sum())
    }

    /// Artinian and of type 1.
    pub fn is_gorenstein(&self) -> bool {
        self.socle_dim().is_ok_and(|r| r == 1)
    }

    /// `R_d = 0` for all `d >= 3` (standard grading: `m^3 = 0`).
    pub fn cube_of_max_ideal_vanishes(&self) -> bool {
        self.vars.weights().iter().all(|&w| w == 1) && (3..6).all(|d| self.dim(d) == 0)
    }
}
