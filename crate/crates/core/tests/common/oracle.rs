//! Brute-force reference computations over F_101 that share no code with the library
//! beyond the polynomial parser.
//!
//! The quotient ring is built degree by degree from the Macaulay matrix of the relations, and
//! minimal resolutions are computed by plain kernel linear algebra in each internal degree.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use gradalg::io::{ModuleFile, RingFile};
use gradalg::poly::parse_polynomial;
use gradalg::PrimeField;

pub const P: u64 = 101;

fn inv(a: u64) -> u64 {
    let (mut base, mut e, mut acc) = (a % P, P - 2, 1);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % P;
        }
        base = base * base % P;
        e >>= 1;
    }
    acc
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<u64>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else {
            continue;
        };
        rows.swap(r, k);
        let s = inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = *x * s % P;
        }
        for k in 0..rows.len() {
            if k != r && rows[k][c] != 0 {
                let f = rows[k][c];
                let pivot = rows[r].clone();
                for (x, p) in rows[k].iter_mut().zip(&pivot) {
                    *x = (*x + P * P - f * p) % P;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(vectors: &[Vec<u64>]) -> usize {
    let mut rows = vectors.to_vec();
    rref(&mut rows).len()
}

/// Basis of `{c : Σ c_k cols[k] = 0}`.
pub fn kernel(cols: &[Vec<u64>], nrows: usize) -> Vec<Vec<u64>> {
    let n = cols.len();
    let mut rows: Vec<Vec<u64>> = (0..nrows).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    if nrows == 0 {
        return (0..n).map(|k| unit(n, k)).collect();
    }
    let pivots = rref(&mut rows);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = unit(n, f);
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (P - rows[r][f]) % P;
            }
            v
        })
        .collect()
}

fn unit(n: usize, k: usize) -> Vec<u64> {
    let mut v = vec![0; n];
    v[k] = 1;
    v
}

/// Vectors of `candidates` extending a basis of `span(base)`, chosen greedily.
pub fn complement(base: &[Vec<u64>], candidates: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let mut acc = base.to_vec();
    let mut r = rank(&acc);
    let mut out = Vec::new();
    for c in candidates {
        acc.push(c.clone());
        let r2 = rank(&acc);
        if r2 > r {
            r = r2;
            out.push(c.clone());
        } else {
            acc.pop();
        }
    }
    out
}

type Terms = Vec<(Vec<u16>, u64)>;

fn monomials(nvars: usize, d: usize) -> Vec<Vec<u16>> {
    if nvars == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for mut rest in monomials(nvars - 1, d - a) {
            rest.insert(0, a as u16);
            out.push(rest);
        }
    }
    out
}

/// `k[x_1..x_n] / I` in the standard grading, one degree at a time.
pub struct Quotient {
    nvars: usize,
    monos: Vec<Vec<Vec<u16>>>,
    index: Vec<HashMap<Vec<u16>, usize>>,
    echelon: Vec<(Vec<Vec<u64>>, Vec<usize>)>,
    standard: Vec<Vec<usize>>,
}

impl Quotient {
    pub fn new(nvars: usize, relations: &[Terms]) -> Self {
        let mut q = Quotient {
            nvars,
            monos: Vec::new(),
            index: Vec::new(),
            echelon: Vec::new(),
            standard: Vec::new(),
        };
        for d in 0.. {
            assert!(d < 40, "relations do not define an Artinian quotient");
            let monos = monomials(nvars, d);
            let index: HashMap<Vec<u16>, usize> = monos.iter().cloned().enumerate().map(|(k, m)| (m, k)).collect();
            let mut rows = Vec::new();
            for f in relations {
                let e: usize = f[0].0.iter().map(|&a| a as usize).sum();
                if e > d {
                    continue;
                }
                for m in monomials(nvars, d - e) {
                    let mut row = vec![0; monos.len()];
                    for (exps, c) in f {
                        let prod: Vec<u16> = exps.iter().zip(&m).map(|(a, b)| a + b).collect();
                        let k = index[&prod];
                        row[k] = (row[k] + c) % P;
                    }
                    rows.push(row);
                }
            }
            let pivots = rref(&mut rows);
            let standard: Vec<usize> = (0..monos.len()).filter(|c| !pivots.contains(c)).collect();
            let done = standard.is_empty();
            q.monos.push(monos);
            q.index.push(index);
            q.echelon.push((rows, pivots));
            q.standard.push(standard);
            if done {
                break;
            }
        }
        q
    }

    pub fn from_file(file: &RingFile) -> Self {
        let field = PrimeField::new(P).unwrap();
        let vars = file.variables().unwrap();
        assert!(vars.weights().iter().all(|&w| w == 1), "oracle handles the standard grading only");
        let rels: Vec<Terms> = file
            .relations
            .iter()
            .map(|s| terms(&parse_polynomial(&field, &vars, s).unwrap()))
            .filter(|t| !t.is_empty())
            .collect();
        Quotient::new(vars.len(), &rels)
    }

    /// First degree with `R_d = 0`, minus one.
    pub fn top(&self) -> i32 {
        self.standard.len() as i32 - 2
    }

    pub fn dim(&self, d: i32) -> usize {
        if d < 0 {
            return 0;
        }
        self.standard.get(d as usize).map_or(0, Vec::len)
    }

    /// Standard monomials of degree `d`.
    pub fn basis(&self, d: i32) -> Vec<Vec<u16>> {
        if d < 0 || d as usize >= self.standard.len() {
            return Vec::new();
        }
        self.standard[d as usize].iter().map(|&k| self.monos[d as usize][k].clone()).collect()
    }

    /// Coordinates in `R_d` of a polynomial with all terms of degree `d`.
    pub fn reduce(&self, d: i32, f: &[(Vec<u16>, u64)]) -> Vec<u64> {
        if d < 0 || d as usize >= self.standard.len() {
            return Vec::new();
        }
        let d = d as usize;
        let mut v = vec![0; self.monos[d].len()];
        for (m, c) in f {
            let k = self.index[d][m];
            v[k] = (v[k] + c) % P;
        }
        let (rows, pivots) = &self.echelon[d];
        for (row, &pc) in rows.iter().zip(pivots) {
            let f = v[pc];
            if f != 0 {
                for (x, r) in v.iter_mut().zip(row) {
                    *x = (*x + P * P - f * r) % P;
                }
            }
        }
        self.standard[d].iter().map(|&k| v[k]).collect()
    }

    fn lift(&self, d: i32, coords: &[u64]) -> Terms {
        self.basis(d).into_iter().zip(coords).filter(|(_, &c)| c != 0).map(|(m, &c)| (m, c)).collect()
    }

    /// `m · r` for a monomial `m` and `r ∈ R_d`.
    pub fn mul_monomial(&self, m: &[u16], d: i32, coords: &[u64]) -> Vec<u64> {
        let e: i32 = m.iter().map(|&a| a as i32).sum();
        let shifted: Terms = self
            .lift(d, coords)
            .into_iter()
            .map(|(x, c)| (x.iter().zip(m).map(|(a, b)| a + b).collect(), c))
            .collect();
        self.reduce(d + e, &shifted)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }
}

pub fn terms(f: &gradalg::poly::Polynomial<u64>) -> Terms {
    f.terms().iter().map(|(m, c)| (m.exponents().to_vec(), *c)).collect()
}

/// A free module `⊕ R(-t_u)` and vectors in it, laid out block by block.
struct Free<'a> {
    q: &'a Quotient,
    twists: Vec<i32>,
}

impl Free<'_> {
    fn offsets(&self, d: i32) -> Vec<usize> {
        let mut off = vec![0];
        for &t in &self.twists {
            off.push(off.last().unwrap() + self.q.dim(d - t));
        }
        off
    }

    fn dim(&self, d: i32) -> usize {
        *self.offsets(d).last().unwrap()
    }

    fn mul_monomial(&self, m: &[u16], d: i32, v: &[u64]) -> Vec<u64> {
        let e: i32 = m.iter().map(|&a| a as i32).sum();
        let off = self.offsets(d);
        let mut out = Vec::with_capacity(self.dim(d + e));
        for (u, &t) in self.twists.iter().enumerate() {
            let block = &v[off[u]..off[u + 1]];
            if self.q.dim(d + e - t) == 0 {
                continue;
            }
            if block.is_empty() {
                out.extend(vec![0; self.q.dim(d + e - t)]);
            } else {
                out.extend(self.q.mul_monomial(m, d - t, block));
            }
        }
        out
    }

    /// All vectors `m · e_u` over standard monomials `m`, a spanning set of degree `d`.
    fn unit_vectors(&self, d: i32) -> Vec<Vec<u64>> {
        let n = self.dim(d);
        (0..n).map(|k| unit(n, k)).collect()
    }

    fn variables(&self) -> Vec<Vec<u16>> {
        (0..self.q.nvars()).map(|i| unit(self.q.nvars(), i).iter().map(|&x| x as u16).collect()).collect()
    }
}

/// `β_{i,j}` of the module presented by `file` for `i <= n`.
pub fn betti_numbers(q: &Quotient, file: &ModuleFile, names: &RingFile, n: usize) -> BTreeMap<(i32, i32), usize> {
    let field = PrimeField::new(P).unwrap();
    let vars = names.variables().unwrap();
    let top = q.top();
    let f0 = Free {
        q,
        twists: file.targets.clone(),
    };
    // columns of the presentation as vectors of F_0
    let relation_vectors: Vec<(i32, Vec<u64>)> = file
        .sources
        .iter()
        .enumerate()
        .map(|(v, &s)| {
            let mut col = Vec::new();
            for (u, &t) in file.targets.iter().enumerate() {
                let f = parse_polynomial(&field, &vars, &file.entries[u][v]).unwrap();
                let block = q.reduce(s - t, &terms(&f));
                col.extend(block);
            }
            (s, col)
        })
        .collect();
    let image_basis = |d: i32| -> Vec<Vec<u64>> {
        let mut span = Vec::new();
        for (s, col) in &relation_vectors {
            for m in q.basis(d - s) {
                span.push(f0.mul_monomial(&m, *s, col));
            }
        }
        let mut rows = span;
        rref(&mut rows);
        rows
    };

    let mut betti = BTreeMap::new();
    let lo = f0.twists.iter().copied().min().unwrap_or(0);
    let hi = f0.twists.iter().copied().max().unwrap_or(0) + top;

    // minimal generators of M = F_0 / image
    let mut gens: Vec<(i32, Vec<u64>)> = Vec::new();
    for d in lo..=hi {
        let mut base = image_basis(d);
        for x in f0.variables() {
            for v in f0.unit_vectors(d - 1) {
                base.push(f0.mul_monomial(&x, d - 1, &v));
            }
        }
        for g in complement(&base, &f0.unit_vectors(d)) {
            gens.push((d, g));
        }
    }
    for (d, _) in &gens {
        *betti.entry((0, *d)).or_insert(0) += 1;
    }

    let mut target = Free {
        q,
        twists: f0.twists.clone(),
    };
    let mut first = true;
    for i in 1..=n {
        if gens.is_empty() {
            break;
        }
        let source = Free {
            q,
            twists: gens.iter().map(|(d, _)| *d).collect(),
        };
        let lo = source.twists.iter().copied().min().unwrap();
        let hi = source.twists.iter().copied().max().unwrap() + top;
        let mut kernels: BTreeMap<i32, Vec<Vec<u64>>> = BTreeMap::new();
        let mut next = Vec::new();
        for d in lo..=hi {
            // columns: images of the basis of source_d, then (first step only) the image of the presentation
            let mut cols = Vec::new();
            for (g, img) in &gens {
                for m in q.basis(d - g) {
                    cols.push(target.mul_monomial(&m, *g, img));
                }
            }
            let ns = cols.len();
            if first {
                cols.extend(image_basis(d));
            }
            let ker: Vec<Vec<u64>> = kernel(&cols, target.dim(d)).into_iter().map(|v| v[..ns].to_vec()).collect();
            let mut base = Vec::new();
            if let Some(prev) = kernels.get(&(d - 1)) {
                for x in source.variables() {
                    for v in prev {
                        base.push(source.mul_monomial(&x, d - 1, v));
                    }
                }
            }
            for g in complement(&base, &ker) {
                *betti.entry((i as i32, d)).or_insert(0) += 1;
                next.push((d, g));
            }
            kernels.insert(d, ker);
        }
        gens = next;
        target = source;
        first = false;
    }
    betti
}
