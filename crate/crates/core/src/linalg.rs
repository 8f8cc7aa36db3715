//! Dense exact linear algebra over a [`Field`].

use crate::field::Field;

/// Row-major dense matrix. The field is passed to each operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn zeros<K: Field<Elem = E>>(field: &K, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity<K: Field<Elem = E>>(field: &K, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<E>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data }
    }

    /// Builds a matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns<K: Field<Elem = E>>(field: &K, rows: usize, columns: &[Vec<E>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            debug_assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: E) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn is_zero<K: Field<Elem = E>>(&self, field: &K) -> bool {
        self.data.iter().all(|x| field.is_zero(x))
    }

    pub fn mul<K: Field<Elem = E>>(&self, field: &K, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix shapes do not compose");
        let mut out = Self::zeros(field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if field.is_zero(a) {
                    continue;
                }
                let a = field.neg(a);
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !field.is_zero(b) {
                        let idx = i * out.cols + j;
                        out.data[idx] = field.sub_mul(&out.data[idx], &a, b);
                    }
                }
            }
        }
        out
    }

    pub fn apply<K: Field<Elem = E>>(&self, field: &K, v: &[E]) -> Vec<E> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![field.zero(); self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            for (j, x) in v.iter().enumerate() {
                if !field.is_zero(x) {
                    *o = field.add(o, &field.mul(self.get(i, j), x));
                }
            }
        }
        out
    }

    pub fn scale<K: Field<Elem = E>>(&self, field: &K, c: &E) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| field.mul(c, x)).collect(),
        }
    }

    pub fn add<K: Field<Elem = E>>(&self, field: &K, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| field.add(a, b))
                .collect(),
        }
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref<K: Field<Elem = E>>(&mut self, field: &K) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !field.is_zero(self.get(i, c))) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = field.inv(self.get(r, c));
            for j in c..self.cols {
                let idx = r * self.cols + j;
                self.data[idx] = field.mul(&self.data[idx], &inv);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c).clone();
                if field.is_zero(&factor) {
                    continue;
                }
                for j in c..self.cols {
                    let pivot_val = &self.data[r * self.cols + j];
                    if field.is_zero(pivot_val) {
                        continue;
                    }
                    let v = field.sub_mul(&self.data[i * self.cols + j], &factor, pivot_val);
                    self.data[i * self.cols + j] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank<K: Field<Elem = E>>(&self, field: &K) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        // eliminate along the shorter side
        if self.rows > self.cols {
            self.transpose().rref(field).len()
        } else {
            self.clone().rref(field).len()
        }
    }

    /// Basis of the right null space, one vector per free column, in column order.
    pub fn kernel<K: Field<Elem = E>>(&self, field: &K) -> Vec<Vec<E>> {
        let mut m = self.clone();
        let pivots = m.rref(field);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![field.zero(); self.cols];
            v[free] = field.one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = field.neg(m.get(r, free));
            }
            basis.push(v);
        }
        basis
    }
}

/// A subspace of `K^n` kept as a fully reduced echelon basis.
///
/// Every stored row has a leading 1 at its pivot and zeros at the pivots of
/// all other rows, so membership and reduction are single passes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace<E> {
    ambient: usize,
    rows: Vec<Vec<E>>,
    pivots: Vec<usize>,
}

impl<E: Clone> Subspace<E> {
    pub fn new(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn spanned_by<K: Field<Elem = E>>(field: &K, ambient: usize, vectors: &[Vec<E>]) -> Self {
        if vectors.is_empty() {
            return Self::new(ambient);
        }
        let mut m = Matrix::from_rows(
            vectors.len(),
            ambient,
            vectors.iter().flat_map(|v| v.iter().cloned()).collect(),
        );
        let pivots = m.rref(field);
        let rows = (0..pivots.len()).map(|i| m.row(i).to_vec()).collect();
        let mut s = Subspace {
            ambient,
            rows,
            pivots,
        };
        s.sort();
        s
    }

    /// The whole space `K^n` with the standard basis.
    pub fn full<K: Field<Elem = E>>(field: &K, ambient: usize) -> Self {
        let rows = (0..ambient)
            .map(|i| {
                let mut v = vec![field.zero(); ambient];
                v[i] = field.one();
                v
            })
            .collect();
        Subspace {
            ambient,
            rows,
            pivots: (0..ambient).collect(),
        }
    }

    fn sort(&mut self) {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        self.rows = order.iter().map(|&i| self.rows[i].clone()).collect();
        self.pivots = order.iter().map(|&i| self.pivots[i]).collect();
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<E>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the basis in place; the result is zero iff `v` was in the span.
    pub fn reduce<K: Field<Elem = E>>(&self, field: &K, v: &mut [E]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p].clone();
            if field.is_zero(&c) {
                continue;
            }
            for (x, r) in v.iter_mut().zip(row) {
                if !field.is_zero(r) {
                    *x = field.sub_mul(x, &c, r);
                }
            }
        }
    }

    pub fn contains<K: Field<Elem = E>>(&self, field: &K, v: &[E]) -> bool {
        let mut w = v.to_vec();
        self.reduce(field, &mut w);
        w.iter().all(|x| field.is_zero(x))
    }

    /// Adds `v` to the span. Returns `true` when the dimension grew.
    pub fn insert<K: Field<Elem = E>>(&mut self, field: &K, v: &[E]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let mut w = v.to_vec();
        self.reduce(field, &mut w);
        let Some(p) = w.iter().position(|x| !field.is_zero(x)) else {
            return false;
        };
        let inv = field.inv(&w[p]);
        for x in w.iter_mut() {
            *x = field.mul(x, &inv);
        }
        for row in self.rows.iter_mut() {
            let c = row[p].clone();
            if field.is_zero(&c) {
                continue;
            }
            for (x, y) in row.iter_mut().zip(&w) {
                if !field.is_zero(y) {
                    *x = field.sub_mul(x, &c, y);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, w);
        self.pivots.insert(at, p);
        true
    }

    /// Coordinates outside the pivot set: a basis of the quotient `K^n / self`.
    pub fn complement_coordinates(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&i| !is_pivot[i]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn f7() -> PrimeField {
        PrimeField::new(7).unwrap()
    }

    #[test]
    fn kernel_of_rank_one() {
        let f = f7();
        let m = Matrix::from_rows(2, 3, vec![1, 2, 3, 2, 4, 6]);
        assert_eq!(m.rank(&f), 1);
        let k = m.kernel(&f);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.apply(&f, v).iter().all(|x| *x == 0));
        }
    }

    #[test]
    fn subspace_insert_and_reduce() {
        let f = f7();
        let mut s = Subspace::new(3);
        assert!(s.insert(&f, &[0, 1, 1]));
        assert!(s.insert(&f, &[1, 1, 0]));
        assert!(!s.insert(&f, &[1, 2, 1]));
        assert_eq!(s.dim(), 2);
        assert_eq!(s.complement_coordinates(), vec![2]);
        assert!(s.contains(&f, &[2, 3, 1]));
        assert!(!s.contains(&f, &[0, 0, 1]));
    }

    #[test]
    fn rational_rank() {
        let q = Rationals;
        let e = |n| q.from_i64(n);
        let m = Matrix::from_rows(3, 3, vec![e(1), e(2), e(3), e(4), e(5), e(6), e(7), e(8), e(9)]);
        assert_eq!(m.rank(&q), 2);
    }

    #[test]
    fn spanned_matches_incremental() {
        let f = f7();
        let vs = vec![vec![1, 2, 0, 3], vec![2, 4, 1, 6], vec![0, 0, 1, 0]];
        let a = Subspace::spanned_by(&f, 4, &vs);
        let mut b = Subspace::new(4);
        for v in &vs {
            b.insert(&f, v);
        }
        assert_eq!(a, b);
    }
}
