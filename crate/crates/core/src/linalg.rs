//! Dense integer matrices, Smith normal form, and linear algebra mod p.

use std::fmt::Debug;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Integer types the exact routines run over.
pub trait Scalar: Integer + Signed + Clone + Debug + FromPrimitive + ToPrimitive + Send + Sync {}
impl<T: Integer + Signed + Clone + Debug + FromPrimitive + ToPrimitive + Send + Sync> Scalar for T {}

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<T>], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r.iter().cloned());
        }
        Matrix { rows: rows.len(), cols, data }
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(columns: &[Vec<T>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Matrix { rows, cols, data: entries.iter().map(|&e| T::from_i64(e).expect("fits")).collect() }
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
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::<T>::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
            .collect()
    }

    /// Horizontal concatenation.
    pub fn hcat(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.rows, other.rows);
        let mut out = Matrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn is_zero_mod(&self, m: &T) -> bool {
        self.data.iter().all(|v| v.mod_floor(m).is_zero())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &T) {
        for j in 0..self.cols {
            let v = self.get(src, j).clone() * k.clone();
            let idx = dst * self.cols + j;
            self.data[idx] = self.data[idx].clone() + v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &T) {
        for i in 0..self.rows {
            let v = self.get(i, src).clone() * k.clone();
            let idx = i * self.cols + dst;
            self.data[idx] = self.data[idx].clone() + v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let idx = i * self.cols + j;
            self.data[idx] = -self.data[idx].clone();
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let idx = i * self.cols + j;
            self.data[idx] = -self.data[idx].clone();
        }
    }
}

/// `u * a * v = d` with `d` diagonal, each diagonal entry dividing the next.
#[derive(Debug, Clone)]
pub struct Smith<T> {
    pub u: Matrix<T>,
    pub u_inv: Matrix<T>,
    pub v: Matrix<T>,
    /// The nonzero diagonal, positive, in divisibility order.
    pub diagonal: Vec<T>,
}

impl<T: Scalar> Smith<T> {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}

/// Row operations are mirrored on `u` (left) and `u_inv` (right, inverted);
/// column operations on `v`.
struct Reducer<T> {
    d: Matrix<T>,
    u: Matrix<T>,
    u_inv: Matrix<T>,
    v: Matrix<T>,
}

impl<T: Scalar> Reducer<T> {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
    }

    fn add_row(&mut self, dst: usize, src: usize, k: &T) {
        self.d.add_row(dst, src, k);
        self.u.add_row(dst, src, k);
        self.u_inv.add_col(src, dst, &-k.clone());
    }

    fn add_col(&mut self, dst: usize, src: usize, k: &T) {
        self.d.add_col(dst, src, k);
        self.v.add_col(dst, src, k);
    }

    fn negate_row(&mut self, i: usize) {
        self.d.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }
}

pub fn smith_normal_form<T: Scalar>(a: &Matrix<T>) -> Smith<T> {
    let (r, c) = (a.rows, a.cols);
    let mut st = Reducer { d: a.clone(), u: Matrix::identity(r), u_inv: Matrix::identity(r), v: Matrix::identity(c) };
    let mut diagonal = Vec::new();
    for t in 0..r.min(c) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    let x = st.d.get(i, j);
                    if !x.is_zero() && best.map_or(true, |(bi, bj)| x.abs() < st.d.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(st, diagonal);
            };
            st.swap_rows(t, pi);
            st.swap_cols(t, pj);
            let pivot = st.d.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..r {
                let x = st.d.get(i, t).clone();
                if !x.is_zero() {
                    let q = x.div_floor(&pivot);
                    st.add_row(i, t, &-q);
                    clean &= st.d.get(i, t).is_zero();
                }
            }
            for j in t + 1..c {
                let x = st.d.get(t, j).clone();
                if !x.is_zero() {
                    let q = x.div_floor(&pivot);
                    st.add_col(j, t, &-q);
                    clean &= st.d.get(t, j).is_zero();
                }
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..r).find(|&i| (t + 1..c).any(|j| !st.d.get(i, j).mod_floor(&pivot).is_zero()));
            match offender {
                Some(i) => st.add_row(t, i, &T::one()),
                None => break,
            }
        }
        if st.d.get(t, t).is_negative() {
            st.negate_row(t);
        }
        diagonal.push(st.d.get(t, t).clone());
    }
    finish(st, diagonal)
}

fn finish<T: Scalar>(st: Reducer<T>, diagonal: Vec<T>) -> Smith<T> {
    Smith { u: st.u, u_inv: st.u_inv, v: st.v, diagonal }
}

/// A basis of the integer kernel `{v : a v = 0}`, as columns.
pub fn integer_kernel<T: Scalar>(a: &Matrix<T>) -> Matrix<T> {
    let s = smith_normal_form(a);
    let k = s.rank();
    let cols: Vec<Vec<T>> = (k..a.cols).map(|j| s.v.column(j)).collect();
    Matrix::from_columns(&cols, a.cols)
}

fn inv_mod(a: i64, p: i64) -> i64 {
    let e = a.rem_euclid(p).extended_gcd(&p);
    assert!(e.gcd == 1, "{a} is not invertible mod {p}");
    e.x.rem_euclid(p)
}

/// Reduced row echelon form mod a prime; returns pivot columns.
fn rref_mod_p(rows: &mut [Vec<i64>], p: i64) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c].rem_euclid(p) != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = inv_mod(rows[r][c], p);
        for v in rows[r].iter_mut() {
            *v = (*v * inv).rem_euclid(p);
        }
        for i in 0..rows.len() {
            if i != r {
                let k = rows[i][c].rem_euclid(p);
                if k != 0 {
                    for j in 0..cols {
                        rows[i][j] = (rows[i][j] - k * rows[r][j]).rem_euclid(p);
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

pub fn rank_mod_p(rows: &[Vec<i64>], p: i64) -> usize {
    let mut m = rows.to_vec();
    rref_mod_p(&mut m, p).len()
}

/// Kernel basis mod a prime, one vector per free column.
pub fn kernel_mod_p(rows: &[Vec<i64>], cols: usize, p: i64) -> Vec<Vec<i64>> {
    let mut m = rows.to_vec();
    let pivots = rref_mod_p(&mut m, p);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0; cols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (-m[r][free]).rem_euclid(p);
            }
            v
        })
        .collect()
}
