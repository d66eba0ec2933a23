use alloc::vec::Vec;

use crate::scalars::Field;

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<E> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<E> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
}

pub fn zeros<F: Field>(f: &F, rows: usize, cols: usize) -> Matrix<F::Elem> {
    Matrix {
        rows,
        cols,
        data: alloc::vec![f.zero(); rows * cols],
    }
}

pub fn identity<F: Field>(f: &F, n: usize) -> Matrix<F::Elem> {
    let mut m = zeros(f, n, n);
    for i in 0..n {
        m.set(i, i, f.one());
    }
    m
}

pub fn from_columns<F: Field>(f: &F, rows: usize, cols: &[Vec<F::Elem>]) -> Matrix<F::Elem> {
    let mut m = zeros(f, rows, cols.len());
    for (c, col) in cols.iter().enumerate() {
        for (r, v) in col.iter().enumerate() {
            m.set(r, c, v.clone());
        }
    }
    m
}

pub fn mul<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!(a.cols, b.rows, "shape mismatch");
    let mut out = zeros(f, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = a.get(i, k);
            if f.is_zero(x) {
                continue;
            }
            let brow = b.row(k);
            let orow = &mut out.data[i * b.cols..(i + 1) * b.cols];
            for (o, y) in orow.iter_mut().zip(brow) {
                if !f.is_zero(y) {
                    *o = f.add(o, &f.mul(x, y));
                }
            }
        }
    }
    out
}

pub fn add<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols), "shape mismatch");
    Matrix {
        rows: a.rows,
        cols: a.cols,
        data: a.data.iter().zip(&b.data).map(|(x, y)| f.add(x, y)).collect(),
    }
}

pub fn sub<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols), "shape mismatch");
    Matrix {
        rows: a.rows,
        cols: a.cols,
        data: a.data.iter().zip(&b.data).map(|(x, y)| f.sub(x, y)).collect(),
    }
}

pub fn scale<F: Field>(f: &F, a: &Matrix<F::Elem>, c: &F::Elem) -> Matrix<F::Elem> {
    Matrix {
        rows: a.rows,
        cols: a.cols,
        data: a.data.iter().map(|x| f.mul(x, c)).collect(),
    }
}

pub fn mul_vec<F: Field>(f: &F, a: &Matrix<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    assert_eq!(a.cols, v.len(), "shape mismatch");
    (0..a.rows)
        .map(|r| {
            let mut acc = f.zero();
            for (x, y) in a.row(r).iter().zip(v) {
                if !f.is_zero(x) && !f.is_zero(y) {
                    acc = f.add(&acc, &f.mul(x, y));
                }
            }
            acc
        })
        .collect()
}

pub fn is_zero<F: Field>(f: &F, a: &Matrix<F::Elem>) -> bool {
    a.data.iter().all(|x| f.is_zero(x))
}

/// Row echelon form in place; returns pivot columns.
fn echelonize<F: Field>(f: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(p) = (row..m.rows).find(|&r| !f.is_zero(m.get(r, col))) else {
            continue;
        };
        if p != row {
            for c in 0..m.cols {
                m.data.swap(p * m.cols + c, row * m.cols + c);
            }
        }
        let inv = f.inv(m.get(row, col)).expect("pivot is nonzero");
        for c in 0..m.cols {
            let v = f.mul(m.get(row, c), &inv);
            m.set(row, c, v);
        }
        for r in 0..m.rows {
            if r == row {
                continue;
            }
            let factor = m.get(r, col).clone();
            if f.is_zero(&factor) {
                continue;
            }
            for c in 0..m.cols {
                let v = f.sub(m.get(r, c), &f.mul(&factor, m.get(row, c)));
                m.set(r, c, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank<F: Field>(f: &F, a: &Matrix<F::Elem>) -> usize {
    let mut m = a.clone();
    echelonize(f, &mut m).len()
}

/// Inverse of a square matrix, if it exists.
pub fn inverse<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    assert_eq!(a.rows, a.cols, "square matrix expected");
    let n = a.rows;
    let mut aug = zeros(f, n, 2 * n);
    for r in 0..n {
        for c in 0..n {
            aug.set(r, c, a.get(r, c).clone());
        }
        aug.set(r, n + r, f.one());
    }
    let pivots = echelonize(f, &mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    let mut out = zeros(f, n, n);
    for r in 0..n {
        for c in 0..n {
            out.set(r, c, aug.get(r, n + c).clone());
        }
    }
    Some(out)
}

/// Incrementally maintained reduced row space.
#[derive(Clone, Debug)]
pub struct Echelon<E> {
    rows: Vec<(usize, Vec<E>)>,
}

impl<E: Clone> Default for Echelon<E> {
    fn default() -> Self {
        Echelon { rows: Vec::new() }
    }
}

impl<E: Clone> Echelon<E> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the stored rows.
    pub fn reduce<F: Field<Elem = E>>(&self, f: &F, mut v: Vec<E>) -> Vec<E> {
        for (piv, row) in &self.rows {
            let c = v[*piv].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (x, y) in v.iter_mut().zip(row) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
        }
        v
    }

    pub fn contains<F: Field<Elem = E>>(&self, f: &F, v: Vec<E>) -> bool {
        self.reduce(f, v).iter().all(|x| f.is_zero(x))
    }

    /// Add `v`; returns false when it was already in the span.
    pub fn insert<F: Field<Elem = E>>(&mut self, f: &F, v: Vec<E>) -> bool {
        let v = self.reduce(f, v);
        let Some(piv) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&v[piv]).expect("nonzero");
        let v: Vec<E> = v.iter().map(|x| f.mul(x, &inv)).collect();
        for (_, row) in &mut self.rows {
            let c = row[piv].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (x, y) in row.iter_mut().zip(&v) {
                *x = f.sub(x, &f.mul(&c, y));
            }
        }
        self.rows.push((piv, v));
        true
    }

    pub fn basis(&self) -> Vec<Vec<E>> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }
}
