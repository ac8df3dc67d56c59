//! Dense exact matrices and parity bookkeeping.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::{Rational, Scalar};

/// Row-major dense matrix over an exact field.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat<F: Scalar = Rational> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<F>,
}

impl<F: Scalar> Mat<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Mat { rows: r, cols: c, data }
    }

    /// Builds a matrix from a flat row-major coordinate vector.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<F>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Mat { rows, cols, data }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn add_at(&mut self, r: usize, c: usize, v: F) {
        let i = r * self.cols + c;
        self.data[i] += v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn conj(&self) -> Self {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.conj()).collect() }
    }

    pub fn scale(&self, s: &F) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.clone() * s.clone()).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let mut out = Mat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.add_at(i, j, a.clone() * b.clone());
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut s = F::zero();
                for (k, x) in v.iter().enumerate() {
                    let a = self.get(i, k);
                    if !a.is_zero() && !x.is_zero() {
                        s += a.clone() * x.clone();
                    }
                }
                s
            })
            .collect()
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn from_columns(rows: usize, cols: &[Vec<F>]) -> Self {
        Mat::from_fn(rows, cols.len(), |r, c| cols[c][r].clone())
    }

    pub fn submatrix(&self, rs: &[usize], cs: &[usize]) -> Self {
        Mat::from_fn(rs.len(), cs.len(), |r, c| self.get(rs[r], cs[c]).clone())
    }

    pub fn block_diag(blocks: &[Self]) -> Self {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zeros(r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Places `b` with its top-left corner at (r0, c0).
    pub fn put(&mut self, r0: usize, c0: usize, b: &Self) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Mat::from_fn(rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G) -> Mat<G> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Exact inverse via Gauss–Jordan.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Mat::<F>::identity(n);
        for col in 0..n {
            let piv = (col..n).find(|&r| !a.get(r, col).is_zero()).ok_or(Error::NotInvertible)?;
            if piv != col {
                for j in 0..n {
                    a.data.swap(piv * n + j, col * n + j);
                    inv.data.swap(piv * n + j, col * n + j);
                }
            }
            let p = a.get(col, col).inv().expect("nonzero pivot");
            for j in 0..n {
                let x = a.get(col, j).clone() * p.clone();
                a.set(col, j, x);
                let y = inv.get(col, j).clone() * p.clone();
                inv.set(col, j, y);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let x = a.get(col, j).clone();
                    if !x.is_zero() {
                        a.add_at(r, j, -(f.clone() * x));
                    }
                    let y = inv.get(col, j).clone();
                    if !y.is_zero() {
                        inv.add_at(r, j, -(f.clone() * y));
                    }
                }
            }
        }
        Ok(inv)
    }

    pub fn rank(&self) -> usize {
        crate::linsolve::rank(&self.row_vecs(), self.cols)
    }

    pub fn row_vecs(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|r| self.data[r * self.cols..(r + 1) * self.cols].to_vec()).collect()
    }

    pub fn trace(&self) -> F {
        let mut s = F::zero();
        for i in 0..self.rows.min(self.cols) {
            s += self.get(i, i).clone();
        }
        s
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|r| (0..self.cols).map(|c| self.get(r, c).to_string()).collect()).collect()
    }
}

impl Mat<Rational> {
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| Rational::int(x)).collect()).collect())
    }
}

impl<F: Scalar> fmt::Display for Mat<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Parity of a basis vector or homogeneous element.
pub type Parity = u8;

/// Basis parity vector of a Z/2-graded space over Q (standing in for R) or
/// Q(i) (standing in for C).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SuperSpace {
    pub parities: Vec<Parity>,
    pub field: FieldTag,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
pub enum FieldTag {
    R,
    C,
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::R => write!(f, "R"),
            FieldTag::C => write!(f, "C"),
        }
    }
}

impl SuperSpace {
    pub fn new(parities: Vec<Parity>, field: FieldTag) -> Self {
        SuperSpace { parities, field }
    }

    /// (n|m): n even vectors first, then m odd ones.
    pub fn standard(n: usize, m: usize, field: FieldTag) -> Self {
        let mut p = vec![0; n];
        p.extend(vec![1; m]);
        SuperSpace { parities: p, field }
    }

    pub fn dim(&self) -> usize {
        self.parities.len()
    }

    pub fn graded_dim(&self) -> (usize, usize) {
        graded_dim(&self.parities)
    }
}

pub fn graded_dim(p: &[Parity]) -> (usize, usize) {
    let odd = p.iter().filter(|&&x| x == 1).count();
    (p.len() - odd, odd)
}

/// Returns the parity of `m` as a map between spaces with the given basis
/// parities, or `None` if it is inhomogeneous. The zero matrix reports `Some(0)`.
pub fn matrix_parity<F: Scalar>(m: &Mat<F>, row_par: &[Parity], col_par: &[Parity]) -> Option<Parity> {
    let mut found: Option<Parity> = None;
    for r in 0..m.rows {
        for c in 0..m.cols {
            if !m.get(r, c).is_zero() {
                let p = (row_par[r] + col_par[c]) % 2;
                match found {
                    None => found = Some(p),
                    Some(q) if q != p => return None,
                    _ => {}
                }
            }
        }
    }
    Some(found.unwrap_or(0))
}

#[inline]
pub fn sign(exp: u32) -> i64 {
    if exp.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Supercommutator [X,Y] = XY − (−1)^{|X||Y|} YX for homogeneous X, Y.
pub fn superbracket<F: Scalar>(x: &Mat<F>, px: Parity, y: &Mat<F>, py: Parity) -> Mat<F> {
    let xy = x.mul(y);
    let yx = y.mul(x);
    if px & py == 1 {
        xy.add(&yx)
    } else {
        xy.sub(&yx)
    }
}

/// Checked supercommutator on endomorphisms of a graded space.
pub fn superbracket_checked<F: Scalar>(x: &Mat<F>, y: &Mat<F>, parities: &[Parity]) -> Result<Mat<F>> {
    let px = matrix_parity(x, parities, parities)
        .ok_or_else(|| Error::Inhomogeneous("left argument of superbracket".into()))?;
    let py = matrix_parity(y, parities, parities)
        .ok_or_else(|| Error::Inhomogeneous("right argument of superbracket".into()))?;
    Ok(superbracket(x, px, y, py))
}

/// J = (0 Id; −Id 0) of size 2e.
pub fn j_matrix(two_e: usize) -> Mat<Rational> {
    assert!(two_e.is_multiple_of(2));
    let e = two_e / 2;
    let mut m = Mat::zeros(two_e, two_e);
    for i in 0..e {
        m.set(i, e + i, Rational::ONE);
        m.set(e + i, i, -Rational::ONE);
    }
    m
}

/// Id_{p,q} = diag(1,…,1,−1,…,−1).
pub fn id_pq(p: usize, q: usize) -> Mat<Rational> {
    let mut m = Mat::identity(p + q);
    for i in p..p + q {
        m.set(i, i, -Rational::ONE);
    }
    m
}
