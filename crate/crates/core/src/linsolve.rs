//! Exact elimination: incremental sparse echelon forms, nullspaces, canonical
//! span bases, and a fraction-free Bareiss path over the integers.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::scalars::{integer_row, Rational, Scalar};

pub type SparseVec<F> = Vec<(usize, F)>;

/// Row echelon form built one row at a time. Stored rows have leading entry 1
/// and no entries left of their pivot.
#[derive(Clone, Debug)]
pub struct Echelon<F: Scalar> {
    ncols: usize,
    pivot_row: Vec<Option<usize>>,
    rows: Vec<SparseVec<F>>,
    pivots: Vec<usize>,
}

impl<F: Scalar> Echelon<F> {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, pivot_row: vec![None; ncols], rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `w` in place against the stored rows; returns the first
    /// column where a nonzero entry survives.
    fn reduce(&self, w: &mut [F]) -> Option<usize> {
        for j in 0..self.ncols {
            if w[j].is_zero() {
                continue;
            }
            match self.pivot_row[j] {
                Some(r) => {
                    let f = w[j].clone();
                    for (c, v) in &self.rows[r] {
                        w[*c] -= f.clone() * v.clone();
                    }
                }
                None => return Some(j),
            }
        }
        None
    }

    /// Adds a dense row; returns true if it increased the rank.
    pub fn push_dense(&mut self, mut w: Vec<F>) -> bool {
        debug_assert_eq!(w.len(), self.ncols);
        if self.is_full() {
            return false;
        }
        match self.reduce(&mut w) {
            None => false,
            Some(j) => {
                let p = w[j].inv().expect("nonzero");
                let row: SparseVec<F> = (j..self.ncols)
                    .filter(|&c| !w[c].is_zero())
                    .map(|c| (c, w[c].clone() * p.clone()))
                    .collect();
                self.pivot_row[j] = Some(self.rows.len());
                self.rows.push(row);
                self.pivots.push(j);
                true
            }
        }
    }

    pub fn push_sparse(&mut self, row: &[(usize, F)]) -> bool {
        if self.is_full() || row.is_empty() {
            return false;
        }
        let mut w = vec![F::zero(); self.ncols];
        for (c, v) in row {
            w[*c] += v.clone();
        }
        self.push_dense(w)
    }

    pub fn contains(&self, v: &[F]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w).is_none()
    }

    /// Fully reduced row echelon basis (pivot entries 1, zero above and below),
    /// sorted by pivot column. This is a canonical form of the row space.
    pub fn rref(&self) -> Vec<Vec<F>> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.pivots[r]);
        let mut dense: Vec<Vec<F>> = order
            .iter()
            .map(|&r| {
                let mut v = vec![F::zero(); self.ncols];
                for (c, x) in &self.rows[r] {
                    v[*c] = x.clone();
                }
                v
            })
            .collect();
        let piv: Vec<usize> = order.iter().map(|&r| self.pivots[r]).collect();
        for i in (0..dense.len()).rev() {
            let p = piv[i];
            let (head, tail) = dense.split_at_mut(i);
            let src = &tail[0];
            for row in head.iter_mut() {
                let f = row[p].clone();
                if f.is_zero() {
                    continue;
                }
                for c in p..self.ncols {
                    if !src[c].is_zero() {
                        row[c] -= f.clone() * src[c].clone();
                    }
                }
            }
        }
        dense
    }

    /// Basis of {x : row·x = 0 for every stored row}.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let rref = self.rref();
        let mut piv = Vec::with_capacity(rref.len());
        for r in &rref {
            piv.push(r.iter().position(|x| !x.is_zero()).unwrap());
        }
        let mut is_pivot = vec![false; self.ncols];
        for &p in &piv {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for f in 0..self.ncols {
            if is_pivot[f] {
                continue;
            }
            let mut v = vec![F::zero(); self.ncols];
            v[f] = F::one();
            for (i, r) in rref.iter().enumerate() {
                if !r[f].is_zero() {
                    v[piv[i]] = -r[f].clone();
                }
            }
            out.push(v);
        }
        out
    }
}

/// Nullspace of the matrix with the given dense rows.
pub fn nullspace<F: Scalar>(rows: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let mut e = Echelon::new(ncols);
    for r in rows {
        if e.is_full() {
            break;
        }
        e.push_dense(r.clone());
    }
    e.kernel()
}

/// Nullspace of the matrix with the given sparse rows.
pub fn nullspace_sparse<F: Scalar>(rows: &[SparseVec<F>], ncols: usize) -> Vec<Vec<F>> {
    let mut e = Echelon::new(ncols);
    for r in rows {
        if e.is_full() {
            break;
        }
        e.push_sparse(r);
    }
    e.kernel()
}

/// Kernel of the linear map whose k-th column (image of the k-th unknown) is
/// given sparsely with row keys in `0..nrows`.
pub fn kernel_of_columns<F: Scalar>(columns: &[SparseVec<F>], nrows: usize) -> Vec<Vec<F>> {
    let ncols = columns.len();
    let mut rows: Vec<SparseVec<F>> = vec![Vec::new(); nrows];
    for (k, col) in columns.iter().enumerate() {
        for (r, v) in col {
            if !v.is_zero() {
                rows[*r].push((k, v.clone()));
            }
        }
    }
    rows.retain(|r| !r.is_empty());
    // Shorter rows first keeps fill-in low.
    rows.sort_by_key(|r| r.len());
    nullspace_sparse(&rows, ncols)
}

pub fn rank<F: Scalar>(rows: &[Vec<F>], ncols: usize) -> usize {
    let mut e = Echelon::new(ncols);
    for r in rows {
        e.push_dense(r.clone());
    }
    e.rank()
}

/// Canonical (fully reduced) basis of the span of `vectors`.
pub fn canonical_basis<F: Scalar>(vectors: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let mut e = Echelon::new(ncols);
    for v in vectors {
        e.push_dense(v.clone());
    }
    e.rref()
}

pub fn span_eq<F: Scalar>(a: &[Vec<F>], b: &[Vec<F>], ncols: usize) -> bool {
    canonical_basis(a, ncols) == canonical_basis(b, ncols)
}

/// Extracts a maximal independent subset (indices into `vectors`).
pub fn independent_subset<F: Scalar>(vectors: &[Vec<F>], ncols: usize) -> Vec<usize> {
    let mut e = Echelon::new(ncols);
    let mut keep = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        if e.push_dense(v.clone()) {
            keep.push(i);
        }
    }
    keep
}

/// Solves A x = b for a matrix given by columns (dense); returns one solution.
pub fn solve<F: Scalar>(columns: &[Vec<F>], b: &[F]) -> Option<Vec<F>> {
    let n = columns.len();
    let m = b.len();
    // Augmented columns: [A | −b]; a kernel vector with last coordinate 1 solves.
    let mut aug: Vec<SparseVec<F>> = columns
        .iter()
        .map(|c| c.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect())
        .collect();
    aug.push(b.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, -x.clone())).collect());
    let ker = kernel_of_columns(&aug, m);
    let v = ker.into_iter().find(|v| !v[n].is_zero())?;
    let s = v[n].inv().unwrap();
    Some(v[..n].iter().map(|x| x.clone() * s.clone()).collect())
}

/// A precomputed left inverse for an injective linear map given by columns:
/// `solve(b)` returns the unique preimage or `None` if `b` is not in the image.
#[derive(Clone, Debug)]
pub struct InjectiveSolver<F: Scalar> {
    columns: Vec<Vec<F>>,
    rows_used: Vec<usize>,
    inv: crate::matrix::Mat<F>,
}

impl<F: Scalar> InjectiveSolver<F> {
    pub fn new(columns: Vec<Vec<F>>) -> Option<Self> {
        let n = columns.len();
        let m = columns.first().map_or(0, |c| c.len());
        // Pick n independent rows.
        let rows: Vec<Vec<F>> = (0..m).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect();
        let sel = independent_subset(&rows, n);
        if sel.len() != n {
            return None;
        }
        let sq = crate::matrix::Mat::from_fn(n, n, |i, j| rows[sel[i]][j].clone());
        let inv = sq.inverse().ok()?;
        Some(InjectiveSolver { columns, rows_used: sel, inv })
    }

    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        let bs: Vec<F> = self.rows_used.iter().map(|&i| b[i].clone()).collect();
        let x = self.inv.mul_vec(&bs);
        // Consistency: A x must reproduce b exactly.
        for (i, bi) in b.iter().enumerate() {
            let mut s = F::zero();
            for (k, c) in self.columns.iter().enumerate() {
                if !c[i].is_zero() && !x[k].is_zero() {
                    s += c[i].clone() * x[k].clone();
                }
            }
            if s != *bi {
                return None;
            }
        }
        Some(x)
    }
}

/// Fraction-free (Bareiss) elimination over the integers after clearing
/// denominators. Returns the nullspace with rational entries. Used as an
/// independent oracle for the default solver.
pub fn nullspace_bareiss(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| integer_row(r)).collect();
    let nrows = m.len();
    let mut prev = BigInt::from(1);
    let mut piv_cols = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let v = (&m[r][c] * &m[i][j] - &m[i][c] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        // Entries of the pivot row right of c are unchanged; rows above stay.
        prev = m[r][c].clone();
        piv_cols.push(c);
        r += 1;
    }
    // Back substitution over Q on the integer echelon form.
    let rank = piv_cols.len();
    let mut is_pivot = vec![false; ncols];
    for &p in &piv_cols {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for f in 0..ncols {
        if is_pivot[f] {
            continue;
        }
        let mut x = vec![Rational::ZERO; ncols];
        x[f] = Rational::ONE;
        for k in (0..rank).rev() {
            let pc = piv_cols[k];
            let mut s = Rational::ZERO;
            for j in pc + 1..ncols {
                if !m[k][j].is_zero() && !x[j].is_zero() {
                    s += Rational::from_bigint(m[k][j].clone()) * x[j].clone();
                }
            }
            x[pc] = -s / Rational::from_bigint(m[k][pc].clone());
        }
        out.push(x);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::int(n)
    }

    #[test]
    fn zero_map_full_kernel() {
        let k = nullspace::<Rational>(&[], 3);
        assert_eq!(k.len(), 3);
    }

    #[test]
    fn identity_trivial_kernel() {
        let rows: Vec<Vec<Rational>> =
            (0..3).map(|i| (0..3).map(|j| if i == j { q(1) } else { q(0) }).collect()).collect();
        assert!(nullspace(&rows, 3).is_empty());
    }

    #[test]
    fn bareiss_agrees() {
        let rows = vec![vec![q(1), q(2), q(3), q(4)], vec![q(2), q(4), q(6), q(8)], vec![q(0), q(1), q(1), q(0)]];
        let a = nullspace(&rows, 4);
        let b = nullspace_bareiss(&rows, 4);
        assert!(span_eq(&a, &b, 4));
        assert_eq!(a.len(), 2);
    }

    #[test]
    fn solver_roundtrip() {
        let cols = vec![vec![q(1), q(0), q(1)], vec![q(0), q(1), q(1)]];
        let s = InjectiveSolver::new(cols).unwrap();
        assert_eq!(s.solve(&[q(2), q(3), q(5)]).unwrap(), vec![q(2), q(3)]);
        assert!(s.solve(&[q(2), q(3), q(4)]).is_none());
    }
}
