//! Lie superalgebras as spans of homogeneous matrices, the ambient
//! orthosymplectic algebra spo(E,B), supercommutants, and realification of
//! modules over division superalgebras.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::division::Algebra;
use crate::error::{Error, Result};
use crate::linsolve::{canonical_basis, kernel_of_columns, Echelon, SparseVec};
use crate::matrix::{graded_dim, matrix_parity, superbracket, FieldTag, Mat, Parity, SuperSpace};
use crate::scalars::{Rational, Scalar};

/// A homogeneous matrix with its parity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homogeneous {
    pub parity: Parity,
    pub matrix: Mat,
}

/// Row-compressed sparse square matrix used for bracket-heavy loops.
#[derive(Clone, Debug)]
pub struct SparseMat {
    pub n: usize,
    pub rows: Vec<Vec<(usize, Rational)>>,
}

impl SparseMat {
    pub fn from_dense(m: &Mat) -> Self {
        let rows = (0..m.rows)
            .map(|r| (0..m.cols).filter(|&c| !m.get(r, c).is_zero()).map(|c| (c, m.get(r, c).clone())).collect())
            .collect();
        SparseMat { n: m.cols, rows }
    }

    fn mul_into(&self, o: &SparseMat, sign: i64, acc: &mut BTreeMap<usize, Rational>) {
        let n = o.n;
        for (i, row) in self.rows.iter().enumerate() {
            for (k, a) in row {
                for (j, b) in &o.rows[*k] {
                    let v = a.clone() * b.clone() * Rational::int(sign);
                    let e = acc.entry(i * n + j).or_insert(Rational::ZERO);
                    *e += v;
                }
            }
        }
    }

    /// [X,Y] flattened row-major, zero entries dropped.
    pub fn bracket(&self, px: Parity, o: &SparseMat, py: Parity) -> SparseVec<Rational> {
        let mut acc = BTreeMap::new();
        self.mul_into(o, 1, &mut acc);
        o.mul_into(self, if px & py == 1 { 1 } else { -1 }, &mut acc);
        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }
}

fn flatten(m: &Mat) -> Vec<Rational> {
    m.data.clone()
}

/// Lie superalgebra presented by a homogeneous basis of matrices acting on a
/// common graded space. Bases are kept in canonical (reduced echelon) form
/// per parity, so two spans are equal iff their bases are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieSpan {
    pub space: SuperSpace,
    pub basis: Vec<Homogeneous>,
}

impl LieSpan {
    /// Spans the given homogeneous elements, reducing to a canonical basis.
    pub fn new(space: SuperSpace, elems: Vec<Homogeneous>) -> Self {
        let n = space.dim();
        let mut basis = Vec::new();
        for p in 0..2u8 {
            let vecs: Vec<Vec<Rational>> = elems.iter().filter(|h| h.parity == p).map(|h| flatten(&h.matrix)).collect();
            for v in canonical_basis(&vecs, n * n) {
                basis.push(Homogeneous { parity: p, matrix: Mat::from_vec(n, n, v) });
            }
        }
        LieSpan { space, basis }
    }

    /// Builds from matrices, computing parities; fails on inhomogeneous input.
    pub fn from_matrices(space: SuperSpace, mats: Vec<Mat>) -> Result<Self> {
        let mut elems = Vec::new();
        for m in mats {
            if m.is_zero() {
                continue;
            }
            let p = matrix_parity(&m, &space.parities, &space.parities)
                .ok_or_else(|| Error::Inhomogeneous("span generator".into()))?;
            elems.push(Homogeneous { parity: p, matrix: m });
        }
        Ok(Self::new(space, elems))
    }

    pub fn zero(space: SuperSpace) -> Self {
        LieSpan { space, basis: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.space.dim()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn graded_dim(&self) -> (usize, usize) {
        let odd = self.basis.iter().filter(|h| h.parity == 1).count();
        (self.basis.len() - odd, odd)
    }

    pub fn part(&self, p: Parity) -> impl Iterator<Item = &Homogeneous> {
        self.basis.iter().filter(move |h| h.parity == p)
    }

    fn echelon(&self, p: Parity) -> Echelon<Rational> {
        let n = self.n();
        let mut e = Echelon::new(n * n);
        for h in self.part(p) {
            e.push_dense(flatten(&h.matrix));
        }
        e
    }

    /// Membership test; inhomogeneous matrices are split by parity.
    pub fn contains(&self, m: &Mat) -> bool {
        let n = self.n();
        let par = &self.space.parities;
        let mut parts = [Mat::zeros(n, n), Mat::zeros(n, n)];
        for r in 0..n {
            for c in 0..n {
                let v = m.get(r, c);
                if !v.is_zero() {
                    parts[((par[r] + par[c]) % 2) as usize].set(r, c, v.clone());
                }
            }
        }
        (0..2u8).all(|p| parts[p as usize].is_zero() || self.echelon(p).contains(&flatten(&parts[p as usize])))
    }

    pub fn contains_span(&self, other: &LieSpan) -> bool {
        let e = [self.echelon(0), self.echelon(1)];
        other.basis.iter().all(|h| e[h.parity as usize].contains(&flatten(&h.matrix)))
    }

    /// Exact span equality (canonical bases coincide).
    pub fn span_eq(&self, other: &LieSpan) -> bool {
        self.space.parities == other.space.parities && self.basis == other.basis
    }

    pub fn is_bracket_closed(&self) -> bool {
        let sp: Vec<SparseMat> = self.basis.iter().map(|h| SparseMat::from_dense(&h.matrix)).collect();
        let e = [self.echelon(0), self.echelon(1)];
        let n = self.n();
        let pairs: Vec<(usize, usize)> = (0..sp.len()).flat_map(|i| (i..sp.len()).map(move |j| (i, j))).collect();
        pairs.par_iter().all(|&(i, j)| {
            let (pi, pj) = (self.basis[i].parity, self.basis[j].parity);
            let b = sp[i].bracket(pi, &sp[j], pj);
            let mut dense = vec![Rational::ZERO; n * n];
            for (k, v) in b {
                dense[k] = v;
            }
            e[((pi + pj) % 2) as usize].contains(&dense)
        })
    }

    /// Coordinates of a homogeneous element in this basis.
    pub fn coordinates(&self, m: &Mat) -> Option<Vec<Rational>> {
        let cols: Vec<Vec<Rational>> = self.basis.iter().map(|h| flatten(&h.matrix)).collect();
        crate::linsolve::solve(&cols, &flatten(m))
    }

    /// Sum of two spans in the same ambient space.
    pub fn sum(&self, other: &LieSpan) -> LieSpan {
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        LieSpan::new(self.space.clone(), all)
    }

    /// Conjugates every basis element by P: X ↦ P X P⁻¹.
    pub fn conjugate(&self, p: &Mat, p_inv: &Mat, space: SuperSpace) -> LieSpan {
        let elems = self
            .basis
            .iter()
            .map(|h| Homogeneous { parity: h.parity, matrix: p.mul(&h.matrix).mul(p_inv) })
            .collect();
        LieSpan::new(space, elems)
    }

    pub fn to_json(&self) -> LieSpanJson {
        LieSpanJson {
            ambient_parities: self.space.parities.clone(),
            field: self.space.field,
            graded_dim: self.graded_dim(),
            basis: self
                .basis
                .iter()
                .map(|h| HomogeneousJson { parity: h.parity, matrix: h.matrix.to_strings() })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HomogeneousJson {
    pub parity: Parity,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LieSpanJson {
    pub ambient_parities: Vec<Parity>,
    pub field: FieldTag,
    pub graded_dim: (usize, usize),
    pub basis: Vec<HomogeneousJson>,
}

/// A graded space with an even, (−1)-supersymmetric, nondegenerate form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearSpace {
    pub space: SuperSpace,
    pub gram: Mat,
}

impl BilinearSpace {
    pub fn new(space: SuperSpace, gram: Mat) -> Result<Self> {
        let b = BilinearSpace { space, gram };
        b.validate()?;
        Ok(b)
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.dim();
        let p = &self.space.parities;
        if self.gram.rows != n || self.gram.cols != n {
            return Err(Error::Dimension("Gram matrix size".into()));
        }
        for i in 0..n {
            for j in 0..n {
                let v = self.gram.get(i, j);
                if v.is_zero() {
                    continue;
                }
                if p[i] != p[j] {
                    return Err(Error::Degenerate("form is not even".into()));
                }
                // B(u,v) = −(−1)^{|u||v|} B(v,u)
                let expect = if p[i] & p[j] == 1 { v.clone() } else { -v.clone() };
                if *self.gram.get(j, i) != expect {
                    return Err(Error::Degenerate("form is not (−1)-supersymmetric".into()));
                }
            }
        }
        if self.gram.rank() != n {
            return Err(Error::Degenerate("form is degenerate".into()));
        }
        Ok(())
    }

    /// Does X satisfy B(Xu,v) + (−1)^{|X||u|} B(u,Xv) = 0 on all basis pairs?
    pub fn preserves(&self, x: &Mat, parity: Parity) -> bool {
        let n = self.dim();
        let xt_g = x.transpose().mul(&self.gram);
        let gx = self.gram.mul(x);
        (0..n).all(|i| {
            let s = if parity & self.space.parities[i] == 1 { -Rational::ONE } else { Rational::ONE };
            (0..n).all(|j| (xt_g.get(i, j).clone() + s.clone() * gx.get(i, j).clone()).is_zero())
        })
    }

    /// Evaluates B(u,v) on coordinate vectors.
    pub fn eval(&self, u: &[Rational], v: &[Rational]) -> Rational {
        let gv = self.gram.mul_vec(v);
        u.iter().zip(gv).fold(Rational::ZERO, |acc, (a, b)| acc + a.clone() * b)
    }
}

/// Homogeneous basis of spo(E,B), one nullspace per parity.
pub fn spo_ambient(b: &BilinearSpace) -> Result<LieSpan> {
    b.validate()?;
    Ok(form_algebra(&b.space, &b.gram))
}

/// {X : B(Xu,v) + (−1)^{|X||u|} B(u,Xv) = 0} for any even Gram matrix (no
/// symmetry requirement, so orthosymplectic algebras of supersymmetric
/// forms are covered too).
pub fn form_algebra(space: &SuperSpace, gram: &Mat) -> LieSpan {
    let n = space.dim();
    let p = &space.parities;
    let g = SparseMat::from_dense(gram);
    // Column view of the Gram matrix.
    let gt = SparseMat::from_dense(&gram.transpose());
    let mut elems = Vec::new();
    for alpha in 0..2u8 {
        // Unknowns X_kl with p_k = p_l + alpha.
        let unknowns: Vec<(usize, usize)> =
            (0..n).flat_map(|k| (0..n).map(move |l| (k, l))).filter(|&(k, l)| (p[k] + p[l]) % 2 == alpha).collect();
        let mut idx = vec![usize::MAX; n * n];
        for (u, &(k, l)) in unknowns.iter().enumerate() {
            idx[k * n + l] = u;
        }
        let mut rows: Vec<SparseVec<Rational>> = Vec::new();
        for i in 0..n {
            let s = if alpha & p[i] == 1 { -1 } else { 1 };
            for j in 0..n {
                let mut row: BTreeMap<usize, Rational> = BTreeMap::new();
                // Σ_k X_ki G_kj
                for (k, v) in &gt.rows[j] {
                    let u = idx[k * n + i];
                    if u != usize::MAX {
                        *row.entry(u).or_insert(Rational::ZERO) += v.clone();
                    }
                }
                // s Σ_k G_ik X_kj
                for (k, v) in &g.rows[i] {
                    let u = idx[k * n + j];
                    if u != usize::MAX {
                        *row.entry(u).or_insert(Rational::ZERO) += v.clone() * Rational::int(s);
                    }
                }
                let r: SparseVec<Rational> = row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                if !r.is_empty() {
                    rows.push(r);
                }
            }
        }
        rows.sort_by_key(|r| r.len());
        for v in crate::linsolve::nullspace_sparse(&rows, unknowns.len()) {
            let mut m = Mat::zeros(n, n);
            for (u, &(k, l)) in unknowns.iter().enumerate() {
                if !v[u].is_zero() {
                    m.set(k, l, v[u].clone());
                }
            }
            elems.push(Homogeneous { parity: alpha, matrix: m });
        }
    }
    LieSpan::new(space.clone(), elems)
}

/// Closed-form dimension of spo for graded dimension (2m|n).
pub fn spo_dim(two_m: usize, n: usize) -> usize {
    let m = two_m / 2;
    m * (2 * m + 1) + n * n.saturating_sub(1) / 2 + 2 * m * n
}

/// {X ∈ ambient : [X,Y] = 0 for every basis element Y of g}.
pub fn supercommutant(g: &LieSpan, ambient: &LieSpan) -> Result<LieSpan> {
    if g.space.parities != ambient.space.parities {
        return Err(Error::Dimension("spans act on different spaces".into()));
    }
    if !ambient.contains_span(g) {
        return Err(Error::NotContained("g is not inside the ambient span".into()));
    }
    Ok(commutant_in(g, ambient))
}

/// Supercommutant of `g` inside `ambient` without the containment check
/// (used for commutants of arbitrary operator families).
pub fn commutant_in(g: &LieSpan, ambient: &LieSpan) -> LieSpan {
    let n = ambient.n();
    let gs: Vec<(Parity, SparseMat)> = g.basis.iter().map(|h| (h.parity, SparseMat::from_dense(&h.matrix))).collect();
    let mut elems = Vec::new();
    for alpha in 0..2u8 {
        let amb: Vec<&Homogeneous> = ambient.part(alpha).collect();
        let cols: Vec<SparseVec<Rational>> = amb
            .par_iter()
            .map(|h| {
                let a = SparseMat::from_dense(&h.matrix);
                let mut col = Vec::new();
                for (b, (py, y)) in gs.iter().enumerate() {
                    for (k, v) in a.bracket(alpha, y, *py) {
                        col.push((b * n * n + k, v));
                    }
                }
                col
            })
            .collect();
        for c in kernel_of_columns(&cols, gs.len() * n * n) {
            let mut m = Mat::zeros(n, n);
            for (a, h) in amb.iter().enumerate() {
                if !c[a].is_zero() {
                    m = m.add(&h.matrix.scale(&c[a]));
                }
            }
            elems.push(Homogeneous { parity: alpha, matrix: m });
        }
    }
    LieSpan::new(ambient.space.clone(), elems)
}

/// All of gl(E) as a LieSpan of elementary matrices.
pub fn gl_full(space: &SuperSpace) -> LieSpan {
    let n = space.dim();
    let p = &space.parities;
    let mut basis = Vec::new();
    for parity in 0..2u8 {
        for r in 0..n {
            for c in 0..n {
                if (p[r] + p[c]) % 2 == parity {
                    let mut m = Mat::zeros(n, n);
                    m.set(r, c, Rational::ONE);
                    basis.push(Homogeneous { parity, matrix: m });
                }
            }
        }
    }
    LieSpan { space: space.clone(), basis }
}

/// Which side the algebra acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Right,
    Left,
}

/// Underlying base-field basis of a free D-module D^{n|m}: vectors w_a·d_b
/// (right) or d_b·u_a (left), ordered by parity, then generator, then algebra
/// basis element.
#[derive(Clone, Debug)]
pub struct ModuleBasis {
    pub alg: Algebra,
    pub side: Side,
    pub gen_parities: Vec<Parity>,
    /// (generator, algebra basis index) per underlying basis vector.
    pub index: Vec<(usize, usize)>,
    pub parities: Vec<Parity>,
    pos: Vec<Vec<usize>>,
}

impl ModuleBasis {
    pub fn new(alg: Algebra, gen_parities: Vec<Parity>, side: Side) -> Self {
        let nd = alg.dim();
        let mut index: Vec<(Parity, usize, usize)> = Vec::new();
        for (a, pa) in gen_parities.iter().enumerate() {
            for b in 0..nd {
                index.push(((pa + alg.parity[b]) % 2, a, b));
            }
        }
        index.sort();
        let mut pos = vec![vec![0; nd]; gen_parities.len()];
        for (i, (_, a, b)) in index.iter().enumerate() {
            pos[*a][*b] = i;
        }
        ModuleBasis {
            parities: index.iter().map(|x| x.0).collect(),
            index: index.iter().map(|x| (x.1, x.2)).collect(),
            alg,
            side,
            gen_parities,
            pos,
        }
    }

    /// Standard generators: n even then m odd.
    pub fn standard(alg: Algebra, n: usize, m: usize, side: Side) -> Self {
        let mut p = vec![0; n];
        p.extend(vec![1; m]);
        Self::new(alg, p, side)
    }

    pub fn dim(&self) -> usize {
        self.index.len()
    }

    pub fn rank(&self) -> usize {
        self.gen_parities.len()
    }

    pub fn pos(&self, generator: usize, alg_index: usize) -> usize {
        self.pos[generator][alg_index]
    }

    pub fn space(&self) -> SuperSpace {
        SuperSpace::new(self.parities.clone(), self.alg.base)
    }

    /// Matrix of the algebra action by `d` (right: v ↦ v·d, left: v ↦ d·v).
    pub fn scalar_action(&self, d: &[Rational]) -> Mat {
        let n = self.dim();
        let mut m = Mat::zeros(n, n);
        for (col, &(a, b)) in self.index.iter().enumerate() {
            let e = self.alg.basis::<Rational>(b);
            let prod = match self.side {
                Side::Right => self.alg.mul(&e, d),
                Side::Left => self.alg.mul(d, &e),
            };
            for (b2, v) in prod.into_iter().enumerate() {
                if !v.is_zero() {
                    m.set(self.pos(a, b2), col, v);
                }
            }
        }
        m
    }
}

/// A matrix with entries in D: column a holds the coordinates of T(w_a).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DMatrix {
    pub alg: Algebra,
    pub row_parities: Vec<Parity>,
    pub col_parities: Vec<Parity>,
    /// entries[c][a] = coordinates of M_ca.
    pub entries: Vec<Vec<Vec<Rational>>>,
}

impl DMatrix {
    pub fn zeros(alg: Algebra, rows: Vec<Parity>, cols: Vec<Parity>) -> Self {
        let nd = alg.dim();
        let entries = vec![vec![vec![Rational::ZERO; nd]; cols.len()]; rows.len()];
        DMatrix { alg, row_parities: rows, col_parities: cols, entries }
    }

    pub fn identity(alg: Algebra, parities: Vec<Parity>) -> Self {
        let mut m = Self::zeros(alg.clone(), parities.clone(), parities);
        for i in 0..m.entries.len() {
            m.entries[i][i] = alg.one();
        }
        m
    }

    /// Elementary matrix d·E_ca.
    pub fn elementary(alg: Algebra, parities: Vec<Parity>, c: usize, a: usize, d: Vec<Rational>) -> Self {
        let mut m = Self::zeros(alg, parities.clone(), parities);
        m.entries[c][a] = d;
        m
    }

    pub fn mul(&self, o: &DMatrix) -> DMatrix {
        let mut out = DMatrix::zeros(self.alg.clone(), self.row_parities.clone(), o.col_parities.clone());
        for c in 0..self.row_parities.len() {
            for a in 0..o.col_parities.len() {
                let mut acc = self.alg.zero::<Rational>();
                for e in 0..self.col_parities.len() {
                    let p = self.alg.mul(&self.entries[c][e], &o.entries[e][a]);
                    for (x, y) in acc.iter_mut().zip(p) {
                        *x += y;
                    }
                }
                out.entries[c][a] = acc;
            }
        }
        out
    }

    pub fn add(&self, o: &DMatrix) -> DMatrix {
        let mut out = self.clone();
        for (r1, r2) in out.entries.iter_mut().zip(&o.entries) {
            for (x, y) in r1.iter_mut().zip(r2) {
                for (u, v) in x.iter_mut().zip(y) {
                    *u += v.clone();
                }
            }
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> DMatrix {
        let mut out = self.clone();
        for r in out.entries.iter_mut() {
            for x in r.iter_mut() {
                for u in x.iter_mut() {
                    *u *= s.clone();
                }
            }
        }
        out
    }

    /// Parity as a D-linear map, or None if inhomogeneous.
    pub fn parity(&self) -> Option<Parity> {
        let mut found = None;
        for (c, row) in self.entries.iter().enumerate() {
            for (a, x) in row.iter().enumerate() {
                for (b, v) in x.iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    let p = (self.row_parities[c] + self.col_parities[a] + self.alg.parity[b]) % 2;
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

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|r| r.iter().all(|x| x.iter().all(|v| v.is_zero())))
    }
}

/// Realification of a D-matrix acting on a right module:
/// entry [(c,b'),(a,b)] = coefficient of d_b' in M_ca·d_b.
pub fn realify(m: &DMatrix, basis: &ModuleBasis) -> Mat {
    assert_eq!(basis.side, Side::Right, "realify expects a right module basis");
    let n = basis.dim();
    let alg = &basis.alg;
    let mut out = Mat::zeros(n, n);
    for (col, &(a, b)) in basis.index.iter().enumerate() {
        for c in 0..basis.rank() {
            let mca = &m.entries[c][a];
            if mca.iter().all(|v| v.is_zero()) {
                continue;
            }
            let prod = alg.mul(mca, &alg.basis::<Rational>(b));
            for (b2, v) in prod.into_iter().enumerate() {
                if !v.is_zero() {
                    out.set(basis.pos(c, b2), col, v);
                }
            }
        }
    }
    out
}

/// Recovers the D-matrix of a realified right-D-linear map.
pub fn unrealify(x: &Mat, basis: &ModuleBasis) -> DMatrix {
    let alg = basis.alg.clone();
    let mut m = DMatrix::zeros(alg.clone(), basis.gen_parities.clone(), basis.gen_parities.clone());
    for a in 0..basis.rank() {
        let col = basis.pos(a, alg.unit_index);
        for c in 0..basis.rank() {
            for b in 0..alg.dim() {
                m.entries[c][a][b] = x.get(basis.pos(c, b), col).clone();
            }
        }
    }
    m
}

/// Underlying space of a free module D^{n|m} (right-module ordering).
pub fn realify_module(n: usize, m: usize, alg: Algebra) -> SuperSpace {
    ModuleBasis::standard(alg, n, m, Side::Right).space()
}

/// gl_D of a free module as base-field matrices. For right modules this is
/// the realification of the elementary D-matrices; for left modules it is
/// the supercommutant of the left multiplications, X(d·u) = (−1)^{|X||d|} d·X(u).
pub fn gl_d(basis: &ModuleBasis) -> LieSpan {
    let space = basis.space();
    match basis.side {
        Side::Right => {
            let alg = basis.alg.clone();
            let r = basis.rank();
            let mut elems = Vec::new();
            for c in 0..r {
                for a in 0..r {
                    for d in 0..alg.dim() {
                        let dm =
                            DMatrix::elementary(alg.clone(), basis.gen_parities.clone(), c, a, alg.basis::<Rational>(d));
                        let parity = (basis.gen_parities[c] + basis.gen_parities[a] + alg.parity[d]) % 2;
                        elems.push(Homogeneous { parity, matrix: realify(&dm, basis) });
                    }
                }
            }
            LieSpan::new(space, elems)
        }
        Side::Left => {
            let alg = &basis.alg;
            let mults: Vec<Homogeneous> = (0..alg.dim())
                .map(|d| Homogeneous { parity: alg.parity[d], matrix: basis.scalar_action(&alg.basis::<Rational>(d)) })
                .collect();
            let g = LieSpan { space: space.clone(), basis: mults };
            commutant_in(&g, &gl_full(&space))
        }
    }
}

/// Graded dimension of a parity vector, re-exported for reports.
pub fn dims_of(p: &[Parity]) -> (usize, usize) {
    graded_dim(p)
}

/// Checked supercommutator on LieSpan elements.
pub fn bracket(x: &Homogeneous, y: &Homogeneous) -> Homogeneous {
    Homogeneous { parity: (x.parity + y.parity) % 2, matrix: superbracket(&x.matrix, x.parity, &y.matrix, y.parity) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::division::{make_algebra, AlgebraName};
    use crate::matrix::j_matrix;

    fn standard_b(two_m: usize, n: usize) -> BilinearSpace {
        let mut g = Mat::zeros(two_m + n, two_m + n);
        g.put(0, 0, &j_matrix(two_m));
        g.put(two_m, two_m, &Mat::identity(n));
        BilinearSpace::new(SuperSpace::standard(two_m, n, FieldTag::R), g).unwrap()
    }

    #[test]
    fn spo_dimensions() {
        assert_eq!(spo_ambient(&standard_b(2, 0)).unwrap().dim(), 3);
        assert_eq!(spo_ambient(&standard_b(0, 2)).unwrap().dim(), 1);
        let s = spo_ambient(&standard_b(2, 2)).unwrap();
        assert_eq!(s.graded_dim(), (4, 4));
        assert!(s.is_bracket_closed());
        for (m, n) in [(2, 1), (4, 1), (2, 3)] {
            assert_eq!(spo_ambient(&standard_b(m, n)).unwrap().dim(), spo_dim(m, n));
        }
    }

    #[test]
    fn commutant_of_everything_is_center() {
        let s = spo_ambient(&standard_b(2, 2)).unwrap();
        assert_eq!(supercommutant(&s, &s).unwrap().dim(), 0);
        let z = LieSpan::zero(s.space.clone());
        assert!(supercommutant(&z, &s).unwrap().span_eq(&s));
    }

    #[test]
    fn gl_d_dims() {
        for name in AlgebraName::ALL {
            let alg = make_algebra(name);
            let r = ModuleBasis::standard(alg.clone(), 1, 1, Side::Right);
            let l = ModuleBasis::standard(alg.clone(), 1, 1, Side::Left);
            assert_eq!(gl_d(&r).dim(), 4 * alg.dim(), "{name} right");
            assert_eq!(gl_d(&l).dim(), 4 * alg.dim(), "{name} left");
        }
    }
}
