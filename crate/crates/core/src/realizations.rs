//! Explicit matrix realizations of the Lie superalgebras occurring in dual
//! pairs, generated from block constraints, plus the embeddings ξ, ξ′, Ψ, Ψ′,
//! Ψ̌, Ψ̌′ and cross-checks against g(W,γ) and gl_D(W).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::division::{make_algebra, make_algebra_over, Algebra, AlgebraName, InvolutionTag};
use crate::error::{Error, Result};
use crate::forms::{g_of_form, standard_form};
use crate::graded::{gl_d, realify, DMatrix, Homogeneous, LieSpan, ModuleBasis, Side};
use crate::linsolve::{nullspace_sparse, SparseVec};
use crate::matrix::{FieldTag, Mat, Parity};
use crate::scalars::{Rational, Scalar};

type DVal = Vec<Rational>;

/// Even part used for matrix entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Entries {
    R,
    C,
    H,
    /// C as the base field (complex Lie superalgebras).
    #[serde(rename = "Cc")]
    Cc,
}

impl Entries {
    fn algebra(self) -> Algebra {
        match self {
            Entries::R => make_algebra(AlgebraName::Cl0R),
            Entries::C => make_algebra(AlgebraName::Cl0C),
            Entries::H => make_algebra(AlgebraName::Cl4R),
            Entries::Cc => make_algebra_over(AlgebraName::Cl0C, FieldTag::C).unwrap(),
        }
    }
}

impl FromStr for Entries {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "R" => Ok(Entries::R),
            "C" => Ok(Entries::C),
            "H" => Ok(Entries::H),
            "Cc" | "CC" | "C/C" => Ok(Entries::Cc),
            _ => Err(Error::Parse(format!("unknown field `{s}` (R, C, H, Cc)"))),
        }
    }
}

/// Families of Lie superalgebras realized explicitly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// gl(n|m, D): params [n, m]
    Gl(Entries),
    /// q(n, D) as Π-fixed points (ε² = 1): params [n]
    Q(Entries),
    /// q(n, D) as st∘Π∘st⁻¹-fixed points (ε² = −1): params [n]
    QPrime(Entries),
    /// q̄(n) = σ∘Π-fixed points: params [n]
    Qbar,
    /// the ε² = −1 variant of q̄(n): params [n]
    QbarPrime,
    /// p(n, D), D = R or C with trivial ι: params [n]
    P(Entries),
    /// p̄(n): params [n]
    Pbar,
    /// p*(n): params [n]
    Pstar,
    /// osp(p,q|2e): params [p, q, e]
    Osp,
    /// spo(2a|p,q): params [a, p, q]
    Spo,
    /// osp(n|2e, C): params [n, e]
    OspC,
    /// spo(2a|m, C): params [a, m]
    SpoC,
    /// u(p,q|r,s): params [p, q, r, s]
    U,
    /// spo*(p,q|m): params [p, q, m]
    SpoStar,
    /// osp*(n|p,q): params [n, p, q]
    OspStar,
    /// q(p,q): params [p, q]
    Qpq,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyTag {
    pub family: Family,
    pub params: Vec<usize>,
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.params.iter().map(|x| x.to_string()).collect();
        write!(f, "{}({})", self.family.ascii(), p.join(","))
    }
}

impl Family {
    pub fn ascii(&self) -> String {
        match self {
            Family::Gl(e) => format!("gl[{e:?}]"),
            Family::Q(e) => format!("q[{e:?}]"),
            Family::QPrime(e) => format!("q-prime[{e:?}]"),
            Family::Qbar => "qbar".into(),
            Family::QbarPrime => "qbar-prime".into(),
            Family::P(e) => format!("p[{e:?}]"),
            Family::Pbar => "pbar".into(),
            Family::Pstar => "p-star".into(),
            Family::Osp => "osp".into(),
            Family::Spo => "spo".into(),
            Family::OspC => "osp-C".into(),
            Family::SpoC => "spo-C".into(),
            Family::U => "u".into(),
            Family::SpoStar => "spo-star".into(),
            Family::OspStar => "osp-star".into(),
            Family::Qpq => "q-pq".into(),
        }
    }

    fn n_params(&self) -> usize {
        match self {
            Family::Gl(_) | Family::OspC | Family::SpoC | Family::Qpq => 2,
            Family::Osp | Family::Spo | Family::SpoStar | Family::OspStar => 3,
            Family::U => 4,
            _ => 1,
        }
    }
}

/// Parses a CLI family name plus a field for the families that take one.
pub fn parse_family(name: &str, field: Entries) -> Result<Family> {
    Ok(match name.trim().to_ascii_lowercase().as_str() {
        "gl" => Family::Gl(field),
        "q" => Family::Q(field),
        "q-prime" => Family::QPrime(field),
        "qbar" => Family::Qbar,
        "qbar-prime" => Family::QbarPrime,
        "p" => Family::P(field),
        "pbar" => Family::Pbar,
        "p-star" | "pstar" => Family::Pstar,
        "osp" if field == Entries::Cc => Family::OspC,
        "spo" if field == Entries::Cc => Family::SpoC,
        "osp" => Family::Osp,
        "spo" => Family::Spo,
        "osp-c" => Family::OspC,
        "spo-c" => Family::SpoC,
        "u" => Family::U,
        "spo-star" | "spostar" => Family::SpoStar,
        "osp-star" | "ospstar" => Family::OspStar,
        "q-pq" | "qpq" => Family::Qpq,
        _ => return Err(Error::Parse(format!("unknown family `{name}`"))),
    })
}

impl FamilyTag {
    pub fn new(family: Family, params: Vec<usize>) -> Result<Self> {
        let t = FamilyTag { family, params };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        if self.params.len() != self.family.n_params() {
            return Err(Error::InvalidParams(format!(
                "{} takes {} parameters, got {}",
                self.family.ascii(),
                self.family.n_params(),
                self.params.len()
            )));
        }
        let ok = match self.family {
            Family::Gl(Entries::Cc) => true,
            Family::Q(e) | Family::QPrime(e) => e != Entries::Cc || matches!(self.family, Family::Q(_)),
            Family::P(e) => matches!(e, Entries::R | Entries::C | Entries::Cc),
            _ => true,
        };
        let total: usize = self.params.iter().sum();
        if !ok || total == 0 {
            return Err(Error::InvalidParams(format!("invalid parameters for {self}")));
        }
        Ok(())
    }

    /// The 14 families at small parameters (q and q̄ in both presentations).
    pub fn minimal_tags() -> Vec<FamilyTag> {
        use Entries::*;
        let t = |f, p: &[usize]| FamilyTag { family: f, params: p.to_vec() };
        vec![
            t(Family::Gl(R), &[1, 1]),
            t(Family::Gl(C), &[1, 1]),
            t(Family::Gl(H), &[1, 1]),
            t(Family::Gl(Cc), &[1, 1]),
            t(Family::Q(R), &[1]),
            t(Family::Q(C), &[2]),
            t(Family::Q(H), &[1]),
            t(Family::Q(Cc), &[2]),
            t(Family::QPrime(R), &[2]),
            t(Family::QPrime(H), &[1]),
            t(Family::Qbar, &[2]),
            t(Family::QbarPrime, &[2]),
            t(Family::P(R), &[1]),
            t(Family::P(C), &[2]),
            t(Family::P(Cc), &[2]),
            t(Family::Pbar, &[2]),
            t(Family::Pstar, &[1]),
            t(Family::Osp, &[1, 1, 1]),
            t(Family::Spo, &[1, 1, 1]),
            t(Family::OspC, &[2, 1]),
            t(Family::SpoC, &[1, 2]),
            t(Family::U, &[1, 1, 1, 0]),
            t(Family::SpoStar, &[1, 1, 1]),
            t(Family::OspStar, &[1, 1, 1]),
            t(Family::Qpq, &[1, 1]),
        ]
    }
}

/// Matrix whose entries are D₀-valued linear forms in real unknowns:
/// entry = Σ_k u_k · v_k with v_k ∈ D₀.
#[derive(Clone, Debug)]
struct LinMat {
    alg: Algebra,
    rows: usize,
    cols: usize,
    e: Vec<BTreeMap<usize, DVal>>,
}

type ConstMat = Vec<Vec<DVal>>;

impl LinMat {
    fn zeros(alg: &Algebra, rows: usize, cols: usize) -> Self {
        LinMat { alg: alg.clone(), rows, cols, e: vec![BTreeMap::new(); rows * cols] }
    }

    fn at(&self, r: usize, c: usize) -> &BTreeMap<usize, DVal> {
        &self.e[r * self.cols + c]
    }

    fn map_entries(&self, f: impl Fn(&DVal) -> DVal) -> Self {
        let mut out = self.clone();
        for m in out.e.iter_mut() {
            for v in m.values_mut() {
                *v = f(v);
            }
        }
        out
    }

    fn transpose(&self) -> Self {
        let mut out = LinMat::zeros(&self.alg, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.e[c * self.rows + r] = self.at(r, c).clone();
            }
        }
        out
    }

    /// Entrywise conjugation (σ).
    fn conj(&self) -> Self {
        let conj = conj_map(&self.alg);
        self.map_entries(|v| conj.mul_vec(v))
    }

    fn star(&self) -> Self {
        self.conj().transpose()
    }

    fn neg(&self) -> Self {
        self.map_entries(|v| v.iter().map(|x| -x.clone()).collect())
    }

    fn add(&self, o: &LinMat) -> Self {
        let mut out = self.clone();
        for (m, n) in out.e.iter_mut().zip(&o.e) {
            for (k, v) in n {
                let slot = m.entry(*k).or_insert_with(|| vec![Rational::ZERO; v.len()]);
                for (a, b) in slot.iter_mut().zip(v) {
                    *a += b.clone();
                }
            }
        }
        out
    }

    fn sub(&self, o: &LinMat) -> Self {
        self.add(&o.neg())
    }

    /// C · self for a constant D₀ matrix C.
    fn lmul(&self, c: &ConstMat) -> Self {
        let rows = c.len();
        let mut out = LinMat::zeros(&self.alg, rows, self.cols);
        for i in 0..rows {
            for k in 0..self.rows {
                let ck = &c[i][k];
                if ck.iter().all(|x| x.is_zero()) {
                    continue;
                }
                for j in 0..self.cols {
                    for (u, v) in self.at(k, j) {
                        let p = self.alg.mul(ck, v);
                        let slot = out.e[i * self.cols + j].entry(*u).or_insert_with(|| vec![Rational::ZERO; p.len()]);
                        for (a, b) in slot.iter_mut().zip(p) {
                            *a += b;
                        }
                    }
                }
            }
        }
        out
    }

    /// self · C for a constant D₀ matrix C.
    fn rmul(&self, c: &ConstMat) -> Self {
        let cols = c.first().map_or(0, |r| r.len());
        let mut out = LinMat::zeros(&self.alg, self.rows, cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                for j in 0..cols {
                    let ck = &c[k][j];
                    if ck.iter().all(|x| x.is_zero()) {
                        continue;
                    }
                    for (u, v) in self.at(i, k) {
                        let p = self.alg.mul(v, ck);
                        let slot = out.e[i * cols + j].entry(*u).or_insert_with(|| vec![Rational::ZERO; p.len()]);
                        for (a, b) in slot.iter_mut().zip(p) {
                            *a += b;
                        }
                    }
                }
            }
        }
        out
    }

    fn block(&self, r0: usize, c0: usize, h: usize, w: usize) -> Self {
        let mut out = LinMat::zeros(&self.alg, h, w);
        for r in 0..h {
            for c in 0..w {
                out.e[r * w + c] = self.at(r0 + r, c0 + c).clone();
            }
        }
        out
    }

    fn from_blocks(a: &LinMat, b: &LinMat, c: &LinMat, d: &LinMat) -> Self {
        let (h0, h1, w0, w1) = (a.rows, c.rows, a.cols, b.cols);
        let mut out = LinMat::zeros(&a.alg, h0 + h1, w0 + w1);
        let cols = w0 + w1;
        for (blk, r0, c0) in [(a, 0, 0), (b, 0, w0), (c, h0, 0), (d, h0, w0)] {
            for r in 0..blk.rows {
                for cc in 0..blk.cols {
                    out.e[(r0 + r) * cols + c0 + cc] = blk.at(r, cc).clone();
                }
            }
        }
        out
    }

    /// Splits a square (k|k) matrix into its four k×k blocks.
    fn quarters(&self, k: usize) -> [LinMat; 4] {
        [self.block(0, 0, k, k), self.block(0, k, k, k), self.block(k, 0, k, k), self.block(k, k, k, k)]
    }

    /// Rows of the linear system "self = 0".
    fn equations(&self, out: &mut Vec<SparseVec<Rational>>) {
        let nd = self.alg.dim();
        for m in &self.e {
            for d in 0..nd {
                let row: SparseVec<Rational> =
                    m.iter().filter(|(_, v)| !v[d].is_zero()).map(|(k, v)| (*k, v[d].clone())).collect();
                if !row.is_empty() {
                    out.push(row);
                }
            }
        }
    }
}

fn conj_map(alg: &Algebra) -> Mat {
    let n = alg.dim();
    Mat::from_fn(n, n, |r, c| {
        if r != c {
            Rational::ZERO
        } else if r == alg.unit_index {
            Rational::ONE
        } else {
            -Rational::ONE
        }
    })
}

/// Π(X) = (D C; B A) on (k|k) blocks.
fn pi(x: &LinMat, k: usize) -> LinMat {
    let [a, b, c, d] = x.quarters(k);
    LinMat::from_blocks(&d, &c, &b, &a)
}

/// st(X) = (Aᵗ −Cᵗ; Bᵗ Dᵗ).
fn st(x: &LinMat, k: usize) -> LinMat {
    let [a, b, c, d] = x.quarters(k);
    LinMat::from_blocks(&a.transpose(), &c.transpose().neg(), &b.transpose(), &d.transpose())
}

/// st⁻¹(X) = (Aᵗ Cᵗ; −Bᵗ Dᵗ).
fn st_inv(x: &LinMat, k: usize) -> LinMat {
    let [a, b, c, d] = x.quarters(k);
    LinMat::from_blocks(&a.transpose(), &c.transpose(), &b.transpose().neg(), &d.transpose())
}

fn const_diag(alg: &Algebra, entries: &[DVal]) -> ConstMat {
    let n = entries.len();
    (0..n).map(|r| (0..n).map(|c| if r == c { entries[r].clone() } else { alg.zero() }).collect()).collect()
}

fn const_from(alg: &Algebra, m: &Mat, d: &DVal) -> ConstMat {
    (0..m.rows)
        .map(|r| (0..m.cols).map(|c| d.iter().map(|x| x.clone() * m.get(r, c).clone()).collect()).collect())
        .collect::<Vec<Vec<DVal>>>()
        .into_iter()
        .map(|row| row.into_iter().map(|v| if v.is_empty() { alg.zero() } else { v }).collect())
        .collect()
}

fn id_pq_c(alg: &Algebra, p: usize, q: usize) -> ConstMat {
    const_from(alg, &crate::matrix::id_pq(p, q), &alg.one())
}

fn j_c(alg: &Algebra, two_e: usize) -> ConstMat {
    const_from(alg, &crate::matrix::j_matrix(two_e), &alg.one())
}

fn i_times(alg: &Algebra, m: &ConstMat) -> ConstMat {
    let i = alg.basis::<Rational>(alg.index_of("i").expect("algebra has i"));
    m.iter().map(|row| row.iter().map(|v| alg.mul(&i, v)).collect()).collect()
}

/// Unknown D₀-matrix of size (n0+n1)×(n0+n1) restricted to entries of parity α.
fn unknown(alg: &Algebra, par: &[Parity], alpha: Parity) -> (LinMat, Vec<(usize, usize, usize)>) {
    let n = par.len();
    let nd = alg.dim();
    let mut m = LinMat::zeros(alg, n, n);
    let mut slots = Vec::new();
    for r in 0..n {
        for c in 0..n {
            if (par[r] + par[c]) % 2 != alpha {
                continue;
            }
            for d in 0..nd {
                m.e[r * n + c].insert(slots.len(), alg.basis(d));
                slots.push((r, c, d));
            }
        }
    }
    (m, slots)
}

/// Solves the constraints built by `eqs` for unknown D₀-matrices on generators
/// with parities `par`, one parity at a time; returns D₀-matrix solutions.
fn solve_blocks(alg: &Algebra, par: &[Parity], eqs: impl Fn(&LinMat) -> Vec<LinMat>) -> Vec<(Parity, DMatrix)> {
    let mut out = Vec::new();
    for alpha in 0..2u8 {
        let (x, slots) = unknown(alg, par, alpha);
        let mut rows = Vec::new();
        for e in eqs(&x) {
            e.equations(&mut rows);
        }
        rows.sort_by_key(|r| r.len());
        for v in nullspace_sparse(&rows, slots.len()) {
            let mut dm = DMatrix::zeros(alg.clone(), par.to_vec(), par.to_vec());
            for (k, &(r, c, d)) in slots.iter().enumerate() {
                dm.entries[r][c][d] = v[k].clone();
            }
            out.push((alpha, dm));
        }
    }
    out
}

fn gens(n: usize, m: usize) -> Vec<Parity> {
    let mut p = vec![0; n];
    p.extend(vec![1; m]);
    p
}

fn realify_all(sols: Vec<(Parity, DMatrix)>, basis: &ModuleBasis) -> LieSpan {
    let elems = sols.iter().map(|(p, dm)| Homogeneous { parity: *p, matrix: realify(dm, basis) }).collect();
    LieSpan::new(basis.space(), elems)
}

/// Block equations of an even form diag(G0, G1) on (n|m) generators:
/// X1*G0 + G0X1 = 0, X4*G1 + G1X4 = 0, X3*G1 + G0X2 = 0 (∗ = ι-transpose).
fn even_form_equations(x: &LinMat, n: usize, m: usize, g0: &ConstMat, g1: &ConstMat, star: bool) -> Vec<LinMat> {
    let x1 = x.block(0, 0, n, n);
    let x2 = x.block(0, n, n, m);
    let x3 = x.block(n, 0, m, n);
    let x4 = x.block(n, n, m, m);
    let t = |y: &LinMat| if star { y.star() } else { y.transpose() };
    vec![
        t(&x1).rmul(g0).add(&x1.lmul(g0)),
        t(&x4).rmul(g1).add(&x4.lmul(g1)),
        t(&x3).rmul(g1).add(&x2.lmul(g0)),
    ]
}

/// Underlying right-module basis on which `realize(tag)` acts, plus the algebra.
fn library_basis(tag: &FamilyTag) -> ModuleBasis {
    let p = &tag.params;
    let (alg, gp): (Algebra, Vec<Parity>) = match tag.family {
        Family::Gl(e) => (e.algebra(), gens(p[0], p[1])),
        Family::Q(Entries::R) => (make_algebra(AlgebraName::Cl7R), gens(p[0], 0)),
        Family::Q(Entries::C) => (make_algebra(AlgebraName::Cl1C), gens(p[0], 0)),
        Family::Q(Entries::H) => (make_algebra(AlgebraName::Cl3R), gens(p[0], 0)),
        Family::Q(Entries::Cc) => (make_algebra_over(AlgebraName::Cl1C, FieldTag::C).unwrap(), gens(p[0], 0)),
        Family::QPrime(Entries::H) => (make_algebra(AlgebraName::Cl5R), gens(p[0], 0)),
        Family::QPrime(_) => (make_algebra(AlgebraName::Cl1R), gens(p[0], 0)),
        Family::Qbar => (make_algebra(AlgebraName::Cl6R), gens(p[0], 0)),
        Family::QbarPrime => (make_algebra(AlgebraName::Cl2R), gens(p[0], 0)),
        Family::P(e) => (e.algebra(), gens(p[0], p[0])),
        Family::Pbar => (Entries::C.algebra(), gens(p[0], p[0])),
        Family::Pstar => (Entries::H.algebra(), gens(p[0], p[0])),
        Family::Osp => (Entries::R.algebra(), gens(p[0] + p[1], 2 * p[2])),
        Family::Spo => (Entries::R.algebra(), gens(2 * p[0], p[1] + p[2])),
        Family::OspC => (Entries::Cc.algebra(), gens(p[0], 2 * p[1])),
        Family::SpoC => (Entries::Cc.algebra(), gens(2 * p[0], p[1])),
        Family::U => (Entries::C.algebra(), gens(p[0] + p[1], p[2] + p[3])),
        Family::SpoStar => (Entries::H.algebra(), gens(p[0] + p[1], p[2])),
        Family::OspStar => (Entries::H.algebra(), gens(p[0], p[1] + p[2])),
        Family::Qpq => (make_algebra(AlgebraName::Cl1C), gens(p[0] + p[1], 0)),
    };
    ModuleBasis::new(alg, gp, Side::Right)
}

fn even_algebra_of(alg: &Algebra) -> Algebra {
    match (alg.even, alg.base) {
        (_, FieldTag::C) => Entries::Cc.algebra(),
        (crate::division::EvenPart::R, _) => Entries::R.algebra(),
        (crate::division::EvenPart::C, _) => Entries::C.algebra(),
        (crate::division::EvenPart::H, _) => Entries::H.algebra(),
    }
}

/// Explicit realization of a family as a LieSpan on the library's
/// realified right-module basis.
pub fn realize(tag: &FamilyTag) -> Result<LieSpan> {
    tag.validate()?;
    let basis = library_basis(tag);
    let p = &tag.params;
    let span = match tag.family {
        Family::Gl(e) => {
            let alg = e.algebra();
            // No constraint: every D₀-matrix.
            realify_all(solve_blocks(&alg, &gens(p[0], p[1]), |_| Vec::new()), &basis)
        }
        Family::Q(_) | Family::QPrime(_) | Family::Qbar | Family::QbarPrime => {
            let d = basis.alg.clone();
            let d0 = even_algebra_of(&d);
            let k = p[0];
            let kind = match tag.family {
                Family::Q(_) => EmbedKind::Psi,
                Family::QPrime(_) => EmbedKind::PsiPrime,
                Family::Qbar => EmbedKind::PsiCheck,
                _ => EmbedKind::PsiCheckPrime,
            };
            let sols = solve_blocks(&d0, &gens(k, k), |x| vec![fixed_point_defect(kind, x, k)]);
            let elems = sols
                .into_iter()
                .map(|(par, x)| {
                    let dm = psi_inverse(kind, &x, &d, k);
                    Homogeneous { parity: par, matrix: realify(&dm, &basis) }
                })
                .collect();
            LieSpan::new(basis.space(), elems)
        }
        Family::P(_) | Family::Pbar | Family::Pstar => {
            let alg = basis.alg.clone();
            let k = p[0];
            let star = !matches!(tag.family, Family::P(_));
            // −st∘Π(X) = X, composed with σ when ι is a conjugation.
            let sols = solve_blocks(&alg, &gens(k, k), |x| {
                let y = if star { x.conj() } else { x.clone() };
                vec![st(&pi(&y, k), k).neg().sub(x)]
            });
            realify_all(sols, &basis)
        }
        Family::Osp => {
            let alg = basis.alg.clone();
            let (n, m) = (p[0] + p[1], 2 * p[2]);
            let g0 = id_pq_c(&alg, p[0], p[1]);
            let g1 = j_c(&alg, m);
            // X1ᵗId + IdX1 = 0, JX4 + X4ᵗJ = 0, X3ᵗJ + IdX2 = 0
            realify_all(solve_blocks(&alg, &gens(n, m), |x| even_form_equations(x, n, m, &g0, &g1, false)), &basis)
        }
        Family::Spo => {
            let alg = basis.alg.clone();
            let (n, m) = (2 * p[0], p[1] + p[2]);
            let g0 = j_c(&alg, n);
            let g1 = id_pq_c(&alg, p[1], p[2]);
            realify_all(solve_blocks(&alg, &gens(n, m), |x| even_form_equations(x, n, m, &g0, &g1, false)), &basis)
        }
        Family::OspC => {
            let alg = basis.alg.clone();
            let (n, m) = (p[0], 2 * p[1]);
            let g1 = j_c(&alg, m);
            // X1ᵗ + X1 = 0, JX4 + X4ᵗJ = 0, X3ᵗJ + X2 = 0
            realify_all(
                solve_blocks(&alg, &gens(n, m), |x| {
                    let x1 = x.block(0, 0, n, n);
                    let x2 = x.block(0, n, n, m);
                    let x3 = x.block(n, 0, m, n);
                    let x4 = x.block(n, n, m, m);
                    vec![x1.transpose().add(&x1), x4.lmul(&g1).add(&x4.transpose().rmul(&g1)), x3.transpose().rmul(&g1).add(&x2)]
                }),
                &basis,
            )
        }
        Family::SpoC => {
            let alg = basis.alg.clone();
            let (n, m) = (2 * p[0], p[1]);
            let g0 = j_c(&alg, n);
            let g1 = id_pq_c(&alg, m, 0);
            realify_all(solve_blocks(&alg, &gens(n, m), |x| even_form_equations(x, n, m, &g0, &g1, false)), &basis)
        }
        Family::U => {
            let alg = basis.alg.clone();
            let (n, m) = (p[0] + p[1], p[2] + p[3]);
            let g0 = id_pq_c(&alg, p[0], p[1]);
            let g1 = id_pq_c(&alg, p[2], p[3]);
            let ig1 = i_times(&alg, &g1);
            // X1*Id + IdX1 = 0, X4*Id + IdX4 = 0, iX3*Id + IdX2 = 0
            realify_all(
                solve_blocks(&alg, &gens(n, m), |x| {
                    let x1 = x.block(0, 0, n, n);
                    let x2 = x.block(0, n, n, m);
                    let x3 = x.block(n, 0, m, n);
                    let x4 = x.block(n, n, m, m);
                    vec![
                        x1.star().rmul(&g0).add(&x1.lmul(&g0)),
                        x4.star().rmul(&g1).add(&x4.lmul(&g1)),
                        x3.star().rmul(&ig1).add(&x2.lmul(&g0)),
                    ]
                }),
                &basis,
            )
        }
        Family::SpoStar => {
            let alg = basis.alg.clone();
            let (n, m) = (p[0] + p[1], p[2]);
            let g0 = id_pq_c(&alg, p[0], p[1]);
            let i = alg.basis::<Rational>(alg.index_of("i").unwrap());
            let im = const_diag(&alg, &vec![i; m]);
            // X1*Id + IdX1 = 0, X4 − iX4*i = 0, X2*Id − iX3 = 0
            realify_all(
                solve_blocks(&alg, &gens(n, m), |x| {
                    let x1 = x.block(0, 0, n, n);
                    let x2 = x.block(0, n, n, m);
                    let x3 = x.block(n, 0, m, n);
                    let x4 = x.block(n, n, m, m);
                    vec![
                        x1.star().rmul(&g0).add(&x1.lmul(&g0)),
                        x4.sub(&x4.star().lmul(&im).rmul(&im)),
                        x2.star().rmul(&g0).sub(&x3.lmul(&im)),
                    ]
                }),
                &basis,
            )
        }
        Family::OspStar => {
            let alg = basis.alg.clone();
            let (n, m) = (p[0], p[1] + p[2]);
            let i = alg.basis::<Rational>(alg.index_of("i").unwrap());
            let g0 = const_diag(&alg, &vec![i; n]);
            let g1 = id_pq_c(&alg, p[1], p[2]);
            realify_all(solve_blocks(&alg, &gens(n, m), |x| even_form_equations(x, n, m, &g0, &g1, true)), &basis)
        }
        Family::Qpq => {
            // {X + Y·ε : X* = −Id X Id, Y* = i Id Y Id} with X, Y ∈ Mat(n, C), for
            // ι₁(ε) = iε; the relation Y* = −i Id Y Id describes the ι₂ form.
            let c = Entries::C.algebra();
            let n = p[0] + p[1];
            let id = id_pq_c(&c, p[0], p[1]);
            let iid = i_times(&c, &id);
            let d = basis.alg.clone();
            let mut elems = Vec::new();
            for (alpha, eq) in [(0u8, 0usize), (1, 1)] {
                let sols = solve_blocks(&c, &gens(n, 0), |x| {
                    if eq == 0 {
                        vec![x.star().add(&x.lmul(&id).rmul(&id))]
                    } else {
                        vec![x.star().sub(&x.lmul(&iid).rmul(&id))]
                    }
                });
                for (par, x) in sols {
                    if par != 0 {
                        continue;
                    }
                    let mut dm = DMatrix::zeros(d.clone(), basis.gen_parities.clone(), basis.gen_parities.clone());
                    for r in 0..n {
                        for cc in 0..n {
                            for (k, v) in x.entries[r][cc].iter().enumerate() {
                                dm.entries[r][cc][k + 2 * alpha as usize] = v.clone();
                            }
                        }
                    }
                    elems.push(Homogeneous { parity: alpha, matrix: realify(&dm, &basis) });
                }
            }
            LieSpan::new(basis.space(), elems)
        }
    };
    Ok(span)
}

/// Reference span built from gl_D or g(W,γ) with the matching data.
pub fn reference_span(tag: &FamilyTag) -> Result<LieSpan> {
    tag.validate()?;
    let basis = library_basis(tag);
    let p = &tag.params;
    let alg = basis.alg.clone();
    let form = |inv: InvolutionTag, sign: i64, parity: Parity, shape: &[usize]| -> Result<LieSpan> {
        g_of_form(&standard_form(alg.clone(), inv, sign, parity, shape, Side::Right)?)
    };
    use InvolutionTag::*;
    match tag.family {
        Family::Gl(_) | Family::Q(_) | Family::QPrime(_) | Family::Qbar | Family::QbarPrime => Ok(gl_d(&basis)),
        Family::P(_) => form(Identity, 1, 1, &[p[0]]),
        Family::Pbar | Family::Pstar => form(Conj, 1, 1, &[p[0]]),
        Family::Osp => form(Identity, 1, 0, &[p[0], p[1], p[2]]),
        Family::Spo => form(Identity, -1, 0, &[p[0], p[1], p[2]]),
        Family::OspC => form(Identity, 1, 0, &[p[0], p[1]]),
        Family::SpoC => form(Identity, -1, 0, &[p[0], p[1]]),
        Family::U => form(Conj, 1, 0, &[p[0], p[1], p[2], p[3]]),
        Family::SpoStar => form(Conj, 1, 0, &[p[0], p[1], p[2]]),
        Family::OspStar => form(Conj, -1, 0, &[p[0], p[1], p[2]]),
        Family::Qpq => form(Iota1, 1, 0, &[p[0], p[1]]),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CrosscheckReport {
    pub tag: String,
    pub realized_dim: (usize, usize),
    pub reference_dim: (usize, usize),
    pub bracket_closed: bool,
    pub equal: bool,
}

/// Compares `realize(tag)` with the reference span (echelon equality).
pub fn crosscheck(tag: &FamilyTag) -> Result<CrosscheckReport> {
    let a = realize(tag)?;
    let b = reference_span(tag)?;
    Ok(CrosscheckReport {
        tag: tag.to_string(),
        realized_dim: a.graded_dim(),
        reference_dim: b.graded_dim(),
        bracket_closed: a.is_bracket_closed(),
        equal: a.span_eq(&b),
    })
}

/// The embeddings of the realizations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EmbedKind {
    /// ξ_t: Mat(t,C) → Mat(2t,R)
    Xi,
    /// ξ′_t: Mat(t,H) → Mat(2t,C)
    XiPrime,
    /// Ψ_n: ε² = 1, ε central
    Psi,
    /// Ψ′_n: ε² = −1, ε central
    PsiPrime,
    /// Ψ̌_n: ε² = 1, εi = −iε
    PsiCheck,
    /// Ψ̌′_n: ε² = −1, εi = −iε
    PsiCheckPrime,
}

impl FromStr for EmbedKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "xi" => Ok(EmbedKind::Xi),
            "xi-prime" => Ok(EmbedKind::XiPrime),
            "psi" => Ok(EmbedKind::Psi),
            "psi-prime" => Ok(EmbedKind::PsiPrime),
            "psi-check" => Ok(EmbedKind::PsiCheck),
            "psi-check-prime" => Ok(EmbedKind::PsiCheckPrime),
            _ => Err(Error::Parse(format!("unknown embedding `{s}`"))),
        }
    }
}

/// An embedding of matrix algebras, D-matrices in, D₀-matrices out.
#[derive(Clone, Debug)]
pub struct EmbedMap {
    pub kind: EmbedKind,
    pub size: usize,
    /// Entry algebra of the source matrices.
    pub source: Algebra,
    /// Entry algebra of the target matrices.
    pub target: Algebra,
}

/// The embedding of the given kind on size×size source matrices. For the Ψ
/// kinds `entries` selects D₀ (Ψ: R, C, H; Ψ′: R, H; Ψ̌, Ψ̌′: C); ξ and ξ′
/// ignore it.
pub fn embed_map(kind: EmbedKind, size: usize, entries: Entries) -> Result<EmbedMap> {
    if size == 0 {
        return Err(Error::InvalidParams("embedding size must be ≥ 1".into()));
    }
    let (source, target) = match kind {
        EmbedKind::Xi => (Entries::C.algebra(), Entries::R.algebra()),
        EmbedKind::XiPrime => (Entries::H.algebra(), Entries::C.algebra()),
        _ => psi_algebras(kind, entries)?,
    };
    Ok(EmbedMap { kind, size, source, target })
}

impl EmbedMap {
    /// Source matrices are ungraded for ξ, ξ′ and (n|0) over D for the Ψ kinds.
    pub fn source_zeros(&self) -> DMatrix {
        DMatrix::zeros(self.source.clone(), vec![0; self.size], vec![0; self.size])
    }

    pub fn apply(&self, m: &DMatrix) -> DMatrix {
        match self.kind {
            EmbedKind::Xi => xi(m, &self.target),
            EmbedKind::XiPrime => xi_prime(m, &self.target),
            k => psi(k, m, &self.target),
        }
    }

    pub fn target_zeros(&self) -> DMatrix {
        let n = 2 * self.size;
        match self.kind {
            EmbedKind::Xi | EmbedKind::XiPrime => DMatrix::zeros(self.target.clone(), vec![0; n], vec![0; n]),
            _ => DMatrix::zeros(self.target.clone(), gens(self.size, self.size), gens(self.size, self.size)),
        }
    }

    /// Fixed-point characterization of the image (Ψ kinds only).
    pub fn in_image(&self, x: &DMatrix) -> Option<bool> {
        match self.kind {
            EmbedKind::Xi | EmbedKind::XiPrime => None,
            k => Some(satisfies_fixed_point(k, x)),
        }
    }
}

fn two_by_two(m: &DMatrix, target: &Algebra, parities: Vec<Parity>, f: impl Fn(&DVal) -> [DVal; 4]) -> DMatrix {
    let t = m.row_parities.len();
    let mut out = DMatrix::zeros(target.clone(), parities.clone(), parities);
    for r in 0..t {
        for c in 0..t {
            let [a, b, cc, d] = f(&m.entries[r][c]);
            out.entries[r][c] = a;
            out.entries[r][t + c] = b;
            out.entries[t + r][c] = cc;
            out.entries[t + r][t + c] = d;
        }
    }
    out
}

/// ξ_t(A + iB) = (A B; −B A).
pub fn xi(m: &DMatrix, target: &Algebra) -> DMatrix {
    let t = m.row_parities.len();
    two_by_two(m, target, vec![0; 2 * t], |z| {
        let (a, b) = (z[0].clone(), z[1].clone());
        [vec![a.clone()], vec![b.clone()], vec![-b], vec![a]]
    })
}

/// ξ′_t on quaternion matrices (coordinates over 1, i, j, ij):
/// a + ib + jc + ijd ↦ (a+ib, −c−id; c−id, a−ib).
pub fn xi_prime(m: &DMatrix, target: &Algebra) -> DMatrix {
    let t = m.row_parities.len();
    two_by_two(m, target, vec![0; 2 * t], |q| {
        let (a, b, c, d) = (q[0].clone(), q[1].clone(), q[2].clone(), q[3].clone());
        [vec![a.clone(), b.clone()], vec![-c.clone(), -d.clone()], vec![c, -d], vec![a, -b]]
    })
}

/// The sign pattern (a+ib, −c+id; c+id, a−ib), which reverses products
/// when ij = −ji.
pub fn xi_prime_reversed(m: &DMatrix, target: &Algebra) -> DMatrix {
    let t = m.row_parities.len();
    two_by_two(m, target, vec![0; 2 * t], |q| {
        let (a, b, c, d) = (q[0].clone(), q[1].clone(), q[2].clone(), q[3].clone());
        [vec![a.clone(), b.clone()], vec![-c.clone(), d.clone()], vec![c, d], vec![a, -b]]
    })
}

/// Ψ-type embedding gl_D(Dⁿ) → gl(n|n, D₀): A + B·ε ↦ (A sB′; B″ A″) with the
/// sign/conjugation pattern of each kind.
pub fn psi(kind: EmbedKind, m: &DMatrix, d0: &Algebra) -> DMatrix {
    let d = &m.alg;
    let n = m.row_parities.len();
    let n0 = d.even_dim();
    let conj = conj_map(d0);
    let part = |r: usize, c: usize, odd: bool| -> DVal {
        let off = if odd { n0 } else { 0 };
        m.entries[r][c][off..off + n0].to_vec()
    };
    let neg = |v: DVal| -> DVal { v.into_iter().map(|x| -x).collect() };
    let cj = |v: DVal| -> DVal { conj.mul_vec(&v) };
    let mut out = DMatrix::zeros(d0.clone(), gens(n, n), gens(n, n));
    for r in 0..n {
        for c in 0..n {
            let (a, b) = (part(r, c, false), part(r, c, true));
            let (tl, tr, bl, br) = match kind {
                EmbedKind::Psi => (a.clone(), b.clone(), b, a),
                EmbedKind::PsiPrime => (a.clone(), b.clone(), neg(b), a),
                EmbedKind::PsiCheck => (a.clone(), b.clone(), cj(b), cj(a)),
                EmbedKind::PsiCheckPrime => (a.clone(), b.clone(), neg(cj(b)), cj(a)),
                _ => panic!("not a Ψ-type embedding"),
            };
            out.entries[r][c] = tl;
            out.entries[r][n + c] = tr;
            out.entries[n + r][c] = bl;
            out.entries[n + r][n + c] = br;
        }
    }
    out
}

/// Reads A + B·ε back from the top blocks of a Ψ-image.
fn psi_inverse(_kind: EmbedKind, x: &DMatrix, d: &Algebra, n: usize) -> DMatrix {
    let n0 = d.even_dim();
    let mut out = DMatrix::zeros(d.clone(), gens(n, 0), gens(n, 0));
    for r in 0..n {
        for c in 0..n {
            for k in 0..n0 {
                out.entries[r][c][k] = x.entries[r][c][k].clone();
                out.entries[r][c][n0 + k] = x.entries[r][n + c][k].clone();
            }
        }
    }
    out
}

/// Fixed-point defect whose kernel is the image of the embedding:
/// Π(X) − X, st∘Π∘st⁻¹(X) − X, σ∘Π(X) − X, σ∘st∘Π∘st⁻¹(X) − X.
fn fixed_point_defect(kind: EmbedKind, x: &LinMat, k: usize) -> LinMat {
    match kind {
        EmbedKind::Psi => pi(x, k).sub(x),
        EmbedKind::PsiPrime => st(&pi(&st_inv(x, k), k), k).sub(x),
        EmbedKind::PsiCheck => pi(x, k).conj().sub(x),
        EmbedKind::PsiCheckPrime => st(&pi(&st_inv(x, k), k), k).conj().sub(x),
        _ => panic!("no fixed-point characterization"),
    }
}

/// Checks that a constant D₀-matrix satisfies the fixed-point equation.
pub fn satisfies_fixed_point(kind: EmbedKind, x: &DMatrix) -> bool {
    let k = x.row_parities.len() / 2;
    let alg = x.alg.clone();
    let n = 2 * k;
    let mut lm = LinMat::zeros(&alg, n, n);
    // Encode the constant as the coefficient of a single dummy unknown.
    for r in 0..n {
        for c in 0..n {
            lm.e[r * n + c].insert(0, x.entries[r][c].clone());
        }
    }
    let d = fixed_point_defect(kind, &lm, k);
    d.e.iter().all(|m| m.values().all(|v| v.iter().all(|x| x.is_zero())))
}

/// The algebra D with ε of the kind's type and its even part D₀.
pub fn psi_algebras(kind: EmbedKind, d0: Entries) -> Result<(Algebra, Algebra)> {
    let name = match (kind, d0) {
        (EmbedKind::Psi, Entries::R) => AlgebraName::Cl7R,
        (EmbedKind::Psi, Entries::C) => AlgebraName::Cl1C,
        (EmbedKind::Psi, Entries::H) => AlgebraName::Cl3R,
        (EmbedKind::PsiPrime, Entries::R) => AlgebraName::Cl1R,
        (EmbedKind::PsiPrime, Entries::H) => AlgebraName::Cl5R,
        (EmbedKind::PsiCheck, _) => AlgebraName::Cl6R,
        (EmbedKind::PsiCheckPrime, _) => AlgebraName::Cl2R,
        _ => return Err(Error::InvalidParams(format!("no {kind:?} embedding over {d0:?}"))),
    };
    let d = make_algebra(name);
    let e0 = even_algebra_of(&d);
    Ok((d, e0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_dims() {
        let q1 = realize(&FamilyTag::new(Family::Q(Entries::R), vec![1]).unwrap()).unwrap();
        assert_eq!(q1.graded_dim(), (1, 1));
        let p1 = realize(&FamilyTag::new(Family::P(Entries::R), vec![1]).unwrap()).unwrap();
        assert_eq!(p1.graded_dim(), (1, 1));
        let q10 = realize(&FamilyTag::new(Family::Qpq, vec![1, 0]).unwrap()).unwrap();
        assert_eq!(q10.graded_dim(), (1, 1));
    }

    #[test]
    fn all_minimal_crosschecks() {
        let bad: Vec<CrosscheckReport> = FamilyTag::minimal_tags()
            .iter()
            .map(|t| crosscheck(t).unwrap())
            .filter(|r| !(r.equal && r.bracket_closed))
            .collect();
        assert!(bad.is_empty(), "{bad:#?}");
    }

    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_dm(rng: &mut ChaCha8Rng, template: &DMatrix) -> DMatrix {
        let mut m = template.clone();
        for row in m.entries.iter_mut() {
            for e in row.iter_mut() {
                for x in e.iter_mut() {
                    *x = Rational::int(rng.gen_range(-3..=3));
                }
            }
        }
        m
    }

    fn kinds() -> Vec<(EmbedKind, Entries)> {
        use EmbedKind::*;
        vec![
            (Xi, Entries::R),
            (XiPrime, Entries::R),
            (Psi, Entries::R),
            (Psi, Entries::C),
            (Psi, Entries::H),
            (PsiPrime, Entries::R),
            (PsiPrime, Entries::H),
            (PsiCheck, Entries::C),
            (PsiCheckPrime, Entries::C),
        ]
    }

    #[test]
    fn embeddings_are_injective_homomorphisms_onto_fixed_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (kind, e) in kinds() {
            for size in 1..=2 {
                let f = embed_map(kind, size, e).unwrap();
                let z = f.source_zeros();
                for _ in 0..20 {
                    let (a, b) = (random_dm(&mut rng, &z), random_dm(&mut rng, &z));
                    let lhs = f.apply(&a.mul(&b));
                    let rhs = f.apply(&a).mul(&f.apply(&b));
                    assert_eq!(lhs, rhs, "{kind:?} {e:?} not multiplicative");
                    assert_eq!(f.apply(&a.add(&b)), f.apply(&a).add(&f.apply(&b)));
                    if !a.is_zero() {
                        assert!(!f.apply(&a).is_zero());
                    }
                    if let Some(ok) = f.in_image(&f.apply(&a)) {
                        assert!(ok, "{kind:?} image not fixed");
                    }
                }
                // The image has exactly the dimension of the source.
                if f.in_image(&f.target_zeros()).is_some() {
                    let k = size;
                    let sols = solve_blocks(&f.target, &gens(k, k), |x| vec![fixed_point_defect(kind, x, k)]);
                    assert_eq!(sols.len(), f.source.dim() * size * size);
                }
            }
        }
    }

    #[test]
    fn rank_one_psi_examples() {
        let d = make_algebra(AlgebraName::Cl7R);
        let f = embed_map(EmbedKind::Psi, 1, Entries::R).unwrap();
        let mut m = f.source_zeros();
        m.entries[0][0] = vec![Rational::int(2), Rational::int(5)];
        let x = f.apply(&m);
        let flat: Vec<Rational> = x.entries.iter().flatten().flatten().cloned().collect();
        assert_eq!(flat, [2, 5, 5, 2].map(Rational::int).to_vec());
        assert_eq!(d.dim(), 2);
        let g = embed_map(EmbedKind::PsiPrime, 1, Entries::R).unwrap();
        let flat: Vec<Rational> = g.apply(&m).entries.iter().flatten().flatten().cloned().collect();
        assert_eq!(flat, [2, 5, -5, 2].map(Rational::int).to_vec());
        // Ψ̌₁(a + bε) = (a b; b̄ ā) with a = 1 + 2i, b = 3 − i.
        let h = embed_map(EmbedKind::PsiCheck, 1, Entries::C).unwrap();
        let mut m = h.source_zeros();
        m.entries[0][0] = [1, 2, 3, -1].map(Rational::int).to_vec();
        let flat: Vec<Rational> = h.apply(&m).entries.iter().flatten().flatten().cloned().collect();
        assert_eq!(flat, [1, 2, 3, -1, 3, 1, 1, -2].map(Rational::int).to_vec());
    }

    #[test]
    fn printed_quaternion_pattern_reverses_products() {
        let f = embed_map(EmbedKind::XiPrime, 1, Entries::R).unwrap();
        let h = &f.source;
        let q = |k: usize| {
            let mut m = f.source_zeros();
            m.entries[0][0] = h.basis(k);
            m
        };
        let (i, j) = (q(1), q(2));
        let rev = |m: &DMatrix| xi_prime_reversed(m, &f.target);
        assert_eq!(rev(&i.mul(&j)), rev(&j).mul(&rev(&i)));
        assert_ne!(rev(&i.mul(&j)), rev(&i).mul(&rev(&j)));
        assert_eq!(f.apply(&i.mul(&j)), f.apply(&i).mul(&f.apply(&j)));
    }

    #[test]
    fn q_is_the_supercommutant_of_omega() {
        // Π-fixed points in gl(2|2,R) = supercommutant of Ω₂ = (0 I; −I 0).
        use crate::graded::{commutant_in, gl_full};
        use crate::matrix::SuperSpace;
        let k = 2;
        let space = SuperSpace::standard(k, k, FieldTag::R);
        let mut omega = Mat::zeros(2 * k, 2 * k);
        for i in 0..k {
            omega.set(i, k + i, Rational::ONE);
            omega.set(k + i, i, -Rational::ONE);
        }
        let om = LieSpan::new(space.clone(), vec![Homogeneous { parity: 1, matrix: omega }]);
        let comm = commutant_in(&om, &gl_full(&space));
        let r = Entries::R.algebra();
        let fixed = solve_blocks(&r, &gens(k, k), |x| vec![fixed_point_defect(EmbedKind::Psi, x, k)]);
        let basis = ModuleBasis::new(r, gens(k, k), Side::Right);
        assert!(realify_all(fixed, &basis).span_eq(&comm));
    }
}
