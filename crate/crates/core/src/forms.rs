//! Superhermitian forms over division superalgebras, the Lie superalgebras
//! g(W,γ) they cut out, the adjoint ♮, and the tensor form Re(γ′⊗γ).

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::division::{superinvolutions, Algebra, EvenPart, InvolutionTag, Superinvolution};
use crate::error::{Error, Result};
use crate::graded::{gl_d, BilinearSpace, Homogeneous, LieSpan, ModuleBasis, Side};
use crate::linsolve::{kernel_of_columns, InjectiveSolver, SparseVec};
use crate::matrix::{FieldTag, Mat, Parity, SuperSpace};
use crate::scalars::{Rational, Scalar};

type DVal = Vec<Rational>;

/// A homogeneous (ι, ε)-superhermitian form on a free D-module, stored as its
/// Gram matrix on the module generators: gram[a][c] = γ(w_a, w_c).
#[derive(Clone, Debug)]
pub struct SuperhermitianForm {
    pub alg: Algebra,
    pub involution: Superinvolution,
    pub sign: i64,
    pub parity: Parity,
    pub side: Side,
    pub gen_parities: Vec<Parity>,
    pub gram: Vec<Vec<DVal>>,
}

fn odd_sign(cond: bool) -> Rational {
    if cond {
        -Rational::ONE
    } else {
        Rational::ONE
    }
}

fn scale(v: &[Rational], s: &Rational) -> DVal {
    v.iter().map(|x| x.clone() * s.clone()).collect()
}

impl SuperhermitianForm {
    pub fn basis(&self) -> ModuleBasis {
        ModuleBasis::new(self.alg.clone(), self.gen_parities.clone(), self.side)
    }

    pub fn rank(&self) -> usize {
        self.gen_parities.len()
    }

    /// γ on underlying base-field basis vectors, via the sesquilinearity law:
    /// right: γ(w_a d, w_c d') = (−1)^{|d||w_a|+|d||γ|} ι(d) G_ac d',
    /// left:  γ(d u_a, d' u_c) = (−1)^{|d'||u_c|+|d||γ|} d G_ac ι(d').
    pub fn realified(&self) -> Vec<Vec<DVal>> {
        let basis = self.basis();
        let alg = &self.alg;
        let n = basis.dim();
        let mut out = vec![vec![alg.zero::<Rational>(); n]; n];
        for (x, &(a, b)) in basis.index.iter().enumerate() {
            let db = alg.basis::<Rational>(b);
            let pb = alg.parity[b];
            for (y, &(c, e)) in basis.index.iter().enumerate() {
                let de = alg.basis::<Rational>(e);
                let pe = alg.parity[e];
                let g = &self.gram[a][c];
                out[x][y] = match self.side {
                    Side::Right => {
                        let s = odd_sign((pb & self.gen_parities[a]) ^ (pb & self.parity) == 1);
                        scale(&alg.mul(&alg.mul(&self.involution.apply(&db), g), &de), &s)
                    }
                    Side::Left => {
                        let s = odd_sign((pe & self.gen_parities[c]) ^ (pb & self.parity) == 1);
                        scale(&alg.mul(&alg.mul(&db, g), &self.involution.apply(&de)), &s)
                    }
                };
            }
        }
        out
    }

    /// Checks parity, the symmetry law on the full underlying basis, and
    /// nondegeneracy.
    pub fn validate(&self) -> Result<()> {
        let r = self.rank();
        if self.gram.len() != r || self.gram.iter().any(|row| row.len() != r) {
            return Err(Error::Dimension("Gram matrix must be square on the generators".into()));
        }
        for a in 0..r {
            for c in 0..r {
                let g = &self.gram[a][c];
                let want = (self.gen_parities[a] + self.gen_parities[c] + self.parity) % 2;
                match self.alg.parity_of(g) {
                    Some(p) if p == want || g.iter().all(|x| x.is_zero()) => {}
                    _ => return Err(Error::Incompatible("Gram entry has the wrong parity".into())),
                }
            }
        }
        let basis = self.basis();
        let gam = self.realified();
        let n = basis.dim();
        for x in 0..n {
            for y in 0..n {
                let s = odd_sign(basis.parities[x] & basis.parities[y] == 1) * Rational::int(self.sign);
                if gam[x][y] != scale(&self.involution.apply(&gam[y][x]), &s) {
                    return Err(Error::Incompatible(format!(
                        "γ is not ({}, {})-superhermitian",
                        self.involution.tag, self.sign
                    )));
                }
            }
        }
        if nondegeneracy_solver(&gam, self.alg.dim()).is_none() {
            return Err(Error::Degenerate("superhermitian form is degenerate".into()));
        }
        Ok(())
    }

    pub fn to_json(&self) -> FormJson {
        FormJson {
            algebra: self.alg.label.clone(),
            involution_tag: self.involution.tag.to_string(),
            sign: self.sign,
            parity: self.parity,
            side: self.side,
            generator_parities: self.gen_parities.clone(),
            gram: self.gram.iter().map(|r| r.iter().map(|x| x.iter().map(|v| v.to_string()).collect()).collect()).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FormJson {
    pub algebra: String,
    pub involution_tag: String,
    pub sign: i64,
    pub parity: Parity,
    pub side: Side,
    pub generator_parities: Vec<Parity>,
    pub gram: Vec<Vec<Vec<String>>>,
}

/// Solver for k ↦ (γ(k, y))_y: injective iff γ is nondegenerate.
fn nondegeneracy_solver(gam: &[Vec<DVal>], nd: usize) -> Option<InjectiveSolver<Rational>> {
    let n = gam.len();
    let cols: Vec<Vec<Rational>> =
        (0..n).map(|k| (0..n).flat_map(|y| (0..nd).map(move |d| (y, d))).map(|(y, d)| gam[k][y][d].clone()).collect()).collect();
    InjectiveSolver::new(cols)
}

/// Block-diagonal D-valued Gram matrix from blocks given as scalar matrices
/// times fixed algebra elements.
fn gram_blocks(alg: &Algebra, blocks: &[(Mat, DVal)]) -> Vec<Vec<DVal>> {
    let n: usize = blocks.iter().map(|b| b.0.rows).sum();
    let mut g = vec![vec![alg.zero::<Rational>(); n]; n];
    let mut off = 0;
    for (m, d) in blocks {
        for r in 0..m.rows {
            for c in 0..m.cols {
                let v = m.get(r, c);
                if !v.is_zero() {
                    g[off + r][off + c] = scale(d, v);
                }
            }
        }
        off += m.rows;
    }
    g
}

fn id_pq(p: usize, q: usize) -> Mat {
    crate::matrix::id_pq(p, q)
}

fn odd_pair_gram(n: usize, sign: i64) -> Mat {
    let mut m = Mat::zeros(2 * n, 2 * n);
    for i in 0..n {
        m.set(i, n + i, Rational::ONE);
        m.set(n + i, i, Rational::int(sign));
    }
    m
}

fn expect_len(shape: &[usize], k: usize) -> Result<()> {
    if shape.len() != k {
        return Err(Error::InvalidParams(format!("expected {k} shape parameters, got {}", shape.len())));
    }
    Ok(())
}

/// Canonical superhermitian forms.
///
/// Shapes by case (even forms; generators listed even block first):
/// - trivial ι on R or C, ε=+1: `[p,q,r]` (R) / `[p,r]` (C): diag(Id_{p,q}, J_{2r})
/// - trivial ι on R or C, ε=−1: `[a,b,c]` (R) / `[a,b]` (C): diag(J_{2a}, Id_{b,c})
/// - conjugation on C, ε=+1: `[p,q,r,s]`: diag(Id_{p,q}, i·Id_{r,s}); ε=−1: diag(i·Id_{p,q}, Id_{r,s})
/// - conjugation on H, ε=+1: `[p,q,r]`: diag(Id_{p,q}, i·Id_r); ε=−1: diag(i·Id_p, Id_{q,r})
/// - ι₁/ι₂ on Cl1(C), ε=+1: `[p,q]`: Id_{p,q}; ε=−1: i·Id_{p,q}
///
/// Odd forms on D with D₁ = 0 take `[n]`: generators (n|n), Gram (0 Id; ε·Id 0).
pub fn standard_form(
    alg: Algebra,
    tag: InvolutionTag,
    sign: i64,
    parity: Parity,
    shape: &[usize],
    side: Side,
) -> Result<SuperhermitianForm> {
    if sign != 1 && sign != -1 {
        return Err(Error::InvalidParams("sign must be ±1".into()));
    }
    let involution = superinvolutions(&alg)
        .into_iter()
        .find(|i| i.tag == tag)
        .ok_or_else(|| Error::Incompatible(format!("{} carries no `{tag}` superinvolution", alg.label)))?;
    let one = alg.one::<Rational>();
    let i_el = alg.index_of("i").map(|k| alg.basis::<Rational>(k));
    let incompatible = || Error::Incompatible(format!("no standard {tag} form of parity {parity} over {}", alg.label));
    let (gen_parities, gram): (Vec<Parity>, Vec<Vec<DVal>>) = if parity == 1 {
        if alg.has_odd() {
            return Err(incompatible());
        }
        expect_len(shape, 1)?;
        let n = shape[0];
        let mut gp = vec![0; n];
        gp.extend(vec![1; n]);
        (gp, gram_blocks(&alg, &[(odd_pair_gram(n, sign), one.clone())]))
    } else if alg.has_odd() {
        if !matches!(tag, InvolutionTag::Iota1 | InvolutionTag::Iota2) {
            return Err(incompatible());
        }
        expect_len(shape, 2)?;
        let d = if sign == 1 { one.clone() } else { i_el.clone().ok_or_else(incompatible)? };
        (vec![0; shape[0] + shape[1]], gram_blocks(&alg, &[(id_pq(shape[0], shape[1]), d)]))
    } else {
        let (even_block, odd_block): ((Mat, DVal), (Mat, DVal)) = match (alg.even, tag) {
            (EvenPart::H, InvolutionTag::Conj) => {
                expect_len(shape, 3)?;
                let i = i_el.clone().unwrap();
                if sign == 1 {
                    ((id_pq(shape[0], shape[1]), one.clone()), (Mat::identity(shape[2]), i))
                } else {
                    ((Mat::identity(shape[0]), i), (id_pq(shape[1], shape[2]), one.clone()))
                }
            }
            (EvenPart::C, InvolutionTag::Conj) => {
                expect_len(shape, 4)?;
                let i = i_el.clone().unwrap();
                if sign == 1 {
                    ((id_pq(shape[0], shape[1]), one.clone()), (id_pq(shape[2], shape[3]), i))
                } else {
                    ((id_pq(shape[0], shape[1]), i), (id_pq(shape[2], shape[3]), one.clone()))
                }
            }
            (_, InvolutionTag::Identity) => {
                let (a, b, c) = match (alg.even, shape.len()) {
                    (EvenPart::R, 3) if alg.base == FieldTag::R => (shape[0], shape[1], shape[2]),
                    (EvenPart::C, 2) | (EvenPart::R, 2) if alg.base == FieldTag::C || alg.even == EvenPart::C => {
                        (shape[0], 0, shape[1])
                    }
                    _ => return Err(Error::InvalidParams(format!("bad shape {shape:?} for {}", alg.label))),
                };
                if sign == 1 {
                    ((id_pq(a, b), one.clone()), (crate::matrix::j_matrix(2 * c), one.clone()))
                } else {
                    // [a,b,c] → J_{2a} on the even block, Id_{b,c} on the odd block;
                    // over C the second parameter is the odd rank.
                    let (ev, od) = if shape.len() == 3 { (a, id_pq(b, c)) } else { (a, Mat::identity(c)) };
                    ((crate::matrix::j_matrix(2 * ev), one.clone()), (od, one.clone()))
                }
            }
            _ => return Err(incompatible()),
        };
        let mut gp = vec![0; even_block.0.rows];
        gp.extend(vec![1; odd_block.0.rows]);
        (gp, gram_blocks(&alg, &[even_block, odd_block]))
    };
    let form = SuperhermitianForm { alg, involution, sign, parity, side, gen_parities, gram };
    form.validate()?;
    Ok(form)
}

/// g(W,γ) = {X ∈ gl_D(W) : γ(Xu,v) + (−1)^{|X||u|} γ(u,Xv) = 0}, realified.
pub fn g_of_form(form: &SuperhermitianForm) -> Result<LieSpan> {
    form.validate()?;
    let basis = form.basis();
    let gl = gl_d(&basis);
    Ok(preserving_subalgebra(&gl, form))
}

/// Elements of `ambient` (acting on the underlying space of `form`) that
/// are skew for γ in the super sense.
pub fn preserving_subalgebra(ambient: &LieSpan, form: &SuperhermitianForm) -> LieSpan {
    let gam = form.realified();
    let n = gam.len();
    let nd = form.alg.dim();
    let par = &ambient.space.parities;
    let mut elems = Vec::new();
    for alpha in 0..2u8 {
        let amb: Vec<&Homogeneous> = ambient.part(alpha).collect();
        let cols: Vec<SparseVec<Rational>> = amb
            .par_iter()
            .map(|h| {
                let x = &h.matrix;
                let mut col = Vec::new();
                for u in 0..n {
                    let s = odd_sign(alpha & par[u] == 1);
                    for v in 0..n {
                        let mut acc = vec![Rational::ZERO; nd];
                        for k in 0..n {
                            let xku = x.get(k, u);
                            if !xku.is_zero() {
                                for (d, g) in gam[k][v].iter().enumerate() {
                                    acc[d] += xku.clone() * g.clone();
                                }
                            }
                            let xkv = x.get(k, v);
                            if !xkv.is_zero() {
                                for (d, g) in gam[u][k].iter().enumerate() {
                                    acc[d] += s.clone() * g.clone() * xkv.clone();
                                }
                            }
                        }
                        for (d, a) in acc.into_iter().enumerate() {
                            if !a.is_zero() {
                                col.push(((u * n + v) * nd + d, a));
                            }
                        }
                    }
                }
                col
            })
            .collect();
        for c in kernel_of_columns(&cols, n * n * nd) {
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

/// The adjoint T^♮ of a homogeneous realified D-linear map:
/// γ(T^♮ w, v) = (−1)^{|T||w|} γ(w, T v).
pub fn adjoint(t: &Mat, parity: Parity, form: &SuperhermitianForm) -> Result<Mat> {
    let basis = form.basis();
    if crate::matrix::matrix_parity(t, &basis.parities, &basis.parities).is_none_or(|p| p != parity && !t.is_zero()) {
        return Err(Error::Inhomogeneous("adjoint needs a homogeneous map of the stated parity".into()));
    }
    let gam = form.realified();
    let n = gam.len();
    let nd = form.alg.dim();
    let solver = nondegeneracy_solver(&gam, nd).ok_or_else(|| Error::Degenerate("form is degenerate".into()))?;
    let mut out = Mat::zeros(n, n);
    for x in 0..n {
        let s = odd_sign(parity & basis.parities[x] == 1);
        let mut rhs = vec![Rational::ZERO; n * nd];
        for y in 0..n {
            for k in 0..n {
                let tky = t.get(k, y);
                if tky.is_zero() {
                    continue;
                }
                for d in 0..nd {
                    rhs[y * nd + d] += s.clone() * gam[x][k][d].clone() * tky.clone();
                }
            }
        }
        let col = solver.solve(&rhs).ok_or_else(|| Error::Inconsistent("adjoint equation has no solution".into()))?;
        for (k, v) in col.into_iter().enumerate() {
            out.set(k, x, v);
        }
    }
    Ok(out)
}

/// Basis bookkeeping for the realified tensor product W ⊗_D U.
#[derive(Clone, Debug)]
pub struct TensorBasis {
    /// (W generator a, algebra index b, U generator c) per basis vector of E,
    /// standing for w_a ⊗ d_b u_c.
    pub index: Vec<(usize, usize, usize)>,
    pub parities: Vec<Parity>,
}

impl TensorBasis {
    pub fn new(alg: &Algebra, w_par: &[Parity], u_par: &[Parity]) -> Self {
        let mut idx: Vec<(Parity, usize, usize, usize)> = Vec::new();
        for (a, pa) in w_par.iter().enumerate() {
            for (c, pc) in u_par.iter().enumerate() {
                for b in 0..alg.dim() {
                    idx.push(((pa + alg.parity[b] + pc) % 2, a, c, b));
                }
            }
        }
        idx.sort();
        TensorBasis { parities: idx.iter().map(|x| x.0).collect(), index: idx.iter().map(|x| (x.1, x.3, x.2)).collect() }
    }

    pub fn position(&self, a: usize, b: usize, c: usize) -> usize {
        self.index.iter().position(|&t| t == (a, b, c)).expect("tensor index")
    }
}

/// B(w₁⊗u₁, w₂⊗u₂) = (−1)^{|u₁||w₂|+|w₁||w₂|} Re(γ′(w₂,w₁) γ(u₁,u₂)) on the
/// realified W ⊗_D U, with γ′ on the right module W and γ on the left module U.
pub fn tensor_form(gw: &SuperhermitianForm, gu: &SuperhermitianForm) -> Result<(BilinearSpace, TensorBasis)> {
    if gw.side != Side::Right || gu.side != Side::Left {
        return Err(Error::Incompatible("tensor_form expects γ′ on a right module and γ on a left module".into()));
    }
    if gw.alg.label != gu.alg.label {
        return Err(Error::Incompatible("forms over different algebras".into()));
    }
    if gw.parity != gu.parity {
        return Err(Error::Incompatible("|γ| ≠ |γ′|".into()));
    }
    if gw.sign != -gu.sign {
        return Err(Error::Incompatible("γ′ must carry the opposite sign".into()));
    }
    if gw.involution.matrix != gu.involution.compose_delta(&gu.alg).matrix {
        return Err(Error::Incompatible("γ′ must be (ι∘δ)-superhermitian".into()));
    }
    gw.validate()?;
    gu.validate()?;
    let alg = gu.alg.clone();
    let tb = TensorBasis::new(&alg, &gw.gen_parities, &gu.gen_parities);
    let ub = gu.basis();
    let gam_u = gu.realified();
    let n = tb.index.len();
    let mut g = Mat::zeros(n, n);
    for (x, &(a1, b1, c1)) in tb.index.iter().enumerate() {
        let u1 = ub.pos(c1, b1);
        for (y, &(a2, b2, c2)) in tb.index.iter().enumerate() {
            let u2 = ub.pos(c2, b2);
            let (pw1, pw2) = (gw.gen_parities[a1], gw.gen_parities[a2]);
            let pu1 = ub.parities[u1];
            let prod = alg.mul(&gw.gram[a2][a1], &gam_u[u1][u2]);
            let v = alg.re_part(&prod);
            if !v.is_zero() {
                g.set(x, y, v * odd_sign(((pu1 & pw2) ^ (pw1 & pw2)) == 1));
            }
        }
    }
    let b = BilinearSpace::new(SuperSpace::new(tb.parities.clone(), alg.base), g)?;
    Ok((b, tb))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::division::{make_algebra, make_algebra_over, AlgebraName};
    use crate::matrix::j_matrix;

    #[test]
    fn standard_examples() {
        let r = make_algebra(AlgebraName::Cl0R);
        let f = standard_form(r.clone(), InvolutionTag::Identity, 1, 0, &[1, 1, 1], Side::Right).unwrap();
        assert_eq!(g_of_form(&f).unwrap().graded_dim(), (4, 4));
        let f = standard_form(r, InvolutionTag::Identity, 1, 1, &[1], Side::Right).unwrap();
        assert_eq!(g_of_form(&f).unwrap().graded_dim(), (1, 1));
        let c = make_algebra(AlgebraName::Cl0C);
        let f = standard_form(c, InvolutionTag::Conj, 1, 0, &[1, 0, 1, 0], Side::Right).unwrap();
        assert_eq!(g_of_form(&f).unwrap().dim(), 4);
        let q = make_algebra(AlgebraName::Cl1C);
        assert!(standard_form(q.clone(), InvolutionTag::Iota1, 1, 0, &[1, 1], Side::Right).is_ok());
        assert!(standard_form(q, InvolutionTag::Iota1, -1, 0, &[1, 0], Side::Left).is_ok());
        let cc = make_algebra_over(AlgebraName::Cl0C, FieldTag::C).unwrap();
        assert!(standard_form(cc, InvolutionTag::Identity, 1, 0, &[1, 1], Side::Right).is_ok());
    }

    #[test]
    fn tensor_of_rank_one() {
        let r = make_algebra(AlgebraName::Cl0R);
        let gu = standard_form(r.clone(), InvolutionTag::Identity, -1, 0, &[1, 0, 0], Side::Left).unwrap();
        let gw = standard_form(r, InvolutionTag::Identity, 1, 0, &[1, 0, 0], Side::Right).unwrap();
        let (b, _) = tensor_form(&gw, &gu).unwrap();
        assert_eq!(b.gram, j_matrix(2));
    }

    #[test]
    fn adjoint_of_scalar() {
        let r = make_algebra(AlgebraName::Cl0R);
        let f = standard_form(r, InvolutionTag::Identity, 1, 0, &[1, 0, 0], Side::Right).unwrap();
        let t = Mat::from_ints(&[&[5]]);
        assert_eq!(adjoint(&t, 0, &f).unwrap(), t);
    }
}
