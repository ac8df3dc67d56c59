//! Type I and Type II dual pairs inside spo(E,B): construction, the
//! mutual-centralizer check, module factorization E ≅ W ⊗_D U, and
//! isotypic splitting.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::division::{make_algebra_over, Algebra, AlgebraName, InvolutionTag};
use crate::error::{Error, Result};
use crate::forms::{g_of_form, standard_form, tensor_form, TensorBasis};
use rayon::prelude::*;

use crate::graded::{
    commutant_in, gl_d, gl_full, spo_ambient, supercommutant, BilinearSpace, Homogeneous, LieSpan, ModuleBasis, Side,
};
use crate::linsolve::{kernel_of_columns, nullspace, Echelon, InjectiveSolver, SparseVec};
use crate::matrix::{FieldTag, Mat, Parity, SuperSpace};
use crate::scalars::{Gaussian, Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PairType {
    I,
    II,
}

/// Where an instance came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub table: String,
    pub row: usize,
    pub algebra: String,
    pub involution: Option<String>,
    pub parity: Option<Parity>,
    pub shape_u: Vec<usize>,
    pub shape_w: Vec<usize>,
}

/// A pair (g, g′) of subalgebras of spo(E,B).
#[derive(Clone, Debug)]
pub struct DualPairInstance {
    pub e: BilinearSpace,
    pub g: LieSpan,
    pub g_prime: LieSpan,
    pub pair_type: PairType,
    pub provenance: Provenance,
    /// Basis vectors (coordinates in E) of a g-invariant copy of U.
    pub u_copy: Vec<Vec<Rational>>,
}

fn sgn(odd: bool) -> Rational {
    if odd {
        -Rational::ONE
    } else {
        Rational::ONE
    }
}

/// X′ ⊗ 1 on W ⊗_D U for a realified D-linear X′ on W.
fn embed_w(x: &Mat, wb: &ModuleBasis, tb: &TensorBasis) -> Mat {
    let n = tb.index.len();
    let mut out = Mat::zeros(n, n);
    for (col, &(a, b, c)) in tb.index.iter().enumerate() {
        let src = wb.pos(a, b);
        for (a2, b2) in wb.index.iter().copied() {
            let v = x.get(wb.pos(a2, b2), src);
            if !v.is_zero() {
                out.set(tb.position(a2, b2, c), col, v.clone());
            }
        }
    }
    out
}

/// w ⊗ u ↦ (−1)^{|X||w|} w ⊗ Xu for a realified X on the left module U.
fn embed_u(x: &Mat, parity: Parity, w_par: &[Parity], ub: &ModuleBasis, tb: &TensorBasis) -> Mat {
    let n = tb.index.len();
    let mut out = Mat::zeros(n, n);
    for (col, &(a, b, c)) in tb.index.iter().enumerate() {
        let src = ub.pos(c, b);
        let s = sgn(parity & w_par[a] == 1);
        for (c2, b2) in ub.index.iter().copied() {
            let v = x.get(ub.pos(c2, b2), src);
            if !v.is_zero() {
                out.set(tb.position(a, b2, c2), col, v.clone() * s.clone());
            }
        }
    }
    out
}

fn involution_delta_tag(alg: &Algebra, tag: InvolutionTag) -> InvolutionTag {
    if !alg.has_odd() {
        return tag;
    }
    match tag {
        InvolutionTag::Iota1 => InvolutionTag::Iota2,
        InvolutionTag::Iota2 => InvolutionTag::Iota1,
        t => t,
    }
}

/// Type I: E = W ⊗_D U with B = Re(γ′⊗γ), where γ on the left module U is
/// (ι,−1)-superhermitian and γ′ on the right module W is (ι∘δ,+1).
pub fn build_type_i(
    alg: Algebra,
    tag: InvolutionTag,
    parity: Parity,
    shape_u: &[usize],
    shape_w: &[usize],
) -> Result<DualPairInstance> {
    let gu = standard_form(alg.clone(), tag, -1, parity, shape_u, Side::Left)?;
    let gw = standard_form(alg.clone(), involution_delta_tag(&alg, tag), 1, parity, shape_w, Side::Right)?;
    if gu.rank() == 0 || gw.rank() == 0 {
        return Err(Error::Degenerate("U and W must be nonzero".into()));
    }
    build_type_i_from_forms(&gw, &gu, tag, shape_u, shape_w)
}

pub fn build_type_i_from_forms(
    gw: &crate::forms::SuperhermitianForm,
    gu: &crate::forms::SuperhermitianForm,
    tag: InvolutionTag,
    shape_u: &[usize],
    shape_w: &[usize],
) -> Result<DualPairInstance> {
    let (e, tb) = tensor_form(gw, gu)?;
    let (wb, ub) = (gw.basis(), gu.basis());
    let g_u = g_of_form(gu)?;
    let g_w = g_of_form(gw)?;
    let space = e.space.clone();
    let g = LieSpan::new(
        space.clone(),
        g_u.basis
            .iter()
            .map(|h| Homogeneous { parity: h.parity, matrix: embed_u(&h.matrix, h.parity, &gw.gen_parities, &ub, &tb) })
            .collect(),
    );
    let g_prime = LieSpan::new(
        space,
        g_w.basis.iter().map(|h| Homogeneous { parity: h.parity, matrix: embed_w(&h.matrix, &wb, &tb) }).collect(),
    );
    let w0 = gw.gen_parities.iter().position(|&p| p == 0).unwrap_or(0);
    let u_copy = unit_vectors(&tb, |a, _, _| a == w0);
    Ok(DualPairInstance {
        e,
        g,
        g_prime,
        pair_type: PairType::I,
        provenance: Provenance {
            table: String::new(),
            row: 0,
            algebra: gu.alg.label.clone(),
            involution: Some(tag.to_string()),
            parity: Some(gu.parity),
            shape_u: shape_u.to_vec(),
            shape_w: shape_w.to_vec(),
        },
        u_copy,
    })
}

fn unit_vectors(tb: &TensorBasis, keep: impl Fn(usize, usize, usize) -> bool) -> Vec<Vec<Rational>> {
    let n = tb.index.len();
    tb.index
        .iter()
        .enumerate()
        .filter(|(_, &(a, b, c))| keep(a, b, c))
        .map(|(i, _)| {
            let mut v = vec![Rational::ZERO; n];
            v[i] = Rational::ONE;
            v
        })
        .collect()
}

/// Ordering of E = T ⊕ T*: (T₀, T₀*, T₁, T₁*). Returns, for each basis
/// vector of T, its position in E and the position of its dual.
fn type_ii_layout(t_par: &[Parity]) -> (Vec<usize>, Vec<usize>, Vec<Parity>) {
    let mut pos = vec![0; t_par.len()];
    let mut dual = vec![0; t_par.len()];
    let mut parities = Vec::new();
    for p in 0..2u8 {
        let idx: Vec<usize> = (0..t_par.len()).filter(|&i| t_par[i] == p).collect();
        for &i in &idx {
            pos[i] = parities.len();
            parities.push(p);
        }
        for &i in &idx {
            dual[i] = parities.len();
            parities.push(p);
        }
    }
    (pos, dual, parities)
}

/// X on T extended to T ⊕ T* by X·f = −(−1)^{|X||f|} f∘X.
pub fn extend_to_dual(m: &Mat, parity: Parity, t_par: &[Parity]) -> Mat {
    let (pos, dual, parities) = type_ii_layout(t_par);
    let n = parities.len();
    let mut out = Mat::zeros(n, n);
    for i in 0..t_par.len() {
        for j in 0..t_par.len() {
            let v = m.get(i, j);
            if v.is_zero() {
                continue;
            }
            out.set(pos[i], pos[j], v.clone());
            // N_ji = −(−1)^{|X| p_i} M_ij acts t*_i ↦ Σ_j N_ji t*_j.
            out.set(dual[j], dual[i], -(v.clone() * sgn(parity & t_par[i] == 1)));
        }
    }
    out
}

/// The canonical form on T ⊕ T*: B(t*_i, t_j) = δ_ij, skew on even and
/// symmetric on odd vectors.
pub fn canonical_dual_form(t_par: &[Parity], field: FieldTag) -> Result<BilinearSpace> {
    let (pos, dual, parities) = type_ii_layout(t_par);
    let n = parities.len();
    let mut g = Mat::zeros(n, n);
    for i in 0..t_par.len() {
        g.set(dual[i], pos[i], Rational::ONE);
        g.set(pos[i], dual[i], if t_par[i] == 0 { -Rational::ONE } else { Rational::ONE });
    }
    BilinearSpace::new(SuperSpace::new(parities, field), g)
}

/// Type II: E = T ⊕ T* for T = W ⊗_D U, g = gl_D(U), g′ = gl_D(W).
pub fn build_type_ii(alg: Algebra, u_gens: (usize, usize), w_gens: (usize, usize)) -> Result<DualPairInstance> {
    if u_gens.0 + u_gens.1 == 0 || w_gens.0 + w_gens.1 == 0 {
        return Err(Error::Degenerate("U and W must be nonzero".into()));
    }
    let ub = ModuleBasis::standard(alg.clone(), u_gens.0, u_gens.1, Side::Left);
    let wb = ModuleBasis::standard(alg.clone(), w_gens.0, w_gens.1, Side::Right);
    let tb = TensorBasis::new(&alg, &wb.gen_parities, &ub.gen_parities);
    let e = canonical_dual_form(&tb.parities, alg.base)?;
    let space = e.space.clone();
    let g = LieSpan::new(
        space.clone(),
        gl_d(&ub)
            .basis
            .iter()
            .map(|h| {
                let t = embed_u(&h.matrix, h.parity, &wb.gen_parities, &ub, &tb);
                Homogeneous { parity: h.parity, matrix: extend_to_dual(&t, h.parity, &tb.parities) }
            })
            .collect(),
    );
    let g_prime = LieSpan::new(
        space,
        gl_d(&wb)
            .basis
            .iter()
            .map(|h| {
                let t = embed_w(&h.matrix, &wb, &tb);
                Homogeneous { parity: h.parity, matrix: extend_to_dual(&t, h.parity, &tb.parities) }
            })
            .collect(),
    );
    let (pos, _, parities) = type_ii_layout(&tb.parities);
    let n = parities.len();
    let w0 = wb.gen_parities.iter().position(|&p| p == 0).unwrap_or(0);
    let u_copy = tb
        .index
        .iter()
        .enumerate()
        .filter(|(_, &(a, _, _))| a == w0)
        .map(|(i, _)| {
            let mut v = vec![Rational::ZERO; n];
            v[pos[i]] = Rational::ONE;
            v
        })
        .collect();
    Ok(DualPairInstance {
        e,
        g,
        g_prime,
        pair_type: PairType::II,
        provenance: Provenance {
            table: String::new(),
            row: 0,
            algebra: alg.label.clone(),
            involution: None,
            parity: None,
            shape_u: vec![u_gens.0, u_gens.1],
            shape_w: vec![w_gens.0, w_gens.1],
        },
        u_copy,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PairReport {
    pub label: String,
    pub pair_type: PairType,
    pub e_dim: (usize, usize),
    pub spo_dim: (usize, usize),
    pub g_dim: (usize, usize),
    pub g_prime_dim: (usize, usize),
    pub commutant_g_dim: (usize, usize),
    pub commutant_g_prime_dim: (usize, usize),
    pub inside_spo: bool,
    pub commute: bool,
    /// C(g) = g′
    pub commutant_of_g_ok: bool,
    /// C(g′) = g, i.e. C(C(g)) = g once C(g) = g′.
    pub commutant_of_g_prime_ok: bool,
    pub centralizer_ok: bool,
    pub runtime_ms: u128,
}

/// Checks that g and g′ are each other's supercommutants in spo(E,B).
pub fn verify_dual_pair(p: &DualPairInstance) -> Result<PairReport> {
    let start = Instant::now();
    let amb = spo_ambient(&p.e)?;
    let inside_spo = amb.contains_span(&p.g) && amb.contains_span(&p.g_prime);
    let commute = p.g.basis.iter().all(|x| p.g_prime.basis.iter().all(|y| crate::graded::bracket(x, y).matrix.is_zero()));
    let (cg, cgp) = if inside_spo {
        (supercommutant(&p.g, &amb)?, supercommutant(&p.g_prime, &amb)?)
    } else {
        (LieSpan::zero(p.e.space.clone()), LieSpan::zero(p.e.space.clone()))
    };
    let a = inside_spo && cg.span_eq(&p.g_prime);
    let b = inside_spo && cgp.span_eq(&p.g);
    Ok(PairReport {
        label: label_of(&p.provenance),
        pair_type: p.pair_type,
        e_dim: p.e.space.graded_dim(),
        spo_dim: amb.graded_dim(),
        g_dim: p.g.graded_dim(),
        g_prime_dim: p.g_prime.graded_dim(),
        commutant_g_dim: cg.graded_dim(),
        commutant_g_prime_dim: cgp.graded_dim(),
        inside_spo,
        commute,
        commutant_of_g_ok: a,
        commutant_of_g_prime_ok: b,
        centralizer_ok: inside_spo && commute && a && b,
        runtime_ms: start.elapsed().as_millis(),
    })
}

pub fn label_of(p: &Provenance) -> String {
    let sh = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    format!("{}:{}:{};{}", p.table, p.row, sh(&p.shape_u), sh(&p.shape_w))
}

/// One row of the classification tables, as stored in the corpus manifest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestRow {
    pub table: String,
    pub row: usize,
    #[serde(rename = "D")]
    pub algebra: AlgebraName,
    pub base: FieldTag,
    pub involution: Option<InvolutionTag>,
    /// |γ| = |γ′| for Type I rows.
    pub parities: Option<Parity>,
    /// "U-shape;W-shape", comma separated.
    pub shapes: String,
    pub g: String,
    pub g_prime: String,
}

pub const MINIMAL_CORPUS: &str = include_str!("../data/minimal_corpus.json");

pub fn load_manifest(text: &str) -> Result<Vec<ManifestRow>> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("manifest: {e}")))
}

pub fn minimal_corpus() -> Vec<ManifestRow> {
    load_manifest(MINIMAL_CORPUS).expect("embedded manifest is valid")
}

pub fn parse_shapes(s: &str) -> Result<(Vec<usize>, Vec<usize>)> {
    let (u, w) = s.split_once(';').ok_or_else(|| Error::Parse(format!("shape `{s}` needs `U;W`")))?;
    let nums = |t: &str| -> Result<Vec<usize>> {
        t.split(',')
            .filter(|x| !x.trim().is_empty())
            .map(|x| x.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad shape entry `{x}`"))))
            .collect()
    };
    Ok((nums(u)?, nums(w)?))
}

/// Module generators (even|odd) for a Type II shape entry: `a,b` means
/// D^{a|b}; a single `a` means D^a.
fn gens(v: &[usize]) -> Result<(usize, usize)> {
    match v {
        [a] => Ok((*a, 0)),
        [a, b] => Ok((*a, *b)),
        _ => Err(Error::InvalidParams(format!("bad module shape {v:?}"))),
    }
}

/// Builds the instance for a manifest row, optionally with another shape.
pub fn build_row(row: &ManifestRow, shape: Option<&str>) -> Result<DualPairInstance> {
    let (su, sw) = parse_shapes(shape.unwrap_or(&row.shapes))?;
    let alg = make_algebra_over(row.algebra, row.base)?;
    let mut inst = if row.table.starts_with("II") {
        build_type_ii(alg, gens(&su)?, gens(&sw)?)?
    } else {
        let tag = row.involution.ok_or_else(|| Error::InvalidParams("Type I row needs an involution".into()))?;
        build_type_i(alg, tag, row.parities.unwrap_or(0), &su, &sw)?
    };
    inst.provenance.table = row.table.clone();
    inst.provenance.row = row.row;
    Ok(inst)
}

pub fn find_row(table: &str, row: usize) -> Result<ManifestRow> {
    minimal_corpus()
        .into_iter()
        .find(|r| r.table.eq_ignore_ascii_case(table) && r.row == row)
        .ok_or_else(|| Error::InvalidParams(format!("no row {row} in table {table}")))
}

/// Parity of a coordinate vector, if homogeneous and nonzero.
pub fn vector_parity(v: &[Rational], parities: &[Parity]) -> Option<Parity> {
    let mut found = None;
    for (x, &p) in v.iter().zip(parities) {
        if x.is_zero() {
            continue;
        }
        match found {
            None => found = Some(p),
            Some(q) if q != p => return None,
            _ => {}
        }
    }
    found
}

/// The smallest g-invariant subspace containing `seed`: repeatedly applies
/// every basis element of g until the span is stable.
pub fn grow_submodule(g: &LieSpan, seed: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = g.n();
    let mut ech = Echelon::new(n);
    let mut basis = Vec::new();
    let mut queue: Vec<Vec<Rational>> = seed.to_vec();
    while let Some(v) = queue.pop() {
        if !ech.push_dense(v.clone()) {
            continue;
        }
        for h in &g.basis {
            queue.push(h.matrix.mul_vec(&v));
        }
        basis.push(v);
    }
    basis
}

/// Matrices of g on an invariant subspace with basis `u` (columns).
fn restrict(g: &LieSpan, u: &[Vec<Rational>]) -> Result<Vec<Homogeneous>> {
    let solver = InjectiveSolver::new(u.to_vec())
        .ok_or_else(|| Error::Degenerate("subspace basis is linearly dependent".into()))?;
    let k = u.len();
    g.basis
        .iter()
        .map(|h| {
            let mut m = Mat::zeros(k, k);
            for (j, v) in u.iter().enumerate() {
                let img = h.matrix.mul_vec(v);
                let c = solver
                    .solve(&img)
                    .ok_or_else(|| Error::NotInvariant("subspace is not g-invariant".into()))?;
                for (i, x) in c.into_iter().enumerate() {
                    m.set(i, j, x);
                }
            }
            Ok(Homogeneous { parity: h.parity, matrix: m })
        })
        .collect()
}

/// Evaluation map W ⊗_D U → E, T ⊗ u ↦ T(u), with its bijectivity certificate.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EvaluationCertificate {
    /// dim W · dim U / dim D
    pub tensor_dim: usize,
    pub e_dim: usize,
    /// rank of {T(u)}: the map is onto iff this equals dim E
    pub image_rank: usize,
    pub bijective: bool,
}

/// E ≅ W ⊗_D U with D = End_g(U) and W = Hom_g(U, E).
#[derive(Clone, Debug)]
pub struct FactorizationResult {
    /// Basis of End_g(U) as matrices on U.
    pub d_basis: Vec<Homogeneous>,
    /// Basis of Hom_g(U, E) (dim E × dim U matrices).
    pub w_basis: Vec<Homogeneous>,
    pub u_parities: Vec<Parity>,
    pub iso_witness: EvaluationCertificate,
}

impl FactorizationResult {
    pub fn d_graded_dim(&self) -> (usize, usize) {
        graded_count(&self.d_basis)
    }

    pub fn w_graded_dim(&self) -> (usize, usize) {
        graded_count(&self.w_basis)
    }
}

fn graded_count(v: &[Homogeneous]) -> (usize, usize) {
    let odd = v.iter().filter(|h| h.parity == 1).count();
    (v.len() - odd, odd)
}

/// Checks that every nonzero homogeneous element tried is invertible: all
/// basis elements plus seeded random integer combinations of each parity.
pub fn looks_like_division(basis: &[Homogeneous], seed: u64) -> bool {
    use rand::{Rng, SeedableRng};
    if basis.iter().any(|h| h.matrix.inverse().is_err()) {
        return false;
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for p in 0..2u8 {
        let part: Vec<&Homogeneous> = basis.iter().filter(|h| h.parity == p).collect();
        if part.len() < 2 {
            continue;
        }
        for _ in 0..8 {
            let mut m = Mat::zeros(part[0].matrix.rows, part[0].matrix.cols);
            for h in &part {
                m = m.add(&h.matrix.scale(&Rational::int(rng.gen_range(-4..=4))));
            }
            if !m.is_zero() && m.inverse().is_err() {
                return false;
            }
        }
    }
    true
}

/// Signed intertwiners Hom_g(U, E): T ρ(X) = (−1)^{|T||X|} X T.
fn intertwiners(g: &LieSpan, rho: &[Homogeneous], e_par: &[Parity], u_par: &[Parity]) -> Vec<Homogeneous> {
    let (n, k) = (e_par.len(), u_par.len());
    let mut out = Vec::new();
    for alpha in 0..2u8 {
        let slots: Vec<(usize, usize)> =
            (0..n).flat_map(|e| (0..k).map(move |u| (e, u))).filter(|&(e, u)| (e_par[e] + u_par[u]) % 2 == alpha).collect();
        let cols: Vec<SparseVec<Rational>> = slots
            .par_iter()
            .map(|&(e, u)| {
                let mut col = Vec::new();
                for (b, (h, r)) in g.basis.iter().zip(rho).enumerate() {
                    let off = b * n * k;
                    // (T ρ)_{e,u'} += ρ_{u,u'}
                    for u2 in 0..k {
                        let v = r.matrix.get(u, u2);
                        if !v.is_zero() {
                            col.push((off + e * k + u2, v.clone()));
                        }
                    }
                    // −s (X T)_{e',u} with X_{e',e}
                    let s = sgn(alpha & h.parity == 1);
                    for e2 in 0..n {
                        let v = h.matrix.get(e2, e);
                        if !v.is_zero() {
                            col.push((off + e2 * k + u, -(v.clone() * s.clone())));
                        }
                    }
                }
                col.sort_by_key(|x| x.0);
                let mut merged: SparseVec<Rational> = Vec::new();
                for (i, v) in col {
                    match merged.last_mut() {
                        Some((j, w)) if *j == i => *w += v,
                        _ => merged.push((i, v)),
                    }
                }
                merged.retain(|(_, v)| !v.is_zero());
                merged
            })
            .collect();
        for c in kernel_of_columns(&cols, g.basis.len() * n * k) {
            let mut m = Mat::zeros(n, k);
            for (i, &(e, u)) in slots.iter().enumerate() {
                m.set(e, u, c[i].clone());
            }
            out.push(Homogeneous { parity: alpha, matrix: m });
        }
    }
    out
}

/// Factorizes E as W ⊗_D U from a g-invariant irreducible subspace U.
pub fn factorize(g: &LieSpan, u: &[Vec<Rational>]) -> Result<FactorizationResult> {
    let e_par = &g.space.parities;
    if u.is_empty() {
        return Err(Error::Degenerate("U is empty".into()));
    }
    let u_par: Vec<Parity> = u
        .iter()
        .map(|v| vector_parity(v, e_par).ok_or_else(|| Error::Inhomogeneous("U basis vector is not homogeneous".into())))
        .collect::<Result<_>>()?;
    let rho = restrict(g, u)?;
    for v in u {
        if grow_submodule(g, std::slice::from_ref(v)).len() != u.len() {
            return Err(Error::NotIrreducible("a basis vector of U generates a proper submodule".into()));
        }
    }
    let u_space = SuperSpace::new(u_par.clone(), g.space.field);
    let rho_span = LieSpan::new(u_space.clone(), rho.clone());
    let d = commutant_in(&rho_span, &gl_full(&u_space));
    if !looks_like_division(&d.basis, 0x5eed) {
        return Err(Error::NotIrreducible("End_g(U) is not a division superalgebra".into()));
    }
    let w = intertwiners(g, &rho, e_par, &u_par);
    let n = g.n();
    let mut ech = Echelon::new(n);
    for t in &w {
        for j in 0..u.len() {
            ech.push_dense(t.matrix.column(j));
        }
    }
    let tensor_dim = w.len() * u.len() / d.dim();
    let image_rank = ech.rank();
    let bijective = image_rank == n && tensor_dim == n && (w.len() * u.len()).is_multiple_of(d.dim());
    Ok(FactorizationResult {
        d_basis: d.basis,
        w_basis: w,
        u_parities: u_par,
        iso_witness: EvaluationCertificate {
            tensor_dim,
            e_dim: n,
            image_rank,
            bijective,
        },
    })
}

/// How B restricts to an isotypic component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BProfile {
    Nondegenerate,
    /// B vanishes on the component and pairs it nondegenerately with `partner`.
    IsotropicPaired { partner: usize },
    /// Anything else (reported, not expected for dual pairs).
    Other,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IsotypicComponent {
    pub basis: Vec<Vec<Rational>>,
    pub graded_dim: (usize, usize),
    /// Dimension over the base field of the even center acting on it.
    pub center_dim: usize,
    pub profile: BProfile,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IsotypicSplit {
    pub components: Vec<IsotypicComponent>,
    /// rank of B between components i and j
    pub pairing_ranks: Vec<Vec<usize>>,
}

/// Minimal polynomial (monic, low degree first) of a matrix via the first
/// linear dependency among its powers.
fn minimal_polynomial(z: &Mat) -> Vec<Rational> {
    let n = z.rows;
    let mut powers: Vec<Vec<Rational>> = vec![Mat::<Rational>::identity(n).data.clone()];
    let mut cur = Mat::<Rational>::identity(n);
    loop {
        cur = cur.mul(z);
        let target = cur.data.clone();
        if let Some(c) = crate::linsolve::solve(&powers, &target) {
            let mut poly: Vec<Rational> = c.into_iter().map(|x| -x).collect();
            poly.push(Rational::ONE);
            return poly;
        }
        powers.push(target);
    }
}

/// Roots of a polynomial with rational coefficients that lie in Q(i),
/// located numerically and confirmed exactly. Returns None unless every
/// root (with multiplicity one) is found.
fn gaussian_roots(poly: &[Rational]) -> Option<Vec<Gaussian>> {
    let deg = poly.len() - 1;
    if deg == 0 {
        return Some(Vec::new());
    }
    let coef: Vec<f64> = poly.iter().map(to_f64).collect();
    // Durand–Kerner on the monic polynomial.
    let mut roots: Vec<(f64, f64)> = (0..deg).map(|k| cpow((0.4, 0.9), k as u32)).collect();
    let eval = |z: (f64, f64)| {
        let mut acc = (0.0, 0.0);
        for c in coef.iter().rev() {
            acc = cmul(acc, z);
            acc.0 += c;
        }
        acc
    };
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..deg {
            let mut den = (1.0, 0.0);
            for j in 0..deg {
                if i != j {
                    den = cmul(den, (roots[i].0 - roots[j].0, roots[i].1 - roots[j].1));
                }
            }
            let step = cdiv(eval(roots[i]), den);
            roots[i] = (roots[i].0 - step.0, roots[i].1 - step.1);
            delta = delta.max(step.0.abs() + step.1.abs());
        }
        if delta < 1e-12 {
            break;
        }
    }
    let mut exact: Vec<Gaussian> = Vec::new();
    for (re, im) in roots {
        let g = Gaussian::new(rational_guess(re)?, rational_guess(im)?);
        let mut acc = Gaussian::zero();
        for c in poly.iter().rev() {
            acc = acc * g.clone() + Gaussian::new(c.clone(), Rational::ZERO);
        }
        if !acc.is_zero() || exact.contains(&g) {
            return None;
        }
        exact.push(g);
    }
    Some(exact)
}

fn to_f64(r: &Rational) -> f64 {
    let n: f64 = r.numer().to_string().parse().unwrap_or(f64::NAN);
    let d: f64 = r.denom().to_string().parse().unwrap_or(f64::NAN);
    n / d
}

/// Nearest rational with small denominator (eigenvalues of an integral
/// central element are integral, so denominators stay tiny).
fn rational_guess(x: f64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    for d in 1..=12i64 {
        let n = (x * d as f64).round();
        if (n / d as f64 - x).abs() < 1e-6 {
            return Some(Rational::new(n as i64, d));
        }
    }
    None
}

fn cmul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn cdiv(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    let n = b.0 * b.0 + b.1 * b.1;
    ((a.0 * b.0 + a.1 * b.1) / n, (a.1 * b.0 - a.0 * b.1) / n)
}

fn cpow(z: (f64, f64), k: u32) -> (f64, f64) {
    (0..k).fold((1.0, 0.0), |acc, _| cmul(acc, z))
}

/// Evaluates a real polynomial at a matrix.
fn poly_at(poly: &[Rational], z: &Mat) -> Mat {
    let n = z.rows;
    let mut acc = Mat::zeros(n, n);
    for c in poly.iter().rev() {
        acc = acc.mul(z).add(&Mat::<Rational>::identity(n).scale(c));
    }
    acc
}

/// Splits E into g-isotypic components using the even center of End_g(E):
/// a generic central element acts on each component by a scalar of Q or
/// Q(i), and the components are the kernels of the rational factors of its
/// minimal polynomial. Each component is then classified by how B
/// restricts to it.
pub fn isotypic_split(g: &LieSpan, e: &BilinearSpace) -> Result<IsotypicSplit> {
    use rand::{Rng, SeedableRng};
    let n = e.dim();
    let comm = commutant_in(g, &gl_full(&e.space));
    let even = LieSpan::new(e.space.clone(), comm.part(0).cloned().collect());
    let center = commutant_in(&comm, &even);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xC0FFEE);
    for _attempt in 0..6 {
        // Integral generic central element.
        let mut z = Mat::zeros(n, n);
        for h in &center.basis {
            z = z.add(&h.matrix.scale(&Rational::int(rng.gen_range(-5..=5))));
        }
        let den = z.data.iter().fold(num_bigint::BigInt::from(1), |acc, x| num_integer::Integer::lcm(&acc, &x.denom()));
        let z = z.scale(&Rational::from_bigint(den));
        let m = minimal_polynomial(&z);
        let Some(roots) = gaussian_roots(&m) else { continue };
        // Rational factors: (x − a) or x² − 2a x + a² + b².
        let mut factors: Vec<Vec<Rational>> = Vec::new();
        for r in &roots {
            if r.im.is_zero() {
                factors.push(vec![-r.re.clone(), Rational::ONE]);
            } else if r.im > Rational::ZERO {
                let two = Rational::int(2);
                factors.push(vec![
                    r.re.clone() * r.re.clone() + r.im.clone() * r.im.clone(),
                    -(two * r.re.clone()),
                    Rational::ONE,
                ]);
            }
        }
        let mut comps = Vec::new();
        let mut total = 0;
        for f in &factors {
            let k = nullspace(&poly_at(f, &z).row_vecs(), n);
            total += k.len();
            comps.push((k, f.len() - 1));
        }
        if total != n {
            return Err(Error::Incomplete("the action is not semisimple: components do not fill E".into()));
        }
        // Reject accidental merges: the center must act on each piece
        // through a field of the factor's degree.
        let mut ok = true;
        let mut components = Vec::new();
        for (basis, deg) in comps {
            let restricted: Vec<Mat> = center.basis.iter().map(|h| restrict_matrix(&h.matrix, &basis)).collect();
            let flat: Vec<Vec<Rational>> = restricted.iter().map(|m| m.data.clone()).collect();
            let cdim = crate::linsolve::rank(&flat, basis.len() * basis.len());
            if cdim != deg {
                ok = false;
                break;
            }
            let par: Vec<Parity> = basis.iter().filter_map(|v| vector_parity(v, &e.space.parities)).collect();
            let odd = par.iter().filter(|&&p| p == 1).count();
            components.push(IsotypicComponent {
                graded_dim: (basis.len() - odd, odd),
                basis,
                center_dim: cdim,
                profile: BProfile::Other,
            });
        }
        if !ok {
            continue;
        }
        let r = components.len();
        let pairing_ranks: Vec<Vec<usize>> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        let rows: Vec<Vec<Rational>> = components[i]
                            .basis
                            .iter()
                            .map(|u| components[j].basis.iter().map(|v| e.eval(u, v)).collect())
                            .collect();
                        crate::linsolve::rank(&rows, components[j].basis.len())
                    })
                    .collect()
            })
            .collect();
        for i in 0..r {
            let d = components[i].basis.len();
            components[i].profile = if pairing_ranks[i][i] == d {
                BProfile::Nondegenerate
            } else if pairing_ranks[i][i] == 0 {
                let partners: Vec<usize> = (0..r).filter(|&j| j != i && pairing_ranks[i][j] > 0).collect();
                match partners.as_slice() {
                    [j] if pairing_ranks[i][*j] == d && components[*j].basis.len() == d => {
                        BProfile::IsotropicPaired { partner: *j }
                    }
                    _ => BProfile::Other,
                }
            } else {
                BProfile::Other
            };
        }
        return Ok(IsotypicSplit { components, pairing_ranks });
    }
    Err(Error::Incomplete("could not split the center of the commutant over Q(i)".into()))
}

/// Matrix of an operator on an invariant subspace with basis `basis`.
fn restrict_matrix(m: &Mat, basis: &[Vec<Rational>]) -> Mat {
    let solver = InjectiveSolver::new(basis.to_vec()).expect("independent basis");
    let k = basis.len();
    let mut out = Mat::zeros(k, k);
    for (j, v) in basis.iter().enumerate() {
        let c = solver.solve(&m.mul_vec(v)).expect("invariant subspace");
        for (i, x) in c.into_iter().enumerate() {
            out.set(i, j, x);
        }
    }
    out
}

/// Orthogonal direct sum of two instances: E = E₁ ⊕ E₂ with g = g₁ ⊕ g₂ and
/// g′ = g′₁ ⊕ g′₂ acting blockwise.
pub fn direct_sum(a: &DualPairInstance, b: &DualPairInstance) -> Result<DualPairInstance> {
    if a.e.space.field != b.e.space.field {
        return Err(Error::Incompatible("instances over different fields".into()));
    }
    let mut par = a.e.space.parities.clone();
    par.extend(b.e.space.parities.iter().copied());
    let space = SuperSpace::new(par, a.e.space.field);
    let e = BilinearSpace::new(space.clone(), Mat::block_diag(&[a.e.gram.clone(), b.e.gram.clone()]))?;
    let (na, nb) = (a.e.dim(), b.e.dim());
    let lift = |x: &LieSpan, y: &LieSpan| {
        let mut elems: Vec<Homogeneous> = x
            .basis
            .iter()
            .map(|h| Homogeneous { parity: h.parity, matrix: Mat::block_diag(&[h.matrix.clone(), Mat::zeros(nb, nb)]) })
            .collect();
        elems.extend(
            y.basis
                .iter()
                .map(|h| Homogeneous { parity: h.parity, matrix: Mat::block_diag(&[Mat::zeros(na, na), h.matrix.clone()]) }),
        );
        LieSpan::new(space.clone(), elems)
    };
    let u_copy = a
        .u_copy
        .iter()
        .map(|v| {
            let mut w = v.clone();
            w.extend(vec![Rational::ZERO; nb]);
            w
        })
        .collect();
    Ok(DualPairInstance {
        g: lift(&a.g, &b.g),
        g_prime: lift(&a.g_prime, &b.g_prime),
        e,
        pair_type: a.pair_type,
        provenance: a.provenance.clone(),
        u_copy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn corpus(table: &str, row: usize) -> DualPairInstance {
        build_row(&find_row(table, row).unwrap(), None).unwrap()
    }

    #[test]
    fn minimal_corpus_rows_are_dual_pairs() {
        for row in minimal_corpus() {
            let p = build_row(&row, None).unwrap();
            let r = verify_dual_pair(&p).unwrap();
            assert!(r.centralizer_ok, "{r:?}");
        }
    }

    #[test]
    fn spo_on_its_natural_module() {
        let e = BilinearSpace::new(
            SuperSpace::standard(2, 1, FieldTag::R),
            Mat::from_ints(&[&[0, 1, 0], &[-1, 0, 0], &[0, 0, 1]]),
        )
        .unwrap();
        let g = spo_ambient(&e).unwrap();
        let u: Vec<Vec<Rational>> = Mat::<Rational>::identity(3).row_vecs();
        let f = factorize(&g, &u).unwrap();
        assert_eq!(f.d_basis.len(), 1);
        assert_eq!(f.w_basis.len(), 1);
        assert!(f.iso_witness.bijective);
    }

    #[test]
    fn factorize_recovers_type_i_data() {
        for (t, r) in [("I", 1), ("I", 3), ("I", 5), ("I", 7), ("I", 9), ("IC", 1)] {
            let p = corpus(t, r);
            let f = factorize(&p.g, &p.u_copy).unwrap();
            let m = find_row(t, r).unwrap();
            let alg = make_algebra_over(m.algebra, m.base).unwrap().dim();
            assert_eq!(f.d_basis.len(), alg, "{t}{r}: D");
            // W realified: dim E / dim U · dim D.
            assert_eq!(f.w_basis.len() * p.u_copy.len(), p.e.dim() * alg, "{t}{r}: W");
            assert!(f.iso_witness.bijective);
        }
    }

    #[test]
    fn factorize_rejects_non_invariant_line() {
        let p = corpus("I", 1);
        let mut v = vec![Rational::ZERO; p.e.dim()];
        v[0] = Rational::ONE;
        assert!(matches!(factorize(&p.g, &[v]), Err(Error::NotInvariant(_))));
    }

    #[test]
    fn isotypic_profiles() {
        let p = corpus("I", 3);
        let s = isotypic_split(&p.g, &p.e).unwrap();
        assert_eq!(s.components.len(), 1);
        assert_eq!(s.components[0].profile, BProfile::Nondegenerate);

        let q = corpus("II", 1);
        let s = isotypic_split(&q.g, &q.e).unwrap();
        assert_eq!(s.components.len(), 2);
        assert_eq!(s.components[0].profile, BProfile::IsotropicPaired { partner: 1 });
        assert_eq!(s.components[1].profile, BProfile::IsotropicPaired { partner: 0 });

        let d = direct_sum(&corpus("I", 1), &corpus("I", 2)).unwrap();
        let s = isotypic_split(&d.g, &d.e).unwrap();
        assert_eq!(s.components.len(), 2);
        assert!(s.components.iter().all(|c| c.profile == BProfile::Nondegenerate));
        assert_eq!(s.pairing_ranks[0][1], 0);
    }
}

/// Lifts an even operator on the realified U of a Type I instance to E
/// (acting as 1 ⊗ x).
pub fn type_i_u_operator(
    alg: Algebra,
    tag: InvolutionTag,
    parity: Parity,
    shape_u: &[usize],
    shape_w: &[usize],
    x: &Mat,
) -> Result<Mat> {
    let gu = standard_form(alg.clone(), tag, -1, parity, shape_u, Side::Left)?;
    let gw = standard_form(alg.clone(), involution_delta_tag(&alg, tag), 1, parity, shape_w, Side::Right)?;
    let (wb, ub) = (gw.basis(), gu.basis());
    if x.rows != ub.dim() || x.cols != ub.dim() {
        return Err(Error::Dimension("operator does not act on U".into()));
    }
    let tb = TensorBasis::new(&alg, &wb.gen_parities, &ub.gen_parities);
    Ok(embed_u(x, 0, &wb.gen_parities, &ub, &tb))
}

/// Which factor of a Type II instance an operator acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Factor {
    U,
    W,
}

/// Lifts an even invertible D-linear operator on U or W of a Type II
/// instance to E = T ⊕ T*, acting contragrediently on T*.
pub fn type_ii_group_operator(
    alg: Algebra,
    u_gens: (usize, usize),
    w_gens: (usize, usize),
    factor: Factor,
    x: &Mat,
) -> Result<Mat> {
    let ub = ModuleBasis::standard(alg.clone(), u_gens.0, u_gens.1, Side::Left);
    let wb = ModuleBasis::standard(alg.clone(), w_gens.0, w_gens.1, Side::Right);
    let tb = TensorBasis::new(&alg, &wb.gen_parities, &ub.gen_parities);
    let t = match factor {
        Factor::U => embed_u(x, 0, &wb.gen_parities, &ub, &tb),
        Factor::W => embed_w(x, &wb, &tb),
    };
    let tinv = t.inverse()?;
    let (pos, dual, parities) = type_ii_layout(&tb.parities);
    let n = parities.len();
    let mut out = Mat::zeros(n, n);
    for i in 0..t.rows {
        for j in 0..t.cols {
            out.set(pos[i], pos[j], t.get(i, j).clone());
            // g·t*_i = Σ_k (g⁻¹)_{ik} t*_k
            out.set(dual[j], dual[i], tinv.get(i, j).clone());
        }
    }
    Ok(out)
}
