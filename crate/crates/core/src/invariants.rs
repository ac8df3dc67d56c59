//! Degree-bounded invariants of WC(E,B) under a Harish-Chandra pair, the
//! subalgebra generated by β(g′), the double commutant comparison, and the
//! desk-scale Howe decomposition of S(C^{k|l} ⊗ C^{2n|1}).

use std::collections::HashMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::division::{make_algebra_over, AlgebraName, InvolutionTag};
use crate::dual_pairs::{build_type_i, build_type_ii, type_i_u_operator, type_ii_group_operator, DualPairInstance, Factor};
use crate::forms::standard_form;
use crate::error::{Error, Result};
use crate::graded::{commutant_in, form_algebra, gl_full, spo_ambient, BilinearSpace, Homogeneous, LieSpan, Side};
use crate::linsolve::{kernel_of_columns, rank, Echelon, SparseVec};
use crate::matrix::{FieldTag, Mat, Parity, SuperSpace};
use crate::scalars::{Rational, Scalar};
use crate::wc::{beta, group_act, monomials_of_degree, wc_algebra, FockBasis, GroupElement, Mono, Wc, WcElement};

/// Default cap on the number of monomials in one linear solve.
pub const DEFAULT_GUARD: usize = 20_000;

/// (G, g): the superalgebra, its even part, and representatives of the
/// components of G beyond the identity component.
#[derive(Clone, Debug)]
pub struct HCPair {
    pub g0_generators: LieSpan,
    pub g_full: LieSpan,
    pub component_reps: Vec<GroupElement>,
}

impl HCPair {
    pub fn new(g_full: LieSpan, component_reps: Vec<GroupElement>) -> Result<Self> {
        for c in &component_reps {
            let inv = c.matrix.inverse()?;
            for h in &g_full.basis {
                if !g_full.contains(&c.matrix.mul(&h.matrix).mul(&inv)) {
                    return Err(Error::NotInvariant(format!("component representative `{}` does not normalize g", c.tag)));
                }
            }
        }
        let g0 = LieSpan::new(g_full.space.clone(), g_full.part(0).cloned().collect());
        Ok(HCPair { g0_generators: g0, g_full, component_reps })
    }

    /// The connected case: no component representatives.
    pub fn connected(g_full: LieSpan) -> Self {
        HCPair::new(g_full, Vec::new()).expect("no representatives to check")
    }
}

/// Normal-ordered monomials of degree ≤ d, lowest degree first.
pub fn monomials_up_to(parities: &[Parity], d: usize, guard: usize) -> Result<Vec<Mono>> {
    let mut out = Vec::new();
    for k in 0..=d {
        out.extend(monomials_of_degree(parities, k));
        if out.len() > guard {
            return Err(Error::Resource(format!("more than {guard} monomials up to degree {k}")));
        }
    }
    Ok(out)
}

fn degree(m: &Mono) -> usize {
    m.iter().map(|&k| k as usize).sum()
}

/// A basis of a subspace of WC_d (rows over `monos`), with per-filtration dims.
#[derive(Clone, Debug)]
pub struct FilteredSpan {
    pub monos: Vec<Mono>,
    pub vectors: Vec<Vec<Rational>>,
}

impl FilteredSpan {
    /// dim (span ∩ WC_k)
    pub fn dim_upto(&self, k: usize) -> usize {
        let high: Vec<usize> = (0..self.monos.len()).filter(|&i| degree(&self.monos[i]) > k).collect();
        let proj: Vec<Vec<Rational>> = self.vectors.iter().map(|v| high.iter().map(|&i| v[i].clone()).collect()).collect();
        self.vectors.len() - rank(&proj, high.len())
    }

    pub fn elements(&self, alg: &Wc) -> Vec<WcElement> {
        self.vectors
            .iter()
            .map(|v| {
                let mut e = WcElement::zero(alg);
                for (i, c) in v.iter().enumerate() {
                    if !c.is_zero() {
                        e = e.add(&WcElement::monomial(alg, self.monos[i].clone(), c.clone()));
                    }
                }
                e
            })
            .collect()
    }

    pub fn contains_span(&self, other: &FilteredSpan) -> bool {
        let n = self.monos.len();
        let mut ech = Echelon::new(n);
        for v in &self.vectors {
            ech.push_dense(v.clone());
        }
        other.vectors.iter().all(|v| ech.contains(v))
    }
}

fn coords(e: &WcElement, index: &HashMap<Mono, usize>, n: usize) -> Option<Vec<Rational>> {
    let mut v = vec![Rational::ZERO; n];
    for (m, c) in &e.terms {
        v[*index.get(m)?] = c.clone();
    }
    Some(v)
}

/// WC_d^G: elements of degree ≤ d killed by ad β(X) for X ∈ g and fixed by
/// every component representative.
pub fn wc_invariants(pair: &HCPair, alg: &Wc, d: usize, guard: usize) -> Result<FilteredSpan> {
    let monos = monomials_up_to(&alg.e.space.parities, d, guard)?;
    let index: HashMap<Mono, usize> = monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let n = monos.len();
    let betas: Vec<WcElement> = pair.g_full.basis.iter().map(|h| beta(alg, &h.matrix)).collect::<Result<_>>()?;
    let blocks = betas.len() + pair.component_reps.len();
    let cols: Vec<SparseVec<Rational>> = monos
        .par_iter()
        .map(|m| {
            let x = WcElement::monomial(alg, m.clone(), Rational::ONE);
            let mut col = Vec::new();
            let mut push = |b: usize, e: &WcElement| {
                for (mm, c) in &e.terms {
                    col.push((b * n + index[mm], c.clone()));
                }
            };
            for (b, bx) in betas.iter().enumerate() {
                push(b, &bx.bracket(&x));
            }
            for (r, c) in pair.component_reps.iter().enumerate() {
                push(betas.len() + r, &group_act(c, &x).sub(&x));
            }
            col.sort_by_key(|e| e.0);
            col
        })
        .collect();
    let vectors = kernel_of_columns(&cols, blocks * n);
    Ok(FilteredSpan { monos, vectors })
}

/// ⟨β(g′)⟩ ∩ WC_d: products of at most K factors β(X′), intersected with
/// WC_d, with K increased until the intersection is stable.
pub fn generated_span(gprime: &LieSpan, alg: &Wc, d: usize, guard: usize) -> Result<(FilteredSpan, bool)> {
    let gens: Vec<WcElement> = gprime.basis.iter().map(|h| beta(alg, &h.matrix)).collect::<Result<_>>()?;
    let k0 = (d / 2).max(1);
    let mut level: Vec<WcElement> = vec![WcElement::one(alg)];
    let mut frontier = level.clone();
    let mut prev_dim = None;
    let mut result = None;
    for k in 1..=k0 + 2 {
        // Products with one more factor.
        let new: Vec<WcElement> = frontier.par_iter().flat_map_iter(|p| gens.iter().map(move |g| p.mul(g))).collect();
        level.extend(new.iter().cloned());
        let monos = monomials_up_to(&alg.e.space.parities, 2 * k, guard)?;
        let index: HashMap<Mono, usize> = monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let n = monos.len();
        let mut ech = Echelon::new(n);
        let mut kept = Vec::new();
        for e in &level {
            let v = coords(e, &index, n).ok_or_else(|| Error::Inconsistent("product left the filtration".into()))?;
            if ech.push_dense(v.clone()) {
                kept.push(v);
            }
        }
        // Keep only the independent products for the next round.
        frontier = new;
        // Intersect with WC_d: combinations with zero high-degree part.
        let high: Vec<usize> = (0..n).filter(|&i| degree(&monos[i]) > d).collect();
        let low: Vec<usize> = (0..n).filter(|&i| degree(&monos[i]) <= d).collect();
        let cols: Vec<SparseVec<Rational>> = kept
            .iter()
            .map(|v| high.iter().enumerate().filter(|(_, &i)| !v[i].is_zero()).map(|(r, &i)| (r, v[i].clone())).collect())
            .collect();
        let mut inter = Vec::new();
        for c in kernel_of_columns(&cols, high.len()) {
            let mut w = vec![Rational::ZERO; low.len()];
            for (j, v) in kept.iter().enumerate() {
                if c[j].is_zero() {
                    continue;
                }
                for (r, &i) in low.iter().enumerate() {
                    w[r] += c[j].clone() * v[i].clone();
                }
            }
            inter.push(w);
        }
        let low_monos: Vec<Mono> = low.iter().map(|&i| monos[i].clone()).collect();
        let dim = crate::linsolve::canonical_basis(&inter, low_monos.len()).len();
        let span = FilteredSpan { vectors: crate::linsolve::canonical_basis(&inter, low_monos.len()), monos: low_monos };
        if k >= k0 && prev_dim == Some(dim) {
            return Ok((span, true));
        }
        prev_dim = Some(dim);
        result = Some(span);
        // Prune the frontier to an independent set to keep products small.
        let mut fe = Echelon::new(n);
        frontier.retain(|e| fe.push_dense(coords(e, &index, n).unwrap()));
    }
    Ok((result.expect("at least one round"), false))
}

/// Re-expresses a span over a different monomial list (same WC algebra).
fn reindex(span: &FilteredSpan, monos: &[Mono]) -> FilteredSpan {
    let index: HashMap<&Mono, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let vectors = span
        .vectors
        .iter()
        .map(|v| {
            let mut w = vec![Rational::ZERO; monos.len()];
            for (i, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    w[index[&span.monos[i]]] = c.clone();
                }
            }
            w
        })
        .collect();
    FilteredSpan { monos: monos.to_vec(), vectors }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DegreeRow {
    pub d: usize,
    pub dim_invariants: usize,
    pub dim_generated: usize,
    pub equal: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InvariantReport {
    pub max_degree: usize,
    pub field: FieldTag,
    pub complexified: bool,
    pub per_degree: Vec<DegreeRow>,
    /// ⟨β(g′)⟩ ∩ WC_d ⊆ WC_d^G (always expected)
    pub generated_inside_invariants: bool,
    pub saturated: bool,
    pub findings: Vec<String>,
    pub runtime_ms: u128,
}

impl InvariantReport {
    pub fn all_equal(&self) -> bool {
        self.generated_inside_invariants && self.per_degree.iter().all(|r| r.equal)
    }
}

/// The same pair with scalars extended to C (the rational coordinates are
/// a Q-form of both the real and the complex space).
pub fn complexify(p: &DualPairInstance) -> DualPairInstance {
    let mut q = p.clone();
    let space = SuperSpace::new(p.e.space.parities.clone(), FieldTag::C);
    q.e.space = space.clone();
    q.g.space = space.clone();
    q.g_prime.space = space;
    q
}

/// Compares WC_d^G with ⟨β(g′)⟩ ∩ WC_d degree by degree. Real instances are
/// complexified first; `component_reps` are representatives for the
/// complex group.
pub fn double_commutant_check(
    instance: &DualPairInstance,
    component_reps: Vec<GroupElement>,
    d: usize,
    guard: usize,
) -> Result<InvariantReport> {
    let start = Instant::now();
    let complexified = instance.e.space.field == FieldTag::R;
    let inst = if complexified { complexify(instance) } else { instance.clone() };
    let alg = wc_algebra(&inst.e)?;
    let pair = HCPair::new(inst.g.clone(), component_reps)?;
    let inv = wc_invariants(&pair, &alg, d, guard)?;
    let (gen, saturated) = generated_span(&inst.g_prime, &alg, d, guard)?;
    let gen = reindex(&gen, &inv.monos);
    let inside = inv.contains_span(&gen);
    let mut findings = Vec::new();
    if !inside {
        findings.push("generated span is not contained in the invariants".into());
    }
    if !saturated {
        findings.push("generation did not stabilize within the product bound".into());
    }
    let per_degree: Vec<DegreeRow> = (0..=d)
        .map(|k| {
            let (a, b) = (inv.dim_upto(k), gen.dim_upto(k));
            DegreeRow { d: k, dim_invariants: a, dim_generated: b, equal: a == b }
        })
        .collect();
    for r in per_degree.iter().filter(|r| !r.equal) {
        findings.push(format!("degree {}: {} invariants vs {} generated", r.d, r.dim_invariants, r.dim_generated));
    }
    Ok(InvariantReport {
        max_degree: d,
        field: inst.e.space.field,
        complexified,
        per_degree,
        generated_inside_invariants: inside,
        saturated,
        findings,
        runtime_ms: start.elapsed().as_millis(),
    })
}

/// Howe setting: E = W ⊗ U with U = C^{2n|1} (spo form) and W = C^{2k|2l}
/// = X ⊕ X* (split supersymmetric form), V = X ⊗ U maximal isotropic.
#[derive(Clone, Debug)]
pub struct HoweSetup {
    pub e: BilinearSpace,
    /// spo(2n|1) acting as 1 ⊗ X
    pub g: LieSpan,
    /// osp(2k|2l) acting as X′ ⊗ 1
    pub g_prime: LieSpan,
    pub v_slots: Vec<usize>,
    pub dual_slots: Vec<usize>,
    /// weight of each slot under the grading element (+1 on V, −1 on V*)
    pub slot_weight: Vec<i64>,
}

pub fn howe_setup(n: usize, k: usize, l: usize) -> Result<HoweSetup> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidParams("need n, k ≥ 1".into()));
    }
    // U = C^{2n|1}: J_{2n} ⊕ (1).
    let mut up = vec![0u8; 2 * n];
    up.push(1);
    let gu = Mat::block_diag(&[crate::matrix::j_matrix(2 * n), Mat::<Rational>::identity(1)]);
    // W = X ⊕ X*: order x, x*, ξ, ξ*; symmetric on even, skew on odd.
    let mut wp = vec![0u8; 2 * k];
    wp.extend(vec![1u8; 2 * l]);
    let mut gw = Mat::zeros(2 * k + 2 * l, 2 * k + 2 * l);
    for i in 0..k {
        gw.set(i, k + i, Rational::ONE);
        gw.set(k + i, i, Rational::ONE);
    }
    for i in 0..l {
        let (a, b) = (2 * k + i, 2 * k + l + i);
        gw.set(a, b, Rational::ONE);
        gw.set(b, a, -Rational::ONE);
    }
    let in_x = |w: usize| w < k || (w >= 2 * k && w < 2 * k + l);
    // E basis: (V₀, V₀*, V₁, V₁*).
    let pairs: Vec<(usize, usize)> = (0..wp.len()).flat_map(|w| (0..up.len()).map(move |u| (w, u))).collect();
    let par = |&(w, u): &(usize, usize)| (wp[w] + up[u]) % 2;
    let mut order: Vec<(usize, usize)> = Vec::new();
    for p in 0..2u8 {
        order.extend(pairs.iter().filter(|x| par(x) == p && in_x(x.0)));
        order.extend(pairs.iter().filter(|x| par(x) == p && !in_x(x.0)));
    }
    let dim = order.len();
    let parities: Vec<Parity> = order.iter().map(par).collect();
    let pos: HashMap<(usize, usize), usize> = order.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let gram = Mat::from_fn(dim, dim, |r, c| {
        let ((w, u), (w2, u2)) = (order[r], order[c]);
        let v = gw.get(w, w2).clone() * gu.get(u, u2).clone();
        if up[u] & wp[w2] == 1 {
            -v
        } else {
            v
        }
    });
    let e = BilinearSpace::new(SuperSpace::new(parities.clone(), FieldTag::C), gram)?;
    let u_form = BilinearSpace::new(SuperSpace::new(up.clone(), FieldTag::C), gu)?;
    let spo_u = spo_ambient(&u_form)?;
    let osp_w = form_algebra(&SuperSpace::new(wp.clone(), FieldTag::C), &gw);
    let lift_u = |h: &Homogeneous| {
        let mut m = Mat::zeros(dim, dim);
        for (col, &(w, u)) in order.iter().enumerate() {
            for u2 in 0..up.len() {
                let v = h.matrix.get(u2, u);
                if !v.is_zero() {
                    let s = if h.parity & wp[w] == 1 { -v.clone() } else { v.clone() };
                    m.set(pos[&(w, u2)], col, s);
                }
            }
        }
        Homogeneous { parity: h.parity, matrix: m }
    };
    let lift_w = |h: &Homogeneous| {
        let mut m = Mat::zeros(dim, dim);
        for (col, &(w, u)) in order.iter().enumerate() {
            for w2 in 0..wp.len() {
                let v = h.matrix.get(w2, w);
                if !v.is_zero() {
                    m.set(pos[&(w2, u)], col, v.clone());
                }
            }
        }
        Homogeneous { parity: h.parity, matrix: m }
    };
    let g = LieSpan::new(e.space.clone(), spo_u.basis.iter().map(lift_u).collect());
    let g_prime = LieSpan::new(e.space.clone(), osp_w.basis.iter().map(lift_w).collect());
    let amb = spo_ambient(&e)?;
    if !amb.contains_span(&g) || !amb.contains_span(&g_prime) {
        return Err(Error::Inconsistent("Howe embeddings leave spo(E,B)".into()));
    }
    let v_slots: Vec<usize> = (0..dim).filter(|&i| in_x(order[i].0)).collect();
    let dual_slots: Vec<usize> = (0..dim).filter(|&i| !in_x(order[i].0)).collect();
    let slot_weight = (0..dim).map(|i| if in_x(order[i].0) { 1 } else { -1 }).collect();
    Ok(HoweSetup { e, g, g_prime, v_slots, dual_slots, slot_weight })
}

/// Keeps the terms with as many V factors as V* factors.
pub fn degree_preserving_part(a: &WcElement, slot_weight: &[i64]) -> WcElement {
    let mut out = WcElement::zero(&a.alg);
    for (m, c) in &a.terms {
        let w: i64 = m.iter().zip(slot_weight).map(|(&k, &s)| k as i64 * s).sum();
        if w == 0 {
            out = out.add(&WcElement::monomial(&a.alg, m.clone(), c.clone()));
        }
    }
    out
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HoweDegree {
    pub d: usize,
    pub dim: usize,
    pub expected_dim: usize,
    /// dim End_g(S^d)
    pub commutant_dim: usize,
    /// dim of the image of degree-preserving ⟨β(g′)⟩ on S^d
    pub generated_image_dim: usize,
    pub commutant_equals_image: bool,
    pub irreducible: bool,
    /// per-dimension traces of the degree-preserving β(X′) on S^d
    pub fingerprint: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HoweReport {
    pub n: usize,
    pub k: usize,
    pub l: usize,
    pub max_degree: usize,
    pub g_dim: (usize, usize),
    pub g_prime_dim: (usize, usize),
    pub per_degree: Vec<HoweDegree>,
    pub fingerprints_distinct: bool,
    pub findings: Vec<String>,
    pub runtime_ms: u128,
}

impl HoweReport {
    pub fn all_pass(&self) -> bool {
        self.fingerprints_distinct
            && self.per_degree.iter().all(|r| r.dim == r.expected_dim && r.commutant_equals_image)
    }
}

/// Σ_b C(dim V₁, b)·C(dim V₀ + d − b − 1, d − b)
pub fn sym_dim(v0: usize, v1: usize, d: usize) -> usize {
    fn binom(n: i64, k: i64) -> usize {
        if k < 0 || n < 0 || k > n {
            return 0;
        }
        (0..k).fold(1usize, |acc, i| acc * (n - i) as usize / (i + 1) as usize)
    }
    (0..=d.min(v1))
        .map(|b| {
            let rest = (d - b) as i64;
            let even = if v0 == 0 { usize::from(rest == 0) } else { binom(v0 as i64 + rest - 1, rest) };
            binom(v1 as i64, b as i64) * even
        })
        .sum()
}

fn block(m: &Mat, idx: &[usize]) -> Mat {
    Mat::from_fn(idx.len(), idx.len(), |r, c| m.get(idx[r], idx[c]).clone())
}

/// Desk-scale Howe duality for (spo(2n|1), osp(2k|2l)) on S^{≤d}(V).
pub fn howe_decompose(n: usize, k: usize, l: usize, d: usize, guard: usize) -> Result<HoweReport> {
    let start = Instant::now();
    if d == 0 {
        return Err(Error::InvalidParams("need d ≥ 1".into()));
    }
    let setup = howe_setup(n, k, l)?;
    let alg = wc_algebra(&setup.e)?;
    // End_g(S^d) needs products reaching WC degree 2d.
    let gen_degree = 2 * d;
    let fock = FockBasis::new(&setup.e, setup.v_slots.clone(), setup.dual_slots.clone(), d + gen_degree / 2 + 1)?;
    if fock.dim() > guard {
        return Err(Error::Resource(format!("Fock window of dimension {} exceeds the guard", fock.dim())));
    }
    let v0 = fock.v_parities.iter().filter(|&&p| p == 0).count();
    let v1 = fock.v_parities.len() - v0;
    let g_ops: Vec<(Parity, Mat)> = setup
        .g
        .basis
        .iter()
        .map(|h| Ok((h.parity, fock.act(&beta(&alg, &h.matrix)?))))
        .collect::<Result<_>>()?;
    let (gen, saturated) = generated_span(&setup.g_prime, &alg, gen_degree, guard)?;
    let gen_ops: Vec<Mat> = gen
        .elements(&alg)
        .iter()
        .map(|e| fock.act(&degree_preserving_part(e, &setup.slot_weight)))
        .collect();
    let gp_ops: Vec<Mat> = setup
        .g_prime
        .basis
        .iter()
        .map(|h| Ok(fock.act(&degree_preserving_part(&beta(&alg, &h.matrix)?, &setup.slot_weight))))
        .collect::<Result<_>>()?;
    let mut findings = Vec::new();
    if !saturated {
        findings.push("generation did not stabilize".into());
    }
    let mut per_degree = Vec::new();
    for deg in 0..=d {
        let idx = fock.degree_range(deg);
        let space = SuperSpace::new(idx.iter().map(|&i| fock.monomial_parity(i)).collect(), FieldTag::C);
        let pi_g = LieSpan::new(space.clone(), g_ops.iter().map(|(p, m)| Homogeneous { parity: *p, matrix: block(m, &idx) }).collect());
        let comm = commutant_in(&pi_g, &gl_full(&space));
        let image: Vec<Vec<Rational>> = gen_ops.iter().map(|m| block(m, &idx).data).collect();
        let comm_vecs: Vec<Vec<Rational>> = comm.basis.iter().map(|h| h.matrix.data.clone()).collect();
        let dim2 = idx.len() * idx.len();
        let image_dim = rank(&image, dim2);
        let equal = crate::linsolve::span_eq(&image, &comm_vecs, dim2);
        let dim_r = Rational::int(idx.len() as i64);
        let fingerprint = gp_ops.iter().map(|m| (block(m, &idx).trace() / dim_r.clone()).to_string()).collect();
        per_degree.push(HoweDegree {
            d: deg,
            dim: idx.len(),
            expected_dim: sym_dim(v0, v1, deg),
            commutant_dim: comm.dim(),
            generated_image_dim: image_dim,
            commutant_equals_image: equal,
            irreducible: comm.dim() == 1,
            fingerprint,
        });
    }
    let fps: Vec<&Vec<String>> = per_degree.iter().map(|r| &r.fingerprint).collect();
    let distinct = (0..fps.len()).all(|i| (i + 1..fps.len()).all(|j| fps[i] != fps[j]));
    for r in &per_degree {
        if !r.commutant_equals_image {
            findings.push(format!("degree {}: commutant dim {} vs image dim {}", r.d, r.commutant_dim, r.generated_image_dim));
        }
    }
    Ok(HoweReport {
        n,
        k,
        l,
        max_degree: d,
        g_dim: setup.g.graded_dim(),
        g_prime_dim: setup.g_prime.graded_dim(),
        per_degree,
        fingerprints_distinct: distinct,
        findings,
        runtime_ms: start.elapsed().as_millis(),
    })
}


/// A named double-commutant configuration: a pair instance together with
/// representatives of the non-identity components of its group.
#[derive(Clone, Debug)]
pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    pub instance: DualPairInstance,
    pub component_reps: Vec<GroupElement>,
}

pub const PRESETS: [&str; 3] = ["q1r", "gl11c", "spo21-osp20"];

/// Builds one of the named configurations in [`PRESETS`].
pub fn preset(name: &str) -> Result<Preset> {
    match name {
        "q1r" => {
            let alg = make_algebra_over(AlgebraName::Cl1R, FieldTag::R)?;
            let instance = build_type_ii(alg, (1, 0), (1, 0))?;
            Ok(Preset { name: "q1r", description: "(q(1), q(1)) over Cl1(R), complexified", instance, component_reps: vec![] })
        }
        "gl11c" => {
            let alg = make_algebra_over(AlgebraName::Cl0C, FieldTag::C)?;
            let instance = build_type_ii(alg, (1, 1), (1, 1))?;
            Ok(Preset { name: "gl11c", description: "(gl(1|1), gl(1|1)) over C", instance, component_reps: vec![] })
        }
        "spo21-osp20" => {
            let alg = make_algebra_over(AlgebraName::Cl0C, FieldTag::C)?;
            let (shape_u, shape_w) = ([1usize, 1], [2usize, 0]);
            let tag = InvolutionTag::Identity;
            let instance = build_type_i(alg.clone(), tag, 0, &shape_u, &shape_w)?;
            let gu = standard_form(alg.clone(), tag, -1, 0, &shape_u, Side::Left)?;
            let refl = Mat::from_fn(gu.gen_parities.len(), gu.gen_parities.len(), |r, c| match (r == c, gu.gen_parities[r]) {
                (false, _) => Rational::ZERO,
                (true, 0) => Rational::ONE,
                (true, _) => -Rational::ONE,
            });
            let m = type_i_u_operator(alg, tag, 0, &shape_u, &shape_w, &refl)?;
            let rep = GroupElement::new(&instance.e, m, "odd reflection on U")?;
            Ok(Preset {
                name: "spo21-osp20",
                description: "(spo(2|1), o(2)) over C with OSp(2|1) = Sp(2) × O(1)",
                instance,
                component_reps: vec![rep],
            })
        }
        _ => Err(Error::InvalidParams(format!("unknown preset `{name}` (known: {})", PRESETS.join(", ")))),
    }
}

/// Invariants of o(2) ⊂ WC(C^{0|2}) with and without the reflection of O(2).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PfaffianReport {
    pub degree: usize,
    pub dim_algebra_invariants: usize,
    pub dim_group_invariants: usize,
    pub gap: usize,
    /// the extra invariant, as normal-ordered terms
    pub witness: Vec<crate::wc::MonomialJson>,
}

pub fn pfaffian_gap(guard: usize) -> Result<PfaffianReport> {
    let e = BilinearSpace::new(SuperSpace::new(vec![1, 1], FieldTag::C), Mat::identity(2))?;
    let alg = wc_algebra(&e)?;
    let g = spo_ambient(&e)?;
    let d = 2;
    let conn = wc_invariants(&HCPair::connected(g.clone()), &alg, d, guard)?;
    let full = wc_invariants(&HCPair::new(g, vec![GroupElement::reflection(&e, 0)?])?, &alg, d, guard)?;
    let (a, b) = (conn.dim_upto(d), full.dim_upto(d));
    let mut ech = Echelon::new(full.monos.len());
    for v in &full.vectors {
        ech.push_dense(v.clone());
    }
    let witness = conn
        .elements(&alg)
        .into_iter()
        .zip(&conn.vectors)
        .find(|(_, v)| !ech.contains(v))
        .map(|(w, _)| w.to_json())
        .unwrap_or_default();
    Ok(PfaffianReport { degree: d, dim_algebra_invariants: a, dim_group_invariants: b, gap: a - b, witness })
}

/// Per-degree comparison of the complexified invariants of the real pair
/// (gl(1|1,R), gl(1,R)) under GL(1|1,R) with those of the complex pair.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexificationReport {
    pub max_degree: usize,
    pub real_dims: Vec<usize>,
    pub complex_dims: Vec<usize>,
    pub spans_equal: bool,
}

pub fn complexification_check(d: usize, guard: usize) -> Result<ComplexificationReport> {
    let (u, w) = ((1, 1), (1, 0));
    let real_alg = make_algebra_over(AlgebraName::Cl0R, FieldTag::R)?;
    let real = complexify(&build_type_ii(real_alg.clone(), u, w)?);
    let mut reps = Vec::new();
    for (i, tag) in ["even sign on U", "odd sign on U"].iter().enumerate() {
        let x = Mat::from_fn(2, 2, |r, c| match (r == c, r == i) {
            (false, _) => Rational::ZERO,
            (true, true) => -Rational::ONE,
            (true, false) => Rational::ONE,
        });
        let m = type_ii_group_operator(real_alg.clone(), u, w, Factor::U, &x)?;
        reps.push(GroupElement::new(&real.e, m, tag)?);
    }
    let cx = build_type_ii(make_algebra_over(AlgebraName::Cl0C, FieldTag::C)?, u, w)?;
    if cx.e.space.parities != real.e.space.parities || cx.e.gram != real.e.gram {
        return Err(Error::Inconsistent("real and complex layouts differ".into()));
    }
    let r_alg = wc_algebra(&real.e)?;
    let c_alg = wc_algebra(&cx.e)?;
    let ri = wc_invariants(&HCPair::new(real.g.clone(), reps)?, &r_alg, d, guard)?;
    let ci = wc_invariants(&HCPair::connected(cx.g.clone()), &c_alg, d, guard)?;
    let spans_equal = crate::linsolve::span_eq(&ri.vectors, &ci.vectors, ri.monos.len());
    Ok(ComplexificationReport {
        max_degree: d,
        real_dims: (0..=d).map(|k| ri.dim_upto(k)).collect(),
        complex_dims: (0..=d).map(|k| ci.dim_upto(k)).collect(),
        spans_equal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counting_oracle() {
        for d in 0..6 {
            assert_eq!(sym_dim(2, 1, d), 2 * d + 1);
            assert_eq!(sym_dim(2, 1, d), monomials_of_degree(&[0, 0, 1], d).len());
        }
    }

    #[test]
    fn howe_small() {
        let r = howe_decompose(1, 1, 0, 2, DEFAULT_GUARD).unwrap();
        assert!(r.all_pass(), "{r:#?}");
    }

    #[test]
    fn presets() {
        for name in PRESETS {
            let p = preset(name).unwrap();
            let r = double_commutant_check(&p.instance, p.component_reps, 4, DEFAULT_GUARD).unwrap();
            println!("{name}: {r:?}");
            assert!(r.all_equal(), "{name}: {r:#?}");
        }
    }

    #[test]
    fn pfaffian() {
        let r = pfaffian_gap(DEFAULT_GUARD).unwrap();
        assert_eq!((r.dim_algebra_invariants, r.dim_group_invariants, r.gap), (2, 1, 1), "{r:?}");
    }

    #[test]
    fn complexification() {
        let r = complexification_check(3, DEFAULT_GUARD).unwrap();
        assert!(r.spans_equal, "{r:?}");
    }
}
