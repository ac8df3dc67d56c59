//! The Weyl–Clifford algebra WC(E,B) in normal-ordered form, the quadratic
//! copy Ω ≅ spo(E,B) with its isomorphism β, the symbol map into S(E), the
//! action of form-preserving group elements, and the Fock model on S(V).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graded::BilinearSpace;
use crate::linsolve::InjectiveSolver;
use crate::matrix::{Mat, Parity};
use crate::scalars::{Rational, Scalar};

/// Exponent vector over the basis of E; odd slots are 0 or 1.
pub type Mono = Vec<u8>;

struct OmegaData {
    basis: Vec<WcElement>,
    solver: InjectiveSolver<Rational>,
}

/// WC(E,B) for a fixed ordered homogeneous basis of E.
pub struct WcAlgebra {
    pub e: BilinearSpace,
    half: Rational,
    omega: OnceLock<OmegaData>,
}

impl fmt::Debug for WcAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WC{:?}", self.e.space.graded_dim())
    }
}

pub type Wc = Arc<WcAlgebra>;

pub fn wc_algebra(e: &BilinearSpace) -> Result<Wc> {
    e.validate()?;
    Ok(Arc::new(WcAlgebra { e: e.clone(), half: Rational::new(1, 2), omega: OnceLock::new() }))
}

impl WcAlgebra {
    pub fn n(&self) -> usize {
        self.e.dim()
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.e.space.parities[i]
    }

    fn b(&self, i: usize, j: usize) -> &Rational {
        self.e.gram.get(i, j)
    }

    pub fn mono_parity(&self, m: &[u8]) -> Parity {
        (m.iter().enumerate().map(|(i, &k)| k as usize * self.parity(i) as usize).sum::<usize>() % 2) as Parity
    }

    /// Normal-ordered m · e_x.
    fn mul_gen_right(&self, m: &Mono, x: usize) -> Vec<(Mono, Rational)> {
        let last = m.iter().rposition(|&k| k > 0);
        match last {
            None => {
                let mut r = m.clone();
                r[x] += 1;
                vec![(r, Rational::ONE)]
            }
            Some(f) if f < x => {
                let mut r = m.clone();
                r[x] += 1;
                vec![(r, Rational::ONE)]
            }
            Some(f) if f == x => {
                let mut r = m.clone();
                if self.parity(x) == 1 {
                    // x² = B(x,x)/2
                    r[x] = 0;
                    let c = self.b(x, x).clone() * self.half.clone();
                    if c.is_zero() {
                        vec![]
                    } else {
                        vec![(r, c)]
                    }
                } else {
                    r[x] += 1;
                    vec![(r, Rational::ONE)]
                }
            }
            Some(f) => {
                // w'·f·e_x = (−1)^{|f||x|} (w'·e_x)·f + B(f,x)·w'
                let mut w = m.clone();
                w[f] -= 1;
                let s = if self.parity(f) & self.parity(x) == 1 { -Rational::ONE } else { Rational::ONE };
                let mut out: Vec<(Mono, Rational)> = self
                    .mul_gen_right(&w, x)
                    .into_iter()
                    .map(|(mut r, c)| {
                        r[f] += 1;
                        (r, c * s.clone())
                    })
                    .collect();
                let b = self.b(f, x);
                if !b.is_zero() {
                    out.push((w, b.clone()));
                }
                out
            }
        }
    }

    /// The word e_{i1} ⋯ e_{ik} of a normal-ordered monomial.
    pub fn word(m: &[u8]) -> Vec<usize> {
        m.iter().enumerate().flat_map(|(i, &k)| std::iter::repeat_n(i, k as usize)).collect()
    }
}

/// An element of WC(E,B): normal-ordered monomials with nonzero rational
/// coefficients.
#[derive(Clone, Debug)]
pub struct WcElement {
    pub alg: Wc,
    pub terms: BTreeMap<Mono, Rational>,
}

impl PartialEq for WcElement {
    fn eq(&self, o: &Self) -> bool {
        self.terms == o.terms
    }
}

fn add_term(map: &mut BTreeMap<Mono, Rational>, m: Mono, c: Rational) {
    if c.is_zero() {
        return;
    }
    match map.entry(m) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let s = o.get().clone() + c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

impl WcElement {
    pub fn zero(alg: &Wc) -> Self {
        WcElement { alg: alg.clone(), terms: BTreeMap::new() }
    }

    pub fn scalar(alg: &Wc, c: Rational) -> Self {
        let mut t = BTreeMap::new();
        add_term(&mut t, vec![0; alg.n()], c);
        WcElement { alg: alg.clone(), terms: t }
    }

    pub fn one(alg: &Wc) -> Self {
        Self::scalar(alg, Rational::ONE)
    }

    pub fn monomial(alg: &Wc, m: Mono, c: Rational) -> Self {
        let mut t = BTreeMap::new();
        add_term(&mut t, m, c);
        WcElement { alg: alg.clone(), terms: t }
    }

    /// The generator e_i.
    pub fn gen(alg: &Wc, i: usize) -> Self {
        let mut m = vec![0; alg.n()];
        m[i] = 1;
        Self::monomial(alg, m, Rational::ONE)
    }

    /// ι(v) for a coordinate vector v.
    pub fn from_vector(alg: &Wc, v: &[Rational]) -> Self {
        let mut out = Self::zero(alg);
        for (i, c) in v.iter().enumerate() {
            let mut m = vec![0; alg.n()];
            m[i] = 1;
            add_term(&mut out.terms, m, c.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Filtration degree (−1 ↦ 0 for the zero element).
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.iter().map(|&k| k as usize).sum()).max().unwrap_or(0)
    }

    pub fn parity(&self) -> Option<Parity> {
        let mut ps = self.terms.keys().map(|m| self.alg.mono_parity(m));
        let first = ps.next()?;
        if ps.all(|p| p == first) {
            Some(first)
        } else {
            None
        }
    }

    /// Splits into even and odd parts.
    pub fn parity_parts(&self) -> [WcElement; 2] {
        let mut parts = [Self::zero(&self.alg), Self::zero(&self.alg)];
        for (m, c) in &self.terms {
            parts[self.alg.mono_parity(m) as usize].terms.insert(m.clone(), c.clone());
        }
        parts
    }

    pub fn add(&self, o: &WcElement) -> WcElement {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            add_term(&mut out.terms, m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &WcElement) -> WcElement {
        self.add(&o.scale(&-Rational::ONE))
    }

    pub fn scale(&self, s: &Rational) -> WcElement {
        if s.is_zero() {
            return Self::zero(&self.alg);
        }
        WcElement { alg: self.alg.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), c.clone() * s.clone())).collect() }
    }

    /// self · e_x
    pub fn mul_gen(&self, x: usize) -> WcElement {
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            for (r, d) in self.alg.mul_gen_right(m, x) {
                add_term(&mut out, r, d * c.clone());
            }
        }
        WcElement { alg: self.alg.clone(), terms: out }
    }

    /// Normal-ordered product.
    pub fn mul(&self, o: &WcElement) -> WcElement {
        let mut out = Self::zero(&self.alg);
        for (m, c) in &o.terms {
            let mut acc = self.clone();
            for x in WcAlgebra::word(m) {
                acc = acc.mul_gen(x);
            }
            out = out.add(&acc.scale(c));
        }
        out
    }

    /// Supercommutator, extended bilinearly over parity parts.
    pub fn bracket(&self, o: &WcElement) -> WcElement {
        let mut out = Self::zero(&self.alg);
        let (a, b) = (self.parity_parts(), o.parity_parts());
        for (pa, x) in a.iter().enumerate() {
            for (pb, y) in b.iter().enumerate() {
                if x.is_zero() || y.is_zero() {
                    continue;
                }
                let s = if pa & pb == 1 { -Rational::ONE } else { Rational::ONE };
                out = out.add(&x.mul(y)).sub(&y.mul(x).scale(&s));
            }
        }
        out
    }

    /// Component of exact degree k.
    pub fn degree_part(&self, k: usize) -> WcElement {
        WcElement {
            alg: self.alg.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.iter().map(|&e| e as usize).sum::<usize>() == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn to_json(&self) -> Vec<MonomialJson> {
        let par = &self.alg.e.space.parities;
        self.terms
            .iter()
            .map(|(m, c)| MonomialJson {
                even: (0..m.len()).filter(|&i| par[i] == 0).map(|i| m[i]).collect(),
                odd: (0..m.len()).filter(|&i| par[i] == 1 && m[i] > 0).collect(),
                coeff: c.to_string(),
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialJson {
    /// exponents of the even basis slots, in basis order
    pub even: Vec<u8>,
    /// indices (in E) of the odd factors present
    pub odd: Vec<usize>,
    pub coeff: String,
}

/// wc_mul(a, b)
pub fn wc_mul(a: &WcElement, b: &WcElement) -> WcElement {
    a.mul(b)
}

/// Supersymmetrized quadratics e_i e_j + (−1)^{|i||j|} e_j e_i, i ≤ j
/// (anticommutators for even pairs, commutators for odd pairs).
pub fn omega_basis(alg: &Wc) -> Vec<WcElement> {
    let n = alg.n();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            if i == j && alg.parity(i) == 1 {
                continue;
            }
            let (a, b) = (WcElement::gen(alg, i), WcElement::gen(alg, j));
            let s = if alg.parity(i) & alg.parity(j) == 1 { -Rational::ONE } else { Rational::ONE };
            out.push(a.mul(&b).add(&b.mul(&a).scale(&s)));
        }
    }
    out
}

/// Matrix of v ↦ [ω, ι(v)] on E; errors if the result leaves E.
pub fn ad_on_e(w: &WcElement) -> Result<Mat> {
    let alg = &w.alg;
    let n = alg.n();
    let mut m = Mat::zeros(n, n);
    for v in 0..n {
        let r = w.bracket(&WcElement::gen(alg, v));
        for (mono, c) in &r.terms {
            let Some(u) = (mono.iter().map(|&k| k as usize).sum::<usize>() == 1).then(|| mono.iter().position(|&k| k == 1)).flatten()
            else {
                return Err(Error::NotContained("ad(ω) does not preserve ι(E)".into()));
            };
            m.set(u, v, c.clone());
        }
    }
    Ok(m)
}

fn omega(alg: &Wc) -> &OmegaData {
    alg.omega.get_or_init(|| {
        let basis = omega_basis(alg);
        let cols: Vec<Vec<Rational>> = basis.iter().map(|w| ad_on_e(w).expect("Ω acts on E").data).collect();
        let solver = InjectiveSolver::new(cols).expect("ω ↦ ad ω is injective on Ω");
        OmegaData { basis, solver }
    })
}

/// Dimension of Ω (equals dim spo(E,B)).
pub fn omega_dim(alg: &Wc) -> usize {
    omega(alg).basis.len()
}

/// β(X): the element of Ω with [β(X), ι(v)] = ι(Xv).
pub fn beta(alg: &Wc, x: &Mat) -> Result<WcElement> {
    let om = omega(alg);
    let c = om.solver.solve(&x.data).ok_or_else(|| Error::NotContained("X is not in spo(E,B)".into()))?;
    let mut out = WcElement::zero(alg);
    for (k, w) in om.basis.iter().enumerate() {
        if !c[k].is_zero() {
            out = out.add(&w.scale(&c[k]));
        }
    }
    Ok(out)
}

/// An even, form-preserving invertible operator on E.
#[derive(Clone, Debug)]
pub struct GroupElement {
    pub matrix: Mat,
    pub tag: String,
}

impl GroupElement {
    pub fn new(e: &BilinearSpace, matrix: Mat, tag: &str) -> Result<Self> {
        let n = e.dim();
        if matrix.rows != n || matrix.cols != n {
            return Err(Error::Dimension("group element has the wrong size".into()));
        }
        let par = &e.space.parities;
        for r in 0..n {
            for c in 0..n {
                if par[r] != par[c] && !matrix.get(r, c).is_zero() {
                    return Err(Error::InvalidParams("group element is not even".into()));
                }
            }
        }
        if matrix.transpose().mul(&e.gram).mul(&matrix) != e.gram {
            return Err(Error::NotInvariant("group element does not preserve B".into()));
        }
        Ok(GroupElement { matrix, tag: tag.to_string() })
    }

    /// diag(…, −1, …) at position `slot`.
    pub fn reflection(e: &BilinearSpace, slot: usize) -> Result<Self> {
        let mut m = Mat::<Rational>::identity(e.dim());
        m.set(slot, slot, -Rational::ONE);
        GroupElement::new(e, m, "reflection")
    }
}

/// The automorphism of WC(E,B) induced by g.
pub fn group_act(g: &GroupElement, a: &WcElement) -> WcElement {
    let alg = &a.alg;
    let n = alg.n();
    let images: Vec<WcElement> = (0..n).map(|i| WcElement::from_vector(alg, &g.matrix.column(i))).collect();
    let mut out = WcElement::zero(alg);
    for (m, c) in &a.terms {
        let mut acc = WcElement::one(alg);
        for x in WcAlgebra::word(m) {
            acc = acc.mul(&images[x]);
        }
        out = out.add(&acc.scale(c));
    }
    out
}

/// Element of the supersymmetric algebra S(E), in the same monomial keys.
#[derive(Clone, Debug, PartialEq)]
pub struct SymPoly {
    pub parities: Vec<Parity>,
    pub terms: BTreeMap<Mono, Rational>,
}

impl SymPoly {
    pub fn zero(parities: &[Parity]) -> Self {
        SymPoly { parities: parities.to_vec(), terms: BTreeMap::new() }
    }

    pub fn one(parities: &[Parity]) -> Self {
        let mut p = Self::zero(parities);
        p.terms.insert(vec![0; parities.len()], Rational::ONE);
        p
    }

    pub fn linear(parities: &[Parity], v: &[Rational]) -> Self {
        let mut p = Self::zero(parities);
        for (i, c) in v.iter().enumerate() {
            let mut m = vec![0; parities.len()];
            m[i] = 1;
            add_term(&mut p.terms, m, c.clone());
        }
        p
    }

    pub fn add(&self, o: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            add_term(&mut out.terms, m.clone(), c.clone());
        }
        out
    }

    /// Supercommutative product: odd factors anticommute and square to 0.
    pub fn mul(&self, o: &SymPoly) -> SymPoly {
        let mut out = SymPoly::zero(&self.parities);
        for (a, ca) in &self.terms {
            'b: for (b, cb) in &o.terms {
                let mut sign = false;
                let mut m = a.clone();
                for j in 0..b.len() {
                    if b[j] == 0 {
                        continue;
                    }
                    if self.parities[j] == 1 {
                        if a[j] > 0 {
                            continue 'b;
                        }
                        let later = (j + 1..a.len()).filter(|&i| self.parities[i] == 1 && a[i] > 0).count();
                        sign ^= later % 2 == 1;
                    }
                    m[j] += b[j];
                }
                let c = ca.clone() * cb.clone();
                add_term(&mut out.terms, m, if sign { -c } else { c });
            }
        }
        out
    }

    /// The extended action of g on S(E).
    pub fn act(&self, g: &Mat) -> SymPoly {
        let n = self.parities.len();
        let images: Vec<SymPoly> = (0..n).map(|i| SymPoly::linear(&self.parities, &g.column(i))).collect();
        let mut out = SymPoly::zero(&self.parities);
        for (m, c) in &self.terms {
            let mut acc = SymPoly::one(&self.parities);
            for x in WcAlgebra::word(m) {
                acc = acc.mul(&images[x]);
            }
            let scaled = SymPoly {
                parities: self.parities.clone(),
                terms: acc.terms.into_iter().map(|(k, v)| (k, v * c.clone())).collect(),
            };
            out = out.add(&scaled);
        }
        out
    }
}

/// σ(a, k): the degree-k component of a read in S^k(E).
pub fn symbol(a: &WcElement, k: usize) -> Result<SymPoly> {
    if a.degree() > k {
        return Err(Error::Truncation(format!("element of degree {} has no symbol in degree {k}", a.degree())));
    }
    Ok(SymPoly { parities: a.alg.e.space.parities.clone(), terms: a.degree_part(k).terms })
}

/// Monomial basis of S^{≤N}(V) for a split E = V ⊕ V*, V and V* spanned by
/// basis slots of E.
#[derive(Clone, Debug)]
pub struct FockBasis {
    pub v_slots: Vec<usize>,
    pub dual_slots: Vec<usize>,
    pub v_parities: Vec<Parity>,
    pub max_degree: usize,
    /// exponent vectors over v_slots, sorted by degree
    pub monomials: Vec<Mono>,
    index: HashMap<Mono, usize>,
    /// position in `v_slots` of each E slot of V
    v_pos: HashMap<usize, usize>,
    gram: Mat,
    e_parities: Vec<Parity>,
}

/// All exponent vectors (odd entries ≤ 1) of total degree exactly d.
pub fn monomials_of_degree(parities: &[Parity], d: usize) -> Vec<Mono> {
    fn rec(par: &[Parity], i: usize, left: usize, cur: &mut Mono, out: &mut Vec<Mono>) {
        if i == par.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let max = if par[i] == 1 { left.min(1) } else { left };
        for k in (0..=max).rev() {
            cur[i] = k as u8;
            rec(par, i + 1, left - k, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(parities, 0, d, &mut vec![0; parities.len()], &mut out);
    out
}

impl FockBasis {
    pub fn new(e: &BilinearSpace, v_slots: Vec<usize>, dual_slots: Vec<usize>, max_degree: usize) -> Result<Self> {
        let n = e.dim();
        let mut seen = vec![false; n];
        for &s in v_slots.iter().chain(&dual_slots) {
            if s >= n || seen[s] {
                return Err(Error::InvalidParams("V and V* slots must partition the basis of E".into()));
            }
            seen[s] = true;
        }
        if seen.iter().any(|x| !x) {
            return Err(Error::InvalidParams("V and V* slots must partition the basis of E".into()));
        }
        let iso = |s: &[usize]| s.iter().all(|&a| s.iter().all(|&b| e.gram.get(a, b).is_zero()));
        if !iso(&v_slots) || !iso(&dual_slots) {
            return Err(Error::Degenerate("V and V* must be B-isotropic".into()));
        }
        let pairing = Mat::from_fn(dual_slots.len(), v_slots.len(), |r, c| e.gram.get(dual_slots[r], v_slots[c]).clone());
        if !pairing.is_square() || pairing.rank() != v_slots.len() {
            return Err(Error::Degenerate("B does not pair V and V* nondegenerately".into()));
        }
        let v_parities: Vec<Parity> = v_slots.iter().map(|&s| e.space.parities[s]).collect();
        let monomials: Vec<Mono> = (0..=max_degree).flat_map(|d| monomials_of_degree(&v_parities, d)).collect();
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let v_pos = v_slots.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        Ok(FockBasis {
            v_slots,
            dual_slots,
            v_parities,
            max_degree,
            monomials,
            index,
            v_pos,
            gram: e.gram.clone(),
            e_parities: e.space.parities.clone(),
        })
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn degree_of(&self, i: usize) -> usize {
        self.monomials[i].iter().map(|&k| k as usize).sum()
    }

    /// Indices of the monomials of degree exactly d.
    pub fn degree_range(&self, d: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degree_of(i) == d).collect()
    }

    pub fn monomial_parity(&self, i: usize) -> Parity {
        (self.monomials[i].iter().zip(&self.v_parities).map(|(&k, &p)| k as usize * p as usize).sum::<usize>() % 2) as Parity
    }

    fn odd_before(&self, m: &Mono, pos: usize) -> usize {
        (0..pos).filter(|&q| self.v_parities[q] == 1 && m[q] > 0).count()
    }

    /// Action of the generator e_slot on a monomial: M_v for V slots, the
    /// superderivation D_x with D_x(v) = B(x, v) for V* slots.
    fn apply_gen(&self, slot: usize, m: &Mono) -> Vec<(Mono, Rational)> {
        if let Some(&p) = self.v_pos.get(&slot) {
            if self.v_parities[p] == 1 && m[p] > 0 {
                return vec![];
            }
            let deg: usize = m.iter().map(|&k| k as usize).sum();
            if deg + 1 > self.max_degree {
                return vec![];
            }
            let mut r = m.clone();
            r[p] += 1;
            let sign = self.v_parities[p] == 1 && self.odd_before(m, p) % 2 == 1;
            vec![(r, if sign { -Rational::ONE } else { Rational::ONE })]
        } else {
            let px = self.e_parities[slot];
            let mut out = Vec::new();
            for q in 0..m.len() {
                if m[q] == 0 {
                    continue;
                }
                let b = self.gram.get(slot, self.v_slots[q]);
                if b.is_zero() {
                    continue;
                }
                let mut r = m.clone();
                r[q] -= 1;
                let sign = px == 1 && self.odd_before(m, q) % 2 == 1;
                let c = b.clone() * Rational::int(m[q] as i64);
                out.push((r, if sign { -c } else { c }));
            }
            out
        }
    }

    /// The operator of a WC element on S^{≤N}(V). Products of raising
    /// operators are truncated at degree N, so the matrix is exact on
    /// S^{≤N−deg a}(V) (the safe window).
    pub fn act(&self, a: &WcElement) -> Mat {
        let dim = self.dim();
        let mut out = Mat::zeros(dim, dim);
        for (col, s) in self.monomials.iter().enumerate() {
            for (mono, c) in &a.terms {
                let word = WcAlgebra::word(mono);
                let mut cur: Vec<(Mono, Rational)> = vec![(s.clone(), c.clone())];
                for &x in word.iter().rev() {
                    let mut next = Vec::new();
                    for (m, k) in &cur {
                        for (r, d) in self.apply_gen(x, m) {
                            next.push((r, d * k.clone()));
                        }
                    }
                    cur = next;
                    if cur.is_empty() {
                        break;
                    }
                }
                for (m, k) in cur {
                    let row = self.index[&m];
                    out.add_at(row, col, k);
                }
            }
        }
        out
    }

    /// Safe truncation window for an element of degree `deg`.
    pub fn safe_degree(&self, deg: usize) -> Result<usize> {
        self.max_degree
            .checked_sub(deg)
            .ok_or_else(|| Error::Truncation(format!("truncation {} is below degree {deg}", self.max_degree)))
    }

    /// Restriction of an operator to the rows and columns of degree ≤ d.
    pub fn window(&self, m: &Mat, d: usize) -> Mat {
        let idx: Vec<usize> = (0..self.dim()).filter(|&i| self.degree_of(i) <= d).collect();
        Mat::from_fn(idx.len(), idx.len(), |r, c| m.get(idx[r], idx[c]).clone())
    }
}

/// fock_act(a, F)
pub fn fock_act(a: &WcElement, f: &FockBasis) -> Result<Mat> {
    f.safe_degree(a.degree())?;
    Ok(f.act(a))
}

/// The Type II split of E = T ⊕ T* in the (T₀, T₀*, T₁, T₁*) layout.
pub fn split_slots(parities: &[Parity]) -> (Vec<usize>, Vec<usize>) {
    let mut v = Vec::new();
    let mut d = Vec::new();
    let mut i = 0;
    while i < parities.len() {
        let p = parities[i];
        let run = parities[i..].iter().take_while(|&&q| q == p).count();
        v.extend(i..i + run / 2);
        d.extend(i + run / 2..i + run);
        i += run;
    }
    (v, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::spo_ambient;
    use crate::matrix::{FieldTag, SuperSpace};

    fn e22() -> BilinearSpace {
        // (T₀, T₀*, T₁, T₁*) with T = (1|1)
        let g = Mat::from_ints(&[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]]);
        BilinearSpace::new(SuperSpace::new(vec![0, 0, 1, 1], FieldTag::R), g).unwrap()
    }

    #[test]
    fn single_rewrite_and_commutators() {
        let e = e22();
        let alg = wc_algebra(&e).unwrap();
        let (x, y) = (WcElement::gen(&alg, 0), WcElement::gen(&alg, 1));
        let yx = y.mul(&x);
        let expect = x.mul(&y).add(&WcElement::scalar(&alg, e.gram.get(1, 0).clone()));
        assert_eq!(yx, expect);
        for u in 0..4 {
            for v in 0..4 {
                let b = WcElement::gen(&alg, u).bracket(&WcElement::gen(&alg, v));
                assert_eq!(b, WcElement::scalar(&alg, e.gram.get(u, v).clone()));
            }
        }
    }

    #[test]
    fn omega_matches_spo() {
        let e = e22();
        let alg = wc_algebra(&e).unwrap();
        let spo = spo_ambient(&e).unwrap();
        assert_eq!(omega_dim(&alg), spo.dim());
        for x in &spo.basis {
            let b = beta(&alg, &x.matrix).unwrap();
            assert_eq!(ad_on_e(&b).unwrap(), x.matrix);
            assert!(b.degree() <= 2);
        }
        assert!(beta(&alg, &Mat::zeros(4, 4)).unwrap().is_zero());
        assert!(beta(&alg, &Mat::<Rational>::identity(4)).is_err());
    }

    #[test]
    fn fock_vacuum_and_identity() {
        let e = e22();
        let alg = wc_algebra(&e).unwrap();
        let (v, d) = split_slots(&e.space.parities);
        assert_eq!((v.clone(), d.clone()), (vec![0, 2], vec![1, 3]));
        let f = FockBasis::new(&e, v.clone(), d.clone(), 3).unwrap();
        let m = f.act(&WcElement::gen(&alg, 0));
        // vacuum is monomial 0; ι(v) maps it to the degree-1 monomial v
        let target = f.monomials.iter().position(|m| m == &vec![1, 0]).unwrap();
        assert_eq!(m.get(target, 0), &Rational::ONE);
        for &x in &d {
            for &y in &v {
                let dx = f.act(&WcElement::gen(&alg, x));
                let my = f.act(&WcElement::gen(&alg, y));
                let s = if e.space.parities[x] & e.space.parities[y] == 1 { -Rational::ONE } else { Rational::ONE };
                let lhs = f.window(&dx.mul(&my).sub(&my.mul(&dx).scale(&s)), 2);
                let rhs = Mat::<Rational>::identity(lhs.rows).scale(e.gram.get(x, y));
                assert_eq!(lhs, rhs);
            }
        }
    }
}
