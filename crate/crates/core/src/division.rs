//! The ten real/complex division superalgebras as structure-constant tables,
//! their superinvolutions, δ, the super-opposite, and Re.
//!
//! Every algebra with odd part is built as D₀ ⊕ D₀·ε with D₀ ∈ {R, C, H},
//! ε² = s ∈ {±1} and ε·x = φ(x)·ε for φ ∈ {id, conj}.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{FieldTag, Mat, Parity};
use crate::scalars::{Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AlgebraName {
    Cl0R,
    Cl1R,
    Cl2R,
    Cl3R,
    Cl4R,
    Cl5R,
    Cl6R,
    Cl7R,
    Cl0C,
    Cl1C,
}

impl AlgebraName {
    pub const ALL: [AlgebraName; 10] = [
        AlgebraName::Cl0R,
        AlgebraName::Cl1R,
        AlgebraName::Cl2R,
        AlgebraName::Cl3R,
        AlgebraName::Cl4R,
        AlgebraName::Cl5R,
        AlgebraName::Cl6R,
        AlgebraName::Cl7R,
        AlgebraName::Cl0C,
        AlgebraName::Cl1C,
    ];

    /// Cl_k(R) for k in 0..=7.
    pub fn real(k: usize) -> AlgebraName {
        Self::ALL[k % 8]
    }
}

impl fmt::Display for AlgebraName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for AlgebraName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let hit = Self::ALL.iter().find(|a| a.to_string().eq_ignore_ascii_case(t));
        if let Some(a) = hit {
            return Ok(*a);
        }
        match t {
            "R" => Ok(AlgebraName::Cl0R),
            "C" => Ok(AlgebraName::Cl0C),
            "H" => Ok(AlgebraName::Cl4R),
            _ => Err(Error::UnknownAlgebra(s.to_string())),
        }
    }
}

/// Even part of an algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EvenPart {
    R,
    C,
    H,
}

impl EvenPart {
    pub fn dim(self) -> usize {
        match self {
            EvenPart::R => 1,
            EvenPart::C => 2,
            EvenPart::H => 4,
        }
    }

    fn symbols(self) -> Vec<&'static str> {
        match self {
            EvenPart::R => vec!["1"],
            EvenPart::C => vec!["1", "i"],
            EvenPart::H => vec!["1", "i", "j", "ij"],
        }
    }

    /// Product of basis elements: (sign, index).
    fn basis_mul(self, a: usize, b: usize) -> (i64, usize) {
        match self {
            EvenPart::R => (1, 0),
            EvenPart::C => match (a, b) {
                (0, x) | (x, 0) => (1, x),
                _ => (-1, 0),
            },
            EvenPart::H => {
                // 1, i, j, k=ij with i² = j² = −1 and ij = −ji.
                const T: [[(i64, usize); 4]; 4] = [
                    [(1, 0), (1, 1), (1, 2), (1, 3)],
                    [(1, 1), (-1, 0), (1, 3), (-1, 2)],
                    [(1, 2), (-1, 3), (-1, 0), (1, 1)],
                    [(1, 3), (1, 2), (-1, 1), (-1, 0)],
                ];
                T[a][b]
            }
        }
    }

    /// Sign of conjugation on each basis element.
    fn conj_sign(self, a: usize) -> i64 {
        if a == 0 {
            1
        } else {
            -1
        }
    }
}

/// Relation data for D₀ ⊕ D₀·ε.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddPart {
    /// ε² = square
    pub square: i64,
    /// ε x = conj(x) ε when true, ε x = x ε otherwise.
    pub twisted: bool,
}

/// A finite-dimensional associative superalgebra given by structure constants
/// `table[a][b][c]` = coefficient of basis `c` in `e_a · e_b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisionSuperalgebra {
    pub name: AlgebraName,
    pub label: String,
    pub base: FieldTag,
    pub even: EvenPart,
    pub odd: Option<OddPart>,
    pub symbols: Vec<String>,
    pub parity: Vec<Parity>,
    pub table: Vec<Vec<Vec<Rational>>>,
    pub unit_index: usize,
}

pub type Algebra = Arc<DivisionSuperalgebra>;

fn data_for(name: AlgebraName, base: FieldTag) -> (EvenPart, Option<OddPart>) {
    use AlgebraName::*;
    let o = |square, twisted| Some(OddPart { square, twisted });
    let complex_base = base == FieldTag::C;
    match name {
        Cl0R => (EvenPart::R, None),
        Cl1R => (EvenPart::R, o(-1, false)),
        Cl2R => (EvenPart::C, o(-1, true)),
        Cl3R => (EvenPart::H, o(1, false)),
        Cl4R => (EvenPart::H, None),
        Cl5R => (EvenPart::H, o(-1, false)),
        Cl6R => (EvenPart::C, o(1, true)),
        Cl7R => (EvenPart::R, o(1, false)),
        // Over C the scalar i is a base-field element.
        Cl0C if complex_base => (EvenPart::R, None),
        Cl1C if complex_base => (EvenPart::R, o(1, false)),
        Cl0C => (EvenPart::C, None),
        Cl1C => (EvenPart::C, o(1, false)),
    }
}

/// Builds the algebra over R (realified), the default.
pub fn make_algebra(name: AlgebraName) -> Algebra {
    make_algebra_over(name, FieldTag::R).expect("every algebra exists over R")
}

/// Builds the algebra over the given base field. Only Cl0C and Cl1C exist
/// over C.
pub fn make_algebra_over(name: AlgebraName, base: FieldTag) -> Result<Algebra> {
    if base == FieldTag::C && !matches!(name, AlgebraName::Cl0C | AlgebraName::Cl1C) {
        return Err(Error::InvalidParams(format!("{name} is not defined over C")));
    }
    let (even, odd) = data_for(name, base);
    let n0 = even.dim();
    let total = if odd.is_some() { 2 * n0 } else { n0 };
    let mut symbols: Vec<String> = even.symbols().iter().map(|s| s.to_string()).collect();
    let mut parity = vec![0; n0];
    if odd.is_some() {
        for s in even.symbols() {
            symbols.push(if s == "1" { "e".to_string() } else { format!("{s}e") });
        }
        parity.extend(vec![1; n0]);
    }
    let mut table = vec![vec![vec![Rational::ZERO; total]; total]; total];
    for a in 0..total {
        for b in 0..total {
            let (a0, ae) = (a % n0, a >= n0);
            let (b0, be) = (b % n0, b >= n0);
            // (x ε^ae)(y ε^be) = x φ^ae(y) ε^{ae+be}
            let mut sgn = 1;
            if ae {
                let od = odd.unwrap();
                if od.twisted {
                    sgn *= even.conj_sign(b0);
                }
            }
            let (s2, c0) = even.basis_mul(a0, b0);
            sgn *= s2;
            let mut idx = c0;
            if ae && be {
                sgn *= odd.unwrap().square;
            } else if ae || be {
                idx += n0;
            }
            table[a][b][idx] = Rational::int(sgn);
        }
    }
    let base_tag = if base == FieldTag::C { "/C" } else { "" };
    Ok(Arc::new(DivisionSuperalgebra {
        name,
        label: format!("{name}{base_tag}"),
        base,
        even,
        odd,
        symbols,
        parity,
        table,
        unit_index: 0,
    }))
}

/// An element of an algebra given by coordinates over the base field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DElement<F: Scalar = Rational> {
    pub coords: Vec<F>,
}

impl<F: Scalar> DElement<F> {
    pub fn new(coords: Vec<F>) -> Self {
        DElement { coords }
    }
}

impl DivisionSuperalgebra {
    pub fn dim(&self) -> usize {
        self.symbols.len()
    }

    /// Dimension over R (base C counts twice).
    pub fn real_dim(&self) -> usize {
        match self.base {
            FieldTag::R => self.dim(),
            FieldTag::C => 2 * self.dim(),
        }
    }

    pub fn has_odd(&self) -> bool {
        self.parity.contains(&1)
    }

    pub fn even_dim(&self) -> usize {
        self.parity.iter().filter(|&&p| p == 0).count()
    }

    pub fn basis<F: Scalar>(&self, i: usize) -> Vec<F> {
        let mut v = vec![F::zero(); self.dim()];
        v[i] = F::one();
        v
    }

    pub fn one<F: Scalar>(&self) -> Vec<F> {
        self.basis(self.unit_index)
    }

    pub fn zero<F: Scalar>(&self) -> Vec<F> {
        vec![F::zero(); self.dim()]
    }

    pub fn index_of(&self, sym: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == sym)
    }

    pub fn mul<F: Scalar>(&self, a: &[F], b: &[F]) -> Vec<F> {
        let n = self.dim();
        let mut out = vec![F::zero(); n];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x.clone() * y.clone();
                for (k, t) in self.table[i][j].iter().enumerate() {
                    if !t.is_zero() {
                        out[k] += xy.clone() * F::from_rational(t.clone());
                    }
                }
            }
        }
        out
    }

    /// Parity of a coordinate vector, `None` if inhomogeneous; zero is even.
    pub fn parity_of<F: Scalar>(&self, a: &[F]) -> Option<Parity> {
        let mut p = None;
        for (i, x) in a.iter().enumerate() {
            if !x.is_zero() {
                match p {
                    None => p = Some(self.parity[i]),
                    Some(q) if q != self.parity[i] => return None,
                    _ => {}
                }
            }
        }
        Some(p.unwrap_or(0))
    }

    /// Matrix of left multiplication by `a`: column b is a·e_b.
    pub fn left_mul_matrix<F: Scalar>(&self, a: &[F]) -> Mat<F> {
        let n = self.dim();
        let cols: Vec<Vec<F>> = (0..n).map(|b| self.mul(a, &self.basis::<F>(b))).collect();
        Mat::from_columns(n, &cols)
    }

    /// Matrix of right multiplication by `a`: column b is e_b·a.
    pub fn right_mul_matrix<F: Scalar>(&self, a: &[F]) -> Mat<F> {
        let n = self.dim();
        let cols: Vec<Vec<F>> = (0..n).map(|b| self.mul(&self.basis::<F>(b), a)).collect();
        Mat::from_columns(n, &cols)
    }

    pub fn inv<F: Scalar>(&self, a: &[F]) -> Result<Vec<F>> {
        if self.parity_of(a).is_none() {
            return Err(Error::Inhomogeneous("inverse needs a homogeneous element".into()));
        }
        if a.iter().all(|x| x.is_zero()) {
            return Err(Error::NotInvertible);
        }
        let l = self.left_mul_matrix(a);
        let li = l.inverse()?;
        let x = li.mul_vec(&self.one::<F>());
        debug_assert_eq!(self.mul(&x, a), self.one::<F>());
        Ok(x)
    }

    /// δ(D) = (−1)^{|D|} D.
    pub fn delta<F: Scalar>(&self, a: &[F]) -> Vec<F> {
        a.iter()
            .enumerate()
            .map(|(i, x)| if self.parity[i] == 1 { -x.clone() } else { x.clone() })
            .collect()
    }

    /// Coordinate of the unit: Re(a + bε) = Re(a). Over C this is the complex
    /// coefficient of 1.
    pub fn re_part<F: Scalar>(&self, a: &[F]) -> F {
        a[self.unit_index].clone()
    }

    /// The super-opposite algebra D•D' = (−1)^{|D||D'|} D'D on the same symbols.
    pub fn sop(&self) -> DivisionSuperalgebra {
        let n = self.dim();
        let mut table = vec![vec![vec![Rational::ZERO; n]; n]; n];
        for a in 0..n {
            for b in 0..n {
                let s = if self.parity[a] & self.parity[b] == 1 { -1 } else { 1 };
                for c in 0..n {
                    table[a][b][c] = self.table[b][a][c].clone() * Rational::int(s);
                }
            }
        }
        let label = match self.label.strip_suffix("^sop") {
            Some(l) => l.to_string(),
            None => format!("{}^sop", self.label),
        };
        DivisionSuperalgebra { table, label, ..self.clone() }
    }

    pub fn is_associative(&self) -> bool {
        let n = self.dim();
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(&self.basis::<Rational>(a), &self.basis(b));
                for c in 0..n {
                    let l = self.mul(&ab, &self.basis(c));
                    let bc = self.mul(&self.basis::<Rational>(b), &self.basis(c));
                    let r = self.mul(&self.basis(a), &bc);
                    if l != r {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn has_two_sided_unit(&self) -> bool {
        let one = self.one::<Rational>();
        (0..self.dim()).all(|a| {
            let e = self.basis::<Rational>(a);
            self.mul(&one, &e) == e && self.mul(&e, &one) == e
        })
    }

    pub fn parity_additive(&self) -> bool {
        let n = self.dim();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if !self.table[a][b][c].is_zero() && self.parity[c] != (self.parity[a] + self.parity[b]) % 2 {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn basis_invertible(&self) -> bool {
        (0..self.dim()).all(|a| self.inv(&self.basis::<Rational>(a)).is_ok())
    }

    /// Centre-free check helper: does `a` commute with every basis element?
    pub fn is_central<F: Scalar>(&self, a: &[F]) -> bool {
        (0..self.dim()).all(|b| {
            let e = self.basis::<F>(b);
            self.mul(a, &e) == self.mul(&e, a)
        })
    }
}

/// Superinvolution tags.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InvolutionTag {
    #[serde(rename = "triv")]
    Identity,
    #[serde(rename = "conj")]
    Conj,
    #[serde(rename = "iota1")]
    Iota1,
    #[serde(rename = "iota2")]
    Iota2,
    /// Any other map, e.g. ι∘δ of a listed involution written as a matrix.
    #[serde(rename = "custom")]
    Custom,
}

impl FromStr for InvolutionTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "triv" | "id" | "identity" | "trivial" => Ok(InvolutionTag::Identity),
            "conj" => Ok(InvolutionTag::Conj),
            "iota1" => Ok(InvolutionTag::Iota1),
            "iota2" => Ok(InvolutionTag::Iota2),
            _ => Err(Error::Parse(format!("unknown involution `{s}`"))),
        }
    }
}

impl fmt::Display for InvolutionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            InvolutionTag::Identity => "triv",
            InvolutionTag::Conj => "conj",
            InvolutionTag::Iota1 => "iota1",
            InvolutionTag::Iota2 => "iota2",
            InvolutionTag::Custom => "custom",
        };
        write!(f, "{s}")
    }
}

/// An even base-field-linear map ι on D with ι² = id and
/// ι(XY) = (−1)^{|X||Y|} ι(Y)ι(X). Conjugation over R is R-linear on the
/// realified basis, so a rational matrix suffices in every case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Superinvolution {
    pub tag: InvolutionTag,
    pub matrix: Mat<Rational>,
}

impl Superinvolution {
    pub fn apply<F: Scalar>(&self, a: &[F]) -> Vec<F> {
        let m = self.matrix.map(|x| F::from_rational(x.clone()));
        m.mul_vec(a)
    }

    pub fn identity(alg: &DivisionSuperalgebra) -> Self {
        Superinvolution { tag: InvolutionTag::Identity, matrix: Mat::identity(alg.dim()) }
    }

    /// ι∘δ.
    pub fn compose_delta(&self, alg: &DivisionSuperalgebra) -> Self {
        let d = Mat::from_fn(alg.dim(), alg.dim(), |r, c| {
            if r != c {
                Rational::ZERO
            } else if alg.parity[r] == 1 {
                -Rational::ONE
            } else {
                Rational::ONE
            }
        });
        let matrix = self.matrix.mul(&d);
        let tag = match self.tag {
            _ if !alg.has_odd() => self.tag,
            InvolutionTag::Iota1 => InvolutionTag::Iota2,
            InvolutionTag::Iota2 => InvolutionTag::Iota1,
            _ => InvolutionTag::Custom,
        };
        Superinvolution { tag, matrix }
    }

    /// Checks ι² = id and the signed antihomomorphism law on basis pairs.
    pub fn satisfies_laws(&self, alg: &DivisionSuperalgebra) -> bool {
        let n = alg.dim();
        if self.matrix.mul(&self.matrix) != Mat::identity(n) {
            return false;
        }
        for a in 0..n {
            for b in 0..n {
                let ea = alg.basis::<Rational>(a);
                let eb = alg.basis::<Rational>(b);
                let l = self.apply(&alg.mul(&ea, &eb));
                let mut r = alg.mul(&self.apply(&eb), &self.apply(&ea));
                if alg.parity[a] & alg.parity[b] == 1 {
                    r = r.into_iter().map(|x| -x).collect();
                }
                if l != r {
                    return false;
                }
            }
        }
        // Evenness.
        (0..n).all(|a| {
            let img = self.apply(&alg.basis::<Rational>(a));
            alg.parity_of(&img) == Some(alg.parity[a])
        })
    }
}

/// All superinvolutions up to the standard choices: identity (and conjugation
/// where it exists) for purely even algebras, ι₁ and ι₂ for Cl1C over R, and
/// nothing for the remaining algebras with nonzero odd part.
pub fn superinvolutions(alg: &DivisionSuperalgebra) -> Vec<Superinvolution> {
    let n = alg.dim();
    let diag = |signs: &[i64]| Mat::from_fn(n, n, |r, c| if r == c { Rational::int(signs[r]) } else { Rational::ZERO });
    if !alg.has_odd() {
        return match alg.even {
            EvenPart::R => vec![Superinvolution::identity(alg)],
            EvenPart::C => vec![
                Superinvolution::identity(alg),
                Superinvolution { tag: InvolutionTag::Conj, matrix: diag(&[1, -1]) },
            ],
            // The identity is not an anti-automorphism of H.
            EvenPart::H => vec![Superinvolution { tag: InvolutionTag::Conj, matrix: diag(&[1, -1, -1, -1]) }],
        };
    }
    if alg.name == AlgebraName::Cl1C && alg.base == FieldTag::R {
        // basis 1, i, e, ie
        let mk = |s: i64| {
            let mut m = Mat::zeros(4, 4);
            m.set(0, 0, Rational::ONE);
            m.set(1, 1, -Rational::ONE);
            // ε ↦ s·iε, iε ↦ s·ε
            m.set(3, 2, Rational::int(s));
            m.set(2, 3, Rational::int(s));
            m
        };
        return vec![
            Superinvolution { tag: InvolutionTag::Iota1, matrix: mk(1) },
            Superinvolution { tag: InvolutionTag::Iota2, matrix: mk(-1) },
        ];
    }
    Vec::new()
}

pub fn involution_by_tag(alg: &DivisionSuperalgebra, tag: InvolutionTag) -> Result<Superinvolution> {
    superinvolutions(alg)
        .into_iter()
        .find(|i| i.tag == tag)
        .ok_or_else(|| Error::Incompatible(format!("{} has no superinvolution `{tag}`", alg.label)))
}

/// Basis map e_a ↦ sign_a · e'_{perm_a}.
pub type SignedPermutation = Vec<(usize, i64)>;

/// Does the signed basis map carry the table of `a` onto the table of `b`?
pub fn is_signed_isomorphism(a: &DivisionSuperalgebra, b: &DivisionSuperalgebra, f: &SignedPermutation) -> bool {
    let n = a.dim();
    let image = |v: &[Rational]| {
        let mut out = vec![Rational::ZERO; n];
        for (i, x) in v.iter().enumerate() {
            if !x.is_zero() {
                out[f[i].0] += x.clone() * Rational::int(f[i].1);
            }
        }
        out
    };
    for x in 0..n {
        for y in 0..n {
            let lhs = image(&a.table[x][y]);
            let rhs = b.mul(&image(&a.basis(x)), &image(&a.basis(y)));
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Backtracking search over parity-preserving signed permutations with the
/// unit fixed. Only feasible (and only needed) at dimension ≤ 8.
pub fn find_signed_isomorphism(a: &DivisionSuperalgebra, b: &DivisionSuperalgebra) -> Option<SignedPermutation> {
    let n = a.dim();
    if n != b.dim() || a.even_dim() != b.even_dim() {
        return None;
    }
    let mut f: Vec<Option<(usize, i64)>> = vec![None; n];
    let mut used = vec![false; n];
    f[a.unit_index] = Some((b.unit_index, 1));
    used[b.unit_index] = true;

    fn consistent(a: &DivisionSuperalgebra, b: &DivisionSuperalgebra, f: &[Option<(usize, i64)>]) -> bool {
        let n = a.dim();
        for x in 0..n {
            let Some((px, sx)) = f[x] else { continue };
            for y in 0..n {
                let Some((py, sy)) = f[y] else { continue };
                // e_x e_y = t e_z (monomial tables); need f(z) assigned to compare.
                let row = &a.table[x][y];
                let mut lhs = vec![Rational::ZERO; n];
                let mut complete = true;
                for (z, t) in row.iter().enumerate() {
                    if t.is_zero() {
                        continue;
                    }
                    match f[z] {
                        Some((pz, sz)) => lhs[pz] += t.clone() * Rational::int(sz),
                        None => complete = false,
                    }
                }
                if !complete {
                    continue;
                }
                let mut rhs = b.table[px][py].clone();
                for v in rhs.iter_mut() {
                    *v *= Rational::int(sx * sy);
                }
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    fn go(
        a: &DivisionSuperalgebra,
        b: &DivisionSuperalgebra,
        i: usize,
        f: &mut Vec<Option<(usize, i64)>>,
        used: &mut Vec<bool>,
    ) -> bool {
        let n = a.dim();
        if i == n {
            return true;
        }
        if f[i].is_some() {
            return go(a, b, i + 1, f, used);
        }
        for j in 0..n {
            if used[j] || b.parity[j] != a.parity[i] {
                continue;
            }
            for s in [1, -1] {
                f[i] = Some((j, s));
                used[j] = true;
                if consistent(a, b, f) && go(a, b, i + 1, f, used) {
                    return true;
                }
                used[j] = false;
                f[i] = None;
            }
        }
        false
    }

    if go(a, b, 0, &mut f, &mut used) {
        let out: SignedPermutation = f.into_iter().map(|x| x.unwrap()).collect();
        debug_assert!(is_signed_isomorphism(a, b, &out));
        Some(out)
    } else {
        None
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub name: String,
    pub base: FieldTag,
    pub real_dim: usize,
    pub basis: Vec<BasisSymbol>,
    pub table: Vec<Vec<Vec<Rational>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BasisSymbol {
    pub symbol: String,
    pub parity: Parity,
}

impl DivisionSuperalgebra {
    pub fn to_json(&self) -> AlgebraJson {
        AlgebraJson {
            name: self.label.clone(),
            base: self.base,
            real_dim: self.real_dim(),
            basis: self
                .symbols
                .iter()
                .zip(&self.parity)
                .map(|(s, p)| BasisSymbol { symbol: s.clone(), parity: *p })
                .collect(),
            table: self.table.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        let dims: Vec<usize> = AlgebraName::ALL.iter().map(|n| make_algebra(*n).real_dim()).collect();
        assert_eq!(dims, vec![1, 2, 4, 8, 4, 8, 4, 2, 2, 4]);
    }

    #[test]
    fn relations() {
        let cl1c = make_algebra(AlgebraName::Cl1C);
        let (i, e) = (cl1c.basis::<Rational>(1), cl1c.basis::<Rational>(2));
        assert_eq!(cl1c.mul(&e, &i), cl1c.mul(&i, &e));
        let cl2 = make_algebra(AlgebraName::Cl2R);
        let (i, e) = (cl2.basis::<Rational>(1), cl2.basis::<Rational>(2));
        let ie = cl2.mul(&i, &e);
        let ei: Vec<Rational> = cl2.mul(&e, &i).into_iter().map(|x| -x).collect();
        assert_eq!(ie, ei);
        let cl7 = make_algebra(AlgebraName::Cl7R);
        let e = cl7.basis::<Rational>(1);
        assert_eq!(cl7.inv(&e).unwrap(), e);
    }

    #[test]
    fn axioms_and_sop() {
        for name in AlgebraName::ALL {
            let a = make_algebra(name);
            assert!(a.is_associative() && a.has_two_sided_unit() && a.parity_additive() && a.basis_invertible());
            for inv in superinvolutions(&a) {
                assert!(inv.satisfies_laws(&a), "{name} {}", inv.tag);
            }
        }
        for k in 1..8 {
            let a = make_algebra(AlgebraName::real(k)).sop();
            let b = make_algebra(AlgebraName::real(8 - k));
            assert!(find_signed_isomorphism(&a, &b).is_some(), "k={k}");
        }
    }
}
