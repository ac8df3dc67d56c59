//! Shared fixtures for the integration tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use superpair::division::{make_algebra, superinvolutions, Algebra, AlgebraName};
use superpair::forms::{standard_form, SuperhermitianForm};
use superpair::graded::{BilinearSpace, LieSpan, Side};
use superpair::matrix::{j_matrix, SuperSpace};
use superpair::wc::{Mono, Wc, WcElement};
use superpair::{FieldTag, Mat, Parity, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small(r: &mut ChaCha8Rng) -> Rational {
    Rational::int(r.gen_range(-3..=3))
}

/// E = R^{2m|n} with B = J_{2m} ⊕ Id_n.
pub fn standard_e(two_m: usize, n: usize, field: FieldTag) -> BilinearSpace {
    let mut g = Mat::zeros(two_m + n, two_m + n);
    g.put(0, 0, &j_matrix(two_m));
    g.put(two_m, two_m, &Mat::identity(n));
    BilinearSpace::new(SuperSpace::standard(two_m, n, field), g).unwrap()
}

/// Random combination of the basis elements of one parity.
pub fn random_element(span: &LieSpan, parity: Parity, r: &mut ChaCha8Rng) -> Mat {
    let n = span.n();
    span.part(parity).fold(Mat::zeros(n, n), |acc, h| acc.add(&h.matrix.scale(&small(r))))
}

/// Random WC element: a few monomials of degree ≤ `max_deg`.
pub fn random_wc(alg: &Wc, max_deg: usize, terms: usize, r: &mut ChaCha8Rng) -> WcElement {
    let n = alg.n();
    let mut out = WcElement::zero(alg);
    for _ in 0..terms {
        let mut m: Mono = vec![0; n];
        let deg = r.gen_range(0..=max_deg);
        for _ in 0..deg {
            let i = r.gen_range(0..n);
            if alg.parity(i) == 1 && m[i] == 1 {
                continue;
            }
            m[i] += 1;
        }
        out = out.add(&WcElement::monomial(alg, m, small(r)));
    }
    out
}

/// A random word in the generators, multiplied in order.
pub fn random_word(alg: &Wc, len: usize, r: &mut ChaCha8Rng) -> Vec<usize> {
    (0..len).map(|_| r.gen_range(0..alg.n())).collect()
}

const SHAPES: [&[usize]; 9] = [&[1], &[1, 1], &[1, 0], &[0, 1], &[1, 1, 1], &[1, 0, 1], &[1, 1, 0], &[1, 1, 1, 1], &[1, 0, 1, 0]];

/// One standard form per (D, ι, ε, parity) that admits one.
pub fn form_configurations() -> Vec<(AlgebraName, SuperhermitianForm)> {
    let mut out = Vec::new();
    for name in AlgebraName::ALL {
        let alg: Algebra = make_algebra(name);
        for inv in superinvolutions(&alg) {
            for sign in [1, -1] {
                for parity in [0, 1] {
                    let found = SHAPES.iter().find_map(|s| {
                        standard_form(alg.clone(), inv.tag, sign, parity, s, Side::Right).ok().filter(|f| f.rank() > 0)
                    });
                    if let Some(f) = found {
                        out.push((name, f));
                    }
                }
            }
        }
    }
    out
}

/// E = R^{2m|2n} with B = J_{2m} ⊕ (0 Id; Id 0), so that every parity run
/// splits into isotropic halves.
pub fn split_e(two_m: usize, two_n: usize) -> BilinearSpace {
    let mut g = Mat::zeros(two_m + two_n, two_m + two_n);
    g.put(0, 0, &j_matrix(two_m));
    let h = two_n / 2;
    for i in 0..h {
        g.set(two_m + i, two_m + h + i, Rational::ONE);
        g.set(two_m + h + i, two_m + i, Rational::ONE);
    }
    BilinearSpace::new(SuperSpace::standard(two_m, two_n, FieldTag::R), g).unwrap()
}
