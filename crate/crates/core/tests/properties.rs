//! Randomized invariants: superalgebra axioms, realification, elimination,
//! adjoints, and the Weyl–Clifford algebra.

mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use superpair::division::{make_algebra, AlgebraName};
use superpair::forms::adjoint;
use superpair::graded::{bracket, gl_d, realify, spo_ambient, DMatrix, Homogeneous, ModuleBasis, Side};
use superpair::linsolve::{nullspace, nullspace_bareiss, span_eq};
use superpair::wc::{ad_on_e, beta, group_act, symbol, wc_algebra, GroupElement, WcElement};
use superpair::{FieldTag, Mat, Rational};

fn sign(odd: bool) -> Rational {
    if odd {
        -Rational::ONE
    } else {
        Rational::ONE
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn super_jacobi_in_spo(seed in any::<u64>(), px in 0u8..2, py in 0u8..2, pz in 0u8..2) {
        let mut r = rng(seed);
        let spo = spo_ambient(&standard_e(4, 2, FieldTag::R)).unwrap();
        let h = |p, r: &mut _| Homogeneous { parity: p, matrix: random_element(&spo, p, r) };
        let (x, y, z) = (h(px, &mut r), h(py, &mut r), h(pz, &mut r));
        // (−1)^{|x||z|}[x,[y,z]] + cyclic = 0
        let t1 = bracket(&x, &bracket(&y, &z)).matrix.scale(&sign(px & pz == 1));
        let t2 = bracket(&y, &bracket(&z, &x)).matrix.scale(&sign(py & px == 1));
        let t3 = bracket(&z, &bracket(&x, &y)).matrix.scale(&sign(pz & py == 1));
        prop_assert!(t1.add(&t2).add(&t3).is_zero());
        prop_assert!(spo.contains(&bracket(&x, &y).matrix));
    }

    #[test]
    fn realify_is_multiplicative(seed in any::<u64>(), k in 0usize..10) {
        let mut r = rng(seed);
        let alg = make_algebra(AlgebraName::ALL[k]);
        let par = vec![0, 1];
        let random = |r: &mut _| {
            let mut m = DMatrix::zeros(alg.clone(), par.clone(), par.clone());
            for c in 0..2 {
                for a in 0..2 {
                    let d: Vec<Rational> = (0..alg.dim()).map(|_| small(r)).collect();
                    m = m.add(&DMatrix::elementary(alg.clone(), par.clone(), c, a, d));
                }
            }
            m
        };
        let (a, b) = (random(&mut r), random(&mut r));
        let basis = ModuleBasis::new(alg.clone(), par.clone(), Side::Right);
        prop_assert_eq!(realify(&a.mul(&b), &basis), realify(&a, &basis).mul(&realify(&b, &basis)));
        prop_assert_eq!(realify(&a.add(&b), &basis), realify(&a, &basis).add(&realify(&b, &basis)));
    }

    #[test]
    fn bareiss_matches_gauss_jordan(seed in any::<u64>(), rows in 1usize..7, cols in 1usize..9) {
        let mut r = rng(seed);
        let m: Vec<Vec<Rational>> = (0..rows)
            .map(|_| (0..cols).map(|_| if r.gen_bool(0.4) { Rational::ZERO } else { small(&mut r) }).collect())
            .collect();
        let a = nullspace(&m, cols);
        let b = nullspace_bareiss(&m, cols);
        prop_assert!(span_eq(&a, &b, cols));
        for v in &a {
            for row in &m {
                let dot = row.iter().zip(v).fold(Rational::ZERO, |acc, (x, y)| acc + x.clone() * y.clone());
                prop_assert_eq!(dot, Rational::ZERO);
            }
        }
    }

    #[test]
    fn adjoint_laws(seed in any::<u64>()) {
        let mut r = rng(seed);
        let configs = form_configurations();
        let (_, form) = &configs[r.gen_range(0..configs.len())];
        let g = gl_d(&form.basis());
        let (ps, pt) = (r.gen_range(0..2u8), r.gen_range(0..2u8));
        let s = random_element(&g, ps, &mut r);
        let t = random_element(&g, pt, &mut r);
        let tn = adjoint(&t, pt, form).unwrap();
        prop_assert_eq!(adjoint(&tn, pt, form).unwrap(), t.clone());
        let lhs = adjoint(&s.mul(&t), ps ^ pt, form).unwrap();
        let rhs = tn.mul(&adjoint(&s, ps, form).unwrap()).scale(&sign(ps & pt == 1));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn wc_associativity(seed in any::<u64>()) {
        let mut r = rng(seed);
        let alg = wc_algebra(&standard_e(2, 2, FieldTag::R)).unwrap();
        let (a, b, c) = (random_wc(&alg, 4, 3, &mut r), random_wc(&alg, 4, 3, &mut r), random_wc(&alg, 4, 3, &mut r));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn normal_ordering_is_confluent(seed in any::<u64>(), len in 0usize..7) {
        let mut r = rng(seed);
        let alg = wc_algebra(&standard_e(2, 3, FieldTag::R)).unwrap();
        let word = random_word(&alg, len, &mut r);
        let gens: Vec<WcElement> = word.iter().map(|&i| WcElement::gen(&alg, i)).collect();
        let left = gens.iter().fold(WcElement::one(&alg), |acc, g| acc.mul(g));
        let right = gens.iter().rev().fold(WcElement::one(&alg), |acc, g| g.mul(&acc));
        let split = r.gen_range(0..=len);
        let a = gens[..split].iter().fold(WcElement::one(&alg), |acc, g| acc.mul(g));
        let b = gens[split..].iter().fold(WcElement::one(&alg), |acc, g| acc.mul(g));
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(&left, &a.mul(&b));
        prop_assert!(left.degree() <= len);
    }

    #[test]
    fn symbol_is_multiplicative_and_equivariant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let e = standard_e(2, 2, FieldTag::R);
        let alg = wc_algebra(&e).unwrap();
        let (a, b) = (random_wc(&alg, 2, 3, &mut r), random_wc(&alg, 2, 3, &mut r));
        let (ka, kb) = (a.degree(), b.degree());
        let prod = symbol(&a.mul(&b), ka + kb).unwrap();
        prop_assert_eq!(prod, symbol(&a, ka).unwrap().mul(&symbol(&b, kb).unwrap()));
        let g = cayley(&e, &mut r);
        prop_assert_eq!(symbol(&group_act(&g, &a), ka).unwrap(), symbol(&a, ka).unwrap().act(&g.matrix));
    }

    #[test]
    fn group_action_is_an_automorphism(seed in any::<u64>()) {
        let mut r = rng(seed);
        let e = standard_e(2, 2, FieldTag::R);
        let alg = wc_algebra(&e).unwrap();
        let g = cayley(&e, &mut r);
        let (a, b) = (random_wc(&alg, 3, 3, &mut r), random_wc(&alg, 3, 3, &mut r));
        prop_assert_eq!(group_act(&g, &a.mul(&b)), group_act(&g, &a).mul(&group_act(&g, &b)));
        // β is equivariant: g·β(X) = β(gXg⁻¹)
        let spo = spo_ambient(&e).unwrap();
        let x = random_element(&spo, r.gen_range(0..2), &mut r);
        let conj = g.matrix.mul(&x).mul(&g.matrix.inverse().unwrap());
        prop_assert_eq!(group_act(&g, &beta(&alg, &x).unwrap()), beta(&alg, &conj).unwrap());
    }
}

/// Cayley transform (1 − X)⁻¹(1 + X) of a random even X ∈ spo(E,B).
fn cayley(e: &superpair::graded::BilinearSpace, r: &mut rand_chacha::ChaCha8Rng) -> GroupElement {
    let spo = spo_ambient(e).unwrap();
    let id = Mat::<Rational>::identity(e.dim());
    loop {
        let x = random_element(&spo, 0, r).scale(&Rational::new(1, 3));
        if let Ok(inv) = id.sub(&x).inverse() {
            return GroupElement::new(e, inv.mul(&id.add(&x)), "cayley").unwrap();
        }
    }
}

#[test]
fn beta_is_a_bracket_isomorphism_up_to_6_6() {
    for (m, n) in [(2, 0), (0, 2), (2, 1), (2, 2), (4, 3), (6, 6)] {
        let e = standard_e(m, n, FieldTag::R);
        let alg = wc_algebra(&e).unwrap();
        let spo = spo_ambient(&e).unwrap();
        let betas: Vec<WcElement> = spo.basis.iter().map(|h| beta(&alg, &h.matrix).unwrap()).collect();
        for (x, bx) in spo.basis.iter().zip(&betas) {
            assert_eq!(ad_on_e(bx).unwrap(), x.matrix);
        }
        for (i, x) in spo.basis.iter().enumerate() {
            for (j, y) in spo.basis.iter().enumerate().skip(i) {
                let lhs = betas[i].bracket(&betas[j]);
                assert_eq!(lhs, beta(&alg, &bracket(x, y).matrix).unwrap(), "({m}|{n}) basis pair {i},{j}");
            }
        }
    }
}
