//! Invariants of the Weyl–Clifford algebra against classical answers.

mod common;

use common::*;
use superpair::error::Error;
use superpair::graded::spo_ambient;
use superpair::invariants::{howe_decompose, pfaffian_gap, sym_dim, wc_invariants, HCPair, DEFAULT_GUARD};
use superpair::wc::{wc_algebra, GroupElement};
use superpair::{FieldTag, Mat};

#[test]
fn weyl_algebra_has_only_constant_sp2_invariants() {
    // S(C²)^{Sp(2)} = C, so WC^{sp(2)} is the scalars in every degree.
    let e = standard_e(2, 0, FieldTag::C);
    let alg = wc_algebra(&e).unwrap();
    let inv = wc_invariants(&HCPair::connected(spo_ambient(&e).unwrap()), &alg, 4, DEFAULT_GUARD).unwrap();
    assert_eq!((0..=4).map(|k| inv.dim_upto(k)).collect::<Vec<_>>(), vec![1; 5]);
}

#[test]
fn clifford_o2_invariants_are_the_even_part() {
    let e = standard_e(0, 2, FieldTag::C);
    let alg = wc_algebra(&e).unwrap();
    let inv = wc_invariants(&HCPair::connected(spo_ambient(&e).unwrap()), &alg, 2, DEFAULT_GUARD).unwrap();
    assert_eq!((0..=2).map(|k| inv.dim_upto(k)).collect::<Vec<_>>(), vec![1, 1, 2]);
}

#[test]
fn pfaffian_witness_is_the_odd_product() {
    let r = pfaffian_gap(DEFAULT_GUARD).unwrap();
    assert_eq!(r.witness.len(), 1);
    assert_eq!(r.witness[0].odd, vec![0, 1]);
}

#[test]
fn group_elements_and_representatives_are_validated() {
    let e = standard_e(2, 1, FieldTag::C);
    let spo = spo_ambient(&e).unwrap();
    assert!(HCPair::new(spo.clone(), vec![GroupElement::reflection(&e, 2).unwrap()]).is_ok());
    // diag(2, 1, 1) does not preserve B.
    assert!(GroupElement::new(&e, Mat::from_ints(&[&[2, 0, 0], &[0, 1, 0], &[0, 0, 1]]), "scale").is_err());
    // A reflection of one symplectic coordinate is not in Sp(2).
    assert!(GroupElement::reflection(&e, 0).is_err());
    // The odd reflection does not normalize the span of one odd element.
    let odd = spo.part(1).next().unwrap().clone();
    let line = superpair::graded::LieSpan::new(spo.space.clone(), vec![odd]);
    let flip = Mat::from_ints(&[&[0, 1, 0], &[-1, 0, 0], &[0, 0, 1]]);
    let g = GroupElement::new(&e, flip, "rotation").unwrap();
    assert!(HCPair::new(line, vec![g]).is_err());
}

#[test]
fn guard_is_enforced() {
    let e = standard_e(4, 2, FieldTag::C);
    let alg = wc_algebra(&e).unwrap();
    let r = wc_invariants(&HCPair::connected(spo_ambient(&e).unwrap()), &alg, 6, 50);
    assert!(matches!(r, Err(Error::Resource(_))));
}

#[test]
fn howe_dimensions_follow_the_counting_formula() {
    let r = howe_decompose(1, 1, 1, 2, DEFAULT_GUARD).unwrap();
    for d in &r.per_degree {
        // V = C^{1|1} ⊗ C^{2|1} has graded dimension (3|3).
        assert_eq!(d.dim, sym_dim(3, 3, d.d));
    }
    assert!(r.per_degree.iter().all(|d| d.commutant_equals_image));
}
