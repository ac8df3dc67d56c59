//! The nine acceptance criteria, each reported on its own line.

mod common;

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use rand::Rng;
use superpair::division::{find_signed_isomorphism, make_algebra, superinvolutions, AlgebraName};
use superpair::dual_pairs::{build_row, minimal_corpus, verify_dual_pair};
use superpair::forms::adjoint;
use superpair::graded::{bracket, gl_d, spo_ambient, supercommutant};
use superpair::invariants::{
    complexification_check, double_commutant_check, howe_decompose, pfaffian_gap, preset, DEFAULT_GUARD, PRESETS,
};
use superpair::realizations::{crosscheck, FamilyTag};
use superpair::wc::{beta, split_slots, wc_algebra, FockBasis, WcElement};
use superpair::{FieldTag, Mat, Rational};

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn division_suite() -> Result<String, String> {
    let mut invs = 0;
    for name in AlgebraName::ALL {
        let a = make_algebra(name);
        ensure(a.is_associative(), format!("{name} not associative"))?;
        ensure(a.has_two_sided_unit(), format!("{name} has no unit"))?;
        ensure(a.basis_invertible(), format!("{name} has a non-invertible basis element"))?;
        ensure(a.parity_additive(), format!("{name} grading is not additive"))?;
        for inv in superinvolutions(&a) {
            ensure(inv.satisfies_laws(&a), format!("{name}: {} breaks the involution laws", inv.tag))?;
            invs += 1;
        }
    }
    for k in 1..8 {
        let sop = make_algebra(AlgebraName::real(k)).sop();
        ensure(find_signed_isomorphism(&sop, &make_algebra(AlgebraName::real(8 - k))).is_some(), format!("Cl{k}(R)^sop ≇ Cl{}(R)", 8 - k))?;
    }
    Ok(format!("10 algebras, {invs} superinvolutions, 7 sop isomorphisms"))
}

fn realization_crosscheck() -> Result<String, String> {
    let tags = FamilyTag::minimal_tags();
    for t in &tags {
        let r = crosscheck(t).map_err(|e| format!("{t}: {e}"))?;
        ensure(r.equal && r.bracket_closed, format!("{t}: realized {:?} vs reference {:?}", r.realized_dim, r.reference_dim))?;
    }
    Ok(format!("{} family tags match exactly", tags.len()))
}

fn classification_regression() -> Result<String, String> {
    let rows = minimal_corpus();
    for row in &rows {
        let label = format!("{}:{}", row.table, row.row);
        let inst = build_row(row, None).map_err(|e| format!("{label}: {e}"))?;
        let (a, b) = inst.e.space.graded_dim();
        ensure(a <= 12 && b <= 12, format!("{label}: E is ({a}|{b})"))?;
        let rep = verify_dual_pair(&inst).map_err(|e| format!("{label}: {e}"))?;
        ensure(rep.commutant_of_g_ok && rep.commutant_of_g_prime_ok, format!("{label}: centralizers differ"))?;
        let amb = spo_ambient(&inst.e).map_err(|e| e.to_string())?;
        let cc = supercommutant(&supercommutant(&inst.g, &amb).map_err(|e| e.to_string())?, &amb).map_err(|e| e.to_string())?;
        ensure(cc.span_eq(&inst.g), format!("{label}: C(C(g)) ≠ g"))?;
    }
    Ok(format!("{} rows are dual pairs with C(C(g)) = g", rows.len()))
}

fn adjoint_laws() -> Result<String, String> {
    let configs = form_configurations();
    let mut r = rng(4);
    for (name, form) in &configs {
        let g = gl_d(&form.basis());
        for _ in 0..100 {
            let (ps, pt) = (r.gen_range(0..2u8), r.gen_range(0..2u8));
            let s = random_element(&g, ps, &mut r);
            let t = random_element(&g, pt, &mut r);
            let tag = format!("{name} {} ε={} |γ|={}", form.involution.tag, form.sign, form.parity);
            let tn = adjoint(&t, pt, form).map_err(|e| format!("{tag}: {e}"))?;
            ensure(adjoint(&tn, pt, form).map_err(|e| e.to_string())? == t, format!("{tag}: T♮♮ ≠ T"))?;
            let lhs = adjoint(&s.mul(&t), ps ^ pt, form).map_err(|e| e.to_string())?;
            let mut rhs = tn.mul(&adjoint(&s, ps, form).map_err(|e| e.to_string())?);
            if ps & pt == 1 {
                rhs = rhs.neg();
            }
            ensure(lhs == rhs, format!("{tag}: (ST)♮ ≠ ±T♮S♮"))?;
        }
    }
    Ok(format!("{} (D, ι, γ) configurations × 100 random pairs", configs.len()))
}

fn weyl_clifford_core() -> Result<String, String> {
    let e = standard_e(2, 2, FieldTag::R);
    let alg = wc_algebra(&e).map_err(|e| e.to_string())?;
    for u in 0..4 {
        for v in 0..4 {
            let b = WcElement::gen(&alg, u).bracket(&WcElement::gen(&alg, v));
            ensure(b == WcElement::scalar(&alg, e.gram.get(u, v).clone()), format!("[e{u}, e{v}] ≠ B"))?;
        }
    }
    let mut r = rng(5);
    for _ in 0..100 {
        let (a, b, c) = (random_wc(&alg, 4, 3, &mut r), random_wc(&alg, 4, 3, &mut r), random_wc(&alg, 4, 3, &mut r));
        ensure(a.mul(&b).mul(&c) == a.mul(&b.mul(&c)), "associativity fails")?;
        let word = random_word(&alg, 4, &mut r);
        let gens: Vec<WcElement> = word.iter().map(|&i| WcElement::gen(&alg, i)).collect();
        let left = gens.iter().fold(WcElement::one(&alg), |acc, g| acc.mul(g));
        let right = gens.iter().rev().fold(WcElement::one(&alg), |acc, g| g.mul(&acc));
        ensure(left == right, format!("normal ordering of {word:?} depends on the order of rewriting"))?;
    }
    let mut pairs = 0;
    for (m, n) in [(2, 2), (4, 4), (6, 6)] {
        let e = standard_e(m, n, FieldTag::R);
        let alg = wc_algebra(&e).map_err(|e| e.to_string())?;
        let spo = spo_ambient(&e).map_err(|e| e.to_string())?;
        let betas: Vec<WcElement> = spo.basis.iter().map(|h| beta(&alg, &h.matrix)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
        for i in 0..betas.len() {
            for j in i..betas.len() {
                let want = beta(&alg, &bracket(&spo.basis[i], &spo.basis[j]).matrix).map_err(|e| e.to_string())?;
                ensure(betas[i].bracket(&betas[j]) == want, format!("β not a homomorphism on ({m}|{n})"))?;
                pairs += 1;
            }
        }
    }
    let e = split_e(2, 2);
    let alg = wc_algebra(&e).map_err(|e| e.to_string())?;
    let (v, d) = split_slots(&e.space.parities);
    let fock = FockBasis::new(&e, v.clone(), d.clone(), 4).map_err(|e| e.to_string())?;
    for &x in &d {
        for &y in &v {
            let dx = fock.act(&WcElement::gen(&alg, x));
            let my = fock.act(&WcElement::gen(&alg, y));
            let s = if e.space.parities[x] & e.space.parities[y] == 1 { Rational::ONE } else { -Rational::ONE };
            let lhs = fock.window(&dx.mul(&my).add(&my.mul(&dx).scale(&s)), 3);
            ensure(lhs == Mat::<Rational>::identity(lhs.rows).scale(e.gram.get(x, y)), "Fock identity fails")?;
        }
    }
    Ok(format!("commutators, 100 triples, {pairs} β pairs up to (6|6), Fock identity"))
}

fn double_commutant() -> Result<String, String> {
    let mut parts = Vec::new();
    for name in PRESETS {
        let t = Instant::now();
        let p = preset(name).map_err(|e| e.to_string())?;
        let r = double_commutant_check(&p.instance, p.component_reps, 4, DEFAULT_GUARD).map_err(|e| e.to_string())?;
        ensure(r.generated_inside_invariants, format!("{name}: generated ⊄ invariants"))?;
        ensure(r.all_equal(), format!("{name}: {:?}", r.findings))?;
        ensure(t.elapsed() < Duration::from_secs(300), format!("{name}: over budget"))?;
        let dims: Vec<usize> = r.per_degree.iter().map(|d| d.dim_invariants).collect();
        parts.push(format!("{name} {dims:?}"));
    }
    Ok(parts.join("; "))
}

fn pfaffian() -> Result<String, String> {
    let r = pfaffian_gap(DEFAULT_GUARD).map_err(|e| e.to_string())?;
    ensure(r.gap >= 1, format!("no gap: {} vs {}", r.dim_algebra_invariants, r.dim_group_invariants))?;
    Ok(format!("degree {}: {} ⊋ {} (gap {})", r.degree, r.dim_algebra_invariants, r.dim_group_invariants, r.gap))
}

fn howe() -> Result<String, String> {
    let r = howe_decompose(1, 1, 0, 3, DEFAULT_GUARD).map_err(|e| e.to_string())?;
    for d in &r.per_degree {
        ensure(d.dim == 2 * d.d + 1, format!("dim S^{} = {}", d.d, d.dim))?;
        ensure(d.commutant_equals_image, format!("degree {}: commutant ≠ image", d.d))?;
    }
    ensure(r.fingerprints_distinct, "fingerprints collide")?;
    let fp: Vec<String> = r.per_degree.iter().map(|d| d.fingerprint.join(",")).collect();
    Ok(format!("dims 1,3,5,7; commutant = image; fingerprints {fp:?}"))
}

fn real_reduction() -> Result<String, String> {
    let r = complexification_check(3, DEFAULT_GUARD).map_err(|e| e.to_string())?;
    ensure(r.real_dims == r.complex_dims && r.spans_equal, format!("{:?} vs {:?}", r.real_dims, r.complex_dims))?;
    Ok(format!("dims by degree {:?}, spans equal", r.real_dims))
}

/// Written straight to stderr so the lines survive libtest's capture.
fn report(line: String) {
    let _ = writeln!(std::io::stderr(), "{line}");
}

#[test]
fn acceptance() {
    let criteria: [(&str, Check, u64); 9] = [
        ("division superalgebra suite", division_suite, 5),
        ("realization cross-check", realization_crosscheck, 30),
        ("classification regression", classification_regression, 300),
        ("adjoint laws", adjoint_laws, 30),
        ("Weyl–Clifford core", weyl_clifford_core, 60),
        ("double commutant", double_commutant, 900),
        ("group-vs-algebra gap", pfaffian, 120),
        ("Howe duality", howe, 300),
        ("real-case reduction", real_reduction, 120),
    ];
    let mut failed = Vec::new();
    for (i, (name, check, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        let outcome = outcome.and_then(|s| if secs <= *budget as f64 { Ok(s) } else { Err(format!("over the {budget}s budget")) });
        match &outcome {
            Ok(detail) => report(format!("criterion {}: PASS  {name} — {detail} ({secs:.2}s)", i + 1)),
            Err(why) => {
                report(format!("criterion {}: FAIL  {name} — {why} ({secs:.2}s)", i + 1));
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
