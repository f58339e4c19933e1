use std::collections::BTreeMap;

use num_traits::{One, Zero};
use qhopf::algebra::{monomials_up_to, normalize, parse_word, NCMonomial, NCPoly, Preset};
use qhopf::corep::Spin;
use qhopf::matrix::QMatrix;
use qhopf::states::*;
use qhopf::QRat;

const S3: Spin = Spin(6);

fn qr(s: &str) -> QRat {
    s.parse().unwrap()
}

fn word(p: Preset, w: &str) -> NCPoly {
    normalize(&parse_word(w).unwrap(), p).unwrap()
}

fn cat(id: &str, p: Preset) -> StateTable {
    state_from_catalog(id.parse().unwrap(), p, S3, 3).unwrap()
}

#[test]
fn every_catalog_state_is_idempotent_antipode_invariant_and_diagonal() {
    for p in [Preset::SUq2, Preset::SOq3, Preset::Uq2] {
        for id in catalog(p) {
            let phi = state_from_catalog(id, p, S3, 3).unwrap();
            for rep in [is_idempotent(&phi), antipode_invariant(&phi), diagonal_predicate(&phi), check_hermitian(&phi)] {
                assert!(rep.passed, "{p} {id}: {rep}");
            }
        }
    }
}

#[test]
fn catalog_tables_are_pairwise_distinct() {
    for p in [Preset::SUq2, Preset::SOq3, Preset::Uq2] {
        let tables: Vec<_> = catalog(p).into_iter().map(|id| (id, state_from_catalog(id, p, S3, 3).unwrap())).collect();
        for (i, (a, ta)) in tables.iter().enumerate() {
            for (b, tb) in &tables[i + 1..] {
                assert!(!tables_equal(ta, tb), "{p}: {a} == {b}");
            }
        }
    }
}

#[test]
fn convolution_identities() {
    let p = Preset::SUq2;
    let z6 = cat("zn:6", p);
    let prod = convolve(&cat("zn:2", p), &cat("zn:3", p)).unwrap();
    assert!(tables_equal(&prod, &z6));
    let h = cat("haar", p);
    let e = cat("counit", p);
    for id in catalog(p) {
        let phi = state_from_catalog(id, p, S3, 0).unwrap();
        assert!(tables_equal(&convolve(&e, &phi).unwrap(), &phi));
        assert!(tables_equal(&convolve(&h, &phi).unwrap(), &h));
    }
    let mismatch = state_from_catalog("haar".parse().unwrap(), p, Spin(4), 0).unwrap();
    assert!(convolve(&h, &mismatch).is_err());
}

#[test]
fn convolution_is_associative() {
    for p in [Preset::SUq2, Preset::Uq2] {
        let c = catalog(p);
        for a in &c {
            for b in c.iter().step_by(2) {
                for d in c.iter().step_by(3) {
                    let (ta, tb, td) = (
                        state_from_catalog(*a, p, S3, 3).unwrap(),
                        state_from_catalog(*b, p, S3, 3).unwrap(),
                        state_from_catalog(*d, p, S3, 3).unwrap(),
                    );
                    let l = convolve(&convolve(&ta, &tb).unwrap(), &td).unwrap();
                    let r = convolve(&ta, &convolve(&tb, &td).unwrap()).unwrap();
                    assert!(tables_equal(&l, &r));
                }
            }
        }
    }
}

#[test]
fn block_product_matches_tensor_expansion() {
    let cases = [
        (Preset::SUq2, "zn:3", "u1"),
        (Preset::SUq2, "zn:2", "zn:4"),
        (Preset::SUq2, "haar", "counit"),
        (Preset::Uq2, "torus:1,-1", "torus:2,0;0,3"),
        (Preset::Uq2, "suq2-semidirect:2", "torus:0,1"),
    ];
    for (p, a, b) in cases {
        let (ta, tb) = (cat(a, p), cat(b, p));
        let conv = convolve(&ta, &tb).unwrap();
        let max = if p == Preset::Uq2 { 3 } else { 4 };
        for m in monomials_up_to(p, max) {
            let x = NCPoly::monomial(p, m).unwrap();
            assert_eq!(conv.evaluate(&x).unwrap(), convolve_on(&ta, &tb, &x).unwrap(), "{p} {a}*{b} at {m}");
        }
    }
}

#[test]
fn haar_examples_and_jackson_sum() {
    let p = Preset::SUq2;
    let h = cat("haar", p);
    assert_eq!(h.block(Spin(0), 0).unwrap(), QMatrix::identity(1));
    assert!(h.block(Spin(2), 0).unwrap().is_zero());
    assert_eq!(h.evaluate(&word(p, "gs g")).unwrap(), qr("1/(1+q^2)"));
    assert_eq!(h.evaluate(&word(p, "as a")).unwrap(), qr("q^2/(1+q^2)"));
    for n in 0..=5u32 {
        let x = NCPoly::monomial(p, NCMonomial::new(0, n, n, 0, 0)).unwrap();
        let expected = (QRat::one() - QRat::q_pow(2)) / (QRat::one() - QRat::q_pow(2 * n as i64 + 2));
        assert_eq!(h.evaluate(&x).unwrap(), expected);
        assert_eq!(haar_value(&x).unwrap(), expected);
    }
    assert_eq!(cat("u1", p).evaluate(&word(p, "gs g")).unwrap(), QRat::zero());
    for id in catalog(p) {
        assert_eq!(state_from_catalog(id, p, S3, 0).unwrap().evaluate(&NCPoly::one(p)).unwrap(), QRat::one());
    }
}

#[test]
fn haar_table_agrees_with_closed_form() {
    for p in [Preset::SUq2, Preset::Uq2] {
        let h = cat("haar", p);
        for m in monomials_up_to(p, 4) {
            let x = NCPoly::monomial(p, m).unwrap();
            assert_eq!(h.evaluate(&x).unwrap(), haar_value(&x).unwrap(), "{m}");
        }
    }
}

#[test]
fn haar_invariance_and_uniqueness() {
    for p in [Preset::SUq2, Preset::Uq2, Preset::SOq3] {
        let r = check_haar_invariance(p, 4);
        assert!(r.passed, "{r}");
    }
    let r = haar_uniqueness(Preset::SUq2, 4);
    assert!(r.passed, "{r}");
}

#[test]
fn idempotency_failure_is_reported() {
    let p = Preset::SUq2;
    let mut blocks = BTreeMap::new();
    let half = QRat::from_rational(&num_rational::BigRational::new(1.into(), 2.into()));
    for s in S3.up_to() {
        let d = s.dim();
        let m = if s.twice() == 0 { QMatrix::identity(1) } else { QMatrix::diagonal(vec![half.clone(); d]) };
        blocks.insert((s.twice(), 0), m);
    }
    let avg = StateTable::from_blocks(p, S3, 0, blocks).unwrap();
    let rep = is_idempotent(&avg);
    assert!(!rep.passed);
    assert!(rep.witnesses[0].contains("s=1/2"), "{rep}");
}

#[test]
fn off_diagonal_table_breaks_antipode_invariance() {
    let p = Preset::SUq2;
    let mut blocks = BTreeMap::new();
    blocks.insert((0, 0), QMatrix::identity(1));
    let mut b = QMatrix::zeros(2, 2);
    b[(0, 1)] = QRat::one();
    blocks.insert((1, 0), b);
    let phi = StateTable::from_blocks(p, S3, 0, blocks).unwrap();
    assert!(!antipode_invariant(&phi).passed);
    assert!(!diagonal_predicate(&phi).passed);
}

#[test]
fn lemma_predicate_examples() {
    let h = cat("haar", Preset::Uq2);
    let r = lemma_predicates(&h);
    assert!(r.passed && r.notes.iter().any(|n| n.contains("hypothesis φ(u^(1)_00) = 0")), "{r}");
    let emb = cat("suq2-embedded", Preset::Uq2);
    assert!(lemma_predicates(&emb).passed);
    let u1 = cat("u1", Preset::SUq2);
    let r = lemma_predicates(&u1);
    assert!(r.passed && r.notes.iter().any(|n| n.contains("hypothesis false")), "{r}");
}

#[test]
fn null_space_and_multiplicative_domain() {
    let p = Preset::SUq2;
    let sample: Vec<NCPoly> = monomials_up_to(p, 2).into_iter().map(|m| NCPoly::monomial(p, m).unwrap()).collect();
    for id in ["haar", "u1", "zn:3"] {
        let r = null_space_symmetry(&cat(id, p), &sample).unwrap();
        assert!(r.passed, "{id}: {r}");
    }
    let u1 = cat("u1", p);
    let r = mult_domain_check(&u1, &[word(p, "as as")]).unwrap();
    assert!(r.passed, "{r}");
    assert!(mult_domain_check(&cat("haar", p), &sample).is_err());
    let u = Preset::Uq2;
    let t = cat("torus:full", u);
    assert!(mult_domain_check(&t, &[word(u, "as")]).unwrap().passed);
    assert!(mult_domain_check(&cat("counit", u), &[word(u, "v")]).unwrap().passed);
}

#[test]
fn so3_restriction() {
    let p = Preset::SUq2;
    for n in [1u32, 3, 5] {
        let a = restrict_to_so3(&cat(&format!("zn:{n}"), p)).unwrap();
        let b = restrict_to_so3(&cat(&format!("zn:{}", 2 * n), p)).unwrap();
        assert!(tables_equal(&a, &b), "n = {n}");
    }
    assert!(tables_equal(&restrict_to_so3(&cat("haar", p)).unwrap(), &cat("haar", Preset::SOq3)));
    assert!(tables_equal(&restrict_to_so3(&cat("counit", p)).unwrap(), &cat("counit", Preset::SOq3)));
    let back = extend_from_so3(&cat("u1", Preset::SOq3)).unwrap();
    assert!(tables_equal(&back, &cat("u1", p)));
    let x = word(Preset::SOq3, "gs g");
    assert_eq!(cat("haar", Preset::SOq3).evaluate(&x).unwrap(), qr("1/(1+q^2)"));
}

#[test]
fn gram_matrices_of_catalog_states_are_psd() {
    for id in ["haar", "u1", "zn:3", "counit"] {
        let phi = cat(id, Preset::SUq2);
        let m = gram_min_eigenvalue(&phi, 2, 0.5).unwrap();
        assert!(m > -1e-9, "{id}: {m}");
    }
}

#[test]
fn state_json_round_trip() {
    let phi = cat("torus:1,-1", Preset::Uq2);
    let j = serde_json::to_string(&phi.to_json()).unwrap();
    let back = StateTable::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
    assert!(tables_equal(&back, &phi));
}

#[test]
fn torus_anchors() {
    let u = Preset::Uq2;
    assert!(tables_equal(&cat("torus:point", u), &cat("counit", u)));
    let full = cat("torus:full", u);
    for ((s, p), b) in full.blocks() {
        for j in 0..Spin(*s).dim() {
            let two_k = Spin(*s).two_k(j);
            let r = p + (*s as i32 + two_k) / 2;
            let expected = if two_k == 0 && r == 0 { QRat::one() } else { QRat::zero() };
            assert_eq!(b[(j, j)], expected);
        }
    }
}
