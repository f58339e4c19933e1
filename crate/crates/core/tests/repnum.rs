use qhopf::algebra::{monomials_up_to, normalize, parse_word, NCPoly, Preset};
use qhopf::repnum::*;
use qhopf::states::haar_value;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const Q0S: [f64; 4] = [0.5, -0.5, 0.9, -0.9];

fn word(w: &str) -> NCPoly {
    normalize(&parse_word(w).unwrap(), Preset::SUq2).unwrap()
}

#[test]
fn relations_hold_away_from_the_edge() {
    for q0 in Q0S {
        for theta in [0.0, 1.0, 2.0] {
            let res = relation_residuals(&TruncatedRep::new(q0, theta, 64).unwrap());
            assert!(res.max_interior() <= 1e-10, "q0 = {q0}, θ = {theta}: {:?}", res.interior);
        }
    }
}

#[test]
fn spectrum_of_gamma_star_gamma() {
    for q0 in Q0S {
        let rep = spectrum_check(&TruncatedRep::new(q0, 0.7, 64).unwrap());
        assert!(rep.passed, "{rep}");
    }
}

#[test]
fn numeric_haar_examples() {
    let h = numeric_haar(&word("gs g"), 0.5, 200, 64).unwrap();
    assert!((h.re - 0.8).abs() < 1e-8 && h.im.abs() < 1e-12);
    assert!(numeric_haar(&word("a"), 0.5, 200, 64).unwrap().norm() < 1e-8);
    assert!((numeric_haar(&NCPoly::one(Preset::SUq2), 0.5, 200, 64).unwrap().re - 1.0).abs() < 1e-12);
    assert!(numeric_haar(&NCPoly::one(Preset::Uq2), 0.5, 200, 64).is_err());
    assert!(numeric_haar(&word("a"), 0.0, 200, 64).is_err());
    assert!(jackson_tail(0.99, 64) > 0.1);
}

#[test]
fn numeric_haar_matches_symbolic() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let monos = monomials_up_to(Preset::SUq2, 4);
    for q0 in [0.5, -0.5, 0.9] {
        for m in monos.choose_multiple(&mut rng, 20) {
            let x = NCPoly::monomial(Preset::SUq2, *m).unwrap();
            let exact = haar_value(&x).unwrap().eval_f64(q0).unwrap();
            let num = numeric_haar(&x, q0, 200, DEFAULT_THETA_GRID).unwrap();
            assert!((num.re - exact).abs() <= 1e-7 && num.im.abs() <= 1e-7, "{m} at {q0}: {num} vs {exact}");
        }
    }
}

#[test]
fn one_dimensional_family() {
    let x = &word("a a") + &word("gs g");
    let z = rho_eval(&x, 0.5, 0.25).unwrap();
    assert!((z - num_complex::Complex64::from_polar(1.0, 0.5)).norm() < 1e-15);
}
