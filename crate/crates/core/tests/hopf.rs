use qhopf::algebra::*;

#[test]
fn hopf_axioms_small_degree() {
    for p in Preset::ALL {
        for rep in [
            check_coassociativity(p, 3),
            check_counit_axiom(p, 3),
            check_antipode_axiom(p, 3),
            check_star_homomorphism(p, 3, 1),
            check_s_squared(p, 3),
        ] {
            assert!(rep.passed, "{rep}");
        }
    }
}

