//! Acceptance run: ten criteria, one `[PASS]`/`[FAIL]` line each.
//!
//! Runs without the libtest harness so the lines are always printed; the process
//! exits non-zero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use qhopf::algebra::*;
use qhopf::corep::{build_corep, orthogonality_constant, orthogonality_table, Spin};
use qhopf::dual::{check_block_sizes, check_grouplike, compress_blocks, grouplike_projection, is_central};
use qhopf::qzero::{self, Bounds, CircleKind, CircleMeasure, Level, MMeasure};
use qhopf::repnum::{numeric_haar, relation_residuals, spectrum_check, TruncatedRep, DEFAULT_THETA_GRID};
use qhopf::states::*;
use qhopf::{CheckReport, QRat};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const S3: Spin = Spin(6);

type Outcome = Result<(), String>;

fn require(rep: CheckReport) -> Outcome {
    if rep.passed {
        Ok(())
    } else {
        Err(rep.to_string())
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn qr(s: &str) -> QRat {
    s.parse().unwrap()
}

fn word(p: Preset, w: &str) -> NCPoly {
    normalize(&parse_word(w).unwrap(), p).unwrap()
}

fn cat(id: &str, p: Preset) -> StateTable {
    state_from_catalog(id.parse().unwrap(), p, S3, 3).unwrap()
}

fn hopf_axioms() -> Outcome {
    for p in [Preset::SUq2, Preset::Uq2] {
        require(check_coassociativity(p, 5))?;
        require(check_counit_axiom(p, 5))?;
        require(check_antipode_axiom(p, 5))?;
        require(check_star_homomorphism(p, 5, 2))?;
        require(check_s_squared(p, 5))?;
    }
    for p in [Preset::SU02, Preset::U02] {
        require(check_coassociativity(p, 4))?;
        require(check_counit_axiom(p, 4))?;
        require(check_star_homomorphism(p, 4, 2))?;
    }
    Ok(())
}

/// The unweighted entry is `sqrt(w_k w_l) ũ_kl`; `expected` lists it with the
/// radical `sqrt(1+q^2)` stripped, and `radical` says whether it was present.
fn corep_matrices() -> Outcome {
    let su = Preset::SUq2;
    let w = |s: &str| word(su, s);
    let c = |q: &str, s: &str| w(s).scale(&qr(q));
    let half = build_corep(Spin(1), su).map_err(|e| e.to_string())?;
    let expected_half = [[w("a"), c("-q", "gs")], [w("g"), w("as")]];
    ensure(half.weights == vec![QRat::one(), QRat::one()], || format!("spin 1/2 weights {:?}", half.weights))?;
    for (j, row) in expected_half.iter().enumerate() {
        for (l, x) in row.iter().enumerate() {
            ensure(half.entry(j, l) == x, || format!("u^(1/2) entry ({j},{l}) = {}", half.entry(j, l)))?;
        }
    }

    let one = build_corep(Spin(2), su).map_err(|e| e.to_string())?;
    ensure(one.weights == vec![QRat::one(), qr("1+q^2"), QRat::one()], || format!("spin 1 weights {:?}", one.weights))?;
    let centre = &NCPoly::one(su) - &w("gs g").scale(&qr("1+q^2"));
    let expected_one = [
        [(w("a a"), false), (c("-q", "gs a"), true), (c("q^2", "gs gs"), false)],
        [(w("g a"), true), (centre, false), (c("-q", "as gs"), true)],
        [(w("g g"), false), (w("as g"), true), (w("as as"), false)],
    ];
    for (j, row) in expected_one.iter().enumerate() {
        for (l, (x, radical)) in row.iter().enumerate() {
            let wk = &one.weights[j] * &one.weights[l];
            let rescaled = if *radical {
                ensure(wk == qr("1+q^2"), || format!("weight product at ({j},{l}) is {wk}"))?;
                one.entry(j, l).clone()
            } else if j == 1 && l == 1 {
                one.entry(j, l).scale(&one.weights[1])
            } else {
                ensure(wk.is_one(), || format!("weight product at ({j},{l}) is {wk}"))?;
                one.entry(j, l).clone()
            };
            ensure(&rescaled == x, || format!("u^(1) entry ({j},{l}): {rescaled} vs {x}"))?;
        }
    }

    for two_s in 0..=6 {
        let u = build_corep(Spin(two_s), su).map_err(|e| e.to_string())?;
        require(u.check_corep_identity())?;
        require(u.check_unitarity())?;
    }
    Ok(())
}

fn orthogonality() -> Outcome {
    for a in 0..=4u32 {
        for b in 0..=4u32 {
            let t = orthogonality_table(Spin(a), Spin(b)).map_err(|e| e.to_string())?;
            let (na, nb) = (Spin(a).dim(), Spin(b).dim());
            for row in 0..na * na {
                for col in 0..nb * nb {
                    let expected = if a == b && row == col { orthogonality_constant(Spin(a), Spin(a).two_k(row / na)) } else { QRat::zero() };
                    ensure(t[(row, col)] == expected, || format!("s={} s'={} ({row},{col}): {}", Spin(a), Spin(b), t[(row, col)]))?;
                }
            }
        }
    }
    for two_s in 0..=4u32 {
        let s = Spin(two_s);
        for j in 0..s.dim() {
            let two_k = s.two_k(j);
            let e = two_s as i64 - two_k as i64;
            let closed = &(QRat::q_pow(e) * (QRat::one() - QRat::q_pow(2))) / &(QRat::one() - QRat::q_pow(2 * (two_s as i64 + 1)));
            ensure(orthogonality_constant(s, two_k) == closed, || format!("constant s={s} 2k={two_k}"))?;
        }
    }
    Ok(())
}

fn haar_state() -> Outcome {
    let p = Preset::SUq2;
    let h = cat("haar", p);
    for n in 0..=5u32 {
        let x = word(p, "gs g").pow(n);
        let expected = (QRat::one() - QRat::q_pow(2)) / (QRat::one() - QRat::q_pow(2 * n as i64 + 2));
        ensure(haar_value(&x).map_err(|e| e.to_string())? == expected, || format!("closed form at n = {n}"))?;
        ensure(h.evaluate(&x).map_err(|e| e.to_string())? == expected, || format!("table at n = {n}"))?;
    }
    require(check_haar_invariance(p, 4))?;
    require(check_haar_invariance(Preset::Uq2, 4))?;
    require(haar_uniqueness(p, 4))
}

fn generic_catalogs() -> Outcome {
    for p in [Preset::SUq2, Preset::SOq3, Preset::Uq2] {
        let tables: Vec<_> = catalog(p).into_iter().map(|id| (id, state_from_catalog(id, p, S3, 3).unwrap())).collect();
        for (id, phi) in &tables {
            for rep in [is_idempotent(phi), antipode_invariant(phi), diagonal_predicate(phi)] {
                ensure(rep.passed, || format!("{p} {id}: {rep}"))?;
            }
        }
        for (i, (a, ta)) in tables.iter().enumerate() {
            for (b, tb) in &tables[i + 1..] {
                ensure(!tables_equal(ta, tb), || format!("{p}: {a} and {b} coincide"))?;
            }
        }
    }
    let p = Preset::SUq2;
    let prod = convolve(&cat("zn:2", p), &cat("zn:3", p)).map_err(|e| e.to_string())?;
    ensure(tables_equal(&prod, &cat("zn:6", p)), || "zn:2 * zn:3 differs from zn:6".into())
}

fn so_restriction() -> Outcome {
    let p = Preset::SUq2;
    for n in [1u32, 3, 5] {
        let a = restrict_to_so3(&cat(&format!("zn:{n}"), p)).map_err(|e| e.to_string())?;
        let b = restrict_to_so3(&cat(&format!("zn:{}", 2 * n), p)).map_err(|e| e.to_string())?;
        ensure(a.smax == S3, || "restriction lost blocks".into())?;
        ensure(tables_equal(&a, &b), || format!("restrictions of zn:{n} and zn:{} differ", 2 * n))?;
    }
    Ok(())
}

fn random_measure(rng: &mut ChaCha8Rng) -> MMeasure {
    let parts = rng.gen_range(1..=3);
    let weights: Vec<i64> = (0..parts).map(|_| rng.gen_range(1..=4)).collect();
    let total: i64 = weights.iter().sum();
    let comps: Vec<_> = weights
        .into_iter()
        .map(|w| {
            let circle = match rng.gen_range(0..3) {
                0 => CircleMeasure::full(),
                1 => CircleMeasure::cyclic(rng.gen_range(1..=6)).unwrap(),
                _ => CircleMeasure::point(num_rational::Rational64::new(rng.gen_range(0..6), 6)),
            };
            let level = if rng.gen_bool(0.2) { Level::Inf } else { Level::Fin(rng.gen_range(0..5)) };
            (num_rational::BigRational::new(w.into(), total.into()), MMeasure::product(circle, level).unwrap())
        })
        .collect();
    MMeasure::mix(&comps).unwrap()
}

fn q0_catalogs() -> Outcome {
    let b = Bounds { r: 4, k: 3, s: 4, l: 4 };
    for p in [Preset::U02, Preset::SU02, Preset::SO03] {
        for id in qzero::q0_catalog(p) {
            let phi = qzero::q0_state_catalog(id, p).map_err(|e| e.to_string())?;
            require(qzero::q0_is_idempotent(&phi, b))?;
            let mu = qzero::pullback(&phi).map_err(|e| e.to_string())?;
            ensure(qzero::m_is_idempotent_direct(&mu) && qzero::m_is_idempotent(&mu) == Some(id.expected_pullback()), || format!("{id}: pullback {mu}"))?;
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(61);
    let mut non_idempotent = 0;
    while non_idempotent < 100 {
        let mu = random_measure(&mut rng);
        let direct = qzero::m_is_idempotent_direct(&mu);
        ensure(qzero::m_is_idempotent(&mu).is_some() == direct, || format!("characterization disagrees at {mu}"))?;
        non_idempotent += usize::from(!direct);
    }
    for kind in [CircleKind::Full, CircleKind::Cyclic(1), CircleKind::Cyclic(5)] {
        for level in [Level::Fin(0), Level::Fin(2), Level::Inf] {
            let mu = MMeasure::product(kind.haar(), level).unwrap();
            ensure(qzero::m_is_idempotent(&mu) == Some((kind, level)) && qzero::m_is_idempotent_direct(&mu), || format!("{mu}"))?;
        }
    }

    let u = Preset::U02;
    let inv = qzero::q0_state_catalog("invariant-state".parse().unwrap(), u).unwrap();
    for f in qzero::q0_catalog(u) {
        let f = qzero::q0_state_catalog(f, u).unwrap();
        require(qzero::q0_invariance_check(&inv, &f, b).map_err(|e| e.to_string())?)?;
    }
    ensure(inv.evaluate(&word(u, "as a")).unwrap().is_zero(), || "φ(a*a) != 0".into())?;
    ensure(inv.evaluate(&word(u, "a as")).unwrap().is_one(), || "φ(aa*) != 1".into())?;
    let rep = qzero::q0_null_space_symmetry(&inv, &[word(u, "a")]).map_err(|e| e.to_string())?;
    ensure(!rep.passed && rep.witnesses.iter().any(|w| w.contains("x = a")), || format!("no asymmetry witness: {rep}"))
}

fn dual_hypergroup() -> Outcome {
    let p = Preset::SUq2;
    let su = |id: &str| state_from_catalog(id.parse().unwrap(), p, S3, 0).unwrap();
    for id in ["counit", "haar", "zn:2", "u1", "zn:3", "zn:4", "zn:5", "zn:6"] {
        let phi = su(id);
        let proj = grouplike_projection(&phi).map_err(|e| e.to_string())?;
        ensure(proj.is_hermitian() && proj.is_idempotent(), || format!("{id} is not a projection"))?;
        require(check_grouplike(&proj, &phi).map_err(|e| e.to_string())?)?;
        let central = matches!(id, "counit" | "haar" | "zn:2");
        ensure(is_central(&proj) == central, || format!("{id}: centrality should be {central}"))?;
        require(check_block_sizes(&phi).map_err(|e| e.to_string())?)?;
    }
    let sizes = |id: &str| compress_blocks(&grouplike_projection(&su(id)).unwrap()).unwrap().sizes;
    ensure(sizes("zn:2") == vec![1, 3, 5, 7], || format!("zn:2 sizes {:?}", sizes("zn:2")))?;
    ensure(sizes("u1") == vec![1, 1, 1, 1], || format!("u1 sizes {:?}", sizes("u1")))?;
    ensure(sizes("zn:4") == vec![1, 1, 3, 3], || format!("zn:4 sizes {:?}", sizes("zn:4")))
}

fn numeric_oracle() -> Outcome {
    for q0 in [0.5, -0.5, 0.9, -0.9] {
        for theta in [0.0, 1.0, 2.0] {
            let rep = TruncatedRep::new(q0, theta, 64).map_err(|e| e.to_string())?;
            let r = relation_residuals(&rep);
            ensure(r.max_interior() <= 1e-10, || format!("q0 = {q0}, θ = {theta}: residual {}", r.max_interior()))?;
            require(spectrum_check(&rep))?;
        }
    }
    let monos = monomials_up_to(Preset::SUq2, 4);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for q0 in [0.5, -0.5, 0.9] {
        for m in monos.choose_multiple(&mut rng, 20) {
            let x = NCPoly::monomial(Preset::SUq2, *m).unwrap();
            let exact = haar_value(&x).unwrap().eval_f64(q0).unwrap();
            let num = numeric_haar(&x, q0, 200, DEFAULT_THETA_GRID).map_err(|e| e.to_string())?;
            ensure((num.re - exact).abs() <= 1e-7 && num.im.abs() <= 1e-7, || format!("{m} at {q0}: {num} vs {exact}"))?;
        }
    }
    Ok(())
}

fn lemma_conclusions() -> Outcome {
    let u = Preset::Uq2;
    for id in ["haar", "suq2-embedded"] {
        let phi = cat(id, u);
        require(lemma_predicates(&phi))?;
        for s in 1..=3u32 {
            let spin = Spin(2 * s);
            let centre = spin.position(0).unwrap();
            for p in -3..=3 {
                let block = phi.block(spin, p).map_err(|e| e.to_string())?;
                ensure(block[(centre, centre)].is_zero(), || format!("{id}: N_{{{s},{p}}}[0,0] != 0"))?;
            }
        }
        for (&(two_s, p), block) in phi.blocks() {
            ensure(two_s == 0 || block.is_zero(), || format!("{id}: block s={} p={p} nonzero", Spin(two_s)))?;
        }
    }
    let monos = monomials_up_to(u, 3);
    let stride = (monos.len() / 50).max(1);
    let sample: Vec<NCPoly> = monos.iter().step_by(stride).take(50).map(|m| NCPoly::monomial(u, *m).unwrap()).collect();
    ensure(sample.len() == 50, || format!("sample has {} monomials", sample.len()))?;
    let tori: Vec<_> = catalog(u).into_iter().filter(|id| id.to_string().starts_with("torus")).collect();
    ensure(!tori.is_empty(), || "no torus states".into())?;
    for id in tori {
        let phi = state_from_catalog(id, u, S3, 3).unwrap();
        require(mult_domain_check(&phi, &sample).map_err(|e| format!("{id}: {e}"))?)?;
    }
    Ok(())
}

fn run(n: usize, title: &str, f: fn() -> Outcome) -> (bool, String) {
    let start = Instant::now();
    let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
        Err(format!("panic: {}", msg.unwrap_or_default()))
    });
    let secs = Duration::as_secs_f64(&start.elapsed());
    match res {
        Ok(()) => (true, format!("[PASS] criterion {n}: {title} ({secs:.1}s)")),
        Err(e) => (false, format!("[FAIL] criterion {n}: {title} ({secs:.1}s)\n{e}")),
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("Hopf axioms", hopf_axioms),
        ("corepresentation matrices and weighted unitarity", corep_matrices),
        ("orthogonality of matrix elements", orthogonality),
        ("Haar state values, invariance and uniqueness", haar_state),
        ("generic-q idempotent catalogs", generic_catalogs),
        ("SO_q(3) restriction coincidence", so_restriction),
        ("q = 0 catalogs and measures on M", q0_catalogs),
        ("group-like projections and hypergroup blocks", dual_hypergroup),
        ("numeric representation oracle", numeric_oracle),
        ("lemma conclusions on U_q(2)", lemma_conclusions),
    ];
    let results: Vec<(bool, String)> = std::thread::scope(|scope| {
        let handles: Vec<_> = criteria.iter().enumerate().map(|(i, (title, f))| scope.spawn(move || run(i + 1, title, *f))).collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    for (_, line) in &results {
        println!("{line}");
    }
    let failed = results.iter().filter(|r| !r.0).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
