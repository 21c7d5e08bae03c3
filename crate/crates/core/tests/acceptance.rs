//! Acceptance gate: one test per criterion, each printing a single PASS/FAIL line.

use std::time::{Duration, Instant};

use qkernel::cyclotomic::CycloElem;
use qkernel::fusion_basis::{build_alternative_graph, build_lollipop_tree, count_colorings};
use qkernel::suites;
use qkernel::symplectic_mod::{
    faithfulness_check, irreducibility_report, projection, projection_support, sip_image,
    SymplecticSpace, Trivector, Verdict,
};
use qkernel::twist_rep::{independence_rank, load_fixture, reproduce_fixtures, verify_fixture, FIXTURE_NAMES};
use qkernel::Prime;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(n: u32, title: &str, ok: bool, start: Instant, limit: Duration, detail: String) {
    let elapsed = start.elapsed();
    let ok = ok && elapsed < limit;
    let tag = if ok { "PASS" } else { "FAIL" };
    println!("criterion {n:>2} {tag} {title} ({:.2?} of {:.0?}) {detail}", elapsed, limit);
    assert!(ok, "criterion {n} failed: {detail}");
}

fn prime(p: u32) -> Prime {
    Prime::new(p).unwrap()
}

#[test]
fn criterion_01_fixture_reproduction() {
    let start = Instant::now();
    let r = reproduce_fixtures(prime(5)).unwrap();
    let detail = format!(
        "mod h: {} | mod h^2: {} | differs from twist: {} | matches after negating third vector: {}",
        r.bounding_pair_mod_h.to_string().replace('\n', " "),
        r.conjugated_mod_h2.to_string().replace('\n', " "),
        r.conjugated_differs_from_twist,
        r.matches_after_third_vector_sign_flip
    );
    let ok = r.bounding_pair_matches && r.conjugated_matches && r.conjugated_differs_from_twist;
    report(1, "fixture reproduction at p=5", ok, start, Duration::from_secs(1), detail);
}

#[test]
fn criterion_02_integrality_gates() {
    let start = Instant::now();
    let mut ok = true;
    let mut notes = Vec::new();
    for p in [5u32, 7, 11, 13] {
        let pr = prime(p);
        for name in FIXTURE_NAMES {
            let r = verify_fixture(&load_fixture(name).unwrap(), pr).unwrap();
            ok &= r.passed;
        }
        let q = CycloElem::from_int(pr, i64::from(p)).div_h_pow(p - 1).unwrap();
        let (n1, n2) = (q.norm(), q.resultant_norm());
        ok &= n1 == n2 && (n1 == 1.into() || n1 == (-1).into());
        notes.push(format!("N(p/h^(p-1)) at {p} = {n1}"));
    }
    report(2, "integrality gates", ok, start, Duration::from_secs(1), notes.join(", "));
}

#[test]
fn criterion_03_filtration_laws() {
    let start = Instant::now();
    let mut ok = true;
    let mut runs = 0;
    for p in [5u32, 7] {
        for k in [1u32, 2] {
            for l in [1u32, 2] {
                let recs = suites::filtration(p, k, l, 200, u64::from(p * 100 + k * 10 + l)).unwrap();
                ok &= recs.iter().all(|r| r.passed());
                runs += 200;
            }
        }
    }
    report(3, "filtration laws", ok, start, Duration::from_secs(60), format!("{runs} pairs"));
}

#[test]
fn criterion_04_graph_independence() {
    let start = Instant::now();
    let mut ok = true;
    for g in 2..=5 {
        for p in [5u32, 7, 11] {
            let pr = prime(p);
            let tree = count_colorings(&build_lollipop_tree(g).unwrap(), pr, false).unwrap();
            let alt = count_colorings(&build_alternative_graph(g).unwrap(), pr, false).unwrap();
            let small = count_colorings(&build_lollipop_tree(g).unwrap(), pr, true).unwrap();
            ok &= tree == alt && tree == small;
        }
    }
    report(4, "dimension graph independence", ok, start, Duration::from_secs(300), String::new());
}

#[test]
fn criterion_05_independence_determinant() {
    let start = Instant::now();
    let mut ok = true;
    let mut g3 = String::new();
    for g in 3..=8 {
        for p in [5u32, 7, 11, 13] {
            let r = independence_rank(g, prime(p)).unwrap();
            let fallback_expected = (2 * g as u32 - 1).is_multiple_of(p);
            ok &= r.determinant_matches_closed_form && r.fallback_used == fallback_expected && r.independent;
            if g == 3 && p == 5 {
                g3 = format!("g=3 determinant {} fallback {}", r.determinant, r.fallback_used);
            }
        }
    }
    report(5, "independence determinant", ok, start, Duration::from_secs(10), g3);
}

#[test]
fn criterion_06_irreducibility_alternative() {
    let start = Instant::now();
    let mut ok = true;
    let mut notes = Vec::new();
    for g in 3..=5usize {
        for p in [5u32, 7] {
            if (g as u32 - 1).is_multiple_of(p) {
                continue;
            }
            let r = irreducibility_report(g, p, 100, 1).unwrap();
            ok &= r.verdict == Verdict::Irreducible && r.observed_dims.len() == 1;
            notes.push(format!("({g},{p}) {:?}", r.observed_dims));
        }
    }
    let r = irreducibility_report(6, 5, 100, 1).unwrap();
    let both_kinds = r.trials.iter().any(|t| t.closure_dim == 196) && r.trials.iter().any(|t| t.closure_dim == 208);
    ok &= r.verdict == Verdict::KernelIsOnlyProperSubmodule
        && r.counterexamples.is_empty()
        && r.observed_dims.iter().copied().eq([196, 208])
        && both_kinds;
    notes.push(format!("(6,5) {:?}", r.observed_dims));
    report(6, "irreducibility alternative", ok, start, Duration::from_secs(600), notes.join(" "));
}

#[test]
fn criterion_07_contraction_identities() {
    let start = Instant::now();
    let mut ok = true;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for g in 3..=8 {
        let s = SymplecticSpace::new(g).unwrap();
        for _ in 0..100 {
            let c: Vec<i64> = (0..2 * g).map(|_| rng.gen_range(-9..=9)).collect();
            let k = Trivector::omega_wedge(&s, &c).unwrap().contraction(&s).unwrap();
            ok &= k.iter().zip(&c).all(|(x, y)| *x == (g as i64 - 1) * y);
        }
    }
    let s = SymplecticSpace::new(3).unwrap();
    for p in [5u32, 7] {
        let mut pis = Vec::new();
        for l in 0..6 {
            for kind in [qkernel::symplectic_mod::ProjectionKind::Pi, qkernel::symplectic_mod::ProjectionKind::PiTilde] {
                let m = projection(&s, l, p, kind).unwrap();
                ok &= m.mul(&m).unwrap() == m;
                let support = projection_support(&s, l, kind);
                ok &= (0..m.rows()).all(|i| (0..m.cols()).all(|j| m.get(i, j) == u32::from(i == j && support[i])));
                if kind == qkernel::symplectic_mod::ProjectionKind::Pi {
                    pis.push(m);
                }
            }
        }
        let composite = qkernel::symplectic_mod::compose(&[pis[0].clone(), pis[2].clone(), pis[4].clone()]).unwrap();
        let pos = s.reduced_position(s.signed_monomial(0, 2, 4).unwrap().0).unwrap();
        ok &= (0..composite.rows())
            .all(|i| (0..composite.cols()).all(|j| composite.get(i, j) == u32::from(i == pos && j == pos)));
    }
    report(7, "contraction identities and projections", ok, start, Duration::from_secs(30), String::new());
}

#[test]
fn criterion_08_faithfulness() {
    let start = Instant::now();
    let mut ok = true;
    for g in 3..=5 {
        for p in [5u32, 7] {
            ok &= faithfulness_check(g, p).unwrap().passed();
        }
    }
    report(8, "faithfulness smoke", ok, start, Duration::from_secs(10), String::new());
}

#[test]
fn criterion_09_sip_witness() {
    let start = Instant::now();
    let e = |i: usize| {
        let mut v = vec![0i64; 6];
        v[i] = 1;
        v
    };
    let r = sip_image(3, &e(0), &e(2), &e(4), &[5, 7, 11, 13]).unwrap();
    let ok = r.kappa_mod_p.iter().all(|m| m.in_kernel) && r.content == 1 && r.primitive;
    report(9, "SIP witness", ok, start, Duration::from_secs(1), format!("content {}", r.content));
}

#[test]
fn criterion_10_d_prime_laws() {
    let start = Instant::now();
    let mut ok = true;
    for p in [5u32, 7] {
        ok &= suites::d_prime(p, 200, u64::from(p)).unwrap().iter().all(|r| r.passed());
    }
    report(10, "d' and d'' morphism laws", ok, start, Duration::from_secs(30), String::new());
}
