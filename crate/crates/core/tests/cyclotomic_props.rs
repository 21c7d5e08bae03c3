use num_bigint::BigInt;
use proptest::prelude::*;
use qkernel::cyclotomic::{CycloElem, CycloMatrix, TruncElem, Valuation, filtration_check};
use qkernel::Prime;

fn prime_strategy() -> impl Strategy<Value = Prime> {
    prop::sample::select(vec![5u32, 7, 11]).prop_map(|p| Prime::new(p).unwrap())
}

fn elem_for(p: Prime) -> impl Strategy<Value = CycloElem> {
    prop::collection::vec(-50i64..50, p.get() as usize - 1)
        .prop_map(move |c| CycloElem::from_i64_coeffs(p, &c).unwrap())
}

fn pair() -> impl Strategy<Value = (CycloElem, CycloElem)> {
    prime_strategy().prop_flat_map(|p| (elem_for(p), elem_for(p)))
}

/// Reduction mod h^k by peeling off residues one h at a time.
fn digits_oracle(x: &CycloElem, k: usize) -> TruncElem {
    let p = x.prime();
    let mut cur = x.clone();
    let mut digits = Vec::with_capacity(k);
    for _ in 0..k {
        let d = cur.residue();
        digits.push(d);
        cur = (&cur - &CycloElem::from_int(p, i64::from(d)))
            .div_h()
            .expect("residue removed");
    }
    TruncElem::from_coeffs(p, k, digits).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn truncation_is_a_ring_morphism((x, y) in pair(), k in 1usize..=3) {
        let xy = &x * &y;
        prop_assert_eq!(
            xy.reduce_mod_hk(k).unwrap(),
            &x.reduce_mod_hk(k).unwrap() * &y.reduce_mod_hk(k).unwrap()
        );
        let s = &x + &y;
        prop_assert_eq!(
            s.reduce_mod_hk(k).unwrap(),
            &x.reduce_mod_hk(k).unwrap() + &y.reduce_mod_hk(k).unwrap()
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn canonical_form((x, y) in pair()) {
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(x.coeffs().len(), x.prime().get() as usize - 1);
    }

    #[test]
    fn valuation_laws((x, y) in pair()) {
        let vx = x.h_valuation();
        let vy = y.h_valuation();
        let vxy = (&x * &y).h_valuation();
        match (vx, vy) {
            (Valuation::Finite(a), Valuation::Finite(b)) => {
                prop_assert_eq!(vxy, Valuation::Finite(a + b))
            }
            _ => prop_assert_eq!(vxy, Valuation::Infinite),
        }
        prop_assert!((&x + &y).h_valuation() >= vx.min(vy));
    }

    #[test]
    fn two_reduction_routes_agree(x in prime_strategy().prop_flat_map(elem_for), k in 1usize..=4) {
        prop_assert_eq!(x.reduce_mod_hk(k).unwrap(), digits_oracle(&x, k));
    }

    #[test]
    fn lower_truncation_commutes(x in prime_strategy().prop_flat_map(elem_for)) {
        let r3 = x.reduce_mod_hk(3).unwrap();
        prop_assert_eq!(r3.truncate(2).unwrap(), x.reduce_mod_hk(2).unwrap());
        prop_assert_eq!(r3.truncate(1).unwrap(), x.reduce_mod_hk(1).unwrap());
    }

    #[test]
    fn norm_routes_agree(x in prime_strategy().prop_flat_map(elem_for)) {
        prop_assert_eq!(x.norm(), x.resultant_norm());
    }

    #[test]
    fn exact_division_inverts_multiplication((x, y) in pair()) {
        prop_assume!(!y.is_zero());
        prop_assert_eq!((&x * &y).div_exact(&y).unwrap(), x);
    }
}

#[test]
fn unit_quotient_for_small_primes() {
    for p in [5u32, 7, 11, 13] {
        let p = Prime::new(p).unwrap();
        let q = CycloElem::from_int(p, i64::from(p.get()))
            .div_h_pow(p.get() - 1)
            .unwrap();
        assert!(q.norm() == BigInt::from(1) || q.norm() == BigInt::from(-1));
        assert_eq!(q.resultant_norm(), q.norm());
        assert!(q.div_h().is_none());
    }
}

#[test]
fn quantum_integers_reduce_to_integers() {
    for p in [5u32, 7, 11, 13] {
        let p = Prime::new(p).unwrap();
        for k in 1..p.get() {
            let q = CycloElem::quantum_int(p, k);
            assert_eq!(q.residue(), k % p.get());
        }
        let two = CycloElem::quantum_int(p, 2);
        assert_eq!(two, &CycloElem::zeta(p) + &CycloElem::zeta_pow(p, -1));
    }
}

#[test]
fn separating_twist_numerator_has_valuation_one() {
    let p = Prime::new(5).unwrap();
    let a = |n| CycloElem::a_pow(p, n);
    let t21 = &a(9) * &(&a(4) - &a(-4));
    assert_eq!(t21.h_valuation(), Valuation::Finite(1));
}

fn random_int_matrix(p: Prime, n: usize, seed: &mut u64) -> CycloMatrix {
    let mut rows = Vec::new();
    for _ in 0..n {
        let mut row = Vec::new();
        for _ in 0..n {
            let mut c = Vec::new();
            for _ in 0..p.get() - 1 {
                *seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                c.push(((*seed >> 33) % 7) as i64 - 3);
            }
            row.push(CycloElem::from_i64_coeffs(p, &c).unwrap());
        }
        rows.push(row);
    }
    CycloMatrix::from_rows(rows).unwrap()
}

#[test]
fn filtration_bounds_on_random_pairs() {
    let p = Prime::new(5).unwrap();
    let mut seed = 11u64;
    for _ in 0..40 {
        let u = random_int_matrix(p, 3, &mut seed);
        let v = random_int_matrix(p, 3, &mut seed);
        let r = filtration_check(&u, &v, 1, 1).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}
