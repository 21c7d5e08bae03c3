use qkernel::cyclotomic::CycloElem;
use qkernel::fp::FpMatrix;
use qkernel::twist_rep::*;
use qkernel::Prime;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Gen {
    p: Prime,
    n: usize,
    odd: usize,
}

impl Gen {
    fn random(p: u32, rng: &mut ChaCha8Rng) -> Self {
        let n = rng.gen_range(2..=6);
        Gen {
            p: Prime::new(p).unwrap(),
            n,
            odd: rng.gen_range(1..n),
        }
    }

    fn is_odd(&self, i: usize) -> bool {
        i < self.odd
    }

    fn build(&self, l0: Vec<Vec<u32>>, l1: Vec<Vec<u32>>) -> GradedBlockMatrix {
        GradedBlockMatrix::with_blocks(from_layers(self.p, 2, &[l0, l1]).unwrap(), self.odd).unwrap()
    }

    fn identity_layer(&self) -> Vec<Vec<u32>> {
        (0..self.n).map(|i| (0..self.n).map(|j| u32::from(i == j)).collect()).collect()
    }

    fn layer(&self, rng: &mut ChaCha8Rng, keep: impl Fn(usize, usize) -> bool) -> Vec<Vec<u32>> {
        let p = self.p.get();
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| if keep(i, j) { rng.gen_range(0..p) } else { 0 })
                    .collect()
            })
            .collect()
    }

    /// I + hX with X block upper-triangular.
    fn johnson(&self, rng: &mut ChaCha8Rng) -> GradedBlockMatrix {
        let x = self.layer(rng, |i, j| !(!self.is_odd(i) && self.is_odd(j)));
        self.build(self.identity_layer(), x)
    }

    /// I + hX with X in the even-to-odd block only.
    fn mixed(&self, rng: &mut ChaCha8Rng) -> GradedBlockMatrix {
        let x = self.layer(rng, |i, j| self.is_odd(i) && !self.is_odd(j));
        self.build(self.identity_layer(), x)
    }

    /// Invertible, block upper-triangular mod h, arbitrary order-1 layer.
    fn mapping_class_like(&self, rng: &mut ChaCha8Rng) -> GradedBlockMatrix {
        loop {
            let l0 = self.layer(rng, |i, j| !(!self.is_odd(i) && self.is_odd(j)));
            let det = FpMatrix::from_rows(self.p.get(), &l0).unwrap().determinant().unwrap();
            if det != 0 {
                let l1 = self.layer(rng, |_, _| true);
                return self.build(l0, l1);
            }
        }
    }
}

const TRIALS: usize = 200;

#[test]
fn d_prime_and_d_double_prime_are_additive() {
    for p in [5u32, 7] {
        let mut rng = ChaCha8Rng::seed_from_u64(u64::from(p));
        for _ in 0..TRIALS {
            let g = Gen::random(p, &mut rng);
            let (m, n) = (g.johnson(&mut rng), g.johnson(&mut rng));
            let mn = m.mul(&n).unwrap();
            assert!(mn.satisfies(Shape::JohnsonModH2));
            assert_eq!(mn.d_prime().unwrap(), (m.d_prime().unwrap() + n.d_prime().unwrap()) % p);
            assert_eq!(
                mn.d_double_prime().unwrap(),
                (m.d_double_prime().unwrap() + n.d_double_prime().unwrap()) % p
            );
        }
    }
}

#[test]
fn d_prime_is_conjugation_invariant() {
    for p in [5u32, 7] {
        let mut rng = ChaCha8Rng::seed_from_u64(100 + u64::from(p));
        for _ in 0..TRIALS {
            let g = Gen::random(p, &mut rng);
            let m = g.johnson(&mut rng);
            let c = g.mapping_class_like(&mut rng);
            assert!(c.satisfies(Shape::MappingClassLike));
            let conj = m.conjugate_by(&c).unwrap();
            assert!(conj.satisfies(Shape::JohnsonModH2));
            assert_eq!(conj.d_prime().unwrap(), m.d_prime().unwrap());
            assert_eq!(conj.d_double_prime().unwrap(), m.d_double_prime().unwrap());
        }
    }
}

#[test]
fn traces_vanish_on_commutators() {
    for p in [5u32, 7] {
        let mut rng = ChaCha8Rng::seed_from_u64(200 + u64::from(p));
        for _ in 0..TRIALS {
            let g = Gen::random(p, &mut rng);
            let (m, n) = (g.johnson(&mut rng), g.johnson(&mut rng));
            let c = m.commutator(&n).unwrap();
            assert_eq!(c.d_prime().unwrap(), 0);
            assert_eq!(c.d_double_prime().unwrap(), 0);
            // commutators with a Torelli-shaped matrix land in the mixed block
            let t = g.mapping_class_like(&mut rng);
            if t.satisfies(Shape::TorelliModH) {
                let c = m.commutator(&t).unwrap();
                assert_eq!(c.d_prime().unwrap(), 0);
            }
        }
    }
}

#[test]
fn upper_block_set_is_a_group_and_mixed_part_is_abelian() {
    for p in [5u32, 7] {
        let mut rng = ChaCha8Rng::seed_from_u64(300 + u64::from(p));
        for _ in 0..TRIALS {
            let g = Gen::random(p, &mut rng);
            let (m, n) = (g.johnson(&mut rng), g.johnson(&mut rng));
            assert!(m.mul(&n).unwrap().satisfies(Shape::JohnsonModH2));
            assert!(m.inverse().unwrap().satisfies(Shape::JohnsonModH2));
            let (a, b) = (g.mixed(&mut rng), g.mixed(&mut rng));
            assert!(a.satisfies(Shape::MixedCommutatorModH2));
            assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            assert!(a.mul(&b).unwrap().satisfies(Shape::MixedCommutatorModH2));
        }
    }
}

#[test]
fn shape_violation_is_an_error() {
    let p = Prime::new(5).unwrap();
    let l0 = vec![vec![1, 0], vec![0, 1]];
    let l1 = vec![vec![0, 0], vec![3, 0]];
    let m = GradedBlockMatrix::with_blocks(from_layers(p, 2, &[l0, l1]).unwrap(), 1).unwrap();
    assert!(m.d_prime().is_err());
    assert!(m.d_double_prime().is_err());
}

#[test]
fn independence_over_the_full_grid() {
    for g in 3..=8 {
        for p in [5u32, 7, 11, 13] {
            let r = independence_rank(g, Prime::new(p).unwrap()).unwrap();
            assert!(r.determinant_matches_closed_form, "g={g} p={p}");
            assert_eq!(r.fallback_used, (2 * g as u32 - 1).is_multiple_of(p), "g={g} p={p}");
            assert!(r.independent, "g={g} p={p}");
        }
    }
}

#[test]
fn fixture_gates_hold_for_small_primes() {
    for p in [5u32, 7, 11, 13] {
        let p = Prime::new(p).unwrap();
        for name in FIXTURE_NAMES {
            let f = load_fixture(name).unwrap();
            assert!(verify_fixture(&f, p).unwrap().passed, "{name} at {}", p.get());
            f.materialize(p).unwrap();
        }
    }
}

#[test]
fn separating_twist_eigenvalues_mod_h2() {
    let p = Prime::new(7).unwrap();
    for a in 0..=2u32 {
        let e = sep_twist_eigenvalue(a, p).unwrap().reduce_mod_hk(2).unwrap();
        let want = (-2 * i64::from(a) * i64::from(a + 1)).rem_euclid(7) as u32;
        assert_eq!(e.coeff(0), 1);
        assert_eq!(e.coeff(1), want, "a={a}");
    }
    assert!(sep_twist_eigenvalue(3, p).is_err());
    assert_eq!(sep_twist_eigenvalue(0, p).unwrap(), CycloElem::one(p));
}

#[test]
fn bounding_pair_is_unipotent_upper_triangular_mod_h() {
    for p in [5u32, 7, 11] {
        let m = bounding_pair_mod_h(Prime::new(p).unwrap()).unwrap();
        for i in 0..3 {
            assert_eq!(m.get(i, i).coeff(0), 1);
            for j in 0..i {
                assert_eq!(m.get(i, j).coeff(0), 0);
            }
        }
    }
}
