use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::group::{standard_generators, GroupElement, SparseOp};
use super::kernel::{divides_g_minus_1, kappa_bar, kernel_image_in_v};
use super::space::{SymplecticSpace, MAX_GENUS};
use super::trivector::{Ambient, Trivector};
use crate::error::{Error, Result};
use crate::fp::EchelonBasis;

/// Largest Λ³ dimension handled by the closure routines (g = 8).
pub const MAX_LAMBDA3_DIM: usize = 560;

/// Smallest subspace of V containing `seed` and stable under `gens` (V coordinates).
///
/// With no generators this is the linear span of the seed.
pub fn submodule_closure(
    space: &SymplecticSpace,
    p: u32,
    seed: &[Trivector],
    gens: &[GroupElement],
) -> Result<EchelonBasis> {
    if seed.is_empty() {
        return Err(Error::InvalidArgument("closure needs a nonempty seed".into()));
    }
    check_cap(space)?;
    let ops: Vec<SparseOp> = gens.iter().map(|m| m.v_action(space, p)).collect();
    let vecs = seed
        .iter()
        .map(|t| t.quotient(space).map(|q| q.mod_p(p)))
        .collect::<Result<Vec<_>>>()?;
    Ok(closure_with_ops(space.dim_v(), p, &vecs, &ops))
}

/// Closure for precomputed sparse actions on V.
pub fn closure_with_ops(dim: usize, p: u32, seed: &[Vec<u32>], ops: &[SparseOp]) -> EchelonBasis {
    let mut basis = EchelonBasis::new(p, dim);
    let mut queue = Vec::new();
    for v in seed {
        if basis.insert(v) {
            queue.push(v.clone());
        }
    }
    while let Some(v) = queue.pop() {
        if basis.is_full() {
            break;
        }
        for op in ops {
            let w = op.apply(&v);
            if basis.insert(&w) {
                queue.push(w);
            }
        }
    }
    basis
}

fn check_cap(space: &SymplecticSpace) -> Result<()> {
    if space.dim_lambda3() > MAX_LAMBDA3_DIM || space.genus() > MAX_GENUS {
        return Err(Error::ResourceCap(format!(
            "dim Λ³ = {} exceeds {MAX_LAMBDA3_DIM}",
            space.dim_lambda3()
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeedKind {
    Monomial,
    Dense,
    Sparse,
    Kernel,
    NonKernel,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    pub index: usize,
    pub seed_kind: SeedKind,
    pub closure_dim: usize,
    pub expected_dim: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Irreducible,
    KernelIsOnlyProperSubmodule,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IrreducibilityReport {
    pub g: usize,
    pub p: u32,
    pub seed: u64,
    pub dim_v: usize,
    pub kernel_image_dim: usize,
    pub p_divides_g_minus_1: bool,
    pub observed_dims: BTreeSet<usize>,
    pub counterexamples: Vec<usize>,
    pub verdict: Verdict,
    pub trials: Vec<TrialRecord>,
}

/// Closure trials from random seeds under the standard generators.
///
/// When p does not divide g - 1 every closure must be V. Otherwise seeds alternate between
/// the kernel image (expected closure: that image) and vectors off it (expected: V).
pub fn irreducibility_report(g: usize, p: u32, trials: usize, seed: u64) -> Result<IrreducibilityReport> {
    if g < 3 || p < 5 || trials == 0 {
        return Err(Error::InvalidArgument("need g >= 3, p >= 5, trials >= 1".into()));
    }
    if !crate::prime::is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if g > MAX_GENUS {
        return Err(Error::ResourceCap(format!("genus {g} exceeds {MAX_GENUS}")));
    }
    let space = SymplecticSpace::new(g)?;
    check_cap(&space)?;
    let n = space.dim_v();
    let ops: Vec<SparseOp> = standard_generators(&space)
        .iter()
        .map(|m| m.v_action(&space, p))
        .collect();
    let kernel = kernel_image_in_v(&space, p)?;
    let split = divides_g_minus_1(&space, p);

    let records: Vec<TrialRecord> = (0..trials)
        .into_par_iter()
        .map(|index| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(index as u64);
            let (kind, v) = trial_seed(&space, p, split, &kernel, index, &mut rng);
            let expected_dim = if kind == SeedKind::Kernel { kernel.len() } else { n };
            let closure_dim = closure_with_ops(n, p, &[v], &ops).len();
            TrialRecord {
                index,
                seed_kind: kind,
                closure_dim,
                expected_dim,
            }
        })
        .collect();

    let observed_dims: BTreeSet<usize> = records.iter().map(|r| r.closure_dim).collect();
    let counterexamples: Vec<usize> = records
        .iter()
        .filter(|r| r.closure_dim != r.expected_dim)
        .map(|r| r.index)
        .collect();
    let verdict = if !counterexamples.is_empty() {
        Verdict::Failed
    } else if !split {
        Verdict::Irreducible
    } else if observed_dims.len() == 2 || trials == 1 {
        Verdict::KernelIsOnlyProperSubmodule
    } else {
        Verdict::Failed
    };
    Ok(IrreducibilityReport {
        g,
        p,
        seed,
        dim_v: n,
        kernel_image_dim: kernel.len(),
        p_divides_g_minus_1: split,
        observed_dims,
        counterexamples,
        verdict,
        trials: records,
    })
}

fn trial_seed(
    space: &SymplecticSpace,
    p: u32,
    split: bool,
    kernel: &EchelonBasis,
    index: usize,
    rng: &mut ChaCha8Rng,
) -> (SeedKind, Vec<u32>) {
    let n = space.dim_v();
    if !split {
        return match index % 3 {
            0 if index == 0 => {
                let t = Trivector::monomial(space, 0, 2, 4);
                (SeedKind::Monomial, t.quotient(space).expect("lambda3").mod_p(p))
            }
            1 => (SeedKind::Sparse, random_sparse(n, p, rng)),
            _ => (SeedKind::Dense, random_nonzero(n, p, rng)),
        };
    }
    if index.is_multiple_of(2) {
        loop {
            let mut v = vec![0u32; n];
            for b in kernel.vectors() {
                let c = rng.gen_range(0..p);
                for (x, &y) in v.iter_mut().zip(b) {
                    *x = ((u64::from(*x) + u64::from(c) * u64::from(y)) % u64::from(p)) as u32;
                }
            }
            if v.iter().any(|&x| x != 0) {
                return (SeedKind::Kernel, v);
            }
        }
    }
    loop {
        let v = if index % 4 == 1 { random_sparse(n, p, rng) } else { random_nonzero(n, p, rng) };
        let k = kappa_bar(space, &v, p).expect("p divides g-1");
        if k.iter().any(|&x| x != 0) {
            return (SeedKind::NonKernel, v);
        }
    }
}

fn random_nonzero(n: usize, p: u32, rng: &mut ChaCha8Rng) -> Vec<u32> {
    loop {
        let v: Vec<u32> = (0..n).map(|_| rng.gen_range(0..p)).collect();
        if v.iter().any(|&x| x != 0) {
            return v;
        }
    }
}

fn random_sparse(n: usize, p: u32, rng: &mut ChaCha8Rng) -> Vec<u32> {
    let mut v = vec![0u32; n];
    let terms = rng.gen_range(1..=3);
    for _ in 0..terms {
        v[rng.gen_range(0..n)] = rng.gen_range(1..p);
    }
    if v.iter().all(|&x| x == 0) {
        v[0] = 1;
    }
    v
}

/// Seed trivector in V with the given coordinates, for callers that build seeds by hand.
pub fn quotient_vector(space: &SymplecticSpace, coords: Vec<i64>) -> Result<Trivector> {
    if coords.len() != space.dim_v() {
        return Err(Error::DimensionMismatch(format!("V has dimension {}", space.dim_v())));
    }
    Ok(Trivector {
        g: space.genus(),
        ambient: Ambient::Quotient,
        coords,
    })
}
