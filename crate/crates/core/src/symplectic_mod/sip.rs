use num_integer::Integer;
use serde::Serialize;

use super::space::SymplecticSpace;
use super::trivector::Trivector;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelMembership {
    pub p: u32,
    pub in_kernel: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SipReport {
    pub g: usize,
    /// The fourth boundary class, `-(x + y + z)`.
    pub w: Vec<i64>,
    pub image: Trivector,
    pub degenerate: bool,
    /// gcd of the coordinates in V; 0 for the zero vector.
    pub content: i64,
    pub primitive: bool,
    /// kappa of the Λ³ representative, reduced mod each prime.
    pub kappa_mod_p: Vec<KernelMembership>,
    /// kappa of the Λ³ representative vanishes mod g - 1.
    pub kappa_vanishes_mod_g_minus_1: bool,
}

/// Johnson image `x ^ y ^ z` of a simple intersecting pair, with kernel and primitivity checks.
pub fn sip_image(g: usize, x: &[i64], y: &[i64], z: &[i64], primes: &[u32]) -> Result<SipReport> {
    let space = SymplecticSpace::new(g)?;
    for &p in primes {
        if !crate::prime::is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
    }
    let t = Trivector::wedge(&space, x, y, z)?;
    let image = t.quotient(&space)?;
    let w = x.iter().zip(y).zip(z).map(|((a, b), c)| -(a + b + c)).collect();
    let content = image.coords.iter().fold(0i64, |acc, &c| acc.gcd(&c));
    let kappa = t.contraction(&space)?;
    let kappa_mod_p = primes
        .iter()
        .map(|&p| KernelMembership {
            p,
            in_kernel: kappa.iter().all(|&c| c.rem_euclid(i64::from(p)) == 0),
        })
        .collect();
    let m = g as i64 - 1;
    Ok(SipReport {
        g,
        w,
        degenerate: t.is_zero(),
        content,
        primitive: content == 1,
        kappa_mod_p,
        kappa_vanishes_mod_g_minus_1: kappa.iter().all(|&c| c.rem_euclid(m) == 0),
        image,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, i: usize) -> Vec<i64> {
        let mut v = vec![0; n];
        v[i] = 1;
        v
    }

    #[test]
    fn isotropic_triple() {
        let r = sip_image(3, &e(6, 0), &e(6, 2), &e(6, 4), &[5, 7, 11]).unwrap();
        assert_eq!(r.w, vec![-1, 0, -1, 0, -1, 0]);
        assert!(r.primitive && !r.degenerate);
        assert!(r.kappa_mod_p.iter().all(|m| m.in_kernel));
        assert_eq!(r.image.coords.iter().filter(|&&c| c != 0).count(), 1);
    }

    #[test]
    fn paired_classes_leave_the_kernel() {
        let r = sip_image(3, &e(6, 0), &e(6, 1), &e(6, 2), &[5]).unwrap();
        assert!(!r.kappa_mod_p[0].in_kernel);
    }

    #[test]
    fn dependent_classes_are_degenerate() {
        let x = e(6, 0);
        let y = e(6, 2);
        let z: Vec<i64> = x.iter().zip(&y).map(|(a, b)| 2 * a - b).collect();
        let r = sip_image(3, &x, &y, &z, &[5]).unwrap();
        assert!(r.degenerate && !r.primitive);
        assert_eq!(r.content, 0);
    }
}
