use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An odd prime `p >= 5`, the level of the representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u32) -> Result<Self> {
        if p < 5 || !is_prime(p) {
            return Err(Error::InvalidArgument(format!(
                "p = {p} is not an odd prime >= 5"
            )));
        }
        Ok(Prime(p))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn as_u64(self) -> u64 {
        self.0 as u64
    }
}

impl TryFrom<u32> for Prime {
    type Error = Error;
    fn try_from(p: u32) -> Result<Self> {
        Prime::new(p)
    }
}

impl From<Prime> for u32 {
    fn from(p: Prime) -> u32 {
        p.0
    }
}

impl std::fmt::Display for Prime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Modular arithmetic helpers for `u32` residues.
pub mod modp {
    #[inline]
    pub fn add(a: u32, b: u32, p: u32) -> u32 {
        let s = a as u64 + b as u64;
        (s % p as u64) as u32
    }

    #[inline]
    pub fn sub(a: u32, b: u32, p: u32) -> u32 {
        ((a as u64 + p as u64 - b as u64) % p as u64) as u32
    }

    #[inline]
    pub fn mul(a: u32, b: u32, p: u32) -> u32 {
        ((a as u64 * b as u64) % p as u64) as u32
    }

    #[inline]
    pub fn neg(a: u32, p: u32) -> u32 {
        if a == 0 {
            0
        } else {
            p - a
        }
    }

    pub fn pow(mut base: u32, mut exp: u64, p: u32) -> u32 {
        let mut acc = 1u32 % p;
        base %= p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul(acc, base, p);
            }
            base = mul(base, base, p);
            exp >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero residue (Fermat).
    pub fn inv(a: u32, p: u32) -> u32 {
        debug_assert!(!a.is_multiple_of(p), "inverse of zero");
        pow(a, p as u64 - 2, p)
    }

    /// Reduce a signed integer into `[0, p)`.
    #[inline]
    pub fn from_i64(x: i64, p: u32) -> u32 {
        x.rem_euclid(p as i64) as u32
    }

    /// Symmetric representative in `(-p/2, p/2]`.
    #[inline]
    pub fn centered(a: u32, p: u32) -> i64 {
        if a > p / 2 {
            a as i64 - p as i64
        } else {
            a as i64
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_and_composite() {
        assert!(Prime::new(3).is_err());
        assert!(Prime::new(2).is_err());
        assert!(Prime::new(9).is_err());
        assert!(Prime::new(25).is_err());
        for p in [5, 7, 11, 13, 101] {
            assert_eq!(Prime::new(p).unwrap().get(), p);
        }
    }

    #[test]
    fn modular_inverse() {
        for p in [5u32, 7, 13] {
            for a in 1..p {
                assert_eq!(modp::mul(a, modp::inv(a, p), p), 1);
            }
        }
    }
}
