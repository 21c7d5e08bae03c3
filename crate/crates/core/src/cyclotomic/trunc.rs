use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize};

use super::elem::{CycloElem, Valuation};
use crate::error::{Error, Result};
use crate::prime::{modp, Prime};

/// An element of Z[zeta_p]/(h^k) written as `c_0 + c_1 h + ... + c_{k-1} h^{k-1}`
/// with `c_i` in F_p. Only orders `1 <= k <= p - 1` are representable this way.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TruncElem {
    #[serde(serialize_with = "ser_prime")]
    p: Prime,
    k: usize,
    coeffs: Vec<u32>,
}

fn ser_prime<S: serde::Serializer>(p: &Prime, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u32(p.get())
}

impl TruncElem {
    fn check_order(p: Prime, k: usize) -> Result<()> {
        if k == 0 || k > p.get() as usize - 1 {
            Err(Error::UnsupportedOrder { p: p.get(), k })
        } else {
            Ok(())
        }
    }

    pub fn from_coeffs(p: Prime, k: usize, coeffs: Vec<u32>) -> Result<Self> {
        Self::check_order(p, k)?;
        if coeffs.len() != k {
            return Err(Error::InvalidArgument(format!(
                "expected {k} coefficients, got {}",
                coeffs.len()
            )));
        }
        if let Some(c) = coeffs.iter().find(|&&c| c >= p.get()) {
            return Err(Error::InvalidArgument(format!("coefficient {c} not reduced mod {p}")));
        }
        Ok(TruncElem { p, k, coeffs })
    }

    /// From signed coefficients, reduced mod p.
    pub fn from_i64s(p: Prime, k: usize, coeffs: &[i64]) -> Result<Self> {
        let mut c: Vec<u32> = coeffs.iter().map(|&x| modp::from_i64(x, p.get())).collect();
        if c.len() > k {
            c.truncate(k);
        }
        c.resize(k, 0);
        Self::from_coeffs(p, k, c)
    }

    pub fn zero(p: Prime, k: usize) -> Result<Self> {
        Self::from_coeffs(p, k, vec![0; k])
    }

    pub fn from_int(p: Prime, k: usize, n: i64) -> Result<Self> {
        Self::from_i64s(p, k, &[n])
    }

    pub fn one(p: Prime, k: usize) -> Result<Self> {
        Self::from_int(p, k, 1)
    }

    pub fn h(p: Prime, k: usize) -> Result<Self> {
        Self::from_i64s(p, k, &[0, 1])
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn order(&self) -> usize {
        self.k
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// Coefficient of `h^j` (zero beyond the truncation order).
    pub fn coeff(&self, j: usize) -> u32 {
        self.coeffs.get(j).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    pub fn is_unit(&self) -> bool {
        self.coeffs[0] != 0
    }

    /// Valuation inside the truncated ring; `Infinite` means "zero mod h^k".
    pub fn valuation(&self) -> Valuation {
        match self.coeffs.iter().position(|&c| c != 0) {
            Some(i) => Valuation::Finite(i as u32),
            None => Valuation::Infinite,
        }
    }

    /// Drop to a lower truncation order.
    pub fn truncate(&self, k: usize) -> Result<Self> {
        if k > self.k {
            return Err(Error::InvalidArgument(format!(
                "cannot raise truncation order {} to {k}",
                self.k
            )));
        }
        Self::from_coeffs(self.p, k, self.coeffs[..k].to_vec())
    }

    /// The canonical lift `sum c_j h^j` in Z[zeta].
    pub fn lift(&self) -> CycloElem {
        let h = CycloElem::h(self.p);
        let mut acc = CycloElem::zero(self.p);
        let mut hp = CycloElem::one(self.p);
        for &c in &self.coeffs {
            if c != 0 {
                acc += &hp.scale(&c.into());
            }
            hp = &hp * &h;
        }
        acc
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p.get(), other.p.get()));
        }
        if self.k != other.k {
            return Err(Error::InvalidArgument(format!(
                "truncation orders differ ({} vs {})",
                self.k, other.k
            )));
        }
        Ok(())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        Ok(self.zip(other, modp::add))
    }

    fn zip(&self, other: &Self, f: fn(u32, u32, u32) -> u32) -> Self {
        let p = self.p.get();
        TruncElem {
            p: self.p,
            k: self.k,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f(a, b, p))
                .collect(),
        }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let p = self.p.get() as u64;
        let mut out = vec![0u64; self.k];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs[..self.k - i].iter().enumerate() {
                out[i + j] = (out[i + j] + a as u64 * b as u64) % p;
            }
        }
        TruncElem {
            p: self.p,
            k: self.k,
            coeffs: out.into_iter().map(|c| c as u32).collect(),
        }
    }

    pub fn scale(&self, s: u32) -> Self {
        let p = self.p.get();
        TruncElem {
            p: self.p,
            k: self.k,
            coeffs: self.coeffs.iter().map(|&c| modp::mul(c, s % p, p)).collect(),
        }
    }

    /// Multiplicative inverse of a unit (constant term nonzero).
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::NoInverse);
        }
        let p = self.p.get();
        let c0inv = modp::inv(self.coeffs[0], p);
        let mut inv = vec![0u32; self.k];
        inv[0] = c0inv;
        for n in 1..self.k {
            let mut s = 0u32;
            for j in 1..=n {
                s = modp::add(s, modp::mul(self.coeffs[j], inv[n - j], p), p);
            }
            inv[n] = modp::mul(modp::neg(s, p), c0inv, p);
        }
        Ok(TruncElem {
            p: self.p,
            k: self.k,
            coeffs: inv,
        })
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.p, self.k).expect("order already validated");
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl<'de> Deserialize<'de> for TruncElem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct Wire {
            p: u32,
            k: usize,
            coeffs: Vec<u32>,
        }
        let w = Wire::deserialize(d)?;
        let p = Prime::new(w.p).map_err(D::Error::custom)?;
        TruncElem::from_coeffs(p, w.k, w.coeffs).map_err(D::Error::custom)
    }
}

impl fmt::Debug for TruncElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TruncElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.p.get();
        let mut first = true;
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let v = modp::centered(c, p);
            let (neg, mag) = (v < 0, v.unsigned_abs());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (j, mag) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => write!(f, "h")?,
                (1, m) => write!(f, "{m}h")?,
                (_, 1) => write!(f, "h^{j}")?,
                (_, m) => write!(f, "{m}h^{j}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " (mod h^{})", self.k)
    }
}

macro_rules! forward_trunc_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&TruncElem> for &TruncElem {
            type Output = TruncElem;
            fn $method(self, rhs: &TruncElem) -> TruncElem {
                self.compatible(rhs).expect("incompatible truncated elements");
                $body(self, rhs)
            }
        }
        impl $trait<TruncElem> for TruncElem {
            type Output = TruncElem;
            fn $method(self, rhs: TruncElem) -> TruncElem {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_trunc_binop!(Add, add, |a: &TruncElem, b: &TruncElem| a.zip(b, modp::add));
forward_trunc_binop!(Sub, sub, |a: &TruncElem, b: &TruncElem| a.zip(b, modp::sub));
forward_trunc_binop!(Mul, mul, |a: &TruncElem, b: &TruncElem| a.mul_unchecked(b));

impl Neg for &TruncElem {
    type Output = TruncElem;
    fn neg(self) -> TruncElem {
        let p = self.p.get();
        TruncElem {
            p: self.p,
            k: self.k,
            coeffs: self.coeffs.iter().map(|&c| modp::neg(c, p)).collect(),
        }
    }
}

impl Neg for TruncElem {
    type Output = TruncElem;
    fn neg(self) -> TruncElem {
        -&self
    }
}
