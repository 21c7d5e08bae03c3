use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::trunc::TruncElem;
use crate::error::{Error, Result};
use crate::prime::Prime;

/// h-adic valuation: a finite exponent, or infinity for the zero element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    pub fn is_at_least(self, bound: u32) -> bool {
        match self {
            Valuation::Infinite => true,
            Valuation::Finite(v) => v >= bound,
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_u32(*v),
            Valuation::Infinite => s.serialize_str("inf"),
        }
    }
}

/// An element of Z[zeta_p], stored as its coordinates in the basis
/// `1, zeta, ..., zeta^(p-2)` (canonical form modulo the cyclotomic polynomial).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloElem {
    p: Prime,
    coeffs: Vec<BigInt>,
}

impl CycloElem {
    pub fn zero(p: Prime) -> Self {
        CycloElem {
            p,
            coeffs: vec![BigInt::zero(); p.get() as usize - 1],
        }
    }

    pub fn one(p: Prime) -> Self {
        Self::from_int(p, 1)
    }

    pub fn from_int(p: Prime, n: i64) -> Self {
        Self::from_bigint(p, BigInt::from(n))
    }

    pub fn from_bigint(p: Prime, n: BigInt) -> Self {
        let mut x = Self::zero(p);
        x.coeffs[0] = n;
        x
    }

    /// Builds an element from canonical coordinates; the length must be `p - 1`.
    pub fn from_coeffs(p: Prime, coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() != p.get() as usize - 1 {
            return Err(Error::InvalidArgument(format!(
                "expected {} coefficients for p = {}, got {}",
                p.get() - 1,
                p,
                coeffs.len()
            )));
        }
        Ok(CycloElem { p, coeffs })
    }

    pub fn from_i64_coeffs(p: Prime, coeffs: &[i64]) -> Result<Self> {
        Self::from_coeffs(p, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Reduces an arbitrary polynomial in `zeta` (index = exponent) to canonical form.
    pub fn from_poly(p: Prime, poly: &[BigInt]) -> Self {
        let n = p.get() as usize;
        let mut folded = vec![BigInt::zero(); n];
        for (i, c) in poly.iter().enumerate() {
            folded[i % n] += c;
        }
        Self::from_folded(p, folded)
    }

    /// `folded` has length `p` and represents an element of Z[x]/(x^p - 1).
    fn from_folded(p: Prime, mut folded: Vec<BigInt>) -> Self {
        let top = folded.pop().expect("p >= 5");
        if !top.is_zero() {
            for c in folded.iter_mut() {
                *c -= &top;
            }
        }
        CycloElem { p, coeffs: folded }
    }

    /// `zeta^e` for any integer exponent.
    pub fn zeta_pow(p: Prime, e: i64) -> Self {
        let n = p.get() as i64;
        let e = e.rem_euclid(n) as usize;
        let mut x = Self::zero(p);
        if e == n as usize - 1 {
            for c in x.coeffs.iter_mut() {
                *c = -BigInt::one();
            }
        } else {
            x.coeffs[e] = BigInt::one();
        }
        x
    }

    pub fn zeta(p: Prime) -> Self {
        Self::zeta_pow(p, 1)
    }

    /// `A^n` where `A = -zeta^((p+1)/2)` is the primitive 2p-th root with `A^2 = zeta`.
    pub fn a_pow(p: Prime, n: i64) -> Self {
        let half = (p.get() as i64 + 1) / 2;
        let z = Self::zeta_pow(p, n.rem_euclid(2 * p.get() as i64) * half);
        if n.rem_euclid(2) == 1 {
            -z
        } else {
            z
        }
    }

    /// The uniformizer `h = 1 - zeta`.
    pub fn h(p: Prime) -> Self {
        Self::one(p) - Self::zeta(p)
    }

    pub fn h_pow(p: Prime, k: u32) -> Self {
        Self::h(p).pow(k)
    }

    /// Quantum integer `[k] = (A^{2k} - A^{-2k}) / (A^2 - A^{-2})`,
    /// evaluated as `zeta^{k-1} + zeta^{k-3} + ... + zeta^{-(k-1)}`. `[0] = 0`.
    pub fn quantum_int(p: Prime, k: u32) -> Self {
        let mut acc = Self::zero(p);
        for j in 0..k as i64 {
            acc += &Self::zeta_pow(p, k as i64 - 1 - 2 * j);
        }
        acc
    }

    #[inline]
    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The integer value if the element lies in Z.
    pub fn as_integer(&self) -> Option<&BigInt> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            Err(Error::PrimeMismatch(self.p.get(), other.p.get()))
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.sub_unchecked(other))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        CycloElem {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    fn sub_unchecked(&self, other: &Self) -> Self {
        CycloElem {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.p.get() as usize;
        let mut folded = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                folded[(i + j) % n] += a * b;
            }
        }
        Self::from_folded(self.p, folded)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        CycloElem {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Image under the Galois automorphism `zeta -> zeta^j` (`p` must not divide `j`).
    pub fn galois(&self, j: i64) -> Self {
        let n = self.p.get() as i64;
        assert!(j.rem_euclid(n) != 0, "galois exponent must be a unit mod p");
        let mut folded = vec![BigInt::zero(); n as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            folded[(i as i64 * j).rem_euclid(n) as usize] += c;
        }
        Self::from_folded(self.p, folded)
    }

    /// Product of the conjugates `sigma_j(x)` for `j = 2..p-1`, so that
    /// `x * cofactor` equals the norm of `x`.
    pub fn norm_cofactor(&self) -> Self {
        (2..self.p.get() as i64).fold(Self::one(self.p), |acc, j| &acc * &self.galois(j))
    }

    /// Field norm N(x) as the product of all Galois conjugates.
    pub fn norm(&self) -> BigInt {
        let n = self * &self.norm_cofactor();
        n.as_integer()
            .cloned()
            .expect("product of all conjugates is rational")
    }

    /// Field norm computed as the resultant of the coordinate polynomial with the
    /// cyclotomic polynomial (Sylvester determinant, fraction-free elimination).
    pub fn resultant_norm(&self) -> BigInt {
        let mut f: Vec<BigInt> = self.coeffs.clone();
        while f.last().is_some_and(Zero::is_zero) {
            f.pop();
        }
        if f.is_empty() {
            return BigInt::zero();
        }
        let m = self.p.get() as usize - 1; // degree of Phi_p
        let n = f.len() - 1;
        if n == 0 {
            return num_traits::pow(f[0].clone(), m);
        }
        let size = m + n;
        let mut syl = vec![vec![BigInt::zero(); size]; size];
        // Phi_p = x^{p-1} + ... + 1, highest degree first.
        for r in 0..n {
            for c in 0..=m {
                syl[r][r + c] = BigInt::one();
            }
        }
        for r in 0..m {
            for (c, coef) in f.iter().rev().enumerate() {
                syl[n + r][r + c] = coef.clone();
            }
        }
        bareiss_det(syl)
    }

    pub fn is_unit(&self) -> bool {
        let n = self.norm();
        n.abs().is_one()
    }

    /// Image in Z[zeta]/(h) = F_p, i.e. the coefficient sum mod p.
    pub fn residue(&self) -> u32 {
        let p = BigInt::from(self.p.get());
        let s: BigInt = self.coeffs.iter().sum();
        s.mod_floor(&p).to_u32().expect("residue fits")
    }

    /// Exact division by `h = 1 - zeta`; `None` if `h` does not divide `self`.
    ///
    /// Writing `self = (1 - zeta) y`, the coordinates satisfy
    /// `y_i = (c_0 + ... + c_i) - (i + 1) t` with `p t = c_0 + ... + c_{p-2}`.
    pub fn div_h(&self) -> Option<Self> {
        let p = BigInt::from(self.p.get());
        let s: BigInt = self.coeffs.iter().sum();
        let (t, r) = s.div_rem(&p);
        if !r.is_zero() {
            return None;
        }
        let mut prefix = BigInt::zero();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                prefix += c;
                &prefix - &t * BigInt::from(i + 1)
            })
            .collect();
        Some(CycloElem { p: self.p, coeffs })
    }

    /// Largest `m` with `h^m | self`.
    pub fn h_valuation(&self) -> Valuation {
        if self.is_zero() {
            return Valuation::Infinite;
        }
        let mut m = 0;
        let mut cur = self.clone();
        while let Some(next) = cur.div_h() {
            cur = next;
            m += 1;
        }
        Valuation::Finite(m)
    }

    /// Exact quotient `self / d` in Z[zeta].
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        self.check_same(d)?;
        if d.is_zero() {
            return Err(Error::NotDivisible("division by zero".into()));
        }
        if let Some(k) = d.as_integer() {
            return self.div_integer(k);
        }
        let cof = d.norm_cofactor();
        let n = (d * &cof)
            .as_integer()
            .cloned()
            .expect("norm is rational");
        (self * &cof).div_integer(&n)
    }

    pub fn div_integer(&self, k: &BigInt) -> Result<Self> {
        if k.is_zero() {
            return Err(Error::NotDivisible("division by zero".into()));
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(k);
            if !r.is_zero() {
                return Err(Error::NotDivisible(format!("{self:?} by {k}")));
            }
            coeffs.push(q);
        }
        Ok(CycloElem { p: self.p, coeffs })
    }

    /// Divide by `h^m`, failing when the valuation is smaller than `m`.
    pub fn div_h_pow(&self, m: u32) -> Result<Self> {
        let mut cur = self.clone();
        for i in 0..m {
            cur = cur.div_h().ok_or_else(|| {
                Error::NotDivisible(format!("h-valuation {i} < required {m}"))
            })?;
        }
        Ok(cur)
    }

    /// Reduction to Z[zeta]/(h^k), realised as F_p[h]/(h^k) for `k <= p - 1`.
    ///
    /// Substitutes `zeta = 1 - h`: the coefficient of `h^j` is
    /// `(-1)^j * sum_i c_i * C(i, j)` modulo p.
    pub fn reduce_mod_hk(&self, k: usize) -> Result<TruncElem> {
        let p = self.p.get();
        if k == 0 || k > p as usize - 1 {
            return Err(Error::UnsupportedOrder { p, k });
        }
        let pb = BigInt::from(p);
        let residues: Vec<u64> = self
            .coeffs
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().unwrap())
            .collect();
        let binom = binomials_mod(p as usize - 1, k, p);
        let mut out = vec![0u32; k];
        for (j, slot) in out.iter_mut().enumerate() {
            let mut acc = 0u64;
            for (i, &c) in residues.iter().enumerate() {
                acc = (acc + c * binom[i][j] as u64) % p as u64;
            }
            if j % 2 == 1 {
                acc = (p as u64 - acc) % p as u64;
            }
            *slot = acc as u32;
        }
        TruncElem::from_coeffs(self.p, k, out)
    }

    /// The `p` rotations `zeta^e * self`, for comparisons up to a power of zeta.
    pub fn zeta_rotations(&self) -> Vec<Self> {
        (0..self.p.get() as i64)
            .map(|e| self * &Self::zeta_pow(self.p, e))
            .collect()
    }
}

/// `binom[i][j] = C(i, j) mod p` for `i <= n`, `j < k`.
fn binomials_mod(n: usize, k: usize, p: u32) -> Vec<Vec<u32>> {
    let mut rows = vec![vec![0u32; k]; n + 1];
    for i in 0..=n {
        rows[i][0] = 1 % p;
        for j in 1..k {
            if i > 0 {
                rows[i][j] = (rows[i - 1][j - 1] + rows[i - 1][j]) % p;
            }
        }
    }
    rows
}

/// Fraction-free Gaussian elimination over Z.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

impl fmt::Debug for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{mag}z")?,
                (_, true) => write!(f, "z^{i}")?,
                (_, false) => write!(f, "{mag}z^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl $trait<&CycloElem> for &CycloElem {
            type Output = CycloElem;
            fn $method(self, rhs: &CycloElem) -> CycloElem {
                assert_eq!(self.p, rhs.p, "cyclotomic elements over different primes");
                self.$inner(rhs)
            }
        }
        impl $trait<CycloElem> for CycloElem {
            type Output = CycloElem;
            fn $method(self, rhs: CycloElem) -> CycloElem {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&CycloElem> for CycloElem {
            type Output = CycloElem;
            fn $method(self, rhs: &CycloElem) -> CycloElem {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_unchecked);
forward_binop!(Sub, sub, sub_unchecked);
forward_binop!(Mul, mul, mul_unchecked);

impl AddAssign<&CycloElem> for CycloElem {
    fn add_assign(&mut self, rhs: &CycloElem) {
        assert_eq!(self.p, rhs.p, "cyclotomic elements over different primes");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl Neg for &CycloElem {
    type Output = CycloElem;
    fn neg(self) -> CycloElem {
        CycloElem {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycloElem {
    type Output = CycloElem;
    fn neg(self) -> CycloElem {
        -&self
    }
}

/// JSON integer that falls back to a decimal string outside the i64 range.
pub(crate) mod json_int {
    use super::*;

    pub fn to_value(n: &BigInt) -> serde_json::Value {
        match n.to_i64() {
            Some(v) => serde_json::Value::from(v),
            None => serde_json::Value::String(n.to_string()),
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    pub enum Raw {
        Int(i64),
        Str(String),
    }

    impl Raw {
        pub fn into_bigint<E: serde::de::Error>(self) -> std::result::Result<BigInt, E> {
            match self {
                Raw::Int(v) => Ok(BigInt::from(v)),
                Raw::Str(s) => s.parse().map_err(E::custom),
            }
        }
    }
}

impl Serialize for CycloElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let coeffs: Vec<serde_json::Value> = self.coeffs.iter().map(json_int::to_value).collect();
        let mut st = s.serialize_struct("CycloElem", 2)?;
        st.serialize_field("p", &self.p.get())?;
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for CycloElem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct Wire {
            p: u32,
            coeffs: Vec<json_int::Raw>,
        }
        let w = Wire::deserialize(d)?;
        let p = Prime::new(w.p).map_err(D::Error::custom)?;
        let coeffs = w
            .coeffs
            .into_iter()
            .map(|r| r.into_bigint::<D::Error>())
            .collect::<std::result::Result<Vec<_>, _>>()?;
        CycloElem::from_coeffs(p, coeffs).map_err(D::Error::custom)
    }
}
