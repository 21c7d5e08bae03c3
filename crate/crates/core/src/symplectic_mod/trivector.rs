use serde::{Deserialize, Serialize};

use super::space::SymplecticSpace;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ambient {
    /// Λ³H over the monomial basis.
    Lambda3,
    /// The subspace omega ^ H, coordinates in Λ³.
    OmegaWedgeH,
    /// V = Λ³H / (omega ^ H) over the reduced basis.
    Quotient,
}

/// Integer coordinates in Λ³ or V; reduce mod p where needed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trivector {
    pub g: usize,
    pub ambient: Ambient,
    pub coords: Vec<i64>,
}

impl Trivector {
    pub fn zero(space: &SymplecticSpace, ambient: Ambient) -> Self {
        let n = match ambient {
            Ambient::Quotient => space.dim_v(),
            _ => space.dim_lambda3(),
        };
        Trivector {
            g: space.genus(),
            ambient,
            coords: vec![0; n],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Monomial `c_i ^ c_j ^ c_k` in Λ³ (any index order, sign applied).
    pub fn monomial(space: &SymplecticSpace, i: usize, j: usize, k: usize) -> Self {
        let mut t = Self::zero(space, Ambient::Lambda3);
        if let Some((idx, s)) = space.signed_monomial(i, j, k) {
            t.coords[idx] = s;
        }
        t
    }

    /// `x ^ y ^ z` for integer vectors in H.
    pub fn wedge(space: &SymplecticSpace, x: &[i64], y: &[i64], z: &[i64]) -> Result<Self> {
        let n = space.dim_h();
        if x.len() != n || y.len() != n || z.len() != n {
            return Err(Error::DimensionMismatch(format!("vectors must have length {n}")));
        }
        let mut t = Self::zero(space, Ambient::Lambda3);
        for (i, &xi) in x.iter().enumerate().filter(|(_, &v)| v != 0) {
            for (j, &yj) in y.iter().enumerate().filter(|(_, &v)| v != 0) {
                for (k, &zk) in z.iter().enumerate().filter(|(_, &v)| v != 0) {
                    if let Some((idx, s)) = space.signed_monomial(i, j, k) {
                        t.coords[idx] += s * xi * yj * zk;
                    }
                }
            }
        }
        Ok(t)
    }

    /// `omega ^ c`.
    pub fn omega_wedge(space: &SymplecticSpace, c: &[i64]) -> Result<Self> {
        let n = space.dim_h();
        let mut t = Self::zero(space, Ambient::OmegaWedgeH);
        for k in 0..space.genus() {
            let mut a = vec![0; n];
            let mut b = vec![0; n];
            a[2 * k] = 1;
            b[2 * k + 1] = 1;
            let w = Self::wedge(space, &a, &b, c)?;
            for (o, v) in t.coords.iter_mut().zip(w.coords) {
                *o += v;
            }
        }
        Ok(t)
    }

    fn require_lambda3(&self) -> Result<()> {
        if self.ambient == Ambient::Quotient {
            return Err(Error::InvalidArgument("expected Λ³ coordinates".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.coords.len() != other.coords.len() || self.g != other.g {
            return Err(Error::DimensionMismatch("trivectors of different spaces".into()));
        }
        let ambient = if self.ambient == other.ambient {
            self.ambient
        } else if self.ambient != Ambient::Quotient && other.ambient != Ambient::Quotient {
            Ambient::Lambda3
        } else {
            return Err(Error::InvalidArgument("cannot add Λ³ and V coordinates".into()));
        };
        Ok(Trivector {
            g: self.g,
            ambient,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, s: i64) -> Self {
        Trivector {
            g: self.g,
            ambient: self.ambient,
            coords: self.coords.iter().map(|c| c * s).collect(),
        }
    }

    /// `kappa(a ^ b ^ c) = omega(a,b) c + omega(b,c) a + omega(c,a) b`.
    pub fn contraction(&self, space: &SymplecticSpace) -> Result<Vec<i64>> {
        self.require_lambda3()?;
        let mut out = vec![0; space.dim_h()];
        for (idx, &c) in self.coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if let Some((basis, w)) = space.contraction_monomial(idx) {
                out[basis] += w * c;
            }
        }
        Ok(out)
    }

    /// Image in V over the reduced basis.
    pub fn quotient(&self, space: &SymplecticSpace) -> Result<Self> {
        if self.ambient == Ambient::Quotient {
            return Ok(self.clone());
        }
        let mut t = Self::zero(space, Ambient::Quotient);
        for (idx, &c) in self.coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (pos, w) in space.quotient_monomial(idx) {
                t.coords[pos] += w * c;
            }
        }
        Ok(t)
    }

    /// Representative in Λ³ supported on the reduced monomials.
    pub fn lift(&self, space: &SymplecticSpace) -> Self {
        if self.ambient != Ambient::Quotient {
            return self.clone();
        }
        let mut t = Self::zero(space, Ambient::Lambda3);
        for (pos, &c) in self.coords.iter().enumerate() {
            t.coords[space.reduced_basis()[pos]] = c;
        }
        t
    }

    pub fn mod_p(&self, p: u32) -> Vec<u32> {
        self.coords
            .iter()
            .map(|&c| c.rem_euclid(i64::from(p)) as u32)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(n: usize, i: usize) -> Vec<i64> {
        let mut v = vec![0; n];
        v[i] = 1;
        v
    }

    #[test]
    fn contraction_examples() {
        let s = SymplecticSpace::new(3).unwrap();
        // a1 ^ b1 ^ a2 -> a2
        let t = Trivector::monomial(&s, 0, 1, 2);
        assert_eq!(t.contraction(&s).unwrap(), unit(6, 2));
        // a1 ^ a2 ^ a3 -> 0
        let t = Trivector::monomial(&s, 0, 2, 4);
        assert_eq!(t.contraction(&s).unwrap(), vec![0; 6]);
    }

    #[test]
    fn omega_wedge_contracts_to_multiple() {
        for g in 3..=5 {
            let s = SymplecticSpace::new(g).unwrap();
            let c: Vec<i64> = (0..2 * g as i64).map(|i| i * 3 - 2).collect();
            let t = Trivector::omega_wedge(&s, &c).unwrap();
            let expect: Vec<i64> = c.iter().map(|x| x * (g as i64 - 1)).collect();
            assert_eq!(t.contraction(&s).unwrap(), expect);
            assert!(t.quotient(&s).unwrap().is_zero());
        }
    }

    #[test]
    fn quotient_of_lift_is_identity() {
        let s = SymplecticSpace::new(4).unwrap();
        let mut v = Trivector::zero(&s, Ambient::Quotient);
        for (i, c) in v.coords.iter_mut().enumerate() {
            *c = (i as i64 * 7) % 5 - 2;
        }
        assert_eq!(v.lift(&s).quotient(&s).unwrap(), v);
    }

    #[test]
    fn json_shape() {
        let s = SymplecticSpace::new(2).unwrap();
        let t = Trivector::monomial(&s, 0, 1, 2);
        let j = serde_json::to_string(&t).unwrap();
        assert_eq!(j, r#"{"g":2,"ambient":"lambda3","coords":[1,0,0,0]}"#);
    }
}
