use serde::Serialize;

use super::group::{standard_generators, GroupElement};
use super::space::SymplecticSpace;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorCheck {
    pub name: String,
    pub nontrivial_on_v: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaithfulnessReport {
    pub g: usize,
    pub p: u32,
    pub minus_id_is_minus_one_on_lambda3: bool,
    pub minus_id_nontrivial_on_v: bool,
    pub generators: Vec<GeneratorCheck>,
    /// Scalars lambda in 1..p with lambda * id symplectic mod p.
    pub symplectic_scalars: Vec<u32>,
    pub scalars_are_plus_minus_one: bool,
}

impl FaithfulnessReport {
    pub fn passed(&self) -> bool {
        self.minus_id_is_minus_one_on_lambda3
            && self.minus_id_nontrivial_on_v
            && self.generators.iter().all(|c| c.nontrivial_on_v)
            && self.scalars_are_plus_minus_one
    }
}

/// The checks that, together with simplicity of PSp, make the action on V faithful.
pub fn faithfulness_check(g: usize, p: u32) -> Result<FaithfulnessReport> {
    if g < 3 {
        return Err(Error::InvalidArgument("faithfulness needs g >= 3".into()));
    }
    if p < 3 || !crate::prime::is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not an odd prime")));
    }
    let space = SymplecticSpace::new(g)?;
    let minus = GroupElement::scalar(&space, -1);
    let l3 = minus.lambda3_action(&space, p);
    let minus_id_is_minus_one_on_lambda3 = l3
        .cols
        .iter()
        .enumerate()
        .all(|(j, col)| col.len() == 1 && col[0] == (j, p - 1));
    let minus_id_nontrivial_on_v = !minus.v_action(&space, p).is_identity();
    let generators = standard_generators(&space)
        .into_iter()
        .map(|m| GeneratorCheck {
            nontrivial_on_v: !m.v_action(&space, p).is_identity(),
            name: m.name,
        })
        .collect();
    let symplectic_scalars: Vec<u32> = (1..p)
        .filter(|&l| GroupElement::scalar(&space, i64::from(l)).is_symplectic(&space, Some(p)))
        .collect();
    let scalars_are_plus_minus_one = symplectic_scalars == vec![1, p - 1];
    Ok(FaithfulnessReport {
        g,
        p,
        minus_id_is_minus_one_on_lambda3,
        minus_id_nontrivial_on_v,
        generators,
        symplectic_scalars,
        scalars_are_plus_minus_one,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_three_mod_five() {
        let r = faithfulness_check(3, 5).unwrap();
        assert!(r.passed());
        assert_eq!(r.symplectic_scalars, vec![1, 4]);
        assert!(r.generators.iter().any(|c| c.name == "t_a1" && c.nontrivial_on_v));
        assert!(faithfulness_check(2, 5).is_err());
    }
}
