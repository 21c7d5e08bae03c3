use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::{CycloElem, CycloMatrix, Valuation};
use crate::error::{Error, Result};
use crate::prime::Prime;

/// Exact expression over Z[zeta_p] in terms of `A`, quantum integers and `h`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expr {
    Int(i64),
    APow(i64),
    Qint(u32),
    HPow(u32),
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Neg(Box<Expr>),
    Sub(Box<(Expr, Expr)>),
    /// Exact quotient; must divide in Z[zeta_p].
    Div(Box<(Expr, Expr)>),
    Ref(String),
}

impl Expr {
    pub fn eval(&self, p: Prime, defs: &BTreeMap<String, Expr>) -> Result<CycloElem> {
        self.eval_depth(p, defs, 0)
    }

    fn eval_depth(&self, p: Prime, defs: &BTreeMap<String, Expr>, depth: usize) -> Result<CycloElem> {
        if depth > 64 {
            return Err(Error::FixtureIntegrity("expression nesting too deep".into()));
        }
        let ev = |e: &Expr| e.eval_depth(p, defs, depth + 1);
        Ok(match self {
            Expr::Int(n) => CycloElem::from_int(p, *n),
            Expr::APow(n) => CycloElem::a_pow(p, *n),
            Expr::Qint(k) => CycloElem::quantum_int(p, *k),
            Expr::HPow(k) => CycloElem::h_pow(p, *k),
            Expr::Add(xs) => {
                let mut acc = CycloElem::zero(p);
                for x in xs {
                    acc += &ev(x)?;
                }
                acc
            }
            Expr::Mul(xs) => {
                let mut acc = CycloElem::one(p);
                for x in xs {
                    acc = &acc * &ev(x)?;
                }
                acc
            }
            Expr::Neg(x) => -ev(x)?,
            Expr::Sub(b) => &ev(&b.0)? - &ev(&b.1)?,
            Expr::Div(b) => {
                let (num, den) = (ev(&b.0)?, ev(&b.1)?);
                num.div_exact(&den).map_err(|e| {
                    Error::FixtureIntegrity(format!("inexact quotient at p={p}: {e}"))
                })?
            }
            Expr::Ref(name) => defs
                .get(name)
                .ok_or_else(|| Error::FixtureIntegrity(format!("unknown reference {name}")))?
                .eval_depth(p, defs, depth + 1)?,
        })
    }
}

/// Matrix entry `h^h_exp * expr`; a negative exponent is an exact division.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureEntry {
    pub expr: Expr,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub h_exp: i32,
}

fn is_zero(x: &i32) -> bool {
    *x == 0
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistFixture {
    pub name: String,
    pub provenance: String,
    pub size: usize,
    #[serde(default)]
    pub defs: BTreeMap<String, Expr>,
    pub entries: Vec<Vec<FixtureEntry>>,
}

pub const FIXTURE_NAMES: [&str; 4] = ["twist_gamma_2x2", "t_c1_W", "t_c2_W", "t_alpha_W"];

pub fn load_fixture(name: &str) -> Result<TwistFixture> {
    let text = match name {
        "twist_gamma_2x2" => include_str!("../../fixtures/twist_gamma_2x2.json"),
        "t_c1_W" => include_str!("../../fixtures/t_c1_W.json"),
        "t_c2_W" => include_str!("../../fixtures/t_c2_W.json"),
        "t_alpha_W" => include_str!("../../fixtures/t_alpha_W.json"),
        _ => return Err(Error::InvalidArgument(format!("unknown fixture {name}"))),
    };
    TwistFixture::from_json(text)
}

/// Valuation requirement for an entry carrying a negative power of h.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisibilityGate {
    pub row: usize,
    pub col: usize,
    pub required: u32,
    pub valuation: Valuation,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixtureReport {
    pub name: String,
    pub p: u32,
    pub gates: Vec<DivisibilityGate>,
    pub passed: bool,
}

impl TwistFixture {
    pub fn from_json(text: &str) -> Result<Self> {
        let f: TwistFixture = serde_json::from_str(text)
            .map_err(|e| Error::FixtureIntegrity(format!("malformed fixture: {e}")))?;
        if f.entries.len() != f.size || f.entries.iter().any(|r| r.len() != f.size) {
            return Err(Error::FixtureIntegrity(format!(
                "{}: entries do not form a {}x{} matrix",
                f.name, f.size, f.size
            )));
        }
        Ok(f)
    }

    fn numerator(&self, i: usize, j: usize, p: Prime) -> Result<CycloElem> {
        self.entries[i][j].expr.eval(p, &self.defs)
    }

    /// Divisibility gates for every entry with a negative h exponent.
    pub fn gates(&self, p: Prime) -> Result<Vec<DivisibilityGate>> {
        let mut out = Vec::new();
        for (i, row) in self.entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if e.h_exp < 0 {
                    let required = e.h_exp.unsigned_abs();
                    let valuation = self.numerator(i, j, p)?.h_valuation();
                    out.push(DivisibilityGate {
                        row: i,
                        col: j,
                        required,
                        valuation,
                        passed: valuation.is_at_least(required),
                    });
                }
            }
        }
        Ok(out)
    }

    /// Exact matrix at `p`; fails with a fixture-integrity error if a gate fails.
    pub fn materialize(&self, p: Prime) -> Result<CycloMatrix> {
        let mut rows = Vec::with_capacity(self.size);
        for (i, row) in self.entries.iter().enumerate() {
            let mut out = Vec::with_capacity(self.size);
            for (j, e) in row.iter().enumerate() {
                let num = self.numerator(i, j, p)?;
                let v = if e.h_exp >= 0 {
                    &num * &CycloElem::h_pow(p, e.h_exp as u32)
                } else {
                    num.div_h_pow(e.h_exp.unsigned_abs()).map_err(|_| {
                        Error::FixtureIntegrity(format!(
                            "{}[{i}][{j}]: numerator not divisible by h^{} at p={p}",
                            self.name, -e.h_exp
                        ))
                    })?
                };
                out.push(v);
            }
            rows.push(out);
        }
        CycloMatrix::from_rows(rows)
    }
}

pub fn verify_fixture(f: &TwistFixture, p: Prime) -> Result<FixtureReport> {
    let gates = f.gates(p)?;
    let passed = gates.iter().all(|g| g.passed) && f.materialize(p).is_ok();
    Ok(FixtureReport {
        name: f.name.clone(),
        p: p.get(),
        gates,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p5() -> Prime {
        Prime::new(5).unwrap()
    }

    #[test]
    fn all_fixtures_load_and_pass() {
        for p in [5u32, 7, 11, 13] {
            let p = Prime::new(p).unwrap();
            for name in FIXTURE_NAMES {
                let f = load_fixture(name).unwrap();
                let r = verify_fixture(&f, p).unwrap();
                assert!(r.passed, "{name} at {p}: {r:?}");
            }
        }
    }

    #[test]
    fn gamma_entries_at_five() {
        let f = load_fixture("twist_gamma_2x2").unwrap();
        let t21 = f.materialize(p5()).unwrap().get(1, 0).clone();
        assert_eq!(t21.h_valuation(), Valuation::Finite(1));
        let one_plus_a3 = &CycloElem::one(p5()) + &CycloElem::a_pow(p5(), 3);
        assert_eq!(one_plus_a3.h_valuation(), Valuation::Finite(1));
    }

    #[test]
    fn failing_gate_is_an_integrity_error() {
        let text = r#"{"name":"bad","provenance":"test","size":1,
            "entries":[[{"expr":{"int":1},"h_exp":-1}]]}"#;
        let f = TwistFixture::from_json(text).unwrap();
        assert!(matches!(f.materialize(p5()), Err(Error::FixtureIntegrity(_))));
        assert!(!verify_fixture(&f, p5()).unwrap().passed);
    }

    #[test]
    fn inexact_division_and_bad_refs_are_rejected() {
        let text = r#"{"name":"bad","provenance":"test","size":1,
            "entries":[[{"expr":{"div":[{"int":1},{"int":2}]}}]]}"#;
        let f = TwistFixture::from_json(text).unwrap();
        assert!(matches!(f.materialize(p5()), Err(Error::FixtureIntegrity(_))));
        let text = r#"{"name":"bad","provenance":"test","size":1,"entries":[[{"expr":{"ref":"X"}}]]}"#;
        let f = TwistFixture::from_json(text).unwrap();
        assert!(f.materialize(p5()).is_err());
        assert!(TwistFixture::from_json(r#"{"name":"x","provenance":"t","size":2,"entries":[]}"#).is_err());
        assert!(load_fixture("nope").is_err());
    }
}
