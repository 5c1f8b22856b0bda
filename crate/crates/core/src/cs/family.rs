use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{cs_final, InvariantValue};
use crate::error::{Error, Result};
use crate::numtheory::{factorize, is_prime, legendre};
use crate::polynomial::{parse_linear_product, poly_eq_mod, poly_parse};

/// The fixture file shipped with the crate.
pub const BUNDLED_FAMILIES_JSON: &str = include_str!("../../fixtures/families.json");

/// Predicate for `CS = 1/2` as a function of `t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClosedForm {
    Always,
    Never,
    /// `∏ (t/p) = -1`.
    LegendreProduct { primes: Vec<u64> },
    /// `t mod modulus ∈ residues`.
    Residues { modulus: u64, residues: Vec<u64> },
    /// The general criterion for the class `c1`, `c2` or `c3` of a
    /// quaternion family over `Q(√d1, √d2)`.
    Quaternion { d1: i64, d2: i64, class: u8 },
}

impl ClosedForm {
    pub fn holds(&self, t: u64) -> Result<bool> {
        Ok(match self {
            ClosedForm::Always => true,
            ClosedForm::Never => false,
            ClosedForm::LegendreProduct { primes } => {
                let mut acc = 1;
                for &p in primes {
                    acc *= legendre(t as i64, p)?;
                }
                acc == -1
            }
            ClosedForm::Residues { modulus, residues } => residues.contains(&(t % modulus)),
            ClosedForm::Quaternion { d1, d2, class } => {
                let t = t as i64;
                let over = |d: i64, a: i64| -> Result<i8> {
                    factorize(d)?.primes().try_fold(1i8, |acc, p| Ok(acc * legendre(a, p)?))
                };
                let product = match class {
                    1 => over(*d1, -d2 * t)? * over(*d2, *d1)?,
                    2 => over(*d1, *d2)? * over(*d2, -d1 * t)?,
                    3 => over(d1 * d2, -t)?,
                    _ => return Err(Error::InvalidArgument(format!("quaternion class c{class} does not exist"))),
                };
                product == -1
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassChoice {
    pub label: String,
    /// Squarefree `M` with `F^α = F(√M)`.
    #[serde(rename = "M")]
    pub m: i64,
    pub closed_form: ClosedForm,
    #[serde(default)]
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorCheck {
    /// Key into the fixture's `polynomials`.
    pub polynomial: String,
    pub factors: String,
    pub modulus: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyFixture {
    pub name: String,
    pub base_group: String,
    pub cover_group: String,
    /// `|D|`.
    #[serde(rename = "D")]
    pub d: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d1: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d2: Option<i64>,
    pub dl_support: Vec<u64>,
    #[serde(default = "default_min_t")]
    pub min_t: u64,
    pub classes: Vec<ClassChoice>,
    #[serde(default)]
    pub provenance: Vec<String>,
    #[serde(default)]
    pub polynomials: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factor_check: Option<FactorCheck>,
}

fn default_min_t() -> u64 {
    1
}

impl FamilyFixture {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Fixture(format!("{}: {msg}", self.name)));
        if let Some(&p) = self.dl_support.iter().find(|&&p| p == 2 || !is_prime(p)) {
            return bad(format!("D_L support entry {p} is not an odd prime"));
        }
        if self.min_t == 0 {
            return bad("min_t must be positive".into());
        }
        let mut labels: Vec<&str> = self.classes.iter().map(|c| c.label.as_str()).collect();
        labels.sort_unstable();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return bad("duplicate class label".into());
        }
        for c in &self.classes {
            if c.m == 0 || self.d % c.m.unsigned_abs() != 0 {
                return bad(format!("class {}: M = {} does not divide D", c.label, c.m));
            }
        }
        if let Some(fc) = &self.factor_check {
            if !self.polynomials.contains_key(&fc.polynomial) {
                return bad(format!("factor check names unknown polynomial `{}`", fc.polynomial));
            }
        }
        Ok(())
    }

    pub fn class(&self, label: &str) -> Result<&ClassChoice> {
        self.classes
            .iter()
            .find(|c| c.label == label)
            .ok_or_else(|| Error::UnknownClass {
                fixture: self.name.clone(),
                class: label.to_string(),
            })
    }

    /// Runs the stored modular factorization check, if any.
    pub fn run_factor_check(&self) -> Result<Option<bool>> {
        let Some(fc) = &self.factor_check else {
            return Ok(None);
        };
        let text = self
            .polynomials
            .get(&fc.polynomial)
            .ok_or_else(|| Error::Fixture(format!("unknown polynomial `{}`", fc.polynomial)))?;
        let lhs = poly_parse(text)?;
        let rhs = parse_linear_product(&fc.factors)?;
        Ok(Some(poly_eq_mod(&lhs, &rhs, fc.modulus)))
    }
}

pub fn load_families(json: &str) -> Result<Vec<FamilyFixture>> {
    let families: Vec<FamilyFixture> =
        serde_json::from_str(json).map_err(|e| Error::Fixture(e.to_string()))?;
    for f in &families {
        f.validate()?;
    }
    Ok(families)
}

pub fn bundled_families() -> Vec<FamilyFixture> {
    load_families(BUNDLED_FAMILIES_JSON).expect("bundled fixtures are valid")
}

pub fn find_family<'a>(families: &'a [FamilyFixture], name: &str) -> Result<&'a FamilyFixture> {
    families
        .iter()
        .find(|f| f.name == name)
        .ok_or_else(|| Error::UnknownFixture(name.to_string()))
}

/// The generic value next to the closed form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CsFamilyResult {
    pub family: String,
    pub t: u64,
    pub class: String,
    pub value: InvariantValue,
    pub predicate: bool,
    pub generic: InvariantValue,
    pub agree: bool,
}

/// Evaluates a family class at `t`; a disagreement between the generic
/// evaluator and the closed form is a consistency error.
pub fn cs_family(fixture: &FamilyFixture, t: u64, class: &str) -> Result<CsFamilyResult> {
    let choice = fixture.class(class)?;
    if t < fixture.min_t {
        return Err(Error::InvalidArgument(format!(
            "family {} needs t ≥ {}",
            fixture.name, fixture.min_t
        )));
    }
    let generic = cs_final(&fixture.dl_support, fixture.d, t, choice.m)?.value;
    let predicate = choice.closed_form.holds(t)?;
    let closed = InvariantValue::new(predicate as u64, 2);
    if closed != generic {
        return Err(Error::Consistency(format!(
            "{} class {class} at t = {t}: generic {generic}, closed form {closed}",
            fixture.name
        )));
    }
    Ok(CsFamilyResult {
        family: fixture.name.clone(),
        t,
        class: class.to_string(),
        value: generic,
        predicate,
        generic,
        agree: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::is_squarefree;

    #[test]
    fn bundled_fixtures_load() {
        let fams = bundled_families();
        let names: Vec<&str> = fams.iter().map(|f| f.name.as_str()).collect();
        assert_eq!(names, ["cyclic-p", "v4-5-29", "v4-5-21", "d4-21", "s4-283", "s4-2777"]);
        assert!(matches!(find_family(&fams, "nope"), Err(Error::UnknownFixture(_))));
    }

    #[test]
    fn documented_values() {
        let fams = bundled_families();
        let eval = |name: &str, t: u64, class: &str| cs_family(find_family(&fams, name).unwrap(), t, class).unwrap();
        assert_eq!(eval("cyclic-p", 2, "c").value, InvariantValue::half());
        assert_eq!(eval("v4-5-21", 2, "c2").value, InvariantValue::half());
        assert_eq!(eval("s4-2777", 5, "c").value, InvariantValue::half());
        assert!(eval("s4-283", 5, "c").value.is_zero());
        let s4 = find_family(&fams, "s4-283").unwrap();
        assert!(cs_family(s4, 1, "c").is_err());
        assert!(matches!(cs_family(s4, 5, "c9"), Err(Error::UnknownClass { .. })));
    }

    #[test]
    fn closed_forms_over_small_t() {
        for fam in bundled_families() {
            for t in (1..=120).filter(|&t| is_squarefree(t as i64) && fam.d % t != 0 && crate::numtheory::gcd(fam.d, t) == 1) {
                if t < fam.min_t {
                    continue;
                }
                for c in &fam.classes {
                    cs_family(&fam, t, &c.label).unwrap();
                }
            }
        }
    }

    #[test]
    fn factor_check_passes() {
        let fams = bundled_families();
        assert_eq!(find_family(&fams, "s4-2777").unwrap().run_factor_check().unwrap(), Some(true));
        assert_eq!(find_family(&fams, "d4-21").unwrap().run_factor_check().unwrap(), None);
    }

    #[test]
    fn invalid_fixture_rejected() {
        let json = r#"[{"name":"x","base_group":"V4","cover_group":"Q8","D":15,"dl_support":[2],"classes":[]}]"#;
        assert!(matches!(load_families(json), Err(Error::Fixture(_))));
        assert!(matches!(load_families("{"), Err(Error::Fixture(_))));
    }
}
