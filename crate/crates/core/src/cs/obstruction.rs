use serde::Serialize;

use crate::error::Result;
use crate::numtheory::{delta_invariant, factorize, gcd, is_squarefree, jacobi};

/// Verdict on the existence of a quaternion field containing
/// `Q(√d1, √d2)` with odd discriminant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub d1: i64,
    pub d2: i64,
    pub delta: i8,
    /// Fires exactly when `Δ = -1`.
    pub delta_obstruction: bool,
    /// `(p, i)` with `p ≡ 3 (mod 4)`, `p | d_i` and `(d_{3-i} / p) = 1`.
    pub prime_witnesses: Vec<(u64, u8)>,
    pub obstructed: bool,
}

pub fn obstruction_check(d1: i64, d2: i64) -> Result<ObstructionReport> {
    let delta = delta_invariant(d1, d2)?;
    let mut prime_witnesses = Vec::new();
    for (i, di, other) in [(1u8, d1, d2), (2, d2, d1)] {
        for p in factorize(di)?.primes() {
            if p % 4 == 3 && jacobi(other, p)? == 1 {
                prime_witnesses.push((p, i));
            }
        }
    }
    let delta_obstruction = delta == -1;
    Ok(ObstructionReport {
        d1,
        d2,
        delta,
        delta_obstruction,
        obstructed: delta_obstruction || !prime_witnesses.is_empty(),
        prime_witnesses,
    })
}

/// The thirty `(d1, d2)` pairs of the quaternion table.
pub const TABLE1_PAIRS: [(i64, i64); 30] = [
    (5, 13), (5, 17), (5, 21), (5, 29), (5, 33), (5, 37), (5, 41), (5, 53), (5, 57), (5, 61),
    (13, 17), (13, 21), (13, 29), (13, 33), (13, 37), (13, 41), (13, 53), (13, 57), (13, 61), (13, 69),
    (17, 21), (17, 29), (17, 33), (17, 37), (17, 41), (17, 53), (17, 57), (17, 61), (17, 65), (17, 69),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table1Row {
    pub d1: i64,
    pub d2: i64,
    pub delta: i8,
    pub obstructed: bool,
}

pub fn table1() -> Vec<Table1Row> {
    TABLE1_PAIRS
        .iter()
        .map(|&(d1, d2)| {
            let r = obstruction_check(d1, d2).expect("table entries satisfy the hypotheses");
            Table1Row {
                d1,
                d2,
                delta: r.delta,
                obstructed: r.obstructed,
            }
        })
        .collect()
}

/// Necessary conditions on `(d1, d2)` for the quaternion construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuaternionChecklist {
    pub positive: bool,
    pub squarefree: bool,
    pub odd: bool,
    pub one_mod_four: bool,
    pub coprime: bool,
}

impl QuaternionChecklist {
    pub fn all_pass(&self) -> bool {
        self.positive && self.squarefree && self.odd && self.one_mod_four && self.coprime
    }

    pub fn items(&self) -> [(&'static str, bool); 5] {
        [
            ("positive", self.positive),
            ("squarefree", self.squarefree),
            ("odd", self.odd),
            ("1 mod 4", self.one_mod_four),
            ("coprime", self.coprime),
        ]
    }
}

pub fn quaternion_constraints(d1: i64, d2: i64) -> QuaternionChecklist {
    let both = |f: &dyn Fn(i64) -> bool| f(d1) && f(d2);
    QuaternionChecklist {
        positive: both(&|d| d > 0),
        squarefree: both(&|d| d != 0 && is_squarefree(d)),
        odd: both(&|d| d % 2 != 0),
        one_mod_four: both(&|d| d.rem_euclid(4) == 1),
        coprime: gcd(d1.unsigned_abs(), d2.unsigned_abs()) == 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_rows() {
        let r = obstruction_check(5, 13).unwrap();
        assert!(r.delta_obstruction && r.obstructed);
        let r = obstruction_check(13, 69).unwrap();
        assert_eq!(r.delta, 1);
        assert!(r.obstructed);
        assert!(r.prime_witnesses.contains(&(3, 2)));
        assert!(!obstruction_check(5, 21).unwrap().obstructed);
        assert!(obstruction_check(5, 12).is_err());
    }

    #[test]
    fn delta_is_symmetric() {
        for (d1, d2) in TABLE1_PAIRS {
            assert_eq!(obstruction_check(d1, d2).unwrap().delta, obstruction_check(d2, d1).unwrap().delta);
        }
    }

    #[test]
    fn checklist() {
        assert!(quaternion_constraints(5, 29).all_pass());
        let c = quaternion_constraints(21, 33);
        assert!(!c.coprime && c.one_mod_four && c.squarefree);
        let c = quaternion_constraints(15, 7);
        assert!(!c.one_mod_four && c.odd && c.coprime);
    }
}
