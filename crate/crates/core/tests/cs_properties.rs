mod common;

use acs_core::cs::{
    bundled_families, cs_family, cs_final, cs_local_sum, find_family, obstruction_check, random_cs_case, table1,
    ClosedForm, InvariantValue, LocalDatum, Phi,
};
use acs_core::Error;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{euler, valid_t, PRINTED_TABLE1};

fn eval(family: &str, t: u64, class: &str) -> bool {
    let fams = bundled_families();
    let r = cs_family(find_family(&fams, family).unwrap(), t, class).unwrap();
    assert!(r.agree);
    r.value == InvariantValue::half()
}

#[test]
fn family_sweeps_against_symbol_oracles() {
    for t in valid_t(5, 1, 500) {
        assert_eq!(eval("cyclic-p", t, "c"), euler(t as i64, 5) == -1, "t = {t}");
    }
    for t in valid_t(145, 1, 500) {
        assert_eq!(eval("v4-5-29", t, "c1"), t % 5 == 2 || t % 5 == 3);
        assert_eq!(eval("v4-5-29", t, "c2"), euler(t as i64, 29) == -1);
        assert_eq!(eval("v4-5-29", t, "c3"), euler(t as i64, 5) == -euler(t as i64, 29));
    }
    for t in valid_t(105, 1, 500) {
        assert_eq!(eval("v4-5-21", t, "c1"), euler(t as i64, 5) == -1);
        assert_eq!(eval("v4-5-21", t, "c2"), euler(t as i64, 3) * euler(t as i64, 7) == -1);
        assert_eq!(eval("v4-5-21", t, "c2"), [2, 8, 10, 11, 13, 19].contains(&(t % 21)));
        assert_eq!(
            eval("v4-5-21", t, "c3"),
            euler(t as i64, 3) * euler(t as i64, 5) * euler(t as i64, 7) == -1
        );
    }
    for t in valid_t(21, 1, 500) {
        assert_eq!(eval("d4-21", t, "c1"), t % 3 == 2);
        assert!(eval("d4-21", t, "c2"));
        assert_eq!(eval("d4-21", t, "c3"), t % 3 == 1);
    }
    for t in valid_t(283, 2, 500) {
        assert!(!eval("s4-283", t, "c"));
    }
    for t in valid_t(2777, 1, 500) {
        assert_eq!(eval("s4-2777", t, "c"), euler(t as i64, 2777) == -1);
    }
}

#[test]
fn general_quaternion_formula_matches_fixture_forms() {
    for fam in bundled_families().into_iter().filter(|f| f.d1.is_some()) {
        let (d1, d2) = (fam.d1.unwrap(), fam.d2.unwrap());
        for t in valid_t(fam.d, 1, 300) {
            for (i, c) in fam.classes.iter().enumerate() {
                let general = ClosedForm::Quaternion { d1, d2, class: i as u8 + 1 };
                assert_eq!(general.holds(t).unwrap(), c.closed_form.holds(t).unwrap(), "{} {} t={t}", fam.name, c.label);
            }
        }
    }
}

#[test]
fn general_quaternion_formula_matches_generic_evaluator() {
    let pairs = [(5i64, 29i64), (5, 21), (13, 17), (17, 21), (13, 29), (5, 41), (17, 53)];
    for (d1, d2) in pairs {
        let d = (d1 * d2) as u64;
        let mut support: Vec<u64> = (3..=d).filter(|p| d % p == 0 && (2..*p).all(|q| p % q != 0)).collect();
        support.push(3);
        support.sort_unstable();
        support.dedup();
        for t in valid_t(d, 1, 200) {
            for (class, m) in [(1u8, d1), (2, d2), (3, d1 * d2)] {
                let generic = cs_final(&support, d, t, m).unwrap().value == InvariantValue::half();
                let closed = ClosedForm::Quaternion { d1, d2, class }.holds(t).unwrap();
                assert_eq!(generic, closed, "({d1},{d2}) c{class} t={t}");
            }
        }
    }
}

#[test]
fn ten_thousand_random_cases_are_consistent() {
    let mut rng = ChaCha8Rng::seed_from_u64(400);
    for _ in 0..10_000 {
        let c = random_cs_case(&mut rng);
        match cs_final(&c.dl_support, c.d, c.t, c.m) {
            Ok(r) => assert_eq!(r.r % 2, r.s % 2),
            Err(e) => panic!("{c:?}: {e}"),
        }
    }
}

#[test]
fn quaternion_table_against_printed_values() {
    let rows = table1();
    assert_eq!(rows.len(), 30);
    for (row, &(d1, d2, delta, exists)) in rows.iter().zip(&PRINTED_TABLE1) {
        assert_eq!((row.d1, row.d2, row.delta), (d1, d2, delta));
        assert_eq!(row.obstructed, !exists, "({d1}, {d2})");
    }
    let a = serde_json::to_string(&table1()).unwrap();
    let b = serde_json::to_string(&table1()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn delta_column_against_euler_oracle() {
    for row in table1() {
        let primes: Vec<u64> = (3..=row.d1 as u64)
            .filter(|p| row.d1 as u64 % p == 0 && (2..*p).all(|q| p % q != 0))
            .collect();
        let delta: i8 = primes.iter().map(|&p| euler(row.d2, p)).product();
        assert_eq!(row.delta, delta);
        assert_eq!(obstruction_check(row.d2, row.d1).unwrap().delta, delta);
    }
}

#[test]
fn family_preconditions() {
    let fams = bundled_families();
    let fam = find_family(&fams, "v4-5-29").unwrap();
    assert!(matches!(cs_family(fam, 5, "c1"), Err(Error::InvalidArgument(_))));
    assert!(matches!(cs_family(fam, 4, "c1"), Err(Error::InvalidArgument(_))));
    assert!(matches!(cs_family(fam, 2, "c4"), Err(Error::UnknownClass { .. })));
}

fn datum() -> impl Strategy<Value = LocalDatum> {
    (any::<bool>(), any::<bool>(), any::<bool>()).prop_map(|(phi, psi, div)| LocalDatum {
        phi: if phi { Phi::UnramifiedGenerator } else { Phi::Trivial },
        psi_ramified: psi && !div,
        divides_n: div,
    })
}

proptest! {
    #[test]
    fn local_sum_is_order_independent(mut data in prop::collection::vec(datum(), 0..12), seed in any::<u64>()) {
        let before = cs_local_sum(&data).unwrap();
        let k = (seed as usize) % (data.len().max(1));
        data.rotate_left(k);
        data.reverse();
        prop_assert_eq!(cs_local_sum(&data).unwrap(), before);
        let active = data.iter().filter(|d| d.phi == Phi::UnramifiedGenerator && d.psi_ramified).count();
        prop_assert_eq!(before, InvariantValue::new(active as u64, 2));
    }
}
