mod common;

use acs_core::cochain::{
    cohomology_dim, conj_action, cup, differential, is_coboundary, Budget, CoeffModule, Cochain,
};
use acs_core::Error;
use common::{group, modules, oracle_cohomology_dim, small_groups};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn cohomology_dims_match_bar_oracle() {
    let z2 = group("Z/2");
    for i in 0..=3 {
        let lib = cohomology_dim(&z2, 2, i, Budget::default()).unwrap();
        assert_eq!(lib, 1, "H^{i}(Z/2, F2)");
        assert_eq!(oracle_cohomology_dim(&z2, 2, i), 1);
    }
    let v4 = group("V4");
    assert_eq!(cohomology_dim(&v4, 2, 1, Budget::default()).unwrap(), 2);
    assert_eq!(oracle_cohomology_dim(&v4, 2, 1), 2);
    assert_eq!(cohomology_dim(&z2, 3, 1, Budget::default()).unwrap(), 0);
    assert_eq!(oracle_cohomology_dim(&z2, 3, 1), 0);
}

#[test]
fn normalized_and_full_complexes_agree() {
    let s3 = acs_core::groups::FiniteGroup::from_permutations("S3", &[vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
    let mut groups: Vec<_> = ["Z/1", "Z/2", "Z/3", "Z/4", "V4", "Z/5", "Z/6", "Z/7", "Z/8", "D4", "Q8", "Z/2xZ/4", "Z/2xZ/2xZ/2"]
        .iter()
        .map(|n| group(n))
        .collect();
    groups.push(std::sync::Arc::new(s3));
    for g in groups {
        let name = g.label().to_string();
        for p in [2u32, 3] {
            for i in 0..=2 {
                assert_eq!(
                    cohomology_dim(&g, p, i, Budget::default()).unwrap(),
                    oracle_cohomology_dim(&g, p as u64, i),
                    "{name} p={p} i={i}"
                );
            }
        }
    }
}

#[test]
fn known_small_cohomology() {
    // H^2(V4, F2) = 3, H^2(Q8, F2) = 2, H^3(Z/4, F2) = 1.
    assert_eq!(cohomology_dim(&group("V4"), 2, 2, Budget::default()).unwrap(), 3);
    assert_eq!(cohomology_dim(&group("Q8"), 2, 2, Budget::default()).unwrap(), 2);
    assert_eq!(cohomology_dim(&group("Z/4"), 2, 3, Budget::default()).unwrap(), 1);
}

#[test]
fn budget_is_enforced() {
    let z13 = group("Z/13");
    assert!(matches!(cohomology_dim(&z13, 2, 3, Budget::default()), Err(Error::Resource(_))));
    assert!(cohomology_dim(&group("Z/12"), 2, 3, Budget::default()).is_ok());
    assert!(matches!(cohomology_dim(&group("Z/2"), 4, 1, Budget::default()), Err(Error::UnsupportedModulus(4))));
}

#[test]
fn d_squared_and_conjugation_commute_everywhere() {
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    for g in small_groups() {
        let max_degree = if g.order() > 12 { 2 } else { 3 };
        let trials = if g.order() > 12 { 20 } else { 60 };
        for modulus in [2, 4] {
            for coeff in modules(&g, modulus) {
                for degree in 0..=max_degree {
                    for _ in 0..trials {
                        let f = Cochain::random(g.clone(), coeff.clone(), degree, &mut rng).unwrap();
                        let df = differential(&f).unwrap();
                        assert!(differential(&df).unwrap().is_zero());
                        let a = rand::Rng::gen_range(&mut rng, 0..g.order());
                        assert_eq!(differential(&conj_action(&f, a)).unwrap(), conj_action(&df, a));
                    }
                }
            }
        }
    }
}

#[test]
fn coboundary_witnesses_are_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for name in ["Z/2", "Z/3", "V4", "D4", "Q8", "S4"] {
        let g = group(name);
        for p in [2u32, 3] {
            for degree in 0..=1 {
                for _ in 0..10 {
                    let beta = Cochain::random(g.clone(), CoeffModule::trivial(p, &g), degree, &mut rng).unwrap();
                    let f = differential(&beta).unwrap();
                    let x = is_coboundary(&f).unwrap().expect("dβ is a coboundary");
                    assert_eq!(differential(&x).unwrap(), f, "{name} p={p}");
                }
            }
        }
    }
}

fn group_strategy() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec!["Z/2", "Z/3", "Z/4", "V4", "Z/6", "D4", "Q8"])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn leibniz_rule(name in group_strategy(), p in 0usize..3, q in 0usize..3, seed in any::<u64>(), modulus in prop::sample::select(vec![2u32, 3, 4])) {
        let g = group(name);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for coeff in modules(&g, modulus) {
            let a = Cochain::random(g.clone(), coeff.clone(), p, &mut rng).unwrap();
            let b = Cochain::random(g.clone(), coeff, q, &mut rng).unwrap();
            let lhs = differential(&cup(&a, &b).unwrap()).unwrap();
            let first = cup(&differential(&a).unwrap(), &b).unwrap();
            let second = cup(&a, &differential(&b).unwrap()).unwrap();
            let rhs = if p % 2 == 0 { &first + &second } else { &first - &second };
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn cup_is_bilinear_and_associative(name in group_strategy(), seed in any::<u64>(), modulus in prop::sample::select(vec![2u32, 3, 4])) {
        let g = group(name);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let coeff = CoeffModule::trivial(modulus, &g);
        let a = Cochain::random(g.clone(), coeff.clone(), 1, &mut rng).unwrap();
        let a2 = Cochain::random(g.clone(), coeff.clone(), 1, &mut rng).unwrap();
        let b = Cochain::random(g.clone(), coeff.clone(), 1, &mut rng).unwrap();
        let c = Cochain::random(g.clone(), coeff, 2, &mut rng).unwrap();
        prop_assert_eq!(cup(&(&a + &a2), &b).unwrap(), &cup(&a, &b).unwrap() + &cup(&a2, &b).unwrap());
        prop_assert_eq!(cup(&b, &(&a + &a2)).unwrap(), &cup(&b, &a).unwrap() + &cup(&b, &a2).unwrap());
        prop_assert_eq!(
            cup(&cup(&a, &b).unwrap(), &c).unwrap(),
            cup(&a, &cup(&b, &c).unwrap()).unwrap()
        );
    }

    #[test]
    fn dump_round_trip(name in group_strategy(), degree in 0usize..3, seed in any::<u64>()) {
        let g = group(name);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = Cochain::random(g.clone(), CoeffModule::trivial(4, &g), degree, &mut rng).unwrap();
        let json = serde_json::to_string(&f.to_dump()).unwrap();
        let back: acs_core::cochain::CochainDump = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back.load().unwrap(), f);
    }
}
