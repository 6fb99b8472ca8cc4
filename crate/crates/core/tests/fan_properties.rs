mod common;

use proptest::prelude::*;
use rand::Rng;

use quasitrop::fan::{pullback, TropicalFan};
use quasitrop::polytope::mixed_volume;
use quasitrop::Scalar;

fn product_all(fans: &[TropicalFan], seed: u64) -> TropicalFan {
    let n = fans[0].ambient();
    fans.iter()
        .fold(TropicalFan::whole_space(n, Scalar::one()), |acc, f| {
            acc.stable_product(f, seed).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn skeleton_fans_balance(seed in any::<u64>(), n in 1usize..=3) {
        let mut rng = common::rng(seed);
        let p = common::random_polytope(&mut rng, n);
        for k in 0..=n {
            let f = p.skeleton_fan(k);
            prop_assert!(f.balance_check().balanced, "k={} {:?}", k, p.vertices());
        }
    }

    #[test]
    fn powers_of_the_hypersurface_fan(seed in any::<u64>(), n in 1usize..=3) {
        let mut rng = common::rng(seed);
        let p = common::random_polytope(&mut rng, n);
        let one = p.skeleton_fan(1);
        for k in 1..=n {
            let power = product_all(&vec![one.clone(); k], seed);
            prop_assert!(power.equals(&p.skeleton_fan(k)), "k={}", k);
        }
    }

    #[test]
    fn products_commute_and_evaluate_to_mixed_volume(seed in any::<u64>(), n in 1usize..=3) {
        let mut rng = common::rng(seed);
        let sets: Vec<Vec<Vec<i64>>> = (0..n).map(|_| {
            let c = rng.gen_range(2..=n + 2);
            common::int_points(&mut rng, n, c, 2)
        }).collect();
        let ps: Vec<_> = sets.iter().map(|s| common::polytope_of(n, s)).collect();
        let fans: Vec<TropicalFan> = ps.iter().map(|p| p.skeleton_fan(1)).collect();
        let forward = product_all(&fans, seed);
        let reversed: Vec<TropicalFan> = fans.iter().rev().cloned().collect();
        prop_assert!(forward.equals(&product_all(&reversed, seed ^ 1)));
        let oracle = common::oracle_normalized_mixed_volume(n, &sets);
        prop_assert_eq!(forward.zero_cone_value().unwrap(), Scalar::rational(oracle));
        let fact: i64 = (1..=n as i64).product();
        prop_assert_eq!(forward.zero_cone_value().unwrap(), Scalar::from_int(fact) * mixed_volume(&ps).unwrap());
    }

    #[test]
    fn sums_are_minkowski_sums(seed in any::<u64>(), n in 1usize..=3) {
        let mut rng = common::rng(seed);
        let p = common::random_polytope(&mut rng, n);
        let q = common::random_polytope(&mut rng, n);
        let lhs = p.minkowski_sum(&q).unwrap().skeleton_fan(1);
        let rhs = p.skeleton_fan(1).add(&q.skeleton_fan(1)).unwrap();
        prop_assert!(lhs.equals(&rhs));
        let (a, b) = lhs.refine_common(&rhs).unwrap();
        prop_assert!(a.equals(&b));
    }

    #[test]
    fn pullback_matches_polytope_image(seed in any::<u64>(), source in 1usize..=3, target in 1usize..=3) {
        let mut rng = common::rng(seed);
        let s = common::random_map(&mut rng, target, source);
        let p = common::random_polytope(&mut rng, target);
        let image = p.linear_image(&s.matrix().transpose()).unwrap();
        for k in 0..=source.min(target) {
            let pulled = pullback(&s, &p.skeleton_fan(k), seed).unwrap();
            prop_assert_eq!(pulled.degree(), k);
            prop_assert!(pulled.equals(&image.skeleton_fan(k)), "k={}", k);
        }
    }

    #[test]
    fn pullback_is_functorial(seed in any::<u64>(), a in 1usize..=3, b in 1usize..=3, c in 1usize..=3) {
        let mut rng = common::rng(seed);
        let s1 = common::random_map(&mut rng, c, b);
        let s2 = common::random_map(&mut rng, b, a);
        let composite = s1.compose(&s2);
        prop_assume!(composite.rank() > 0);
        let f = common::random_polytope(&mut rng, c).skeleton_fan(1);
        let direct = pullback(&composite, &f, seed).unwrap();
        let stepwise = pullback(&s2, &pullback(&s1, &f, seed).unwrap(), seed);
        // intermediate zero maps are degenerate even when the composite is not
        if let Ok(stepwise) = stepwise {
            prop_assert!(direct.equals(&stepwise));
        }
    }

    #[test]
    fn pullback_is_a_ring_homomorphism(seed in any::<u64>(), source in 1usize..=3, target in 1usize..=3) {
        let mut rng = common::rng(seed);
        let s = common::random_map(&mut rng, target, source);
        let f = common::random_polytope(&mut rng, target).skeleton_fan(1);
        let g = common::random_polytope(&mut rng, target).skeleton_fan(1);
        let sf = pullback(&s, &f, seed).unwrap();
        let sg = pullback(&s, &g, seed).unwrap();
        let product = pullback(&s, &f.stable_product(&g, seed).unwrap(), seed).unwrap();
        prop_assert!(product.equals(&sf.stable_product(&sg, seed).unwrap()));
        let sum = pullback(&s, &f.add(&g).unwrap(), seed).unwrap();
        prop_assert!(sum.equals(&sf.add(&sg).unwrap()));
    }

    #[test]
    fn documents_round_trip(seed in any::<u64>(), n in 1usize..=3) {
        let mut rng = common::rng(seed);
        let k = rng.gen_range(0..=n);
        let f = common::random_polytope(&mut rng, n).skeleton_fan(k);
        let text = serde_json::to_string(&f.to_doc()).unwrap();
        let back = TropicalFan::from_doc(&serde_json::from_str(&text).unwrap(), quasitrop::FieldDescriptor::Rationals).unwrap();
        prop_assert!(back.equals(&f));
    }
}
