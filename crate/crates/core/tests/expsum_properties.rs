mod common;

use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use quasitrop::chambers::{density_sum, ModelSystem};
use quasitrop::expsum::{
    group_basis, hypersurface_trop, intersection_index, realize_fan, ExpSum, Route,
};
use quasitrop::polytope::Polytope;
use quasitrop::{FieldDescriptor, Scalar, Vector};

const Q2: FieldDescriptor = FieldDescriptor::Quadratic { d: 2 };

/// Entries `a + b sqrt2` with small integers `a`, `b`.
fn quadratic_support(rng: &mut ChaCha8Rng, n: usize, count: usize) -> Vec<Vector> {
    (0..count)
        .map(|_| {
            (0..n)
                .map(|_| {
                    Scalar::from_int(rng.gen_range(-2..=2))
                        + Scalar::from_int(rng.gen_range(-1..=1)) * Scalar::sqrt(2)
                })
                .collect()
        })
        .collect()
}

fn spanning_sum(rng: &mut ChaCha8Rng, n: usize) -> ExpSum {
    loop {
        let count = rng.gen_range(2..=n + 2);
        let f = common::sum_with_support(n, Q2, &quadratic_support(rng, n, count));
        if group_basis(std::slice::from_ref(&f)).is_ok() {
            return f;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn routes_agree(seed in any::<u64>(), n in 1usize..=2) {
        let mut rng = common::rng(seed);
        let f = spanning_sum(&mut rng, n);
        let direct = hypersurface_trop(&f, Route::Direct, None, seed).unwrap();
        let model = hypersurface_trop(&f, Route::Model, None, seed).unwrap();
        prop_assert!(direct.equals(&model), "{}", f);
    }

    #[test]
    fn enlarging_the_group_changes_nothing(seed in any::<u64>(), n in 1usize..=2) {
        let mut rng = common::rng(seed);
        let f = spanning_sum(&mut rng, n);
        let g = group_basis(std::slice::from_ref(&f)).unwrap();
        let extra = quadratic_support(&mut rng, n, 1);
        let h = g.with_extra(&extra);
        prop_assert!(h.rank() >= g.rank());
        let via_g = hypersurface_trop(&f, Route::Model, Some(&g), seed).unwrap();
        let via_h = hypersurface_trop(&f, Route::Model, Some(&h), seed).unwrap();
        prop_assert!(via_g.equals(&via_h));
    }

    #[test]
    fn index_is_normalized_mixed_volume(seed in any::<u64>(), n in 1usize..=3) {
        let mut rng = common::rng(seed);
        let sets: Vec<Vec<Vec<i64>>> = (0..n).map(|_| {
            let c = rng.gen_range(2..=n + 2);
            common::int_points(&mut rng, n, c, 2)
        }).collect();
        let fs: Vec<ExpSum> = sets
            .iter()
            .map(|s| common::sum_with_support(n, FieldDescriptor::Rationals, &s.iter().map(|p| quasitrop::exact::matrix::from_ints(p)).collect::<Vec<_>>()))
            .collect();
        let d = intersection_index(&fs, seed).unwrap();
        prop_assert_eq!(d.two_pi_power, -(n as i32));
        prop_assert_eq!(d.value, Scalar::rational(common::oracle_normalized_mixed_volume(n, &sets)));
    }

    #[test]
    fn scaling_exponents_scales_the_index(seed in any::<u64>(), n in 1usize..=2, num in 1i64..4, den in 1i64..4) {
        let mut rng = common::rng(seed);
        let fs: Vec<ExpSum> = (0..n).map(|_| spanning_sum(&mut rng, n)).collect();
        let r = Scalar::ratio(num, den);
        let scaled: Vec<ExpSum> = fs.iter().map(|f| f.scale_exponents(&r)).collect();
        let base = intersection_index(&fs, seed).unwrap().value;
        prop_assert_eq!(intersection_index(&scaled, seed).unwrap().value, r.pow(n as u32) * base);
    }

    #[test]
    fn chamber_densities_match_the_index(seed in any::<u64>(), n in 1usize..=2) {
        let mut rng = common::rng(seed);
        let fs: Vec<ExpSum> = (0..n).map(|_| spanning_sum(&mut rng, n)).collect();
        prop_assume!(group_basis(&fs).is_ok());
        let expected = intersection_index(&fs, seed).unwrap();
        let model = ModelSystem::new(&fs, seed).unwrap();
        let family = model.nontransversal_loci();
        for s in 0..3 {
            let chamber = model.sample_chamber(&family, seed.wrapping_add(s)).unwrap();
            let lattices = model.zero_lattices(&chamber).unwrap();
            prop_assert!(lattices.iter().all(|l| l.multiplicity >= 1));
            prop_assert_eq!(&density_sum(n, &lattices).unwrap(), &expected);
        }
    }

    #[test]
    fn realized_fans_round_trip(seed in any::<u64>(), n in 1usize..=3) {
        let mut rng = common::rng(seed);
        let p = common::random_polytope(&mut rng, n);
        let p = if rng.gen_bool(0.3) {
            let pts: Vec<Vector> = p.vertices().iter().map(|v| {
                let mut w = v.clone();
                w[0] = w[0].clone() * Scalar::sqrt(2);
                w
            }).collect();
            Polytope::convex_hull(n, &pts).unwrap()
        } else {
            p
        };
        let f = realize_fan(&p);
        let t = hypersurface_trop(&f, Route::Direct, None, seed).unwrap();
        prop_assert!(t.equals(&p.skeleton_fan(1)));
    }
}
