use super::*;
use crate::exact::matrix::from_ints;
use crate::fan::TropicalFan;

const Q: FieldDescriptor = FieldDescriptor::Rationals;
const Q2: FieldDescriptor = FieldDescriptor::Quadratic { d: 2 };

fn sum(text: &str, field: FieldDescriptor, n: usize) -> ExpSum {
    ExpSum::parse(text, field, n).unwrap()
}

#[test]
fn parse_simple_sums() {
    let f = sum("exp(z1) - 1", Q, 1);
    assert_eq!(f.support(), vec![from_ints(&[0]), from_ints(&[1])]);
    assert_eq!(f.terms()[0].coeff, Complex::real(Scalar::from_int(-1)));
    assert_eq!(f.terms()[1].coeff, Complex::one());

    let g = sum("exp(sqrt2*z1) - 3", Q2, 1);
    assert_eq!(g.support(), vec![from_ints(&[0]), vec![Scalar::sqrt(2)]]);

    let h = sum("exp(z1) + exp(z1)", Q, 1);
    assert_eq!(h.terms().len(), 1);
    assert_eq!(h.terms()[0].coeff, Complex::real(Scalar::from_int(2)));
}

#[test]
fn parse_forms_and_constants() {
    let f = sum("(1+2i)*exp(3/2 z1 - sqrt(8) z2) + 0.5", Q2, 2);
    let expected = vec![
        Scalar::ratio(3, 2),
        -(Scalar::from_int(2) * Scalar::sqrt(2)),
    ];
    assert!(f.support().contains(&expected));
    assert_eq!(f.terms().len(), 2);
    let g = sum("exp(z)^2 - 1", Q, 1);
    assert_eq!(g.support(), vec![from_ints(&[0]), from_ints(&[2])]);
    assert_eq!(sum("exp(z1) - exp(z1)", Q, 1).terms().len(), 0);
}

#[test]
fn parse_errors() {
    assert!(matches!(
        ExpSum::parse("exp(sqrt2*z1)", Q, 1),
        Err(Error::Unrepresentable { .. })
    ));
    assert!(matches!(
        ExpSum::parse("exp(sqrt3*z1)", Q2, 1),
        Err(Error::Unrepresentable { .. })
    ));
    assert!(matches!(
        ExpSum::parse("exp(z1*z1)", Q, 1),
        Err(Error::Syntax { .. })
    ));
    assert!(matches!(
        ExpSum::parse("exp(z3)", Q, 2),
        Err(Error::Syntax { .. })
    ));
    assert!(matches!(
        ExpSum::parse("exp(z)", Q, 2),
        Err(Error::Syntax { .. })
    ));
    assert!(matches!(
        ExpSum::parse("z1 + 1", Q, 1),
        Err(Error::Syntax { .. })
    ));
    assert!(matches!(
        ExpSum::parse("exp(i*z1)", Q, 1),
        Err(Error::Syntax { .. })
    ));
    assert!(matches!(
        ExpSum::parse("exp(z1 + 1)", Q, 1),
        Err(Error::Unrepresentable { .. })
    ));
    assert!(matches!(
        ExpSum::parse("1/0", Q, 1),
        Err(Error::DivisionByZero)
    ));
}

#[test]
fn text_round_trip() {
    for (t, field, n) in [
        ("(1+2i)*exp(3/2 z1 - sqrt(8) z2) + 0.5", Q2, 2),
        ("exp(z1) - 1", Q, 1),
        ("-i*exp(-z2) + 2*exp(z1+z2)", Q, 2),
    ] {
        let f = sum(t, field, n);
        assert_eq!(sum(&f.to_text(), field, n), f);
    }
    assert_eq!(
        parse_constant("1-3/2*sqrt2", Q2).unwrap().to_string(),
        "1-3/2*sqrt2"
    );
}

#[test]
fn newton_polytopes() {
    let a = Scalar::ratio(3, 2);
    let f = sum("exp(3/2*z) - 7", Q, 1);
    assert_eq!(
        f.newton_polytope().unwrap(),
        Polytope::segment(from_ints(&[0]), vec![a])
    );
    let m = sum("5*exp(z1 - z2)", Q, 2);
    assert_eq!(m.newton_polytope().unwrap().dim(), 0);
    let sq = sum("1 + exp(z1) + exp(z2) + exp(z1+z2)", Q, 2);
    assert_eq!(sq.newton_polytope().unwrap(), Polytope::unit_cube(2));
}

#[test]
fn group_bases() {
    let g = group_basis(&[sum("exp(z) - 1", Q, 1)]).unwrap();
    assert_eq!(g.basis(), &[from_ints(&[1])]);
    let g = group_basis(&[sum("exp(z) - 1", Q2, 1), sum("exp(sqrt2*z) - 1", Q2, 1)]).unwrap();
    assert_eq!(g.rank(), 2);
    assert!(g.basis().contains(&vec![Scalar::sqrt(2)]));
    assert!(g.basis().contains(&from_ints(&[1])));
    let g = group_basis(&[sum("exp(z1) - 1", Q, 2), sum("exp(z2) - 1", Q, 2)]).unwrap();
    assert_eq!(g.rank(), 2);
    let g = group_basis(&[sum("exp(1/2*z) + exp(1/3*z)", Q, 1)]).unwrap();
    assert_eq!(g.basis(), &[vec![Scalar::ratio(1, 6)]]);
    assert_eq!(
        g.coordinates(&[Scalar::ratio(1, 2)]).unwrap(),
        vec![3.into()]
    );
}

#[test]
fn non_spanning_group_is_reported() {
    match group_basis(&[sum("exp(z1) - 1", Q, 2)]) {
        Err(Error::NonSpanning(dirs)) => {
            assert_eq!(dirs, vec![vec!["0".to_string(), "1".to_string()]])
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn two_routes_agree() {
    for (t, field, n) in [
        ("exp(z) - 1", Q, 1),
        ("exp(sqrt2*z) + exp(z) + 1", Q2, 1),
        ("1 + exp(z1) + exp(z2) + exp(z1+z2)", Q, 2),
        ("exp(2 z1 + sqrt2 z2) - exp(z2) + 3", Q2, 2),
    ] {
        let f = sum(t, field, n);
        let d = hypersurface_trop(&f, Route::Direct, None, 1).unwrap();
        let m = hypersurface_trop(&f, Route::Model, None, 1).unwrap();
        assert!(d.equals(&m), "{t}");
    }
}

#[test]
fn direct_route_without_spanning() {
    let f = sum("exp(z1) - 1", Q, 2);
    let t = hypersurface_trop(&f, Route::Direct, None, 0).unwrap();
    assert!(t.equals(&Polytope::coordinate_segment(2, 0).skeleton_fan(1)));
    assert!(matches!(
        hypersurface_trop(&f, Route::Model, None, 0),
        Err(Error::NonSpanning(_))
    ));
}

#[test]
fn densities_match_segment_lengths() {
    for (t, field, alpha) in [
        ("exp(z) - 1", Q, Scalar::one()),
        ("exp(3/2*z) - 2", Q, Scalar::ratio(3, 2)),
        ("exp(sqrt2*z) - 3", Q2, Scalar::sqrt(2)),
    ] {
        let d = weak_density(&[sum(t, field, 1)], 0).unwrap();
        assert_eq!(
            d,
            ScaledDensity {
                value: alpha,
                two_pi_power: -1
            }
        );
    }
    let d = intersection_index(&[sum("exp(z1) - 1", Q, 2), sum("exp(z2) - 1", Q, 2)], 0).unwrap();
    assert_eq!(d.value, Scalar::one());
    assert_eq!(d.two_pi_power, -2);
    let d = intersection_index(
        &[
            sum("exp(z1) - 1", Q2, 2),
            sum("exp(sqrt2*z1 + z2) - 1", Q2, 2),
        ],
        0,
    )
    .unwrap();
    assert_eq!(d.value, Scalar::one());
    let mono = weak_density(&[sum("2*exp(z)", Q, 1)], 0).unwrap();
    assert_eq!(mono.value, Scalar::zero());
}

#[test]
fn overdetermined_systems_are_empty() {
    let t = system_trop(
        &[sum("exp(z1) - 1", Q, 1), sum("exp(z1) - 2", Q, 1)],
        Route::Direct,
        0,
    )
    .unwrap();
    assert_eq!(t.degree(), 2);
    assert!(t.cones().is_empty());
    let one = system_trop(&[sum("exp(z1) - 1", Q, 1)], Route::Direct, 0).unwrap();
    assert!(
        one.equals(&hypersurface_trop(&sum("exp(z1) - 1", Q, 1), Route::Direct, None, 0).unwrap())
    );
}

#[test]
fn realized_fans_round_trip() {
    for p in [
        Polytope::segment(from_ints(&[0]), from_ints(&[1])),
        Polytope::unit_cube(2),
        Polytope::segment(from_ints(&[0]), vec![Scalar::sqrt(2)]),
    ] {
        let f = realize_fan(&p);
        assert_eq!(f.support(), p.vertices().to_vec());
        let t: TropicalFan = hypersurface_trop(&f, Route::Direct, None, 0).unwrap();
        assert!(t.equals(&p.skeleton_fan(1)));
    }
}
