//! Polytope classes: products, pairings and probe-relative equality.
use num_rational::BigRational;
use quasitrop::polyring::{default_probes, PolytopeClass, ZeroVerdict};
use quasitrop::polytope::Polytope;

fn main() -> quasitrop::Result<()> {
    let square = PolytopeClass::polytope(&Polytope::unit_cube(2));
    let segx = PolytopeClass::polytope(&Polytope::coordinate_segment(2, 0));
    let segy = PolytopeClass::polytope(&Polytope::coordinate_segment(2, 1));
    println!(
        "I(square . square) = {}",
        square.multiply(&square)?.top_pairing()?
    );
    println!("I(segx . segy) = {}", segx.multiply(&segy)?.top_pairing()?);

    let diff = square.sub(&segx)?.sub(&segy)?;
    let probes = default_probes(2, 1, &[&diff]);
    println!("square - segx - segy: {:?}", diff.is_zero_class(&probes)?);
    println!("its fan is zero: {}", diff.to_trop(0)?.is_zero());

    let twice = square
        .scale(&BigRational::from_integer(2.into()))
        .sub(&square)?;
    if let ZeroVerdict::Nonzero { pairing, .. } = twice.is_zero_class(&probes)? {
        println!("2 square - square pairs to {pairing} with a probe");
    }
    Ok(())
}
