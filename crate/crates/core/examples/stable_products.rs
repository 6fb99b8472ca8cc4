//! Stable products: self-intersections give normalized volumes.
use quasitrop::fan::TropicalFan;
use quasitrop::polytope::Polytope;
use quasitrop::Scalar;

fn main() -> quasitrop::Result<()> {
    let seed = 11;
    let simplex = Polytope::standard_simplex(3).skeleton_fan(1);
    let cube = Polytope::unit_cube(3).skeleton_fan(1);
    let mut acc = TropicalFan::whole_space(3, Scalar::one());
    for f in [&simplex, &cube, &cube] {
        acc = acc.stable_product(f, seed)?;
    }
    println!(
        "simplex . cube . cube at the origin: {}",
        acc.zero_cone_value()?
    );
    let curve = simplex.stable_product(&cube, seed)?;
    println!(
        "simplex . cube: {} cones of dimension {:?}",
        curve.cones().len(),
        curve.puredim()
    );
    println!(
        "commutes: {}",
        curve.equals(&cube.stable_product(&simplex, seed + 1)?)
    );
    Ok(())
}
