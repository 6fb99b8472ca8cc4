//! Pulling fans back along surjective, injective and general linear maps.
use quasitrop::fan::pullback;
use quasitrop::polytope::Polytope;
use quasitrop::{LinearMap, Matrix};

fn main() -> quasitrop::Result<()> {
    let square = Polytope::unit_cube(2);
    let maps = [
        ("diagonal R -> R^2", Matrix::from_int_rows(&[&[1], &[1]])),
        (
            "projection R^3 -> R^2",
            Matrix::from_int_rows(&[&[1, 0, 1], &[0, 1, 1]]),
        ),
        (
            "rank one R^2 -> R^2",
            Matrix::from_int_rows(&[&[1, 2], &[2, 4]]),
        ),
    ];
    for (name, m) in maps {
        let s = LinearMap::new(m.clone());
        let pulled = pullback(&s, &square.skeleton_fan(1), 0)?;
        let image = square.linear_image(&m.transpose())?;
        println!(
            "{name}: {} cones, equals the fan of the image polytope: {}",
            pulled.cones().len(),
            pulled.equals(&image.skeleton_fan(1))
        );
    }
    Ok(())
}
