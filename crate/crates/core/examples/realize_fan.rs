//! An exponential sum realizing the hypersurface fan of a given polytope.
use quasitrop::exact::matrix::from_ints;
use quasitrop::expsum::{hypersurface_trop, realize_fan, Route};
use quasitrop::polytope::Polytope;
use quasitrop::Scalar;

fn main() -> quasitrop::Result<()> {
    let p = Polytope::convex_hull(
        2,
        &[
            from_ints(&[0, 0]),
            from_ints(&[2, 0]),
            vec![Scalar::one(), Scalar::sqrt(2)],
        ],
    )?;
    let f = realize_fan(&p);
    println!("f = {f} (field {})", f.field());
    let t = hypersurface_trop(&f, Route::Direct, None, 0)?;
    println!("trop(f) = K_(P,1): {}", t.equals(&p.skeleton_fan(1)));
    Ok(())
}
