//! Tropicalizing exponential sums along both routes.
use quasitrop::expsum::{group_basis, hypersurface_trop, ExpSum, Route};
use quasitrop::FieldDescriptor;

fn main() -> quasitrop::Result<()> {
    let field = FieldDescriptor::quadratic(2)?;
    let f = ExpSum::parse("exp(2 z1 + sqrt2 z2) - exp(z2) + 3", field, 2)?;
    let g = group_basis(std::slice::from_ref(&f))?;
    println!("{f}: group of rank {} with basis {:?}", g.rank(), g.basis());
    let direct = hypersurface_trop(&f, Route::Direct, None, 0)?;
    let model = hypersurface_trop(&f, Route::Model, Some(&g), 0)?;
    println!(
        "direct: {} cones, model: {} cones, equal: {}",
        direct.cones().len(),
        model.cones().len(),
        direct.equals(&model)
    );
    Ok(())
}
