//! Exact arithmetic in Q(sqrt2): signs, inverses and exterior forms.
use quasitrop::exact::matrix::from_ints;
use quasitrop::{ExteriorForm, FieldDescriptor, Scalar};

fn main() -> quasitrop::Result<()> {
    let field = FieldDescriptor::parse("Qsqrt:2")?;
    let x = Scalar::from_int(3) - Scalar::from_int(2) * Scalar::sqrt(2);
    println!(
        "field {field}: x = {x}, sign {}, 1/x = {}",
        x.signum(),
        x.recip()?
    );
    println!("x ~ {:.6}", x.to_f64());

    let a = ExteriorForm::covector(&from_ints(&[1, 2, 0]));
    let b = ExteriorForm::covector(&[Scalar::zero(), Scalar::sqrt(2), Scalar::one()]);
    let ab = a.wedge(&b)?;
    for (mask, c) in ab.terms() {
        println!("  a ^ b on coordinates {mask:03b}: {c}");
    }
    println!(
        "b ^ a = -(a ^ b): {}",
        b.wedge(&a)? == ab.scale(&-Scalar::one())
    );
    Ok(())
}
