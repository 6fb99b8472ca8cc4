//! Intersection index of a square system against its mixed volume.
use quasitrop::expsum::{intersection_index, ExpSum};
use quasitrop::polytope::mixed_volume;
use quasitrop::{FieldDescriptor, Scalar};

fn main() -> quasitrop::Result<()> {
    let q = FieldDescriptor::Rationals;
    let fs = [
        ExpSum::parse("1 + exp(z1) + exp(z2)", q, 2)?,
        ExpSum::parse("exp(2 z1) - exp(3/2 z2) + 5", q, 2)?,
    ];
    let index = intersection_index(&fs, 0)?;
    let ps = fs
        .iter()
        .map(|f| f.newton_polytope())
        .collect::<quasitrop::Result<Vec<_>>>()?;
    let mv = mixed_volume(&ps)?;
    println!("index {index} ~ {:.6}", index.approx());
    println!("2! * mixed volume = {}", Scalar::from_int(2) * mv);
    Ok(())
}
