//! Newton polytopes of exponential sums, their faces and mixed volumes.
use quasitrop::expsum::ExpSum;
use quasitrop::polytope::mixed_volume;
use quasitrop::FieldDescriptor;

fn main() -> quasitrop::Result<()> {
    let q = FieldDescriptor::Rationals;
    let f = ExpSum::parse(
        "1 + exp(z1) + exp(z2) + 2*exp(z1 + z2) + exp(1/2 z1 + 1/2 z2)",
        q,
        2,
    )?;
    let p = f.newton_polytope()?;
    println!(
        "{f}\n  vertices: {:?}",
        p.vertices()
            .iter()
            .map(|v| format!("{v:?}"))
            .collect::<Vec<_>>()
    );
    let lattice = p.face_lattice();
    for k in 0..=p.dim() {
        println!("  {k}-faces: {}", lattice.faces_of_dim(k).count());
    }
    let g = ExpSum::parse("exp(2 z1) + exp(z2) + 1", q, 2)?.newton_polytope()?;
    println!(
        "area {} and mixed volume V(P, G) = {}",
        p.volume(),
        mixed_volume(&[p, g])?
    );
    Ok(())
}
