//! Chambers and zero lattices of a system whose exponents are dependent over Q.
use quasitrop::chambers::{density_sum, ModelSystem};
use quasitrop::expsum::{weak_density, ExpSum};
use quasitrop::FieldDescriptor;

fn main() -> quasitrop::Result<()> {
    let field = FieldDescriptor::quadratic(2)?;
    let fs = [ExpSum::parse("exp(z) + exp(sqrt2*z) + 1", field, 1)?];
    let model = ModelSystem::new(&fs, 0)?;
    let family = model.nontransversal_loci();
    println!(
        "model dimension {}, {} special subspaces",
        model.basis().rank(),
        family.subspaces.len()
    );
    for seed in 0..4 {
        let chamber = model.sample_chamber(&family, seed)?;
        let lattices = model.zero_lattices(&chamber)?;
        println!("seed {seed}: active {:?}", chamber.active);
        for l in &lattices {
            println!(
                "  2pi * {:?} with multiplicity {}",
                l.basis_over_2pi, l.multiplicity
            );
        }
        println!("  density {}", density_sum(1, &lattices)?);
    }
    println!("weak density {}", weak_density(&fs, 0)?);
    Ok(())
}
