//! Skeleton fans of a polytope, their balance and Minkowski additivity.
use quasitrop::polytope::Polytope;

fn main() -> quasitrop::Result<()> {
    let cube = Polytope::unit_cube(3);
    for k in 0..=3 {
        let fan = cube.skeleton_fan(k);
        println!(
            "K_(cube,{k}): {} cones, balanced {}",
            fan.cones().len(),
            fan.balance_check().balanced
        );
    }
    let square = Polytope::unit_cube(2).skeleton_fan(1);
    let segments = Polytope::coordinate_segment(2, 0)
        .skeleton_fan(1)
        .add(&Polytope::coordinate_segment(2, 1).skeleton_fan(1))?;
    println!(
        "square fan = sum of segment fans: {}",
        square.equals(&segments)
    );
    println!(
        "{}",
        serde_json::to_string_pretty(&square.to_doc()).expect("serializable")
    );
    Ok(())
}
