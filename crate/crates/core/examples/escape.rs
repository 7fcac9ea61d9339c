//! Escaping to the outside of the caging set, or failing to.

use cage::planner::{escape_to_exterior, EscapeReport};
use cage::scene_file::SceneFile;

fn describe(name: &str, r: &EscapeReport) {
    match r.ell {
        Some(ell) => println!(
            "{name}: escapes in {ell} simple move(s), certificate {:?}",
            r.certificate
        ),
        None => println!("{name}: no escape at this resolution"),
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (name, label) in [
        ("figure1_nshape", "caged"),
        ("wall_with_gap", "left"),
        ("bar_between_walls", "inside"),
    ] {
        let path = format!("{}/scenes/{name}.toml", env!("CARGO_MANIFEST_DIR"));
        let file = SceneFile::load(&path)?;
        let from = file.pose(label).expect("named pose").pose();
        // an unreachable target means every free cell gets tried, so stay coarse
        let grid = file.pose_grid(Some((12, 12, 16)), None);
        describe(name, &escape_to_exterior(&file.scene, &from, &grid)?);
    }
    Ok(())
}
