//! Least number of simple moves between two placements, with the
//! brute-force search as a cross-check.

use cage::planner::{brute_force_min_moves, min_simple_moves};
use cage::scene_file::SceneFile;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/scenes/figure1_nshape.toml");
    let file = SceneFile::load(path)?;
    let from = file.pose("caged").expect("scene has a caged pose").pose();
    let to = file.pose("free").expect("scene has a free pose").pose();
    let grid = file.pose_grid(Some((16, 16, 24)), None);

    let report = min_simple_moves(&file.scene, &from, &to, &grid)?;
    println!("ell = {:?}, branches {:?}", report.ell, report.branches);
    for (i, w) in report.waypoints.iter().enumerate() {
        println!("  placement {i}: ({:+.3}, {:+.3}, {:+.3})", w.x(), w.y(), w.angle());
    }
    println!("chain certificate: {:?}", report.certificate);
    println!("{}", report.resolution_note);

    let reference = brute_force_min_moves(&file.scene, &from, &to, &grid)?;
    println!("brute force agrees: {}", reference.ell == report.ell);
    Ok(())
}
