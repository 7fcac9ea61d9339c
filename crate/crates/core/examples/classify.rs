//! Scene classification: congruent set, complete caging set, or
//! dissociation at a move-count threshold, at the default resolution.
//!
//! Coarse grids split off isolated cells and can report complete caging
//! where finer grids find one class.

use cage::planner::Planner;
use cage::scene_file::SceneFile;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/scenes");
    let mut paths: Vec<_> = std::fs::read_dir(dir)?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<_, _>>()?;
    paths.sort();
    for path in paths {
        let file = SceneFile::load(&path)?;
        let planner = Planner::new(&file.scene, &file.pose_grid(None, None))?;
        let named: Vec<_> = file.poses.iter().map(|p| p.pose()).collect();
        let c = planner.classify(2, &named)?;
        println!("{:<20} {:?}", file.scene.name, c.verdict);
    }
    Ok(())
}
