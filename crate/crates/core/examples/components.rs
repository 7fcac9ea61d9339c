//! Congruence classes of the free placement grid.

use cage::planner::{build_free_space, connected_components, PoseGrid};
use cage::scene_file::SceneFile;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in ["empty_square", "bar_between_walls", "ring_of_discs"] {
        let path = format!("{}/scenes/{name}.toml", env!("CARGO_MANIFEST_DIR"));
        let file = SceneFile::load(&path)?;
        let grid: PoseGrid = file.pose_grid(Some((16, 16, 24)), None);
        let space = build_free_space(&file.scene, &grid)?;
        let labels = connected_components(&space, &file.scene);
        println!(
            "{name}: {} of {} cells free, {} component(s), sizes {:?}",
            space.free_count(),
            grid.cell_count(),
            labels.count(),
            labels.sizes
        );
    }
    Ok(())
}
