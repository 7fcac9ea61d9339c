//! Draws the escape of the N-shaped plate as a multi-panel SVG.
//!
//! Usage: `cargo run --example render_moves [OUT.svg]`

use cage::planner::min_simple_moves;
use cage::render::render_svg;
use cage::scene_file::SceneFile;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "figure1_escape.svg".to_string());
    let file = SceneFile::load(concat!(env!("CARGO_MANIFEST_DIR"), "/scenes/figure1_nshape.toml"))?;
    let from = file.pose("caged").expect("caged pose").pose();
    let to = file.pose("free").expect("free pose").pose();
    let report = min_simple_moves(&file.scene, &from, &to, &file.pose_grid(Some((16, 16, 24)), None))?;
    let moves = report.moves.as_ref().map(|m| m.simple_moves()).unwrap_or_default();
    std::fs::write(&out, render_svg(&file.scene, &from, &moves))?;
    println!("wrote {out} with {} panels", moves.len() + 1);
    Ok(())
}
