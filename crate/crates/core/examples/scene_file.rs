//! Reading, validating and writing scene files.

use cage::scene_file::SceneFile;

const TEXT: &str = r#"
name = "square and disc"

[object]
vertices = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]

[[obstacle]]
type = "disc"
center = [3.0, 0.5]
radius = 0.2
component = 0

[[pose]]
label = "home"
x = 0.0
y = 0.0
theta = 0.0
"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let file = SceneFile::parse(TEXT)?;
    println!(
        "{}: {} obstacle(s), poses {:?}",
        file.scene.name,
        file.scene.cage.len(),
        file.poses.iter().map(|p| &p.label).collect::<Vec<_>>()
    );

    let written = file.to_toml_string();
    assert_eq!(SceneFile::parse(&written)?, file);
    println!("--- serialized ---\n{written}");

    let bowtie = TEXT.replace("[1.0, 1.0], [0.0, 1.0]", "[0.0, 1.0], [1.0, 1.0]");
    if let Err(e) = SceneFile::parse(&bowtie) {
        println!("rejected: {e}");
    }
    Ok(())
}
