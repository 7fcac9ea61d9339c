//! Collision and clearance of a posed object against discs and capsules.

use cage::geometry::{clearance, intersects, CollisionKernel, ObjectShape, Obstacle, Scene, Vec2};
use cage::lie::Pose2;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let square = ObjectShape::new(vec![
        Vec2::new(-0.5, -0.5),
        Vec2::new(0.5, -0.5),
        Vec2::new(0.5, 0.5),
        Vec2::new(-0.5, 0.5),
    ])?;
    let scene = Scene::new(
        "square and two obstacles",
        square,
        vec![
            Obstacle::disc(Vec2::new(2.0, 0.0), 0.25, 0),
            Obstacle::capsule(Vec2::new(-2.0, -1.0), Vec2::new(-2.0, 1.0), 0.1, 1),
        ],
    )?;

    let kernel = CollisionKernel::new(&scene);
    for x in [0.0, 0.75, 1.25, -1.0, -1.4] {
        let pose = Pose2::from_xy_angle(x, 0.0, 0.0);
        let placed = scene.object.transform(&pose);
        println!(
            "x = {x:+.2}: intersects {:5}, clearance {:.4}",
            intersects(&placed, &scene.cage),
            clearance(&placed, &scene.cage)
        );
        assert_eq!(kernel.clearance_at(&pose), clearance(&placed, &scene.cage));
    }

    // touching counts as a collision
    let touching = Pose2::from_xy_angle(1.25, 0.0, 0.0);
    println!("touching the disc collides: {}", kernel.intersects_at(&touching));
    Ok(())
}
