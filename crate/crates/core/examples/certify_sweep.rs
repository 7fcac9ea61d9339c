//! Certifying whole motions instead of single placements.

use cage::geometry::{ObjectShape, Obstacle, Scene, Vec2};
use cage::lie::{Pose2, Twist2};
use cage::sweep::{certify_piecewise, certify_simple_move, velocity_bound, PiecewiseMove, SimpleMove};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let square = ObjectShape::new(vec![
        Vec2::new(-0.5, -0.5),
        Vec2::new(0.5, -0.5),
        Vec2::new(0.5, 0.5),
        Vec2::new(-0.5, 0.5),
    ])?;
    let scene = Scene::new("post", square, vec![Obstacle::disc(Vec2::new(0.0, 0.0), 0.3, 0)])?;
    let start = Pose2::from_xy_angle(-2.0, 0.0, 0.0);

    // straight through the post
    let straight = SimpleMove::new(Twist2::translation(Vec2::new(4.0, 0.0))?, start);
    println!("straight slide: {:?}", certify_simple_move(&scene, &straight));

    // half a turn about the post passes around it
    let around = Pose2::from_xy_angle(2.0, 0.0, std::f64::consts::PI);
    let swing = SimpleMove::new(around.compose(&start.inverse()).log(0)?, start);
    println!(
        "swing about the post: {:?} (speed bound {:.3})",
        certify_simple_move(&scene, &swing),
        velocity_bound(&swing, &scene.object)
    );

    // up, across, down
    let legs = vec![
        Twist2::translation(Vec2::new(0.0, 1.5))?,
        Twist2::translation(Vec2::new(4.0, 0.0))?,
        Twist2::translation(Vec2::new(0.0, -1.5))?,
    ];
    let dogleg = PiecewiseMove::new(start, legs).expect("three legs");
    println!(
        "dogleg: {:?}, ends at x = {:.3}",
        certify_piecewise(&scene, &dogleg),
        dogleg.end().x()
    );
    Ok(())
}
